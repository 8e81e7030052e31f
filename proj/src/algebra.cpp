#include "crx/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace crx {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("IntMatrix::from_columns: bad column length");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return sgn(x) == 0; });
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("IntMatrix: dimension mismatch in matrix-vector product");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t a, std::size_t b, const Int& k) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(a, c) += k * (*this)(b, c);
}

void IntMatrix::add_col_multiple(std::size_t a, std::size_t b, const Int& k) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, a) += k * (*this)(r, b);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::size_t SmithDecomposition::rank() const {
  std::size_t n = std::min(D.rows(), D.cols());
  std::size_t r = 0;
  while (r < n && sgn(D(r, r)) != 0) ++r;
  return r;
}

IntVector SmithDecomposition::diagonal() const {
  std::size_t n = std::min(D.rows(), D.cols());
  IntVector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = D(i, i);
  return d;
}

namespace {

// Row operations are mirrored into U and (inversely) into Uinv; column
// operations into V.
struct SnfWork {
  IntMatrix D, U, Uinv, V;

  void swap_rows(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
    Uinv.swap_cols(a, b);
  }
  void add_row(std::size_t a, std::size_t b, const Int& k) {
    D.add_row_multiple(a, b, k);
    U.add_row_multiple(a, b, k);
    Uinv.add_col_multiple(b, a, -k);
  }
  void negate_row(std::size_t r) {
    D.negate_row(r);
    U.negate_row(r);
    Uinv.negate_col(r);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
  }
  void add_col(std::size_t a, std::size_t b, const Int& k) {
    D.add_col_multiple(a, b, k);
    V.add_col_multiple(a, b, k);
  }
};

struct FullSnf {
  SmithDecomposition snf;
  IntMatrix Uinv;
};

FullSnf full_smith(const IntMatrix& m) {
  SnfWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    bool have_pivot = false;
    for (;;) {
      // least nonzero |entry| in the trailing block, lexicographic tie-break
      std::size_t pi = 0, pj = 0;
      bool found = false;
      Int best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const Int& x = w.D(i, j);
          if (sgn(x) == 0) continue;
          Int ax = abs(x);
          if (!found || ax < best) {
            best = ax;
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) break;
      have_pivot = true;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(w.D(i, t)) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), w.D(i, t).get_mpz_t(), w.D(t, t).get_mpz_t());
        w.add_row(i, t, -q);
        if (sgn(w.D(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(w.D(t, j)) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), w.D(t, j).get_mpz_t(), w.D(t, t).get_mpz_t());
        w.add_col(j, t, -q);
        if (sgn(w.D(t, j)) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the trailing block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!mpz_divisible_p(w.D(i, j).get_mpz_t(), w.D(t, t).get_mpz_t())) {
            w.add_row(t, i, Int(1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (!have_pivot) break;
    if (sgn(w.D(t, t)) < 0) w.negate_row(t);
  }
  return {{std::move(w.U), std::move(w.D), std::move(w.V)}, std::move(w.Uinv)};
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) { return full_smith(m).snf; }

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < free_rank; ++i) {
    os << (first ? "" : " + ") << "Z";
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t.get_str();
    first = false;
  }
  return os.str();
}

AbelianGroup cokernel_structure(const IntMatrix& m) {
  AbelianGroup g;
  if (m.rows() == 0) return g;
  if (m.cols() == 0) {
    g.free_rank = m.rows();
    return g;
  }
  auto snf = smith_normal_form(m);
  std::size_t r = snf.rank();
  g.free_rank = m.rows() - r;
  for (std::size_t i = 0; i < r; ++i)
    if (snf.D(i, i) != 1) g.torsion.push_back(snf.D(i, i));
  return g;
}

std::vector<IntVector> integer_kernel(const IntMatrix& m) {
  std::vector<IntVector> basis;
  if (m.cols() == 0) return basis;
  if (m.rows() == 0) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      IntVector e(m.cols());
      e[j] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  auto snf = smith_normal_form(m);
  for (std::size_t j = snf.rank(); j < m.cols(); ++j) basis.push_back(snf.V.column(j));
  return basis;
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_integer: rhs length mismatch");
  if (m.cols() == 0) {
    for (const auto& x : b)
      if (sgn(x) != 0) return std::nullopt;
    return IntVector{};
  }
  if (m.rows() == 0) return IntVector(m.cols());
  auto snf = smith_normal_form(m);
  IntVector c = snf.U * b;
  std::size_t r = snf.rank();
  IntVector y(m.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), snf.D(i, i).get_mpz_t())) return std::nullopt;
      y[i] = c[i] / snf.D(i, i);
    } else if (sgn(c[i]) != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

Lattice::Lattice(std::size_t dim, std::vector<IntVector> generators) : dim_(dim) {
  if (generators.empty() || dim == 0) {
    snf_.U = IntMatrix::identity(dim);
    snf_.D = IntMatrix(dim, 0);
    snf_.V = IntMatrix();
    rank_ = 0;
    return;
  }
  snf_ = smith_normal_form(IntMatrix::from_columns(dim, generators));
  rank_ = snf_.rank();
}

bool Lattice::contains(const IntVector& v) const {
  IntVector c = snf_.U * v;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < rank_) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), snf_.D(i, i).get_mpz_t())) return false;
    } else if (sgn(c[i]) != 0) {
      return false;
    }
  }
  return true;
}

IntVector Lattice::reduce(const IntVector& v) const { return reduce_coordinates(snf_.U * v); }

IntVector Lattice::reduce_coordinates(IntVector c) const {
  for (std::size_t i = 0; i < rank_ && i < c.size(); ++i) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), c[i].get_mpz_t(), snf_.D(i, i).get_mpz_t());
    c[i] = r;
  }
  return c;
}

AbelianGroup Lattice::quotient() const {
  AbelianGroup g;
  g.free_rank = dim_ - rank_;
  for (std::size_t i = 0; i < rank_; ++i)
    if (snf_.D(i, i) != 1) g.torsion.push_back(snf_.D(i, i));
  return g;
}

AbelianGroup subquotient_homology(const IntMatrix& in, const IntMatrix& out,
                                  const std::vector<IntVector>& rel_mid,
                                  const std::vector<IntVector>& rel_low) {
  const std::size_t b = out.cols();
  if (in.rows() != b && in.cols() != 0) throw std::invalid_argument("subquotient_homology: dimension mismatch");
  if (b == 0) return {};
  const std::size_t c = out.rows();

  // cycles relative to the relations of the lower term
  std::vector<IntVector> cycle_gens;
  if (c == 0) {
    for (std::size_t j = 0; j < b; ++j) {
      IntVector e(b);
      e[j] = 1;
      cycle_gens.push_back(std::move(e));
    }
  } else {
    IntMatrix aug(c, b + rel_low.size());
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t j = 0; j < b; ++j) aug(i, j) = out(i, j);
      for (std::size_t k = 0; k < rel_low.size(); ++k) aug(i, b + k) = -rel_low[k][i];
    }
    for (auto& v : integer_kernel(aug)) cycle_gens.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(b));
  }
  if (cycle_gens.empty()) return {};

  // basis of the cycle lattice: columns d_i * Uinv[:, i]
  auto full = full_smith(IntMatrix::from_columns(b, cycle_gens));
  std::size_t k = full.snf.rank();
  if (k == 0) return {};
  IntMatrix basis(b, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < b; ++r) basis(r, i) = full.snf.D(i, i) * full.Uinv(r, i);

  std::vector<IntVector> denominators;
  for (std::size_t j = 0; j < in.cols(); ++j) denominators.push_back(in.column(j));
  for (const auto& r : rel_mid) denominators.push_back(r);
  std::vector<IntVector> coords;
  for (const auto& v : denominators) {
    auto y = solve_integer(basis, v);
    if (!y) throw std::logic_error("subquotient_homology: boundary not contained in cycles");
    coords.push_back(std::move(*y));
  }
  if (coords.empty()) {
    AbelianGroup g;
    g.free_rank = k;
    return g;
  }
  return cokernel_structure(IntMatrix::from_columns(k, coords));
}

bool induced_map_surjective(const IntMatrix& phi, const std::vector<IntVector>& sb) {
  const std::size_t b = phi.rows();
  if (b == 0) return true;
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < phi.cols(); ++j) cols.push_back(phi.column(j));
  for (const auto& v : sb) cols.push_back(v);
  if (cols.empty()) return false;
  auto snf = smith_normal_form(IntMatrix::from_columns(b, cols));
  if (snf.rank() != b) return false;
  for (std::size_t i = 0; i < b; ++i)
    if (snf.D(i, i) != 1) return false;
  return true;
}

Int gcd_of(const std::vector<Int>& xs) {
  Int g = 0;
  for (const auto& x : xs) {
    Int t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    g = t;
  }
  return g;
}

}  // namespace crx
