#include "crx/dga.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "crx/errors.hpp"

namespace crx {

// ---------------------------------------------------------------------------
// GradedChain

std::size_t GradedChain::rank(int n) const {
  if (n < 0 || n > top()) return 0;
  return basis[static_cast<std::size_t>(n)].size();
}

std::vector<std::size_t> GradedChain::ranks() const {
  std::vector<std::size_t> out;
  for (const auto& b : basis) out.push_back(b.size());
  return out;
}

IntMatrix GradedChain::differential(int n) const {
  if (n >= 1 && n <= top()) return d[static_cast<std::size_t>(n)];
  return IntMatrix(rank(n - 1), rank(n));
}

bool GradedChain::square_zero() const {
  for (int n = 2; n <= top(); ++n)
    if (!(differential(n - 1) * differential(n)).is_zero()) return false;
  return true;
}

AbelianGroup GradedChain::homology(int n) const {
  return subquotient_homology(differential(n + 1), differential(n), {}, {});
}

void GradedChain::add_degree(std::vector<std::string> names, IntMatrix dn) {
  const int n = top() + 1;
  if (dn.cols() != names.size() || dn.rows() != rank(n - 1))
    throw DomainError("differential in degree " + std::to_string(n) + " has the wrong shape");
  basis.push_back(std::move(names));
  d.push_back(std::move(dn));
}

GradedChain tensor_product(const GradedChain& a, const GradedChain& b, int top) {
  GradedChain out;
  out.name = a.name + "|" + b.name;
  // (p, i, j) per degree, p the degree of the left factor
  using Cell = std::tuple<int, std::size_t, std::size_t>;
  std::vector<std::map<Cell, std::size_t>> index(static_cast<std::size_t>(top) + 1);
  std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n)
    for (int p = 0; p <= n; ++p)
      for (std::size_t i = 0; i < a.rank(p); ++i)
        for (std::size_t j = 0; j < b.rank(n - p); ++j) {
          index[n][{p, i, j}] = cells[n].size();
          cells[n].push_back({p, i, j});
        }
  for (int n = 0; n <= top; ++n) {
    std::vector<std::string> names;
    IntMatrix dn(n == 0 ? 0 : cells[n - 1].size(), cells[n].size());
    for (std::size_t c = 0; c < cells[n].size(); ++c) {
      auto [p, i, j] = cells[n][c];
      const int q = n - p;
      names.push_back(a.basis[p][i] + "|" + b.basis[q][j]);
      if (n == 0) continue;
      if (p >= 1) {
        IntMatrix da = a.differential(p);
        for (std::size_t r = 0; r < da.rows(); ++r)
          if (da(r, i) != 0) dn(index[n - 1].at({p - 1, r, j}), c) += da(r, i);
      }
      if (q >= 1) {
        IntMatrix db = b.differential(q);
        const int sign = p % 2 == 0 ? 1 : -1;
        for (std::size_t r = 0; r < db.rows(); ++r)
          if (db(r, j) != 0) dn(index[n - 1].at({p, i, r}), c) += sign * db(r, j);
      }
    }
    out.add_degree(std::move(names), std::move(dn));
  }
  return out;
}

GradedChain unit_chain() {
  GradedChain u;
  u.name = "Z";
  u.add_degree({"1"}, IntMatrix(0, 1));
  return u;
}

// ---------------------------------------------------------------------------
// Elements

void add_to(DgaElement& e, const DgaWord& w, const Int& c) {
  if (c == 0) return;
  Int& slot = e[w];
  slot += c;
  if (slot == 0) e.erase(w);
}

DgaElement scaled(const DgaElement& e, const Int& c) {
  DgaElement out;
  for (const auto& [w, k] : e) add_to(out, w, k * c);
  return out;
}

DgaElement plus(const DgaElement& a, const DgaElement& b) {
  DgaElement out = a;
  for (const auto& [w, k] : b) add_to(out, w, k);
  return out;
}

DgaElement multiply(const DgaElement& a, const DgaElement& b) {
  DgaElement out;
  for (const auto& [u, p] : a)
    for (const auto& [v, q] : b) {
      DgaWord w = u;
      w.insert(w.end(), v.begin(), v.end());
      add_to(out, w, p * q);
    }
  return out;
}

// ---------------------------------------------------------------------------
// FreeDga

std::size_t FreeDga::find(const std::string& n) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == n) return i;
  throw UnknownGenerator("no generator " + n + " in " + name);
}

bool FreeDga::has(const std::string& n) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const DgaGenerator& g) { return g.name == n; });
}

std::size_t FreeDga::add_generator(const std::string& n, int degree) {
  if (n.empty() || n == "1" || n.find_first_of("*+- \t()") != std::string::npos ||
      std::isdigit(static_cast<unsigned char>(n[0])))
    throw DomainError("bad generator name '" + n + "'");
  if (has(n)) throw DomainError("duplicate generator " + n);
  if (degree < 1) throw DomainError("generator " + n + " has degree " + std::to_string(degree) + " < 1");
  gens_.push_back({n, degree});
  diffs_.emplace_back();
  return gens_.size() - 1;
}

void FreeDga::set_diff(std::size_t g, DgaElement d) {
  for (auto it = d.begin(); it != d.end();) {
    if (it->second == 0) {
      it = d.erase(it);
      continue;
    }
    for (std::size_t i : it->first)
      if (i >= gens_.size()) throw UnknownGenerator("generator index out of range in d(" + gens_[g].name + ")");
    if (degree(it->first) != gens_[g].degree - 1)
      throw DomainError("d(" + gens_[g].name + ") has a term " + word_name(it->first) + " of degree " +
                        std::to_string(degree(it->first)) + ", expected " + std::to_string(gens_[g].degree - 1));
    ++it;
  }
  diffs_[g] = std::move(d);
}

void FreeDga::check() const {
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    DgaElement dd = differential(diffs_[g]);
    if (!dd.empty())
      throw DomainError("d(d(" + gens_[g].name + ")) = " + to_string(dd) + ", not 0");
  }
}

std::size_t FreeDga::attach(const std::string& n, int degree, const DgaElement& d) {
  std::size_t g = add_generator(n, degree);
  try {
    set_diff(g, d);
    DgaElement dd = differential(diffs_[g]);
    if (!dd.empty()) throw DomainError("d(d(" + n + ")) = " + to_string(dd) + ", not 0");
  } catch (...) {
    gens_.pop_back();
    diffs_.pop_back();
    throw;
  }
  return g;
}

int FreeDga::degree(const DgaWord& w) const {
  int s = 0;
  for (std::size_t i : w) s += gens_.at(i).degree;
  return s;
}

std::string FreeDga::word_name(const DgaWord& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += gens_.at(w[i]).name;
  }
  return s;
}

std::string FreeDga::to_string(const DgaElement& e) const {
  if (e.empty()) return "0";
  // shortest words first
  std::vector<std::pair<DgaWord, Int>> terms(e.begin(), e.end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms) {
    Int a = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (w.empty()) {
      s += a.get_str();
    } else {
      if (a != 1) s += a.get_str() + " ";
      s += word_name(w);
    }
  }
  return s;
}

DgaElement FreeDga::parse(const std::string& text) const {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw DomainError("empty element");
  DgaElement out;
  std::size_t i = 0;
  while (i < t.size()) {
    int sign = 1;
    if (t[i] == '+' || t[i] == '-') {
      sign = t[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw DomainError("expected + or - in '" + text + "'");
    }
    std::size_t j = i;
    while (j < t.size() && t[j] != '+' && t[j] != '-') ++j;
    std::string term = t.substr(i, j - i);
    i = j;
    if (term.empty()) throw DomainError("empty term in '" + text + "'");
    Int coeff = 1;
    std::size_t k = 0;
    while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k]))) ++k;
    std::string rest = term.substr(k);
    if (k > 0) {
      coeff = Int(term.substr(0, k));
      if (!rest.empty() && rest[0] == '*') rest = rest.substr(1);
    }
    DgaWord w;
    if (!rest.empty()) {
      std::stringstream ss(rest);
      std::string part;
      while (std::getline(ss, part, '*')) {
        if (part.empty()) throw DomainError("empty factor in '" + text + "'");
        if (part == "1") continue;
        w.push_back(find(part));
      }
    }
    add_to(out, w, coeff * sign);
  }
  return out;
}

DgaElement FreeDga::differential(const DgaWord& w) const {
  DgaElement out;
  int prefix = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Int sign = prefix % 2 == 0 ? 1 : -1;
    for (const auto& [dw, c] : diffs_[w[i]]) {
      DgaWord v(w.begin(), w.begin() + static_cast<long>(i));
      v.insert(v.end(), dw.begin(), dw.end());
      v.insert(v.end(), w.begin() + static_cast<long>(i) + 1, w.end());
      add_to(out, v, sign * c);
    }
    prefix += gens_[w[i]].degree;
  }
  return out;
}

DgaElement FreeDga::differential(const DgaElement& e) const {
  DgaElement out;
  for (const auto& [w, c] : e)
    for (const auto& [v, k] : differential(w)) add_to(out, v, c * k);
  return out;
}

FreeDga tensor_algebra(const std::vector<DgaGenerator>& gens, const std::vector<DgaElement>& diffs,
                       bool allow_degree_one) {
  if (gens.size() != diffs.size()) throw DomainError("one differential per generator");
  FreeDga a;
  a.name = "T";
  for (const auto& g : gens) {
    if (g.degree < (allow_degree_one ? 1 : 2))
      throw DomainError("generator " + g.name + " has degree " + std::to_string(g.degree) +
                        "; the algebra must be 1-reduced");
    a.add_generator(g.name, g.degree);
  }
  for (std::size_t i = 0; i < gens.size(); ++i) a.set_diff(i, diffs[i]);
  a.check();
  return a;
}

std::vector<DgaWord> truncated_basis(const FreeDga& a, int degree) {
  std::vector<DgaWord> out;
  if (degree < 0) return out;
  const auto& g = a.generators();
  // every generator has degree >= 1, so a word has at most `degree` letters
  for (int len = 0; len <= degree; ++len) {
    DgaWord w;
    std::function<void(int)> go = [&](int left) {
      if (static_cast<int>(w.size()) == len) {
        if (left == 0) out.push_back(w);
        return;
      }
      for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i].degree <= left) {
          w.push_back(i);
          go(left - g[i].degree);
          w.pop_back();
        }
    };
    go(degree);
  }
  return out;
}

namespace {

// Chain complex on the words satisfying keep, d projected onto them.
GradedChain word_chain(const FreeDga& a, int top, const std::function<bool(const DgaWord&)>& keep) {
  GradedChain c;
  c.name = a.name;
  std::map<DgaWord, std::size_t> prev;
  for (int n = 0; n <= top; ++n) {
    std::vector<DgaWord> words;
    for (auto& w : truncated_basis(a, n))
      if (keep(w)) words.push_back(std::move(w));
    IntMatrix dn(prev.size(), words.size());
    std::vector<std::string> names;
    std::map<DgaWord, std::size_t> here;
    for (std::size_t j = 0; j < words.size(); ++j) {
      names.push_back(a.word_name(words[j]));
      here[words[j]] = j;
      for (const auto& [v, k] : a.differential(words[j])) {
        auto it = prev.find(v);
        if (it != prev.end()) dn(it->second, j) += k;
      }
    }
    if (n == 0) dn = IntMatrix(0, words.size());
    c.add_degree(std::move(names), std::move(dn));
    prev = std::move(here);
  }
  return c;
}

IntVector to_vector(const DgaElement& e, const std::map<DgaWord, std::size_t>& index, std::size_t size) {
  IntVector v(size);
  for (const auto& [w, c] : e) {
    auto it = index.find(w);
    if (it == index.end()) throw DomainError("element leaves the expected degree");
    v[it->second] += c;
  }
  return v;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  SmithDecomposition s = smith_normal_form(u);
  // s.U u s.V = I, so u^{-1} = s.V s.U
  return s.V * s.U;
}

// One degree of a presented algebra: words, and the quotient by the ideal
// as a projection P onto Z^rank with a section L.
struct QuotientDegree {
  std::vector<DgaWord> words;
  std::map<DgaWord, std::size_t> index;
  IntMatrix P;  // rank x words
  IntMatrix L;  // words x rank
  std::vector<std::string> names;
  std::size_t rank() const { return P.rows(); }
};

int element_degree(const FreeDga& f, const DgaElement& e) {
  int d = -1;
  for (const auto& [w, c] : e) {
    int k = f.degree(w);
    if (d >= 0 && k != d) throw DomainError("relation " + f.to_string(e) + " is not homogeneous");
    d = k;
  }
  return d;
}

QuotientDegree quotient_degree(const PresentedDga& a, int n) {
  QuotientDegree q;
  const FreeDga& f = a.free;
  q.words = truncated_basis(f, n);
  for (std::size_t i = 0; i < q.words.size(); ++i) q.index[q.words[i]] = i;
  const std::size_t k = q.words.size();

  std::vector<IntVector> ideal;
  for (const auto& r : a.relations) {
    const int dr = element_degree(f, r);
    if (dr < 0 || dr > n) continue;
    for (int p = 0; p + dr <= n; ++p)
      for (const auto& u : truncated_basis(f, p))
        for (const auto& v : truncated_basis(f, n - p - dr)) {
          DgaElement e = multiply(multiply(DgaElement{{u, 1}}, r), DgaElement{{v, 1}});
          ideal.push_back(to_vector(e, q.index, k));
        }
  }
  if (ideal.empty()) {
    q.P = IntMatrix::identity(k);
    q.L = IntMatrix::identity(k);
  } else {
    IntMatrix m = IntMatrix::from_columns(k, ideal);
    SmithDecomposition s = smith_normal_form(m);
    const std::size_t r = s.rank();
    for (std::size_t i = 0; i < r; ++i)
      if (s.D(i, i) != 1)
        throw DomainError("the quotient has torsion in degree " + std::to_string(n) + "; only free quotients are supported");
    IntMatrix uinv = unimodular_inverse(s.U);
    q.P = IntMatrix(k - r, k);
    q.L = IntMatrix(k, k - r);
    for (std::size_t i = r; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        q.P(i - r, j) = s.U(i, j);
        q.L(j, i - r) = uinv(j, i);
      }
  }
  for (std::size_t c = 0; c < q.rank(); ++c) {
    // name a basis element after a word when it is one
    std::size_t hits = 0, at = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (q.L(j, c) != 0) ++hits, at = j;
    if (hits == 1 && abs(q.L(at, c)) == 1) {
      q.names.push_back((q.L(at, c) < 0 ? "-" : "") + f.word_name(q.words[at]));
    } else {
      DgaElement e;
      for (std::size_t j = 0; j < k; ++j) add_to(e, q.words[j], q.L(j, c));
      q.names.push_back("[" + f.to_string(e) + "]");
    }
  }
  return q;
}

// Matrix of d on the quotient, degree n -> n - 1.
IntMatrix quotient_differential(const PresentedDga& a, const QuotientDegree& hi, const QuotientDegree& lo, int n) {
  IntMatrix dt(lo.words.size(), hi.words.size());
  for (std::size_t j = 0; j < hi.words.size(); ++j)
    for (const auto& [v, c] : a.free.differential(hi.words[j])) dt(lo.index.at(v), j) += c;
  // the ideal must go to the ideal: P d (I - L P) = 0
  IntMatrix pd = lo.P * dt;
  IntMatrix lp = hi.L * hi.P;
  IntMatrix leak = pd;
  IntMatrix pdlp = pd * lp;
  for (std::size_t r = 0; r < leak.rows(); ++r)
    for (std::size_t c = 0; c < leak.cols(); ++c) leak(r, c) -= pdlp(r, c);
  if (!leak.is_zero())
    throw DomainError("d does not preserve the ideal in degree " + std::to_string(n));
  return pd * hi.L;
}

}  // namespace

GradedChain chain_complex(const FreeDga& a, int top, bool reduced) {
  GradedChain c = word_chain(a, top, [&](const DgaWord& w) { return !reduced || !w.empty(); });
  c.name = a.name;
  return c;
}

GradedChain chain_complex(const PresentedDga& a, int top) {
  GradedChain c;
  c.name = a.free.name;
  QuotientDegree prev;
  for (int n = 0; n <= top; ++n) {
    QuotientDegree q = quotient_degree(a, n);
    IntMatrix dn = n == 0 ? IntMatrix(0, q.rank()) : quotient_differential(a, q, prev, n);
    c.add_degree(q.names, std::move(dn));
    prev = std::move(q);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Cofibrant replacement

namespace {

// Representatives of a basis of ker(out) / im(in) modulo torsion-free part:
// one vector per invariant factor != 1 of the quotient.
std::vector<IntVector> homology_representatives(const IntMatrix& in, const IntMatrix& out, std::size_t dim) {
  if (dim == 0) return {};
  std::vector<IntVector> z;
  if (out.rows() == 0) {
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim);
      e[i] = 1;
      z.push_back(e);
    }
  } else {
    z = integer_kernel(out);
  }
  if (z.empty()) return {};
  IntMatrix zm = IntMatrix::from_columns(dim, z);
  if (in.cols() == 0) return z;
  std::vector<IntVector> coords;
  for (std::size_t c = 0; c < in.cols(); ++c) {
    auto x = solve_integer(zm, in.column(c));
    if (!x) throw DomainError("boundary outside the cycles");
    coords.push_back(*x);
  }
  IntMatrix cm = IntMatrix::from_columns(z.size(), coords);
  SmithDecomposition s = smith_normal_form(cm);
  IntMatrix uinv = unimodular_inverse(s.U);
  std::vector<IntVector> reps;
  for (std::size_t i = 0; i < z.size(); ++i) {
    Int di = i < std::min(cm.rows(), cm.cols()) ? s.D(i, i) : Int(0);
    if (di == 1) continue;
    reps.push_back(zm * uinv.column(i));
  }
  return reps;
}

struct ConeBuilder {
  const PresentedDga& a;
  FreeDga& t;
  std::vector<DgaElement>& phi;
  std::map<int, QuotientDegree> qa;

  const QuotientDegree& quot(int n) {
    auto it = qa.find(n);
    if (it == qa.end()) it = qa.emplace(n, quotient_degree(a, n)).first;
    return it->second;
  }

  // T_m words -> A_m quotient coordinates.
  IntMatrix phi_matrix(int m, const std::vector<DgaWord>& tw) {
    const QuotientDegree& q = quot(m);
    std::vector<IntVector> cols;
    for (const auto& w : tw) {
      DgaElement img{{DgaWord{}, 1}};
      for (std::size_t g : w) img = multiply(img, phi[g]);
      cols.push_back(q.P * to_vector(img, q.index, q.words.size()));
    }
    return IntMatrix::from_columns(q.rank(), cols);
  }

  IntMatrix t_differential(int m, const std::vector<DgaWord>& hi, const std::vector<DgaWord>& lo) {
    std::map<DgaWord, std::size_t> index;
    for (std::size_t i = 0; i < lo.size(); ++i) index[lo[i]] = i;
    IntMatrix dm(lo.size(), hi.size());
    if (m <= 0) return dm;
    for (std::size_t j = 0; j < hi.size(); ++j)
      for (const auto& [v, c] : t.differential(hi[j])) dm(index.at(v), j) += c;
    return dm;
  }

  std::size_t a_rank(int n) { return n < 0 ? 0 : quot(n).rank(); }

  IntMatrix a_differential(int n) {
    if (n <= 0) return IntMatrix(a_rank(n - 1), a_rank(n));
    return quotient_differential(a, quot(n), quot(n - 1), n);
  }

  // cone_n = A_n + T_{n-1}, d(x, y) = (d x + phi y, -d y)
  IntMatrix cone_differential(int n) {
    auto t1 = truncated_basis(t, n - 1);
    auto t2 = truncated_basis(t, n - 2);
    const std::size_t an = a_rank(n), am = a_rank(n - 1);
    IntMatrix d(am + t2.size(), an + t1.size());
    IntMatrix da = a_differential(n);
    for (std::size_t r = 0; r < da.rows(); ++r)
      for (std::size_t c = 0; c < da.cols(); ++c) d(r, c) = da(r, c);
    if (n - 1 >= 0) {
      IntMatrix ph = phi_matrix(n - 1, t1);
      for (std::size_t r = 0; r < ph.rows(); ++r)
        for (std::size_t c = 0; c < ph.cols(); ++c) d(r, an + c) = ph(r, c);
    }
    IntMatrix dt = t_differential(n - 1, t1, t2);
    for (std::size_t r = 0; r < dt.rows(); ++r)
      for (std::size_t c = 0; c < dt.cols(); ++c) d(am + r, an + c) = -dt(r, c);
    return d;
  }

  std::size_t cone_rank(int n) { return a_rank(n) + truncated_basis(t, n - 1).size(); }

  std::vector<IntVector> cone_homology(int n) {
    return homology_representatives(cone_differential(n + 1), cone_differential(n), cone_rank(n));
  }

  AbelianGroup cone_group(int n) {
    return subquotient_homology(cone_differential(n + 1), cone_differential(n), {}, {});
  }
};

std::string fresh_name(const FreeDga& t, const std::string& want) {
  if (!t.has(want)) return want;
  for (int i = 2;; ++i) {
    std::string s = want + "_" + std::to_string(i);
    if (!t.has(s)) return s;
  }
}

}  // namespace

CofibrantReplacement cofibrant_replacement(const PresentedDga& a, int n) {
  for (const auto& g : a.free.generators())
    if (g.degree < 2) throw DomainError("generator " + g.name + " has degree 1; the algebra must be 1-reduced");
  CofibrantReplacement res;
  FreeDga& t = res.cofibrant;
  t.name = a.free.name + "_cof";
  ConeBuilder cb{a, t, res.map, {}};

  if (a.relations.empty()) {
    t = a.free;
    t.name = a.free.name;
    for (std::size_t i = 0; i < t.generators().size(); ++i) res.map.push_back(DgaElement{{DgaWord{i}, 1}});
  } else {
    for (int m = 0; m <= n + 1; ++m) {
      auto reps = cb.cone_homology(m);
      if (m == 0 && !reps.empty()) throw DomainError("the algebra is not connected in degree 0");
      if (m < 2 && !reps.empty()) throw DomainError("the algebra has homology the replacement cannot reach in degree 1");
      const std::size_t am = cb.a_rank(m);
      const QuotientDegree& q = cb.quot(m);
      auto tw = truncated_basis(t, m - 1);
      for (const auto& v : reps) {
        IntVector xa(am);
        for (std::size_t i = 0; i < am; ++i) xa[i] = -v[i];
        IntVector lifted = q.L * xa;
        DgaElement image;
        for (std::size_t j = 0; j < lifted.size(); ++j) add_to(image, q.words[j], lifted[j]);
        DgaElement boundary;
        for (std::size_t j = 0; j < tw.size(); ++j) add_to(boundary, tw[j], v[am + j]);
        // the class is defined up to sign: make a generator image or the
        // leading boundary term positive
        const bool named = image.size() == 1 && image.begin()->first.size() == 1 && abs(image.begin()->second) == 1;
        Int lead = named ? image.begin()->second : Int(0);
        if (!named && !boundary.empty()) {
          std::size_t shortest = boundary.begin()->first.size();
          lead = boundary.begin()->second;
          for (const auto& [w, c] : boundary)
            if (w.size() < shortest) shortest = w.size(), lead = c;
        }
        if (lead < 0) {
          image = scaled(image, -1);
          boundary = scaled(boundary, -1);
        }
        std::string want = "e" + std::to_string(m);
        if (named) want = a.free.generators()[image.begin()->first[0]].name;
        t.attach(fresh_name(t, want), m, boundary);
        res.map.push_back(image);
      }
    }
  }

  bool all = true;
  GradedChain src = chain_complex(t, n + 1);
  GradedChain tgt = chain_complex(a, n + 1);
  for (int m = 0; m <= n; ++m) {
    DegreeComparison c;
    c.degree = m;
    c.source = src.homology(m);
    c.target = tgt.homology(m);
    c.cone_acyclic = cb.cone_group(m).is_trivial() && cb.cone_group(m + 1).is_trivial();
    all = all && c.cone_acyclic;
    res.degrees.push_back(c);
  }
  res.quasi_isomorphism = all;
  return res;
}

// ---------------------------------------------------------------------------
// Indecomposables and the tower

GradedChain indecomposables(const FreeDga& t, int top) {
  const auto& g = t.generators();
  if (top < 0)
    for (const auto& x : g) top = std::max(top, x.degree);
  top = std::max(top, 0);
  GradedChain c;
  c.name = "Q(" + t.name + ")";
  std::vector<std::size_t> prev;
  for (int n = 0; n <= top; ++n) {
    std::vector<std::size_t> here;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i].degree == n) {
        here.push_back(i);
        names.push_back(g[i].name);
      }
    IntMatrix dn(prev.size(), here.size());
    for (std::size_t j = 0; j < here.size(); ++j)
      for (const auto& [w, k] : t.diff(here[j]))
        if (w.size() == 1) {
          auto it = std::find(prev.begin(), prev.end(), w[0]);
          if (it != prev.end()) dn(static_cast<std::size_t>(it - prev.begin()), j) += k;
        }
    c.add_degree(std::move(names), std::move(dn));
    prev = std::move(here);
  }
  return c;
}

namespace {

bool unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  SmithDecomposition s = smith_normal_form(m);
  if (s.rank() != m.rows()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (s.D(i, i) != 1) return false;
  return true;
}

std::string bars(std::string s) {
  std::replace(s.begin(), s.end(), '*', '|');
  return s;
}

// Same complex, matching basis elements by name through rename.
bool same_under(const GradedChain& a, const GradedChain& b, const std::function<std::string(const std::string&)>& rename) {
  const int top = std::max(a.top(), b.top());
  std::vector<std::map<std::string, std::size_t>> pos(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    if (a.rank(n) != b.rank(n)) return false;
    for (std::size_t i = 0; i < b.rank(n); ++i) pos[n][b.basis[n][i]] = i;
    for (std::size_t i = 0; i < a.rank(n); ++i)
      if (!pos[n].count(rename(a.basis[n][i]))) return false;
  }
  for (int n = 1; n <= top; ++n) {
    IntMatrix da = a.differential(n), db = b.differential(n);
    for (std::size_t r = 0; r < da.rows(); ++r)
      for (std::size_t c = 0; c < da.cols(); ++c)
        if (da(r, c) != db(pos[n - 1].at(rename(a.basis[n - 1][r])), pos[n].at(rename(a.basis[n][c])))) return false;
  }
  return true;
}

}  // namespace

std::vector<TowerStage> tower(const FreeDga& t, int k, int top) {
  for (const auto& g : t.generators())
    if (g.degree < 2) throw DomainError("the tower needs generators of degree >= 2");
  std::vector<TowerStage> out;
  const GradedChain q = indecomposables(t, top);
  GradedChain power = unit_chain();
  for (int j = 0; j <= k; ++j) {
    TowerStage s;
    s.k = j;
    const auto len = static_cast<std::size_t>(j);
    s.chain = word_chain(t, top, [&](const DgaWord& w) { return !w.empty() && w.size() <= len; });
    s.chain.name = "T_" + std::to_string(j);
    s.fiber = word_chain(t, top, [&](const DgaWord& w) { return j > 0 && w.size() == len; });
    s.fiber.name = "F_" + std::to_string(j);
    if (j == 0) {
      s.fiber_is_length_k = s.fiber_is_tensor_power = s.iso_below = true;
      for (int n = 0; n <= top; ++n) s.projection.emplace_back(0, 0);
      out.push_back(std::move(s));
      continue;
    }
    const GradedChain& prev = out.back().chain;
    s.fiber_is_length_k = true;
    s.iso_below = true;
    for (int n = 0; n <= top; ++n) {
      IntMatrix p(prev.rank(n), s.chain.rank(n));
      std::map<std::string, std::size_t> at;
      for (std::size_t i = 0; i < prev.rank(n); ++i) at[prev.basis[n][i]] = i;
      std::set<std::size_t> length_k;
      for (std::size_t c = 0; c < s.chain.rank(n); ++c) {
        auto it = at.find(s.chain.basis[n][c]);
        if (it != at.end())
          p(it->second, c) = 1;
        else
          length_k.insert(c);
      }
      // the kernel lattice is saturated, so equal rank and support suffice
      std::vector<IntVector> ker;
      if (p.rows() == 0) {
        for (std::size_t c = 0; c < p.cols(); ++c) {
          IntVector e(p.cols());
          e[c] = 1;
          ker.push_back(e);
        }
      } else if (p.cols() > 0) {
        ker = integer_kernel(p);
      }
      if (ker.size() != length_k.size() || s.fiber.rank(n) != length_k.size()) s.fiber_is_length_k = false;
      for (const auto& v : ker)
        for (std::size_t c = 0; c < v.size(); ++c)
          if (v[c] != 0 && !length_k.count(c)) s.fiber_is_length_k = false;
      if (n < 2 * j - 2 && n < top) {
        if (!unimodular(p) || !(s.chain.homology(n) == prev.homology(n))) s.iso_below = false;
      }
      s.projection.push_back(std::move(p));
    }
    power = j == 1 ? q : tensor_product(power, q, top);
    s.fiber_is_tensor_power = same_under(s.fiber, power, [](const std::string& x) { return bars(x); });
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bridges

FreeDga from_one_reduced_category(const EnrichedPtr& cat) {
  if (cat->objects.size() != 1) throw DomainError(cat->name + " has " + std::to_string(cat->objects.size()) + " objects, expected one");
  if (cat->is_structured()) throw DomainError(cat->name + " is structured; a cellular presentation is needed");
  if (!cat->relations.empty()) throw DomainError(cat->name + " has relations; only free categories give a free algebra");
  for (const auto& c : cat->cells)
    if (c.degree < 2) throw DomainError("cell " + c.name + " has degree " + std::to_string(c.degree) + "; cells of degree >= 2 only");
  const std::string& x = cat->objects[0];
  PresentationPtr h = realize_hom(cat, x, x, options_for(*cat));
  FreeDga a;
  a.name = cat->name;
  for (const auto& c : cat->cells) a.add_generator(c.name, c.degree);
  for (std::size_t i = 0; i < cat->cells.size(); ++i) {
    const auto& c = cat->cells[i];
    if (c.degree == 2) continue;  // boundary is a loop of 1-cells, all identities here
    const Generator& g = h->get(c.name, c.degree);
    DgaElement d;
    for (const auto& term : g.boundary.higher.terms()) {
      DgaWord w;
      for (const auto& part : split_name(term.gen)) w.push_back(a.find(part));
      add_to(d, w, Int(static_cast<long>(term.exp)));
    }
    a.set_diff(i, d);
  }
  a.check();
  return a;
}

GradedChain chain_of_one_reduced(const Presentation& p) {
  if (p.objects().size() != 1) throw DomainError(p.name + " has more than one object");
  if (p.count(1) != 0) throw DomainError(p.name + " has 1-cells");
  if (!p.relations().empty()) throw DomainError(p.name + " has relations");
  const int top = std::max(p.max_degree(), 0);
  GradedChain c;
  c.name = p.name;
  std::vector<const Generator*> prev;
  for (int n = 0; n <= top; ++n) {
    std::vector<const Generator*> here = n >= 2 ? p.generators_of_degree(n) : std::vector<const Generator*>{};
    std::vector<std::string> names;
    IntMatrix dn(prev.size(), here.size());
    for (std::size_t j = 0; j < here.size(); ++j) {
      names.push_back(here[j]->name);
      if (n < 3) continue;
      for (const auto& term : here[j]->boundary.higher.terms())
        for (std::size_t r = 0; r < prev.size(); ++r)
          if (prev[r]->name == term.gen) dn(r, j) += Int(static_cast<long>(term.exp));
    }
    c.add_degree(std::move(names), std::move(dn));
    prev = std::move(here);
  }
  return c;
}

bool same_chain(const GradedChain& a, const GradedChain& b) {
  return same_under(a, b, [](const std::string& x) { return x; });
}

}  // namespace crx
