#include <algorithm>

#include "crx/dga.hpp"
#include "crx/errors.hpp"

namespace crx {

namespace {

// s_a applied to s_L, keeping the indices strictly decreasing.
std::vector<int> insert_degeneracy(int a, const std::vector<int>& l) {
  if (l.empty() || a > l[0]) {
    std::vector<int> out{a};
    out.insert(out.end(), l.begin(), l.end());
    return out;
  }
  std::vector<int> out{l[0] + 1};
  std::vector<int> rest = insert_degeneracy(a, std::vector<int>(l.begin() + 1, l.end()));
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

const std::vector<std::string> kNone;

}  // namespace

SimplexRef degenerate(const SimplexRef& s, int j) {
  if (j < 0) throw DomainError("negative degeneracy index");
  return {s.base, insert_degeneracy(j, s.degeneracies)};
}

std::string to_string(const SimplexRef& s) {
  std::string out = s.base;
  for (auto it = s.degeneracies.rbegin(); it != s.degeneracies.rend(); ++it)
    out = "s" + std::to_string(*it) + "(" + out + ")";
  return out;
}

void SimplicialSetFinite::add_simplex(const std::string& n, int dim, std::vector<SimplexRef> faces) {
  if (n.empty() || n.find_first_of(" \t()") != std::string::npos) throw DomainError("bad simplex name '" + n + "'");
  if (dims_.count(n)) throw DomainError("duplicate simplex " + n);
  if (dim < 0) throw DomainError("simplex " + n + " has negative dimension");
  const std::size_t want = dim == 0 ? 0 : static_cast<std::size_t>(dim) + 1;
  if (faces.size() != want)
    throw DomainError("simplex " + n + " of dimension " + std::to_string(dim) + " needs " + std::to_string(want) +
                      " faces, got " + std::to_string(faces.size()));
  for (const auto& f : faces) {
    if (!dims_.count(f.base)) throw UnknownGenerator("face " + to_string(f) + " of " + n + " is not defined");
    if (dim_of(f) != dim - 1)
      throw DomainError("face " + to_string(f) + " of " + n + " has dimension " + std::to_string(dim_of(f)) +
                        ", expected " + std::to_string(dim - 1));
  }
  dims_[n] = dim;
  if (by_dim_.size() <= static_cast<std::size_t>(dim)) by_dim_.resize(static_cast<std::size_t>(dim) + 1);
  by_dim_[dim].push_back(n);
  faces_[n] = std::move(faces);
}

int SimplicialSetFinite::dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

int SimplicialSetFinite::dim_of(const std::string& n) const {
  auto it = dims_.find(n);
  if (it == dims_.end()) throw UnknownGenerator("no simplex " + n + " in " + name);
  return it->second;
}

int SimplicialSetFinite::dim_of(const SimplexRef& s) const {
  return dim_of(s.base) + static_cast<int>(s.degeneracies.size());
}

const std::vector<std::string>& SimplicialSetFinite::simplices(int dim) const {
  if (dim < 0 || static_cast<std::size_t>(dim) >= by_dim_.size()) return kNone;
  return by_dim_[dim];
}

const std::vector<SimplexRef>& SimplicialSetFinite::faces(const std::string& n) const {
  auto it = faces_.find(n);
  if (it == faces_.end()) throw UnknownGenerator("no simplex " + n + " in " + name);
  return it->second;
}

SimplexRef SimplicialSetFinite::face(const SimplexRef& s, int i) const {
  const int dim = dim_of(s);
  if (i < 0 || i > dim || dim == 0) throw DomainError("no face d" + std::to_string(i) + " of " + to_string(s));
  if (!s.degenerate()) return faces(s.base)[static_cast<std::size_t>(i)];
  const int j = s.degeneracies[0];
  SimplexRef y{s.base, std::vector<int>(s.degeneracies.begin() + 1, s.degeneracies.end())};
  if (i < j) return degenerate(face(y, i), j - 1);
  if (i == j || i == j + 1) return y;
  return degenerate(face(y, i - 1), j);
}

std::string SimplicialSetFinite::point() const {
  if (!basepoint.empty()) return basepoint;
  if (simplices(0).empty()) throw DomainError(name + " has no vertices");
  return simplices(0)[0];
}

void SimplicialSetFinite::check() const {
  if (!basepoint.empty() && (!dims_.count(basepoint) || dims_.at(basepoint) != 0))
    throw DomainError("basepoint " + basepoint + " is not a vertex");
  for (int d = 2; d <= dimension(); ++d)
    for (const auto& n : simplices(d)) {
      SimplexRef s{n, {}};
      for (int j = 1; j <= d; ++j)
        for (int i = 0; i < j; ++i)
          if (face(face(s, j), i) != face(face(s, i), j - 1))
            throw DomainError("simplicial identity fails on " + n + ": d" + std::to_string(i) + " d" +
                              std::to_string(j) + " != d" + std::to_string(j - 1) + " d" + std::to_string(i));
    }
}

SimplicialSetFinite simplicial_point() {
  SimplicialSetFinite x;
  x.name = "pt";
  x.add_simplex("v", 0, {});
  x.basepoint = "v";
  return x;
}

SimplicialSetFinite simplicial_sphere(int n) {
  if (n < 0) throw DomainError("negative sphere dimension");
  SimplicialSetFinite x;
  x.name = "S" + std::to_string(n);
  x.add_simplex("v", 0, {});
  x.basepoint = "v";
  if (n == 0) {
    x.add_simplex("w", 0, {});
    return x;
  }
  SimplexRef v{"v", {}};
  for (int j = n - 2; j >= 0; --j) v.degeneracies.push_back(j);
  x.add_simplex("x" + std::to_string(n), n, std::vector<SimplexRef>(static_cast<std::size_t>(n) + 1, v));
  return x;
}

SimplicialSetFinite simplicial_simplex(int n) {
  if (n < 0 || n > 9) throw DomainError("simplex dimension must be in 0..9");
  SimplicialSetFinite x;
  x.name = "D" + std::to_string(n);
  // faces in order of size, named by their vertices
  for (int d = 0; d <= n; ++d) {
    std::vector<int> pick(static_cast<std::size_t>(n) + 1, 0);
    std::fill(pick.begin(), pick.begin() + d + 1, 1);
    std::vector<std::string> names;
    do {
      std::string s = "v";
      for (int i = 0; i <= n; ++i)
        if (pick[i]) s += std::to_string(i);
      names.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(names.begin(), names.end());
    for (const auto& s : names) {
      std::vector<SimplexRef> faces;
      if (d > 0)
        for (int i = 0; i <= d; ++i) {
          std::string f = s;
          f.erase(static_cast<std::size_t>(i) + 1, 1);
          faces.push_back({f, {}});
        }
      x.add_simplex(s, d, faces);
    }
  }
  x.basepoint = "v0";
  return x;
}

SimplicialSetFinite wedge(const SimplicialSetFinite& a, const SimplicialSetFinite& b) {
  SimplicialSetFinite x = a;
  x.name = a.name + "v" + b.name;
  x.basepoint = a.point();
  std::map<std::string, std::string> rename{{b.point(), a.point()}};
  for (int d = 0; d <= b.dimension(); ++d)
    for (const auto& n : b.simplices(d)) {
      if (n == b.point()) continue;
      std::string m = n;
      while (x.has(m)) m += "'";
      rename[n] = m;
      std::vector<SimplexRef> faces;
      for (const auto& f : b.faces(n)) faces.push_back({rename.at(f.base), f.degeneracies});
      x.add_simplex(m, d, faces);
    }
  return x;
}

GradedChain chains(const SimplicialSetFinite& x, bool reduced) {
  GradedChain c;
  c.name = (reduced ? "C~(" : "C(") + x.name + ")";
  const std::string pt = reduced ? x.point() : "";
  std::map<std::string, std::size_t> prev;
  for (int n = 0; n <= std::max(x.dimension(), 0); ++n) {
    std::vector<std::string> names;
    for (const auto& s : x.simplices(n))
      if (!(n == 0 && reduced && s == pt)) names.push_back(s);
    IntMatrix dn(prev.size(), names.size());
    if (n > 0)
      for (std::size_t j = 0; j < names.size(); ++j)
        for (int i = 0; i <= n; ++i) {
          SimplexRef f = x.faces(names[j])[static_cast<std::size_t>(i)];
          if (f.degenerate()) continue;
          auto it = prev.find(f.base);
          if (it != prev.end()) dn(it->second, j) += i % 2 == 0 ? 1 : -1;
        }
    std::map<std::string, std::size_t> here;
    for (std::size_t j = 0; j < names.size(); ++j) here[names[j]] = j;
    c.add_degree(std::move(names), std::move(dn));
    prev = std::move(here);
  }
  return c;
}

FreeDga chain_algebra(const SimplicialSetFinite& x) {
  if (!x.reduced()) throw DomainError(x.name + " is not reduced (it has more than one vertex)");
  GradedChain c = chains(x, true);
  FreeDga a;
  a.name = "T(" + c.name + ")";
  std::vector<std::vector<std::size_t>> at(static_cast<std::size_t>(c.top()) + 1);
  for (int n = 1; n <= c.top(); ++n)
    for (const auto& s : c.basis[n]) at[n].push_back(a.add_generator(s, n));
  for (int n = 2; n <= c.top(); ++n) {
    IntMatrix dn = c.differential(n);
    for (std::size_t j = 0; j < at[n].size(); ++j) {
      DgaElement d;
      for (std::size_t r = 0; r < dn.rows(); ++r) add_to(d, DgaWord{at[n - 1][r]}, dn(r, j));
      a.set_diff(at[n][j], d);
    }
  }
  a.check();
  return a;
}

namespace {

AbelianGroup direct_sum(const std::vector<AbelianGroup>& gs) {
  AbelianGroup out;
  std::vector<Int> t;
  for (const auto& g : gs) {
    out.free_rank += g.free_rank;
    t.insert(t.end(), g.torsion.begin(), g.torsion.end());
  }
  if (t.empty()) return out;
  IntMatrix diag(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) diag(i, i) = t[i];
  out.torsion = cokernel_structure(diag).torsion;
  return out;
}

}  // namespace

JamesReport james_compare(const SimplicialSetFinite& x, int n) {
  x.check();
  FreeDga t = chain_algebra(x);
  GradedChain left = chain_complex(t, n + 1);
  GradedChain c = chains(x, true);
  // pad the reduced chains up to degree n + 1
  while (c.top() < n + 1) c.add_degree({}, IntMatrix(c.rank(c.top()), 0));

  std::vector<GradedChain> powers{unit_chain()};
  // C~ is zero in degree 0, so the k-th power starts in degree k
  for (int k = 1; k <= n + 1; ++k) powers.push_back(tensor_product(powers.back(), c, n + 1));

  JamesReport rep;
  rep.all_equal = true;
  rep.betti_agrees = true;
  for (int m = 0; m <= n; ++m) {
    JamesDegree d;
    d.degree = m;
    d.algebra = left.homology(m);
    std::vector<AbelianGroup> parts;
    for (const auto& p : powers) parts.push_back(p.homology(m));
    d.tensor_sum = direct_sum(parts);
    d.equal = d.algebra == d.tensor_sum;
    rep.all_equal = rep.all_equal && d.equal;
    rep.betti_agrees = rep.betti_agrees && d.algebra.free_rank == d.tensor_sum.free_rank;
    rep.degrees.push_back(d);
  }
  return rep;
}

}  // namespace crx
