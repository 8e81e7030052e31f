#include "crx/invariants.hpp"

#include <algorithm>
#include <sstream>

#include "crx/errors.hpp"
#include "crx/normalizer.hpp"

namespace crx {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes:
      return "Yes";
    case Answer::No:
      return "No";
    case Answer::Undecided:
      return "Undecided";
  }
  return "Undecided";
}

std::string HomotopyGroup::to_string() const {
  std::ostringstream os;
  os << "pi_" << degree;
  if (!basepoint.empty() && degree > 0) os << "(" << basepoint << ")";
  os << " = ";
  if (!decided) {
    os << "undecided (" << reason << ")";
    return os.str();
  }
  if (degree == 0) {
    os << components << " component" << (components == 1 ? "" : "s");
    return os.str();
  }
  if (degree == 1 && !group_trivial && presentation && presentation->tag.rfind("abelian", 0) != 0) {
    os << presentation->tag << ", abelianization " << abelianization.to_string();
    return os.str();
  }
  os << abelianization.to_string();
  return os.str();
}

namespace {

// Abelianized chains of one component.
struct Level {
  bool ok = true;
  std::string reason;
  std::size_t size = 0;
  std::vector<IntVector> rels;
  std::vector<std::size_t> gens;  // generator indices (live generators for n >= 2)
};

IntVector abelianize(const GroupWord& w, std::size_t size) {
  IntVector v(size);
  for (int l : w) {
    std::size_t k = static_cast<std::size_t>(std::abs(l) - 1);
    if (k >= size) throw DomainError("letter out of range");
    v[k] += l > 0 ? 1 : -1;
  }
  return v;
}

class Chains {
public:
  Chains(const Presentation& p, const std::string& x) : p_(p), nz_(p.normalizer()) {
    comp_ = nz_.component_of(x);
  }

  const Normalizer& nz() const { return nz_; }
  std::size_t component() const { return comp_; }
  const Normalizer::Component& comp() const { return nz_.components()[comp_]; }

  Level level(int n) const {
    Level l;
    if (n <= 0) return l;
    if (n == 1) {
      l.size = comp().nontree.size();
      l.gens = comp().nontree;
      for (const auto& r : p_.relations()) {
        if (r.apart || r.degree != 1 || !inside(r.lhs.path.start())) continue;
        l.rels.push_back(abelianize(
            concat_group_words(nz_.letters(r.lhs.path), invert_group_word(nz_.letters(r.rhs.path))), l.size));
      }
      return l;
    }
    if (n > p_.max_degree()) return l;
    const auto& md = nz_.module_data(n, comp_);
    if (!md.lattice_mode && !md.live.empty()) {
      l.ok = false;
      l.reason = "Pi_1 at " + comp().root + " is not known to be trivial (" + comp().pi1.describe() + ")";
      return l;
    }
    l.size = md.live.size();
    l.gens = md.live;
    for (const auto& r : md.leftover) l.rels.push_back(coords(n, r));
    return l;
  }

  IntVector coords(int n, const ModuleVec& v) const {
    const auto& md = nz_.module_data(n, comp_);
    IntVector out(md.live.size());
    for (const auto& [k, c] : v) {
      auto pos = std::find(md.live.begin(), md.live.end(), k.first);
      if (pos != md.live.end()) out[static_cast<std::size_t>(pos - md.live.begin())] += c;
    }
    return out;
  }

  IntVector coords_path(const PathWord& w) const { return abelianize(nz_.letters(w), comp().nontree.size()); }

  // Coordinates of an element of degree n based in this component.
  IntVector coords_of(int n, const CrxWord& w) const {
    if (n == 1) return coords_path(w.path);
    if (n > p_.max_degree()) return {};
    return coords(n, nz_.module_vector(w.higher));
  }

  // d_n : level n -> level n-1, for n >= 2.
  IntMatrix boundary_matrix(int n) const {
    Level top = level(n), low = level(n - 1);
    IntMatrix m(low.size, top.size);
    for (std::size_t j = 0; j < top.gens.size(); ++j) {
      const Generator& g = p_.generators()[top.gens[j]];
      IntVector v = coords_of(n - 1, g.boundary);
      for (std::size_t i = 0; i < v.size() && i < low.size; ++i) m(i, j) = v[i];
    }
    return m;
  }

  // The element sum z_i g_i of degree n, transported to the root.
  CrxWord word_of(int n, const IntVector& z) const {
    Level l = level(n);
    const std::string& root = comp().root;
    if (n == 1) {
      PathWord w = PathWord::identity(root);
      for (std::size_t i = 0; i < z.size(); ++i) {
        const Generator& g = p_.generators()[l.gens[i]];
        PathWord loop = nz_.tree_path(g.source).then(p_.edge(g.name)).then(nz_.tree_path(g.target).inverse());
        w = w.then(loop.power(z[i].get_si()));
      }
      return CrxWord::of_path(w);
    }
    HigherWord w = HigherWord::identity(n, root);
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i] == 0) continue;
      const Generator& g = p_.generators()[l.gens[i]];
      w = w.times(HigherWord::generator(n, g.name, g.base).power(z[i].get_si()).act(nz_.tree_path(g.base).inverse()));
    }
    return CrxWord::of_higher(w);
  }

  // Cycles in degree n (n >= 2): {z : d z in the relations below}.
  std::vector<IntVector> cycles(int n) const {
    Level l = level(n), low = level(n - 1);
    IntMatrix d = boundary_matrix(n);
    IntMatrix m(low.size, l.size + low.rels.size());
    for (std::size_t i = 0; i < low.size; ++i) {
      for (std::size_t j = 0; j < l.size; ++j) m(i, j) = d(i, j);
      for (std::size_t j = 0; j < low.rels.size(); ++j) m(i, l.size + j) = low.rels[j][i];
    }
    std::vector<IntVector> out;
    if (low.size == 0) {
      for (std::size_t j = 0; j < l.size; ++j) {
        IntVector e(l.size);
        e[j] = 1;
        out.push_back(e);
      }
      return out;
    }
    for (const auto& k : integer_kernel(m)) {
      IntVector z(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(l.size));
      if (std::any_of(z.begin(), z.end(), [](const Int& a) { return a != 0; })) out.push_back(z);
    }
    return out;
  }

  // Boundaries plus relations in degree n.
  std::vector<IntVector> trivial_part(int n) const {
    Level l = level(n);
    std::vector<IntVector> out = l.rels;
    if (n + 1 <= p_.max_degree()) {
      IntMatrix d = boundary_matrix(n + 1);
      for (std::size_t j = 0; j < d.cols(); ++j) out.push_back(d.column(j));
    }
    return out;
  }

  bool inside(const std::string& x) const { return nz_.component_of(x) == comp_; }

private:
  const Presentation& p_;
  const Normalizer& nz_;
  std::size_t comp_ = 0;
};

IntMatrix columns(std::size_t rows, const std::vector<IntVector>& cols) { return IntMatrix::from_columns(rows, cols); }

}  // namespace

std::vector<std::vector<std::string>> pi0(const Presentation& c) {
  std::vector<std::vector<std::string>> out;
  for (const auto& comp : c.normalizer().components()) out.push_back(comp.objects);
  return out;
}

Pi1Presentation pi1_presentation(const Presentation& c, const std::string& x) {
  const Normalizer& nz = c.normalizer();
  const auto& comp = nz.components()[nz.component_of(x)];
  Pi1Presentation p;
  p.root = comp.root;
  p.objects = comp.objects;
  for (std::size_t i : comp.nontree) p.generators.push_back(c.generators()[i].name);
  auto show = [&](const GroupWord& w) {
    std::string s;
    for (int l : w) {
      if (!s.empty()) s += " ";
      s += p.generators[static_cast<std::size_t>(std::abs(l) - 1)] + (l < 0 ? "^-1" : "");
    }
    return s.empty() ? "1" : s;
  };
  for (const auto& r : c.relations()) {
    if (r.apart || r.degree != 1 || nz.component_of(r.lhs.path.start()) != nz.component_of(x)) continue;
    p.relators.push_back(show(concat_group_words(nz.letters(r.lhs.path), invert_group_word(nz.letters(r.rhs.path)))));
  }
  for (const auto& g : c.generators())
    if (g.degree == 2 && nz.component_of(g.base) == nz.component_of(x))
      p.relators.push_back(show(nz.letters(g.boundary.path)));
  p.tag = comp.pi1.describe();
  return p;
}

HomotopyGroup pi1(const Presentation& c, const std::string& x) {
  HomotopyGroup h;
  h.degree = 1;
  h.basepoint = x;
  if (!c.has_object(x)) throw DomainError("unknown object " + x);
  const Normalizer& nz = c.normalizer();
  const auto& comp = nz.components()[nz.component_of(x)];
  h.abelianization = comp.pi1.abelianization();
  h.presentation = pi1_presentation(c, x);
  h.decided = comp.pi1.decided() || !h.abelianization.is_trivial();
  if (comp.pi1.decided()) {
    h.group_trivial = comp.pi1.is_trivial();
  } else if (!h.abelianization.is_trivial()) {
    h.group_trivial = false;
  } else {
    h.reason = "Tietze reduction left " + comp.pi1.describe();
  }
  return h;
}

ChainHomology homology(const Presentation& c, const std::string& x, int n) {
  ChainHomology out;
  if (!c.has_object(x)) throw DomainError("unknown object " + x);
  if (n < 2) throw DomainError("module homology is defined in degrees >= 2");
  Chains ch(c, x);
  Level l = ch.level(n);
  if (!l.ok) {
    out.decided = false;
    out.reason = l.reason;
    return out;
  }
  if (l.size == 0) return out;
  Level up = ch.level(n + 1);
  if (!up.ok) {
    out.decided = false;
    out.reason = up.reason;
    return out;
  }
  Level low = ch.level(n - 1);
  IntMatrix in = n + 1 <= c.max_degree() ? ch.boundary_matrix(n + 1) : IntMatrix(l.size, 0);
  IntMatrix dn = ch.boundary_matrix(n);
  out.group = subquotient_homology(in, dn, l.rels, low.rels);
  return out;
}

HomotopyGroup pi_n(const Presentation& c, const std::string& x, int n) {
  if (n < 0) throw DomainError("negative degree");
  if (!c.has_object(x)) throw DomainError("unknown object " + x);
  if (n == 0) {
    HomotopyGroup h;
    h.degree = 0;
    h.basepoint = x;
    h.components = pi0(c).size();
    h.group_trivial = h.components == 1;
    return h;
  }
  if (n == 1) return pi1(c, x);
  HomotopyGroup h;
  h.degree = n;
  h.basepoint = x;
  if (n > c.bound) throw TruncationError("degree " + std::to_string(n) + " exceeds the bound " + std::to_string(c.bound));
  ChainHomology hh = homology(c, x, n);
  h.decided = hh.decided;
  h.reason = hh.reason;
  h.abelianization = hh.group;
  h.group_trivial = hh.decided && hh.group.is_trivial();
  return h;
}

// ---------------------------------------------------------------------------
// Weak equivalences

namespace {

bool same_group(const HomotopyGroup& a, const HomotopyGroup& b) {
  return a.abelianization == b.abelianization && a.group_trivial == b.group_trivial;
}

}  // namespace

WeqReport is_weak_equivalence(const Morphism& f) {
  WeqReport rep;
  const Presentation& s = *f.source;
  const Presentation& t = *f.target;
  rep.bound = std::min(s.bound, t.bound);
  const Normalizer& ns = s.normalizer();
  const Normalizer& nt = t.normalizer();

  // pi_0
  std::vector<int> hit(nt.components().size(), -1);
  for (std::size_t ci = 0; ci < ns.components().size(); ++ci) {
    std::size_t d = nt.component_of(f.map_object(ns.components()[ci].root));
    if (hit[d] >= 0) {
      rep.answer = Answer::No;
      rep.degree = 0;
      rep.basepoint = ns.components()[ci].root;
      rep.detail = "components of " + ns.components()[static_cast<std::size_t>(hit[d])].root + " and " +
                   rep.basepoint + " are identified";
      return rep;
    }
    hit[d] = static_cast<int>(ci);
  }
  for (std::size_t d = 0; d < hit.size(); ++d)
    if (hit[d] < 0) {
      rep.answer = Answer::No;
      rep.degree = 0;
      rep.basepoint = nt.components()[d].root;
      rep.detail = "component of " + rep.basepoint + " is not hit";
      return rep;
    }

  bool undecided = false;
  auto block = [&](int n, const std::string& x, const std::string& why) {
    if (!undecided) {
      rep.degree = n;
      rep.basepoint = x;
      rep.detail = why;
    }
    undecided = true;
  };
  int top = std::min(rep.bound, std::max(s.max_degree(), t.max_degree()));
  for (const auto& comp : ns.components()) {
    const std::string& x = comp.root;
    const std::string y = f.map_object(x);
    // pi_1
    HomotopyGroup a = pi1(s, x), b = pi1(t, y);
    if (a.decided && b.decided && !same_group(a, b)) {
      rep.answer = Answer::No;
      rep.degree = 1;
      rep.basepoint = x;
      rep.detail = "pi_1: " + a.to_string() + " vs " + b.to_string();
      return rep;
    }
    const auto& tc = nt.components()[nt.component_of(y)];
    if (!(a.decided && b.decided)) {
      block(1, x, "pi_1 undecided");
    } else if (!b.group_trivial) {
      bool abelian = comp.pi1.kind() == GroupSolver::Kind::Abelian || comp.pi1.surviving().size() <= 1;
      bool tabelian = tc.pi1.kind() == GroupSolver::Kind::Abelian || tc.pi1.surviving().size() <= 1;
      if (!abelian || !tabelian) {
        block(1, x, "pi_1 is nonabelian; the induced map is not compared");
      } else {
        Chains cs(s, x), ct(t, y);
        std::vector<IntVector> cols;
        for (std::size_t i = 0; i < comp.nontree.size(); ++i) {
          IntVector e(comp.nontree.size());
          e[i] = 1;
          PathWord img = f.apply(cs.word_of(1, e).path);
          // conjugate to the root of the target component
          PathWord loop = nt.tree_path(img.start()).then(img).then(nt.tree_path(img.end()).inverse());
          cols.push_back(ct.coords_path(loop));
        }
        std::vector<IntVector> rels;
        Level lt = ct.level(1);
        rels = lt.rels;
        for (const auto& g : t.generators())
          if (g.degree == 2 && ct.inside(g.base)) rels.push_back(ct.coords_path(g.boundary.path));
        if (!induced_map_surjective(columns(lt.size, cols), rels)) {
          rep.answer = Answer::No;
          rep.degree = 1;
          rep.basepoint = x;
          rep.detail = "pi_1 map is not surjective";
          return rep;
        }
      }
    }
    // pi_n
    for (int n = 2; n <= top; ++n) {
      HomotopyGroup an = pi_n(s, x, n), bn = pi_n(t, y, n);
      if (an.decided && bn.decided && !same_group(an, bn)) {
        rep.answer = Answer::No;
        rep.degree = n;
        rep.basepoint = x;
        rep.detail = "pi_" + std::to_string(n) + ": " + an.abelianization.to_string() + " vs " +
                     bn.abelianization.to_string();
        return rep;
      }
      if (!an.decided || !bn.decided) {
        block(n, x, an.decided ? bn.reason : an.reason);
        continue;
      }
      if (bn.group_trivial) continue;
      Chains cs(s, x), ct(t, y);
      std::vector<IntVector> images;
      Level lt = ct.level(n);
      for (const auto& z : cs.cycles(n)) {
        HigherWord img = f.apply(cs.word_of(n, z).higher);
        images.push_back(ct.coords_of(n, CrxWord::of_higher(img)));
      }
      std::vector<IntVector> span = ct.trivial_part(n);
      span.insert(span.end(), images.begin(), images.end());
      Lattice lat(lt.size, span);
      for (const auto& z : ct.cycles(n))
        if (!lat.contains(z)) {
          rep.answer = Answer::No;
          rep.degree = n;
          rep.basepoint = x;
          rep.detail = "pi_" + std::to_string(n) + " map is not surjective";
          return rep;
        }
    }
  }
  if (undecided) {
    rep.answer = Answer::Undecided;
    return rep;
  }
  rep.answer = Answer::Yes;
  rep.detail = "bijective on pi_0, isomorphisms on pi_1..pi_" + std::to_string(top) + " (relative to bound " +
               std::to_string(rep.bound) + ")";
  return rep;
}

TruncationReport truncation_connectivity(const Presentation& c, int n) {
  TruncationReport rep;
  auto components = pi0(c);
  int top = std::min(c.bound, std::max(c.max_degree(), 1));
  // Truncation: pi_k trivial for k > n.
  Answer trunc = Answer::Yes;
  std::string tdetail;
  for (const auto& comp : components) {
    for (int k = std::max(n + 1, 1); k <= top && trunc != Answer::No; ++k) {
      HomotopyGroup h = pi_n(c, comp.front(), k);
      if (!h.decided) {
        trunc = Answer::Undecided;
        tdetail = h.to_string();
      } else if (!h.group_trivial) {
        trunc = Answer::No;
        tdetail = h.to_string();
      }
    }
  }
  if (n < 0 && !components.empty()) {
    trunc = Answer::No;
    tdetail = "nonempty";
  }
  // Connectivity.
  Answer conn = Answer::Yes;
  std::string cdetail;
  if (components.size() != 1) {
    conn = Answer::No;
    cdetail = std::to_string(components.size()) + " components";
  } else {
    for (int k = 1; k <= std::min(n, top) && conn != Answer::No; ++k) {
      HomotopyGroup h = pi_n(c, components.front().front(), k);
      if (!h.decided) {
        conn = Answer::Undecided;
        cdetail = h.to_string();
      } else if (!h.group_trivial) {
        conn = Answer::No;
        cdetail = h.to_string();
      }
    }
  }
  rep.truncated = trunc;
  rep.connected = conn;
  rep.detail = "truncated: " + to_string(trunc) + (tdetail.empty() ? "" : " (" + tdetail + ")") +
               "; connected: " + to_string(conn) + (cdetail.empty() ? "" : " (" + cdetail + ")");
  return rep;
}

InvarianceReport check_homotopy_invariance(const Morphism& f, const Morphism& g, const J1Homotopy& h) {
  InvarianceReport rep;
  const Presentation& x = *f.source;
  const Presentation& y = *f.target;
  const Normalizer& nx = x.normalizer();
  const Normalizer& ny = y.normalizer();
  auto fail = [&](const std::string& s) {
    rep.failures.push_back(s);
    rep.pass = false;
  };
  auto open = [&](const std::string& s) {
    rep.notes.push_back(s);
    rep.decided = false;
    rep.pass = false;
  };
  for (const auto& o : x.objects())
    if (ny.component_of(f.map_object(o)) != ny.component_of(g.map_object(o)))
      fail("pi_0: f(" + o + ") and g(" + o + ") lie in different components");
  if (!rep.failures.empty()) return rep;

  int top = std::min(x.bound, x.max_degree());
  for (const auto& comp : nx.components()) {
    const std::string& root = comp.root;
    PathWord ell = h.carrier.image(product_cell_name("l", root), 1).path;
    Chains cx(x, root), cy(y, f.map_object(root));
    // pi_1: ell^-1 f(loop) ell = g(loop)
    for (std::size_t i = 0; i < comp.nontree.size(); ++i) {
      IntVector e(comp.nontree.size());
      e[i] = 1;
      PathWord loop = cx.word_of(1, e).path;
      PathWord lhs = ell.inverse().then(f.apply(loop)).then(ell);
      EqualityResult r = ny.equal_in_pi1(lhs, g.apply(loop));
      if (r.not_equal())
        fail("pi_1 at " + root + ": transported f and g differ on " + loop.to_string());
      else if (!r.equal())
        open("pi_1 at " + root + ": " + r.reason);
    }
    // pi_n, n >= 2
    for (int n = 2; n <= top; ++n) {
      Level lx = cx.level(n);
      if (!lx.ok) {
        open("pi_" + std::to_string(n) + " at " + root + ": " + lx.reason);
        continue;
      }
      if (lx.size == 0 || n > y.max_degree()) continue;
      for (const auto& z : cx.cycles(n)) {
        HigherWord w = cx.word_of(n, z).higher;
        HigherWord a = f.apply(w).act(ell);
        HigherWord b = g.apply(w);
        ModuleVec diff = ny.module_vector(a);
        for (const auto& [k, c] : ny.module_vector(b)) {
          auto it = diff.find(k);
          if (it == diff.end()) {
            diff.emplace(k, -c);
          } else {
            it->second -= c;
            if (it->second == 0) diff.erase(it);
          }
        }
        if (diff.empty()) continue;
        Level ly = cy.level(n);
        if (!ly.ok) {
          open("pi_" + std::to_string(n) + " at " + root + ": " + ly.reason);
          continue;
        }
        Lattice lat(ly.size, cy.trivial_part(n));
        if (!lat.contains(cy.coords(n, diff)))
          fail("pi_" + std::to_string(n) + " at " + root + ": transported f and g differ on a cycle");
      }
    }
  }
  return rep;
}

}  // namespace crx
