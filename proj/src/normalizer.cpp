#include "crx/normalizer.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "crx/errors.hpp"

namespace crx {

namespace {

constexpr std::size_t kMaxModuleTerms = 200000;

std::size_t uf_find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

void add_to(ModuleVec& v, const std::pair<std::size_t, Key>& k, const Int& c) {
  if (c == 0) return;
  auto it = v.find(k);
  if (it == v.end()) {
    v.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second == 0) v.erase(it);
}

}  // namespace

Normalizer::Normalizer(const Presentation& p) : p_(&p) {
  const auto& objs = p.objects();
  const auto& gens = p.generators();
  std::vector<std::size_t> parent(objs.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& g : gens) {
    if (g.degree != 1 || !p.has_object(g.source) || !p.has_object(g.target)) continue;
    std::size_t a = uf_find(parent, p.object_index(g.source)), b = uf_find(parent, p.object_index(g.target));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::size_t> comp_of_root;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::size_t r = uf_find(parent, i);
    if (!comp_of_root.count(r)) {
      comp_of_root[r] = components_.size();
      Component c;
      c.root = objs[r];
      components_.push_back(std::move(c));
    }
    std::size_t ci = comp_of_root[r];
    components_[ci].objects.push_back(objs[i]);
    component_of_[objs[i]] = ci;
  }

  // Spanning trees by breadth-first search from each root.
  letter_of_.assign(gens.size(), 0);
  std::vector<bool> is_tree(gens.size(), false);
  std::map<std::string, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].degree != 1 || !p.has_object(gens[i].source) || !p.has_object(gens[i].target)) continue;
    incident[gens[i].source].push_back(i);
    if (gens[i].target != gens[i].source) incident[gens[i].target].push_back(i);
  }
  for (auto& c : components_) {
    tree_[c.root] = PathWord::identity(c.root);
    std::deque<std::string> queue{c.root};
    while (!queue.empty()) {
      std::string x = queue.front();
      queue.pop_front();
      for (std::size_t i : incident[x]) {
        const Generator& g = gens[i];
        bool forward = g.source == x;
        const std::string& y = forward ? g.target : g.source;
        if (tree_.count(y)) continue;
        is_tree[i] = true;
        tree_[y] = tree_[x].then(PathWord::letter(g.name, g.source, g.target, !forward));
        queue.push_back(y);
      }
    }
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].degree != 1 || is_tree[i] || !p.has_object(gens[i].source)) continue;
    Component& c = components_[component_of_.at(gens[i].source)];
    c.nontree.push_back(i);
    letter_of_[i] = static_cast<int>(c.nontree.size());
  }

  // Vertex groups of C_1 and Pi_1.
  std::vector<std::vector<GroupWord>> c1_rel(components_.size()), pi1_rel(components_.size());
  bool has_relations = false;
  for (const auto& r : p.relations()) {
    if (r.apart) continue;
    has_relations = true;
    if (r.degree != 1 || r.lhs.degree != 1 || r.rhs.degree != 1) continue;
    if (!component_of_.count(r.lhs.path.start())) continue;
    GroupWord w = concat_group_words(letters(r.lhs.path), invert_group_word(letters(r.rhs.path)));
    std::size_t ci = component_of_.at(r.lhs.path.start());
    c1_rel[ci].push_back(w);
    pi1_rel[ci].push_back(w);
  }
  for (const auto& g : gens) {
    if (g.degree != 2 || g.boundary.degree != 1 || !component_of_.count(g.base)) continue;
    try {
      pi1_rel[component_of_.at(g.base)].push_back(letters(g.boundary.path));
    } catch (const Error&) {
    }
  }
  for (std::size_t ci = 0; ci < components_.size(); ++ci) {
    std::size_t n = components_[ci].nontree.size();
    components_[ci].c1 = GroupSolver(n, c1_rel[ci]);
    components_[ci].pi1 = GroupSolver(n, pi1_rel[ci]);
  }

  bool trivial_pi1 = std::all_of(components_.begin(), components_.end(),
                                 [](const Component& c) { return c.pi1.decided() && c.pi1.is_trivial(); });
  if (objs.size() == 1 && p.count(1) == 0)
    regime_ = Regime::OneReduced;
  else if (!has_relations)
    regime_ = Regime::Free;
  else if (trivial_pi1)
    regime_ = Regime::TrivialPi1;
  else
    regime_ = Regime::Opaque;

  for (int d = 2; d <= p.max_degree(); ++d)
    for (std::size_t ci = 0; ci < components_.size(); ++ci) build_module(d, ci);
}

std::size_t Normalizer::component_of(const std::string& object) const {
  auto it = component_of_.find(object);
  if (it == component_of_.end()) throw DomainError("unknown object " + object);
  return it->second;
}

PathWord Normalizer::tree_path(const std::string& object) const {
  auto it = tree_.find(object);
  if (it == tree_.end()) throw DomainError("unknown object " + object);
  return it->second;
}

GroupWord Normalizer::letters(const PathWord& path) const {
  GroupWord out;
  for (const auto& s : path.steps()) {
    std::size_t i = p_->generator_index(s.gen, 1);
    int l = letter_of_[i];
    if (l == 0) continue;
    out.push_back(s.inverse ? -l : l);
  }
  return reduce_group_word(out);
}

// ---------------------------------------------------------------------------
// Pi_1 keys

Key Normalizer::key_of(std::size_t component, const GroupWord& w) const {
  const GroupSolver& g = components_[component].pi1;
  if (g.decided()) return *g.normal_form(w);
  GroupWord r = reduce_group_word(w);
  return Key(r.begin(), r.end());
}

Key Normalizer::key_multiply(std::size_t component, const Key& a, const Key& b) const {
  const GroupSolver& g = components_[component].pi1;
  if (g.decided()) return g.multiply(a, b);
  GroupWord w;
  for (const auto& x : a) w.push_back(static_cast<int>(x.get_si()));
  for (const auto& x : b) w.push_back(static_cast<int>(x.get_si()));
  w = reduce_group_word(w);
  return Key(w.begin(), w.end());
}

Key Normalizer::key_invert(std::size_t component, const Key& a) const {
  const GroupSolver& g = components_[component].pi1;
  if (g.decided()) return g.invert(a);
  Key out(a.rbegin(), a.rend());
  for (auto& x : out) x = -x;
  return out;
}

Key Normalizer::key_identity(std::size_t component) const {
  const GroupSolver& g = components_[component].pi1;
  return g.decided() ? g.identity_key() : Key{};
}

// ---------------------------------------------------------------------------
// Modules

ModuleVec Normalizer::raw_vector(const HigherWord& w) const {
  std::size_t ci = component_of(w.base());
  ModuleVec v;
  for (const auto& t : w.terms()) {
    std::size_t gi = p_->generator_index(t.gen, w.degree());
    add_to(v, {gi, key_of(ci, letters(t.actor))}, Int(static_cast<long>(t.exp)));
  }
  return v;
}

ModuleVec Normalizer::substitute(std::size_t component, const ModuleData& md, const ModuleVec& v) const {
  ModuleVec out;
  for (const auto& [k, c] : v) {
    auto it = md.subst.find(k.first);
    if (it == md.subst.end()) {
      add_to(out, k, c);
      continue;
    }
    for (const auto& [k2, c2] : it->second) add_to(out, {k2.first, key_multiply(component, k2.second, k.second)}, c * c2);
  }
  return out;
}

void Normalizer::build_module(int degree, std::size_t component) {
  ModuleData md;
  for (std::size_t i = 0; i < p_->generators().size(); ++i) {
    const Generator& g = p_->generators()[i];
    if (g.degree == degree && component_of_.count(g.base) && component_of_.at(g.base) == component) md.gens.push_back(i);
  }
  md.canonical_keys = components_[component].pi1.decided();

  std::vector<ModuleVec> rels;
  for (const auto& r : p_->relations()) {
    if (r.apart || r.degree != degree || r.lhs.degree != degree || r.rhs.degree != degree) continue;
    if (!component_of_.count(r.lhs.basepoint()) || component_of_.at(r.lhs.basepoint()) != component) continue;
    try {
      ModuleVec v = raw_vector(r.lhs.higher);
      for (const auto& [k, c] : raw_vector(r.rhs.higher)) add_to(v, k, -c);
      if (!v.empty()) rels.push_back(std::move(v));
    } catch (const Error&) {
    }
  }

  // Module Tietze moves: a generator occurring in a relation once, with
  // coefficient +-1, is expressed through the rest.
  std::size_t budget = default_tietze_budget(), moves = 0;
  bool progress = true;
  while (progress && moves < budget) {
    progress = false;
    for (std::size_t ri = 0; ri < rels.size(); ++ri) {
      const ModuleVec& r = rels[ri];
      std::map<std::size_t, int> occurrences;
      for (const auto& [k, c] : r) ++occurrences[k.first];
      const std::pair<std::size_t, Key>* pick = nullptr;
      Int eps;
      for (const auto& [k, c] : r) {
        if (occurrences[k.first] == 1 && (c == 1 || c == -1)) {
          pick = &k;
          eps = c;
          break;
        }
      }
      if (!pick) continue;
      // eps g^[k] + rest = 0  =>  g = -eps rest^[k^-1]
      std::size_t g = pick->first;
      Key kinv = key_invert(component, pick->second);
      ModuleVec value;
      for (const auto& [k2, c2] : r)
        if (k2.first != g) add_to(value, {k2.first, key_multiply(component, k2.second, kinv)}, -eps * c2);
      ModuleData one;
      one.subst[g] = value;
      std::size_t total = 0;
      for (auto& [h, v] : md.subst) {
        v = substitute(component, one, v);
        total += v.size();
      }
      md.subst[g] = value;
      std::vector<ModuleVec> next;
      for (std::size_t rj = 0; rj < rels.size(); ++rj) {
        if (rj == ri) continue;
        ModuleVec v = substitute(component, one, rels[rj]);
        total += v.size();
        if (!v.empty()) next.push_back(std::move(v));
      }
      rels = std::move(next);
      ++moves;
      progress = total <= kMaxModuleTerms;
      break;
    }
  }
  md.leftover = std::move(rels);

  for (std::size_t gi : md.gens)
    if (!md.subst.count(gi)) md.live.push_back(gi);
  const GroupSolver& pi1 = components_[component].pi1;
  md.lattice_mode = pi1.decided() && pi1.is_trivial();
  if (md.lattice_mode) {
    std::vector<IntVector> vecs;
    for (const auto& r : md.leftover) {
      IntVector v(md.live.size());
      for (const auto& [k, c] : r) {
        auto pos = std::find(md.live.begin(), md.live.end(), k.first);
        if (pos != md.live.end()) v[static_cast<std::size_t>(pos - md.live.begin())] += c;
      }
      vecs.push_back(std::move(v));
    }
    md.lattice = Lattice(md.live.size(), std::move(vecs));
  }
  modules_[{degree, component}] = std::move(md);
}

const Normalizer::ModuleData& Normalizer::module_data(int degree, std::size_t component) const {
  auto it = modules_.find({degree, component});
  if (it == modules_.end()) throw DomainError("no module data in degree " + std::to_string(degree));
  return it->second;
}

ModuleVec Normalizer::module_vector(const HigherWord& w) const {
  std::size_t ci = component_of(w.base());
  return substitute(ci, module_data(w.degree(), ci), raw_vector(w));
}

EqualityResult Normalizer::compare_vectors(int degree, std::size_t component, const ModuleVec& diff) const {
  if (diff.empty()) return {Verdict::Equal, regime_, "module vectors agree"};
  const ModuleData& md = module_data(degree, component);
  if (md.lattice_mode) {
    IntVector v(md.live.size());
    for (const auto& [k, c] : diff) {
      auto pos = std::find(md.live.begin(), md.live.end(), k.first);
      if (pos != md.live.end()) v[static_cast<std::size_t>(pos - md.live.begin())] += c;
    }
    if (md.lattice.contains(v)) return {Verdict::Equal, regime_, "difference lies in the relation lattice"};
    return {Verdict::NotEqual, regime_, "difference is outside the relation lattice"};
  }
  if (!md.canonical_keys)
    return {Verdict::Undecided, regime_, "word problem of Pi_1 not decided: " + components_[component].pi1.describe()};
  if (md.leftover.empty()) return {Verdict::NotEqual, regime_, "module vectors differ in a free module"};
  return {Verdict::Undecided, regime_,
          std::to_string(md.leftover.size()) + " module relations in degree " + std::to_string(degree) +
              " left after Tietze reduction"};
}

EqualityResult Normalizer::equal_paths(const PathWord& u, const PathWord& v) const {
  if (u.start() != v.start() || u.end() != v.end())
    return {Verdict::NotEqual, regime_, "paths have different endpoints"};
  if (u == v) return {Verdict::Equal, regime_, "identical words"};
  GroupWord w = concat_group_words(letters(u), invert_group_word(letters(v)));
  if (w.empty()) return {Verdict::Equal, regime_, "words agree in the free groupoid"};
  const GroupSolver& g = components_[component_of(u.start())].c1;
  if (!g.decided()) {
    if (g.proves_trivial(w)) return {Verdict::Equal, regime_, "the difference is trivial by relator rewriting in C_1"};
    return {Verdict::Undecided, regime_, "vertex group of C_1: " + g.describe()};
  }
  if (*g.normal_form(w) == g.identity_key()) return {Verdict::Equal, regime_, "normal forms in C_1 agree"};
  return {Verdict::NotEqual, regime_, "normal forms in C_1 differ"};
}

EqualityResult Normalizer::equal_in_pi1(const PathWord& u, const PathWord& v) const {
  if (u.start() != v.start() || u.end() != v.end())
    return {Verdict::NotEqual, regime_, "paths have different endpoints"};
  GroupWord w = concat_group_words(letters(u), invert_group_word(letters(v)));
  if (w.empty()) return {Verdict::Equal, regime_, "words agree in the free groupoid"};
  const GroupSolver& g = components_[component_of(u.start())].pi1;
  if (!g.decided()) {
    if (g.proves_trivial(w)) return {Verdict::Equal, regime_, "the difference is trivial by relator rewriting in Pi_1"};
    return {Verdict::Undecided, regime_, "vertex group of Pi_1: " + g.describe()};
  }
  if (*g.normal_form(w) == g.identity_key()) return {Verdict::Equal, regime_, "normal forms in Pi_1 agree"};
  return {Verdict::NotEqual, regime_, "normal forms in Pi_1 differ"};
}

namespace {

std::vector<Term> unit_terms(const HigherWord& w) {
  std::vector<Term> out;
  for (const auto& t : w.terms())
    for (std::int64_t i = 0; i < (t.exp < 0 ? -t.exp : t.exp); ++i) out.push_back({t.gen, t.exp < 0 ? -1 : 1, t.actor});
  return out;
}

std::vector<std::vector<Term>> rotations(const std::vector<Term>& ts) {
  std::vector<std::vector<Term>> out;
  for (std::size_t s = 0; s < ts.size(); ++s) {
    std::vector<Term> r(ts.begin() + static_cast<std::ptrdiff_t>(s), ts.end());
    r.insert(r.end(), ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(s));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

bool Normalizer::is_acted_relator(const HigherWord& d0) const {
  // generators set to the identity by a relation drop out first
  std::set<std::string> killed;
  for (const auto& rel : p_->relations()) {
    if (rel.apart || rel.degree != d0.degree()) continue;
    const auto& a = rel.lhs.higher.terms();
    const auto& b = rel.rhs.higher.terms();
    if (a.size() == 1 && b.empty() && (a[0].exp == 1 || a[0].exp == -1)) killed.insert(a[0].gen);
    if (b.size() == 1 && a.empty() && (b[0].exp == 1 || b[0].exp == -1)) killed.insert(b[0].gen);
  }
  auto strip = [&](const HigherWord& w) {
    std::vector<Term> ts;
    for (const auto& t : w.terms())
      if (!killed.count(t.gen)) ts.push_back(t);
    return HigherWord(w.degree(), w.base(), ts);
  };
  HigherWord d = strip(d0);
  std::vector<Term> dt = unit_terms(d);
  if (dt.empty()) return true;
  auto drots = rotations(dt);
  for (const auto& rel : p_->relations()) {
    if (rel.apart || rel.degree != d.degree()) continue;
    HigherWord r = strip(rel.lhs.higher.times(rel.rhs.higher.inverse()));
    if (r.is_identity()) continue;
    if (component_of(r.base()) != component_of(d.base())) continue;
    for (const HigherWord& rr : {r, r.inverse()}) {
      std::vector<Term> rt = unit_terms(rr);
      if (rt.size() != dt.size()) continue;
      for (const auto& rrot : rotations(rt))
        for (const auto& drot : drots) {
          bool ok = true;
          for (std::size_t i = 0; i < rt.size() && ok; ++i) ok = rrot[i].gen == drot[i].gen && rrot[i].exp == drot[i].exp;
          if (!ok) continue;
          PathWord w = rrot[0].actor.inverse().then(drot[0].actor);
          for (std::size_t i = 0; i < rt.size() && ok; ++i)
            ok = equal_paths(rrot[i].actor.then(w), drot[i].actor).equal();
          if (ok) return true;
        }
    }
  }
  return false;
}

EqualityResult Normalizer::equal(const CrxWord& u, const CrxWord& v) const {
  if (u.degree != v.degree) return {Verdict::NotEqual, regime_, "different degrees"};
  if (u.degree == 0)
    return u.object == v.object ? EqualityResult{Verdict::Equal, regime_, "same object"}
                                : EqualityResult{Verdict::NotEqual, regime_, "different objects"};
  if (u.degree == 1) return equal_paths(u.path, v.path);
  if (u.higher.base() != v.higher.base()) return {Verdict::NotEqual, regime_, "different basepoints"};
  if (u.higher == v.higher) return {Verdict::Equal, regime_, "identical words"};
  std::size_t ci = component_of(u.higher.base());
  int n = u.degree;
  if (!modules_.count({n, ci})) return {Verdict::NotEqual, regime_, "no generators in this degree"};

  EqualityResult bd;
  if (n == 2) {
    bd = equal_paths(p_->boundary2(u.higher), p_->boundary2(v.higher));
    if (bd.verdict != Verdict::Equal) return bd;
  }
  ModuleVec diff = module_vector(u.higher);
  for (const auto& [k, c] : module_vector(v.higher)) add_to(diff, k, -c);
  EqualityResult r = compare_vectors(n, ci, diff);
  if (r.verdict == Verdict::Undecided && is_acted_relator(u.higher.times(v.higher.inverse())))
    return {Verdict::Equal, regime_, "the difference is an acted relator"};
  if (n == 2 && r.equal()) {
    // The abelianization detects ker(d_2) faithfully for free crossed modules
    // and whenever C_2 is abelian.
    const ModuleData& md = module_data(2, ci);
    const GroupSolver& c1 = components_[ci].c1;
    bool c1_trivial = c1.decided() && c1.is_trivial();
    if (!md.leftover.empty() && !c1_trivial && !is_acted_relator(u.higher.times(v.higher.inverse())))
      return {Verdict::Undecided, regime_, "degree-2 relations leave the commutator part open"};
  }
  return r;
}

}  // namespace crx
