#include "crx/crossed_complex.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "crx/errors.hpp"
#include "crx/normalizer.hpp"

namespace crx {

int default_bound() {
  if (const char* env = std::getenv("CRX_BOUND")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 10;
}

Presentation::Presentation(std::string n, int b) : name(std::move(n)), bound(b) {}

void Presentation::add_object(const std::string& x) {
  if (object_index_.count(x)) throw DomainError("duplicate object " + x);
  object_index_[x] = objects_.size();
  objects_.push_back(x);
  touch();
}

void Presentation::add_edge(const std::string& n, const std::string& source, const std::string& target) {
  if (generator_index_.count({1, n})) throw DomainError("duplicate generator " + n + " in degree 1");
  Generator g;
  g.name = n;
  g.degree = 1;
  g.source = source;
  g.target = target;
  generator_index_[{1, n}] = generators_.size();
  generators_.push_back(std::move(g));
  touch();
}

void Presentation::add_cell(const std::string& n, int degree, const CrxWord& boundary) {
  add_cell(n, degree, boundary.basepoint(), boundary);
}

void Presentation::add_cell(const std::string& n, int degree, const std::string& base, const CrxWord& boundary) {
  if (degree < 2) throw DomainError("add_cell needs degree >= 2");
  if (generator_index_.count({degree, n}))
    throw DomainError("duplicate generator " + n + " in degree " + std::to_string(degree));
  Generator g;
  g.name = n;
  g.degree = degree;
  g.base = base;
  g.boundary = boundary;
  generator_index_[{degree, n}] = generators_.size();
  generators_.push_back(std::move(g));
  touch();
}

void Presentation::add_relation(Relation r) {
  relations_.push_back(std::move(r));
  touch();
}

void Presentation::add_relation(int degree, const CrxWord& lhs, const CrxWord& rhs, bool apart) {
  add_relation(Relation{degree, lhs, rhs, apart});
}

std::size_t Presentation::object_index(const std::string& x) const {
  auto it = object_index_.find(x);
  if (it == object_index_.end()) throw DomainError("unknown object " + x);
  return it->second;
}

const Generator* Presentation::find(const std::string& n, int degree) const {
  auto it = generator_index_.find({degree, n});
  return it == generator_index_.end() ? nullptr : &generators_[it->second];
}

const Generator& Presentation::get(const std::string& n, int degree) const {
  const Generator* g = find(n, degree);
  if (!g) throw UnknownGenerator("unknown generator " + n + " in degree " + std::to_string(degree));
  return *g;
}

std::size_t Presentation::generator_index(const std::string& n, int degree) const {
  auto it = generator_index_.find({degree, n});
  if (it == generator_index_.end())
    throw UnknownGenerator("unknown generator " + n + " in degree " + std::to_string(degree));
  return it->second;
}

std::vector<const Generator*> Presentation::generators_of_degree(int degree) const {
  std::vector<const Generator*> out;
  for (const auto& g : generators_)
    if (g.degree == degree) out.push_back(&g);
  return out;
}

std::size_t Presentation::count(int degree) const {
  if (degree == 0) return objects_.size();
  return static_cast<std::size_t>(
      std::count_if(generators_.begin(), generators_.end(), [&](const Generator& g) { return g.degree == degree; }));
}

int Presentation::max_degree() const {
  int m = objects_.empty() ? -1 : 0;
  for (const auto& g : generators_) m = std::max(m, g.degree);
  return m;
}

std::vector<std::size_t> Presentation::counts_by_degree() const {
  int m = max_degree();
  std::vector<std::size_t> out;
  for (int d = 0; d <= m; ++d) out.push_back(count(d));
  return out;
}

PathWord Presentation::edge(const std::string& n, bool inverse) const {
  const Generator& g = get(n, 1);
  return PathWord::letter(g.name, g.source, g.target, inverse);
}

CrxWord Presentation::generator_word(const std::string& n, int degree) const {
  if (degree == 0) {
    if (!has_object(n)) throw DomainError("unknown object " + n);
    return CrxWord::of_object(n);
  }
  if (degree == 1) return CrxWord::of_path(edge(n));
  const Generator& g = get(n, degree);
  return CrxWord::of_higher(HigherWord::generator(degree, g.name, g.base));
}

PathWord Presentation::boundary2(const HigherWord& w) const {
  if (w.degree() != 2) throw DomainError("boundary2 needs a degree-2 word");
  PathWord out = PathWord::identity(w.base());
  for (const auto& t : w.terms()) {
    const Generator& g = get(t.gen, 2);
    if (g.boundary.degree != 1) throw DomainError("boundary of " + g.name + " is not a path");
    PathWord piece = t.actor.inverse().then(g.boundary.path.power(static_cast<long>(t.exp))).then(t.actor);
    out = out.then(piece);
  }
  return out;
}

HigherWord Presentation::boundary_high(const HigherWord& w) const {
  int n = w.degree();
  if (n < 3) throw DomainError("boundary_high needs degree >= 3");
  HigherWord out = HigherWord::identity(n - 1, w.base());
  for (const auto& t : w.terms()) {
    const Generator& g = get(t.gen, n);
    if (g.boundary.degree != n - 1) throw DomainError("boundary of " + g.name + " has the wrong degree");
    out = out.times(g.boundary.higher.power(t.exp).act(t.actor));
  }
  return out;
}

CrxWord Presentation::boundary(const CrxWord& w) const {
  if (w.degree < 2) throw DomainError("boundary of an element of degree < 2");
  if (w.degree == 2) return CrxWord::of_path(boundary2(w.higher));
  return CrxWord::of_higher(boundary_high(w.higher));
}

const Normalizer& Presentation::normalizer() const {
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  if (!cache_.ptr) cache_.ptr = std::make_shared<Normalizer>(*this);
  return *cache_.ptr;
}

PathWord reduce_path(const PathWord& w, const Presentation& groupoid) {
  for (const auto& s : w.steps()) {
    const Generator* g = groupoid.find(s.gen, 1);
    if (!g) throw UnknownGenerator("unknown generator " + s.gen + " in degree 1");
    const std::string& from = s.inverse ? g->target : g->source;
    const std::string& to = s.inverse ? g->source : g->target;
    if (from != s.from || to != s.to) throw CompositionError("letter " + s.gen + " used with wrong endpoints");
  }
  return PathWord(w.start(), w.steps());
}

// ---------------------------------------------------------------------------

const std::string& Morphism::map_object(const std::string& x) const {
  auto it = object_map.find(x);
  if (it == object_map.end()) throw DomainError("morphism does not map object " + x);
  return it->second;
}

const CrxWord& Morphism::image(const std::string& gen, int degree) const {
  auto it = generator_map.find({degree, gen});
  if (it == generator_map.end())
    throw UnknownGenerator("morphism does not map generator " + gen + " in degree " + std::to_string(degree));
  return it->second;
}

PathWord Morphism::apply(const PathWord& p) const {
  PathWord out = PathWord::identity(map_object(p.start()));
  for (const auto& s : p.steps()) {
    const CrxWord& img = image(s.gen, 1);
    if (img.degree != 1) throw DomainError("image of " + s.gen + " is not a path");
    out = out.then(s.inverse ? img.path.inverse() : img.path);
  }
  return out;
}

HigherWord Morphism::apply(const HigherWord& h) const {
  int n = h.degree();
  HigherWord out = HigherWord::identity(n, map_object(h.base()));
  for (const auto& t : h.terms()) {
    const CrxWord& img = image(t.gen, n);
    if (img.degree != n) throw DomainError("image of " + t.gen + " has the wrong degree");
    out = out.times(img.higher.power(t.exp).act(apply(t.actor)));
  }
  return out;
}

CrxWord Morphism::apply(const CrxWord& w) const {
  if (w.degree == 0) return CrxWord::of_object(map_object(w.object));
  if (w.degree == 1) return CrxWord::of_path(apply(w.path));
  return CrxWord::of_higher(apply(w.higher));
}

Morphism identity_morphism(const PresentationPtr& p) {
  Morphism m;
  m.source = p;
  m.target = p;
  for (const auto& x : p->objects()) m.object_map[x] = x;
  for (const auto& g : p->generators()) m.generator_map[{g.degree, g.name}] = p->generator_word(g.name, g.degree);
  return m;
}

Morphism compose(const Morphism& f, const Morphism& g) {
  Morphism m;
  m.source = f.source;
  m.target = g.target;
  for (const auto& [x, y] : f.object_map) m.object_map[x] = g.map_object(y);
  for (const auto& [k, w] : f.generator_map) m.generator_map[k] = g.apply(w);
  return m;
}

// ---------------------------------------------------------------------------

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Free:
      return "Free";
    case Regime::OneReduced:
      return "OneReduced";
    case Regime::TrivialPi1:
      return "TrivialPi1";
    case Regime::FiniteEnumerable:
      return "FiniteEnumerable";
    case Regime::Opaque:
      return "Opaque";
  }
  return "Opaque";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal:
      return "Equal";
    case Verdict::NotEqual:
      return "NotEqual";
    case Verdict::Undecided:
      return "Undecided";
  }
  return "Undecided";
}

EqualityResult are_equal(const Presentation& c, const CrxWord& u, const CrxWord& v) {
  return c.normalizer().equal(u, v);
}

Regime regime_of(const Presentation& c) { return c.normalizer().regime(); }

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::axiom_failed(int axiom) const {
  return std::any_of(failures.begin(), failures.end(), [&](const Diagnostic& d) { return d.axiom == axiom; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& d : failures) os << "FAIL axiom " << d.axiom << " at " << d.location << ": " << d.message << "\n";
  for (const auto& d : obligations)
    os << "OPEN axiom " << d.axiom << " at " << d.location << ": " << d.message << "\n";
  if (failures.empty() && obligations.empty()) os << "all axioms pass\n";
  return os.str();
}

namespace {

std::string gen_location(const Generator& g) { return "generator " + g.name + " (degree " + std::to_string(g.degree) + ")"; }

// Structural check of a word against the presentation; returns messages
// tagged with an axiom number.
void check_word(const Presentation& c, const CrxWord& w, int expected_degree, const std::string& where,
                std::vector<Diagnostic>& out) {
  if (w.degree != expected_degree) {
    out.push_back({3, where, "word has degree " + std::to_string(w.degree) + ", expected " +
                                 std::to_string(expected_degree)});
    return;
  }
  auto check_path = [&](const PathWord& p) {
    if (!c.has_object(p.start())) out.push_back({1, where, "path starts at unknown object " + p.start()});
    for (const auto& s : p.steps()) {
      const Generator* g = c.find(s.gen, 1);
      if (!g) {
        out.push_back({0, where, "unknown degree-1 generator " + s.gen});
        continue;
      }
      const std::string& from = s.inverse ? g->target : g->source;
      const std::string& to = s.inverse ? g->source : g->target;
      if (from != s.from || to != s.to)
        out.push_back({1, where, "letter " + s.gen + " used between " + s.from + " and " + s.to});
    }
  };
  if (w.degree == 0) {
    if (!c.has_object(w.object)) out.push_back({1, where, "unknown object " + w.object});
  } else if (w.degree == 1) {
    check_path(w.path);
  } else {
    if (!c.has_object(w.higher.base())) out.push_back({2, where, "word based at unknown object " + w.higher.base()});
    for (const auto& t : w.higher.terms()) {
      const Generator* g = c.find(t.gen, w.degree);
      if (!g) {
        out.push_back({0, where, "unknown degree-" + std::to_string(w.degree) + " generator " + t.gen});
        continue;
      }
      check_path(t.actor);
      if (t.actor.start() != g->base)
        out.push_back({2, where, "actor of " + t.gen + " starts at " + t.actor.start() + " but " + t.gen +
                                     " lives over " + g->base});
    }
  }
}

}  // namespace

ValidationReport validate(const Presentation& c) {
  ValidationReport rep;
  std::vector<Diagnostic>& f = rep.failures;

  for (const auto& g : c.generators()) {
    std::string loc = gen_location(g);
    if (g.degree > c.bound)
      f.push_back({0, loc, "degree exceeds the truncation bound " + std::to_string(c.bound)});
    if (g.degree == 1) {
      if (!c.has_object(g.source)) f.push_back({1, loc, "source " + g.source + " is not an object"});
      if (!c.has_object(g.target)) f.push_back({1, loc, "target " + g.target + " is not an object"});
      continue;
    }
    if (!c.has_object(g.base)) {
      f.push_back({2, loc, "basepoint " + g.base + " is not an object"});
      continue;
    }
    std::vector<Diagnostic> local;
    check_word(c, g.boundary, g.degree - 1, loc + " boundary", local);
    f.insert(f.end(), local.begin(), local.end());
    if (!local.empty()) continue;
    if (g.degree == 2) {
      const PathWord& b = g.boundary.path;
      if (b.start() != g.base)
        f.push_back({4, loc, "boundary is based at " + b.start() + ", not in Aut(" + g.base + ")"});
      else if (!b.is_loop())
        f.push_back({3, loc, "boundary runs from " + b.start() + " to " + b.end() + "; s(d2) != t(d2)"});
    } else if (g.boundary.higher.base() != g.base) {
      f.push_back({3, loc, "boundary is based at " + g.boundary.higher.base() + ", not at " + g.base});
    }
  }
  for (std::size_t i = 0; i < c.relations().size(); ++i) {
    const Relation& r = c.relations()[i];
    std::string loc = "relation " + std::to_string(i + 1);
    check_word(c, r.lhs, r.degree, loc + " lhs", f);
    check_word(c, r.rhs, r.degree, loc + " rhs", f);
    if (r.lhs.degree == r.rhs.degree && r.lhs.degree == r.degree) {
      bool same_ends = r.lhs.basepoint() == r.rhs.basepoint();
      if (r.degree == 1) same_ends = same_ends && r.lhs.path.end() == r.rhs.path.end();
      if (!same_ends) f.push_back({0, loc, "the two sides have different endpoints"});
    }
  }
  if (!f.empty()) return rep;

  const Normalizer* nz = nullptr;
  try {
    nz = &c.normalizer();
  } catch (const Error& e) {
    f.push_back({0, c.name, std::string("cannot build equality engine: ") + e.what()});
    return rep;
  }

  auto note = [&](int axiom, const std::string& loc, const EqualityResult& r, const std::string& what) {
    if (r.verdict == Verdict::Undecided)
      rep.obligations.push_back({axiom, loc, what + " undecided (" + to_string(r.regime) + ": " + r.reason + ")"});
  };

  for (const auto& g : c.generators()) {
    if (g.degree < 3) continue;
    std::string loc = gen_location(g);
    CrxWord dd = c.boundary(g.boundary);
    CrxWord one = dd.degree == 1 ? CrxWord::of_path(PathWord::identity(g.base))
                                 : CrxWord::of_higher(HigherWord::identity(dd.degree, g.base));
    EqualityResult r = nz->equal(dd, one);
    if (r.not_equal()) f.push_back({3, loc, "boundary of the boundary is " + dd.to_string() + ", not trivial"});
    note(3, loc, r, "dd = 0");
  }

  for (std::size_t i = 0; i < c.relations().size(); ++i) {
    const Relation& r = c.relations()[i];
    std::string loc = "relation " + std::to_string(i + 1);
    if (r.apart) {
      EqualityResult e = nz->equal(r.lhs, r.rhs);
      if (e.equal()) {
        if (r.degree >= 3 && r.lhs.higher == r.rhs.higher)
          f.push_back({2, loc, "declares " + r.lhs.to_string() + " != " + r.rhs.to_string() +
                                   ", but C_" + std::to_string(r.degree) + " is abelian"});
        else if (r.degree >= 2)
          f.push_back({6, loc, "declares " + r.lhs.to_string() + " != " + r.rhs.to_string() +
                                   ", but the boundary action forces equality"});
        else
          f.push_back({1, loc, "declares distinct paths that are equal in the groupoid"});
      }
      note(r.degree >= 3 ? 2 : 6, loc, e, "apartness");
      continue;
    }
    if (r.degree >= 2) {
      CrxWord bl = c.boundary(r.lhs), br = c.boundary(r.rhs);
      EqualityResult e = nz->equal(bl, br);
      if (e.not_equal())
        f.push_back({5, loc, "sides have different boundaries " + bl.to_string() + " and " + br.to_string()});
      note(5, loc, e, "boundary compatibility");
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

MorphismReport verify_morphism(const Morphism& m) {
  MorphismReport rep;
  const Presentation& s = *m.source;
  const Presentation& t = *m.target;
  for (const auto& x : s.objects()) {
    auto it = m.object_map.find(x);
    if (it == m.object_map.end())
      rep.failures.push_back("object " + x + " is not mapped");
    else if (!t.has_object(it->second))
      rep.failures.push_back("object " + x + " maps to unknown object " + it->second);
  }
  if (!rep.failures.empty()) return rep;
  auto decide = [&](const EqualityResult& r, const std::string& what) {
    if (r.not_equal()) rep.failures.push_back(what);
    if (r.verdict == Verdict::Undecided)
      rep.obligations.push_back(what + " (undecided: " + to_string(r.regime) + ", " + r.reason + ")");
  };
  for (const auto& g : s.generators()) {
    auto it = m.generator_map.find({g.degree, g.name});
    std::string loc = "generator " + g.name;
    if (it == m.generator_map.end()) {
      rep.failures.push_back(loc + " is not mapped");
      continue;
    }
    const CrxWord& img = it->second;
    if (img.degree != g.degree) {
      rep.failures.push_back(loc + " maps to a word of degree " + std::to_string(img.degree));
      continue;
    }
    try {
      if (g.degree == 1) {
        if (img.path.start() != m.map_object(g.source) || img.path.end() != m.map_object(g.target))
          rep.failures.push_back(loc + " maps to a path " + img.path.start() + " -> " + img.path.end() +
                                 ", expected " + m.map_object(g.source) + " -> " + m.map_object(g.target));
        continue;
      }
      if (img.higher.base() != m.map_object(g.base)) {
        rep.failures.push_back(loc + " maps to a word based at " + img.higher.base());
        continue;
      }
      CrxWord lhs = t.boundary(img);
      CrxWord rhs = m.apply(g.boundary);
      decide(are_equal(t, lhs, rhs), loc + ": boundary not preserved (" + lhs.to_string() + " vs " +
                                         rhs.to_string() + ")");
    } catch (const Error& e) {
      rep.failures.push_back(loc + ": " + e.what());
    }
  }
  if (!rep.failures.empty()) return rep;
  for (std::size_t i = 0; i < s.relations().size(); ++i) {
    const Relation& r = s.relations()[i];
    if (r.apart) continue;
    try {
      decide(are_equal(t, m.apply(r.lhs), m.apply(r.rhs)), "relation " + std::to_string(i + 1) + " not preserved");
    } catch (const Error& e) {
      rep.failures.push_back("relation " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return rep;
}

MorphismReport compare_morphisms(const Morphism& f, const Morphism& g) {
  MorphismReport rep;
  for (const auto& x : f.source->objects()) {
    if (f.map_object(x) != g.map_object(x))
      rep.failures.push_back("object " + x + ": " + f.map_object(x) + " vs " + g.map_object(x));
  }
  for (const auto& gen : f.source->generators()) {
    const CrxWord& a = f.image(gen.name, gen.degree);
    const CrxWord& b = g.image(gen.name, gen.degree);
    std::string loc = "generator " + gen.name + ": " + a.to_string() + " vs " + b.to_string();
    if (a.basepoint() != b.basepoint() || (a.degree == 1 && a.path.end() != b.path.end())) {
      rep.failures.push_back(loc);
      continue;
    }
    EqualityResult r = are_equal(*f.target, a, b);
    if (r.not_equal()) rep.failures.push_back(loc);
    if (r.verdict == Verdict::Undecided) rep.obligations.push_back(loc + " (undecided)");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Standard cells

namespace {

std::shared_ptr<Presentation> make_point(const std::string& name) {
  auto p = std::make_shared<Presentation>(name);
  p->add_object("*");
  return p;
}

CrxWord identity_in(int degree, const std::string& base) {
  if (degree == 0) return CrxWord::of_object(base);
  if (degree == 1) return CrxWord::of_path(PathWord::identity(base));
  return CrxWord::of_higher(HigherWord::identity(degree, base));
}

// s * t^-1 in degree k (path for k = 1)
CrxWord difference(const Presentation& p, const std::string& s, const std::string& t, int k) {
  if (k == 1) return CrxWord::of_path(p.edge(s).then(p.edge(t, true)));
  HigherWord a = p.generator_word(s, k).higher;
  HigherWord b = p.generator_word(t, k).higher;
  return CrxWord::of_higher(a.times(b.inverse()));
}

}  // namespace

PresentationPtr standard(StandardKind kind, int n) {
  switch (kind) {
    case StandardKind::Point:
      return make_point("point");
    case StandardKind::J1:
      return standard(StandardKind::Disk, 1);
    case StandardKind::Sphere: {
      if (n < -1) throw DomainError("Sphere(" + std::to_string(n) + ") is undefined");
      auto p = std::make_shared<Presentation>("S" + std::to_string(n));
      if (n == -1) {
        p->name = "empty";
        return p;
      }
      p->add_object("0");
      if (n == 0) {
        p->add_object("1");
      } else if (n == 1) {
        p->add_edge("s", "0", "0");
      } else {
        p->add_cell("s", n, "0", identity_in(n - 1, "0"));
      }
      return p;
    }
    case StandardKind::Disk: {
      if (n < 0) throw DomainError("Disk(" + std::to_string(n) + ") is undefined");
      auto p = std::make_shared<Presentation>("D" + std::to_string(n));
      p->add_object("0");
      if (n == 1) {
        p->add_object("1");
        p->add_edge("l", "0", "1");
      } else if (n >= 2) {
        if (n == 2)
          p->add_edge("a", "0", "0");
        else
          p->add_cell("a", n - 1, "0", identity_in(n - 2, "0"));
        p->add_cell("b", n, "0", p->generator_word("a", n - 1));
      }
      return p;
    }
    case StandardKind::Globe: {
      if (n < 0) throw DomainError("Globe(" + std::to_string(n) + ") is undefined");
      auto p = std::make_shared<Presentation>("G" + std::to_string(n));
      p->add_object("0");
      if (n == 0) return p;
      p->add_object("1");
      for (int k = 1; k < n; ++k) {
        std::string s = "s" + std::to_string(k), t = "t" + std::to_string(k);
        if (k == 1) {
          p->add_edge(s, "0", "1");
          p->add_edge(t, "0", "1");
        } else {
          CrxWord d = difference(*p, "s" + std::to_string(k - 1), "t" + std::to_string(k - 1), k - 1);
          p->add_cell(s, k, "0", d);
          p->add_cell(t, k, "0", d);
        }
      }
      if (n == 1)
        p->add_edge("x", "0", "1");
      else
        p->add_cell("x", n, "0", difference(*p, "s" + std::to_string(n - 1), "t" + std::to_string(n - 1), n - 1));
      return p;
    }
  }
  throw DomainError("unknown standard kind");
}

Morphism disk_basepoint(int n) {
  Morphism m;
  m.source = standard(StandardKind::Point);
  m.target = standard(StandardKind::Disk, n);
  m.object_map["*"] = "0";
  return m;
}

Morphism sphere_inclusion(int n) {
  Morphism m;
  m.source = standard(StandardKind::Sphere, n - 1);
  m.target = standard(StandardKind::Disk, n);
  if (n == 0) return m;
  if (n == 1) {
    m.object_map["0"] = "0";
    m.object_map["1"] = "1";
    return m;
  }
  m.object_map["0"] = "0";
  m.set("s", n - 1, m.target->generator_word("a", n - 1));
  return m;
}

Morphism to_point(const PresentationPtr& c) {
  Morphism m;
  m.source = c;
  m.target = standard(StandardKind::Point);
  for (const auto& x : c->objects()) m.object_map[x] = "*";
  for (const auto& g : c->generators()) m.generator_map[{g.degree, g.name}] = identity_in(g.degree, "*");
  return m;
}

Morphism point_at(const PresentationPtr& c, const std::string& x) {
  if (!c->has_object(x)) throw DomainError("unknown object " + x);
  Morphism m;
  m.source = standard(StandardKind::Point);
  m.target = c;
  m.object_map["*"] = x;
  return m;
}

// ---------------------------------------------------------------------------
// Pushouts

PresentationPtr empty_presentation() { return standard(StandardKind::Sphere, -1); }

namespace {

bool same_presentation(const Presentation& a, const Presentation& b) {
  if (&a == &b) return true;
  if (a.objects() != b.objects() || a.generators().size() != b.generators().size()) return false;
  for (std::size_t i = 0; i < a.generators().size(); ++i)
    if (a.generators()[i].name != b.generators()[i].name || a.generators()[i].degree != b.generators()[i].degree)
      return false;
  return true;
}

std::size_t uf_find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

PushoutResult pushout(const Morphism& f, const Morphism& g) {
  if (!same_presentation(*f.source, *g.source)) throw DomainError("pushout: the two maps have different sources");
  const Presentation& A = *f.source;
  const Presentation& B = *f.target;
  const Presentation& C = *g.target;
  const std::size_t nb = B.objects().size(), nc = C.objects().size();

  std::vector<std::size_t> parent(nb + nc);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& a : A.objects()) {
    std::size_t i = B.object_index(f.map_object(a));
    std::size_t j = nb + C.object_index(g.map_object(a));
    std::size_t ri = uf_find(parent, i), rj = uf_find(parent, j);
    if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
  }

  auto P = std::make_shared<Presentation>(B.name + "+" + C.name, std::max(B.bound, C.bound));
  std::map<std::size_t, std::string> class_name;
  std::set<std::string> used;
  for (std::size_t i = 0; i < nb + nc; ++i) {
    std::size_t r = uf_find(parent, i);
    if (class_name.count(r)) continue;
    std::string nm = r < nb ? B.objects()[r] : C.objects()[r - nb];
    while (used.count(nm)) nm += "'";
    used.insert(nm);
    class_name[r] = nm;
    P->add_object(nm);
  }

  PushoutResult res;
  res.in_left.source = f.target;
  res.in_right.source = g.target;
  for (std::size_t i = 0; i < nb; ++i) res.in_left.object_map[B.objects()[i]] = class_name[uf_find(parent, i)];
  for (std::size_t i = 0; i < nc; ++i)
    res.in_right.object_map[C.objects()[i]] = class_name[uf_find(parent, nb + i)];

  std::set<std::pair<int, std::string>> gen_used;
  std::map<std::pair<int, std::string>, std::string> right_name;
  for (const auto& gen : B.generators()) gen_used.insert({gen.degree, gen.name});
  for (const auto& gen : C.generators()) {
    std::string nm = gen.name;
    while (gen_used.count({gen.degree, nm})) nm += "'";
    gen_used.insert({gen.degree, nm});
    right_name[{gen.degree, gen.name}] = nm;
  }

  // Generators by degree so that boundaries only mention earlier ones.
  int top = std::max(B.max_degree(), C.max_degree());
  for (int d = 1; d <= top; ++d) {
    for (int side = 0; side < 2; ++side) {
      const Presentation& S = side == 0 ? B : C;
      Morphism& in = side == 0 ? res.in_left : res.in_right;
      for (const auto* gen : S.generators_of_degree(d)) {
        std::string nm = side == 0 ? gen->name : right_name[{d, gen->name}];
        if (d == 1) {
          std::string s = in.map_object(gen->source), t = in.map_object(gen->target);
          P->add_edge(nm, s, t);
          in.set(gen->name, 1, CrxWord::of_path(PathWord::letter(nm, s, t)));
        } else {
          std::string b = in.map_object(gen->base);
          P->add_cell(nm, d, b, in.apply(gen->boundary));
          in.set(gen->name, d, CrxWord::of_higher(HigherWord::generator(d, nm, b)));
        }
      }
    }
  }
  for (int side = 0; side < 2; ++side) {
    const Presentation& S = side == 0 ? B : C;
    Morphism& in = side == 0 ? res.in_left : res.in_right;
    for (const auto& r : S.relations()) P->add_relation(r.degree, in.apply(r.lhs), in.apply(r.rhs), r.apart);
  }
  for (const auto& a : A.generators()) {
    CrxWord l = res.in_left.apply(f.image(a.name, a.degree));
    CrxWord r = res.in_right.apply(g.image(a.name, a.degree));
    if (!(l == r)) P->add_relation(a.degree, l, r);
  }
  res.object = P;
  res.in_left.target = P;
  res.in_right.target = P;
  return res;
}

IsoCheck check_inverse_pair(const Morphism& f, const Morphism& g) {
  IsoCheck out;
  std::ostringstream detail;
  for (const auto* m : {&f, &g}) {
    MorphismReport r = verify_morphism(*m);
    for (const auto& s : r.failures) detail << "not a morphism: " << s << "; ";
    if (!r.ok()) {
      out.isomorphic = false;
      out.detail = detail.str();
      return out;
    }
    if (!r.obligations.empty()) out.decided = false;
  }
  MorphismReport a = compare_morphisms(compose(f, g), identity_morphism(f.source));
  MorphismReport b = compare_morphisms(compose(g, f), identity_morphism(f.target));
  for (const auto& s : a.failures) detail << "g.f differs from id at " << s << "; ";
  for (const auto& s : b.failures) detail << "f.g differs from id at " << s << "; ";
  if (!a.obligations.empty() || !b.obligations.empty()) out.decided = false;
  out.isomorphic = a.ok() && b.ok();
  out.detail = detail.str();
  return out;
}

}  // namespace crx
