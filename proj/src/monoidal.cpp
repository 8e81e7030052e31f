#include "crx/monoidal.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "crx/errors.hpp"
#include "crx/invariants.hpp"
#include "crx/normalizer.hpp"

namespace crx {

std::string to_string(Flavor f) { return f == Flavor::Tensor ? "tensor" : "cartesian"; }

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Isomorphism:
      return "Isomorphism";
    case IsoVerdict::NotIsomorphism:
      return "NotIsomorphism";
    case IsoVerdict::Undecided:
      return "Undecided";
  }
  return "Undecided";
}

std::string tensor_object_name(const std::string& x, const std::string& y) { return "(" + x + "*" + y + ")"; }
std::string tensor_cell_name(const std::string& a, const std::string& b) { return "(" + a + "*" + b + ")"; }
std::string product_object_name(const std::string& x, const std::string& y) { return "(" + x + "," + y + ")"; }
std::string product_cell_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

namespace {

CellInfo info_of(const Presentation& p, const std::string& name, int degree) {
  const Generator& g = p.get(name, degree);
  return {g.source, g.target, g.base};
}

// A cell of a presentation: an object (degree 0) or a generator.
struct Cell {
  std::string name;
  int degree;
};

std::vector<Cell> cells_of(const Presentation& p) {
  std::vector<Cell> out;
  for (const auto& x : p.objects()) out.push_back({x, 0});
  for (const auto& g : p.generators()) out.push_back({g.name, g.degree});
  return out;
}

CrxWord cell_word(const Presentation& p, const Cell& c) { return p.generator_word(c.name, c.degree); }

CrxWord identity_word(int degree, const std::string& base) {
  if (degree == 0) return CrxWord::of_object(base);
  if (degree == 1) return CrxWord::of_path(PathWord::identity(base));
  return CrxWord::of_higher(HigherWord::identity(degree, base));
}

// Tensor expansion. Paths compose diagrammatically and actions are right
// actions; the rules below are the composition and inverse laws of simple
// tensors together with the whiskering functors x (x) - and - (x) y.
class Expander {
public:
  explicit Expander(const TensorContext& c) : ctx(c) {}

  std::string obj(const std::string& x, const std::string& y) const { return ctx.object_name(x, y); }

  // letter ell (x) y
  PathWord left_letter(const std::string& ell, bool inv, const std::string& y) const {
    CellInfo i = ctx.left(ell, 1);
    return PathWord::letter(ctx.cell_name(ell, 1, y, 0), obj(i.source, y), obj(i.target, y), inv);
  }
  PathWord right_letter(const std::string& x, const std::string& e, bool inv) const {
    CellInfo i = ctx.right(e, 1);
    return PathWord::letter(ctx.cell_name(x, 0, e, 1), obj(x, i.source), obj(x, i.target), inv);
  }

  PathWord whisker_left(const PathWord& u, const std::string& y) const {
    PathWord out = PathWord::identity(obj(u.start(), y));
    for (const auto& s : u.steps()) out = out.then(left_letter(s.gen, s.inverse, y));
    return out;
  }
  PathWord whisker_right(const std::string& x, const PathWord& v) const {
    PathWord out = PathWord::identity(obj(x, v.start()));
    for (const auto& s : v.steps()) out = out.then(right_letter(x, s.gen, s.inverse));
    return out;
  }
  HigherWord whisker_left(const HigherWord& h, const std::string& y) const {
    std::vector<Term> terms;
    for (const auto& t : h.terms())
      terms.push_back({ctx.cell_name(t.gen, h.degree(), y, 0), t.exp, whisker_left(t.actor, y)});
    return HigherWord(h.degree(), obj(h.base(), y), std::move(terms));
  }
  HigherWord whisker_right(const std::string& x, const HigherWord& h) const {
    std::vector<Term> terms;
    for (const auto& t : h.terms())
      terms.push_back({ctx.cell_name(x, 0, t.gen, h.degree()), t.exp, whisker_right(x, t.actor)});
    return HigherWord(h.degree(), obj(x, h.base()), std::move(terms));
  }

  HigherWord gen(int degree, const std::string& a, int m, const std::string& b, int n, const std::string& base) const {
    return HigherWord::generator(degree, ctx.cell_name(a, m, b, n), base);
  }

  // ---- m = 1, n = 1
  HigherWord t11_letters(const Step& l, const Step& e) const {
    CellInfo li = ctx.left(l.gen, 1), ei = ctx.right(e.gen, 1);
    HigherWord g = gen(2, l.gen, 1, e.gen, 1, obj(li.source, ei.source));
    if (!l.inverse && !e.inverse) return g;
    if (l.inverse && !e.inverse) return g.inverse().act(left_letter(l.gen, false, ei.source));
    if (!l.inverse && e.inverse) return g.inverse().act(right_letter(li.source, e.gen, false));
    return g.act(left_letter(l.gen, false, ei.source).then(right_letter(li.target, e.gen, false)));
  }

  HigherWord t11(const PathWord& u, const PathWord& v) const {
    std::string base = obj(u.start(), v.start());
    if (u.is_identity() || v.is_identity()) return HigherWord::identity(2, base);
    if (u.length() > 1) {
      PathWord ell(u.start(), {u.steps().front()});
      PathWord rest(ell.end(), std::vector<Step>(u.steps().begin() + 1, u.steps().end()));
      HigherWord a = t11(rest, v).act(whisker_left(ell, v.start()).inverse());
      return a.times(t11(ell, v));
    }
    if (v.length() > 1) {
      PathWord e(v.start(), {v.steps().front()});
      PathWord rest(e.end(), std::vector<Step>(v.steps().begin() + 1, v.steps().end()));
      HigherWord b = t11(u, rest).act(whisker_right(u.start(), e).inverse());
      return t11(u, e).times(b);
    }
    return t11_letters(u.steps().front(), v.steps().front());
  }

  // ---- m = 1, n >= 2 ; d a generator based at y
  HigherWord t1g(const PathWord& u, const std::string& d, int n, const std::string& y) const {
    HigherWord out = HigherWord::identity(n + 1, obj(u.start(), y));
    PathWord prefix = PathWord::identity(u.start());
    for (const auto& s : u.steps()) {
      CellInfo li = ctx.left(s.gen, 1);
      HigherWord g = gen(n + 1, s.gen, 1, d, n, obj(li.source, y));
      HigherWord piece = s.inverse ? g.inverse().act(left_letter(s.gen, false, y)) : g;
      // (ell k) (x) d = ell (x) d + (k (x) d)^[(ell (x) y)^-1]
      out = out.times(piece.act(whisker_left(prefix, y).inverse()));
      prefix = prefix.then(PathWord(s.from, {s}));
    }
    return out;
  }

  HigherWord t1h(const PathWord& u, const HigherWord& v) const {
    HigherWord out = HigherWord::identity(v.degree() + 1, obj(u.start(), v.base()));
    for (const auto& t : v.terms()) {
      HigherWord piece = t1g(u, t.gen, v.degree(), t.actor.start()).power(t.exp);
      out = out.times(piece.act(whisker_right(u.start(), t.actor)));
    }
    return out;
  }

  // ---- m >= 2, n = 1 ; c a generator based at x
  HigherWord tg1(const std::string& c, int m, const std::string& x, const PathWord& v) const {
    HigherWord out = HigherWord::identity(m + 1, obj(x, v.start()));
    PathWord prefix = PathWord::identity(v.start());
    for (const auto& s : v.steps()) {
      CellInfo ei = ctx.right(s.gen, 1);
      HigherWord g = gen(m + 1, c, m, s.gen, 1, obj(x, ei.source));
      HigherWord piece = s.inverse ? g.inverse().act(right_letter(x, s.gen, false)) : g;
      // c (x) (e f) = c (x) e + (c (x) f)^[(x (x) e)^-1]
      out = out.times(piece.act(whisker_right(x, prefix).inverse()));
      prefix = prefix.then(PathWord(s.from, {s}));
    }
    return out;
  }

  HigherWord th1(const HigherWord& u, const PathWord& v) const {
    HigherWord out = HigherWord::identity(u.degree() + 1, obj(u.base(), v.start()));
    for (const auto& t : u.terms()) {
      HigherWord piece = tg1(t.gen, u.degree(), t.actor.start(), v).power(t.exp);
      out = out.times(piece.act(whisker_left(t.actor, v.start())));
    }
    return out;
  }

  // ---- m, n >= 2
  HigherWord thh(const HigherWord& u, const HigherWord& v) const {
    int d = u.degree() + v.degree();
    HigherWord out = HigherWord::identity(d, obj(u.base(), v.base()));
    for (const auto& s : u.terms())
      for (const auto& t : v.terms()) {
        HigherWord g = gen(d, s.gen, u.degree(), t.gen, v.degree(), obj(s.actor.start(), t.actor.start()));
        PathWord actor = whisker_left(s.actor, t.actor.start()).then(whisker_right(u.base(), t.actor));
        out = out.times(g.power(s.exp * t.exp).act(actor));
      }
    return out;
  }

  CrxWord element(const CrxWord& u, const CrxWord& v) const {
    int m = u.degree, n = v.degree;
    if (m == 0 && n == 0) return CrxWord::of_object(obj(u.object, v.object));
    if (m == 0) {
      if (n == 1) return CrxWord::of_path(whisker_right(u.object, v.path));
      return CrxWord::of_higher(whisker_right(u.object, v.higher));
    }
    if (n == 0) {
      if (m == 1) return CrxWord::of_path(whisker_left(u.path, v.object));
      return CrxWord::of_higher(whisker_left(u.higher, v.object));
    }
    if (m == 1 && n == 1) return CrxWord::of_higher(t11(u.path, v.path));
    if (m == 1) return CrxWord::of_higher(t1h(u.path, v.higher));
    if (n == 1) return CrxWord::of_higher(th1(u.higher, v.path));
    return CrxWord::of_higher(thh(u.higher, v.higher));
  }

  const TensorContext& ctx;
};

}  // namespace

TensorContext tensor_context(const Presentation& c, const Presentation& d) {
  TensorContext ctx;
  ctx.left = [&c](const std::string& n, int deg) { return info_of(c, n, deg); };
  ctx.right = [&d](const std::string& n, int deg) { return info_of(d, n, deg); };
  ctx.object_name = tensor_object_name;
  ctx.cell_name = [](const std::string& a, int, const std::string& b, int) { return tensor_cell_name(a, b); };
  return ctx;
}

CrxWord tensor_element(const TensorContext& ctx, const CrxWord& u, const CrxWord& v) {
  return Expander(ctx).element(u, v);
}

CrxWord tensor_generator_boundary(const TensorContext& ctx, const std::string& a, int m, const CrxWord* da,
                                  const std::string& b, int n, const CrxWord* db) {
  Expander ex(ctx);
  if (m + n < 2) throw DomainError("boundary of a simple tensor of degree < 2");
  if (m == 0) return ex.element(CrxWord::of_object(a), *db);
  if (n == 0) return ex.element(*da, CrxWord::of_object(b));
  if (m == 1 && n == 1) {
    CellInfo l = ctx.left(a, 1), e = ctx.right(b, 1);
    PathWord w = ex.left_letter(a, false, e.source)
                     .then(ex.right_letter(l.target, b, false))
                     .then(ex.left_letter(a, true, e.target))
                     .then(ex.right_letter(l.source, b, true));
    return CrxWord::of_path(w);
  }
  if (m == 1) {
    CellInfo l = ctx.left(a, 1);
    CellInfo di = ctx.right(b, n);
    const std::string& y = di.base;
    HigherWord pd = ex.whisker_right(l.source, HigherWord::generator(n, b, y));
    HigherWord qd = ex.whisker_right(l.target, HigherWord::generator(n, b, y));
    CrxWord ld = ex.element(CrxWord::of_path(PathWord::letter(a, l.source, l.target)), *db);
    HigherWord out = pd.inverse().times(ld.higher.inverse()).times(qd.act(ex.left_letter(a, true, y)));
    return CrxWord::of_higher(out);
  }
  if (n == 1) {
    CellInfo ci = ctx.left(a, m);
    CellInfo e = ctx.right(b, 1);
    const std::string& x = ci.base;
    CrxWord de = ex.element(*da, CrxWord::of_path(PathWord::letter(b, e.source, e.target)));
    HigherWord cz = ex.whisker_left(HigherWord::generator(m, a, x), e.target);
    HigherWord cy = ex.whisker_left(HigherWord::generator(m, a, x), e.source);
    HigherWord bracket = cz.act(ex.right_letter(x, b, true)).times(cy.inverse());
    if (m % 2 == 1) bracket = bracket.inverse();
    return CrxWord::of_higher(de.higher.times(bracket));
  }
  CellInfo ci = ctx.left(a, m), di = ctx.right(b, n);
  CrxWord c = CrxWord::of_higher(HigherWord::generator(m, a, ci.base));
  CrxWord d = CrxWord::of_higher(HigherWord::generator(n, b, di.base));
  HigherWord first = ex.element(*da, d).higher;
  HigherWord second = ex.element(c, *db).higher;
  if (m % 2 == 1) second = second.inverse();
  return CrxWord::of_higher(first.times(second));
}

PresentationPtr tensor(const PresentationPtr& cp, const PresentationPtr& dp) {
  const Presentation& c = *cp;
  const Presentation& d = *dp;
  int bound = std::min(c.bound, d.bound);
  auto t = std::make_shared<Presentation>(c.name + "*" + d.name, bound);
  TensorContext ctx = tensor_context(c, d);
  Expander ex(ctx);
  for (const auto& x : c.objects())
    for (const auto& y : d.objects()) t->add_object(tensor_object_name(x, y));
  std::vector<Cell> cc = cells_of(c), dc = cells_of(d);
  for (int k = 1; k <= bound; ++k) {
    for (const auto& a : cc) {
      for (const auto& b : dc) {
        if (a.degree + b.degree != k) continue;
        std::string name = tensor_cell_name(a.name, b.name);
        if (k == 1) {
          if (a.degree == 1) {
            const Generator& g = c.get(a.name, 1);
            t->add_edge(name, tensor_object_name(g.source, b.name), tensor_object_name(g.target, b.name));
          } else {
            const Generator& g = d.get(b.name, 1);
            t->add_edge(name, tensor_object_name(a.name, g.source), tensor_object_name(a.name, g.target));
          }
          continue;
        }
        const CrxWord* da = a.degree >= 2 ? &c.get(a.name, a.degree).boundary : nullptr;
        const CrxWord* db = b.degree >= 2 ? &d.get(b.name, b.degree).boundary : nullptr;
        std::string xa = a.degree == 0 ? a.name : c.get(a.name, a.degree).basepoint();
        std::string yb = b.degree == 0 ? b.name : d.get(b.name, b.degree).basepoint();
        CrxWord bd = tensor_generator_boundary(ctx, a.name, a.degree, da, b.name, b.degree, db);
        t->add_cell(name, k, tensor_object_name(xa, yb), bd);
      }
    }
  }
  for (const auto& r : c.relations()) {
    if (r.apart) continue;
    for (const auto& b : dc) {
      if (r.degree + b.degree > bound) continue;
      CrxWord bw = cell_word(d, b);
      t->add_relation(r.degree + b.degree, ex.element(r.lhs, bw), ex.element(r.rhs, bw));
    }
  }
  for (const auto& r : d.relations()) {
    if (r.apart) continue;
    for (const auto& a : cc) {
      if (r.degree + a.degree > bound) continue;
      CrxWord aw = cell_word(c, a);
      t->add_relation(r.degree + a.degree, ex.element(aw, r.lhs), ex.element(aw, r.rhs));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Cartesian product

CrxWord product_left(const Presentation& prod, const CrxWord& u, const std::string& y) {
  (void)prod;
  if (u.degree == 0) return CrxWord::of_object(product_object_name(u.object, y));
  auto whisker = [&](const PathWord& p) {
    std::vector<Step> steps;
    for (const auto& s : p.steps())
      steps.push_back({product_cell_name(s.gen, y), s.inverse, product_object_name(s.from, y),
                       product_object_name(s.to, y)});
    return PathWord(product_object_name(p.start(), y), steps);
  };
  if (u.degree == 1) return CrxWord::of_path(whisker(u.path));
  std::vector<Term> terms;
  for (const auto& t : u.higher.terms()) terms.push_back({product_cell_name(t.gen, y), t.exp, whisker(t.actor)});
  return CrxWord::of_higher(HigherWord(u.degree, product_object_name(u.higher.base(), y), terms));
}

CrxWord product_right(const Presentation& prod, const std::string& x, const CrxWord& v) {
  (void)prod;
  if (v.degree == 0) return CrxWord::of_object(product_object_name(x, v.object));
  auto whisker = [&](const PathWord& p) {
    std::vector<Step> steps;
    for (const auto& s : p.steps())
      steps.push_back({product_cell_name(x, s.gen), s.inverse, product_object_name(x, s.from),
                       product_object_name(x, s.to)});
    return PathWord(product_object_name(x, p.start()), steps);
  };
  if (v.degree == 1) return CrxWord::of_path(whisker(v.path));
  std::vector<Term> terms;
  for (const auto& t : v.higher.terms()) terms.push_back({product_cell_name(x, t.gen), t.exp, whisker(t.actor)});
  return CrxWord::of_higher(HigherWord(v.degree, product_object_name(x, v.higher.base()), terms));
}

PathWord product_path(const Presentation& prod, const PathWord& u, const PathWord& v) {
  PathWord a = product_left(prod, CrxWord::of_path(u), v.start()).path;
  PathWord b = product_right(prod, u.end(), CrxWord::of_path(v)).path;
  return a.then(b);
}

ProductResult cartesian(const PresentationPtr& cp, const PresentationPtr& dp) {
  const Presentation& c = *cp;
  const Presentation& d = *dp;
  int bound = std::min(c.bound, d.bound);
  auto p = std::make_shared<Presentation>(c.name + "x" + d.name, bound);
  for (const auto& x : c.objects())
    for (const auto& y : d.objects()) p->add_object(product_object_name(x, y));
  for (int k = 1; k <= bound; ++k) {
    for (const auto* g : c.generators_of_degree(k))
      for (const auto& y : d.objects()) {
        std::string name = product_cell_name(g->name, y);
        if (k == 1)
          p->add_edge(name, product_object_name(g->source, y), product_object_name(g->target, y));
        else
          p->add_cell(name, k, product_object_name(g->base, y), product_left(*p, g->boundary, y));
      }
    for (const auto& x : c.objects())
      for (const auto* g : d.generators_of_degree(k)) {
        std::string name = product_cell_name(x, g->name);
        if (k == 1)
          p->add_edge(name, product_object_name(x, g->source), product_object_name(x, g->target));
        else
          p->add_cell(name, k, product_object_name(x, g->base), product_right(*p, x, g->boundary));
      }
  }
  // The groupoid C_1 x D_1: commuting squares.
  for (const auto* a : c.generators_of_degree(1))
    for (const auto* b : d.generators_of_degree(1)) {
      PathWord lhs = p->edge(product_cell_name(a->name, b->source)).then(p->edge(product_cell_name(a->target, b->name)));
      PathWord rhs = p->edge(product_cell_name(a->source, b->name)).then(p->edge(product_cell_name(a->name, b->target)));
      p->add_relation(1, CrxWord::of_path(lhs), CrxWord::of_path(rhs));
    }
  // Componentwise action: (x, d)^[(c, y)] = (x', d) and (c, y)^[(x, e)] = (c, y').
  for (int k = 2; k <= bound; ++k) {
    for (const auto* dg : d.generators_of_degree(k))
      for (const auto* a : c.generators_of_degree(1)) {
        HigherWord lhs = p->generator_word(product_cell_name(a->source, dg->name), k)
                             .higher.act(p->edge(product_cell_name(a->name, dg->base)));
        CrxWord rhs = p->generator_word(product_cell_name(a->target, dg->name), k);
        p->add_relation(k, CrxWord::of_higher(lhs), rhs);
      }
    for (const auto* cg : c.generators_of_degree(k))
      for (const auto* e : d.generators_of_degree(1)) {
        HigherWord lhs = p->generator_word(product_cell_name(cg->name, e->source), k)
                             .higher.act(p->edge(product_cell_name(cg->base, e->name)));
        CrxWord rhs = p->generator_word(product_cell_name(cg->name, e->target), k);
        p->add_relation(k, CrxWord::of_higher(lhs), rhs);
      }
  }
  for (const auto& r : c.relations()) {
    if (r.apart || r.degree > bound) continue;
    for (const auto& y : d.objects())
      p->add_relation(r.degree, product_left(*p, r.lhs, y), product_left(*p, r.rhs, y));
  }
  for (const auto& r : d.relations()) {
    if (r.apart || r.degree > bound) continue;
    for (const auto& x : c.objects())
      p->add_relation(r.degree, product_right(*p, x, r.lhs), product_right(*p, x, r.rhs));
  }

  ProductResult res;
  res.object = p;
  res.proj_left.source = p;
  res.proj_left.target = cp;
  res.proj_right.source = p;
  res.proj_right.target = dp;
  for (const auto& x : c.objects())
    for (const auto& y : d.objects()) {
      res.proj_left.object_map[product_object_name(x, y)] = x;
      res.proj_right.object_map[product_object_name(x, y)] = y;
    }
  for (int k = 1; k <= bound; ++k) {
    for (const auto* g : c.generators_of_degree(k))
      for (const auto& y : d.objects()) {
        std::string name = product_cell_name(g->name, y);
        res.proj_left.set(name, k, c.generator_word(g->name, k));
        res.proj_right.set(name, k, identity_word(k, y));
      }
    for (const auto& x : c.objects())
      for (const auto* g : d.generators_of_degree(k)) {
        std::string name = product_cell_name(x, g->name);
        res.proj_left.set(name, k, identity_word(k, x));
        res.proj_right.set(name, k, d.generator_word(g->name, k));
      }
  }
  return res;
}

PresentationPtr product_object(const PresentationPtr& c, const PresentationPtr& d, Flavor flavor) {
  return flavor == Flavor::Tensor ? tensor(c, d) : cartesian(c, d).object;
}

// ---------------------------------------------------------------------------
// Collapse and its kernel

Morphism collapse_between(const PresentationPtr& t, const PresentationPtr& p, const Presentation& c,
                          const Presentation& d) {
  Morphism m;
  m.source = t;
  m.target = p;
  for (const auto& x : c.objects())
    for (const auto& y : d.objects()) m.object_map[tensor_object_name(x, y)] = product_object_name(x, y);
  std::vector<Cell> cc = cells_of(c), dc = cells_of(d);
  for (const auto& a : cc)
    for (const auto& b : dc) {
      int k = a.degree + b.degree;
      if (k == 0 || k > t->bound) continue;
      std::string name = tensor_cell_name(a.name, b.name);
      if (!t->find(name, k)) continue;
      if (a.degree > 0 && b.degree > 0) {
        m.set(name, k, identity_word(k, m.map_object(t->get(name, k).basepoint())));
      } else if (b.degree == 0) {
        m.set(name, k, p->generator_word(product_cell_name(a.name, b.name), k));
      } else {
        m.set(name, k, p->generator_word(product_cell_name(a.name, b.name), k));
      }
    }
  return m;
}

Morphism collapse(const PresentationPtr& c, const PresentationPtr& d) {
  return collapse_between(tensor(c, d), cartesian(c, d).object, *c, *d);
}

std::vector<CrxWord> kernel_generators(const PresentationPtr& c, const PresentationPtr& d, int n) {
  int bound = std::min(c->bound, d->bound);
  if (n > bound) throw TruncationError("degree " + std::to_string(n) + " exceeds the bound " + std::to_string(bound));
  if (n < 1) return {};
  PresentationPtr t = tensor(c, d);
  std::vector<CrxWord> out;
  auto mixed = [&](int k) {
    std::vector<std::string> names;
    for (const auto& a : cells_of(*c))
      for (const auto& b : cells_of(*d))
        if (a.degree > 0 && b.degree > 0 && a.degree + b.degree == k) names.push_back(tensor_cell_name(a.name, b.name));
    return names;
  };
  if (n >= 2)
    for (const auto& name : mixed(n)) out.push_back(t->generator_word(name, n));
  if (n + 1 <= bound)
    for (const auto& name : mixed(n + 1)) out.push_back(t->get(name, n + 1).boundary);
  return out;
}

// ---------------------------------------------------------------------------
// Products of morphisms

Morphism product_of_morphisms(const Morphism& f, const Morphism& g, Flavor flavor, const PresentationPtr& source,
                              const PresentationPtr& target) {
  Morphism m;
  m.source = source;
  m.target = target;
  const Presentation& a = *f.source;
  const Presentation& k = *g.source;
  if (flavor == Flavor::Tensor) {
    TensorContext ctx = tensor_context(*f.target, *g.target);
    Expander ex(ctx);
    for (const auto& x : a.objects())
      for (const auto& y : k.objects())
        m.object_map[tensor_object_name(x, y)] = tensor_object_name(f.map_object(x), g.map_object(y));
    for (const auto& ca : cells_of(a))
      for (const auto& cb : cells_of(k)) {
        int deg = ca.degree + cb.degree;
        if (deg == 0 || deg > source->bound) continue;
        CrxWord fa = f.apply(cell_word(a, ca));
        CrxWord gb = g.apply(cell_word(k, cb));
        m.set(tensor_cell_name(ca.name, cb.name), deg, ex.element(fa, gb));
      }
    return m;
  }
  for (const auto& x : a.objects())
    for (const auto& y : k.objects())
      m.object_map[product_object_name(x, y)] = product_object_name(f.map_object(x), g.map_object(y));
  for (const auto& gen : a.generators())
    for (const auto& y : k.objects())
      m.set(product_cell_name(gen.name, y), gen.degree,
            product_left(*target, f.image(gen.name, gen.degree), g.map_object(y)));
  for (const auto& x : a.objects())
    for (const auto& gen : k.generators())
      m.set(product_cell_name(x, gen.name), gen.degree,
            product_right(*target, f.map_object(x), g.image(gen.name, gen.degree)));
  return m;
}

// ---------------------------------------------------------------------------
// Isomorphism checks

namespace {

std::optional<PathWord> path_preimage(const Morphism& f, const std::string& from, const std::string& to,
                                      const PathWord& want, std::size_t max_len) {
  const Presentation& s = *f.source;
  const Presentation& t = *f.target;
  std::deque<PathWord> queue{PathWord::identity(from)};
  while (!queue.empty()) {
    PathWord p = queue.front();
    queue.pop_front();
    if (p.end() == to && are_equal(t, CrxWord::of_path(f.apply(p)), CrxWord::of_path(want)).equal()) return p;
    if (p.length() >= max_len) continue;
    for (const auto* g : s.generators_of_degree(1)) {
      for (bool inv : {false, true}) {
        const std::string& a = inv ? g->target : g->source;
        if (a != p.end()) continue;
        PathWord q = p.then(s.edge(g->name, inv));
        if (q.length() == p.length() + 1) queue.push_back(q);
      }
    }
  }
  return std::nullopt;
}

std::vector<std::string> invariant_differences(const Presentation& a, const Presentation& b) {
  std::vector<std::string> out;
  std::vector<std::vector<std::string>> ca = pi0(a), cb = pi0(b);
  if (ca.size() != cb.size()) {
    out.push_back("pi_0 has " + std::to_string(ca.size()) + " vs " + std::to_string(cb.size()) + " components");
    return out;
  }
  // Compare the multisets of invariants of components.
  auto signature = [](const Presentation& p, const std::vector<std::vector<std::string>>& comps) {
    std::multiset<std::string> sig;
    int top = std::min(p.bound - 1, std::max(p.max_degree(), 1));
    for (const auto& comp : comps) {
      std::string s;
      HomotopyGroup h1 = pi1(p, comp.front());
      if (!h1.decided) return std::optional<std::multiset<std::string>>();
      s += "pi1ab=" + h1.abelianization.to_string() + (h1.group_trivial ? " trivial" : "");
      for (int n = 2; n <= top; ++n) {
        HomotopyGroup hn = pi_n(p, comp.front(), n);
        if (!hn.decided) return std::optional<std::multiset<std::string>>();
        s += ";pi" + std::to_string(n) + "=" + hn.abelianization.to_string();
      }
      sig.insert(s);
    }
    return std::optional<std::multiset<std::string>>(sig);
  };
  auto sa = signature(a, ca), sb = signature(b, cb);
  if (sa && sb && *sa != *sb) {
    std::string la, lb;
    for (const auto& s : *sa) la += "{" + s + "}";
    for (const auto& s : *sb) lb += "{" + s + "}";
    out.push_back("homotopy invariants differ: " + la + " vs " + lb);
  }
  return out;
}

}  // namespace

IsoReport check_isomorphism(const Morphism& f) {
  IsoReport rep;
  const Presentation& s = *f.source;
  const Presentation& t = *f.target;
  MorphismReport mr = verify_morphism(f);
  if (!mr.ok()) {
    rep.detail = "not a morphism: " + mr.failures.front();
    return rep;
  }
  std::map<std::string, std::string> back;
  for (const auto& x : s.objects()) {
    const std::string& y = f.map_object(x);
    if (back.count(y)) {
      rep.verdict = IsoVerdict::NotIsomorphism;
      rep.detail = "objects " + back[y] + " and " + x + " have the same image";
      return rep;
    }
    back[y] = x;
  }
  if (back.size() != t.objects().size()) {
    rep.verdict = IsoVerdict::NotIsomorphism;
    rep.detail = "not surjective on objects";
    return rep;
  }

  Morphism inv;
  inv.source = f.target;
  inv.target = f.source;
  inv.object_map = {};
  for (const auto& [y, x] : back) inv.object_map[y] = x;
  std::string missing;
  for (const auto& g : t.generators()) {
    CrxWord want = t.generator_word(g.name, g.degree);
    bool found = false;
    for (const auto* sg : s.generators_of_degree(g.degree)) {
      const CrxWord& img = f.image(sg->name, g.degree);
      if (img == want) {
        inv.set(g.name, g.degree, s.generator_word(sg->name, g.degree));
        found = true;
        break;
      }
    }
    if (!found && g.degree == 1) {
      if (auto p = path_preimage(f, back[g.source], back[g.target], want.path, 3)) {
        inv.set(g.name, 1, CrxWord::of_path(*p));
        found = true;
      }
    }
    if (!found && g.degree >= 2) {
      for (const auto* sg : s.generators_of_degree(g.degree)) {
        if (inv.map_object(g.base) != sg->base) continue;
        CrxWord cand = s.generator_word(sg->name, g.degree);
        for (int sign : {1, -1}) {
          CrxWord c = sign == 1 ? cand : CrxWord::of_higher(cand.higher.inverse());
          if (are_equal(t, f.apply(c), want).equal()) {
            inv.set(g.name, g.degree, c);
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
    if (!found && missing.empty()) missing = g.name;
  }

  if (missing.empty()) {
    IsoCheck ic = check_inverse_pair(f, inv);
    if (ic.isomorphic && ic.decided) {
      rep.verdict = IsoVerdict::Isomorphism;
      rep.detail = "inverse found and verified";
      rep.inverse = inv;
      return rep;
    }
    rep.detail = "candidate inverse rejected: " + ic.detail;
  } else {
    rep.detail = "no preimage found for generator " + missing;
  }
  std::vector<std::string> diff = invariant_differences(s, t);
  if (!diff.empty()) {
    rep.verdict = IsoVerdict::NotIsomorphism;
    rep.detail += "; " + diff.front();
  }
  return rep;
}

PushoutProduct pushout_product(const Morphism& i, const Morphism& j, Flavor flavor) {
  PresentationPtr a = i.source, b = i.target, k = j.source, l = j.target;
  PresentationPtr ak = product_object(a, k, flavor), bk = product_object(b, k, flavor);
  PresentationPtr al = product_object(a, l, flavor), bl = product_object(b, l, flavor);
  Morphism ik = product_of_morphisms(i, identity_morphism(k), flavor, ak, bk);
  Morphism aj = product_of_morphisms(identity_morphism(a), j, flavor, ak, al);
  Morphism bj = product_of_morphisms(identity_morphism(b), j, flavor, bk, bl);
  Morphism il = product_of_morphisms(i, identity_morphism(l), flavor, al, bl);

  PushoutProduct out;
  out.corner_source = pushout(ik, aj);
  const PushoutResult& po = out.corner_source;
  Morphism& c = out.corner;
  c.source = po.object;
  c.target = bl;
  for (const auto& [x, px] : po.in_left.object_map) c.object_map[px] = bj.map_object(x);
  for (const auto& [x, px] : po.in_right.object_map) c.object_map[px] = il.map_object(x);
  for (const auto& [key, w] : po.in_left.generator_map) {
    const std::string& pname = key.first == 1 ? w.path.steps().front().gen : w.higher.terms().front().gen;
    c.set(pname, key.first, bj.image(key.second, key.first));
  }
  for (const auto& [key, w] : po.in_right.generator_map) {
    const std::string& pname = key.first == 1 ? w.path.steps().front().gen : w.higher.terms().front().gen;
    c.set(pname, key.first, il.image(key.second, key.first));
  }
  out.iso = check_isomorphism(c);
  return out;
}

// ---------------------------------------------------------------------------
// J1-transformations

std::string Verdict2::summary() const {
  std::ostringstream os;
  os << (pass ? "pass" : (decided ? "fail" : "undecided"));
  for (const auto& f : failures) os << "\n  failure: " << f;
  for (const auto& o : obligations) os << "\n  open: " << o;
  return os.str();
}

ProductResult j1_cylinder(const PresentationPtr& x) { return cartesian(standard(StandardKind::J1), x); }

Morphism j1_end(const ProductResult& cyl, const PresentationPtr& x, int end) {
  Morphism m;
  m.source = x;
  m.target = cyl.object;
  std::string e = std::to_string(end);
  for (const auto& o : x->objects()) m.object_map[o] = product_object_name(e, o);
  for (const auto& g : x->generators())
    m.set(g.name, g.degree, product_right(*cyl.object, e, x->generator_word(g.name, g.degree)));
  return m;
}

Morphism j1_times(const ProductResult& cx, const ProductResult& cx2, const Morphism& f) {
  return product_of_morphisms(identity_morphism(cx.proj_left.target), f, Flavor::Cartesian, cx.object, cx2.object);
}

J1Homotopy constant_homotopy(const Morphism& f) {
  J1Homotopy h;
  h.domain = f.source;
  h.codomain = f.target;
  h.cylinder = j1_cylinder(f.source);
  h.carrier = compose(h.cylinder.proj_right, f);
  return h;
}

namespace {

void absorb(Verdict2& v, const MorphismReport& r, const std::string& where) {
  for (const auto& f : r.failures) v.failures.push_back(where + ": " + f);
  for (const auto& o : r.obligations) v.obligations.push_back(where + ": " + o);
}

void finish(Verdict2& v) {
  v.pass = v.failures.empty() && v.obligations.empty();
  v.decided = !v.failures.empty() || v.obligations.empty();
}

}  // namespace

Verdict2 verify_j1_transformation(const Morphism& f, const Morphism& g, const J1Homotopy& h) {
  Verdict2 v;
  if (h.carrier.source != h.cylinder.object) throw DomainError("homotopy carrier is not defined on J1 x X");
  if (f.source->objects() != h.domain->objects() || g.source->objects() != h.domain->objects())
    throw DomainError("f, g and the homotopy have different domains");
  absorb(v, verify_morphism(h.carrier), "h is not a morphism");
  if (v.failures.empty()) {
    absorb(v, compare_morphisms(compose(j1_end(h.cylinder, h.domain, 0), h.carrier), f), "h(0 x -) vs f");
    absorb(v, compare_morphisms(compose(j1_end(h.cylinder, h.domain, 1), h.carrier), g), "h(1 x -) vs g");
  }
  finish(v);
  return v;
}

Verdict2 verify_strong_retract(const StrongRetract& d) {
  Verdict2 v;
  const PresentationPtr& x = d.i.source;
  const PresentationPtr& y = d.i.target;
  absorb(v, verify_morphism(d.i), "i");
  absorb(v, verify_morphism(d.r), "r");
  if (!v.failures.empty()) {
    finish(v);
    return v;
  }
  absorb(v, compare_morphisms(compose(d.i, d.r), identity_morphism(x)), "r i vs id");
  Verdict2 t = verify_j1_transformation(compose(d.r, d.i), identity_morphism(y), d.h);
  for (const auto& s : t.failures) v.failures.push_back("i r => id: " + s);
  for (const auto& s : t.obligations) v.obligations.push_back("i r => id: " + s);
  if (t.failures.empty()) {
    ProductResult cx = j1_cylinder(x);
    Morphism lhs = compose(j1_times(cx, d.h.cylinder, d.i), d.h.carrier);
    Morphism rhs = compose(cx.proj_right, d.i);
    absorb(v, compare_morphisms(lhs, rhs), "strong square");
  }
  finish(v);
  return v;
}

StrongRetract straight_line_retract(int n) {
  StrongRetract d;
  d.i = disk_basepoint(n);
  PresentationPtr disk = d.i.target;
  d.r = to_point(disk);
  d.h.domain = disk;
  d.h.codomain = disk;
  d.h.cylinder = j1_cylinder(disk);
  Morphism& h = d.h.carrier;
  h.source = d.h.cylinder.object;
  h.target = disk;
  for (const auto& o : disk->objects()) {
    h.object_map[product_object_name("0", o)] = "0";
    h.object_map[product_object_name("1", o)] = o;
    CrxWord track = CrxWord::of_path(PathWord::identity("0"));
    if (n == 1 && o == "1") track = disk->generator_word("l", 1);
    h.set(product_cell_name("l", o), 1, track);
  }
  for (const auto& g : disk->generators()) {
    h.set(product_cell_name("0", g.name), g.degree, identity_word(g.degree, "0"));
    h.set(product_cell_name("1", g.name), g.degree, disk->generator_word(g.name, g.degree));
  }
  return d;
}

TransportResult transport_retract_along_pushout(const StrongRetract& data, const Morphism& f) {
  TransportResult out;
  out.pushout = pushout(data.i, f);
  const PushoutResult& po = out.pushout;
  const Morphism& g = po.in_left;        // Y -> Y'
  const Morphism& iprime = po.in_right;  // X' -> Y'
  PresentationPtr xp = f.target, yp = po.object;

  // Origins of the objects and generators of Y'.
  std::map<std::string, std::pair<int, std::string>> obj_origin;
  for (const auto& [o, po_o] : iprime.object_map) obj_origin.emplace(po_o, std::make_pair(1, o));
  for (const auto& [o, po_o] : g.object_map) obj_origin.emplace(po_o, std::make_pair(0, o));
  std::map<std::pair<int, std::string>, std::pair<int, std::string>> gen_origin;
  auto record = [&](const Morphism& m, int side) {
    for (const auto& [key, w] : m.generator_map) {
      const std::string& pname = key.first == 1 ? w.path.steps().front().gen : w.higher.terms().front().gen;
      gen_origin[{key.first, pname}] = {side, key.second};
    }
  };
  record(g, 0);
  record(iprime, 1);

  // r' = (f r, id)
  Morphism rp;
  rp.source = yp;
  rp.target = xp;
  for (const auto& o : yp->objects()) {
    auto [side, orig] = obj_origin.at(o);
    rp.object_map[o] = side == 1 ? orig : f.map_object(data.r.map_object(orig));
  }
  for (const auto& gen : yp->generators()) {
    auto [side, orig] = gen_origin.at({gen.degree, gen.name});
    rp.set(gen.name, gen.degree,
           side == 1 ? xp->generator_word(orig, gen.degree) : f.apply(data.r.image(orig, gen.degree)));
  }

  // h' = (g h, i' (pi x X'))
  J1Homotopy hp;
  hp.domain = yp;
  hp.codomain = yp;
  hp.cylinder = j1_cylinder(yp);
  Morphism& h = hp.carrier;
  h.source = hp.cylinder.object;
  h.target = yp;
  for (const auto& o : yp->objects()) {
    auto [side, orig] = obj_origin.at(o);
    for (const std::string e : {"0", "1"}) {
      std::string co = product_object_name(e, o);
      h.object_map[co] = side == 1 ? iprime.map_object(orig)
                                   : g.map_object(data.h.carrier.map_object(product_object_name(e, orig)));
    }
    CrxWord track = side == 1 ? CrxWord::of_path(PathWord::identity(iprime.map_object(orig)))
                              : g.apply(data.h.carrier.image(product_cell_name("l", orig), 1));
    h.set(product_cell_name("l", o), 1, track);
  }
  for (const auto& gen : yp->generators()) {
    auto [side, orig] = gen_origin.at({gen.degree, gen.name});
    for (const std::string e : {"0", "1"}) {
      CrxWord img = side == 1 ? yp->generator_word(gen.name, gen.degree)
                              : g.apply(data.h.carrier.image(product_cell_name(e, orig), gen.degree));
      h.set(product_cell_name(e, gen.name), gen.degree, img);
    }
  }
  out.data.i = iprime;
  out.data.r = rp;
  out.data.h = hp;
  out.verdict = verify_strong_retract(out.data);
  return out;
}

}  // namespace crx
