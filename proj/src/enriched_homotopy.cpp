#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "crx/enriched.hpp"
#include "crx/errors.hpp"
#include "crx/normalizer.hpp"

namespace crx {

namespace {

CrxWord identity_word(int degree, const std::string& base) {
  if (degree == 0) return CrxWord::of_object(base);
  if (degree == 1) return CrxWord::of_path(PathWord::identity(base));
  return CrxWord::of_higher(HigherWord::identity(degree, base));
}

Answer all_of(const std::vector<Answer>& v) {
  bool undecided = false;
  for (Answer a : v) {
    if (a == Answer::No) return Answer::No;
    if (a == Answer::Undecided) undecided = true;
  }
  return undecided ? Answer::Undecided : Answer::Yes;
}

bool exact_hom(const EnrichedCategory& c) { return c.data().is_structured() || !c.truncated(); }

RealizeOptions wider(RealizeOptions a, const RealizeOptions& b) {
  a.word_bound = std::max(a.word_bound, b.word_bound);
  a.degree_bound = std::max(a.degree_bound, b.degree_bound);
  a.window = std::max(a.window, b.window);
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Homotopy category

std::optional<std::size_t> HoCategory::compose(const std::string& x, const std::string& y, const std::string& z,
                                               std::size_t i, std::size_t j) const {
  auto it = composition.find({x, y, z, i, j});
  if (it == composition.end()) return std::nullopt;
  return it->second;
}

std::size_t HoCategory::size(const std::string& x, const std::string& y) const {
  auto it = morphisms.find({x, y});
  return it == morphisms.end() ? 0 : it->second.size();
}

bool HoCategory::is_iso(const std::string& x, const std::string& y, std::size_t i) const {
  for (std::size_t j = 0; j < size(y, x); ++j) {
    auto a = compose(x, y, x, i, j), b = compose(y, x, y, j, i);
    if (a && b && *a == identity.at(x) && *b == identity.at(y)) return true;
  }
  return false;
}

bool HoCategory::isomorphic(const std::string& x, const std::string& y) const {
  for (std::size_t i = 0; i < size(x, y); ++i)
    if (is_iso(x, y, i)) return true;
  return false;
}

std::string HoCategory::to_string() const {
  std::ostringstream os;
  for (const auto& x : objects)
    for (const auto& y : objects) {
      os << "Ho(" << x << ", " << y << "):";
      auto it = morphisms.find({x, y});
      if (it != morphisms.end())
        for (std::size_t i = 0; i < it->second.size(); ++i)
          os << " [" << it->second[i] << "]" << (is_iso(x, y, i) ? "~" : "");
      os << "\n";
    }
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

HoCategory ho_category(const EnrichedCategory& r) {
  HoCategory h;
  const auto& c = r.data();
  h.objects = c.objects;
  for (const auto& x : c.objects)
    for (const auto& y : c.objects) {
      auto comps = pi0(*r.hom(x, y).complex);
      auto& reps = h.morphisms[{x, y}];
      bool labelled = r.hom(x, y).kind == HomKind::Contractible;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        // label 0 keeps composites of representatives inside the window
        reps.push_back(labelled ? "0" : comps[i].front());
        for (const auto& o : comps[i]) h.component_of[{x, y}][o] = i;
      }
    }
  if (!exact_hom(r)) {
    h.decided = false;
    h.notes.push_back("homs realized with " + r.options().label() + "; components may merge beyond the bound");
  }
  for (const auto& x : c.objects) h.identity[x] = h.component_of[{x, x}].at(r.unit(x).object);
  for (const auto& x : c.objects)
    for (const auto& y : c.objects)
      for (const auto& z : c.objects)
        for (std::size_t i = 0; i < h.size(x, y); ++i)
          for (std::size_t j = 0; j < h.size(y, z); ++j) {
            try {
              CrxWord w = r.compose(x, y, z, CrxWord::of_object(h.morphisms[{x, y}][i]),
                                    CrxWord::of_object(h.morphisms[{y, z}][j]));
              h.composition[{x, y, z, i, j}] = h.component_of[{x, z}].at(w.object);
            } catch (const ResourceBound& e) {
              h.decided = false;
              h.notes.push_back(e.what());
            }
          }
  return h;
}

HoCategory ho_category(const EnrichedPtr& cat, const RealizeOptions& opts) { return ho_category(*realize(cat, opts)); }

HoCategory ho_category(const EnrichedPtr& cat) {
  RealizeOptions o = options_for(*cat);
  o.word_bound = std::max(o.word_bound, 6);
  o.degree_bound = 1;
  return ho_category(cat, o);
}

std::optional<std::size_t> ho_map(const EnrichedFunctor& f, const EnrichedCategory& s, const EnrichedCategory& t,
                                  const HoCategory& hs, const HoCategory& ht, const std::string& x,
                                  const std::string& y, std::size_t i) {
  try {
    const std::string& rep = hs.morphisms.at({x, y}).at(i);
    CrxWord w = functor_apply(f, s, t, x, y, CrxWord::of_object(rep));
    const auto& comp = ht.component_of.at({f.map_object(x), f.map_object(y)});
    auto it = comp.find(w.object);
    if (it == comp.end()) return std::nullopt;
    return it->second;
  } catch (const Error&) {
    return std::nullopt;
  }
}

Ho21Result ho21(const EnrichedPtr& cat) {
  auto out = std::make_shared<EnrichedPresentation>();
  out->name = "Ho21(" + cat->name + ")";
  out->flavor = Flavor::Cartesian;
  out->bound = cat->bound;
  out->objects = cat->objects;
  out->structured = cat->structured;
  Ho21Result res;
  res.unit.name = "unit";
  res.unit.source = cat;
  for (const auto& x : cat->objects) res.unit.object_map[x] = x;
  if (cat->is_structured()) {
    res.category = out;
    res.unit.target = out;
    return res;
  }
  CategoryPtr r = realize(cat, options_for(*cat));
  for (const auto& c : cat->cells) {
    if (c.degree <= 1) {
      out->cells.push_back(c);
    } else if (c.degree == 2) {
      const Generator& g = r->hom(c.x, c.y).complex->get(c.name, 2);
      out->relations.push_back({c.x, c.y, 1, g.boundary.to_string(), "1_" + g.base});
    }
  }
  for (const auto& rel : cat->relations)
    if (rel.degree <= 1) out->relations.push_back(rel);
  res.category = out;
  res.unit.target = out;
  CategoryPtr t = realize(out, options_for(*out));
  for (const auto& c : cat->cells) {
    if (c.degree <= 1) {
      res.unit.cell_map[c.name] = t->cell(c.name);
    } else {
      const Generator& g = r->hom(c.x, c.y).complex->get(c.name, c.degree);
      res.unit.cell_map[c.name] = identity_word(c.degree, g.base);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Diagnostics

namespace {

struct KindAnswers {
  Answer fibration;
  Answer weq;
};

KindAnswers structured_kinds(const StructuredHom& a, const StructuredHom& b) {
  auto trivial_group = [](const StructuredHom& h) { return h.kind == HomKind::Group && h.modulus == 1; };
  auto contractible = [&](const StructuredHom& h) {
    return h.kind == HomKind::Point || h.kind == HomKind::Contractible || trivial_group(h);
  };
  if (a.kind == HomKind::Empty) return {Answer::Yes, b.kind == HomKind::Empty ? Answer::Yes : Answer::No};
  if (b.kind == HomKind::Empty) return {Answer::No, Answer::No};
  bool weq = false;
  if (contractible(a) && contractible(b)) weq = true;
  if (a.kind == HomKind::Group && b.kind == HomKind::Group && a.modulus == b.modulus) weq = true;
  bool fib = true;
  // a point over a non-discrete hom misses the edges out of its image
  if (a.kind == HomKind::Point && !contractible(b)) fib = false;
  if (a.kind == HomKind::Point && b.kind == HomKind::Contractible) fib = false;
  return {fib ? Answer::Yes : Answer::No, weq ? Answer::Yes : Answer::No};
}

// Star-surjectivity in degree 1 and surjectivity on generators above.
Answer local_fibration_generic(const Morphism& m, const EnrichedCategory& s, std::vector<std::string>& notes) {
  const Presentation& sp = *m.source;
  const Presentation& tp = *m.target;
  const int bound = s.options().word_bound;
  bool truncated = s.truncated();
  for (const auto& o : sp.objects()) {
    if (truncated && static_cast<int>(name_length(o)) >= bound) continue;
    const std::string& fo = m.map_object(o);
    for (const auto* e : tp.generators_of_degree(1)) {
      for (bool inv : {false, true}) {
        const std::string& from = inv ? e->target : e->source;
        if (from != fo) continue;
        PathWord want = tp.edge(e->name, inv);
        bool hit = false;
        for (const auto* g : sp.generators_of_degree(1)) {
          for (bool ginv : {false, true}) {
            if ((ginv ? g->target : g->source) != o) continue;
            if (m.apply(sp.edge(g->name, ginv)) == want) hit = true;
          }
          if (hit) break;
        }
        if (!hit) {
          notes.push_back("no lift of " + e->name + (inv ? "^-1" : "") + " at " + o);
          return Answer::Undecided;
        }
      }
    }
  }
  for (int d = 2; d <= tp.max_degree(); ++d)
    for (const auto* e : tp.generators_of_degree(d)) {
      bool hit = false;
      for (const auto* g : sp.generators_of_degree(d)) {
        CrxWord img = m.image(g->name, d);
        if (img.higher.terms().size() == 1 && img.higher.terms()[0].gen == e->name &&
            std::abs(img.higher.terms()[0].exp) == 1) {
          hit = true;
          break;
        }
      }
      if (!hit) {
        notes.push_back("no generator over " + e->name);
        return Answer::Undecided;
      }
    }
  return Answer::Yes;
}

}  // namespace

FibrationDiagnostics fibration_diagnostics(const EnrichedFunctor& f) {
  FibrationDiagnostics d;
  const EnrichedPresentation& sc = *f.source;
  const EnrichedPresentation& tc = *f.target;
  RealizeOptions so = options_for(sc);
  so.word_bound = std::max(so.word_bound, 4);
  RealizeOptions to = wider(target_options(f, so), options_for(tc));
  CategoryPtr s = realize(f.source, so);
  CategoryPtr t = realize(f.target, to);
  d.bounds = "source " + so.label() + "; target " + to.label();

  std::vector<Answer> fib, weq;
  for (const auto& x : sc.objects)
    for (const auto& y : sc.objects) {
      std::string where = "hom(" + x + ", " + y + ")";
      if (sc.is_structured() && tc.is_structured()) {
        KindAnswers k = structured_kinds(sc.hom_kind(x, y), tc.hom_kind(f.map_object(x), f.map_object(y)));
        fib.push_back(k.fibration);
        weq.push_back(k.weq);
        if (k.fibration == Answer::No) d.notes.push_back(where + " is not a fibration");
        if (k.weq == Answer::No) d.notes.push_back(where + " is not a weak equivalence");
        continue;
      }
      try {
        Morphism m = functor_hom_map(f, *s, *t, x, y);
        fib.push_back(local_fibration_generic(m, *s, d.notes));
        WeqReport w = is_weak_equivalence(m);
        Answer a = w.answer;
        if (a == Answer::Yes && !(exact_hom(*s) && exact_hom(*t))) a = Answer::Undecided;
        weq.push_back(a);
        if (a != Answer::Yes) d.notes.push_back(where + ": " + w.detail);
      } catch (const Error& e) {
        fib.push_back(Answer::Undecided);
        weq.push_back(Answer::Undecided);
        d.notes.push_back(where + ": " + e.what());
      }
    }
  d.local_fibration = all_of(fib);
  d.local_weak_equivalence = all_of(weq);

  HoCategory hs = ho_category(*s), ht = ho_category(*t);
  bool ho_exact = hs.decided && ht.decided;

  // Isofibration: isomorphisms out of F(x) lift to isomorphisms out of x.
  Answer iso = Answer::Yes;
  for (const auto& x : sc.objects) {
    const std::string& fx = f.map_object(x);
    for (const auto& y2 : tc.objects)
      for (std::size_t phi = 0; phi < ht.size(fx, y2); ++phi) {
        if (!ht.is_iso(fx, y2, phi)) continue;
        bool lifted = false;
        for (const auto& y : sc.objects) {
          if (f.map_object(y) != y2) continue;
          for (std::size_t psi = 0; psi < hs.size(x, y) && !lifted; ++psi)
            if (hs.is_iso(x, y, psi) && ho_map(f, *s, *t, hs, ht, x, y, psi) == phi) lifted = true;
        }
        if (!lifted) {
          d.notes.push_back("isomorphism [" + ht.morphisms[{fx, y2}][phi] + "] out of " + fx + " does not lift");
          iso = ho_exact ? Answer::No : Answer::Undecided;
        }
      }
  }
  d.isofibration = iso;

  bool surjective = true;
  std::set<std::string> hit;
  for (const auto& [x, y] : f.object_map) hit.insert(y);
  for (const auto& y : tc.objects)
    if (!hit.count(y)) surjective = false;
  d.acyclic_fibration =
      all_of({surjective ? Answer::Yes : Answer::No, d.local_fibration, d.local_weak_equivalence});

  Answer ess = Answer::Yes;
  for (const auto& y : tc.objects) {
    bool found = false;
    for (const auto& x : sc.objects)
      if (ht.isomorphic(f.map_object(x), y)) found = true;
    if (!found) ess = ho_exact ? Answer::No : Answer::Undecided;
  }
  d.dk_weak_equivalence = all_of({d.local_weak_equivalence, ess});
  return d;
}

TruncationReport truncation_connectivity_cat(const EnrichedPtr& cat, int n) {
  if (n < 0) throw DomainError("truncation level must be >= 0");
  RealizeOptions o;
  o.word_bound = std::max(o.word_bound, options_for(*cat).word_bound);
  CategoryPtr r = realize(cat, o);
  std::vector<Answer> tr, co;
  std::ostringstream detail;
  for (const auto& x : cat->objects)
    for (const auto& y : cat->objects) {
      const Presentation& p = *r->hom(x, y).complex;
      bool empty = p.objects().empty();
      TruncationReport h;
      if (n == 0) {
        TruncationReport z = truncation_connectivity(p, 0);
        h.connected = empty ? Answer::No : Answer::Yes;
        if (empty)
          h.truncated = Answer::Yes;
        else
          h.truncated = all_of({z.truncated, z.connected});
      } else {
        h = truncation_connectivity(p, n - 1);
        if (empty) h.connected = Answer::No;
      }
      tr.push_back(h.truncated);
      co.push_back(h.connected);
      if (h.connected == Answer::No || h.truncated == Answer::No)
        detail << "hom(" << x << ", " << y << "): truncated " << to_string(h.truncated) << ", connected "
               << to_string(h.connected) << (empty ? " (empty)" : "") << "; ";
    }
  TruncationReport out;
  out.truncated = all_of(tr);
  out.connected = all_of(co);
  if (r->truncated()) {
    detail << "homs realized with " << o.label() << ", answers are not final";
    if (out.truncated != Answer::Undecided) out.truncated = Answer::Undecided;
    if (out.connected != Answer::Undecided) out.connected = Answer::Undecided;
  }
  out.detail = detail.str();
  return out;
}

// ---------------------------------------------------------------------------
// Lifting

std::string to_string(LiftOutcome o) {
  switch (o) {
    case LiftOutcome::Found:
      return "Found";
    case LiftOutcome::NotFoundWithinBounds:
      return "NotFoundWithinBounds";
    case LiftOutcome::Refuted:
      return "Refuted";
  }
  return "NotFoundWithinBounds";
}

Verdict2 verify_lift(const LiftSquare& sq, const EnrichedFunctor& cand) {
  Verdict2 v;
  auto absorb = [&](const MorphismReport& r, const std::string& where) {
    for (const auto& s : r.failures) v.failures.push_back(where + ": " + s);
    for (const auto& s : r.obligations) v.obligations.push_back(where + ": " + s);
  };
  try {
    absorb(verify_functor(cand), "lift");
    absorb(compare_functors(compose_functors(sq.i, cand), sq.top), "upper triangle");
    absorb(compare_functors(compose_functors(cand, sq.f), sq.bottom), "lower triangle");
  } catch (const Error& e) {
    v.obligations.push_back(e.what());
  }
  v.pass = v.failures.empty();
  v.decided = v.obligations.empty();
  return v;
}

namespace {

enum class Status { Found, Exact, Inexact };

struct Outcome {
  Status status;
  std::string obstruction;
};

class LiftSearch {
public:
  LiftSearch(const LiftSquare& sq, LiftBounds b) : sq_(sq), bounds_(b) {
    const auto& A = sq.i.source;
    const auto& B = sq.i.target;
    const auto& C = sq.f.source;
    const auto& D = sq.f.target;
    if (B->is_structured()) throw DomainError("lifting needs a cellular domain");
    RealizeOptions oa = options_for(*A);
    RealizeOptions ob = wider(options_for(*B), target_options(sq.i, oa));
    RealizeOptions oc = wider(options_for(*C), target_options(sq.top, oa));
    oc.word_bound = std::max(oc.word_bound, ob.word_bound);
    oc.degree_bound = std::max(oc.degree_bound, ob.degree_bound);
    RealizeOptions od = wider(target_options(sq.f, oc), target_options(sq.bottom, ob));
    a_ = realize(A, oa);
    b_ = realize(B, ob);
    c_ = realize(C, oc);
    d_ = realize(D, od);
    lift_.name = "lift";
    lift_.source = B;
    lift_.target = C;
  }

  LiftResult run() {
    LiftResult res;
    check_square();
    collect_forced();
    for (const auto& x : sq_.i.target->objects) items_.push_back({x, -1});
    std::vector<const EnrichedCell*> cells;
    for (const auto& c : sq_.i.target->cells) cells.push_back(&c);
    std::stable_sort(cells.begin(), cells.end(),
                     [](const EnrichedCell* a, const EnrichedCell* b) { return a->degree < b->degree; });
    for (const auto* c : cells) items_.push_back({c->name, c->degree});
    Outcome o = step(0);
    res.explored = nodes_;
    if (o.status == Status::Found) {
      res.outcome = LiftOutcome::Found;
      res.lift = lift_;
      Verdict2 v = verify_lift(sq_, lift_);
      res.detail = v.summary();
    } else if (o.status == Status::Exact) {
      res.outcome = LiftOutcome::Refuted;
      res.obstruction = o.obstruction;
      res.detail = detail_;
    } else {
      res.outcome = LiftOutcome::NotFoundWithinBounds;
      res.detail = detail_.empty() ? "search exhausted its bounds" : detail_;
    }
    return res;
  }

private:
  struct Item {
    std::string name;
    int degree;  // -1 for an object
  };

  void check_square() {
    EnrichedFunctor upper = compose_functors(sq_.top, sq_.f);
    EnrichedFunctor lower = compose_functors(sq_.i, sq_.bottom);
    MorphismReport r = compare_functors(upper, lower);
    if (!r.failures.empty()) throw DomainError("square does not commute: " + r.failures.front());
  }

  void collect_forced() {
    const auto& A = *sq_.i.source;
    for (const auto& a : A.objects) {
      const std::string& b = sq_.i.map_object(a);
      const std::string& c = sq_.top.map_object(a);
      auto it = forced_objects_.find(b);
      if (it != forced_objects_.end() && it->second != c) inconsistent_ = "objects identified by i are separated by top";
      forced_objects_[b] = c;
    }
    if (A.is_structured()) return;
    for (const auto& a : A.cells) {
      const CrxWord& w = sq_.i.cell_map.at(a.name);
      std::string target;
      if (w.degree == 0 && sq_.i.target->find_cell(w.object)) target = w.object;
      if (w.degree == 1 && w.path.length() == 1 && !w.path.steps()[0].inverse) target = w.path.steps()[0].gen;
      if (w.degree >= 2 && w.higher.terms().size() == 1 && w.higher.terms()[0].exp == 1 &&
          w.higher.terms()[0].actor.is_identity())
        target = w.higher.terms()[0].gen;
      if (target.empty() || !sq_.i.target->find_cell(target)) continue;
      forced_cells_[target] = sq_.top.cell_map.at(a.name);
    }
  }

  bool spend() { return ++nodes_ <= bounds_.max_nodes; }

  EqualityResult equal_in_d(const std::string& x, const std::string& y, const CrxWord& u, const CrxWord& v) {
    return are_equal(*d_->hom(x, y).complex, u, v);
  }

  CrxWord f_image(const std::string& x, const std::string& y, const CrxWord& w) {
    return functor_apply(sq_.f, *c_, *d_, x, y, w);
  }

  Outcome step(std::size_t k) {
    if (!inconsistent_.empty()) return {Status::Exact, inconsistent_};
    if (k == items_.size()) return {Status::Found, ""};
    if (!spend()) {
      detail_ = "node budget exhausted";
      return {Status::Inexact, ""};
    }
    const Item& it = items_[k];
    std::vector<CrxWord> cands;
    bool complete = true;
    std::string obstruction;
    try {
      if (it.degree < 0)
        complete = object_candidates(it.name, cands, obstruction);
      else
        complete = cell_candidates(it.name, cands, obstruction);
    } catch (const ResourceBound& e) {
      detail_ = e.what();
      return {Status::Inexact, ""};
    }
    bool all_exact = complete;
    std::string first_obstruction = obstruction;
    for (const auto& c : cands) {
      if (it.degree < 0)
        lift_.object_map[it.name] = c.object;
      else
        lift_.cell_map[it.name] = c;
      Outcome o = step(k + 1);
      if (o.status == Status::Found) return o;
      if (o.status == Status::Inexact) all_exact = false;
      if (first_obstruction.empty()) first_obstruction = o.obstruction;
      if (it.degree < 0)
        lift_.object_map.erase(it.name);
      else
        lift_.cell_map.erase(it.name);
    }
    if (all_exact) return {Status::Exact, first_obstruction.empty() ? "no candidate" : first_obstruction};
    return {Status::Inexact, ""};
  }

  bool object_candidates(const std::string& b, std::vector<CrxWord>& out, std::string& obstruction) {
    const std::string& want = sq_.bottom.map_object(b);
    auto f = forced_objects_.find(b);
    if (f != forced_objects_.end()) {
      out.push_back(CrxWord::of_object(f->second));
      return true;
    }
    for (const auto& y : sq_.f.source->objects)
      if (sq_.f.map_object(y) == want) out.push_back(CrxWord::of_object(y));
    if (out.empty()) obstruction = "no object over " + want;
    return true;
  }

  // Objects of a hom in search order; contractible windows from 0 outwards.
  std::vector<std::string> objects_in_order(const HomRealization& h) {
    std::vector<std::string> objs = h.complex->objects();
    if (h.kind == HomKind::Contractible)
      std::stable_sort(objs.begin(), objs.end(), [](const std::string& a, const std::string& b) {
        long x = std::stol(a), y = std::stol(b);
        if (std::labs(x) != std::labs(y)) return std::labs(x) < std::labs(y);
        return x > y;
      });
    return objs;
  }

  bool cell_candidates(const std::string& name, std::vector<CrxWord>& out, std::string& obstruction) {
    const EnrichedCell& cell = sq_.i.target->cell(name);
    const std::string& b1 = cell.x;
    const std::string& b2 = cell.y;
    const std::string& X = lift_.map_object(b1);
    const std::string& Y = lift_.map_object(b2);
    const std::string& dx = sq_.f.map_object(X);
    const std::string& dy = sq_.f.map_object(Y);
    const CrxWord& beta = sq_.bottom.cell_map.at(name);
    const HomRealization& ch = c_->hom(X, Y);
    const Presentation& cp = *ch.complex;
    bool exact = exact_hom(*c_);

    // forced by i: check only
    auto fc = forced_cells_.find(name);

    if (cell.degree == 0) {
      if (fc != forced_cells_.end()) {
        out.push_back(fc->second);
        return true;
      }
      for (const auto& o : objects_in_order(ch)) {
        CrxWord w = CrxWord::of_object(o);
        if (f_image(X, Y, w).object == beta.object) out.push_back(w);
      }
      if (out.empty()) obstruction = "no object preimage";
      return exact && ch.kind != HomKind::Contractible;
    }

    const Generator& g = b_->hom(b1, b2).complex->get(name, cell.degree);
    if (cell.degree == 1) {
      std::string ls = functor_apply(lift_, *b_, *c_, b1, b2, CrxWord::of_object(g.source)).object;
      std::string lt = functor_apply(lift_, *b_, *c_, b1, b2, CrxWord::of_object(g.target)).object;
      std::string kind = ls == lt ? "no automorphism preimage" : "no path preimage";
      auto accept = [&](const PathWord& p, bool& refuted) {
        EqualityResult e = equal_in_d(dx, dy, f_image(X, Y, CrxWord::of_path(p)), beta);
        if (e.not_equal()) refuted = true;
        return e.equal();
      };
      if (fc != forced_cells_.end()) {
        const PathWord& p = fc->second.path;
        if (p.start() != ls || p.end() != lt) {
          obstruction = "forced image of " + name + " has the wrong endpoints";
          return true;
        }
        out.push_back(fc->second);
        return true;
      }
      const Normalizer& nz = cp.normalizer();
      std::size_t cs = nz.component_of(ls), ct = nz.component_of(lt);
      if (cs != ct) {
        obstruction = "no path between lifted endpoints";
        return exact;
      }
      if (exact && nz.components()[cs].c1.is_trivial()) {
        PathWord p = nz.tree_path(ls).inverse().then(nz.tree_path(lt));
        bool refuted = false;
        if (accept(p, refuted)) {
          out.push_back(CrxWord::of_path(p));
          return true;
        }
        obstruction = kind;
        return refuted;
      }
      // bounded enumeration of reduced paths from ls to lt
      std::deque<PathWord> queue{PathWord::identity(ls)};
      std::set<std::string> seen;
      while (!queue.empty()) {
        PathWord p = queue.front();
        queue.pop_front();
        if (p.end() == lt) {
          bool refuted = false;
          if (accept(p, refuted) && seen.insert(p.to_string()).second) out.push_back(CrxWord::of_path(p));
        }
        if (static_cast<int>(p.length()) >= bounds_.path_length) continue;
        for (const auto* e : cp.generators_of_degree(1))
          for (bool inv : {false, true}) {
            if ((inv ? e->target : e->source) != p.end()) continue;
            PathWord q = p.then(cp.edge(e->name, inv));
            if (q.length() == p.length() + 1) queue.push_back(q);
          }
      }
      if (out.empty()) obstruction = kind;
      return false;
    }

    // degree >= 2
    int d = cell.degree;
    CrxWord bd = functor_apply(lift_, *b_, *c_, b1, b2, g.boundary);
    std::string base = functor_apply(lift_, *b_, *c_, b1, b2, CrxWord::of_object(g.base)).object;
    std::vector<CrxWord> trial;
    if (fc != forced_cells_.end()) {
      trial.push_back(fc->second);
    } else {
      trial.push_back(identity_word(d, base));
      const Normalizer& nz = cp.normalizer();
      std::size_t comp = nz.component_of(base);
      for (const auto* e : cp.generators_of_degree(d)) {
        if (nz.component_of(e->base) != comp) continue;
        PathWord actor = nz.tree_path(e->base).inverse().then(nz.tree_path(base));
        HigherWord h = HigherWord::generator(d, e->name, e->base).act(actor);
        trial.push_back(CrxWord::of_higher(h));
        trial.push_back(CrxWord::of_higher(h.inverse()));
      }
    }
    bool refuted_all = true;
    for (const auto& w : trial) {
      EqualityResult eb = are_equal(cp, cp.boundary(w), bd);
      if (!eb.equal()) {
        if (!eb.not_equal()) refuted_all = false;
        if (obstruction.empty()) obstruction = "boundary does not lift";
        continue;
      }
      EqualityResult ef = equal_in_d(dx, dy, f_image(X, Y, w), beta);
      if (ef.equal()) {
        out.push_back(w);
      } else {
        if (!ef.not_equal()) refuted_all = false;
        if (obstruction.empty() || obstruction == "boundary does not lift") obstruction = "no cell preimage";
      }
    }
    bool only_identity = cp.generators_of_degree(d).empty();
    return refuted_all && (fc != forced_cells_.end() || (exact && only_identity));
  }

  const LiftSquare& sq_;
  LiftBounds bounds_;
  CategoryPtr a_, b_, c_, d_;
  EnrichedFunctor lift_;
  std::map<std::string, std::string> forced_objects_;
  std::map<std::string, CrxWord> forced_cells_;
  std::string inconsistent_;
  std::vector<Item> items_;
  std::size_t nodes_ = 0;
  std::string detail_;
};

}  // namespace

LiftResult search_lift(const LiftSquare& sq, LiftBounds bounds) {
  if (sq.i.target.get() != sq.bottom.source.get() || sq.f.source.get() != sq.top.target.get() ||
      sq.i.source.get() != sq.top.source.get() || sq.f.target.get() != sq.bottom.target.get())
    throw DomainError("the four functors do not form a square");
  LiftSearch s(sq, bounds);
  return s.run();
}

NamedSquare square_against(const std::string& against, const EnrichedFunctor& f, const EnrichedFunctor& bottom) {
  NamedSquare out;
  Flavor fl = bottom.source->flavor;
  EnrichedFunctor i, b2;
  if (against == "theta-tensor" || against == "theta-cartesian") {
    fl = against == "theta-tensor" ? Flavor::Tensor : Flavor::Cartesian;
    EnrichedPtr interval = standard_category(StandardCategory::I, fl);
    if (!(*bottom.source == *interval))
      throw DomainError("the bottom map must start at the interval I (" + to_string(fl) + ")");
    EnrichedFunctor bot = bottom;
    bot.source = interval;
    i = theta(fl);
    b2 = compose_functors(interval_collapse(fl), bot);
    out.detail = "bottom map precomposed with the collapse of ITilde onto I";
  } else if (against == "point-interval") {
    i = point_inclusion(bottom.source, bottom.source->objects.front());
    b2 = bottom;
  } else {
    throw DomainError("unknown square '" + against + "'");
  }
  // top: lift the restriction along One -> A
  const EnrichedPtr& A = i.source;
  EnrichedFunctor down = compose_functors(i, b2);
  const std::string& a0 = A->objects.front();
  EnrichedFunctor pick_a = point_inclusion(A, a0);
  std::optional<EnrichedFunctor> top;
  for (const auto& c : f.source->objects) {
    if (f.map_object(c) != down.map_object(a0)) continue;
    EnrichedFunctor pick_c = point_inclusion(f.source, c);
    pick_c.source = pick_a.source;
    LiftSquare small{pick_a, f, pick_c, down};
    LiftResult r = search_lift(small, {});
    if (r.outcome == LiftOutcome::Found) {
      top = r.lift;
      break;
    }
  }
  if (!top) throw DomainError("no top map for the square: the restriction to " + A->name + " does not lift");
  top->name = "top";
  out.square = {i, f, *top, b2};
  return out;
}

}  // namespace crx
