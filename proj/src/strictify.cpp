#include "crx/strictify.hpp"

#include <algorithm>

#include "crx/errors.hpp"

namespace crx {

namespace {

CrxWord identity_of(int degree, const std::string& base) {
  if (degree == 0) return CrxWord::of_object(base);
  if (degree == 1) return CrxWord::of_path(PathWord::identity(base));
  return CrxWord::of_higher(HigherWord::identity(degree, base));
}

bool mentions_decomposable(const EnrichedPresentation& cat, const CrxWord& w) {
  if (w.degree < 2) return false;
  for (const auto& t : w.higher.terms())
    if (is_decomposable(cat, t.gen)) return true;
  return false;
}

// The functor from cat to out sending each cell of degree < below to the
// cell of the same name.
EnrichedFunctor cellwise(const EnrichedPtr& cat, const EnrichedPtr& out, int below) {
  EnrichedFunctor f;
  f.name = "unit";
  f.source = cat;
  f.target = out;
  for (const auto& x : cat->objects) f.object_map[x] = x;
  if (cat->is_structured()) return f;
  CategoryPtr t = realize(out, options_for(*out));
  for (const auto& c : cat->cells)
    if (c.degree < below) f.cell_map[c.name] = t->cell(c.name);
  return f;
}

// Decomposables one degree above the top cell, so that K holds their
// boundaries in every degree of the output, and long enough composites for
// the boundaries of products of two whiskered cells.
RealizeOptions full_options(const EnrichedPresentation& cat) {
  RealizeOptions o = options_for(cat);
  o.word_bound = std::max(o.word_bound, 5);
  o.degree_bound = std::max(2, cat.max_degree() + 1);
  return o;
}

}  // namespace

bool is_decomposable(const EnrichedPresentation& cat, const std::string& name) {
  int positive = 0;
  for (const auto& part : split_name(name)) {
    const EnrichedCell* c = cat.find_cell(part);
    if (c && c->degree > 0) ++positive;
  }
  return positive >= 2;
}

StrictificationResult stglo(const EnrichedPtr& cat) {
  if (cat->flavor != Flavor::Tensor) throw DomainError("stglo expects a tensor-enriched category, got " + cat->name);
  StrictificationResult res;
  auto base = std::make_shared<EnrichedPresentation>(*cat);
  base->flavor = Flavor::Cartesian;

  if (cat->is_structured()) {
    res.notes.push_back("structured homs have no cells above degree 1, so nothing is collapsed");
    res.output = base;
    res.unit = cellwise(cat, base, 0);
    return res;
  }

  const RealizeOptions opts = full_options(*cat);
  CategoryPtr src = realize(cat, opts);
  const int top = cat->max_degree();

  // Degree d: boundaries of d-cells and relations of degree d - 1, read
  // against the output built so far.
  for (int d = 2; d <= top + 1; ++d) {
    auto partial = std::make_shared<EnrichedPresentation>();
    partial->name = base->name;
    partial->flavor = Flavor::Cartesian;
    partial->bound = base->bound;
    partial->objects = base->objects;
    for (const auto& c : base->cells)
      if (c.degree < d) partial->cells.push_back(c);
    for (const auto& r : base->relations)
      if (r.degree < d - 1) partial->relations.push_back(r);
    EnrichedFunctor u = cellwise(cat, partial, d);
    CategoryPtr tgt = realize(partial, target_options(u, opts));

    auto rewrite = [&](const std::string& x, const std::string& y, int degree, std::string& text) {
      CrxWord w = src->parse(x, y, degree, text);
      if (!mentions_decomposable(*cat, w)) return;
      text = functor_apply(u, *src, *tgt, x, y, w).to_string();
    };
    for (auto& c : base->cells)
      if (c.degree == d) rewrite(c.x, c.y, d - 1, c.boundary);
    for (auto& r : base->relations)
      if (r.degree == d - 1) {
        rewrite(r.x, r.y, r.degree, r.lhs);
        rewrite(r.x, r.y, r.degree, r.rhs);
      }
  }

  res.output = base;
  res.unit = cellwise(cat, base, top + 1);
  for (const auto& x : cat->objects)
    for (const auto& y : cat->objects) {
      auto& log = res.kernel_log[{x, y}];
      for (const auto& g : src->hom(x, y).complex->generators())
        if (is_decomposable(*cat, g.name)) log.push_back(g.name);
    }
  if (src->truncated())
    res.notes.push_back("composites were cut off at " + opts.label() + "; the kernel log lists the realized part");
  return res;
}

EnrichedFunctor unit_map(const EnrichedPtr& cat) { return stglo(cat).unit; }

KernelList decomposable_kernel(const EnrichedPtr& cat, const std::string& x, const std::string& y, int n) {
  KernelList out;
  if (cat->is_structured()) {
    out.complete = false;
    return out;
  }
  CategoryPtr r = realize(cat, full_options(*cat));
  const Presentation& h = *r->hom(x, y).complex;
  for (const auto* g : h.generators_of_degree(n))
    if (is_decomposable(*cat, g->name)) {
      out.words.push_back(h.generator_word(g->name, n));
      out.names.push_back(g->name);
    }
  for (const auto* g : h.generators_of_degree(n + 1))
    if (is_decomposable(*cat, g->name)) {
      if (n == 0) continue;  // a 1-cell has no boundary word
      out.words.push_back(g->boundary);
    }
  out.complete = !r->truncated();
  return out;
}

PresentationPtr decomposable_quotient(const Presentation& hom, const EnrichedPresentation& cat) {
  auto q = std::make_shared<Presentation>(hom);
  q->name = hom.name + "/K";
  for (const auto& g : hom.generators()) {
    if (!is_decomposable(cat, g.name)) continue;
    q->add_relation(g.degree, hom.generator_word(g.name, g.degree), identity_of(g.degree, g.base));
    q->add_relation(g.degree - 1, g.boundary, identity_of(g.degree - 1, g.base));
  }
  return q;
}

std::vector<QuotientAgreement> quotient_agreement(const EnrichedPtr& cat) {
  std::vector<QuotientAgreement> out;
  StrictificationResult st = stglo(cat);
  const RealizeOptions opts = cat->is_structured() ? RealizeOptions{} : full_options(*cat);
  CategoryPtr s = realize(cat, opts);
  CategoryPtr t = realize(st.output, opts);
  const bool cut = s->truncated() || t->truncated();
  for (const auto& x : cat->objects)
    for (const auto& y : cat->objects) {
      QuotientAgreement a{x, y, Answer::Undecided, ""};
      PresentationPtr q = decomposable_quotient(*s->hom(x, y).complex, *cat);
      PresentationPtr hx = t->hom(x, y).complex;
      try {
        Morphism there = functor_hom_map(st.unit, *s, *t, x, y);
        there.source = q;
        Morphism back;
        back.source = hx;
        back.target = q;
        bool missing = false;
        for (const auto& o : hx->objects()) {
          if (!q->has_object(o)) missing = true;
          back.object_map[o] = o;
        }
        for (const auto& g : hx->generators()) {
          if (!q->find(g.name, g.degree)) {
            missing = true;
            break;
          }
          back.set(g.name, g.degree, q->generator_word(g.name, g.degree));
        }
        if (missing) {
          a.agree = cut ? Answer::Undecided : Answer::No;
          a.detail = "the cartesian hom has a cell the quotient lacks";
        } else {
          IsoCheck iso = check_inverse_pair(there, back);
          if (iso.isomorphic && iso.decided)
            a.agree = Answer::Yes;
          else if (!iso.isomorphic && iso.decided && !cut)
            a.agree = Answer::No;
          a.detail = iso.detail;
        }
      } catch (const ResourceBound& e) {
        a.detail = e.what();
      }
      if (a.agree == Answer::Undecided && cut && a.detail.empty()) a.detail = "realization cut off at " + opts.label();
      out.push_back(a);
    }
  return out;
}

}  // namespace crx
