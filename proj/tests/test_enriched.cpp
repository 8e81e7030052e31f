#include <doctest.h>

#include <random>

#include "crx/encat.hpp"
#include "crx/enriched.hpp"
#include "crx/errors.hpp"
#include "crx/format.hpp"
#include "support.hpp"

using namespace crx;
using namespace crx_test;

TEST_CASE("structured hom kinds round-trip through text") {
  for (std::string s : {"empty", "point(f)", "contractible(Z)", "group(Z)", "group(Z/3)"})
    CHECK(parse_structured("structured:" + s).to_string() == s);
  CHECK_THROWS_AS(parse_structured("group(Z/0)"), DomainError);
  CHECK_THROWS_AS(parse_structured("sphere(2)"), DomainError);
}

TEST_CASE("composite names") {
  CHECK(join_names({"id_0", "f", "id_1", "g"}) == "f.g");
  CHECK(split_name("f.l2.g") == std::vector<std::string>{"f", "l2", "g"});
  CHECK(split_name("id_0").empty());
  CHECK(name_length("a.k") == 2);
}

TEST_CASE("cell names are checked") {
  EnrichedPresentation c;
  c.add_object("0");
  CHECK_THROWS_AS(c.add_cell({"a.b", 0, "0", "0", ""}), DomainError);
  CHECK_THROWS_AS(c.add_cell({"id_x", 0, "0", "0", ""}), DomainError);
  CHECK_THROWS_AS(c.add_cell({"k", 0, "0", "9", ""}), DomainError);
  c.add_cell({"k", 0, "0", "0", ""});
  CHECK_THROWS_AS(c.add_cell({"k", 1, "0", "0", "id_0 -> k"}), DomainError);
}

TEST_CASE("P11 hom(0,2) is the tensor square of the interval") {
  auto p = standard_category(StandardCategory::P11, Flavor::Tensor);
  PresentationPtr h = realize_hom(p, "0", "2");
  PresentationPtr sq = tensor(standard(StandardKind::Disk, 1), standard(StandardKind::Disk, 1));
  auto names = p11_names(Flavor::Tensor);
  CHECK(h->objects().size() == 4);
  CHECK(h->count(1) == 4);
  CHECK(h->count(2) == 1);
  Morphism there = renaming(h, sq, names), back = renaming(sq, h, inverted(names));
  CHECK(verify_morphism(there).ok());
  CHECK(verify_morphism(back).ok());
  IsoCheck iso = check_inverse_pair(there, back);
  CHECK(iso.isomorphic);
  CHECK(iso.decided);
  // the boundary of l.m is the renamed boundary of l*l
  CHECK(renamed(h->get("l.m", 2).boundary, names) == sq->get("(l*l)", 2).boundary);
}

TEST_CASE("P11 over the cartesian product has a commuting square") {
  auto p = standard_category(StandardCategory::P11, Flavor::Cartesian);
  PresentationPtr h = realize_hom(p, "0", "2");
  PresentationPtr sq = cartesian(standard(StandardKind::Disk, 1), standard(StandardKind::Disk, 1)).object;
  auto names = p11_names(Flavor::Cartesian);
  CHECK(h->count(2) == 0);
  CHECK(h->relations().size() == 1);
  IsoCheck iso = check_inverse_pair(renaming(h, sq, names), renaming(sq, h, inverted(names)));
  CHECK(iso.isomorphic);
}

TEST_CASE("suspension realizes its hom exactly") {
  std::vector<PresentationPtr> vs{standard(StandardKind::Disk, 1), standard(StandardKind::Disk, 2),
                                  standard(StandardKind::Sphere, 2), standard(StandardKind::Globe, 3),
                                  tensor(standard(StandardKind::Disk, 1), standard(StandardKind::Disk, 1)),
                                  cartesian(standard(StandardKind::Disk, 1), standard(StandardKind::Disk, 2)).object};
  for (const auto& v : vs)
    for (Flavor fl : {Flavor::Tensor, Flavor::Cartesian}) {
      auto s = suspension(*v, fl);
      PresentationPtr h = realize_hom(s, "0", "1");
      CAPTURE(v->name);
      CHECK(h->objects() == v->objects());
      REQUIRE(h->generators().size() == v->generators().size());
      for (std::size_t i = 0; i < h->generators().size(); ++i) {
        const auto& a = h->generators()[i];
        const auto& b = v->generators()[i];
        CHECK(a.name == b.name);
        CHECK(a.degree == b.degree);
        CHECK(a.source == b.source);
        CHECK(a.target == b.target);
        CHECK(a.boundary == b.boundary);
      }
      CHECK(h->relations().size() == v->relations().size());
      CHECK(realize_hom(s, "0", "0")->objects() == std::vector<std::string>{"id_0"});
      CHECK(realize_hom(s, "1", "0")->objects().empty());
    }
}

TEST_CASE("the homs of the standard categories validate") {
  for (auto k : {StandardCategory::I, StandardCategory::IStar, StandardCategory::ITilde, StandardCategory::P11})
    for (Flavor fl : {Flavor::Tensor, Flavor::Cartesian}) {
      auto c = standard_category(k, fl);
      CategoryPtr r = realize(c, options_for(*c));
      for (const auto& x : c->objects)
        for (const auto& y : c->objects) {
          CAPTURE(c->name);
          CAPTURE(x + "," + y);
          CHECK(validate(*r->hom(x, y).complex).ok());
        }
    }
}

TEST_CASE("ITilde has b only over the tensor product") {
  CHECK(standard_category(StandardCategory::ITilde, Flavor::Tensor)->find_cell("b"));
  CHECK_FALSE(standard_category(StandardCategory::ITilde, Flavor::Cartesian)->find_cell("b"));
  auto c = standard_category(StandardCategory::ITilde, Flavor::Tensor);
  CategoryPtr r = realize(c, options_for(*c));
  const Generator& beta = r->hom("0", "0").complex->get("beta", 2);
  CHECK(beta.base == "k");
  CHECK(beta.boundary.path.is_loop());
  CHECK(beta.boundary.path.length() == 5);
}

TEST_CASE("theta, inclusion and collapse are functors") {
  for (Flavor fl : {Flavor::Tensor, Flavor::Cartesian}) {
    CHECK(verify_functor(theta(fl)).decided());
    CHECK(verify_functor(interval_inclusion(fl)).decided());
    MorphismReport r = verify_functor(interval_collapse(fl));
    CHECK_MESSAGE(r.decided(), (r.failures.empty() ? "" : r.failures.front()));
  }
}

TEST_CASE("I -> ITilde -> I is the identity") {
  for (Flavor fl : {Flavor::Tensor, Flavor::Cartesian}) {
    EnrichedFunctor c = compose_functors(interval_inclusion(fl), interval_collapse(fl));
    MorphismReport r = compare_functors(c, identity_functor(standard_category(StandardCategory::I, fl)));
    CHECK(r.decided());
  }
}

TEST_CASE("collapse after theta sends k to f.g") {
  EnrichedFunctor t = compose_functors(theta(Flavor::Tensor), interval_collapse(Flavor::Tensor));
  CHECK(t.cell_map.at("k").to_string() == "f.g");
  CHECK(t.cell_map.at("h1").to_string() == "l1");
  CHECK(t.cell_map.at("h2").to_string() == "f.l2.g");
}

TEST_CASE("composition in the tensor realization") {
  auto c = standard_category(StandardCategory::I, Flavor::Tensor);
  RealizeOptions o;
  o.word_bound = 5;
  o.degree_bound = 2;
  CategoryPtr r = realize(c, o);
  CrxWord l1 = r->cell("l1"), l2 = r->cell("l2");
  CrxWord f = r->cell("f");
  CrxWord w = r->compose("0", "0", "0", l1, l1);
  CHECK(w.degree == 2);
  CHECK(w.to_string() == "l1.l1");
  CHECK(r->compose("0", "1", "1", f, l2).to_string() == "f.l2");
  CHECK(r->compose("0", "0", "0", r->unit("0"), l1) == l1);
  // whiskering by a composite of degree 0
  CHECK(r->parse("0", "0", 1, "comp(f, comp(l2, g))").to_string() == "f.l2.g");
  CHECK_THROWS_AS(r->compose("0", "0", "0", r->cell("l1"), r->parse("0", "0", 2, "l1.l1")), ResourceBound);
}

TEST_CASE("composition is associative on degree-0 composites") {
  auto c = standard_category(StandardCategory::ITilde, Flavor::Tensor);
  RealizeOptions o;
  o.word_bound = 6;
  o.degree_bound = 1;
  CategoryPtr r = realize(c, o);
  std::mt19937 rng(7);
  const auto& h00 = r->hom("0", "0").complex->objects();
  const auto& h01 = r->hom("0", "1").complex->objects();
  const auto& h10 = r->hom("1", "0").complex->objects();
  for (int trial = 0; trial < 100; ++trial) {
    auto pick = [&](const std::vector<std::string>& v) { return CrxWord::of_object(v[rng() % v.size()]); };
    CrxWord a = pick(h01), b = pick(h10), d = pick(h00);
    if (name_length(a.object) + name_length(b.object) + name_length(d.object) > 6) continue;
    CrxWord left = r->compose("0", "0", "0", r->compose("0", "1", "0", a, b), d);
    CrxWord right = r->compose("0", "1", "0", a, r->compose("1", "0", "0", b, d));
    CHECK(left == right);
  }
}

TEST_CASE("Ho(I) identifies 0 and 1; Ho(P11) does not") {
  HoCategory h = ho_category(standard_category(StandardCategory::I, Flavor::Tensor));
  CHECK(h.isomorphic("0", "1"));
  CHECK(h.size("0", "0") == 1);
  HoCategory p = ho_category(standard_category(StandardCategory::P11, Flavor::Tensor));
  CHECK(p.decided);
  CHECK_FALSE(p.isomorphic("0", "1"));
  CHECK(p.size("0", "2") == 1);
  CHECK(p.size("1", "0") == 0);
}

TEST_CASE("Ho21 turns 2-cells into relations") {
  auto c = standard_category(StandardCategory::ITilde, Flavor::Tensor);
  Ho21Result h = ho21(c);
  CHECK(h.category->flavor == Flavor::Cartesian);
  CHECK(h.category->max_degree() == 1);
  CHECK(h.category->relations.size() == 2);
  MorphismReport r = verify_functor(h.unit);
  CHECK_MESSAGE(r.ok(), (r.failures.empty() ? "" : r.failures.front()));
}

TEST_CASE("identity functors pass the diagnostics") {
  auto c = standard_category(StandardCategory::P11, Flavor::Tensor);
  FibrationDiagnostics d = fibration_diagnostics(identity_functor(c));
  CHECK(d.local_fibration == Answer::Yes);
  CHECK(d.isofibration == Answer::Yes);
  CHECK(d.local_weak_equivalence == Answer::Yes);
  CHECK(d.dk_weak_equivalence == Answer::Yes);
  CHECK(d.acyclic_fibration == Answer::Yes);
}

TEST_CASE("the covering functor of the corpus example") {
  EncatFile file = load_encat(corpus("ex39.encat"));
  const EnrichedFunctor& f = *file.functor("F");
  CHECK(verify_functor(f).decided());
  CHECK(verify_functor(*file.functor("bottom")).decided());
  FibrationDiagnostics d = fibration_diagnostics(f);
  CHECK(d.local_fibration == Answer::Yes);
  CHECK(d.isofibration == Answer::Yes);
  CHECK(d.local_weak_equivalence == Answer::No);
  CHECK(d.dk_weak_equivalence == Answer::No);
  CHECK(d.acyclic_fibration == Answer::No);

  for (auto [against, bottom] : {std::pair<std::string, std::string>{"theta-tensor", "bottom_theta"},
                                 {"point-interval", "bottom"}}) {
    CAPTURE(against);
    NamedSquare sq = square_against(against, f, *file.functor(bottom));
    LiftResult r = search_lift(sq.square);
    CHECK(r.outcome == LiftOutcome::Refuted);
    CHECK(r.obstruction == "no automorphism preimage");
  }
}

TEST_CASE("the theta square has a top map") {
  EncatFile file = load_encat(corpus("ex39.encat"));
  NamedSquare sq = square_against("theta-tensor", *file.functor("F"), *file.functor("bottom_theta"));
  CHECK(sq.square.top.cell_map.at("k").object == "0");
  // with l1 sent to the loop, alpha and beta leave no commuting square
  CHECK_THROWS_AS(square_against("theta-tensor", *file.functor("F"), *file.functor("bottom")), DomainError);
  MorphismReport r = verify_functor(sq.square.top);
  CHECK(r.decided());
}

TEST_CASE("a lift exists when the bottom map factors") {
  // F = id on I, bottom = id: the identity is a lift
  auto c = standard_category(StandardCategory::I, Flavor::Tensor);
  EnrichedFunctor id = identity_functor(c);
  EnrichedFunctor i = point_inclusion(c, "0");
  EnrichedFunctor top = point_inclusion(c, "0");
  top.source = i.source;
  LiftResult r = search_lift({i, id, top, id});
  REQUIRE(r.outcome == LiftOutcome::Found);
  CHECK(verify_lift({i, id, top, id}, *r.lift).pass);
}

TEST_CASE("a structured lift against a point inclusion") {
  EncatFile file = parse_encat(R"(
encat C flavor=tensor
objects: 0 1
hom 0 0 = structured:contractible(Z)
hom 0 1 = structured:point(f)
hom 1 0 = structured:point(g)
hom 1 1 = structured:contractible(Z)

encat D flavor=tensor
objects: 0 1
hom 0 0 = structured:group(Z)
hom 0 1 = structured:point(f)
hom 1 0 = structured:point(g)
hom 1 1 = structured:group(Z)

functor F : C -> D
obj 0 -> 0
obj 1 -> 1
end

functor bottom : I -> D
obj 0 -> 0
obj 1 -> 1
cell f -> f
cell g -> g
cell l1 -> 1_*
cell l2 -> 1_*
end
)");
  NamedSquare sq = square_against("point-interval", *file.functor("F"), *file.functor("bottom"));
  LiftResult r = search_lift(sq.square);
  REQUIRE(r.outcome == LiftOutcome::Found);
  CHECK(r.lift->cell_map.at("l1").path.is_identity());
}

TEST_CASE("a square that does not commute is rejected") {
  auto c = standard_category(StandardCategory::I, Flavor::Tensor);
  EnrichedFunctor id = identity_functor(c);
  EnrichedFunctor i = point_inclusion(c, "0");
  EnrichedFunctor top = point_inclusion(c, "1");
  top.source = i.source;
  CHECK_THROWS_AS(search_lift({i, id, top, id}), DomainError);
}

TEST_CASE("connectivity of suspensions follows the empty-hom convention") {
  auto s = suspension(*standard(StandardKind::Sphere, 3), Flavor::Tensor);
  TruncationReport r = truncation_connectivity_cat(s, 2);
  // hom(1,0) is empty, so it is not 1-connected
  CHECK(r.connected == Answer::No);
}

TEST_CASE("a one-object category with a 3-cell is 3-connected") {
  auto c = std::make_shared<EnrichedPresentation>();
  c->name = "E3";
  c->add_object("0");
  c->add_cell({"e", 3, "0", "0", "1_id_0"});
  TruncationReport r = truncation_connectivity_cat(c, 3);
  CHECK(r.connected == Answer::Yes);
  CHECK(r.truncated == Answer::No);
  CHECK(truncation_connectivity_cat(c, 4).connected == Answer::No);
}

TEST_CASE("encat files round-trip") {
  for (std::string f : {"ex39.encat", "p11.encat", "itilde-tensor.encat", "itilde-cartesian.encat"}) {
    CAPTURE(f);
    EncatFile a = load_encat(corpus(f));
    std::string text = emit_encat(a);
    EncatFile b = parse_encat(text);
    CHECK(emit_encat(b) == text);
    REQUIRE(a.categories.size() == b.categories.size());
    for (std::size_t i = 0; i < a.categories.size(); ++i) CHECK(*a.categories[i] == *b.categories[i]);
  }
}

TEST_CASE("corpus functors verify") {
  for (std::string f : {"itilde-tensor.encat", "itilde-cartesian.encat"}) {
    EncatFile a = load_encat(corpus(f));
    for (const auto& fn : a.functors) {
      CAPTURE(f + ":" + fn.name);
      MorphismReport r = verify_functor(fn);
      CHECK_MESSAGE(r.decided(), (r.failures.empty() ? "" : r.failures.front()));
    }
  }
}

TEST_CASE("encat parse errors carry positions") {
  try {
    parse_encat("encat C\nobjects: 0\ncell f deg 1 : 0 -> 0\n", "x.encat");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
  CHECK_THROWS_AS(parse_encat("functor F : Nope -> I\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_encat("encat C\nobjects: 0\ncell a deg 1 : 0 -> 0 @ boundary id_0 -> zz\n"), ParseError);
}
