#include <doctest.h>

#include "crx/crossed_complex.hpp"
#include "crx/errors.hpp"
#include "crx/invariants.hpp"
#include "crx/monoidal.hpp"

using namespace crx;

namespace {

PresentationPtr D(int n) { return standard(StandardKind::Disk, n); }
PresentationPtr S(int n) { return standard(StandardKind::Sphere, n); }
PresentationPtr point() { return standard(StandardKind::Point); }

// Counts of simple tensors by degree: convolution of the two count vectors.
std::vector<std::size_t> convolve(const Presentation& a, const Presentation& b, int bound) {
  auto ca = a.counts_by_degree(), cb = b.counts_by_degree();
  std::vector<std::size_t> out(static_cast<std::size_t>(bound) + 1, 0);
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = 0; j < cb.size(); ++j)
      if (i + j < out.size()) out[i + j] += ca[i] * cb[j];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

TEST_CASE("D1 tensor D1 is the non-commuting square") {
  auto t = tensor(D(1), D(1));
  CHECK(t->objects().size() == 4);
  CHECK(t->count(1) == 4);
  CHECK(t->count(2) == 1);
  const Generator& g = t->get("(l*l)", 2);
  CHECK(g.base == "(0*0)");
  // (l*0)(1*l)(l*1)^-1(0*l)^-1
  PathWord sq = t->edge("(l*0)").then(t->edge("(1*l)")).then(t->edge("(l*1)", true)).then(t->edge("(0*l)", true));
  CHECK(g.boundary.path == sq);
  CHECK(validate(*t).ok());
  CHECK(are_equal(*t, t->generator_word("(l*l)", 2), CrxWord::of_higher(HigherWord::identity(2, "(0*0)"))).not_equal());
}

TEST_CASE("D2 tensor D2 counts") {
  auto t = tensor(D(2), D(2));
  std::vector<std::size_t> want{1, 2, 3, 2, 1};
  CHECK(t->counts_by_degree() == want);
  CHECK(validate(*t).ok());
}

TEST_CASE("tensor counts are the convolution of the factor counts") {
  std::vector<PresentationPtr> cells{point(), D(1), D(2), D(3), S(2), S(3), standard(StandardKind::Globe, 2),
                                     standard(StandardKind::Globe, 3)};
  for (const auto& a : cells)
    for (const auto& b : cells) {
      auto t = tensor(a, b);
      CHECK_MESSAGE(t->counts_by_degree() == convolve(*a, *b, t->bound), a->name << " * " << b->name);
    }
}

TEST_CASE("tensors of standard cells validate") {
  std::vector<PresentationPtr> cells{D(1), D(2), D(3), S(2), standard(StandardKind::Globe, 2),
                                     standard(StandardKind::Globe, 3)};
  for (const auto& a : cells)
    for (const auto& b : cells) {
      auto t = tensor(a, b);
      ValidationReport r = validate(*t);
      CHECK_MESSAGE(r.ok(), a->name << " * " << b->name << "\n" << r.to_string());
    }
}

TEST_CASE("unit laws") {
  std::vector<PresentationPtr> cells{D(1), D(3), S(2), standard(StandardKind::Globe, 3)};
  for (const auto& c : cells) {
    auto lt = tensor(point(), c);
    auto rt = tensor(c, point());
    CHECK(lt->counts_by_degree() == c->counts_by_degree());
    CHECK(rt->counts_by_degree() == c->counts_by_degree());
    auto pr = cartesian(c, point());
    CHECK(pr.object->counts_by_degree() == c->counts_by_degree());
    IsoReport iso = check_isomorphism(pr.proj_left);
    CHECK_MESSAGE(iso.verdict == IsoVerdict::Isomorphism, c->name << ": " << iso.detail);
  }
}

TEST_CASE("D1 x D1 is the commuting square") {
  auto p = cartesian(D(1), D(1));
  CHECK(p.object->count(1) == 4);
  CHECK(p.object->count(2) == 0);
  CHECK(validate(*p.object).ok());
  PathWord a = p.object->edge("(l,0)").then(p.object->edge("(1,l)"));
  PathWord b = p.object->edge("(0,l)").then(p.object->edge("(l,1)"));
  CHECK(are_equal(*p.object, CrxWord::of_path(a), CrxWord::of_path(b)).equal());
  CHECK(verify_morphism(p.proj_left).decided());
  CHECK(verify_morphism(p.proj_right).decided());
}

TEST_CASE("product ranks of 1-reduced cells add") {
  auto p = cartesian(S(2), S(3));
  CHECK(p.object->count(2) == 1);
  CHECK(p.object->count(3) == 1);
  CHECK(pi_n(*p.object, "(0,0)", 2).abelianization.free_rank == 1);
}

TEST_CASE("collapse kills exactly the mixed tensors") {
  auto c = D(1);
  Morphism k = collapse(c, c);
  CHECK(verify_morphism(k).decided());
  for (const auto& g : k.source->generators()) {
    bool killed = k.image(g.name, g.degree).is_identity();
    CHECK(killed == (g.name == "(l*l)"));
  }
  CHECK(k.image("(l*0)", 1).path == k.target->edge("(l,0)"));
  WeqReport w = is_weak_equivalence(k);
  CHECK(w.answer == Answer::Yes);
}

TEST_CASE("collapse composed with projections") {
  std::vector<PresentationPtr> cells{D(1), D(2), S(2), standard(StandardKind::Globe, 2)};
  for (const auto& a : cells)
    for (const auto& b : cells) {
      auto t = tensor(a, b);
      auto p = cartesian(a, b);
      Morphism k = collapse_between(t, p.object, *a, *b);
      MorphismReport mr = verify_morphism(k);
      CHECK_MESSAGE(mr.ok(), a->name << " " << b->name << " " << (mr.failures.empty() ? "" : mr.failures[0]));
      // pi_1 . collapse = (id (x) !) followed by the unit isomorphism
      Morphism via = product_of_morphisms(identity_morphism(a), to_point(b), Flavor::Tensor, t, tensor(a, point()));
      Morphism lhs = compose(k, p.proj_left);
      for (const auto& g : t->generators()) {
        CrxWord x = lhs.image(g.name, g.degree);
        CrxWord y = via.image(g.name, g.degree);
        // (c*) names in C (x) . become c
        CHECK(x.degree == y.degree);
        CHECK(x.is_identity() == y.is_identity());
      }
    }
}

TEST_CASE("kernel generators") {
  auto ker = kernel_generators(D(1), D(1), 1);
  REQUIRE(ker.size() == 1);
  auto t = tensor(D(1), D(1));
  CHECK(ker[0] == t->get("(l*l)", 2).boundary);
  CHECK(kernel_generators(point(), D(3), 2).empty());
  CHECK(kernel_generators(point(), D(3), 3).empty());
  auto k4 = kernel_generators(S(2), S(2), 4);
  REQUIRE(k4.size() == 1);
  CHECK(k4[0].higher.terms().front().gen == "(s*s)");
  CHECK_THROWS_AS(kernel_generators(D(1), D(1), 11), TruncationError);
  // every kernel word collapses to an identity
  for (auto [a, b] : {std::pair{D(1), D(2)}, std::pair{D(2), D(2)}, std::pair{S(2), D(1)}}) {
    Morphism k = collapse(a, b);
    for (int n = 1; n <= 4; ++n)
      for (const auto& w : kernel_generators(a, b, n)) {
        CrxWord img = k.apply(w);
        CrxWord id = n == 1 ? CrxWord::of_path(PathWord::identity(img.basepoint()))
                            : CrxWord::of_higher(HigherWord::identity(n, img.basepoint()));
        CHECK(are_equal(*k.target, img, id).equal());
      }
  }
}

TEST_CASE("cartesian pushout-products of sphere inclusions") {
  for (int m : {2, 3, 4})
    for (int n : {2, 3, 4}) {
      PushoutProduct pp = pushout_product(sphere_inclusion(m), sphere_inclusion(n), Flavor::Cartesian);
      CHECK_MESSAGE(pp.iso.verdict == IsoVerdict::Isomorphism, m << "," << n << ": " << pp.iso.detail);
      PushoutProduct pj = pushout_product(sphere_inclusion(m), disk_basepoint(n), Flavor::Cartesian);
      CHECK_MESSAGE(pj.iso.verdict == IsoVerdict::Isomorphism, m << ",j" << n << ": " << pj.iso.detail);
    }
  PushoutProduct p11 = pushout_product(sphere_inclusion(1), sphere_inclusion(1), Flavor::Cartesian);
  CHECK_MESSAGE(p11.iso.verdict == IsoVerdict::NotIsomorphism, p11.iso.detail);
}

TEST_CASE("pushout-product with an identity is an isomorphism") {
  for (Flavor fl : {Flavor::Tensor, Flavor::Cartesian}) {
    PushoutProduct pp = pushout_product(sphere_inclusion(2), identity_morphism(D(1)), fl);
    CHECK_MESSAGE(pp.iso.verdict == IsoVerdict::Isomorphism, to_string(fl) << ": " << pp.iso.detail);
  }
}

TEST_CASE("constant homotopy") {
  Morphism f = sphere_inclusion(2);
  J1Homotopy h = constant_homotopy(f);
  Verdict2 v = verify_j1_transformation(f, f, h);
  CHECK_MESSAGE(v.pass, v.summary());
}

TEST_CASE("endpoint mismatch is reported") {
  Morphism f = identity_morphism(D(1));
  J1Homotopy h = constant_homotopy(f);
  Morphism g = compose(to_point(D(1)), point_at(D(1), "0"));
  Verdict2 v = verify_j1_transformation(f, g, h);
  CHECK_FALSE(v.pass);
  CHECK(v.decided);
  REQUIRE_FALSE(v.failures.empty());
}

TEST_CASE("identity strong retract") {
  StrongRetract d;
  d.i = identity_morphism(D(2));
  d.r = identity_morphism(D(2));
  d.h = constant_homotopy(d.i);
  CHECK(verify_strong_retract(d).pass);
}

TEST_CASE("non-retraction is rejected") {
  StrongRetract d = straight_line_retract(1);
  d.r.object_map["0"] = "*";
  Morphism bad = point_at(D(1), "1");
  d.i = bad;
  CHECK_FALSE(verify_strong_retract(d).pass);
}

TEST_CASE("straight-line retract of j_1 and j_0") {
  CHECK(verify_strong_retract(straight_line_retract(0)).pass);
  Verdict2 v = verify_strong_retract(straight_line_retract(1));
  CHECK_MESSAGE(v.pass, v.summary());
}

TEST_CASE("straight-line retract of j_n, n >= 2, fails on the action relation") {
  // With the componentwise product, (0,b)^[(l,0)] = (1,b) in J1 x D^n, so a
  // transformation from i r to id must send b to an identity.
  for (int n = 2; n <= 5; ++n) {
    Verdict2 v = verify_strong_retract(straight_line_retract(n));
    CHECK_FALSE(v.pass);
    CHECK(v.decided);
  }
}

TEST_CASE("transport of the j_1 retract along pushouts") {
  StrongRetract d = straight_line_retract(1);
  Morphism f = point_at(S(0), "0");
  TransportResult t = transport_retract_along_pushout(d, f);
  CHECK_MESSAGE(t.verdict.pass, t.verdict.summary());
  Morphism id = identity_morphism(point());
  TransportResult same = transport_retract_along_pushout(d, id);
  CHECK(same.verdict.pass);
  CHECK(same.data.i.target->counts_by_degree() == D(1)->counts_by_degree());
}

TEST_CASE("homotopic maps agree on homotopy groups") {
  StrongRetract d = straight_line_retract(1);
  Morphism ir = compose(d.r, d.i);
  InvarianceReport r = check_homotopy_invariance(ir, identity_morphism(D(1)), d.h);
  CHECK(r.pass);
  Morphism f = sphere_inclusion(3);
  InvarianceReport c = check_homotopy_invariance(f, f, constant_homotopy(f));
  CHECK(c.pass);
}
