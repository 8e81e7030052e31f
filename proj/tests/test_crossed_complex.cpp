#include "crx/crossed_complex.hpp"
#include "globes.hpp"
#include "mutations.hpp"
#include "crx/errors.hpp"
#include "crx/normalizer.hpp"
#include "doctest.h"

using namespace crx;
using namespace crx_test;

TEST_CASE("paths compose and reduce") {
  PathWord f = PathWord::letter("f", "0", "1");
  PathWord g = PathWord::letter("g", "1", "0");
  CHECK(f.then(g).is_loop());
  CHECK(f.then(f.inverse()).is_identity());
  CHECK_THROWS_AS(f.then(f), CompositionError);
  CHECK(f.then(g).power(-1) == g.inverse().then(f.inverse()));
}

TEST_CASE("standard cells validate") {
  for (int n = 0; n <= 6; ++n) {
    CHECK(validate(*standard(StandardKind::Globe, n)).ok());
    CHECK(validate(*standard(StandardKind::Disk, n)).ok());
    CHECK(validate(*standard(StandardKind::Sphere, n)).ok());
    if (n >= 1) CHECK(verify_morphism(sphere_inclusion(n)).decided());
  }
  auto g3 = standard(StandardKind::Globe, 3);
  CHECK(g3->counts_by_degree() == std::vector<std::size_t>{2, 2, 2, 1});
}

TEST_CASE("equality in a disk") {
  auto d2 = standard(StandardKind::Disk, 2);
  CrxWord b = d2->generator_word("b", 2);
  PathWord a = d2->edge("a");
  CrxWord b_conj = CrxWord::of_higher(b.higher.act(a));
  // a = db acts by conjugation with b, so b^[a] = b
  CHECK(are_equal(*d2, b, b_conj).equal());
  CHECK(are_equal(*d2, b, CrxWord::of_higher(b.higher.power(2))).not_equal());
  CHECK(regime_of(*d2) == Regime::Free);
  CHECK(regime_of(*standard(StandardKind::Sphere, 3)) == Regime::OneReduced);
}

TEST_CASE("Peiffer identity holds in the free crossed module") {
  auto p = std::make_shared<Presentation>("t");
  p->add_object("0");
  p->add_edge("a", "0", "0");
  p->add_cell("u", 2, CrxWord::of_path(p->edge("a")));
  p->add_cell("v", 2, CrxWord::of_path(p->edge("a").then(p->edge("a"))));
  HigherWord u = p->generator_word("u", 2).higher, v = p->generator_word("v", 2).higher;
  // v^-1 u v = u^[dv]
  CrxWord lhs = CrxWord::of_higher(v.inverse().times(u).times(v));
  CrxWord rhs = CrxWord::of_higher(u.act(p->boundary2(v)));
  CHECK(are_equal(*p, lhs, rhs).equal());
  // Pi_1 is trivial here, so the action is trivial on the abelianization
  CHECK(are_equal(*p, CrxWord::of_higher(u), CrxWord::of_higher(u.act(p->edge("a")))).equal());

  Presentation q("rp2");
  q.add_object("0");
  q.add_edge("a", "0", "0");
  q.add_cell("u", 2, CrxWord::of_path(q.edge("a").then(q.edge("a"))));
  HigherWord w = q.generator_word("u", 2).higher;
  // Pi_1 = Z/2 acts freely on the module generated by u
  CHECK(are_equal(q, CrxWord::of_higher(w), CrxWord::of_higher(w.act(q.edge("a")))).not_equal());
  CHECK(are_equal(q, CrxWord::of_higher(w), CrxWord::of_higher(w.act(q.edge("a").power(2)))).equal());
}

TEST_CASE("validator catches boundary problems") {
  Presentation p("bad");
  p.add_object("0");
  p.add_object("1");
  p.add_edge("f", "0", "1");
  p.add_cell("x", 2, "0", CrxWord::of_path(p.edge("f")));
  CHECK(validate(p).axiom_failed(3));

  Presentation q("bad2");
  q.add_object("0");
  q.add_object("1");
  q.add_edge("f", "1", "1");
  q.add_cell("x", 2, "0", CrxWord::of_path(q.edge("f")));
  CHECK(validate(q).axiom_failed(4));
}

TEST_CASE("globe pushouts") {
  for (int n = 1; n <= 6; ++n) {
    auto gprev = standard(StandardKind::Globe, n - 1);
    auto dn = standard(StandardKind::Disk, n);
    Morphism into_globe = point_at(gprev, n == 1 ? "0" : "0");
    Morphism into_disk = disk_basepoint(n);
    into_globe.source = into_disk.source;
    PushoutResult po = pushout(into_globe, into_disk);
    CHECK(validate(*po.object).ok());
    CHECK(po.object->counts_by_degree().size() == static_cast<std::size_t>(n + 1));
  }
}

TEST_CASE("the globe pushout is the next globe") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    GlobeWitness w = globe_witness(n);
    CHECK(verify_morphism(w.to_globe).decided());
    CHECK(verify_morphism(w.from_globe).decided());
    IsoCheck iso = check_inverse_pair(w.to_globe, w.from_globe);
    CHECK_MESSAGE(iso.isomorphic, iso.detail);
    CHECK(iso.decided);
    CHECK(w.po.object->counts_by_degree() == w.globe->counts_by_degree());
  }
}

TEST_CASE("every injected single-axiom violation is detected") {
  std::size_t seen = 0;
  for (const auto& base : mutation_bases()) {
    CAPTURE(base->name);
    REQUIRE(validate(*base).ok());
    for (const auto& m : mutations(*base)) {
      CAPTURE(m.what);
      ValidationReport r = validate(m.p);
      CHECK_MESSAGE(r.axiom_failed(m.axiom), r.to_string());
      ++seen;
    }
  }
  CHECK(seen == 9 * mutation_bases().size());
}
