#include <doctest.h>

#include "crx/crossed_complex.hpp"
#include "crx/format.hpp"
#include "crx/invariants.hpp"
#include "crx/monoidal.hpp"

using namespace crx;

namespace {

PresentationPtr D(int n) { return standard(StandardKind::Disk, n); }
PresentationPtr S(int n) { return standard(StandardKind::Sphere, n); }

PresentationPtr parse(const std::string& text) { return std::make_shared<Presentation>(parse_crx(text, "inline")); }

PresentationPtr coproduct(const PresentationPtr& a, const PresentationPtr& b) {
  Morphism f;
  f.source = empty_presentation();
  f.target = a;
  Morphism g;
  g.source = empty_presentation();
  g.target = b;
  return pushout(f, g).object;
}

}  // namespace

TEST_CASE("pi_0") {
  CHECK(pi0(*S(0)).size() == 2);
  CHECK(pi0(*D(1)).size() == 1);
  CHECK(pi0(*tensor(D(1), D(1))).size() == 1);
  CHECK(pi0(*coproduct(D(1), D(2))).size() == 2);
}

TEST_CASE("pi_1") {
  HomotopyGroup z = pi1(*S(1), "0");
  CHECK(z.decided);
  CHECK(z.abelianization.free_rank == 1);
  CHECK_FALSE(z.group_trivial);
  for (int n = 0; n <= 6; ++n) CHECK(pi1(*D(n), D(n)->objects().front()).group_trivial);
  CHECK(pi1(*tensor(D(1), D(1)), "(0*0)").group_trivial);
  auto rp = parse("crx rp\nobjects: 0\ngen a deg 1 : 0 -> 0\ngen b deg 2 @ 0 : a a\n");
  HomotopyGroup h = pi1(*rp, "0");
  CHECK(h.abelianization.torsion.size() == 1);
  CHECK(h.abelianization.torsion[0] == 2);
}

TEST_CASE("pi_n of spheres and disks") {
  for (int k = 2; k <= 6; ++k) {
    auto s = S(k);
    for (int n = 2; n <= 7; ++n) {
      HomotopyGroup h = pi_n(*s, "0", n);
      CHECK(h.decided);
      CHECK(h.abelianization.free_rank == (n == k ? 1u : 0u));
      CHECK(h.abelianization.torsion.empty());
    }
  }
  for (int k = 0; k <= 6; ++k) {
    auto d = D(k);
    for (int n = 1; n <= 7; ++n) CHECK(pi_n(*d, d->objects().front(), n).group_trivial);
  }
  auto t = tensor(D(1), D(1));
  for (int n = 1; n <= 4; ++n) CHECK(pi_n(*t, "(0*0)", n).group_trivial);
}

TEST_CASE("pi_2 with a nontrivial C_1") {
  // two discs on the same loop: a 2-sphere
  auto s = parse("crx two\nobjects: 0\ngen a deg 1 : 0 -> 0\ngen b deg 2 @ 0 : a\ngen c deg 2 @ 0 : a\n");
  HomotopyGroup h = pi_n(*s, "0", 2);
  CHECK(h.decided);
  CHECK(h.abelianization.free_rank == 1);
  // with the loop of order two Pi_1 is not trivial and pi_2 is left open
  auto rp = parse("crx rp\nobjects: 0\ngen a deg 1 : 0 -> 0\ngen b deg 2 @ 0 : a a\n");
  CHECK_FALSE(pi_n(*rp, "0", 2).decided);
  // torsion from a degree-3 cell
  auto m = parse("crx m\nobjects: 0\ngen s deg 2 @ 0 : 1_0\ngen e deg 3 @ 0 : s^3\n");
  HomotopyGroup t = pi_n(*m, "0", 2);
  REQUIRE(t.abelianization.torsion.size() == 1);
  CHECK(t.abelianization.torsion[0] == 3);
  CHECK(t.abelianization.free_rank == 0);
}

TEST_CASE("pi_n of coproducts and products") {
  auto c = coproduct(S(3), S(2));
  for (int n = 2; n <= 4; ++n) {
    HomotopyGroup a = pi_n(*c, "0", n);
    HomotopyGroup b = pi_n(*S(3), "0", n);
    CHECK(a.abelianization == b.abelianization);
  }
  for (int k : {2, 3, 4})
    for (int l : {2, 3, 4}) {
      auto p = cartesian(S(k), S(l)).object;
      for (int n = 2; n <= 5; ++n) {
        std::size_t want = (n == k ? 1u : 0u) + (n == l ? 1u : 0u);
        CHECK(pi_n(*p, "(0,0)", n).abelianization.free_rank == want);
      }
    }
}

TEST_CASE("weak equivalences") {
  CHECK(is_weak_equivalence(collapse(D(1), D(1))).answer == Answer::Yes);
  CHECK(is_weak_equivalence(identity_morphism(S(3))).answer == Answer::Yes);
  // the covering-style map D^1 -> S^1
  Morphism cov;
  cov.source = D(1);
  cov.target = S(1);
  cov.object_map = {{"0", "0"}, {"1", "0"}};
  cov.set("l", 1, S(1)->generator_word("s", 1));
  REQUIRE(verify_morphism(cov).decided());
  WeqReport w = is_weak_equivalence(cov);
  CHECK(w.answer == Answer::No);
  CHECK(w.degree == 1);
  // the basepoint of a disk
  CHECK(is_weak_equivalence(disk_basepoint(3)).answer == Answer::Yes);
  // a sphere inclusion is not
  WeqReport s = is_weak_equivalence(sphere_inclusion(3));
  CHECK(s.answer == Answer::No);
  CHECK(s.degree == 2);
  // composition of Yes maps
  Morphism comp = compose(disk_basepoint(2), identity_morphism(D(2)));
  CHECK(is_weak_equivalence(comp).answer == Answer::Yes);
}

TEST_CASE("truncation and connectivity") {
  auto d = D(1);
  CHECK(truncation_connectivity(*d, 0).truncated == Answer::Yes);
  for (int n = 0; n <= 5; ++n) CHECK(truncation_connectivity(*d, n).connected == Answer::Yes);
  auto s3 = S(3);
  CHECK(s3->max_degree() == 3);
  CHECK(truncation_connectivity(*s3, 3).truncated == Answer::Yes);
  CHECK(truncation_connectivity(*s3, 2).truncated == Answer::No);
  CHECK(truncation_connectivity(*s3, 2).connected == Answer::Yes);
  CHECK(truncation_connectivity(*s3, 3).connected == Answer::No);
  auto loop = S(1);
  REQUIRE(loop->max_degree() == 1);
  CHECK(truncation_connectivity(*loop, 1).truncated == Answer::Yes);
  CHECK(truncation_connectivity(*loop, 0).connected == Answer::Yes);
  CHECK(truncation_connectivity(*loop, 1).connected == Answer::No);
}
