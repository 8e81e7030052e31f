#include <doctest.h>

#include <functional>
#include <random>

#include "crx/dga.hpp"
#include "crx/errors.hpp"
#include "crx/strictify.hpp"
#include "support.hpp"

using namespace crx;
using namespace crx_test;

namespace {

// Ordered sequences of parts summing to n.
long compositions(int n, const std::vector<int>& parts) {
  if (n == 0) return 1;
  long c = 0;
  for (int p : parts)
    if (p <= n) c += compositions(n - p, parts);
  return c;
}

AbelianGroup z() { return AbelianGroup{1, {}}; }
AbelianGroup zero() { return AbelianGroup{}; }

FreeDga algebra(const std::vector<DgaGenerator>& gens, const std::vector<std::string>& diffs) {
  FreeDga a;
  for (const auto& g : gens) a.add_generator(g.name, g.degree);
  std::vector<DgaElement> ds;
  for (const auto& d : diffs) ds.push_back(d.empty() ? DgaElement{} : a.parse(d));
  return tensor_algebra(gens, ds);
}

bool same_dga(const FreeDga& a, const FreeDga& b) {
  if (a.generators().size() != b.generators().size()) return false;
  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    if (a.generators()[i].name != b.generators()[i].name) return false;
    if (a.generators()[i].degree != b.generators()[i].degree) return false;
    if (a.to_string(a.diff(i)) != b.to_string(b.diff(i))) return false;
  }
  return true;
}

EnrichedPtr one_object(const std::vector<EnrichedCell>& cells) {
  auto c = std::make_shared<EnrichedPresentation>();
  c->name = "E";
  c->add_object("*");
  for (const auto& cell : cells) c->add_cell(cell);
  return c;
}

}  // namespace

TEST_CASE("chains of small simplicial sets") {
  GradedChain s2 = chains(simplicial_sphere(2));
  CHECK(s2.ranks() == std::vector<std::size_t>{1, 0, 1});
  CHECK(s2.differential(2).is_zero());

  GradedChain d2 = chains(simplicial_simplex(2));
  CHECK(d2.ranks() == std::vector<std::size_t>{3, 3, 1});
  CHECK(d2.square_zero());
  // a simplex is contractible
  CHECK(d2.homology(0) == z());
  CHECK(d2.homology(1) == zero());
  CHECK(d2.homology(2) == zero());

  CHECK(chains(simplicial_point()).ranks() == std::vector<std::size_t>{1});
  CHECK(chains(simplicial_point(), true).ranks() == std::vector<std::size_t>{0});

  GradedChain m = chains(load_ssx(corpus("moore2.ssx")), true);
  CHECK(m.homology(2) == AbelianGroup{0, {2}});
  CHECK(m.homology(3) == zero());
}

TEST_CASE("faces of degenerate simplices follow the simplicial identities") {
  for (int n = 1; n <= 5; ++n) {
    SimplicialSetFinite x = simplicial_simplex(n);
    CHECK_NOTHROW(x.check());
    // d_i s_i y = y = d_{i+1} s_i y
    for (const auto& s : x.simplices(n - 1))
      for (int i = 0; i < n; ++i) {
        SimplexRef y{s, {}};
        CHECK(x.face(degenerate(y, i), i) == y);
        CHECK(x.face(degenerate(y, i), i + 1) == y);
      }
  }
  // s_i s_j = s_{j+1} s_i for i <= j
  SimplexRef v{"v", {}};
  CHECK(degenerate(degenerate(v, 0), 0) == degenerate(degenerate(v, 0), 1));
  CHECK(degenerate(degenerate(v, 0), 0).degeneracies == std::vector<int>{1, 0});
}

TEST_CASE("a simplicial identity violation is rejected") {
  SimplicialSetFinite x;
  x.name = "bad";
  x.add_simplex("a", 0, {});
  x.add_simplex("b", 0, {});
  x.add_simplex("e", 1, {{"a", {}}, {"b", {}}});
  x.add_simplex("f", 1, {{"b", {}}, {"a", {}}});
  x.add_simplex("t", 2, {{"e", {}}, {"e", {}}, {"f", {}}});
  CHECK_THROWS_AS(x.check(), DomainError);
}

TEST_CASE("tensor algebra bases count ordered words") {
  FreeDga tx = algebra({{"x", 2}}, {""});
  for (int d = 0; d <= 12; ++d) CHECK(truncated_basis(tx, d).size() == (d % 2 == 0 ? 1u : 0u));
  CHECK(tx.word_name(truncated_basis(tx, 6)[0]) == "x*x*x");

  FreeDga none = algebra({}, {});
  GradedChain c = chain_complex(none, 4);
  CHECK(c.ranks() == std::vector<std::size_t>{1, 0, 0, 0, 0});

  FreeDga xy = algebra({{"x", 2}, {"y", 3}}, {"", ""});
  auto b5 = truncated_basis(xy, 5);
  REQUIRE(b5.size() == 2);
  CHECK(xy.word_name(b5[0]) == "x*y");
  CHECK(xy.word_name(b5[1]) == "y*x");
  for (int d = 0; d <= 14; ++d) CHECK(static_cast<long>(truncated_basis(xy, d).size()) == compositions(d, {2, 3}));

  CHECK_THROWS_AS(algebra({{"x", 1}}, {""}), DomainError);
}

TEST_CASE("Leibniz rule and d^2 = 0") {
  CHECK_THROWS_AS(algebra({{"x", 2}, {"y", 3}, {"z", 4}}, {"", "x", "y"}), DomainError);

  FreeDga a = algebra({{"x", 2}, {"y", 3}, {"z", 6}}, {"", "x", "x*y - y*x"});
  // d(y*y) = x*y - y*x, the sign coming from |y| = 3
  CHECK(a.to_string(a.differential(a.parse("y*y"))) == "x*y - y*x");
  CHECK(a.to_string(a.differential(a.parse("y*x"))) == "x*x");
  CHECK(chain_complex(a, 14).square_zero());
  CHECK(chain_complex(a, 14, true).square_zero());

  // d y = p x and d z = q (x*y - y*x) for random p, q
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    int p = coef(rng), q = coef(rng);
    // d(x*y) = p x*x, d(y*x) = p x*x, so q (x*y - y*x) is a cycle
    std::string dz = q == 0 ? "" : std::to_string(q) + " x*y - " + std::to_string(q) + " y*x";
    if (q < 0) dz = std::to_string(-q) + " y*x - " + std::to_string(-q) + " x*y";
    std::string dy = p == 0 ? "" : (p < 0 ? "-" : "") + std::to_string(std::abs(p)) + " x";
    FreeDga r = algebra({{"x", 2}, {"y", 3}, {"z", 6}}, {"", dy, dz});
    CAPTURE(dy);
    CAPTURE(dz);
    CHECK(chain_complex(r, 12).square_zero());
  }
}

TEST_CASE("tensor products of chain complexes") {
  GradedChain s2 = chains(simplicial_sphere(2), true);
  GradedChain m = chains(load_ssx(corpus("moore2.ssx")), true);
  GradedChain t = tensor_product(s2, m, 6);
  CHECK(t.square_zero());
  CHECK(t.ranks() == std::vector<std::size_t>{0, 0, 0, 0, 1, 1, 0});
  CHECK(t.homology(4) == AbelianGroup{0, {2}});
  GradedChain mm = tensor_product(m, m, 7);
  CHECK(mm.square_zero());
  // Tor(Z/2, Z/2) shifts up by one
  CHECK(mm.homology(4) == AbelianGroup{0, {2}});
  CHECK(mm.homology(5) == AbelianGroup{0, {2}});
}

TEST_CASE("cofibrant replacement of Z<x>/x^2") {
  PresentedDga a = load_dga(corpus("x2.dga"));
  GradedChain qa = chain_complex(a, 8);
  CHECK(qa.ranks() == std::vector<std::size_t>{1, 0, 1, 0, 0, 0, 0, 0, 0});

  CofibrantReplacement r = cofibrant_replacement(a, 8);
  const FreeDga& t = r.cofibrant;
  std::vector<int> degrees;
  for (const auto& g : t.generators()) degrees.push_back(g.degree);
  CHECK(degrees == std::vector<int>{2, 5, 8});
  CHECK(r.quasi_isomorphism);
  REQUIRE(t.generators().size() == 3);
  CHECK(t.generators()[0].name == "x");
  CHECK(t.to_string(t.diff(1)) == "x*x");
  CHECK(t.to_string(t.diff(2)) == "x*e5 - e5*x");
  // homology of A computed by hand: Z in degrees 0 and 2
  for (const auto& d : r.degrees) {
    CAPTURE(d.degree);
    CHECK(d.target == (d.degree == 0 || d.degree == 2 ? z() : zero()));
    CHECK(d.source == d.target);
    CHECK(d.cone_acyclic);
  }
  CHECK(chain_complex(t, 10).square_zero());
}

TEST_CASE("the first attached cell of Z<x>/x^2 sits in degree 2n+1") {
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    PresentedDga a;
    a.free.name = "A";
    a.free.add_generator("x", n);
    a.relations.push_back(a.free.parse("x*x"));
    CofibrantReplacement r = cofibrant_replacement(a, 2 * n + 4);
    CHECK(r.quasi_isomorphism);
    REQUIRE(r.cofibrant.generators().size() >= 2);
    CHECK(r.cofibrant.generators()[1].degree == 2 * n + 1);
    GradedChain q = indecomposables(r.cofibrant, 2 * n + 4);
    for (int m = 0; m < 2 * n + 4; ++m) {
      CAPTURE(m);
      bool expect = m == n || m == 2 * n + 1 || m == 3 * n + 2;
      CHECK(!q.homology(m).is_trivial() == expect);
    }
    CHECK(q.homology(2 * n + 1) == z());
  }
}

TEST_CASE("cofibrant replacement of a free algebra is itself") {
  PresentedDga a;
  a.free = algebra({{"x", 2}, {"y", 3}}, {"", ""});
  CofibrantReplacement r = cofibrant_replacement(a, 8);
  CHECK(same_dga(r.cofibrant, a.free));
  CHECK(r.quasi_isomorphism);

  PresentedDga b = load_dga(corpus("xy.dga"));
  CofibrantReplacement rb = cofibrant_replacement(b, 9);
  CHECK(same_dga(rb.cofibrant, b.free));
  CHECK(rb.quasi_isomorphism);
}

TEST_CASE("cofibrant replacement of a quotient with two generators") {
  // x(2), y(2), xy = yx: the commutative polynomial ring in two variables
  PresentedDga a;
  a.free.name = "Zxy";
  a.free.add_generator("x", 2);
  a.free.add_generator("y", 2);
  a.relations.push_back(a.free.parse("x*y - y*x"));
  CHECK(chain_complex(a, 8).ranks() == std::vector<std::size_t>{1, 0, 2, 0, 3, 0, 4, 0, 5});
  CofibrantReplacement r = cofibrant_replacement(a, 8);
  CHECK(r.quasi_isomorphism);
  std::vector<int> degrees;
  for (const auto& g : r.cofibrant.generators()) degrees.push_back(g.degree);
  CHECK(degrees == std::vector<int>{2, 2, 5});
}

TEST_CASE("torsion in a presented quotient is rejected") {
  PresentedDga a;
  a.free.add_generator("x", 2);
  a.relations.push_back(a.free.parse("2 x*x"));
  CHECK_THROWS_AS(chain_complex(a, 4), DomainError);
}

TEST_CASE("indecomposables") {
  FreeDga tx = algebra({{"x", 2}}, {""});
  GradedChain q = indecomposables(tx);
  CHECK(q.ranks() == std::vector<std::size_t>{0, 0, 1});
  CHECK(q.differential(2).is_zero());

  FreeDga xy = load_dga(corpus("xy.dga")).free;
  GradedChain qy = indecomposables(xy);
  CHECK(qy.ranks() == std::vector<std::size_t>{0, 0, 1, 0, 0, 1});
  for (int n = 0; n <= 5; ++n) CHECK(qy.differential(n).is_zero());
  CHECK(qy.homology(2) == z());
  CHECK(qy.homology(5) == z());

  FreeDga lin = algebra({{"x", 2}, {"y", 3}}, {"", "2 x"});
  CHECK(indecomposables(lin).homology(2) == AbelianGroup{0, {2}});
}

TEST_CASE("tower of T(x)") {
  FreeDga tx = algebra({{"x", 2}}, {""});
  auto st = tower(tx, 4, 12);
  REQUIRE(st.size() == 5);
  for (int n = 0; n <= 12; ++n) CHECK(st[0].chain.rank(n) == 0);
  CHECK(st[1].chain.ranks() == std::vector<std::size_t>{0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(st[2].chain.rank(4) == 1);
  CHECK(st[2].fiber.basis[4] == std::vector<std::string>{"x*x"});
  for (const auto& s : st) {
    CAPTURE(s.k);
    CHECK(s.fiber_is_length_k);
    CHECK(s.fiber_is_tensor_power);
    CHECK(s.iso_below);
    CHECK(s.chain.square_zero());
  }
}

TEST_CASE("tower of a two-generator algebra with a quadratic differential") {
  FreeDga a = algebra({{"x", 2}, {"y", 3}, {"z", 6}}, {"", "x", "x*y - y*x"});
  auto st = tower(a, 4, 12);
  for (const auto& s : st) {
    CAPTURE(s.k);
    CHECK(s.fiber_is_length_k);
    CHECK(s.fiber_is_tensor_power);
    CHECK(s.iso_below);
    CHECK(s.chain.square_zero());
    // the fiber basis is the length-k words, degree by degree
    for (int n = 0; n <= 12; ++n) {
      long words = 0;
      for (const auto& w : truncated_basis(a, n))
        if (static_cast<int>(w.size()) == s.k && s.k > 0) ++words;
      CHECK(static_cast<long>(s.fiber.rank(n)) == words);
    }
  }
}

TEST_CASE("James comparison") {
  JamesReport s2 = james_compare(load_ssx(corpus("s2.ssx")), 8);
  CHECK(s2.all_equal);
  for (const auto& d : s2.degrees) {
    CAPTURE(d.degree);
    CHECK(d.algebra == (d.degree % 2 == 0 ? z() : zero()));
  }
  JamesReport pt = james_compare(simplicial_point(), 4);
  CHECK(pt.all_equal);
  CHECK(pt.degrees[0].algebra == z());
  for (int m = 1; m <= 4; ++m) CHECK(pt.degrees[m].algebra == zero());

  JamesReport w = james_compare(load_ssx(corpus("s2vs3.ssx")), 6);
  CHECK(w.all_equal);
  for (const auto& d : w.degrees) {
    CAPTURE(d.degree);
    CHECK(d.algebra.torsion.empty());
    CHECK(static_cast<long>(d.algebra.free_rank) == compositions(d.degree, {2, 3}));
  }
  CHECK(w.degrees[5].algebra.free_rank == 2);

  // wedge built in code agrees with the file
  CHECK(emit_ssx(wedge(simplicial_sphere(2), simplicial_sphere(3))).find("x3 dim 3") != std::string::npos);

  // nonzero d with torsion: the two sides are the same complex, split by length
  JamesReport m = james_compare(load_ssx(corpus("moore2.ssx")), 8);
  CHECK(m.betti_agrees);
  CHECK(m.all_equal);
  CHECK(m.degrees[2].algebra == AbelianGroup{0, {2}});

  CHECK_THROWS_AS(james_compare(simplicial_simplex(2), 4), DomainError);
}

TEST_CASE("one-reduced categories as algebras") {
  auto one = one_object({{"x", 2, "*", "*", "1_id_*"}});
  FreeDga a = from_one_reduced_category(one);
  CHECK(same_dga(a, algebra({{"x", 2}}, {""})));

  auto e = one_object({{"x", 2, "*", "*", "1_id_*"}, {"y", 5, "*", "*", "x.x"}});
  FreeDga b = from_one_reduced_category(e);
  CHECK(b.to_string(b.diff(1)) == "x*x");

  CHECK_THROWS_AS(from_one_reduced_category(standard_category(StandardCategory::P11, Flavor::Tensor)), DomainError);
  auto low = one_object({{"f", 1, "*", "*", "1_id_* -> 1_id_*"}});
  CHECK_THROWS_WITH_AS(from_one_reduced_category(low), doctest::Contains("f"), DomainError);
}

TEST_CASE("indecomposables agree with the strictified hom") {
  std::vector<EnrichedPtr> cats{
      one_object({{"x", 2, "*", "*", "1_id_*"}}),
      one_object({{"x", 2, "*", "*", "1_id_*"}, {"y", 5, "*", "*", "x.x"}}),
      one_object({{"x", 2, "*", "*", "1_id_*"}, {"w", 3, "*", "*", "x^2"}}),
      one_object({{"x", 2, "*", "*", "1_id_*"}, {"z", 3, "*", "*", "1_id_*"}, {"y", 6, "*", "*", "x.z"}}),
  };
  for (const auto& c : cats) {
    CAPTURE(c->cells.back().name);
    FreeDga a = from_one_reduced_category(c);
    GradedChain lhs = indecomposables(a);
    GradedChain rhs = chain_of_one_reduced(*realize_hom(stglo(c).output, "*", "*"));
    CHECK(same_chain(lhs, rhs));
    CHECK(chain_complex(a, 10).square_zero());
  }
}

TEST_CASE(".dga and .ssx round trips") {
  for (const char* f : {"x2.dga", "x3.dga", "xy.dga"}) {
    CAPTURE(f);
    PresentedDga a = load_dga(corpus(f));
    std::string text = emit_dga(a);
    PresentedDga b = parse_dga(text);
    CHECK(emit_dga(b) == text);
    CHECK(same_dga(a.free, b.free));
    CHECK(a.relations == b.relations);
  }
  for (const char* f : {"s2.ssx", "s2vs3.ssx", "moore2.ssx"}) {
    CAPTURE(f);
    SimplicialSetFinite x = load_ssx(corpus(f));
    std::string text = emit_ssx(x);
    CHECK(emit_ssx(parse_ssx(text)) == text);
    CHECK(same_chain(chains(x), chains(parse_ssx(text))));
  }
  SimplicialSetFinite d3 = simplicial_simplex(3);
  CHECK(emit_ssx(parse_ssx(emit_ssx(d3))) == emit_ssx(d3));
  SimplicialSetFinite s4 = simplicial_sphere(4);
  CHECK(emit_ssx(parse_ssx(emit_ssx(s4))) == emit_ssx(s4));
}

TEST_CASE("format errors carry a line") {
  CHECK_THROWS_WITH_AS(parse_dga("dga A\ngen x deg two\n"), doctest::Contains(":2:"), ParseError);
  CHECK_THROWS_WITH_AS(parse_dga("dga A\ngen x deg 2\nfoo\n"), doctest::Contains(":3:"), ParseError);
  CHECK_THROWS_AS(parse_dga("dga A\ngen x deg 2\ngen y deg 3\ndiff y = x*x\n"), ParseError);
  CHECK_THROWS_WITH_AS(parse_ssx("ssx X\nsimplex v dim 0\nsimplex e dim 1 faces v w\n"), doctest::Contains(":3:"),
                       ParseError);
  CHECK_THROWS_AS(parse_ssx("ssx X\nsimplex v dim 0\nsimplex e dim 2 faces v v v\n"), ParseError);
}
