#include <random>

#include "crx/algebra.hpp"
#include "doctest.h"

using namespace crx;

namespace {

IntMatrix make(std::vector<std::vector<long>> rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

// Oracle: the k-th determinantal divisor is the gcd of all k x k minors.
Int det(const IntMatrix& a) {
  std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Int d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = a(r, c);
    Int t = a(0, j) * det(sub);
    d += (j % 2 == 0) ? t : Int(-t);
  }
  return d;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

Int determinantal_divisor(const IntMatrix& a, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(a.rows(), k, 0, cur, rs);
  subsets(a.cols(), k, 0, cur, cs);
  Int g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(r[i], c[j]);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Int(det(sub)).get_mpz_t());
    }
  return g;
}

}  // namespace

TEST_CASE("smith normal form of a small matrix") {
  IntMatrix a = make({{2, 4}, {6, 8}});
  SmithDecomposition s = smith_normal_form(a);
  CHECK(s.diagonal() == std::vector<Int>{2, 4});
  CHECK(s.U * a * s.V == s.D);
  // d1 = gcd of entries, d1 d2 = |det|
  CHECK(determinantal_divisor(a, 1) == 2);
  CHECK(determinantal_divisor(a, 2) == 8);
}

TEST_CASE("cokernel of diag-like matrices") {
  AbelianGroup g = cokernel_structure(make({{2, 4}, {6, 8}}));
  CHECK(g.free_rank == 0);
  CHECK(g.torsion == std::vector<Int>{2, 4});
  AbelianGroup h = cokernel_structure(make({{0, 0}, {0, 3}, {0, 0}}));
  CHECK(h.free_rank == 2);
  CHECK(h.torsion == std::vector<Int>{3});
}

TEST_CASE("random SNF postconditions against determinantal divisors") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> size(1, 5), entry(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix a(static_cast<std::size_t>(size(rng)), static_cast<std::size_t>(size(rng)));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    SmithDecomposition s = smith_normal_form(a);
    REQUIRE(s.U * a * s.V == s.D);
    auto d = s.diagonal();
    Int prod = 1;
    for (std::size_t k = 0; k < std::min(a.rows(), a.cols()); ++k) {
      Int dk = k < d.size() ? d[k] : Int(0);
      prod *= dk;
      CHECK(determinantal_divisor(a, k + 1) == abs(prod));
      if (k + 1 < d.size()) CHECK(d[k + 1] % d[k] == 0);
    }
  }
}

TEST_CASE("lattice membership and canonical cosets") {
  Lattice l(2, {IntVector{2, 0}, IntVector{0, 3}});
  CHECK(l.contains(IntVector{4, -3}));
  CHECK_FALSE(l.contains(IntVector{1, 0}));
  CHECK(l.reduce(IntVector{5, 7}) == l.reduce(IntVector{1, 1}));
  CHECK(l.reduce(IntVector{5, 7}) != l.reduce(IntVector{0, 1}));
  CHECK(l.quotient().torsion == std::vector<Int>{6});
  Lattice empty(3, {});
  CHECK(empty.quotient().free_rank == 3);
}

TEST_CASE("subquotient homology of a chain complex") {
  // Z --2--> Z --0--> Z : homology in the middle is Z/2
  IntMatrix in = make({{2}}), out = make({{0}});
  AbelianGroup h = subquotient_homology(in, out, {}, {});
  CHECK(h.free_rank == 0);
  CHECK(h.torsion == std::vector<Int>{2});
  // with the middle term Z/4 the homology is Z/2 as well
  AbelianGroup h2 = subquotient_homology(in, out, {IntVector{4}}, {});
  CHECK(h2.torsion == std::vector<Int>{2});
}

TEST_CASE("integer kernel and solving") {
  IntMatrix a = make({{1, 2, 3}, {2, 4, 6}});
  auto k = integer_kernel(a);
  CHECK(k.size() == 2);
  for (const auto& v : k) CHECK((a * v) == IntVector{0, 0});
  auto x = solve_integer(make({{2, 0}, {0, 3}}), IntVector{4, 9});
  REQUIRE(x.has_value());
  CHECK(*x == IntVector{2, 3});
  CHECK_FALSE(solve_integer(make({{2}}), IntVector{3}).has_value());
}
