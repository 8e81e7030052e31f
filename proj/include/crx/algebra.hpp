#pragma once

// Exact integer linear algebra: dense matrices over arbitrary-precision
// integers, Smith normal form, kernels, lattice membership and cokernels.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace crx {

using Int = mpz_class;
using IntVector = std::vector<Int>;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  bool operator==(const IntMatrix& rhs) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row a += k * row b
  void add_row_multiple(std::size_t a, std::size_t b, const Int& k);
  void add_col_multiple(std::size_t a, std::size_t b, const Int& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

// U * M * V == D, D diagonal with d_i | d_{i+1}, d_i >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const;
  IntVector diagonal() const;
};

// Pivot rule: nonzero entry of least absolute value, ties broken by the
// lexicographically smallest (row, col).
SmithDecomposition smith_normal_form(const IntMatrix& m);

// Finitely generated abelian group Z^free_rank + sum Z/torsion_i, torsion_i > 1
// in divisibility order.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  bool operator==(const AbelianGroup&) const = default;
};

// coker(M : Z^cols -> Z^rows).
AbelianGroup cokernel_structure(const IntMatrix& m);

// Basis of the integer kernel of M, as columns.
std::vector<IntVector> integer_kernel(const IntMatrix& m);

// x with M x = b if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);

// A lattice L in Z^n spanned by given generators, with a canonical
// representative for each coset of Z^n / L.
class Lattice {
public:
  Lattice() = default;
  Lattice(std::size_t dim, std::vector<IntVector> generators);

  std::size_t dim() const { return dim_; }
  bool contains(const IntVector& v) const;
  // Canonical coordinates of v + L (same output for equal cosets).
  IntVector reduce(const IntVector& v) const;
  // Same, for a vector already in the canonical coordinates returned by reduce.
  IntVector reduce_coordinates(IntVector c) const;
  AbelianGroup quotient() const;

private:
  std::size_t dim_ = 0;
  SmithDecomposition snf_;
  std::size_t rank_ = 0;
};

// Homology of  A --in--> B --out--> C  in the middle, where each term may be a
// quotient Z^k / R: rel_mid spans the relations of B, rel_low those of C.
// H = {x : out x in R_C} / (R_B + im in).
AbelianGroup subquotient_homology(const IntMatrix& in, const IntMatrix& out,
                                  const std::vector<IntVector>& rel_mid,
                                  const std::vector<IntVector>& rel_low);

// Decides whether the map Z^a/SA -> Z^b/SB induced by phi is surjective.
bool induced_map_surjective(const IntMatrix& phi, const std::vector<IntVector>& sb);

Int gcd_of(const std::vector<Int>& xs);

}  // namespace crx
