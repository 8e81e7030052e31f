#pragma once

// Chain complexes and free differential graded algebras over Z, for the
// 1-reduced (2-connected) case: tensor algebras, cofibrant replacement,
// indecomposables, the word-length tower and the James comparison.
//
// Signs: d(ab) = d(a) b + (-1)^|a| a d(b).

#include <map>
#include <string>
#include <vector>

#include "crx/algebra.hpp"
#include "crx/enriched.hpp"

namespace crx {

// ---------------------------------------------------------------------------
// Graded chain complexes

struct GradedChain {
  std::string name;
  std::vector<std::vector<std::string>> basis;  // basis[n], n = 0..top
  std::vector<IntMatrix> d;                     // d[n] : C_n -> C_{n-1}; d[0] has 0 rows

  int top() const { return static_cast<int>(basis.size()) - 1; }
  std::size_t rank(int n) const;
  std::vector<std::size_t> ranks() const;
  // d[n] with the right shape even when n is out of range.
  IntMatrix differential(int n) const;
  bool square_zero() const;
  // ker d_n / im d_{n+1}. The top degree has no incoming boundaries, so
  // callers build one degree more than they ask about.
  AbelianGroup homology(int n) const;

  void add_degree(std::vector<std::string> names, IntMatrix dn);
};

// Tensor product with the Koszul sign; basis names "a|b".
GradedChain tensor_product(const GradedChain& a, const GradedChain& b, int top);
// Z in degree 0 with nothing else.
GradedChain unit_chain();

// ---------------------------------------------------------------------------
// Free DGAs

using DgaWord = std::vector<std::size_t>;  // generator indices; empty = unit
using DgaElement = std::map<DgaWord, Int>;

struct DgaGenerator {
  std::string name;
  int degree = 2;
};

class FreeDga {
public:
  std::string name;

  const std::vector<DgaGenerator>& generators() const { return gens_; }
  const DgaElement& diff(std::size_t g) const { return diffs_[g]; }
  std::size_t find(const std::string& name) const;  // throws UnknownGenerator
  bool has(const std::string& name) const;

  std::size_t add_generator(const std::string& name, int degree);
  // Checks that every word of d has degree |g| - 1.
  void set_diff(std::size_t g, DgaElement d);
  // d(d(g)) = 0 for every generator; throws DomainError.
  void check() const;
  // add_generator, set_diff and the check for the new generator.
  std::size_t attach(const std::string& name, int degree, const DgaElement& d);

  int degree(const DgaWord& w) const;
  std::string word_name(const DgaWord& w) const;  // "x*y", unit "1"
  std::string to_string(const DgaElement& e) const;
  DgaElement parse(const std::string& text) const;

  DgaElement differential(const DgaWord& w) const;
  DgaElement differential(const DgaElement& e) const;

private:
  std::vector<DgaGenerator> gens_;
  std::vector<DgaElement> diffs_;
};

DgaElement multiply(const DgaElement& a, const DgaElement& b);
void add_to(DgaElement& e, const DgaWord& w, const Int& c);
DgaElement scaled(const DgaElement& e, const Int& c);
DgaElement plus(const DgaElement& a, const DgaElement& b);

// Generators of degree >= 2 (or >= 1 with allow_degree_one), d of degree -1
// and d^2 = 0; violations throw DomainError.
FreeDga tensor_algebra(const std::vector<DgaGenerator>& gens, const std::vector<DgaElement>& diffs,
                       bool allow_degree_one = false);

// Words of total degree d, shortest first, then lexicographic.
std::vector<DgaWord> truncated_basis(const FreeDga& a, int degree);

// The underlying chain complex in degrees 0..top. reduced drops the unit.
GradedChain chain_complex(const FreeDga& a, int top, bool reduced = false);

// ---------------------------------------------------------------------------
// Presented DGAs and cofibrant replacement

// free / (two-sided ideal generated by relations); relations are
// homogeneous and d maps the ideal into itself.
struct PresentedDga {
  FreeDga free;
  std::vector<DgaElement> relations;
};

// Degrees 0..top of the quotient. Throws DomainError when a quotient
// degree has torsion.
GradedChain chain_complex(const PresentedDga& a, int top);

struct DegreeComparison {
  int degree = 0;
  AbelianGroup source;
  AbelianGroup target;
  bool cone_acyclic = false;  // H of the mapping cone vanishes here and one degree up
};

struct CofibrantReplacement {
  FreeDga cofibrant;
  std::vector<DgaElement> map;  // per generator, an element of the presented algebra's free part
  std::vector<DegreeComparison> degrees;
  bool quasi_isomorphism = false;  // every degree <= N
};

CofibrantReplacement cofibrant_replacement(const PresentedDga& a, int n);

// ---------------------------------------------------------------------------
// Indecomposables and the tower

// Basis the generators, d the length-1 part of the differential.
GradedChain indecomposables(const FreeDga& t, int top = -1);

struct TowerStage {
  int k = 0;
  GradedChain chain;                   // words of length 1..k
  std::vector<IntMatrix> projection;   // chain -> previous stage, per degree
  GradedChain fiber;                   // kernel of the projection
  bool fiber_is_length_k = false;      // kernel basis = the length-k words
  bool fiber_is_tensor_power = false;  // fiber = indecomposables^{(x)k}
  bool iso_below = false;              // projection iso below degree 2k - 2
};

// Stages 0..k in degrees 0..top (stage 0 is the zero chain).
std::vector<TowerStage> tower(const FreeDga& t, int k, int top);

// ---------------------------------------------------------------------------
// Simplicial sets

// s_{j_1} ... s_{j_m} base with j_1 > ... > j_m (outermost first).
struct SimplexRef {
  std::string base;
  std::vector<int> degeneracies;

  bool degenerate() const { return !degeneracies.empty(); }
  bool operator==(const SimplexRef&) const = default;
  auto operator<=>(const SimplexRef&) const = default;
};

class SimplicialSetFinite {
public:
  std::string name;
  std::string basepoint;  // empty: the first vertex

  void add_simplex(const std::string& name, int dim, std::vector<SimplexRef> faces);

  bool has(const std::string& name) const { return dims_.count(name) > 0; }
  int dimension() const;
  int dim_of(const std::string& name) const;
  int dim_of(const SimplexRef& s) const;
  const std::vector<std::string>& simplices(int dim) const;
  const std::vector<SimplexRef>& faces(const std::string& name) const;
  SimplexRef face(const SimplexRef& s, int i) const;
  std::string point() const;
  bool reduced() const { return simplices(0).size() == 1; }
  bool one_reduced() const { return reduced() && simplices(1).empty(); }

  // Face dimensions and d_i d_j = d_{j-1} d_i for i < j; throws DomainError.
  void check() const;

private:
  std::vector<std::vector<std::string>> by_dim_;
  std::map<std::string, int> dims_;
  std::map<std::string, std::vector<SimplexRef>> faces_;
};

SimplexRef degenerate(const SimplexRef& s, int j);
std::string to_string(const SimplexRef& s);

SimplicialSetFinite simplicial_sphere(int n);  // one vertex, one n-simplex
SimplicialSetFinite simplicial_simplex(int n);
SimplicialSetFinite simplicial_point();
SimplicialSetFinite wedge(const SimplicialSetFinite& a, const SimplicialSetFinite& b);

// Nondegenerate simplices, alternating face sums; reduced divides out the
// basepoint in degree 0.
GradedChain chains(const SimplicialSetFinite& x, bool reduced = false);

// The tensor algebra on the reduced chains of a reduced simplicial set.
FreeDga chain_algebra(const SimplicialSetFinite& x);

struct JamesDegree {
  int degree = 0;
  AbelianGroup algebra;     // H of the tensor algebra
  AbelianGroup tensor_sum;  // sum over k of H of the k-th tensor power
  bool equal = false;
};

struct JamesReport {
  std::vector<JamesDegree> degrees;
  bool all_equal = false;
  bool betti_agrees = false;  // free ranks only: the check that ignores torsion
};

JamesReport james_compare(const SimplicialSetFinite& x, int n);

// ---------------------------------------------------------------------------
// Bridges

// The DGA of a one-object tensor-enriched category whose cells all have
// degree >= 2; d comes from the cell boundaries.
FreeDga from_one_reduced_category(const EnrichedPtr& cat);

// Chain complex of a one-object crossed complex without 1-cells (degrees
// >= 2 abelianized). Relations throw DomainError.
GradedChain chain_of_one_reduced(const Presentation& p);

// Same complexes up to renaming of basis elements in each degree.
bool same_chain(const GradedChain& a, const GradedChain& b);

// ---------------------------------------------------------------------------
// Text formats

// .dga: "dga <name>", "gen <x> deg <n>", "diff <x> = <element>",
// "rel <element> = 0".
PresentedDga parse_dga(const std::string& text, const std::string& filename = "<dga>");
PresentedDga load_dga(const std::string& path);
std::string emit_dga(const PresentedDga& a);

// .ssx: "ssx <name>", "basepoint <v>",
// "simplex <name> dim <d> faces <f0> ... <fd>"; a face is a name,
// degenerate(<vertex>) or s<j>(<face>).
SimplicialSetFinite parse_ssx(const std::string& text, const std::string& filename = "<ssx>");
SimplicialSetFinite load_ssx(const std::string& path);
std::string emit_ssx(const SimplicialSetFinite& x);

}  // namespace crx
