#pragma once

// Tensor and cartesian products of crossed complexes, the collapse map
// between them, pushout-products, and J1-transformations.
//
// Tensor generators are named (a*b) and their objects (x*y); product
// generators (a,b) and objects (x,y).

#include <functional>
#include <string>
#include <vector>

#include "crx/crossed_complex.hpp"

namespace crx {

enum class Flavor { Tensor, Cartesian };
std::string to_string(Flavor f);

// Generator data needed to expand tensors of words.
struct CellInfo {
  std::string source;  // degree 1
  std::string target;  // degree 1
  std::string base;    // degree >= 2
};

// Everything the tensor expansion needs to know about the two factors and
// how to name simple tensors in the target.
struct TensorContext {
  std::function<CellInfo(const std::string& name, int degree)> left;
  std::function<CellInfo(const std::string& name, int degree)> right;
  std::function<std::string(const std::string& x, const std::string& y)> object_name;
  // names the simple tensor a (degree m) with b (degree n); objects have degree 0
  std::function<std::string(const std::string& a, int m, const std::string& b, int n)> cell_name;
};

TensorContext tensor_context(const Presentation& c, const Presentation& d);

// u (x) v for elements of degree m and n, as an element of degree m + n.
CrxWord tensor_element(const TensorContext& ctx, const CrxWord& u, const CrxWord& v);

// Boundary of the simple tensor a (x) b of two generators (or objects) of
// total degree >= 2, given their boundaries.
CrxWord tensor_generator_boundary(const TensorContext& ctx, const std::string& a, int m, const CrxWord* da,
                                  const std::string& b, int n, const CrxWord* db);

std::string tensor_object_name(const std::string& x, const std::string& y);
std::string tensor_cell_name(const std::string& a, const std::string& b);
std::string product_object_name(const std::string& x, const std::string& y);
std::string product_cell_name(const std::string& a, const std::string& b);

PresentationPtr tensor(const PresentationPtr& c, const PresentationPtr& d);

struct ProductResult {
  PresentationPtr object;
  Morphism proj_left;
  Morphism proj_right;
};

ProductResult cartesian(const PresentationPtr& c, const PresentationPtr& d);

// (u, y) and (x, v) in a cartesian product; for two paths (u, v) is
// (u, su) . (tu, v).
CrxWord product_left(const Presentation& prod, const CrxWord& u, const std::string& y);
CrxWord product_right(const Presentation& prod, const std::string& x, const CrxWord& v);
PathWord product_path(const Presentation& prod, const PathWord& u, const PathWord& v);

// C (x) D -> C x D.
Morphism collapse(const PresentationPtr& c, const PresentationPtr& d);
Morphism collapse_between(const PresentationPtr& tensor_cd, const PresentationPtr& product_cd, const Presentation& c,
                          const Presentation& d);

// Generators of the kernel of collapse in degree n.
std::vector<CrxWord> kernel_generators(const PresentationPtr& c, const PresentationPtr& d, int n);

// f (x) g or f x g between the corresponding products.
Morphism product_of_morphisms(const Morphism& f, const Morphism& g, Flavor flavor, const PresentationPtr& source,
                              const PresentationPtr& target);
PresentationPtr product_object(const PresentationPtr& c, const PresentationPtr& d, Flavor flavor);

enum class IsoVerdict { Isomorphism, NotIsomorphism, Undecided };
std::string to_string(IsoVerdict v);

struct IsoReport {
  IsoVerdict verdict = IsoVerdict::Undecided;
  std::string detail;
  std::optional<Morphism> inverse;
};

// Decides whether f is an isomorphism: a candidate inverse is assembled from
// generator preimages and checked, and invariants (pi_0, pi_1^ab, pi_n) are
// compared to refute.
IsoReport check_isomorphism(const Morphism& f);

struct PushoutProduct {
  PushoutResult corner_source;  // B*K +_{A*K} A*L
  Morphism corner;              // to B*L
  IsoReport iso;
};

// i: A -> B, j: K -> L.
PushoutProduct pushout_product(const Morphism& i, const Morphism& j, Flavor flavor);

// ---------------------------------------------------------------------------
// J1-transformations

struct J1Homotopy {
  PresentationPtr domain;    // X
  PresentationPtr codomain;  // Y
  ProductResult cylinder;    // J1 x X
  Morphism carrier;          // J1 x X -> Y
};

// J1 x X and the end inclusions e (0 or 1) x id: X -> J1 x X.
ProductResult j1_cylinder(const PresentationPtr& x);
Morphism j1_end(const ProductResult& cylinder, const PresentationPtr& x, int end);
// J1 x f : J1 x X -> J1 x X'
Morphism j1_times(const ProductResult& cx, const ProductResult& cx2, const Morphism& f);

struct Verdict2 {
  bool pass = false;
  bool decided = true;
  std::vector<std::string> failures;
  std::vector<std::string> obligations;
  std::string summary() const;
};

// The constant homotopy f . pi : J1 x X -> X -> Y.
J1Homotopy constant_homotopy(const Morphism& f);

Verdict2 verify_j1_transformation(const Morphism& f, const Morphism& g, const J1Homotopy& h);

struct StrongRetract {
  Morphism i;  // X -> Y
  Morphism r;  // Y -> X
  J1Homotopy h;
};

Verdict2 verify_strong_retract(const StrongRetract& data);

// The unique retraction of j_n : . -> D^n and the straight-line homotopy
// from i r to the identity: (0, c) -> i r (c), (1, c) -> c, (l, x) -> the
// identity at the basepoint for n >= 2 and (l, 1) -> l for n = 1.
StrongRetract straight_line_retract(int n);

struct TransportResult {
  PushoutResult pushout;  // Y' with i': X' -> Y' and g: Y -> Y'
  StrongRetract data;     // (i', r', h')
  Verdict2 verdict;
};

TransportResult transport_retract_along_pushout(const StrongRetract& data, const Morphism& f);

}  // namespace crx
