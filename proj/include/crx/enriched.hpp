#pragma once

// Categories enriched in crossed complexes, over the tensor or the cartesian
// product.
//
// A cellular presentation lists generating cells; a cell of degree d lives
// in hom(x, y) and its boundary is a word in that hom. Hom complexes are
// generated by composites of cells: the composite c1 ... ck (diagrammatic
// order) is named "c1.c2...ck", identities id_x are dropped, and the
// identity of x is the object id_x of hom(x, x). Over the tensor product a
// composite of several positive-degree cells is a new free generator; over
// the cartesian product only whiskered cells generate and the product
// relations are imposed.
//
// A structured presentation instead declares each hom as a point, a
// contractible groupoid on Z, the group Z or Z/m as a one-object groupoid,
// or empty. Composition adds integer labels. Homs are realized as finite
// windows, which is exact for the questions asked of them here.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "crx/crossed_complex.hpp"
#include "crx/invariants.hpp"
#include "crx/monoidal.hpp"

namespace crx {

enum class HomKind { Empty, Point, Contractible, Group };

struct StructuredHom {
  HomKind kind = HomKind::Empty;
  std::string point;  // Point
  long modulus = 0;   // Group: 0 for Z, m for Z/m

  std::string to_string() const;  // empty, point(f), contractible(Z), group(Z), group(Z/3)
  bool operator==(const StructuredHom&) const = default;
};

StructuredHom parse_structured(const std::string& text);

struct EnrichedCell {
  std::string name;
  int degree = 0;
  std::string x, y;      // the cell lives in hom(x, y)
  std::string boundary;  // degree 1: "<src> -> <tgt>"; degree >= 2: a word

  bool operator==(const EnrichedCell&) const = default;
};

// lhs = rhs in hom(x, y), imposed on all whiskerings by degree-0 composites.
struct EnrichedRelation {
  std::string x, y;
  int degree = 1;
  std::string lhs, rhs;

  bool operator==(const EnrichedRelation&) const = default;
};

class EnrichedPresentation {
public:
  std::string name;
  Flavor flavor = Flavor::Tensor;
  int bound = default_bound();
  std::vector<std::string> objects;
  std::vector<EnrichedCell> cells;
  std::vector<EnrichedRelation> relations;
  std::map<std::pair<std::string, std::string>, StructuredHom> structured;

  void add_object(const std::string& x);
  void add_cell(EnrichedCell c);
  void set_hom(const std::string& x, const std::string& y, StructuredHom h);

  bool is_structured() const { return !structured.empty(); }
  bool has_object(const std::string& x) const;
  const EnrichedCell* find_cell(const std::string& name) const;
  const EnrichedCell& cell(const std::string& name) const;
  StructuredHom hom_kind(const std::string& x, const std::string& y) const;
  int max_degree() const;

  bool operator==(const EnrichedPresentation&) const = default;
};

using EnrichedPtr = std::shared_ptr<const EnrichedPresentation>;

// ---------------------------------------------------------------------------
// Realization of hom complexes

struct RealizeOptions {
  int word_bound = 6;     // composites of at most this many cells
  int degree_bound = -1;  // -1: the category's bound
  std::size_t max_generators = 20000;
  int window = 8;  // contractible(Z) homs are realized on [-window, window]

  auto operator<=>(const RealizeOptions&) const = default;
  std::string label() const;
};

struct HomRealization {
  PresentationPtr complex;
  HomKind kind = HomKind::Empty;  // structured homs only
  StructuredHom structured;
  bool truncated = false;  // some composite was cut off by a bound
};

class EnrichedCategory {
public:
  EnrichedCategory(EnrichedPtr cat, RealizeOptions opts);

  const EnrichedPresentation& data() const { return *cat_; }
  const EnrichedPtr& ptr() const { return cat_; }
  const RealizeOptions& options() const { return opts_; }
  int degree_bound() const { return degree_bound_; }

  const HomRealization& hom(const std::string& x, const std::string& y) const;
  bool truncated() const { return truncated_; }

  // The unit id_x (or 0 in a structured hom) as an object of hom(x, x).
  CrxWord unit(const std::string& x) const;
  // The generating cell as an element of its hom.
  CrxWord cell(const std::string& name) const;

  // u in hom(x, y) followed by v in hom(y, z). `as` is the flavor in which
  // the composite is read: a tensor composite of two positive-degree
  // elements in a cartesian category is an identity (the collapse).
  CrxWord compose(const std::string& x, const std::string& y, const std::string& z, const CrxWord& u,
                  const CrxWord& v, Flavor as) const;
  CrxWord compose(const std::string& x, const std::string& y, const std::string& z, const CrxWord& u,
                  const CrxWord& v) const {
    return compose(x, y, z, u, v, cat_->flavor);
  }

  // Parses a word of hom(x, y); letters may be composite names and the
  // expression comp(u, v) composes two sub-expressions.
  CrxWord parse(const std::string& x, const std::string& y, int degree, const std::string& text) const;
  std::string parse_object(const std::string& x, const std::string& y, const std::string& text) const;

  // Structured homs: integer label of an object and (source, target,
  // winding) of a path.
  long value_of(const std::string& x, const std::string& y, const std::string& object) const;

private:
  void build_cellular();
  void build_structured();

  EnrichedPtr cat_;
  RealizeOptions opts_;
  int degree_bound_ = 0;
  std::map<std::pair<std::string, std::string>, HomRealization> homs_;
  bool truncated_ = false;
};

using CategoryPtr = std::shared_ptr<const EnrichedCategory>;

// Memoized; the cache never changes results.
CategoryPtr realize(const EnrichedPtr& cat, const RealizeOptions& opts);
// Bounds large enough for every cell boundary of cat.
RealizeOptions options_for(const EnrichedPresentation& cat);

PresentationPtr realize_hom(const EnrichedPtr& cat, const std::string& x, const std::string& y);
PresentationPtr realize_hom(const EnrichedPtr& cat, const std::string& x, const std::string& y,
                            const RealizeOptions& opts);

// Names of composites.
std::string join_names(const std::vector<std::string>& parts);
std::vector<std::string> split_name(const std::string& name);  // "id_x" -> {}
std::size_t name_length(const std::string& name);
// Largest number of cells in any letter or object of w.
std::size_t word_length(const CrxWord& w);

// ---------------------------------------------------------------------------
// Functors

struct EnrichedFunctor {
  std::string name;
  EnrichedPtr source;
  EnrichedPtr target;
  std::map<std::string, std::string> object_map;
  std::map<std::string, CrxWord> cell_map;  // cellular sources; words of the target homs

  const std::string& map_object(const std::string& x) const;
};

EnrichedFunctor identity_functor(const EnrichedPtr& cat);

// Builds a functor from textual cell images, each parsed in the target hom.
EnrichedFunctor functor_from_text(const std::string& name, const EnrichedPtr& source, const EnrichedPtr& target,
                                  const std::map<std::string, std::string>& objects,
                                  const std::vector<std::pair<std::string, std::string>>& images);

// Image of an element of S.hom(x, y) in T.hom(Fx, Fy). Structured sources
// use the canonical maps of their homs: labels are kept, a contractible hom
// covers a group hom, everything maps onto a point.
CrxWord functor_apply(const EnrichedFunctor& f, const EnrichedCategory& s, const EnrichedCategory& t,
                      const std::string& x, const std::string& y, const CrxWord& w);
// The full map of realized homs.
Morphism functor_hom_map(const EnrichedFunctor& f, const EnrichedCategory& s, const EnrichedCategory& t,
                         const std::string& x, const std::string& y);

// Target bounds that hold the images of the source composites.
RealizeOptions target_options(const EnrichedFunctor& f, const RealizeOptions& source);

// Endpoints, basepoints and boundaries of every cell, relations of the
// source, and object map totality.
MorphismReport verify_functor(const EnrichedFunctor& f);

// g after f.
EnrichedFunctor compose_functors(const EnrichedFunctor& f, const EnrichedFunctor& g);

// Agreement on objects and on every cell (structured sources: object maps).
MorphismReport compare_functors(const EnrichedFunctor& f, const EnrichedFunctor& g);

// ---------------------------------------------------------------------------
// Standard categories

enum class StandardCategory { One, I, IStar, ITilde, P11 };

// One: a single object with nothing else. I: f, g, l1, l2. IStar: k, h1, h2.
// ITilde: f, g, k, l1, l2, h1, h2, a, b (tensor only), alpha, beta.
// P11: two composable arrows u0 --l--> u1 in hom(0,1) and v0 --m--> v1 in
// hom(1,2).
EnrichedPtr standard_category(StandardCategory kind, Flavor flavor = Flavor::Tensor);
std::optional<StandardCategory> standard_category_named(const std::string& name);
std::string to_string(StandardCategory kind);

EnrichedFunctor theta(Flavor flavor);               // IStar -> ITilde
EnrichedFunctor interval_inclusion(Flavor flavor);  // I -> ITilde
EnrichedFunctor interval_collapse(Flavor flavor);   // ITilde -> I
EnrichedFunctor point_inclusion(const EnrichedPtr& cat, const std::string& x);  // One -> cat

// Two objects 0, 1 with hom(0,1) = V.
EnrichedPtr suspension(const Presentation& v, Flavor flavor);

// ---------------------------------------------------------------------------
// Homotopy categories

struct HoCategory {
  std::vector<std::string> objects;
  // per hom, one representative object of each component
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> morphisms;
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::size_t>> component_of;
  std::map<std::string, std::size_t> identity;  // component of the unit in hom(x, x)
  std::map<std::tuple<std::string, std::string, std::string, std::size_t, std::size_t>, std::size_t> composition;
  bool decided = true;
  std::vector<std::string> notes;

  std::optional<std::size_t> compose(const std::string& x, const std::string& y, const std::string& z, std::size_t i,
                                     std::size_t j) const;
  bool is_iso(const std::string& x, const std::string& y, std::size_t i) const;
  bool isomorphic(const std::string& x, const std::string& y) const;
  std::size_t size(const std::string& x, const std::string& y) const;
  std::string to_string() const;
};

HoCategory ho_category(const EnrichedPtr& cat);
HoCategory ho_category(const EnrichedPtr& cat, const RealizeOptions& opts);
HoCategory ho_category(const EnrichedCategory& cat);

// Component of Ho(F) applied to the i-th morphism class x -> y.
std::optional<std::size_t> ho_map(const EnrichedFunctor& f, const EnrichedCategory& s, const EnrichedCategory& t,
                                  const HoCategory& hs, const HoCategory& ht, const std::string& x,
                                  const std::string& y, std::size_t i);

struct Ho21Result {
  EnrichedPtr category;  // cartesian flavor, homs of degree <= 1
  EnrichedFunctor unit;  // cat -> iota Ho21(cat)
};

Ho21Result ho21(const EnrichedPtr& cat);

// ---------------------------------------------------------------------------
// Diagnostics

struct FibrationDiagnostics {
  Answer local_fibration = Answer::Undecided;
  Answer isofibration = Answer::Undecided;
  Answer acyclic_fibration = Answer::Undecided;
  Answer dk_weak_equivalence = Answer::Undecided;
  Answer local_weak_equivalence = Answer::Undecided;
  std::vector<std::string> notes;
  std::string bounds;
};

FibrationDiagnostics fibration_diagnostics(const EnrichedFunctor& f);

// n-truncated: every hom (n-1)-truncated; n-connected: every hom
// (n-1)-connected. Uses the hom invariants.
TruncationReport truncation_connectivity_cat(const EnrichedPtr& cat, int n);

// ---------------------------------------------------------------------------
// Lifting

// i: A -> B, f: C -> D, top: A -> C, bottom: B -> D.
struct LiftSquare {
  EnrichedFunctor i;
  EnrichedFunctor f;
  EnrichedFunctor top;
  EnrichedFunctor bottom;
};

enum class LiftOutcome { Found, NotFoundWithinBounds, Refuted };
std::string to_string(LiftOutcome o);

struct LiftResult {
  LiftOutcome outcome = LiftOutcome::NotFoundWithinBounds;
  std::optional<EnrichedFunctor> lift;
  std::string obstruction;  // Refuted: the obstruction; otherwise empty
  std::string detail;
  std::size_t explored = 0;
};

struct LiftBounds {
  int path_length = 2;  // paths tried for a degree-1 cell over a hom with nontrivial C_1
  std::size_t max_nodes = 20000;
};

Verdict2 verify_lift(const LiftSquare& sq, const EnrichedFunctor& candidate);
LiftResult search_lift(const LiftSquare& sq, LiftBounds bounds = {});

// The square of i against f built from a map b: B' -> D, where the lower
// left corner B of i is B' itself or collapses onto it. The top map is
// found by lifting the restriction of the square to One -> A.
struct NamedSquare {
  LiftSquare square;
  std::string detail;
};
// against: "theta-tensor", "theta-cartesian", "point-interval"
NamedSquare square_against(const std::string& against, const EnrichedFunctor& f, const EnrichedFunctor& bottom);

}  // namespace crx
