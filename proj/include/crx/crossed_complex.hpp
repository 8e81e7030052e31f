#pragma once

// Finitely presented crossed complexes, morphisms between them, standard
// cells and pushouts.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "crx/words.hpp"

namespace crx {

int default_bound();  // 10, or $CRX_BOUND

struct Generator {
  std::string name;
  int degree = 0;
  std::string source;  // degree 1
  std::string target;  // degree 1
  std::string base;    // degree >= 2
  CrxWord boundary;    // degree >= 2: a loop at base (degree 2) or a HigherWord of degree - 1

  const std::string& basepoint() const { return degree == 1 ? source : base; }
};

// lhs = rhs in degree `degree`. An `apart` relation asserts lhs != rhs; it
// imposes nothing and is only checked by validate().
struct Relation {
  int degree = 1;
  CrxWord lhs;
  CrxWord rhs;
  bool apart = false;
};

class Normalizer;

class Presentation {
public:
  explicit Presentation(std::string name = "", int bound = default_bound());

  std::string name;
  int bound;

  void add_object(const std::string& x);
  void add_edge(const std::string& name, const std::string& source, const std::string& target);
  // Boundary must be given; base is taken from it.
  void add_cell(const std::string& name, int degree, const CrxWord& boundary);
  void add_cell(const std::string& name, int degree, const std::string& base, const CrxWord& boundary);
  void add_relation(Relation r);
  void add_relation(int degree, const CrxWord& lhs, const CrxWord& rhs, bool apart = false);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Relation>& relations() const { return relations_; }

  bool has_object(const std::string& x) const { return object_index_.count(x) > 0; }
  std::size_t object_index(const std::string& x) const;
  const Generator* find(const std::string& name, int degree) const;
  const Generator& get(const std::string& name, int degree) const;  // throws UnknownGenerator
  std::size_t generator_index(const std::string& name, int degree) const;
  std::vector<const Generator*> generators_of_degree(int degree) const;
  std::size_t count(int degree) const;
  int max_degree() const;
  std::vector<std::size_t> counts_by_degree() const;

  // Elements built from generators.
  PathWord edge(const std::string& name, bool inverse = false) const;
  CrxWord generator_word(const std::string& name, int degree) const;

  // Boundary of an element of degree >= 2.
  CrxWord boundary(const CrxWord& w) const;
  PathWord boundary2(const HigherWord& w) const;
  HigherWord boundary_high(const HigherWord& w) const;

  // Cached equality engine; never changes results.
  const Normalizer& normalizer() const;

private:
  struct Cache {
    std::shared_ptr<const Normalizer> ptr;
    Cache() = default;
    Cache(const Cache&) {}
    Cache(Cache&&) noexcept {}
    Cache& operator=(const Cache&) {
      ptr.reset();
      return *this;
    }
    Cache& operator=(Cache&&) noexcept {
      ptr.reset();
      return *this;
    }
  };
  void touch() { cache_.ptr.reset(); }

  std::vector<std::string> objects_;
  std::unordered_map<std::string, std::size_t> object_index_;
  std::vector<Generator> generators_;
  std::map<std::pair<int, std::string>, std::size_t> generator_index_;
  std::vector<Relation> relations_;
  mutable Cache cache_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

// reduce_path: the free-groupoid normal form of a path, after checking all
// letters against the degree-1 generators of `groupoid`.
PathWord reduce_path(const PathWord& w, const Presentation& groupoid);

// ---------------------------------------------------------------------------
// Morphisms

struct Morphism {
  PresentationPtr source;
  PresentationPtr target;
  std::map<std::string, std::string> object_map;
  std::map<std::pair<int, std::string>, CrxWord> generator_map;

  const std::string& map_object(const std::string& x) const;
  const CrxWord& image(const std::string& gen, int degree) const;
  PathWord apply(const PathWord& p) const;
  HigherWord apply(const HigherWord& h) const;
  CrxWord apply(const CrxWord& w) const;

  void set_object(const std::string& x, const std::string& y) { object_map[x] = y; }
  void set(const std::string& gen, int degree, CrxWord w) { generator_map[{degree, gen}] = std::move(w); }
};

Morphism identity_morphism(const PresentationPtr& p);
// (g . f)(x) = g(f(x))
Morphism compose(const Morphism& f, const Morphism& g);

// ---------------------------------------------------------------------------
// Equality and regimes

enum class Regime { Free, OneReduced, TrivialPi1, FiniteEnumerable, Opaque };
std::string to_string(Regime r);

enum class Verdict { Equal, NotEqual, Undecided };
std::string to_string(Verdict v);

struct EqualityResult {
  Verdict verdict = Verdict::Undecided;
  Regime regime = Regime::Opaque;
  std::string reason;

  bool equal() const { return verdict == Verdict::Equal; }
  bool not_equal() const { return verdict == Verdict::NotEqual; }
};

EqualityResult are_equal(const Presentation& c, const CrxWord& u, const CrxWord& v);
Regime regime_of(const Presentation& c);

// ---------------------------------------------------------------------------
// Validation

struct Diagnostic {
  int axiom = 0;  // 1..6 as in the crossed complex axioms; 0 = structural
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Diagnostic> failures;
  std::vector<Diagnostic> obligations;  // checks left undecided

  bool ok() const { return failures.empty(); }
  bool axiom_failed(int axiom) const;
  std::string to_string() const;
};

ValidationReport validate(const Presentation& c);

struct MorphismReport {
  std::vector<std::string> failures;
  std::vector<std::string> obligations;
  bool ok() const { return failures.empty(); }
  bool decided() const { return failures.empty() && obligations.empty(); }
};

// Endpoint/basepoint preservation, boundary compatibility on generators and
// preservation of the relations of the source.
MorphismReport verify_morphism(const Morphism& f);

// True when the two morphisms agree on every object and generator.
MorphismReport compare_morphisms(const Morphism& f, const Morphism& g);

// ---------------------------------------------------------------------------
// Standard cells

enum class StandardKind { Sphere, Disk, Globe, J1, Point };

// Sphere(n): n = -1 empty, n = 0 two points, n >= 1 one object and one
// generator in degree n. Disk(n): n = 0 a point, n = 1 the interval
// 0 --l--> 1, n >= 2 one object with a (degree n-1) and b (degree n), db = a.
// Globe(n): objects 0, 1; generators s_k, t_k for 1 <= k < n and a top
// generator x of degree n.
PresentationPtr standard(StandardKind kind, int n = 0);

// Inclusion of the basepoint (object 0 or *) into Disk(n).
Morphism disk_basepoint(int n);
// Inclusion Sphere(n-1) -> Disk(n).
Morphism sphere_inclusion(int n);
// Unique map to the point.
Morphism to_point(const PresentationPtr& c);
// The map from the point picking the object x.
Morphism point_at(const PresentationPtr& c, const std::string& x);

// ---------------------------------------------------------------------------
// Pushouts and coproducts

struct PushoutResult {
  PresentationPtr object;
  Morphism in_left;   // B -> P
  Morphism in_right;  // C -> P
};

// Pushout of B <-f- A -g-> C.
PushoutResult pushout(const Morphism& f, const Morphism& g);
PresentationPtr empty_presentation();

struct IsoCheck {
  bool isomorphic = false;
  bool decided = true;
  std::string detail;
};

// Checks that f: A -> B and g: B -> A are mutually inverse morphisms.
IsoCheck check_inverse_pair(const Morphism& f, const Morphism& g);

}  // namespace crx
