#pragma once

// Homotopy invariants: pi_0, the fundamental groupoid Pi_1 = coker(d_2), and
// pi_n for n >= 2 as ker d_n / im d_{n+1} of the module chains, computed per
// component at the component's root object.

#include <string>
#include <vector>

#include "crx/algebra.hpp"
#include "crx/crossed_complex.hpp"
#include "crx/monoidal.hpp"

namespace crx {

enum class Answer { Yes, No, Undecided };
std::string to_string(Answer a);

// Vertex group of Pi_1 at a component root: generators are the degree-1
// generators off a spanning tree, relators the boundaries of degree-2
// generators and the degree-1 relations.
struct Pi1Presentation {
  std::string root;
  std::vector<std::string> objects;
  std::vector<std::string> generators;
  std::vector<std::string> relators;
  std::string tag;  // solver description: free / abelian / undecided
};

struct HomotopyGroup {
  int degree = 0;
  std::string basepoint;
  bool decided = true;
  std::string reason;
  std::size_t components = 0;    // degree 0
  AbelianGroup abelianization;   // degree 1: of pi_1; degree >= 2: the group itself
  bool group_trivial = false;
  std::optional<Pi1Presentation> presentation;  // degree 1

  std::string to_string() const;
};

std::vector<std::vector<std::string>> pi0(const Presentation& c);
Pi1Presentation pi1_presentation(const Presentation& c, const std::string& x);
HomotopyGroup pi1(const Presentation& c, const std::string& x);
// n = 0 and n = 1 dispatch to pi0 / pi1.
HomotopyGroup pi_n(const Presentation& c, const std::string& x, int n);

// Chain homology of the abelianized module chains in degree n at the
// component of x; defined whenever the module is computable (trivial Pi_1 or
// no generators). For trivial Pi_1 and n >= 2 this is pi_n.
struct ChainHomology {
  bool decided = true;
  std::string reason;
  AbelianGroup group;
};
ChainHomology homology(const Presentation& c, const std::string& x, int n);

struct WeqReport {
  Answer answer = Answer::Undecided;
  int degree = -1;  // failing (or blocking) degree
  std::string basepoint;
  std::string detail;
  int bound = 0;  // verdict is relative to this truncation bound
};

WeqReport is_weak_equivalence(const Morphism& f);

struct TruncationReport {
  Answer truncated = Answer::Undecided;
  Answer connected = Answer::Undecided;
  std::string detail;
};

// n-truncated: pi_k trivial for all k > n at every basepoint (up to the
// bound). n-connected: nonempty, connected, pi_k trivial for 1 <= k <= n.
TruncationReport truncation_connectivity(const Presentation& c, int n);

// When h witnesses f => g: f and g agree on pi_0, and for every basepoint x
// the maps on pi_n agree after transport along h(l, x).
struct InvarianceReport {
  bool pass = true;
  bool decided = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
};

InvarianceReport check_homotopy_invariance(const Morphism& f, const Morphism& g, const J1Homotopy& h);

}  // namespace crx
