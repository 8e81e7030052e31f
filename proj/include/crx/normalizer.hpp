#pragma once

// Equality engine for a fixed presentation. Degree 1 is decided in the
// vertex groups of C_1 (spanning tree + bounded Tietze reduction). Degrees
// >= 2 are compared as vectors in the abelianized module over Pi_1, with
// generators eliminated by module Tietze moves; degree 2 additionally
// compares boundaries in C_1.

#include <map>
#include <string>
#include <vector>

#include "crx/crossed_complex.hpp"
#include "crx/group_solver.hpp"

namespace crx {

using Key = IntVector;
// (generator index in the presentation, Pi_1 key) -> coefficient
using ModuleVec = std::map<std::pair<std::size_t, Key>, Int>;

class Normalizer {
public:
  explicit Normalizer(const Presentation& p);

  struct Component {
    std::string root;
    std::vector<std::string> objects;
    std::vector<std::size_t> nontree;  // degree-1 generator indices off the spanning tree
    GroupSolver c1;                    // vertex group of C_1 at root
    GroupSolver pi1;                   // vertex group of Pi_1 = coker(d_2) at root
  };

  struct ModuleData {
    std::vector<std::size_t> gens;           // generator indices of this degree in the component
    std::map<std::size_t, ModuleVec> subst;  // eliminated generator -> value at the root
    std::vector<ModuleVec> leftover;         // relations not eliminated
    bool canonical_keys = true;              // Pi_1 decided
    bool lattice_mode = false;               // Pi_1 trivial: leftover relations handled by a lattice
    Lattice lattice;                         // over live gens
    std::vector<std::size_t> live;
  };

  const Presentation& presentation() const { return *p_; }
  const std::vector<Component>& components() const { return components_; }
  std::size_t component_of(const std::string& object) const;
  PathWord tree_path(const std::string& object) const;  // root -> object

  // Letters of a path over the nontree generators of its component; for a
  // loop at x this is the image of tree(x) . loop . tree(x)^-1.
  GroupWord letters(const PathWord& p) const;

  EqualityResult equal(const CrxWord& u, const CrxWord& v) const;
  EqualityResult equal_paths(const PathWord& u, const PathWord& v) const;
  EqualityResult equal_in_pi1(const PathWord& u, const PathWord& v) const;

  // Module vector of w with eliminated generators substituted; keys are
  // Pi_1 normal forms (raw free words when Pi_1 is undecided).
  ModuleVec module_vector(const HigherWord& w) const;
  const ModuleData& module_data(int degree, std::size_t component) const;

  Key key_of(std::size_t component, const GroupWord& w) const;
  Key key_multiply(std::size_t component, const Key& a, const Key& b) const;
  Key key_invert(std::size_t component, const Key& a) const;
  Key key_identity(std::size_t component) const;

  Regime regime() const { return regime_; }

private:
  void build_module(int degree, std::size_t component);
  ModuleVec raw_vector(const HigherWord& w) const;
  ModuleVec substitute(std::size_t component, const ModuleData& md, const ModuleVec& v) const;
  EqualityResult compare_vectors(int degree, std::size_t component, const ModuleVec& diff) const;
  // One-sided: some rotation of d is an acted rotation of a relator of its
  // degree, or of the inverse of one.
  bool is_acted_relator(const HigherWord& d) const;

  const Presentation* p_;
  std::vector<Component> components_;
  std::map<std::string, std::size_t> component_of_;
  std::map<std::string, PathWord> tree_;
  std::vector<int> letter_of_;  // generator index -> +-(k+1) nontree letter, 0 for tree/other degrees
  Regime regime_ = Regime::Opaque;
  std::map<std::pair<int, std::size_t>, ModuleData> modules_;
};

}  // namespace crx
