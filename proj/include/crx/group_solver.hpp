#pragma once

// Bounded word-problem solver for finitely presented groups. Generators are
// eliminated by Tietze moves; what is left is recognized as free, abelian
// (one generator, or every pair of generators commutes by a relator), or
// reported as undecided.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crx/algebra.hpp"

namespace crx {

// Letters are +-(i+1) for generator i.
using GroupWord = std::vector<int>;

GroupWord reduce_group_word(const GroupWord& w);
GroupWord invert_group_word(const GroupWord& w);
GroupWord concat_group_words(const GroupWord& a, const GroupWord& b);

std::size_t default_tietze_budget();

class GroupSolver {
public:
  enum class Kind { Free, Abelian, Undecided };

  GroupSolver() = default;
  GroupSolver(std::size_t generator_count, std::vector<GroupWord> relators,
              std::size_t budget = default_tietze_budget());

  Kind kind() const { return kind_; }
  bool decided() const { return kind_ != Kind::Undecided; }
  bool is_trivial() const;
  std::size_t moves_used() const { return moves_; }
  std::size_t generator_count() const { return ngens_; }
  const std::vector<int>& surviving() const { return live_; }

  // Canonical key of the element represented by w: a reduced word over the
  // surviving generators (Free) or reduced lattice coordinates (Abelian).
  // Empty optional when undecided.
  std::optional<IntVector> normal_form(const GroupWord& w) const;
  IntVector multiply(const IntVector& a, const IntVector& b) const;
  IntVector invert(const IntVector& a) const;
  IntVector identity_key() const;

  // One-sided check for undecided groups: Dehn rewriting by the relators
  // that shortens w to the empty word. False means only "not shown".
  bool proves_trivial(const GroupWord& w, std::size_t budget = 10000) const;

  // Word with all eliminated generators substituted; always available.
  GroupWord substitute(const GroupWord& w) const;

  // The abelianization of the presented group (always computable).
  AbelianGroup abelianization() const;
  std::string describe() const;

private:
  std::size_t ngens_ = 0;
  std::vector<GroupWord> original_;
  std::vector<std::optional<GroupWord>> subst_;
  std::vector<int> live_;
  std::vector<GroupWord> relators_;
  Kind kind_ = Kind::Free;
  std::size_t moves_ = 0;
  Lattice lattice_;
  std::vector<int> live_index_;
};

}  // namespace crx
