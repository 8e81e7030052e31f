#pragma once

// The .encat text format: enriched categories and functors between them.
//
//   encat <name> flavor=tensor|cartesian
//   bound: <n>
//   objects: 0 1
//   cell f deg 0 : 0 -> 1
//   cell l1 deg 1 : 0 -> 0 @ boundary id_0 -> f.g
//   cell alpha deg 2 : 0 -> 0 @ boundary l1 a h1^-1
//   rel 0 0 deg 1 : <word> = <word>
//   hom 0 0 = structured:contractible(Z)
//
//   functor <name> : <source> -> <target>
//   obj 0 -> 0
//   cell l1 -> s
//   end
//
// Functor endpoints name categories of the same file or the standard ones
// (One, I, IStar, ITilde, P11; a trailing x selects the cartesian flavor).

#include <string>
#include <vector>

#include "crx/enriched.hpp"

namespace crx {

struct EncatFile {
  std::vector<EnrichedPtr> categories;
  std::vector<EnrichedFunctor> functors;

  EnrichedPtr category(const std::string& name) const;  // file first, then standard names
  const EnrichedFunctor* functor(const std::string& name) const;
};

EncatFile parse_encat(const std::string& text, const std::string& filename = "<input>");
EncatFile load_encat(const std::string& path);

std::string emit_category(const EnrichedPresentation& c);
std::string emit_functor(const EnrichedFunctor& f);
std::string emit_encat(const EncatFile& file);

}  // namespace crx
