#pragma once

// Global strictification of tensor-enriched categories.
//
// On a cellular presentation St^glo keeps the cell data and reads it over
// the cartesian product. Boundaries of cells of degree >= 2 are pushed
// through the unit map degree by degree, so a boundary that mentions a
// composite of several positive-degree cells is rewritten to the image of
// that composite (an identity). The quotient of each tensor hom by its
// decomposable composites is computed separately and compared.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crx/enriched.hpp"

namespace crx {

struct StrictificationResult {
  EnrichedPtr output;    // cartesian flavor
  EnrichedFunctor unit;  // input -> output, identity on objects
  // per hom, the decomposable composites that the unit sends to identities
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> kernel_log;
  std::vector<std::string> notes;  // structured homs are left Undecided
};

StrictificationResult stglo(const EnrichedPtr& cat);
EnrichedFunctor unit_map(const EnrichedPtr& cat);

// True when a composite generator name has at least two positive-degree cells.
bool is_decomposable(const EnrichedPresentation& cat, const std::string& name);

struct KernelList {
  std::vector<CrxWord> words;
  std::vector<std::string> names;  // decomposable generators; boundaries are listed unnamed
  bool complete = true;            // false when the realization was cut off
};

// Decomposable composites of degree n in hom(x, y), then the boundaries of
// the decomposable composites of degree n + 1.
KernelList decomposable_kernel(const EnrichedPtr& cat, const std::string& x, const std::string& y, int n);

// The tensor hom with every decomposable generator and its boundary set to
// the identity.
PresentationPtr decomposable_quotient(const Presentation& hom, const EnrichedPresentation& cat);

struct QuotientAgreement {
  std::string x, y;
  Answer agree = Answer::Undecided;
  std::string detail;
};

// Per hom, compares the quotient with the hom of stglo(cat).
std::vector<QuotientAgreement> quotient_agreement(const EnrichedPtr& cat);

}  // namespace crx
