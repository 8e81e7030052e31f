#pragma once

// Renaming oracles shared by the enriched and strictification tests.

#include <map>
#include <string>

#include "crx/enriched.hpp"
#include "crx/monoidal.hpp"

namespace crx_test {

using namespace crx;

inline std::string corpus(const std::string& f) { return std::string(CRX_CORPUS_DIR) + "/" + f; }

// Renames every object and generator of w.
inline CrxWord renamed(const CrxWord& w, const std::map<std::string, std::string>& names) {
  auto f = [&](const std::string& n) { return names.at(n); };
  auto path = [&](const PathWord& p) {
    std::vector<Step> steps;
    for (const auto& s : p.steps()) steps.push_back({f(s.gen), s.inverse, f(s.from), f(s.to)});
    return PathWord(f(p.start()), steps);
  };
  if (w.degree == 0) return CrxWord::of_object(f(w.object));
  if (w.degree == 1) return CrxWord::of_path(path(w.path));
  std::vector<Term> terms;
  for (const auto& t : w.higher.terms()) terms.push_back({f(t.gen), t.exp, path(t.actor)});
  return CrxWord::of_higher(HigherWord(w.degree, f(w.higher.base()), terms));
}

// The morphism a -> b sending every cell to the generator named by `names`.
inline Morphism renaming(const PresentationPtr& a, const PresentationPtr& b,
                         const std::map<std::string, std::string>& names) {
  Morphism m;
  m.source = a;
  m.target = b;
  for (const auto& x : a->objects()) m.object_map[x] = names.at(x);
  for (const auto& g : a->generators()) m.set(g.name, g.degree, b->generator_word(names.at(g.name), g.degree));
  return m;
}

inline std::map<std::string, std::string> inverted(const std::map<std::string, std::string>& m) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : m) out[v] = k;
  return out;
}

// hom(0,2) of P11 against the square of the interval, cell by cell.
inline std::map<std::string, std::string> p11_names(Flavor fl) {
  auto obj = fl == Flavor::Tensor ? tensor_object_name : product_object_name;
  auto cell = fl == Flavor::Tensor ? tensor_cell_name : product_cell_name;
  std::map<std::string, std::string> n;
  for (std::string i : {"0", "1"})
    for (std::string j : {"0", "1"}) n["u" + i + ".v" + j] = obj(i, j);
  for (std::string j : {"0", "1"}) n["l.v" + j] = cell("l", j);
  for (std::string i : {"0", "1"}) n["u" + i + ".m"] = cell(i, "l");
  if (fl == Flavor::Tensor) n["l.m"] = cell("l", "l");
  return n;
}

}  // namespace crx_test
