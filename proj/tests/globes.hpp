#pragma once

// The pushout of G_{n-1} <- * -> D^n at the 0 endpoint, with explicit
// inverse isomorphisms to G_n: b goes to the top cell and a to the difference
// of the two top-but-one cells.

#include <string>

#include "crx/crossed_complex.hpp"
#include "crx/format.hpp"

namespace crx_test {

using namespace crx;

struct GlobeWitness {
  PushoutResult po;
  PresentationPtr globe;
  Morphism to_globe;
  Morphism from_globe;
};

inline GlobeWitness globe_witness(int n) {
  GlobeWitness w;
  auto prev = standard(StandardKind::Globe, n - 1);
  Morphism at0 = point_at(prev, "0");
  Morphism jn = disk_basepoint(n);
  at0.source = jn.source;
  w.po = pushout(at0, jn);
  w.globe = standard(StandardKind::Globe, n);
  const Presentation& p = *w.po.object;
  const Presentation& g = *w.globe;

  auto word = [](const Presentation& on, int degree, const std::string& text) {
    return parse_word(on, degree, text, "0");
  };
  const std::string s = "s" + std::to_string(n - 1), t = "t" + std::to_string(n - 1);

  w.to_globe.source = w.po.object;
  w.to_globe.target = w.globe;
  w.from_globe.source = w.globe;
  w.from_globe.target = w.po.object;
  for (const auto& x : p.objects()) w.to_globe.object_map[x] = x;
  for (const auto& x : g.objects()) w.from_globe.object_map[x] = x;
  for (const auto& gen : p.generators()) {
    std::string img = gen.name;
    if (gen.name == "x" && gen.degree == n - 1) img = t;
    if (gen.name == "a") img = s + " " + t + "^-1";
    if (gen.name == "b") img = "x";
    if (n == 1 && gen.name == "l") img = "x";
    w.to_globe.set(gen.name, gen.degree, word(g, gen.degree, img));
  }
  for (const auto& gen : g.generators()) {
    std::string img = gen.name;
    if (gen.name == s) img = "a x";
    if (gen.name == t) img = "x";
    if (gen.name == "x") img = n == 1 ? "l" : "b";
    w.from_globe.set(gen.name, gen.degree, word(p, gen.degree, img));
  }
  return w;
}

}  // namespace crx_test
