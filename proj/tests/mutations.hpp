#pragma once

// Single-axiom violations injected into a valid presentation. Each mutation
// adds fresh cells at the first object, so it applies to any base.

#include <string>
#include <vector>

#include "crx/crossed_complex.hpp"

namespace crx_test {

using namespace crx;

struct Mutation {
  int axiom = 0;
  std::string what;
  Presentation p;
};

inline std::vector<Mutation> mutations(const Presentation& base) {
  std::vector<Mutation> out;
  const std::string x = base.objects().front();
  auto fresh = [&](const std::string& what, int axiom) -> Presentation& {
    out.push_back({axiom, what, base});
    out.back().p.name = base.name + "+" + what;
    return out.back().p;
  };
  auto loop = [&](const std::string& u) { return PathWord::letter(u, x, x); };
  auto cell = [&](const std::string& g) { return HigherWord::generator(2, g, x); };

  {
    Presentation& p = fresh("edge to a missing object", 1);
    p.add_edge("mu_e", x, "mu_nowhere");
  }
  {
    Presentation& p = fresh("identity path declared apart from itself", 1);
    p.add_relation(1, CrxWord::of_path(PathWord::identity(x)), CrxWord::of_path(PathWord::identity(x)), true);
  }
  {
    Presentation& p = fresh("2-cell at a missing object", 2);
    p.add_cell("mu_b", 2, "mu_nowhere", CrxWord::of_path(PathWord::identity(x)));
  }
  {
    Presentation& p = fresh("commuting 3-cells declared apart", 2);
    p.add_cell("mu_p", 3, x, CrxWord::of_higher(HigherWord::identity(2, x)));
    p.add_cell("mu_q", 3, x, CrxWord::of_higher(HigherWord::identity(2, x)));
    HigherWord a = HigherWord::generator(3, "mu_p", x), b = HigherWord::generator(3, "mu_q", x);
    p.add_relation(3, CrxWord::of_higher(a.times(b)), CrxWord::of_higher(b.times(a)), true);
  }
  {
    Presentation& p = fresh("2-cell boundary that is not a loop", 3);
    p.add_object("mu_z");
    p.add_edge("mu_e", x, "mu_z");
    p.add_cell("mu_b", 2, x, CrxWord::of_path(PathWord::letter("mu_e", x, "mu_z")));
  }
  {
    Presentation& p = fresh("3-cell whose boundary has a boundary", 3);
    p.add_edge("mu_u", x, x);
    p.add_cell("mu_w", 2, x, CrxWord::of_path(loop("mu_u")));
    p.add_cell("mu_c", 3, x, CrxWord::of_higher(cell("mu_w")));
  }
  {
    Presentation& p = fresh("2-cell boundary based elsewhere", 4);
    p.add_object("mu_z");
    p.add_edge("mu_u", "mu_z", "mu_z");
    p.add_cell("mu_b", 2, x, CrxWord::of_path(PathWord::letter("mu_u", "mu_z", "mu_z")));
  }
  {
    Presentation& p = fresh("relation between cells with different boundaries", 5);
    p.add_edge("mu_u", x, x);
    p.add_cell("mu_p", 2, x, CrxWord::of_path(loop("mu_u")));
    p.add_cell("mu_q", 2, x, CrxWord::of_path(PathWord::identity(x)));
    p.add_relation(2, CrxWord::of_higher(cell("mu_p")), CrxWord::of_higher(cell("mu_q")));
  }
  {
    Presentation& p = fresh("Peiffer pair declared apart", 6);
    p.add_edge("mu_u", x, x);
    p.add_cell("mu_p", 2, x, CrxWord::of_path(loop("mu_u")));
    p.add_cell("mu_q", 2, x, CrxWord::of_path(PathWord::identity(x)));
    HigherWord conj = cell("mu_p").inverse().times(cell("mu_q")).times(cell("mu_p"));
    p.add_relation(2, CrxWord::of_higher(conj), CrxWord::of_higher(cell("mu_q").act(loop("mu_u"))), true);
  }
  return out;
}

// Valid bases the mutations are applied to.
inline std::vector<PresentationPtr> mutation_bases() {
  return {standard(StandardKind::Point),     standard(StandardKind::Disk, 1),   standard(StandardKind::Disk, 2),
          standard(StandardKind::Disk, 3),   standard(StandardKind::Sphere, 2), standard(StandardKind::Globe, 2),
          standard(StandardKind::Globe, 3),  standard(StandardKind::Sphere, 1)};
}

}  // namespace crx_test
