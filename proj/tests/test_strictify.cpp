#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "crx/encat.hpp"
#include "crx/errors.hpp"
#include "crx/strictify.hpp"
#include "support.hpp"

using namespace crx;
using namespace crx_test;

namespace {

EnrichedPtr one_object(const std::vector<EnrichedCell>& cells) {
  auto c = std::make_shared<EnrichedPresentation>();
  c->name = "E";
  c->add_object("*");
  for (const auto& cell : cells) c->add_cell(cell);
  return c;
}

std::vector<EnrichedPtr> corpus_tensor_categories() {
  std::vector<EnrichedPtr> out;
  for (const auto& e : std::filesystem::directory_iterator(CRX_CORPUS_DIR)) {
    if (e.path().extension() != ".encat") continue;
    for (const auto& c : load_encat(e.path().string()).categories)
      if (c->flavor == Flavor::Tensor) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("stglo of a suspension is the cartesian suspension") {
  std::vector<PresentationPtr> vs{standard(StandardKind::Point),
                                  standard(StandardKind::Disk, 1),
                                  standard(StandardKind::Sphere, 2),
                                  standard(StandardKind::Globe, 2),
                                  standard(StandardKind::Globe, 3),
                                  standard(StandardKind::Disk, 2),
                                  tensor(standard(StandardKind::Disk, 1), standard(StandardKind::Disk, 1))};
  for (const auto& v : vs) {
    CAPTURE(v->name);
    StrictificationResult st = stglo(suspension(*v, Flavor::Tensor));
    CHECK(*st.output == *suspension(*v, Flavor::Cartesian));
    for (const auto& [k, log] : st.kernel_log) CHECK(log.empty());
    CHECK(verify_functor(st.unit).ok());
    for (const auto& [x, y] : std::vector<std::pair<std::string, std::string>>{{"0", "1"}, {"0", "0"}})
      CHECK(decomposable_kernel(suspension(*v, Flavor::Tensor), x, y, 2).words.empty());
  }
}

TEST_CASE("stglo of the point category is itself") {
  auto one = standard_category(StandardCategory::One, Flavor::Tensor);
  StrictificationResult st = stglo(one);
  CHECK(st.output->flavor == Flavor::Cartesian);
  CHECK(st.output->objects == one->objects);
  CHECK(st.output->cells.empty());
}

TEST_CASE("stglo(P11) has hom(0,2) the cartesian square of the interval") {
  auto p = standard_category(StandardCategory::P11, Flavor::Tensor);
  StrictificationResult st = stglo(p);
  PresentationPtr h = realize_hom(st.output, "0", "2");
  ProductResult sq = cartesian(standard(StandardKind::Disk, 1), standard(StandardKind::Disk, 1));
  auto names = p11_names(Flavor::Cartesian);
  IsoCheck iso = check_inverse_pair(renaming(h, sq.object, names), renaming(sq.object, h, inverted(names)));
  CHECK(iso.isomorphic);
  CHECK(iso.decided);
  CHECK(st.kernel_log.at({"0", "2"}) == std::vector<std::string>{"l.m"});
  CHECK(st.output->relations.empty());
}

TEST_CASE("the unit of P11 at hom(0,2) is the collapse of the interval square") {
  auto p = standard_category(StandardCategory::P11, Flavor::Tensor);
  StrictificationResult st = stglo(p);
  auto disk = standard(StandardKind::Disk, 1);
  Morphism col = collapse(disk, disk);

  CategoryPtr s = realize(p, RealizeOptions{});
  CategoryPtr t = realize(st.output, RealizeOptions{});
  Morphism u = functor_hom_map(st.unit, *s, *t, "0", "2");
  Morphism into = renaming(col.source, u.source, inverted(p11_names(Flavor::Tensor)));
  Morphism out = renaming(u.target, col.target, p11_names(Flavor::Cartesian));
  MorphismReport r = compare_morphisms(compose(compose(into, u), out), col);
  CHECK(r.ok());
  CHECK(r.decided());
  // l.m goes to an identity
  CHECK(u.image("l.m", 2).is_identity());
}

TEST_CASE("decomposable kernels") {
  auto p = standard_category(StandardCategory::P11, Flavor::Tensor);
  KernelList k2 = decomposable_kernel(p, "0", "2", 2);
  CHECK(k2.names == std::vector<std::string>{"l.m"});
  CHECK(k2.complete);
  KernelList k1 = decomposable_kernel(p, "0", "2", 1);
  CHECK(k1.names.empty());
  REQUIRE(k1.words.size() == 1);
  CHECK(k1.words[0] == realize_hom(p, "0", "2")->get("l.m", 2).boundary);
  CHECK(decomposable_kernel(p, "0", "1", 2).words.empty());

  // one object, generators x(2), z(3), y(6); every product of two
  // generators of total degree <= 7 is decomposable
  auto e = one_object({{"x", 2, "*", "*", "1_id_*"}, {"z", 3, "*", "*", "1_id_*"}, {"y", 6, "*", "*", "x.z"}});
  CHECK(decomposable_kernel(e, "*", "*", 4).names == std::vector<std::string>{"x.x"});
  auto k5 = decomposable_kernel(e, "*", "*", 5).names;
  std::sort(k5.begin(), k5.end());
  CHECK(k5 == std::vector<std::string>{"x.z", "z.x"});
  auto k6 = decomposable_kernel(e, "*", "*", 6).names;
  std::sort(k6.begin(), k6.end());
  CHECK(k6 == std::vector<std::string>{"x.x.x", "z.z"});
  CHECK(decomposable_kernel(e, "*", "*", 3).names.empty());
}

TEST_CASE("boundaries through decomposables are rewritten to identities") {
  auto e = one_object({{"x", 2, "*", "*", "1_id_*"}, {"y", 5, "*", "*", "x.x"}});
  StrictificationResult st = stglo(e);
  CHECK(st.output->cell("x").boundary == "1_id_*");
  CHECK(st.output->cell("y").boundary == "1_id_*");
  CHECK(verify_functor(st.unit).ok());
  PresentationPtr h = realize_hom(st.output, "*", "*");
  CHECK(h->count(2) == 1);
  CHECK(h->count(4) == 0);
  CHECK(h->count(5) == 1);
}

TEST_CASE("the unit sends every logged composite to an identity") {
  for (auto k : {StandardCategory::I, StandardCategory::IStar, StandardCategory::ITilde, StandardCategory::P11}) {
    auto c = standard_category(k, Flavor::Tensor);
    CAPTURE(c->name);
    StrictificationResult st = stglo(c);
    CHECK(verify_functor(st.unit).ok());
    RealizeOptions o = options_for(*c);
    o.degree_bound = c->max_degree() + 1;
    o.word_bound = std::max(o.word_bound, 5);
    CategoryPtr s = realize(c, o);
    CategoryPtr t = realize(st.output, o);
    std::size_t seen = 0;
    for (const auto& [xy, log] : st.kernel_log) {
      Morphism m = functor_hom_map(st.unit, *s, *t, xy.first, xy.second);
      std::set<std::string> logged(log.begin(), log.end());
      for (const auto& g : s->hom(xy.first, xy.second).complex->generators())
        if (logged.count(g.name)) {
          CHECK(m.image(g.name, g.degree).is_identity());
          ++seen;
        }
    }
    CHECK(seen > 0);
  }
}

TEST_CASE("reinterpretation and the quotient agree on every hom of the corpus") {
  std::vector<EnrichedPtr> cats = corpus_tensor_categories();
  for (auto k : {StandardCategory::One, StandardCategory::I, StandardCategory::IStar, StandardCategory::ITilde,
                 StandardCategory::P11})
    cats.push_back(standard_category(k, Flavor::Tensor));
  cats.push_back(one_object({{"x", 2, "*", "*", "1_id_*"}, {"y", 5, "*", "*", "x.x"}}));
  CHECK(cats.size() >= 8);
  for (const auto& c : cats) {
    CAPTURE(c->name);
    for (const auto& a : quotient_agreement(c)) {
      CAPTURE(a.x);
      CAPTURE(a.y);
      CAPTURE(a.detail);
      CHECK(a.agree == Answer::Yes);
    }
  }
}

TEST_CASE("stglo rejects cartesian input") {
  CHECK_THROWS_AS(stglo(standard_category(StandardCategory::I, Flavor::Cartesian)), DomainError);
}
