// crx: command-line front end for the crx library.
//
// Exit status: 0 every check passed, 1 some check failed, 2 usage error or
// unreadable/malformed input, 3 nothing failed but something is undecided.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "crx/crossed_complex.hpp"
#include "crx/dga.hpp"
#include "crx/encat.hpp"
#include "crx/errors.hpp"
#include "crx/format.hpp"
#include "crx/invariants.hpp"
#include "crx/monoidal.hpp"
#include "crx/strictify.hpp"

using json = nlohmann::ordered_json;
using namespace crx;

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kReportVersion = 1;

enum class Status { Pass, Fail, Undecided };

const char* label(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    default: return "UNDECIDED";
  }
}

Status from(Answer a) { return a == Answer::Yes ? Status::Pass : a == Answer::No ? Status::Fail : Status::Undecided; }

struct Check {
  std::string name;
  Status status;
  std::string detail;
  std::string location;
  std::string blocking;  // undecided checks only
};

struct Options {
  std::string format = "text";
  std::string output;
  std::string log;
  int bound = default_bound();
  int word_bound = 6;
  int degree = -1;
  int length = 4;
  std::string basepoint;
  std::string functor, bottom, against, category;
  std::vector<std::string> inputs;
};

class Report {
public:
  std::string verb;
  std::vector<std::string> inputs;
  json bounds = json::object();
  json data = json::object();
  std::vector<std::string> lines;  // human-readable body
  std::vector<Check> checks;

  void check(std::string name, Status s, std::string detail = "", std::string location = "",
             std::string blocking = "") {
    if (s == Status::Undecided && blocking.empty()) blocking = default_blocking;
    checks.push_back({std::move(name), s, std::move(detail), std::move(location), std::move(blocking)});
  }
  void say(std::string line) { lines.push_back(std::move(line)); }

  int exit_code() const {
    bool undecided = false;
    for (const auto& c : checks) {
      if (c.status == Status::Fail) return 1;
      undecided = undecided || c.status == Status::Undecided;
    }
    return undecided ? 3 : 0;
  }

  void print(std::ostream& os, const std::string& format, double ms) const {
    if (format == "json") {
      json j;
      j["version"] = kReportVersion;
      j["tool"] = std::string("crx ") + kToolVersion;
      j["verb"] = verb;
      j["inputs"] = inputs;
      j["bounds"] = bounds;
      j["status"] = exit_code();
      json cs = json::array();
      for (const auto& c : checks) {
        json x{{"name", c.name}, {"verdict", label(c.status)}, {"detail", c.detail}};
        if (!c.location.empty()) x["location"] = c.location;
        if (c.status == Status::Undecided) x["blocking"] = c.blocking;
        cs.push_back(x);
      }
      j["checks"] = cs;
      j["data"] = data;
      j["elapsed_ms"] = ms;
      os << j.dump(2) << "\n";
      return;
    }
    for (const auto& l : lines) os << l << "\n";
    for (const auto& c : checks) {
      os << label(c.status) << " " << c.name;
      if (!c.location.empty()) os << " [" << c.location << "]";
      if (!c.detail.empty()) os << ": " << c.detail;
      if (c.status == Status::Undecided) os << " (blocked by " << c.blocking << ")";
      os << "\n";
    }
  }

  std::string default_blocking;
};

// Input problems: exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string extension(const std::string& path) { return std::filesystem::path(path).extension().string(); }

void need_inputs(const Options& o, std::size_t n, const std::string& what) {
  if (o.inputs.size() != n) throw CLI::ValidationError("expected " + what);
}

PresentationPtr load_presentation(const std::string& path, int bound) {
  Presentation p = load_crx(path);
  p.bound = bound;
  return std::make_shared<const Presentation>(std::move(p));
}

json group_json(const AbelianGroup& g) {
  json t = json::array();
  for (const auto& x : g.torsion) t.push_back(x.get_str());
  return {{"free_rank", g.free_rank}, {"torsion", t}, {"text", g.to_string()}};
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + ")";
}

void write_or_print(const Options& o, Report& r, const std::string& text, const std::string& key) {
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    if (!out) throw InputError("cannot write " + o.output);
    out << text;
    r.data[key] = o.output;
  } else if (o.format == "json") {
    r.data[key] = text;
  } else {
    std::string t = text;
    if (!t.empty() && t.back() == '\n') t.pop_back();
    r.say(t);
  }
}

void report_validation(Report& r, const std::string& what, const ValidationReport& v) {
  for (const auto& d : v.failures)
    r.check(what + " axiom " + std::to_string(d.axiom), Status::Fail, d.message, d.location);
  for (const auto& d : v.obligations)
    r.check(what + " axiom " + std::to_string(d.axiom), Status::Undecided, d.message, d.location,
            "word problem regime at degree bound " + std::to_string(r.bounds.value("degree", 0)));
  if (v.failures.empty() && v.obligations.empty()) r.check(what, Status::Pass, "all axioms hold");
}

void report_morphism(Report& r, const std::string& what, const MorphismReport& m) {
  for (const auto& f : m.failures) r.check(what, Status::Fail, f);
  for (const auto& f : m.obligations) r.check(what, Status::Undecided, f);
  if (m.decided()) r.check(what, Status::Pass);
}

// ---------------------------------------------------------------------------
// Crossed complexes

void validate_encat(const Options& o, Report& r, const EncatFile& file);

void cmd_validate(const Options& o, Report& r) {
  need_inputs(o, 1, "one input file");
  const std::string& path = o.inputs[0];
  const std::string ext = extension(path);
  if (ext == ".encat") return validate_encat(o, r, load_encat(path));
  if (ext == ".dga") {
    PresentedDga a = load_dga(path);
    GradedChain c = chain_complex(a, o.bound);
    r.check("d^2 = 0", c.square_zero() ? Status::Pass : Status::Fail, "", a.free.name);
    r.data["ranks"] = c.ranks();
    return;
  }
  if (ext == ".ssx") {
    SimplicialSetFinite x = load_ssx(path);
    r.check("simplicial identities", Status::Pass, std::to_string(x.dimension()) + "-dimensional", x.name);
    return;
  }
  PresentationPtr p = load_presentation(path, o.bound);
  r.data["counts"] = p->counts_by_degree();
  r.say(p->name + ": generators by degree " + join(p->counts_by_degree()));
  report_validation(r, p->name, validate(*p));
}

void cmd_monoidal(const std::string& which, const Options& o, Report& r) {
  need_inputs(o, 2, "two .crx files");
  PresentationPtr a = load_presentation(o.inputs[0], o.bound), b = load_presentation(o.inputs[1], o.bound);
  if (which == "tensor") {
    PresentationPtr t = tensor(a, b);
    report_validation(r, t->name, validate(*t));
    write_or_print(o, r, emit_crx(*t), "crx");
  } else if (which == "product") {
    PresentationPtr t = cartesian(a, b).object;
    report_validation(r, t->name, validate(*t));
    write_or_print(o, r, emit_crx(*t), "crx");
  } else {
    Morphism k = collapse(a, b);
    report_morphism(r, "collapse is a morphism", verify_morphism(k));
    json images = json::object();
    std::string table;
    for (const auto& g : k.source->generators()) {
      std::string img = k.image(g.name, g.degree).to_string();
      images[g.name] = img;
      table += g.name + " -> " + img + "\n";
    }
    r.data["images"] = images;
    if (o.format != "json") r.say(table.substr(0, table.size() - 1));
    if (!o.output.empty()) write_or_print(o, r, emit_crx(*k.target), "crx");
  }
}

void cmd_kernel(const Options& o, Report& r) {
  need_inputs(o, 2, "two .crx files");
  if (o.degree < 1) throw CLI::ValidationError("kernel needs --degree >= 1");
  PresentationPtr a = load_presentation(o.inputs[0], o.bound), b = load_presentation(o.inputs[1], o.bound);
  json words = json::array();
  for (const auto& w : kernel_generators(a, b, o.degree)) {
    words.push_back(w.to_string());
    if (o.format != "json") r.say(w.to_string());
  }
  r.data["degree"] = o.degree;
  r.data["generators"] = words;
  r.check("kernel generators in degree " + std::to_string(o.degree), Status::Pass, std::to_string(words.size()));
}

std::string basepoint_of(const Options& o, const Presentation& p) {
  if (!o.basepoint.empty()) return o.basepoint;
  if (p.objects().empty()) throw CLI::ValidationError("empty presentation has no basepoint");
  return p.objects().front();
}

void cmd_pi(const Options& o, Report& r) {
  need_inputs(o, 1, "one .crx file");
  if (o.degree < 0) throw CLI::ValidationError("pi needs --degree");
  PresentationPtr p = load_presentation(o.inputs[0], o.bound);
  const std::string x = basepoint_of(o, *p);
  HomotopyGroup g = pi_n(*p, x, o.degree);
  r.say(g.to_string());
  r.data["degree"] = o.degree;
  r.data["basepoint"] = x;
  if (o.degree == 0) r.data["components"] = g.components;
  else r.data["group"] = group_json(g.abelianization);
  if (g.presentation) {
    r.data["generators"] = g.presentation->generators;
    r.data["relators"] = g.presentation->relators;
  }
  r.data["trivial"] = g.group_trivial;
  r.check("pi_" + std::to_string(o.degree), g.decided ? Status::Pass : Status::Undecided, g.reason, x, g.reason);
}

void cmd_homology(const Options& o, Report& r) {
  need_inputs(o, 1, "one input file");
  if (o.degree < 0) throw CLI::ValidationError("homology needs --degree");
  const std::string& path = o.inputs[0];
  const std::string ext = extension(path);
  AbelianGroup h;
  if (ext == ".ssx") {
    h = chains(load_ssx(path), false).homology(o.degree);
  } else if (ext == ".dga") {
    h = chain_complex(load_dga(path), std::max(o.bound, o.degree + 1)).homology(o.degree);
  } else {
    PresentationPtr p = load_presentation(path, o.bound);
    ChainHomology c = homology(*p, basepoint_of(o, *p), o.degree);
    if (!c.decided) {
      r.check("H_" + std::to_string(o.degree), Status::Undecided, c.reason, "", c.reason);
      return;
    }
    h = c.group;
  }
  r.say("H_" + std::to_string(o.degree) + " = " + h.to_string());
  r.data["degree"] = o.degree;
  r.data["group"] = group_json(h);
  r.check("H_" + std::to_string(o.degree), Status::Pass, h.to_string());
}

void cmd_weq(const Options& o, Report& r) {
  if (o.inputs.empty() || o.inputs.size() > 2)
    throw CLI::ValidationError("weq takes C.crx (the map C -> point) or A.crx B.crx (the collapse)");
  Morphism f;
  if (o.inputs.size() == 1) {
    f = to_point(load_presentation(o.inputs[0], o.bound));
  } else {
    f = collapse(load_presentation(o.inputs[0], o.bound), load_presentation(o.inputs[1], o.bound));
  }
  WeqReport w = is_weak_equivalence(f);
  r.data["answer"] = to_string(w.answer);
  if (w.degree >= 0) r.data["degree"] = w.degree;
  r.check("weak equivalence", from(w.answer), w.detail, w.basepoint,
          "degree bound " + std::to_string(w.bound) + (w.degree >= 0 ? " at degree " + std::to_string(w.degree) : ""));
}

void cmd_truncation(const Options& o, Report& r) {
  need_inputs(o, 1, "one input file");
  if (o.degree < 0) throw CLI::ValidationError("truncation needs --degree");
  const std::string& path = o.inputs[0];
  TruncationReport t;
  if (extension(path) == ".encat") {
    EncatFile file = load_encat(path);
    if (file.categories.empty()) throw InputError(path + " declares no category");
    EnrichedPtr cat = o.category.empty() ? file.categories.front() : file.category(o.category);
    t = truncation_connectivity_cat(cat, o.degree);
  } else {
    t = truncation_connectivity(*load_presentation(path, o.bound), o.degree);
  }
  const std::string n = std::to_string(o.degree);
  r.data["truncated"] = to_string(t.truncated);
  r.data["connected"] = to_string(t.connected);
  r.say(n + "-truncated: " + to_string(t.truncated));
  r.say(n + "-connected: " + to_string(t.connected));
  if (!t.detail.empty()) r.say(t.detail);
  // the answers are the output; only an undecided one is reported as such
  for (auto [what, a] : {std::pair{"truncated", t.truncated}, std::pair{"connected", t.connected}})
    r.check(n + "-" + what + " decided", a == Answer::Undecided ? Status::Undecided : Status::Pass, to_string(a));
}

// ---------------------------------------------------------------------------
// Enriched categories

EnrichedPtr pick_category(const Options& o, const EncatFile& file) {
  if (!o.category.empty()) return file.category(o.category);
  if (file.categories.empty()) throw InputError("no category in input");
  return file.categories.front();
}

const EnrichedFunctor& pick_functor(const Options& o, const EncatFile& file, const std::string& fallback) {
  const std::string name = o.functor.empty() ? fallback : o.functor;
  if (const EnrichedFunctor* f = file.functor(name)) return *f;
  if (o.functor.empty() && !file.functors.empty()) return file.functors.front();
  throw InputError("no functor named " + name);
}

RealizeOptions realize_options(const Options& o, const EnrichedPresentation& c) {
  RealizeOptions opts = options_for(c);
  opts.word_bound = std::max(opts.word_bound, o.word_bound);
  return opts;
}

void validate_encat(const Options& o, Report& r, const EncatFile& file) {
  for (const auto& c : file.categories) {
    EnrichedCategory cat(c, realize_options(o, *c));
    for (const auto& x : c->objects)
      for (const auto& y : c->objects) {
        const HomRealization& h = cat.hom(x, y);
        const std::string at = c->name + " hom(" + x + "," + y + ")";
        if (!h.complex) {
          r.check(at, Status::Pass, "structured " + h.structured.to_string());
          continue;
        }
        if (h.truncated) r.check(at, Status::Undecided, "realization cut off", "", "word bound");
        report_validation(r, at, validate(*h.complex));
      }
  }
  for (const auto& f : file.functors) report_morphism(r, "functor " + f.name, verify_functor(f));
}

void cmd_ho(const Options& o, Report& r, const EncatFile& file) {
  EnrichedPtr cat = pick_category(o, file);
  HoCategory ho = ho_category(cat, realize_options(o, *cat));
  std::string text = ho.to_string();
  while (!text.empty() && text.back() == '\n') text.pop_back();
  r.say(text);
  r.data["ho"] = ho.to_string();
  for (const auto& n : ho.notes) r.say("note: " + n);
  r.check("Ho computed", ho.decided ? Status::Pass : Status::Undecided, "", "", "hom realization bounds");
}

void cmd_ho21(const Options& o, Report& r, const EncatFile& file) {
  Ho21Result h = ho21(pick_category(o, file));
  report_morphism(r, "unit functor", verify_functor(h.unit));
  write_or_print(o, r, emit_category(*h.category), "encat");
}

void cmd_diagnose(const Options& o, Report& r, const EncatFile& file) {
  const EnrichedFunctor& f = pick_functor(o, file, "F");
  FibrationDiagnostics d = fibration_diagnostics(f);
  r.data["functor"] = f.name;
  const std::pair<const char*, Answer> answers[] = {{"local_fibration", d.local_fibration},
                                                    {"isofibration", d.isofibration},
                                                    {"acyclic_fibration", d.acyclic_fibration},
                                                    {"dk_weak_equivalence", d.dk_weak_equivalence},
                                                    {"local_weak_equivalence", d.local_weak_equivalence}};
  for (const auto& [k, a] : answers) {
    r.data[k] = to_string(a);
    r.say(std::string(k) + ": " + to_string(a));
    if (a == Answer::Undecided) r.check(k, Status::Undecided, "", f.name, d.bounds);
  }
  for (const auto& n : d.notes) r.say("note: " + n);
  if (r.checks.empty()) r.check("diagnostics decided", Status::Pass, "", f.name);
}

void cmd_lift(const Options& o, Report& r, const EncatFile& file) {
  if (o.against.empty()) throw CLI::ValidationError("lift needs --against");
  const EnrichedFunctor& f = pick_functor(o, file, "F");
  std::string bottom = o.bottom;
  if (bottom.empty()) {
    // a theta square reads bottom_theta when the file has one
    bottom = o.against.rfind("theta", 0) == 0 && file.functor("bottom_theta") ? "bottom_theta" : "bottom";
  }
  const EnrichedFunctor* b = file.functor(bottom);
  if (!b) throw InputError("no functor named " + bottom);
  NamedSquare sq = square_against(o.against, f, *b);
  LiftResult res = search_lift(sq.square);
  r.data["against"] = o.against;
  r.data["functor"] = f.name;
  r.data["bottom"] = bottom;
  r.data["outcome"] = to_string(res.outcome);
  r.data["explored"] = res.explored;
  if (!sq.detail.empty()) r.say(sq.detail);
  switch (res.outcome) {
    case LiftOutcome::Found:
      r.check("lift", Status::Pass, "Found: " + res.detail);
      r.say(emit_functor(*res.lift));
      break;
    case LiftOutcome::Refuted:
      r.check("lift", Status::Fail, "Refuted: " + res.obstruction);
      if (!res.detail.empty()) r.say(res.detail);
      break;
    default:
      r.check("lift", Status::Undecided, res.detail, "", "search bounds (path length 2, 20000 nodes)");
  }
}

void cmd_strictify(const Options& o, Report& r) {
  need_inputs(o, 1, "one .encat file");
  EncatFile file = load_encat(o.inputs[0]);
  EnrichedPtr cat = pick_category(o, file);
  StrictificationResult st = stglo(cat);
  report_morphism(r, "unit functor", verify_functor(st.unit));
  for (const auto& n : st.notes) r.check("strictify " + cat->name, Status::Undecided, n, "", "structured hom");

  json log{{"version", kReportVersion}, {"category", cat->name}, {"output", st.output->name}};
  json kernel = json::array();
  for (const auto& [xy, names] : st.kernel_log) {
    kernel.push_back({{"x", xy.first}, {"y", xy.second}, {"composites", names}});
    if (!names.empty() && o.log.empty() && o.format != "json") {
      std::string line = "killed in hom(" + xy.first + "," + xy.second + "):";
      for (const auto& n : names) line += " " + n;
      r.say(line);
    }
  }
  log["kernel"] = kernel;
  log["notes"] = st.notes;
  if (!o.log.empty()) {
    std::ofstream out(o.log);
    if (!out) throw InputError("cannot write " + o.log);
    out << log.dump(2) << "\n";
    r.data["log"] = o.log;
  } else {
    r.data["kernel_log"] = log;
  }
  write_or_print(o, r, emit_category(*st.output), "encat");
}

// ---------------------------------------------------------------------------
// DGAs and simplicial sets

void cmd_dga(const std::string& which, const Options& o, Report& r) {
  need_inputs(o, 1, "one .dga file");
  PresentedDga a = load_dga(o.inputs[0]);
  const int n = o.bound;
  if (which == "replace") {
    CofibrantReplacement rep = cofibrant_replacement(a, n);
    const FreeDga& t = rep.cofibrant;
    json gens = json::array();
    for (std::size_t i = 0; i < t.generators().size(); ++i) {
      const auto& g = t.generators()[i];
      std::string d = t.diff(i).empty() ? "0" : t.to_string(t.diff(i));
      gens.push_back({{"name", g.name}, {"degree", g.degree}, {"d", d}});
      r.say("gen " + g.name + " deg " + std::to_string(g.degree) + "  d = " + d);
    }
    r.data["generators"] = gens;
    json degs = json::array();
    for (const auto& d : rep.degrees) {
      degs.push_back({{"degree", d.degree}, {"source", group_json(d.source)}, {"target", group_json(d.target)},
                      {"cone_acyclic", d.cone_acyclic}});
      if (!d.cone_acyclic) r.check("cone acyclic", Status::Fail, "", "degree " + std::to_string(d.degree));
    }
    r.data["degrees"] = degs;
    r.check("quasi-isomorphism through degree " + std::to_string(n),
            rep.quasi_isomorphism ? Status::Pass : Status::Fail);
  } else if (which == "indec") {
    FreeDga t = a.free;
    if (!a.relations.empty()) {
      t = cofibrant_replacement(a, n).cofibrant;
      r.say("replaced the presented quotient by its cofibrant model first");
    }
    GradedChain q = indecomposables(t, n);
    json hs = json::array();
    for (int m = 0; m <= q.top(); ++m) {
      AbelianGroup h = q.homology(m);
      hs.push_back(group_json(h));
      if (!h.is_trivial()) r.say("H_" + std::to_string(m) + "(I/I^2) = " + h.to_string());
    }
    r.data["ranks"] = q.ranks();
    r.data["homology"] = hs;
    r.check("indecomposables through degree " + std::to_string(n), q.square_zero() ? Status::Pass : Status::Fail);
  } else {
    if (!a.relations.empty()) throw CLI::ValidationError("tower needs a free algebra (no rel lines)");
    json stages = json::array();
    for (const auto& s : tower(a.free, o.length, n)) {
      stages.push_back({{"k", s.k}, {"ranks", s.chain.ranks()}, {"fiber_ranks", s.fiber.ranks()},
                        {"fiber_is_length_k", s.fiber_is_length_k},
                        {"fiber_is_tensor_power", s.fiber_is_tensor_power}, {"iso_below", s.iso_below}});
      const std::string at = "k=" + std::to_string(s.k);
      r.say("T_" + std::to_string(s.k) + " ranks " + join(s.chain.ranks()));
      r.check("fiber is the length-k words", s.fiber_is_length_k ? Status::Pass : Status::Fail, "", at);
      r.check("fiber is the k-th tensor power", s.fiber_is_tensor_power ? Status::Pass : Status::Fail, "", at);
      r.check("iso below degree 2k-2", s.iso_below ? Status::Pass : Status::Fail, "", at);
    }
    r.data["stages"] = stages;
  }
}

void cmd_james(const Options& o, Report& r) {
  need_inputs(o, 1, "--input X.ssx");
  JamesReport j = james_compare(load_ssx(o.inputs[0]), o.bound);
  std::vector<std::size_t> lhs, rhs;
  json degs = json::array();
  for (const auto& d : j.degrees) {
    lhs.push_back(d.algebra.free_rank);
    rhs.push_back(d.tensor_sum.free_rank);
    degs.push_back({{"degree", d.degree}, {"algebra", group_json(d.algebra)}, {"tensor_sum", group_json(d.tensor_sum)},
                    {"equal", d.equal}});
    if (!d.equal)
      r.check("degree " + std::to_string(d.degree), Status::Fail,
              d.algebra.to_string() + " vs " + d.tensor_sum.to_string());
  }
  r.say("H(T(C~X)) ranks:          " + join(lhs));
  r.say("sum_k H(C~X^(x)k) ranks:  " + join(rhs));
  r.data["degrees"] = degs;
  r.data["ranks_algebra"] = lhs;
  r.data["ranks_tensor_sum"] = rhs;
  r.check("James comparison through degree " + std::to_string(o.bound), j.all_equal ? Status::Pass : Status::Fail);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crx: crossed complexes, enriched categories, strictification and DGAs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("crx ") + kToolVersion);
  Options o;
  std::function<void(Report&)> run;

  // flags shared by every verb
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--bound", o.bound, "degree bound (default $CRX_BOUND or 10)")->check(CLI::PositiveNumber);
    return sub;
  };
  auto files = [&](CLI::App* sub, const std::string& help) {
    sub->add_option("inputs", o.inputs, help)->check(CLI::ExistingFile);
    return sub;
  };
  auto output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "write the result to this file"); };
  auto degree = [&](CLI::App* sub) {
    sub->add_option("--degree", o.degree, "degree")->check(CLI::NonNegativeNumber);
    sub->add_option("--basepoint", o.basepoint, "basepoint object");
  };

  files(common(app.add_subcommand("validate", "check the axioms of a .crx/.encat/.dga/.ssx file")), "file")
      ->parse_complete_callback([&] { run = [&](Report& r) { cmd_validate(o, r); }; });
  for (std::string v : {"tensor", "product", "collapse"}) {
    auto* sub = common(app.add_subcommand(v, v == "collapse" ? "the collapse map A (x) B -> A x B"
                                                            : v + " of two .crx files"));
    files(sub, "A.crx B.crx");
    output(sub);
    sub->parse_complete_callback([&, v] { run = [&, v](Report& r) { cmd_monoidal(v, o, r); }; });
  }
  {
    auto* sub = files(common(app.add_subcommand("kernel", "generators of the collapse kernel")), "A.crx B.crx");
    degree(sub);
    sub->parse_complete_callback([&] { run = [&](Report& r) { cmd_kernel(o, r); }; });
  }
  {
    auto* sub = files(common(app.add_subcommand("pi", "homotopy group pi_n")), "C.crx");
    degree(sub);
    sub->parse_complete_callback([&] { run = [&](Report& r) { cmd_pi(o, r); }; });
  }
  {
    auto* sub = files(common(app.add_subcommand("homology", "homology of a .crx, .ssx or .dga")), "file");
    degree(sub);
    sub->parse_complete_callback([&] { run = [&](Report& r) { cmd_homology(o, r); }; });
  }
  files(common(app.add_subcommand("weq", "C -> point, or the collapse A (x) B -> A x B, as a weak equivalence")),
        "C.crx | A.crx B.crx")
      ->parse_complete_callback([&] { run = [&](Report& r) { cmd_weq(o, r); }; });
  {
    auto* sub = files(common(app.add_subcommand("truncation", "n-truncation and n-connectivity")), "file");
    degree(sub);
    sub->add_option("--category", o.category, "category of an .encat file");
    sub->parse_complete_callback([&] { run = [&](Report& r) { cmd_truncation(o, r); }; });
  }

  using EncatCmd = std::function<void(const Options&, Report&, const EncatFile&)>;
  auto encat_verb = [&](CLI::App* sub, EncatCmd f) {
    sub->add_option("--category", o.category, "category name");
    sub->add_option("--word-bound", o.word_bound, "longest composite realized in a hom")->check(CLI::PositiveNumber);
    sub->add_option("--functor", o.functor, "functor name");
    sub->parse_complete_callback([&, f] {
      run = [&, f](Report& r) {
        need_inputs(o, 1, "one .encat file");
        f(o, r, load_encat(o.inputs[0]));
      };
    });
  };
  auto lift_flags = [&](CLI::App* sub) {
    sub->add_option("--against", o.against, "theta-tensor, theta-cartesian or point-interval");
    sub->add_option("--bottom", o.bottom, "bottom functor (default bottom_theta for theta squares, else bottom)");
  };
  {
    auto* enc = app.add_subcommand("encat", "enriched category operations");
    enc->require_subcommand(1);
    encat_verb(files(common(enc->add_subcommand("validate", "realize and validate every hom")), "file.encat"),
               validate_encat);
    encat_verb(files(common(enc->add_subcommand("ho", "the homotopy category")), "file.encat"), cmd_ho);
    auto* h21 = files(common(enc->add_subcommand("ho21", "the (2,1)-truncation")), "file.encat");
    output(h21);
    encat_verb(h21, cmd_ho21);
    encat_verb(files(common(enc->add_subcommand("diagnose", "fibration diagnostics of a functor")), "file.encat"),
               cmd_diagnose);
    auto* lift = files(common(enc->add_subcommand("lift", "search for a lift")), "file.encat");
    lift_flags(lift);
    encat_verb(lift, cmd_lift);
  }
  {
    auto* sub = common(app.add_subcommand("lift", "search for a lift in a square"));
    sub->add_option("--square", o.inputs, "file.encat holding F and the bottom map")
        ->check(CLI::ExistingFile)
        ->required();
    lift_flags(sub);
    encat_verb(sub, cmd_lift);
  }
  encat_verb(files(common(app.add_subcommand("diagnose", "fibration diagnostics of a functor")), "file.encat"),
             cmd_diagnose);
  {
    auto* sub = files(common(app.add_subcommand("strictify", "global strictification of a tensor category")),
                      "file.encat");
    output(sub);
    sub->add_option("--log", o.log, "write the kernel log as JSON to this file");
    sub->add_option("--category", o.category, "category name");
    sub->parse_complete_callback([&] { run = [&](Report& r) { cmd_strictify(o, r); }; });
  }
  {
    auto* dga = app.add_subcommand("dga", "DGA operations");
    dga->require_subcommand(1);
    for (std::string v : {"replace", "indec", "tower"}) {
      auto* sub = files(common(dga->add_subcommand(v, v == "replace" ? "cofibrant replacement"
                                                       : v == "indec" ? "indecomposables I/I^2"
                                                                      : "word-length tower")),
                        "file.dga");
      if (v == "tower") sub->add_option("--length", o.length, "number of stages")->check(CLI::PositiveNumber);
      sub->parse_complete_callback([&, v] { run = [&, v](Report& r) { cmd_dga(v, o, r); }; });
    }
    auto* j = common(dga->add_subcommand("james", "same as crx james"));
    j->add_option("--input", o.inputs, "X.ssx")->check(CLI::ExistingFile)->required();
    j->parse_complete_callback([&] { run = [&](Report& r) { cmd_james(o, r); }; });
  }
  {
    auto* sub = common(app.add_subcommand("james", "compare H(T(C~X)) with the sum of H(C~X^(x)k)"));
    sub->add_option("--input", o.inputs, "X.ssx")->check(CLI::ExistingFile)->required();
    sub->parse_complete_callback([&] { run = [&](Report& r) { cmd_james(o, r); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Report r;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    r.verb += (r.verb.empty() ? "" : " ") + sub->get_name();
  }
  r.inputs = o.inputs;
  r.bounds = {{"degree", o.bound}, {"word", o.word_bound}};
  r.default_blocking = "degree bound " + std::to_string(o.bound);

  auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    run(r);
    code = r.exit_code();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "crx " << r.verb << ": " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "crx: " << e.what() << "\n";
    return 2;
  } catch (const TruncationError& e) {
    r.check(r.verb, Status::Undecided, e.what(), "", "degree bound " + std::to_string(o.bound));
    code = 3;
  } catch (const ResourceBound& e) {
    r.check(r.verb, Status::Undecided, e.what(), "", "resource bound");
    code = 3;
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.rfind("cannot read ", 0) == 0) {
      std::cerr << "crx: " << what << "\n";
      return 2;
    }
    r.check(r.verb, Status::Fail, what);
    code = 1;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.print(std::cout, o.format, ms);
  return code;
}
