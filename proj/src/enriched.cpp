#include "crx/enriched.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "crx/errors.hpp"
#include "crx/format.hpp"
#include "crx/normalizer.hpp"

namespace crx {

// ---------------------------------------------------------------------------
// Structured homs

std::string StructuredHom::to_string() const {
  switch (kind) {
    case HomKind::Empty:
      return "empty";
    case HomKind::Point:
      return "point(" + point + ")";
    case HomKind::Contractible:
      return "contractible(Z)";
    case HomKind::Group:
      return modulus == 0 ? "group(Z)" : "group(Z/" + std::to_string(modulus) + ")";
  }
  return "empty";
}

StructuredHom parse_structured(const std::string& text) {
  std::string t = text;
  if (t.rfind("structured:", 0) == 0) t = t.substr(11);
  StructuredHom h;
  auto inner = [&](const std::string& head) -> std::optional<std::string> {
    if (t.rfind(head + "(", 0) != 0 || t.back() != ')') return std::nullopt;
    return t.substr(head.size() + 1, t.size() - head.size() - 2);
  };
  if (t == "empty") return h;
  if (auto p = inner("point")) {
    if (p->empty()) throw DomainError("point() needs a name");
    h.kind = HomKind::Point;
    h.point = *p;
    return h;
  }
  if (auto p = inner("contractible")) {
    if (*p != "Z") throw DomainError("only contractible(Z) is supported, got " + text);
    h.kind = HomKind::Contractible;
    return h;
  }
  if (auto p = inner("group")) {
    h.kind = HomKind::Group;
    if (*p == "Z") return h;
    if (p->rfind("Z/", 0) == 0) {
      try {
        h.modulus = std::stol(p->substr(2));
      } catch (const std::logic_error&) {
        throw DomainError("bad modulus in " + text);
      }
      if (h.modulus < 1) throw DomainError("bad modulus in " + text);
      return h;
    }
  }
  throw DomainError("unknown structured hom " + text);
}

// ---------------------------------------------------------------------------
// Presentations

void EnrichedPresentation::add_object(const std::string& x) {
  if (has_object(x)) throw DomainError("duplicate object " + x);
  if (x.empty() || x.find_first_of(" \t.") != std::string::npos) throw DomainError("bad object name '" + x + "'");
  objects.push_back(x);
}

void EnrichedPresentation::add_cell(EnrichedCell c) {
  if (!has_object(c.x) || !has_object(c.y)) throw DomainError("cell " + c.name + " between unknown objects");
  if (c.name.empty() || c.name.find_first_of(" \t.") != std::string::npos || c.name.rfind("id_", 0) == 0 ||
      c.name.rfind("1_", 0) == 0 || c.name.rfind("comp(", 0) == 0)
    throw DomainError("bad cell name '" + c.name + "'");
  if (find_cell(c.name)) throw DomainError("duplicate cell " + c.name);
  if (c.degree < 0) throw DomainError("negative degree for " + c.name);
  if (!structured.empty()) throw DomainError("cells cannot be added to a structured presentation");
  cells.push_back(std::move(c));
}

void EnrichedPresentation::set_hom(const std::string& x, const std::string& y, StructuredHom h) {
  if (!has_object(x) || !has_object(y)) throw DomainError("hom between unknown objects");
  if (!cells.empty()) throw DomainError("structured homs cannot be mixed with cells");
  structured[{x, y}] = std::move(h);
}

bool EnrichedPresentation::has_object(const std::string& x) const {
  return std::find(objects.begin(), objects.end(), x) != objects.end();
}

const EnrichedCell* EnrichedPresentation::find_cell(const std::string& n) const {
  for (const auto& c : cells)
    if (c.name == n) return &c;
  return nullptr;
}

const EnrichedCell& EnrichedPresentation::cell(const std::string& n) const {
  const EnrichedCell* c = find_cell(n);
  if (!c) throw UnknownGenerator("no cell named " + n + " in " + name);
  return *c;
}

StructuredHom EnrichedPresentation::hom_kind(const std::string& x, const std::string& y) const {
  auto it = structured.find({x, y});
  if (it == structured.end()) return {};
  return it->second;
}

int EnrichedPresentation::max_degree() const {
  int d = 0;
  for (const auto& c : cells) d = std::max(d, c.degree);
  if (is_structured()) d = std::max(d, 1);
  return d;
}

std::string RealizeOptions::label() const {
  std::ostringstream os;
  os << "word length <= " << word_bound;
  if (degree_bound >= 0) os << ", degree <= " << degree_bound;
  os << ", window " << window;
  return os.str();
}

// ---------------------------------------------------------------------------
// Names

std::string join_names(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty() || p.rfind("id_", 0) == 0) continue;
    if (!out.empty()) out += '.';
    out += p;
  }
  return out;
}

std::vector<std::string> split_name(const std::string& name) {
  std::vector<std::string> out;
  if (name.rfind("id_", 0) == 0) return out;
  std::string cur;
  for (char c : name) {
    if (c == '.') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t name_length(const std::string& name) { return split_name(name).size(); }

namespace {

std::string join_in(const std::string& x, const std::vector<std::string>& parts) {
  std::string j = join_names(parts);
  return j.empty() ? "id_" + x : j;
}

CrxWord identity_word(int degree, const std::string& base) {
  if (degree == 0) return CrxWord::of_object(base);
  if (degree == 1) return CrxWord::of_path(PathWord::identity(base));
  return CrxWord::of_higher(HigherWord::identity(degree, base));
}

void collect(const PathWord& p, std::set<std::string>& objs, std::set<std::pair<int, std::string>>& gens) {
  objs.insert(p.start());
  for (const auto& s : p.steps()) {
    objs.insert(s.from);
    objs.insert(s.to);
    gens.insert({1, s.gen});
  }
}

void collect(const CrxWord& w, std::set<std::string>& objs, std::set<std::pair<int, std::string>>& gens) {
  if (w.degree == 0) {
    objs.insert(w.object);
  } else if (w.degree == 1) {
    collect(w.path, objs, gens);
  } else {
    objs.insert(w.higher.base());
    for (const auto& t : w.higher.terms()) {
      gens.insert({w.degree, t.gen});
      collect(t.actor, objs, gens);
    }
  }
}

bool present(const Presentation& p, const CrxWord& w) {
  std::set<std::string> objs;
  std::set<std::pair<int, std::string>> gens;
  collect(w, objs, gens);
  for (const auto& o : objs)
    if (!p.has_object(o)) return false;
  for (const auto& [d, g] : gens)
    if (!p.find(g, d)) return false;
  return true;
}

PathWord rename_path(const PathWord& p, const std::function<std::string(const std::string&)>& obj,
                     const std::function<std::string(const std::string&)>& gen) {
  std::vector<Step> steps;
  for (const auto& s : p.steps()) steps.push_back({gen(s.gen), s.inverse, obj(s.from), obj(s.to)});
  return PathWord(obj(p.start()), steps);
}

CrxWord rename(const CrxWord& w, const std::function<std::string(const std::string&)>& obj,
               const std::function<std::string(const std::string&)>& gen) {
  if (w.degree == 0) return CrxWord::of_object(obj(w.object));
  if (w.degree == 1) return CrxWord::of_path(rename_path(w.path, obj, gen));
  std::vector<Term> terms;
  for (const auto& t : w.higher.terms()) terms.push_back({gen(t.gen), t.exp, rename_path(t.actor, obj, gen)});
  return CrxWord::of_higher(HigherWord(w.degree, obj(w.higher.base()), terms));
}

// u . w . v with u a degree-0 composite in hom(a, x) and v one in hom(y, b).
CrxWord whisker(const CrxWord& w, const std::string& a, const std::string& u, const std::string& v) {
  auto f = [&](const std::string& n) { return join_in(a, {u, n, v}); };
  return rename(w, f, f);
}

// Splits a word at top-level whitespace; brackets and parentheses nest.
std::vector<std::string> split_top(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (depth < 0) throw DomainError("unbalanced brackets in " + text);
    if (depth == 0 && (c == ' ' || c == '\t')) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw DomainError("unbalanced brackets in " + text);
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct CompToken {
  std::string a, b;
  long exp = 1;
};

std::optional<CompToken> parse_comp(const std::string& tok) {
  if (tok.rfind("comp(", 0) != 0) return std::nullopt;
  int depth = 0;
  std::size_t close = std::string::npos, comma = std::string::npos;
  for (std::size_t i = 4; i < tok.size(); ++i) {
    char c = tok[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') {
      --depth;
      if (depth == 0) {
        close = i;
        break;
      }
    }
    if (c == ',' && depth == 1 && comma == std::string::npos) comma = i;
  }
  if (close == std::string::npos || comma == std::string::npos) throw DomainError("malformed " + tok);
  CompToken out;
  out.a = trim(tok.substr(5, comma - 5));
  out.b = trim(tok.substr(comma + 1, close - comma - 1));
  std::string rest = tok.substr(close + 1);
  if (!rest.empty()) {
    if (rest[0] != '^') throw DomainError("unexpected suffix in " + tok);
    try {
      out.exp = std::stol(rest.substr(1));
    } catch (const std::logic_error&) {
      throw DomainError("bad exponent in " + tok);
    }
  }
  return out;
}

// The letter part of a token: "f.l2.g^-1^[..]" -> "f.l2.g".
std::string letter_name(const std::string& tok) {
  if (tok.rfind("1_", 0) == 0) return tok;
  return tok.substr(0, tok.find_first_of("^["));
}

}  // namespace

std::size_t word_length(const CrxWord& w) {
  std::set<std::string> objs;
  std::set<std::pair<int, std::string>> gens;
  collect(w, objs, gens);
  std::size_t n = 0;
  for (const auto& o : objs) n = std::max(n, name_length(o));
  for (const auto& g : gens) n = std::max(n, name_length(g.second));
  return n;
}

// ---------------------------------------------------------------------------
// Realization

namespace {

struct Seq {
  std::vector<std::size_t> cells;
  std::string x, y;
  int degree = 0;     // tensor: sum; cartesian: max
  int positives = 0;  // cells of positive degree
  std::string name;
};

bool seq_less(const Seq& a, const Seq& b) {
  if (a.cells.size() != b.cells.size()) return a.cells.size() < b.cells.size();
  return a.cells < b.cells;
}

// Value of a structured object or (src, tgt, winding) of a structured path.
long object_value(const HomRealization& h, const std::string& o) {
  if (h.kind == HomKind::Contractible) return std::stol(o);
  return 0;
}

struct PathData {
  long src = 0, tgt = 0, wind = 0;
};

PathData path_value(const HomRealization& h, const PathWord& p) {
  PathData d{object_value(h, p.start()), object_value(h, p.end()), 0};
  for (const auto& s : p.steps()) d.wind += s.inverse ? -1 : 1;
  return d;
}

std::string contractible_name(long v) { return std::to_string(v); }
std::string contractible_edge(long v) { return "e" + std::to_string(v); }  // v -> v+1

CrxWord structured_object(const HomRealization& h, long v) {
  switch (h.kind) {
    case HomKind::Empty:
      throw DomainError("empty hom has no objects");
    case HomKind::Point:
      return CrxWord::of_object(h.structured.point);
    case HomKind::Group:
      return CrxWord::of_object("*");
    case HomKind::Contractible:
      if (!h.complex->has_object(contractible_name(v)))
        throw ResourceBound("label " + std::to_string(v) + " is outside the realized window");
      return CrxWord::of_object(contractible_name(v));
  }
  throw DomainError("bad hom kind");
}

CrxWord structured_path(const HomRealization& h, const PathData& d) {
  switch (h.kind) {
    case HomKind::Empty:
      throw DomainError("empty hom has no paths");
    case HomKind::Point:
      return CrxWord::of_path(PathWord::identity(h.structured.point));
    case HomKind::Group: {
      PathWord s = h.complex->edge("s");
      return CrxWord::of_path(d.wind == 0 ? PathWord::identity("*") : s.power(d.wind));
    }
    case HomKind::Contractible: {
      std::string a = structured_object(h, d.src).object;
      structured_object(h, d.tgt);
      PathWord p = PathWord::identity(a);
      for (long v = d.src; v < d.tgt; ++v) p = p.then(h.complex->edge(contractible_edge(v)));
      for (long v = d.src; v > d.tgt; --v) p = p.then(h.complex->edge(contractible_edge(v - 1), true));
      return CrxWord::of_path(p);
    }
  }
  throw DomainError("bad hom kind");
}

}  // namespace

EnrichedCategory::EnrichedCategory(EnrichedPtr cat, RealizeOptions opts) : cat_(std::move(cat)), opts_(opts) {
  degree_bound_ = opts_.degree_bound >= 0 ? std::min(opts_.degree_bound, cat_->bound) : cat_->bound;
  if (cat_->is_structured())
    build_structured();
  else
    build_cellular();
}

const HomRealization& EnrichedCategory::hom(const std::string& x, const std::string& y) const {
  auto it = homs_.find({x, y});
  if (it == homs_.end()) throw DomainError("no object pair (" + x + ", " + y + ") in " + cat_->name);
  return it->second;
}

void EnrichedCategory::build_structured() {
  const auto& c = *cat_;
  for (const auto& x : c.objects)
    for (const auto& y : c.objects) {
      HomRealization h;
      h.structured = c.hom_kind(x, y);
      h.kind = h.structured.kind;
      auto p = std::make_shared<Presentation>(c.name + "(" + x + "," + y + ")", degree_bound_);
      switch (h.kind) {
        case HomKind::Empty:
          break;
        case HomKind::Point:
          p->add_object(h.structured.point);
          break;
        case HomKind::Group:
          p->add_object("*");
          p->add_edge("s", "*", "*");
          if (h.structured.modulus > 0)
            p->add_relation(1, CrxWord::of_path(p->edge("s").power(h.structured.modulus)),
                            CrxWord::of_path(PathWord::identity("*")));
          break;
        case HomKind::Contractible:
          for (long v = -opts_.window; v <= opts_.window; ++v) p->add_object(contractible_name(v));
          for (long v = -opts_.window; v < opts_.window; ++v)
            p->add_edge(contractible_edge(v), contractible_name(v), contractible_name(v + 1));
          break;
      }
      h.complex = p;
      homs_[{x, y}] = std::move(h);
    }
}

void EnrichedCategory::build_cellular() {
  const auto& c = *cat_;
  const bool tensor_flavor = c.flavor == Flavor::Tensor;
  const int L = std::max(1, opts_.word_bound);
  const int D = degree_bound_;

  std::map<std::string, std::vector<std::size_t>> out_cells;
  for (std::size_t i = 0; i < c.cells.size(); ++i) out_cells[c.cells[i].x].push_back(i);

  // Enumerate composable sequences by length, so a cut-off keeps the short ones.
  std::vector<Seq> seqs;
  std::vector<Seq> level;
  for (const auto& x : c.objects) {
    Seq s;
    s.x = s.y = x;
    level.push_back(s);
  }
  for (int len = 1; !level.empty(); ++len) {
    std::vector<Seq> next;
    for (const auto& s : level) {
      auto it = out_cells.find(s.y);
      if (it == out_cells.end()) continue;
      if (len > L) {
        truncated_ = true;
        break;
      }
      for (std::size_t i : it->second) {
        const EnrichedCell& cell = c.cells[i];
        int pos = s.positives + (cell.degree > 0 ? 1 : 0);
        int deg = tensor_flavor ? s.degree + cell.degree : std::max(s.degree, cell.degree);
        if (deg > D) continue;
        if (!tensor_flavor && pos > 2) continue;
        if (seqs.size() >= opts_.max_generators) {
          truncated_ = true;
          break;
        }
        Seq t = s;
        t.cells.push_back(i);
        t.y = cell.y;
        t.degree = deg;
        t.positives = pos;
        seqs.push_back(t);
        next.push_back(t);
      }
    }
    level = std::move(next);
  }
  for (auto& s : seqs) {
    std::vector<std::string> parts;
    for (std::size_t i : s.cells) parts.push_back(c.cells[i].name);
    s.name = join_in(s.x, parts);
  }
  std::stable_sort(seqs.begin(), seqs.end(), seq_less);

  std::map<std::pair<std::string, std::string>, std::shared_ptr<Presentation>> ps;
  for (const auto& x : c.objects)
    for (const auto& y : c.objects) {
      auto p = std::make_shared<Presentation>(c.name + "(" + x + "," + y + ")", D);
      if (x == y) p->add_object("id_" + x);
      ps[{x, y}] = p;
    }
  for (const auto& s : seqs)
    if (s.positives == 0) ps[{s.x, s.y}]->add_object(s.name);

  // Publish the presentations so the parser can see them while building.
  for (auto& [k, p] : ps) {
    HomRealization h;
    h.complex = p;
    homs_[k] = h;
  }

  auto skip = [&](const std::string& why) {
    (void)why;
    truncated_ = true;
  };

  // Prefix/suffix of a sequence around its cells [from, to).
  auto sub_name = [&](const Seq& s, std::size_t from, std::size_t to, const std::string& start) {
    std::vector<std::string> parts;
    for (std::size_t i = from; i < to; ++i) parts.push_back(c.cells[s.cells[i]].name);
    return join_in(start, parts);
  };
  auto object_at = [&](const Seq& s, std::size_t k) {  // object before cell k
    return k == 0 ? s.x : c.cells[s.cells[k - 1]].y;
  };

  for (int d = 1; d <= D; ++d) {
    // single cells first, in declaration order
    for (const auto& cell : c.cells) {
      if (cell.degree != d) continue;
      Presentation& p = *ps[{cell.x, cell.y}];
      try {
        if (d == 1) {
          std::size_t arrow = cell.boundary.find("->");
          if (arrow == std::string::npos) throw DomainError("degree-1 cell " + cell.name + " needs 'src -> tgt'");
          std::string s = parse_object(cell.x, cell.y, trim(cell.boundary.substr(0, arrow)));
          std::string t = parse_object(cell.x, cell.y, trim(cell.boundary.substr(arrow + 2)));
          p.add_edge(cell.name, s, t);
        } else {
          CrxWord b = parse(cell.x, cell.y, d - 1, cell.boundary);
          p.add_cell(cell.name, d, b);
        }
      } catch (const UnknownGenerator& e) {
        throw ResourceBound("boundary of " + cell.name + " is outside the realization (" + opts_.label() +
                            "): " + e.what());
      }
    }
    for (const auto& s : seqs) {
      if (s.cells.size() < 2 || s.positives == 0 || s.degree != d) continue;
      if (!tensor_flavor && s.positives != 1) continue;
      Presentation& p = *ps[{s.x, s.y}];
      CrxWord bd;
      if (s.positives == 1) {
        std::size_t k = 0;
        while (c.cells[s.cells[k]].degree == 0) ++k;
        const EnrichedCell& cell = c.cells[s.cells[k]];
        std::string u = sub_name(s, 0, k, s.x), v = sub_name(s, k + 1, s.cells.size(), cell.y);
        const Presentation& home = *ps[{cell.x, cell.y}];
        const Generator* g = home.find(cell.name, d);
        if (!g) {
          skip(s.name);
          continue;
        }
        if (d == 1) {
          std::string src = join_in(s.x, {u, g->source, v}), tgt = join_in(s.x, {u, g->target, v});
          if (!p.has_object(src) || !p.has_object(tgt)) {
            skip(s.name);
            continue;
          }
          p.add_edge(s.name, src, tgt);
          continue;
        }
        bd = whisker(g->boundary, s.x, u, v);
      } else {
        std::size_t last = s.cells.size() - 1;
        const EnrichedCell& cell = c.cells[s.cells[last]];
        std::string mid = object_at(s, last);
        std::string pname = sub_name(s, 0, last, s.x);
        int m = d - cell.degree, n = cell.degree;
        const Presentation& lp = *ps[{s.x, mid}];
        const Presentation& rp = *ps[{mid, cell.y}];
        const Generator* pg = lp.find(pname, m);
        const Generator* cg = n > 0 ? rp.find(cell.name, n) : nullptr;
        if (!pg || (n > 0 && !cg) || (n == 0 && !rp.has_object(cell.name))) {
          skip(s.name);
          continue;
        }
        TensorContext ctx;
        ctx.left = [&lp](const std::string& nm, int deg) {
          const Generator& g = lp.get(nm, deg);
          return CellInfo{g.source, g.target, g.base};
        };
        ctx.right = [&rp](const std::string& nm, int deg) {
          const Generator& g = rp.get(nm, deg);
          return CellInfo{g.source, g.target, g.base};
        };
        std::string x0 = s.x;
        ctx.object_name = [x0](const std::string& a, const std::string& b) { return join_in(x0, {a, b}); };
        ctx.cell_name = [x0](const std::string& a, int, const std::string& b, int) { return join_in(x0, {a, b}); };
        try {
          bd = tensor_generator_boundary(ctx, pname, m, m >= 2 ? &pg->boundary : nullptr, cell.name, n,
                                         n >= 2 ? &cg->boundary : nullptr);
        } catch (const UnknownGenerator&) {
          skip(s.name);
          continue;
        }
      }
      if (!present(p, bd)) {
        skip(s.name);
        continue;
      }
      p.add_cell(s.name, d, bd);
    }
  }

  // Product relations for composites of two positive cells.
  if (!tensor_flavor) {
    for (const auto& s : seqs) {
      if (s.positives != 2) continue;
      std::vector<std::size_t> pos;
      for (std::size_t k = 0; k < s.cells.size(); ++k)
        if (c.cells[s.cells[k]].degree > 0) pos.push_back(k);
      const EnrichedCell& ce = c.cells[s.cells[pos[0]]];
      const EnrichedCell& de = c.cells[s.cells[pos[1]]];
      Presentation& p = *ps[{s.x, s.y}];
      std::size_t n = s.cells.size();
      std::string u = sub_name(s, 0, pos[0], s.x);
      std::string mid = sub_name(s, pos[0] + 1, pos[1], ce.y);
      std::string w = sub_name(s, pos[1] + 1, n, de.y);
      const Generator* cg = ps[{ce.x, ce.y}]->find(ce.name, ce.degree);
      const Generator* dg = ps[{de.x, de.y}]->find(de.name, de.degree);
      if (!cg || !dg) {
        skip(s.name);
        continue;
      }
      // the composite with c replaced by an object, or d replaced by an object
      auto with_c = [&](const std::string& cn) { return join_in(s.x, {u, cn, mid, de.name, w}); };
      auto with_d = [&](const std::string& dn) { return join_in(s.x, {u, ce.name, mid, dn, w}); };
      auto obj_c = [&](const std::string& co, const std::string& dn) { return join_in(s.x, {u, co, mid, dn, w}); };
      try {
        if (ce.degree == 1 && de.degree == 1) {
          PathWord lhs = p.edge(with_d(dg->source)).then(p.edge(obj_c(cg->target, de.name)));
          PathWord rhs = p.edge(obj_c(cg->source, de.name)).then(p.edge(with_d(dg->target)));
          p.add_relation(1, CrxWord::of_path(lhs), CrxWord::of_path(rhs));
        } else if (ce.degree == 1) {
          HigherWord lhs = p.generator_word(obj_c(cg->source, de.name), de.degree)
                               .higher.act(p.edge(obj_c(ce.name, dg->base)));
          CrxWord rhs = p.generator_word(obj_c(cg->target, de.name), de.degree);
          p.add_relation(de.degree, CrxWord::of_higher(lhs), rhs);
        } else if (de.degree == 1) {
          HigherWord lhs =
              p.generator_word(with_d(dg->source), ce.degree).higher.act(p.edge(obj_c(cg->base, de.name)));
          CrxWord rhs = p.generator_word(with_d(dg->target), ce.degree);
          p.add_relation(ce.degree, CrxWord::of_higher(lhs), rhs);
        }
      } catch (const Error&) {
        skip(s.name);
      }
      (void)with_c;
    }
  }

  // Category relations, whiskered by degree-0 composites.
  for (const auto& r : c.relations) {
    CrxWord lhs = parse(r.x, r.y, r.degree, r.lhs);
    CrxWord rhs = parse(r.x, r.y, r.degree, r.rhs);
    for (const auto& a : c.objects)
      for (const auto& b : c.objects) {
        const Presentation& pre = *ps[{a, r.x}];
        const Presentation& post = *ps[{r.y, b}];
        for (const auto& u : pre.objects())
          for (const auto& v : post.objects()) {
            CrxWord l2 = whisker(lhs, a, u, v), r2 = whisker(rhs, a, u, v);
            Presentation& p = *ps[{a, b}];
            if (present(p, l2) && present(p, r2))
              p.add_relation(r.degree, l2, r2);
            else
              skip("relation");
          }
      }
  }
}

CrxWord EnrichedCategory::unit(const std::string& x) const {
  if (!cat_->has_object(x)) throw DomainError("unknown object " + x);
  if (cat_->is_structured()) {
    const HomRealization& h = hom(x, x);
    return structured_object(h, 0);
  }
  return CrxWord::of_object("id_" + x);
}

CrxWord EnrichedCategory::cell(const std::string& name) const {
  const EnrichedCell& c = cat_->cell(name);
  if (c.degree == 0) return CrxWord::of_object(name);
  const Presentation& p = *hom(c.x, c.y).complex;
  if (!p.find(name, c.degree))
    throw ResourceBound("cell " + name + " is outside the realization (" + opts_.label() + ")");
  return p.generator_word(name, c.degree);
}

long EnrichedCategory::value_of(const std::string& x, const std::string& y, const std::string& object) const {
  return object_value(hom(x, y), object);
}

CrxWord EnrichedCategory::compose(const std::string& x, const std::string& y, const std::string& z,
                                  const CrxWord& u, const CrxWord& v, Flavor as) const {
  const HomRealization& hl = hom(x, y);
  const HomRealization& hr = hom(y, z);
  const HomRealization& ht = hom(x, z);
  int m = u.degree, n = v.degree;
  bool both = m > 0 && n > 0;

  if (cat_->is_structured()) {
    if (both && (as == Flavor::Tensor || m >= 2)) {
      long b = object_value(hl, u.basepoint()) + object_value(hr, v.basepoint());
      int deg = as == Flavor::Tensor ? m + n : m;
      if (as == Flavor::Cartesian && m != n) throw DomainError("composite of cells of different degrees");
      return identity_word(deg, structured_object(ht, b).object);
    }
    if (m >= 2 || n >= 2) {
      long b = object_value(hl, u.basepoint()) + object_value(hr, v.basepoint());
      return identity_word(std::max(m, n), structured_object(ht, b).object);
    }
    if (m == 0 && n == 0) return structured_object(ht, object_value(hl, u.object) + object_value(hr, v.object));
    PathData a = m == 1 ? path_value(hl, u.path) : PathData{object_value(hl, u.object), object_value(hl, u.object), 0};
    PathData b = n == 1 ? path_value(hr, v.path) : PathData{object_value(hr, v.object), object_value(hr, v.object), 0};
    return structured_path(ht, {a.src + b.src, a.tgt + b.tgt, a.wind + b.wind});
  }

  const Presentation& lp = *hl.complex;
  const Presentation& rp = *hr.complex;
  const Presentation& tp = *ht.complex;
  TensorContext ctx;
  ctx.left = [&lp](const std::string& nm, int deg) {
    const Generator& g = lp.get(nm, deg);
    return CellInfo{g.source, g.target, g.base};
  };
  ctx.right = [&rp](const std::string& nm, int deg) {
    const Generator& g = rp.get(nm, deg);
    return CellInfo{g.source, g.target, g.base};
  };
  ctx.object_name = [x](const std::string& a, const std::string& b) { return join_in(x, {a, b}); };
  ctx.cell_name = [x](const std::string& a, int, const std::string& b, int) { return join_in(x, {a, b}); };

  CrxWord out;
  if (both && cat_->flavor == Flavor::Cartesian) {
    if (as == Flavor::Tensor) {
      out = identity_word(m + n, join_in(x, {u.basepoint(), v.basepoint()}));
    } else if (m != n) {
      throw DomainError("composite of cells of degrees " + std::to_string(m) + " and " + std::to_string(n) +
                        " in a cartesian category");
    } else if (m == 1) {
      PathWord a = tensor_element(ctx, u, CrxWord::of_object(v.path.start())).path;
      PathWord b = tensor_element(ctx, CrxWord::of_object(u.path.end()), v).path;
      out = CrxWord::of_path(a.then(b));
    } else {
      HigherWord a = tensor_element(ctx, u, CrxWord::of_object(v.higher.base())).higher;
      HigherWord b = tensor_element(ctx, CrxWord::of_object(u.higher.base()), v).higher;
      out = CrxWord::of_higher(a.times(b));
    }
  } else if (both && as == Flavor::Cartesian) {
    throw DomainError("cartesian composite of two positive-degree elements in a tensor category");
  } else {
    try {
      out = tensor_element(ctx, u, v);
    } catch (const UnknownGenerator& e) {
      throw ResourceBound(std::string("composite outside the realization: ") + e.what());
    }
  }
  if (!present(tp, out))
    throw ResourceBound("composite " + out.to_string() + " is outside the realized hom(" + x + ", " + z + ") (" +
                        opts_.label() + ")");
  return out;
}

namespace {

// Endpoints of a token in the category, read off its first letter.
std::optional<std::pair<std::string, std::string>> token_hom(const EnrichedPresentation& c, const std::string& tok) {
  if (auto ct = parse_comp(tok)) {
    auto a = split_top(ct->a), b = split_top(ct->b);
    if (a.empty() || b.empty()) return std::nullopt;
    auto ha = token_hom(c, a[0]), hb = token_hom(c, b[0]);
    if (!ha || !hb) return std::nullopt;
    return std::make_pair(ha->first, hb->second);
  }
  std::string n = letter_name(tok);
  if (n.rfind("1_", 0) == 0) n = n.substr(2);
  if (n.rfind("id_", 0) == 0) return std::make_pair(n.substr(3), n.substr(3));
  auto parts = split_name(n);
  const EnrichedCell* first = c.find_cell(parts.front());
  const EnrichedCell* last = c.find_cell(parts.back());
  if (!first || !last) return std::nullopt;
  return std::make_pair(first->x, last->y);
}

std::optional<int> token_degree(const EnrichedPresentation& c, const std::string& tok) {
  if (auto ct = parse_comp(tok)) {
    auto a = split_top(ct->a), b = split_top(ct->b);
    auto da = a.empty() ? std::nullopt : token_degree(c, a[0]);
    auto db = b.empty() ? std::nullopt : token_degree(c, b[0]);
    if (!da || !db) return std::nullopt;
    return c.flavor == Flavor::Tensor ? *da + *db : std::max(*da, *db);
  }
  std::string n = letter_name(tok);
  if (n.rfind("1_", 0) == 0) return std::nullopt;
  if (n.rfind("id_", 0) == 0) return 0;
  int d = 0;
  for (const auto& part : split_name(n)) {
    const EnrichedCell* cell = c.find_cell(part);
    if (!cell) return std::nullopt;
    d = c.flavor == Flavor::Tensor ? d + cell->degree : std::max(d, cell->degree);
  }
  return d;
}

}  // namespace

std::string EnrichedCategory::parse_object(const std::string& x, const std::string& y, const std::string& text) const {
  CrxWord w = parse(x, y, 0, text);
  return w.object;
}

CrxWord EnrichedCategory::parse(const std::string& x, const std::string& y, int degree,
                                const std::string& text) const {
  const HomRealization& h = hom(x, y);
  const Presentation& p = *h.complex;
  std::vector<std::string> toks = split_top(trim(text));
  if (toks.empty()) throw DomainError("empty word in hom(" + x + ", " + y + ")");

  // Evaluates one token to an element of the given degree.
  auto piece = [&](const std::string& tok) -> CrxWord {
    if (auto ct = parse_comp(tok)) {
      auto a = split_top(ct->a), b = split_top(ct->b);
      if (a.empty() || b.empty()) throw DomainError("empty argument in " + tok);
      auto ha = token_hom(*cat_, a[0]);
      if (!ha) throw DomainError("cannot place " + ct->a + " in a hom");
      std::string mid = ha->second;
      auto da = token_degree(*cat_, a[0]), db = token_degree(*cat_, b[0]);
      bool tens = cat_->flavor == Flavor::Tensor;
      int ma, mb;
      if (da) {
        ma = *da;
        mb = db ? *db : (tens ? degree - ma : degree);
      } else if (db) {
        mb = *db;
        ma = tens ? degree - mb : degree;
      } else {
        ma = degree;
        mb = tens ? 0 : degree;
      }
      CrxWord ua = parse(x, mid, ma, ct->a);
      CrxWord ub = parse(mid, y, mb, ct->b);
      CrxWord r = compose(x, mid, y, ua, ub);
      if (r.degree != degree)
        throw DomainError(tok + " has degree " + std::to_string(r.degree) + ", expected " + std::to_string(degree));
      if (ct->exp == 1) return r;
      if (degree == 0) throw DomainError("exponent on an object in " + tok);
      if (degree == 1) return CrxWord::of_path(r.path.power(ct->exp));
      return CrxWord::of_higher(r.higher.power(ct->exp));
    }
    return parse_word(p, degree, tok);
  };

  if (degree == 0) {
    if (toks.size() != 1) throw DomainError("expected a single object, got " + text);
    CrxWord w = piece(toks[0]);
    if (!p.has_object(w.object)) throw UnknownGenerator("no object " + w.object + " in hom(" + x + ", " + y + ")");
    return w;
  }
  std::optional<CrxWord> acc;
  for (const auto& tok : toks) {
    CrxWord w = piece(tok);
    if (!acc) {
      acc = w;
    } else if (degree == 1) {
      acc = CrxWord::of_path(acc->path.then(w.path));
    } else {
      if (acc->higher.base() != w.higher.base())
        throw CompositionError("letter " + tok + " is based at " + w.higher.base() + ", word at " +
                               acc->higher.base());
      acc = CrxWord::of_higher(acc->higher.times(w.higher));
    }
  }
  return *acc;
}

// ---------------------------------------------------------------------------
// Realization cache

namespace {

struct CacheKey {
  const EnrichedPresentation* cat;
  RealizeOptions opts;
  auto operator<=>(const CacheKey&) const = default;
};

std::mutex cache_mutex;
std::map<CacheKey, std::pair<EnrichedPtr, CategoryPtr>>& cache() {
  static std::map<CacheKey, std::pair<EnrichedPtr, CategoryPtr>> c;
  return c;
}

}  // namespace

CategoryPtr realize(const EnrichedPtr& cat, const RealizeOptions& opts) {
  CacheKey key{cat.get(), opts};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second.second;
  }
  auto r = std::make_shared<const EnrichedCategory>(cat, opts);
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache()[key] = {cat, r};
  return r;
}

RealizeOptions options_for(const EnrichedPresentation& cat) {
  RealizeOptions o;
  std::size_t len = 1;
  auto scan = [&](const std::string& text) {
    std::string t = text;
    for (char& ch : t)
      if (ch == '(' || ch == ')' || ch == ',' || ch == '>') ch = ' ';
    for (const auto& tok : split_top(t)) {
      std::string n = letter_name(tok);
      if (n.rfind("1_", 0) == 0) n = n.substr(2);
      len = std::max(len, name_length(n));
    }
  };
  int deg = 1;
  for (const auto& c : cat.cells) {
    scan(c.boundary);
    deg = std::max(deg, c.degree);
  }
  for (const auto& r : cat.relations) {
    scan(r.lhs);
    scan(r.rhs);
    deg = std::max(deg, r.degree);
  }
  o.word_bound = static_cast<int>(std::max<std::size_t>(2, len + 1));
  o.degree_bound = deg;
  return o;
}

PresentationPtr realize_hom(const EnrichedPtr& cat, const std::string& x, const std::string& y) {
  RealizeOptions o;
  o.word_bound = std::max(o.word_bound, options_for(*cat).word_bound);
  return realize_hom(cat, x, y, o);
}

PresentationPtr realize_hom(const EnrichedPtr& cat, const std::string& x, const std::string& y,
                            const RealizeOptions& opts) {
  return realize(cat, opts)->hom(x, y).complex;
}

// ---------------------------------------------------------------------------
// Functors

const std::string& EnrichedFunctor::map_object(const std::string& x) const {
  auto it = object_map.find(x);
  if (it == object_map.end()) throw DomainError("functor " + name + " has no image for object " + x);
  return it->second;
}

EnrichedFunctor identity_functor(const EnrichedPtr& cat) {
  EnrichedFunctor f;
  f.name = "id";
  f.source = f.target = cat;
  for (const auto& x : cat->objects) f.object_map[x] = x;
  if (!cat->is_structured()) {
    CategoryPtr r = realize(cat, options_for(*cat));
    for (const auto& c : cat->cells) f.cell_map[c.name] = r->cell(c.name);
  }
  return f;
}

namespace {

CrxWord image_of_object(const EnrichedFunctor& f, const EnrichedCategory& s, const EnrichedCategory& t,
                        const std::string& x, const std::string& y, const std::string& o) {
  const std::string& fx = f.map_object(x);
  const std::string& fy = f.map_object(y);
  if (s.data().is_structured()) return structured_object(t.hom(fx, fy), s.value_of(x, y, o));
  CrxWord acc = t.unit(fx);
  std::string cur = x;
  for (const auto& part : split_name(o)) {
    const EnrichedCell& cell = s.data().cell(part);
    auto it = f.cell_map.find(part);
    if (it == f.cell_map.end()) throw DomainError("functor " + f.name + " has no image for " + part);
    acc = t.compose(fx, f.map_object(cur), f.map_object(cell.y), acc, it->second, s.data().flavor);
    cur = cell.y;
  }
  if (cur != y) throw DomainError(o + " does not lie in hom(" + x + ", " + y + ")");
  return acc;
}

CrxWord image_of_generator(const EnrichedFunctor& f, const EnrichedCategory& s, const EnrichedCategory& t,
                           const std::string& x, const std::string& y, const std::string& g, int degree) {
  const std::string& fx = f.map_object(x);
  const std::string& fy = f.map_object(y);
  if (s.data().is_structured()) {
    const HomRealization& h = s.hom(x, y);
    const Generator& gen = h.complex->get(g, degree);
    if (degree != 1) throw DomainError("structured homs have no generators of degree " + std::to_string(degree));
    PathData d = path_value(h, PathWord::letter(gen.name, gen.source, gen.target));
    return structured_path(t.hom(fx, fy), d);
  }
  std::vector<std::string> parts = split_name(g);
  CrxWord acc = t.unit(fx);
  std::string cur = x;
  for (const auto& part : parts) {
    const EnrichedCell& cell = s.data().cell(part);
    auto it = f.cell_map.find(part);
    if (it == f.cell_map.end()) throw DomainError("functor " + f.name + " has no image for " + part);
    acc = t.compose(fx, f.map_object(cur), f.map_object(cell.y), acc, it->second, s.data().flavor);
    cur = cell.y;
  }
  if (acc.degree != degree)
    throw DomainError("image of " + g + " has degree " + std::to_string(acc.degree) + ", expected " +
                      std::to_string(degree));
  return acc;
}

Morphism partial_hom_map(const EnrichedFunctor& f, const EnrichedCategory& s, const EnrichedCategory& t,
                         const std::string& x, const std::string& y, const std::set<std::string>& objs,
                         const std::set<std::pair<int, std::string>>& gens) {
  Morphism m;
  m.source = s.hom(x, y).complex;
  m.target = t.hom(f.map_object(x), f.map_object(y)).complex;
  for (const auto& o : objs) m.object_map[o] = image_of_object(f, s, t, x, y, o).object;
  for (const auto& [d, g] : gens) m.set(g, d, image_of_generator(f, s, t, x, y, g, d));
  return m;
}

}  // namespace

CrxWord functor_apply(const EnrichedFunctor& f, const EnrichedCategory& s, const EnrichedCategory& t,
                      const std::string& x, const std::string& y, const CrxWord& w) {
  std::set<std::string> objs;
  std::set<std::pair<int, std::string>> gens;
  collect(w, objs, gens);
  Morphism m = partial_hom_map(f, s, t, x, y, objs, gens);
  return m.apply(w);
}

Morphism functor_hom_map(const EnrichedFunctor& f, const EnrichedCategory& s, const EnrichedCategory& t,
                         const std::string& x, const std::string& y) {
  const Presentation& p = *s.hom(x, y).complex;
  std::set<std::string> objs(p.objects().begin(), p.objects().end());
  std::set<std::pair<int, std::string>> gens;
  for (const auto& g : p.generators()) gens.insert({g.degree, g.name});
  return partial_hom_map(f, s, t, x, y, objs, gens);
}

RealizeOptions target_options(const EnrichedFunctor& f, const RealizeOptions& source) {
  RealizeOptions o = options_for(*f.target);
  std::size_t len = 1;
  for (const auto& [c, w] : f.cell_map) len = std::max(len, word_length(w));
  o.word_bound = std::max<int>(o.word_bound, static_cast<int>(len) * source.word_bound);
  o.degree_bound = std::max(o.degree_bound, source.degree_bound);
  o.window = source.window;
  return o;
}

namespace {

bool kinds_compatible(const StructuredHom& a, const StructuredHom& b) {
  if (a.kind == HomKind::Empty) return true;
  if (b.kind == HomKind::Empty) return false;
  if (a.kind == HomKind::Group) {
    if (b.kind == HomKind::Contractible) return false;
    if (b.kind == HomKind::Group) {
      if (a.modulus == 0) return true;
      return b.modulus != 0 && a.modulus % b.modulus == 0;
    }
  }
  if (a.kind == HomKind::Contractible && b.kind == HomKind::Point) return true;
  return true;
}

}  // namespace

MorphismReport verify_functor(const EnrichedFunctor& f) {
  MorphismReport rep;
  const EnrichedPresentation& sc = *f.source;
  const EnrichedPresentation& tc = *f.target;
  for (const auto& x : sc.objects) {
    auto it = f.object_map.find(x);
    if (it == f.object_map.end()) {
      rep.failures.push_back("object " + x + " has no image");
      return rep;
    }
    if (!tc.has_object(it->second)) {
      rep.failures.push_back("object " + x + " maps to unknown object " + it->second);
      return rep;
    }
  }
  if (sc.is_structured()) {
    for (const auto& x : sc.objects)
      for (const auto& y : sc.objects) {
        StructuredHom a = sc.hom_kind(x, y);
        StructuredHom b = tc.is_structured() ? tc.hom_kind(f.map_object(x), f.map_object(y)) : StructuredHom{};
        if (!tc.is_structured()) {
          if (a.kind != HomKind::Empty)
            rep.failures.push_back("structured source needs a structured target");
          continue;
        }
        if (!kinds_compatible(a, b))
          rep.failures.push_back("hom(" + x + ", " + y + ") = " + a.to_string() + " has no canonical map to " +
                                 b.to_string());
      }
    return rep;
  }
  RealizeOptions so = options_for(sc);
  RealizeOptions to = target_options(f, so);
  CategoryPtr s, t;
  try {
    s = realize(f.source, so);
    t = realize(f.target, to);
  } catch (const Error& e) {
    rep.obligations.push_back(std::string("realization: ") + e.what());
    return rep;
  }
  for (const auto& c : sc.cells) {
    auto it = f.cell_map.find(c.name);
    if (it == f.cell_map.end()) {
      rep.failures.push_back("cell " + c.name + " has no image");
      continue;
    }
    const CrxWord& img = it->second;
    const std::string& fx = f.map_object(c.x);
    const std::string& fy = f.map_object(c.y);
    const Presentation& tp = *t->hom(fx, fy).complex;
    if (img.degree != c.degree) {
      rep.failures.push_back("image of " + c.name + " has degree " + std::to_string(img.degree));
      continue;
    }
    if (!present(tp, img)) {
      rep.failures.push_back("image of " + c.name + " is not an element of hom(" + fx + ", " + fy + ")");
      continue;
    }
    if (c.degree == 0) continue;
    try {
      const Generator& g = s->hom(c.x, c.y).complex->get(c.name, c.degree);
      if (c.degree == 1) {
        std::string a = image_of_object(f, *s, *t, c.x, c.y, g.source).object;
        std::string b = image_of_object(f, *s, *t, c.x, c.y, g.target).object;
        if (img.path.start() != a || img.path.end() != b)
          rep.failures.push_back("image of " + c.name + " runs " + img.path.start() + " -> " + img.path.end() +
                                 ", expected " + a + " -> " + b);
        continue;
      }
      std::string base = image_of_object(f, *s, *t, c.x, c.y, g.base).object;
      if (img.basepoint() != base) {
        rep.failures.push_back("image of " + c.name + " is based at " + img.basepoint() + ", expected " + base);
        continue;
      }
      CrxWord lhs = functor_apply(f, *s, *t, c.x, c.y, g.boundary);
      CrxWord rhs = tp.boundary(img);
      EqualityResult r = are_equal(tp, lhs, rhs);
      if (r.not_equal())
        rep.failures.push_back("boundary of " + c.name + ": F(d c) = " + lhs.to_string() + " but d F(c) = " +
                               rhs.to_string());
      else if (!r.equal())
        rep.obligations.push_back("boundary of " + c.name + ": " + r.reason);
    } catch (const ResourceBound& e) {
      rep.obligations.push_back(c.name + ": " + e.what());
    } catch (const Error& e) {
      rep.failures.push_back(c.name + ": " + e.what());
    }
  }
  for (const auto& r : sc.relations) {
    try {
      const std::string& fx = f.map_object(r.x);
      const std::string& fy = f.map_object(r.y);
      CrxWord l = functor_apply(f, *s, *t, r.x, r.y, s->parse(r.x, r.y, r.degree, r.lhs));
      CrxWord rr = functor_apply(f, *s, *t, r.x, r.y, s->parse(r.x, r.y, r.degree, r.rhs));
      EqualityResult e = are_equal(*t->hom(fx, fy).complex, l, rr);
      if (e.not_equal())
        rep.failures.push_back("relation " + r.lhs + " = " + r.rhs + " is not preserved");
      else if (!e.equal())
        rep.obligations.push_back("relation " + r.lhs + " = " + r.rhs + ": " + e.reason);
    } catch (const Error& e) {
      rep.obligations.push_back(std::string("relation: ") + e.what());
    }
  }
  return rep;
}

EnrichedFunctor compose_functors(const EnrichedFunctor& f, const EnrichedFunctor& g) {
  if (f.target.get() != g.source.get() && !(*f.target == *g.source))
    throw CompositionError("functors " + f.name + " and " + g.name + " do not compose");
  EnrichedFunctor h;
  h.name = g.name + "." + f.name;
  h.source = f.source;
  h.target = g.target;
  for (const auto& [x, y] : f.object_map) h.object_map[x] = g.map_object(y);
  if (f.source->is_structured()) return h;
  RealizeOptions oa = options_for(*f.source);
  RealizeOptions ob = target_options(f, oa);
  RealizeOptions oc = target_options(g, ob);
  CategoryPtr b = realize(g.source, ob);
  CategoryPtr c = realize(g.target, oc);
  for (const auto& cell : f.source->cells) {
    const CrxWord& w = f.cell_map.at(cell.name);
    h.cell_map[cell.name] = functor_apply(g, *b, *c, f.map_object(cell.x), f.map_object(cell.y), w);
  }
  return h;
}

MorphismReport compare_functors(const EnrichedFunctor& f, const EnrichedFunctor& g) {
  MorphismReport rep;
  for (const auto& x : f.source->objects)
    if (f.map_object(x) != g.map_object(x))
      rep.failures.push_back("object " + x + ": " + f.map_object(x) + " vs " + g.map_object(x));
  if (!rep.failures.empty() || f.source->is_structured()) return rep;
  RealizeOptions o = target_options(f, options_for(*f.source));
  RealizeOptions o2 = target_options(g, options_for(*g.source));
  o.word_bound = std::max(o.word_bound, o2.word_bound);
  CategoryPtr t = realize(f.target, o);
  for (const auto& c : f.source->cells) {
    auto a = f.cell_map.find(c.name), b = g.cell_map.find(c.name);
    if (a == f.cell_map.end() || b == g.cell_map.end()) {
      rep.failures.push_back("cell " + c.name + " is missing an image");
      continue;
    }
    const Presentation& p = *t->hom(f.map_object(c.x), f.map_object(c.y)).complex;
    EqualityResult e = are_equal(p, a->second, b->second);
    if (e.not_equal())
      rep.failures.push_back("cell " + c.name + ": " + a->second.to_string() + " vs " + b->second.to_string());
    else if (!e.equal())
      rep.obligations.push_back("cell " + c.name + ": " + e.reason);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Standard categories

namespace {

void cell(EnrichedPresentation& c, const std::string& name, int degree, const std::string& x, const std::string& y,
          const std::string& boundary = "") {
  c.add_cell({name, degree, x, y, boundary});
}

std::string flavor_suffix(Flavor fl) { return fl == Flavor::Tensor ? "" : "x"; }

}  // namespace

EnrichedFunctor functor_from_text(const std::string& name, const EnrichedPtr& s, const EnrichedPtr& t,
                                  const std::map<std::string, std::string>& objects,
                                  const std::vector<std::pair<std::string, std::string>>& images) {
  EnrichedFunctor f;
  f.name = name;
  f.source = s;
  f.target = t;
  f.object_map = objects;
  RealizeOptions o = options_for(*t);
  for (const auto& [c, text] : images)
    for (const auto& tok : split_top(text))
      o.word_bound = std::max<int>(o.word_bound, static_cast<int>(name_length(letter_name(tok))) + 1);
  CategoryPtr r = realize(t, o);
  for (const auto& [c, text] : images) {
    const EnrichedCell& cl = s->cell(c);
    f.cell_map[c] = r->parse(f.map_object(cl.x), f.map_object(cl.y), cl.degree, text);
  }
  return f;
}

std::string to_string(StandardCategory kind) {
  switch (kind) {
    case StandardCategory::One:
      return "One";
    case StandardCategory::I:
      return "I";
    case StandardCategory::IStar:
      return "IStar";
    case StandardCategory::ITilde:
      return "ITilde";
    case StandardCategory::P11:
      return "P11";
  }
  return "One";
}

std::optional<StandardCategory> standard_category_named(const std::string& name) {
  for (auto k : {StandardCategory::One, StandardCategory::I, StandardCategory::IStar, StandardCategory::ITilde,
                 StandardCategory::P11})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

EnrichedPtr standard_category(StandardCategory kind, Flavor flavor) {
  static std::mutex m;
  static std::map<std::pair<StandardCategory, Flavor>, EnrichedPtr> memo;
  std::lock_guard<std::mutex> lock(m);
  auto it = memo.find({kind, flavor});
  if (it != memo.end()) return it->second;

  auto c = std::make_shared<EnrichedPresentation>();
  c->name = to_string(kind) + flavor_suffix(flavor);
  c->flavor = flavor;
  switch (kind) {
    case StandardCategory::One:
      c->add_object("0");
      break;
    case StandardCategory::I:
      c->add_object("0");
      c->add_object("1");
      cell(*c, "f", 0, "0", "1");
      cell(*c, "g", 0, "1", "0");
      cell(*c, "l1", 1, "0", "0", "id_0 -> f.g");
      cell(*c, "l2", 1, "1", "1", "id_1 -> g.f");
      break;
    case StandardCategory::IStar:
      c->add_object("0");
      cell(*c, "k", 0, "0", "0");
      cell(*c, "h1", 1, "0", "0", "id_0 -> k");
      cell(*c, "h2", 1, "0", "0", "k -> k.k");
      break;
    case StandardCategory::ITilde:
      c->add_object("0");
      c->add_object("1");
      cell(*c, "f", 0, "0", "1");
      cell(*c, "g", 0, "1", "0");
      cell(*c, "k", 0, "0", "0");
      cell(*c, "l1", 1, "0", "0", "id_0 -> f.g");
      cell(*c, "l2", 1, "1", "1", "id_1 -> g.f");
      cell(*c, "h1", 1, "0", "0", "id_0 -> k");
      cell(*c, "h2", 1, "0", "0", "k -> k.k");
      cell(*c, "a", 1, "0", "0", "f.g -> k");
      if (flavor == Flavor::Tensor) cell(*c, "b", 1, "0", "0", "f.g.f.g -> k.k");
      cell(*c, "alpha", 2, "0", "0", "l1 a h1^-1");
      cell(*c, "beta", 2, "0", "0", "a^-1 f.l2.g f.g.a a.k h2^-1");
      break;
    case StandardCategory::P11:
      c->add_object("0");
      c->add_object("1");
      c->add_object("2");
      cell(*c, "u0", 0, "0", "1");
      cell(*c, "u1", 0, "0", "1");
      cell(*c, "l", 1, "0", "1", "u0 -> u1");
      cell(*c, "v0", 0, "1", "2");
      cell(*c, "v1", 0, "1", "2");
      cell(*c, "m", 1, "1", "2", "v0 -> v1");
      break;
  }
  EnrichedPtr out = c;
  memo[{kind, flavor}] = out;
  return out;
}

EnrichedFunctor theta(Flavor flavor) {
  return functor_from_text("theta", standard_category(StandardCategory::IStar, flavor),
                      standard_category(StandardCategory::ITilde, flavor), {{"0", "0"}},
                      {{"k", "k"}, {"h1", "h1"}, {"h2", "h2"}});
}

EnrichedFunctor interval_inclusion(Flavor flavor) {
  return functor_from_text("inclusion", standard_category(StandardCategory::I, flavor),
                      standard_category(StandardCategory::ITilde, flavor), {{"0", "0"}, {"1", "1"}},
                      {{"f", "f"}, {"g", "g"}, {"l1", "l1"}, {"l2", "l2"}});
}

EnrichedFunctor interval_collapse(Flavor flavor) {
  std::vector<std::pair<std::string, std::string>> images = {
      {"f", "f"},         {"g", "g"},         {"k", "f.g"},      {"l1", "l1"},       {"l2", "l2"},
      {"h1", "l1"},       {"h2", "f.l2.g"},   {"a", "1_f.g"},    {"alpha", "1_id_0"}, {"beta", "1_f.g"}};
  if (flavor == Flavor::Tensor) images.push_back({"b", "1_f.g.f.g"});
  return functor_from_text("collapse", standard_category(StandardCategory::ITilde, flavor),
                      standard_category(StandardCategory::I, flavor), {{"0", "0"}, {"1", "1"}}, images);
}

EnrichedFunctor point_inclusion(const EnrichedPtr& cat, const std::string& x) {
  if (!cat->has_object(x)) throw DomainError("unknown object " + x);
  EnrichedFunctor f;
  f.name = "pick(" + x + ")";
  f.source = standard_category(StandardCategory::One, cat->flavor);
  f.target = cat;
  f.object_map["0"] = x;
  return f;
}

EnrichedPtr suspension(const Presentation& v, Flavor flavor) {
  auto c = std::make_shared<EnrichedPresentation>();
  c->name = "S(" + v.name + ")";
  c->flavor = flavor;
  c->bound = v.bound;
  c->add_object("0");
  c->add_object("1");
  for (const auto& o : v.objects()) cell(*c, o, 0, "0", "1");
  for (const auto& g : v.generators()) {
    if (g.degree == 1)
      cell(*c, g.name, 1, "0", "1", g.source + " -> " + g.target);
    else
      cell(*c, g.name, g.degree, "0", "1", g.boundary.to_string());
  }
  for (const auto& r : v.relations()) {
    if (r.apart) continue;
    c->relations.push_back({"0", "1", r.degree, r.lhs.to_string(), r.rhs.to_string()});
  }
  return c;
}

}  // namespace crx
