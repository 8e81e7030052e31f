#include "crx/encat.hpp"

#include <sstream>

#include "crx/errors.hpp"
#include "crx/format.hpp"

namespace crx {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> words_of(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

EnrichedPtr standard_named(const std::string& name) {
  if (auto k = standard_category_named(name)) return standard_category(*k, Flavor::Tensor);
  if (name.size() > 1 && name.back() == 'x')
    if (auto k = standard_category_named(name.substr(0, name.size() - 1)))
      return standard_category(*k, Flavor::Cartesian);
  return nullptr;
}

struct PendingFunctor {
  std::string name, source, target;
  std::map<std::string, std::string> objects;
  std::vector<std::pair<std::string, std::string>> cells;
  std::size_t line = 0;
};

}  // namespace

EnrichedPtr EncatFile::category(const std::string& name) const {
  for (const auto& c : categories)
    if (c->name == name) return c;
  return standard_named(name);
}

const EnrichedFunctor* EncatFile::functor(const std::string& name) const {
  for (const auto& f : functors)
    if (f.name == name) return &f;
  return nullptr;
}

EncatFile parse_encat(const std::string& text, const std::string& filename) {
  EncatFile file;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  std::shared_ptr<EnrichedPresentation> cur;
  std::optional<PendingFunctor> fun;
  auto fail = [&](const std::string& msg, std::size_t col = 1) -> void {
    throw ParseError(filename, line, col, msg);
  };
  auto finish_category = [&]() {
    if (cur) file.categories.push_back(cur);
    cur.reset();
  };
  auto finish_functor = [&]() {
    PendingFunctor p = *fun;
    fun.reset();
    EnrichedPtr s = file.category(p.source), t = file.category(p.target);
    if (!s) throw ParseError(filename, p.line, 1, "unknown category " + p.source);
    if (!t) throw ParseError(filename, p.line, 1, "unknown category " + p.target);
    try {
      file.functors.push_back(functor_from_text(p.name, s, t, p.objects, p.cells));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(filename, p.line, 1, std::string("functor ") + p.name + ": " + e.what());
    }
  };

  while (std::getline(in, raw)) {
    ++line;
    std::string body = raw.substr(0, raw.find('#'));
    std::string t = trim(body);
    if (t.empty()) continue;
    std::size_t col = body.find_first_not_of(" \t") + 1;
    std::vector<std::string> w = words_of(t);
    try {
      if (fun) {
        if (w[0] == "end") {
          finish_functor();
        } else if (w[0] == "obj") {
          if (w.size() != 4 || w[2] != "->") fail("expected 'obj <x> -> <y>'", col);
          fun->objects[w[1]] = w[3];
        } else if (w[0] == "cell") {
          std::size_t arrow = t.find("->");
          if (w.size() < 4 || w[2] != "->" || arrow == std::string::npos) fail("expected 'cell <c> -> <word>'", col);
          fun->cells.push_back({w[1], trim(t.substr(arrow + 2))});
        } else {
          fail("unrecognized line in functor block '" + t + "'", col);
        }
        continue;
      }
      if (w[0] == "encat") {
        finish_category();
        if (w.size() < 2 || w.size() > 3) fail("expected 'encat <name> [flavor=tensor|cartesian]'", col);
        cur = std::make_shared<EnrichedPresentation>();
        cur->name = w[1];
        if (w.size() == 3) {
          if (w[2] == "flavor=tensor")
            cur->flavor = Flavor::Tensor;
          else if (w[2] == "flavor=cartesian")
            cur->flavor = Flavor::Cartesian;
          else
            fail("unknown flavor '" + w[2] + "'", col);
        }
        continue;
      }
      if (w[0] == "functor") {
        finish_category();
        if (w.size() != 6 || w[2] != ":" || w[4] != "->") fail("expected 'functor <name> : <A> -> <B>'", col);
        fun = PendingFunctor{w[1], w[3], w[5], {}, {}, line};
        continue;
      }
      if (!cur) fail("expected an 'encat' or 'functor' header", col);
      if (w[0] == "objects:") {
        for (std::size_t i = 1; i < w.size(); ++i) cur->add_object(w[i]);
      } else if (w[0] == "bound:" && w.size() == 2) {
        cur->bound = std::stoi(w[1]);
      } else if (w[0] == "hom") {
        if (w.size() != 5 || w[3] != "=") fail("expected 'hom <x> <y> = structured:<kind>'", col);
        cur->set_hom(w[1], w[2], parse_structured(w[4]));
      } else if (w[0] == "cell") {
        // cell <name> deg <d> : <x> -> <y> [@ boundary <expr>]
        if (w.size() < 8 || w[2] != "deg" || w[4] != ":" || w[6] != "->")
          fail("expected 'cell <name> deg <d> : <x> -> <y> [@ boundary <expr>]'", col);
        EnrichedCell c;
        c.name = w[1];
        c.degree = std::stoi(w[3]);
        c.x = w[5];
        c.y = w[7];
        std::size_t at = t.find(" @ boundary ");
        if (at != std::string::npos) c.boundary = trim(t.substr(at + 12));
        if (c.degree > 0 && c.boundary.empty()) fail("cell " + c.name + " needs '@ boundary'", col);
        if (c.degree == 0 && w.size() != 8) fail("degree-0 cells take no boundary", col);
        cur->add_cell(std::move(c));
      } else if (w[0] == "rel") {
        // rel <x> <y> deg <n> : lhs = rhs
        if (w.size() < 8 || w[3] != "deg" || w[5] != ":") fail("expected 'rel <x> <y> deg <n> : <w> = <w>'", col);
        std::size_t colon = t.find(':');
        std::string rest = t.substr(colon + 1);
        std::size_t eq = rest.find(" = ");
        if (eq == std::string::npos) fail("relation without ' = '", col);
        cur->relations.push_back({w[1], w[2], std::stoi(w[4]), trim(rest.substr(0, eq)), trim(rest.substr(eq + 3))});
      } else {
        fail("unrecognized line '" + t + "'", col);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::logic_error& e) {
      throw ParseError(filename, line, col, std::string("bad number: ") + e.what());
    } catch (const Error& e) {
      throw ParseError(filename, line, col, e.what());
    }
  }
  if (fun) throw ParseError(filename, line, 1, "functor " + fun->name + " is missing 'end'");
  finish_category();
  // realize once so boundary errors surface at load time
  for (const auto& c : file.categories) {
    try {
      realize(c, options_for(*c));
    } catch (const Error& e) {
      throw ParseError(filename, 0, 1, "category " + c->name + ": " + e.what());
    }
  }
  return file;
}

EncatFile load_encat(const std::string& path) { return parse_encat(read_text_file(path), path); }

std::string emit_category(const EnrichedPresentation& c) {
  std::ostringstream os;
  os << "encat " << c.name << " flavor=" << to_string(c.flavor) << "\n";
  if (c.bound != default_bound()) os << "bound: " << c.bound << "\n";
  os << "objects:";
  for (const auto& x : c.objects) os << " " << x;
  os << "\n";
  for (const auto& [k, h] : c.structured)
    os << "hom " << k.first << " " << k.second << " = structured:" << h.to_string() << "\n";
  for (const auto& cell : c.cells) {
    os << "cell " << cell.name << " deg " << cell.degree << " : " << cell.x << " -> " << cell.y;
    if (cell.degree > 0) os << " @ boundary " << cell.boundary;
    os << "\n";
  }
  for (const auto& r : c.relations)
    os << "rel " << r.x << " " << r.y << " deg " << r.degree << " : " << r.lhs << " = " << r.rhs << "\n";
  return os.str();
}

std::string emit_functor(const EnrichedFunctor& f) {
  std::ostringstream os;
  os << "functor " << f.name << " : " << f.source->name << " -> " << f.target->name << "\n";
  for (const auto& x : f.source->objects) os << "obj " << x << " -> " << f.map_object(x) << "\n";
  for (const auto& c : f.source->cells) {
    auto it = f.cell_map.find(c.name);
    if (it != f.cell_map.end()) os << "cell " << c.name << " -> " << it->second.to_string() << "\n";
  }
  os << "end\n";
  return os.str();
}

std::string emit_encat(const EncatFile& file) {
  std::string out;
  for (const auto& c : file.categories) {
    if (!out.empty()) out += "\n";
    out += emit_category(*c);
  }
  for (const auto& f : file.functors) {
    if (!out.empty()) out += "\n";
    out += emit_functor(f);
  }
  return out;
}

}  // namespace crx
