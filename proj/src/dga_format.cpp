#include <sstream>

#include "crx/dga.hpp"
#include "crx/errors.hpp"
#include "crx/format.hpp"

namespace crx {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;
  std::string text;  // comment stripped
};

std::vector<Line> lines_of(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ws(raw);
    Line l{n, {}, raw};
    for (std::string w; ws >> w;) l.words.push_back(w);
    if (!l.words.empty()) out.push_back(std::move(l));
  }
  return out;
}

// Text after "<keyword> ... =".
std::string after_equals(const Line& l, const std::string& file) {
  auto eq = l.text.find('=');
  if (eq == std::string::npos) throw ParseError(file, l.number, 1, "expected '='");
  return l.text.substr(eq + 1);
}

int parse_int(const std::string& s, const Line& l, const std::string& file) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(file, l.number, 1, "expected an integer, got '" + s + "'");
}

SimplexRef parse_face(const std::string& tok, const SimplicialSetFinite& x, int dim, const Line& l,
                      const std::string& file) {
  auto close = [&](std::size_t open) {
    if (tok.back() != ')') throw ParseError(file, l.number, 1, "missing ')' in " + tok);
    return tok.substr(open + 1, tok.size() - open - 2);
  };
  if (tok.rfind("degenerate(", 0) == 0) {
    std::string v = close(10);
    if (x.dim_of(v) != 0)
      throw ParseError(file, l.number, 1, "degenerate(" + v + ") needs a vertex; use s<j>(...) instead");
    SimplexRef r{v, {}};
    for (int j = dim - 1; j >= 0; --j) r.degeneracies.push_back(j);
    return r;
  }
  if (tok.size() > 1 && tok[0] == 's' && std::isdigit(static_cast<unsigned char>(tok[1]))) {
    auto open = tok.find('(');
    if (open != std::string::npos) {
      int j = parse_int(tok.substr(1, open - 1), l, file);
      SimplexRef inner = parse_face(close(open), x, dim - 1, l, file);
      return degenerate(inner, j);
    }
  }
  return {tok, {}};
}

}  // namespace

PresentedDga parse_dga(const std::string& text, const std::string& file) {
  PresentedDga out;
  FreeDga& f = out.free;
  std::vector<Line> diffs, rels;
  bool header = false;
  for (const auto& l : lines_of(text)) {
    const std::string& k = l.words[0];
    if (k == "dga") {
      if (header || l.words.size() != 2) throw ParseError(file, l.number, 1, "expected a single 'dga <name>'");
      f.name = l.words[1];
      header = true;
    } else if (!header) {
      throw ParseError(file, l.number, 1, "missing 'dga <name>' header");
    } else if (k == "gen") {
      if (l.words.size() != 4 || l.words[2] != "deg") throw ParseError(file, l.number, 1, "expected 'gen <x> deg <n>'");
      try {
        f.add_generator(l.words[1], parse_int(l.words[3], l, file));
      } catch (const DomainError& e) {
        throw ParseError(file, l.number, 1, e.what());
      }
    } else if (k == "diff") {
      diffs.push_back(l);
    } else if (k == "rel") {
      rels.push_back(l);
    } else {
      throw ParseError(file, l.number, 1, "unknown keyword '" + k + "'");
    }
  }
  if (!header) throw ParseError(file, 1, 1, "missing 'dga <name>' header");
  try {
    for (const auto& l : diffs) {
      if (l.words.size() < 3 || l.words[2] != "=") throw ParseError(file, l.number, 1, "expected 'diff <x> = <element>'");
      f.set_diff(f.find(l.words[1]), f.parse(after_equals(l, file)));
    }
    for (const auto& l : rels) {
      std::string body = l.text.substr(l.text.find("rel") + 3);
      auto eq = body.find('=');
      DgaElement lhs = f.parse(body.substr(0, eq));
      if (eq != std::string::npos) lhs = plus(lhs, scaled(f.parse(body.substr(eq + 1)), -1));
      if (!lhs.empty()) out.relations.push_back(lhs);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(file, diffs.empty() ? 1 : diffs.front().number, 1, e.what());
  }
  f.check();
  return out;
}

PresentedDga load_dga(const std::string& path) { return parse_dga(read_text_file(path), path); }

std::string emit_dga(const PresentedDga& a) {
  const FreeDga& f = a.free;
  std::ostringstream os;
  os << "dga " << f.name << "\n";
  for (const auto& g : f.generators()) os << "gen " << g.name << " deg " << g.degree << "\n";
  for (std::size_t i = 0; i < f.generators().size(); ++i)
    if (!f.diff(i).empty()) os << "diff " << f.generators()[i].name << " = " << f.to_string(f.diff(i)) << "\n";
  for (const auto& r : a.relations) os << "rel " << f.to_string(r) << " = 0\n";
  return os.str();
}

SimplicialSetFinite parse_ssx(const std::string& text, const std::string& file) {
  SimplicialSetFinite x;
  bool header = false;
  std::string base;
  std::size_t base_line = 1;
  for (const auto& l : lines_of(text)) {
    const auto& w = l.words;
    if (w[0] == "ssx") {
      if (header || w.size() != 2) throw ParseError(file, l.number, 1, "expected a single 'ssx <name>'");
      x.name = w[1];
      header = true;
    } else if (!header) {
      throw ParseError(file, l.number, 1, "missing 'ssx <name>' header");
    } else if (w[0] == "basepoint") {
      if (w.size() != 2) throw ParseError(file, l.number, 1, "expected 'basepoint <v>'");
      base = w[1];
      base_line = l.number;
    } else if (w[0] == "simplex") {
      if (w.size() < 4 || w[2] != "dim") throw ParseError(file, l.number, 1, "expected 'simplex <name> dim <d> ...'");
      const int dim = parse_int(w[3], l, file);
      std::vector<SimplexRef> faces;
      if (w.size() > 4) {
        if (w[4] != "faces") throw ParseError(file, l.number, 1, "expected 'faces'");
        try {
          for (std::size_t i = 5; i < w.size(); ++i) faces.push_back(parse_face(w[i], x, dim - 1, l, file));
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          throw ParseError(file, l.number, 1, e.what());
        }
      }
      try {
        x.add_simplex(w[1], dim, std::move(faces));
      } catch (const Error& e) {
        throw ParseError(file, l.number, 1, e.what());
      }
    } else {
      throw ParseError(file, l.number, 1, "unknown keyword '" + w[0] + "'");
    }
  }
  if (!header) throw ParseError(file, 1, 1, "missing 'ssx <name>' header");
  x.basepoint = base;
  try {
    x.check();
  } catch (const DomainError& e) {
    throw ParseError(file, base_line, 1, e.what());
  }
  return x;
}

SimplicialSetFinite load_ssx(const std::string& path) { return parse_ssx(read_text_file(path), path); }

std::string emit_ssx(const SimplicialSetFinite& x) {
  std::ostringstream os;
  os << "ssx " << x.name << "\n";
  if (!x.basepoint.empty()) os << "basepoint " << x.basepoint << "\n";
  for (int d = 0; d <= x.dimension(); ++d)
    for (const auto& n : x.simplices(d)) {
      os << "simplex " << n << " dim " << d;
      if (d > 0) {
        os << " faces";
        for (const auto& f : x.faces(n)) {
          // a fully degenerate vertex reads back through degenerate(v)
          bool full = !f.degeneracies.empty() && x.dim_of(f.base) == 0;
          os << " " << (full ? "degenerate(" + f.base + ")" : to_string(f));
        }
      }
      os << "\n";
    }
  return os.str();
}

}  // namespace crx
