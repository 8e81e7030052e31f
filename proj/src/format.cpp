#include "crx/format.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "crx/errors.hpp"

namespace crx {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split_letters(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') {
      if (depth == 0) throw DomainError("unbalanced ']' in " + text);
      --depth;
    }
    if (depth == 0 && (c == ' ' || c == '\t')) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw DomainError("unbalanced '[' in " + text);
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

namespace {

struct Letter {
  std::string name;
  long exp = 1;
  std::vector<std::string> actors;  // bracket contents, applied in order
};

Letter parse_letter(const std::string& tok) {
  Letter l;
  std::size_t i = tok.find_first_of("^[]");
  l.name = tok.substr(0, i);
  if (l.name.empty()) throw DomainError("letter without a name: " + tok);
  bool exp_seen = false;
  while (i < tok.size()) {
    if (tok[i] != '^') throw DomainError("unexpected '" + std::string(1, tok[i]) + "' in " + tok);
    ++i;
    if (i < tok.size() && tok[i] == '[') {
      int depth = 0;
      std::size_t j = i;
      for (; j < tok.size(); ++j) {
        if (tok[j] == '[') ++depth;
        if (tok[j] == ']' && --depth == 0) break;
      }
      l.actors.push_back(tok.substr(i + 1, j - i - 1));
      i = j + 1;
    } else {
      if (exp_seen || !l.actors.empty()) throw DomainError("misplaced exponent in " + tok);
      std::size_t j = i;
      if (j < tok.size() && tok[j] == '-') ++j;
      while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j]))) ++j;
      std::string num = tok.substr(i, j - i);
      if (num.empty() || num == "-") throw DomainError("bad exponent in " + tok);
      l.exp = std::stol(num);
      exp_seen = true;
      i = j;
    }
  }
  return l;
}

bool is_identity_token(const std::string& tok) { return tok.size() > 2 && tok.compare(0, 2, "1_") == 0; }

}  // namespace

PathWord parse_path(const Presentation& p, const std::string& text, const std::string& start) {
  std::vector<std::string> toks = split_letters(text);
  std::optional<PathWord> out;
  if (!start.empty()) out = PathWord::identity(start);
  for (const auto& tok : toks) {
    if (is_identity_token(tok)) {
      std::string x = tok.substr(2);
      if (!p.has_object(x)) throw DomainError("unknown object " + x);
      PathWord id = PathWord::identity(x);
      out = out ? out->then(id) : id;
      continue;
    }
    Letter l = parse_letter(tok);
    if (!l.actors.empty()) throw DomainError("action decoration on a degree-1 letter " + tok);
    PathWord e = p.edge(l.name);
    PathWord piece = e.power(l.exp);
    if (l.exp == 0) piece = PathWord::identity(e.start());
    out = out ? out->then(piece) : piece;
  }
  if (!out) throw DomainError("empty path word needs a start object");
  return *out;
}

CrxWord parse_word(const Presentation& p, int degree, const std::string& text, const std::string& base) {
  if (degree == 0) {
    std::vector<std::string> toks = split_letters(text);
    if (toks.size() != 1 || !p.has_object(toks[0])) throw DomainError("expected an object, got " + text);
    return CrxWord::of_object(toks[0]);
  }
  if (degree == 1) {
    PathWord w = parse_path(p, text, base);
    return CrxWord::of_path(w);
  }
  std::vector<std::string> toks = split_letters(text);
  std::vector<HigherWord> pieces;
  std::string word_base = base;
  for (const auto& tok : toks) {
    if (is_identity_token(tok)) {
      std::string x = tok.substr(2);
      if (!p.has_object(x)) throw DomainError("unknown object " + x);
      if (word_base.empty()) word_base = x;
      if (word_base != x) throw CompositionError("identity 1_" + x + " in a word based at " + word_base);
      continue;
    }
    Letter l = parse_letter(tok);
    const Generator& g = p.get(l.name, degree);
    HigherWord h = HigherWord::generator(degree, g.name, g.base).power(l.exp);
    for (const auto& a : l.actors) h = h.act(parse_path(p, a, h.base()));
    if (word_base.empty()) word_base = h.base();
    if (h.base() != word_base)
      throw CompositionError("letter " + tok + " is based at " + h.base() + ", word at " + word_base);
    pieces.push_back(std::move(h));
  }
  if (word_base.empty()) throw DomainError("empty word needs a basepoint");
  HigherWord out = HigherWord::identity(degree, word_base);
  for (const auto& h : pieces) out = out.times(h);
  return CrxWord::of_higher(out);
}

namespace {

struct LineReader {
  std::string file;
  std::size_t line = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t column = 1) const {
    throw ParseError(file, line, column, msg);
  }
};

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

int parse_degree(const LineReader& r, const std::string& tok, std::size_t col) {
  try {
    std::size_t used = 0;
    int d = std::stoi(tok, &used);
    if (used != tok.size() || d < 0) r.fail("bad degree '" + tok + "'", col);
    return d;
  } catch (const std::logic_error&) {
    r.fail("bad degree '" + tok + "'", col);
  }
}

}  // namespace

Presentation parse_crx(const std::string& text, const std::string& filename) {
  LineReader r{filename};
  std::istringstream in(text);
  std::string raw;
  std::optional<Presentation> p;
  while (std::getline(in, raw)) {
    ++r.line;
    std::string line = raw.substr(0, raw.find('#'));
    std::string t = trim(line);
    if (t.empty()) continue;
    std::size_t col = line.find_first_not_of(" \t") + 1;
    std::vector<std::string> w = words_of(t);
    if (!p) {
      if (w[0] != "crx" || w.size() != 2) r.fail("expected header 'crx <name>'", col);
      p.emplace(w[1]);
      continue;
    }
    try {
      if (w[0] == "objects:") {
        for (std::size_t i = 1; i < w.size(); ++i) p->add_object(w[i]);
      } else if (w[0] == "gen") {
        // gen <name> deg <n> ...
        if (w.size() < 5 || w[2] != "deg") r.fail("expected 'gen <name> deg <n> ...'", col);
        int d = parse_degree(r, w[3], col);
        if (d == 0) r.fail("degree-0 generators are declared with 'objects:'", col);
        if (d == 1) {
          if (w.size() != 8 || w[4] != ":" || w[6] != "->") r.fail("expected 'gen <name> deg 1 : <src> -> <tgt>'", col);
          if (!p->has_object(w[5])) r.fail("unknown object " + w[5], col);
          if (!p->has_object(w[7])) r.fail("unknown object " + w[7], col);
          p->add_edge(w[1], w[5], w[7]);
        } else {
          if (w.size() < 8 || w[4] != "@" || w[6] != ":")
            r.fail("expected 'gen <name> deg <n> @ <base> : <word>'", col);
          if (!p->has_object(w[5])) r.fail("unknown object " + w[5], col);
          std::size_t colon = line.find(':', line.find('@'));
          std::string body = trim(line.substr(colon + 1));
          CrxWord b = parse_word(*p, d - 1, body, w[5]);
          p->add_cell(w[1], d, w[5], b);
        }
      } else if (w[0] == "rel") {
        if (w.size() < 6 || w[1] != "deg" || w[3] != ":") r.fail("expected 'rel deg <n> : <word> = <word>'", col);
        int d = parse_degree(r, w[2], col);
        std::size_t colon = line.find(':');
        std::string body = line.substr(colon + 1);
        std::vector<std::string> toks = split_letters(body);
        std::size_t eq = toks.size();
        bool apart = false;
        for (std::size_t i = 0; i < toks.size(); ++i)
          if (toks[i] == "=" || toks[i] == "!=") {
            eq = i;
            apart = toks[i] == "!=";
            break;
          }
        if (eq == toks.size()) r.fail("relation without '='", col);
        auto join = [&](std::size_t a, std::size_t b) {
          std::string s;
          for (std::size_t i = a; i < b; ++i) s += (s.empty() ? "" : " ") + toks[i];
          return s;
        };
        std::string ls = join(0, eq), rs = join(eq + 1, toks.size());
        if (ls.empty() || rs.empty()) r.fail("relation side is empty (write 1_<object> for identities)", col);
        CrxWord lhs = parse_word(*p, d, ls);
        CrxWord rhs = parse_word(*p, d, rs, lhs.basepoint());
        p->add_relation(d, lhs, rhs, apart);
      } else if (w[0] == "bound:" && w.size() == 2) {
        p->bound = parse_degree(r, w[1], col);
      } else {
        r.fail("unrecognized line '" + t + "'", col);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      r.fail(e.what(), col);
    }
  }
  if (!p) throw ParseError(filename, r.line, 1, "missing 'crx <name>' header");
  return std::move(*p);
}

Presentation load_crx(const std::string& path) { return parse_crx(read_text_file(path), path); }

std::string emit_crx(const Presentation& p) {
  std::ostringstream os;
  os << "crx " << p.name << "\n";
  if (p.bound != default_bound()) os << "bound: " << p.bound << "\n";
  os << "objects:";
  for (const auto& x : p.objects()) os << " " << x;
  os << "\n";
  for (const auto& g : p.generators()) {
    if (g.degree == 1)
      os << "gen " << g.name << " deg 1 : " << g.source << " -> " << g.target << "\n";
    else
      os << "gen " << g.name << " deg " << g.degree << " @ " << g.base << " : " << g.boundary.to_string() << "\n";
  }
  for (const auto& r : p.relations())
    os << "rel deg " << r.degree << " : " << r.lhs.to_string() << (r.apart ? " != " : " = ") << r.rhs.to_string()
       << "\n";
  return os.str();
}

}  // namespace crx
