#pragma once

// The .crx text format.
//
//   crx <name>
//   objects: p q ...
//   gen <name> deg 1 : <src> -> <tgt>
//   gen <name> deg <n> @ <base> : <boundary-word>
//   rel deg <n> : <word> = <word>      (or != for an apartness claim)
//
// Word letters: g, g^-1, g^<k>, g^[<path-word>], 1_<object>.

#include <string>

#include "crx/crossed_complex.hpp"

namespace crx {

std::string read_text_file(const std::string& path);

Presentation parse_crx(const std::string& text, const std::string& filename = "<input>");
Presentation load_crx(const std::string& path);
std::string emit_crx(const Presentation& p);

// Parses a word of the given degree over the generators of p. `base` is
// required for identity-free empty input and checked otherwise when nonempty.
CrxWord parse_word(const Presentation& p, int degree, const std::string& text, const std::string& base = "");
PathWord parse_path(const Presentation& p, const std::string& text, const std::string& start = "");

// Splits a word into letter tokens, keeping bracketed actors together.
std::vector<std::string> split_letters(const std::string& text);

}  // namespace crx
