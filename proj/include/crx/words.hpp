#pragma once

// Formal elements of crossed complexes: composable paths in degree 1 and
// ordered products of action-decorated generators in degrees >= 2.
//
// Paths compose diagrammatically: p.then(q) runs p first. Actions are right
// actions, g^[w] = phi_w(g), where the actor w runs from the basepoint of g
// to the basepoint of the result.

#include <cstdint>
#include <string>
#include <vector>

namespace crx {

struct Step {
  std::string gen;
  bool inverse = false;
  std::string from;
  std::string to;

  Step reversed() const { return {gen, !inverse, to, from}; }
  bool operator==(const Step&) const = default;
  auto operator<=>(const Step&) const = default;
};

class PathWord {
public:
  PathWord() = default;
  // Throws CompositionError unless consecutive steps compose. The result is
  // freely reduced.
  PathWord(std::string start, std::vector<Step> steps);

  static PathWord identity(const std::string& object);
  static PathWord letter(const std::string& gen, const std::string& source, const std::string& target,
                         bool inverse = false);

  const std::string& start() const { return start_; }
  const std::string& end() const { return end_; }
  const std::vector<Step>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  bool is_identity() const { return steps_.empty(); }
  bool is_loop() const { return start_ == end_; }

  PathWord inverse() const;
  PathWord then(const PathWord& next) const;
  PathWord power(long k) const;

  // Letters separated by spaces, identity as 1_<object>.
  std::string to_string() const;

  bool operator==(const PathWord&) const = default;
  auto operator<=>(const PathWord&) const = default;

private:
  std::string start_;
  std::string end_;
  std::vector<Step> steps_;
};

// Free reduction of a letter sequence; used by reduce_path and PathWord.
std::vector<Step> freely_reduce(std::vector<Step> steps);

struct Term {
  std::string gen;
  std::int64_t exp = 1;
  PathWord actor;  // from the generator's basepoint to the word's basepoint

  const std::string& gen_base() const { return actor.start(); }
  bool operator==(const Term&) const = default;
  auto operator<=>(const Term&) const = default;
};

// Product t_1 t_2 ... t_k in C_n(base), n >= 2. For n >= 3 the product is
// commutative and the stored form is sorted with like terms merged.
class HigherWord {
public:
  HigherWord() = default;
  HigherWord(int degree, std::string base, std::vector<Term> terms);

  static HigherWord identity(int degree, const std::string& base);
  static HigherWord generator(int degree, const std::string& gen, const std::string& base);

  int degree() const { return degree_; }
  const std::string& base() const { return base_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_identity() const { return terms_.empty(); }

  HigherWord times(const HigherWord& rhs) const;
  HigherWord inverse() const;
  HigherWord power(std::int64_t k) const;
  HigherWord act(const PathWord& w) const;

  std::string to_string() const;

  bool operator==(const HigherWord&) const = default;

private:
  void normalize();

  int degree_ = 2;
  std::string base_;
  std::vector<Term> terms_;
};

// An element of C_n: an object (n = 0), a path (n = 1) or a HigherWord.
struct CrxWord {
  int degree = 0;
  std::string object;
  PathWord path;
  HigherWord higher;

  static CrxWord of_object(const std::string& x);
  static CrxWord of_path(PathWord p);
  static CrxWord of_higher(HigherWord h);

  // Object for degree 0, start object for degree 1, base for degree >= 2.
  const std::string& basepoint() const;
  bool is_identity() const;
  std::string to_string() const;
  bool operator==(const CrxWord&) const = default;
};

}  // namespace crx
