#include "crx/words.hpp"

#include <algorithm>
#include <map>

#include "crx/errors.hpp"

namespace crx {

std::vector<Step> freely_reduce(std::vector<Step> steps) {
  std::vector<Step> out;
  out.reserve(steps.size());
  for (auto& s : steps) {
    if (!out.empty() && out.back().gen == s.gen && out.back().inverse != s.inverse && out.back().from == s.to &&
        out.back().to == s.from) {
      out.pop_back();
    } else {
      out.push_back(std::move(s));
    }
  }
  return out;
}

PathWord::PathWord(std::string start, std::vector<Step> steps) : start_(std::move(start)) {
  std::string at = start_;
  for (const auto& s : steps) {
    if (s.from != at)
      throw CompositionError("path does not compose: letter " + s.gen + (s.inverse ? "^-1" : "") + " starts at " +
                             s.from + ", expected " + at);
    at = s.to;
  }
  end_ = at;
  steps_ = freely_reduce(std::move(steps));
}

PathWord PathWord::identity(const std::string& object) { return PathWord(object, {}); }

PathWord PathWord::letter(const std::string& gen, const std::string& source, const std::string& target,
                          bool inverse) {
  Step s{gen, inverse, inverse ? target : source, inverse ? source : target};
  std::string from = s.from;
  return PathWord(from, {std::move(s)});
}

PathWord PathWord::inverse() const {
  std::vector<Step> rev;
  rev.reserve(steps_.size());
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) rev.push_back(it->reversed());
  return PathWord(end_, std::move(rev));
}

PathWord PathWord::then(const PathWord& next) const {
  if (end_ != next.start_)
    throw CompositionError("cannot compose path ending at " + end_ + " with path starting at " + next.start_);
  std::vector<Step> all = steps_;
  all.insert(all.end(), next.steps_.begin(), next.steps_.end());
  return PathWord(start_, std::move(all));
}

PathWord PathWord::power(long k) const {
  if (!is_loop() && k != 1 && k != -1 && k != 0) throw CompositionError("power of a non-loop path");
  if (k == 0) return identity(start_);
  PathWord base = k < 0 ? inverse() : *this;
  PathWord out = identity(base.start_);
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out = out.then(base);
  return out;
}

std::string PathWord::to_string() const {
  if (steps_.empty()) return "1_" + start_;
  std::string out;
  for (const auto& s : steps_) {
    if (!out.empty()) out += ' ';
    out += s.gen;
    if (s.inverse) out += "^-1";
  }
  return out;
}

HigherWord::HigherWord(int degree, std::string base, std::vector<Term> terms)
    : degree_(degree), base_(std::move(base)), terms_(std::move(terms)) {
  if (degree_ < 2) throw DomainError("HigherWord needs degree >= 2");
  for (const auto& t : terms_)
    if (t.actor.end() != base_)
      throw CompositionError("actor of term " + t.gen + " ends at " + t.actor.end() + ", word is based at " + base_);
  normalize();
}

HigherWord HigherWord::identity(int degree, const std::string& base) { return HigherWord(degree, base, {}); }

HigherWord HigherWord::generator(int degree, const std::string& gen, const std::string& base) {
  return HigherWord(degree, base, {Term{gen, 1, PathWord::identity(base)}});
}

void HigherWord::normalize() {
  if (degree_ == 2) {
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (t.exp == 0) continue;
      if (!out.empty() && out.back().gen == t.gen && out.back().actor == t.actor) {
        out.back().exp += t.exp;
        if (out.back().exp == 0) out.pop_back();
      } else {
        out.push_back(std::move(t));
      }
    }
    terms_ = std::move(out);
    return;
  }
  std::map<std::pair<std::string, PathWord>, std::int64_t> acc;
  for (auto& t : terms_) acc[{t.gen, t.actor}] += t.exp;
  terms_.clear();
  for (auto& [k, e] : acc)
    if (e != 0) terms_.push_back(Term{k.first, e, k.second});
}

HigherWord HigherWord::times(const HigherWord& rhs) const {
  if (rhs.degree_ != degree_) throw DomainError("product of words of different degree");
  if (rhs.base_ != base_) throw CompositionError("product of words at different basepoints " + base_ + ", " + rhs.base_);
  std::vector<Term> all = terms_;
  all.insert(all.end(), rhs.terms_.begin(), rhs.terms_.end());
  return HigherWord(degree_, base_, std::move(all));
}

HigherWord HigherWord::inverse() const {
  std::vector<Term> rev;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) rev.push_back(Term{it->gen, -it->exp, it->actor});
  return HigherWord(degree_, base_, std::move(rev));
}

HigherWord HigherWord::power(std::int64_t k) const {
  if (degree_ >= 3) {
    std::vector<Term> ts = terms_;
    for (auto& t : ts) t.exp *= k;
    return HigherWord(degree_, base_, std::move(ts));
  }
  HigherWord b = k < 0 ? inverse() : *this;
  HigherWord out = identity(degree_, base_);
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out = out.times(b);
  return out;
}

HigherWord HigherWord::act(const PathWord& w) const {
  if (w.start() != base_) throw CompositionError("actor starts at " + w.start() + ", word is based at " + base_);
  std::vector<Term> ts = terms_;
  for (auto& t : ts) t.actor = t.actor.then(w);
  return HigherWord(degree_, w.end(), std::move(ts));
}

std::string HigherWord::to_string() const {
  if (terms_.empty()) return "1_" + base_;
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += ' ';
    out += t.gen;
    if (t.exp != 1) out += "^" + std::to_string(t.exp);
    if (!t.actor.is_identity()) out += "^[" + t.actor.to_string() + "]";
  }
  return out;
}

CrxWord CrxWord::of_object(const std::string& x) {
  CrxWord w;
  w.degree = 0;
  w.object = x;
  return w;
}

CrxWord CrxWord::of_path(PathWord p) {
  CrxWord w;
  w.degree = 1;
  w.path = std::move(p);
  return w;
}

CrxWord CrxWord::of_higher(HigherWord h) {
  CrxWord w;
  w.degree = h.degree();
  w.higher = std::move(h);
  return w;
}

const std::string& CrxWord::basepoint() const {
  if (degree == 0) return object;
  if (degree == 1) return path.start();
  return higher.base();
}

bool CrxWord::is_identity() const {
  if (degree == 0) return true;
  if (degree == 1) return path.is_identity();
  return higher.is_identity();
}

std::string CrxWord::to_string() const {
  if (degree == 0) return object;
  if (degree == 1) return path.to_string();
  return higher.to_string();
}

}  // namespace crx
