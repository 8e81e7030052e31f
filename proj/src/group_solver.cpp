#include "crx/group_solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace crx {

namespace {

constexpr std::size_t kMaxWordLength = 200000;

GroupWord cyclically_reduce(GroupWord w) {
  w = reduce_group_word(w);
  std::size_t i = 0, j = w.size();
  while (j - i >= 2 && w[i] == -w[j - 1]) {
    ++i;
    --j;
  }
  return GroupWord(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j));
}

GroupWord substitute_letter(const GroupWord& w, int gen, const GroupWord& value) {
  GroupWord inv = invert_group_word(value);
  GroupWord out;
  for (int l : w) {
    if (std::abs(l) == gen + 1) {
      const GroupWord& v = l > 0 ? value : inv;
      out.insert(out.end(), v.begin(), v.end());
    } else {
      out.push_back(l);
    }
  }
  return reduce_group_word(out);
}

}  // namespace

GroupWord reduce_group_word(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

GroupWord invert_group_word(const GroupWord& w) {
  GroupWord out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

GroupWord concat_group_words(const GroupWord& a, const GroupWord& b) {
  GroupWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce_group_word(out);
}

std::size_t default_tietze_budget() {
  if (const char* env = std::getenv("CRX_TIETZE_BUDGET")) {
    long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 10000;
}

GroupSolver::GroupSolver(std::size_t generator_count, std::vector<GroupWord> relators, std::size_t budget)
    : ngens_(generator_count), original_(relators), subst_(generator_count) {
  std::vector<GroupWord> rels;
  for (auto& r : relators) rels.push_back(cyclically_reduce(r));

  bool exhausted = false;
  for (;;) {
    std::set<GroupWord> uniq;
    std::vector<GroupWord> kept;
    for (auto& r : rels)
      if (!r.empty() && uniq.insert(r).second) kept.push_back(std::move(r));
    rels = std::move(kept);
    std::stable_sort(rels.begin(), rels.end(),
                     [](const GroupWord& a, const GroupWord& b) { return a.size() < b.size(); });

    // first relator (shortest first) containing a generator exactly once
    std::size_t pick_rel = rels.size();
    int pick_gen = -1;
    for (std::size_t ri = 0; ri < rels.size() && pick_gen < 0; ++ri) {
      std::vector<int> count(ngens_, 0);
      for (int l : rels[ri]) ++count[static_cast<std::size_t>(std::abs(l) - 1)];
      for (int l : rels[ri]) {
        if (count[static_cast<std::size_t>(std::abs(l) - 1)] == 1) {
          pick_gen = std::abs(l) - 1;
          pick_rel = ri;
          break;
        }
      }
    }
    if (pick_gen < 0) break;
    if (++moves_ > budget) {
      exhausted = true;
      break;
    }

    GroupWord r = rels[pick_rel];
    auto pos = std::find_if(r.begin(), r.end(), [&](int l) { return std::abs(l) == pick_gen + 1; });
    bool positive = *pos > 0;
    GroupWord rotated(pos + 1, r.end());
    rotated.insert(rotated.end(), r.begin(), pos);
    GroupWord value = positive ? invert_group_word(rotated) : reduce_group_word(rotated);

    rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(pick_rel));
    std::size_t total = 0;
    for (auto& other : rels) {
      other = cyclically_reduce(substitute_letter(other, pick_gen, value));
      total += other.size();
    }
    for (auto& s : subst_)
      if (s) {
        *s = substitute_letter(*s, pick_gen, value);
        total += s->size();
      }
    subst_[static_cast<std::size_t>(pick_gen)] = value;
    if (total > kMaxWordLength) {
      exhausted = true;
      break;
    }
  }

  for (std::size_t i = 0; i < ngens_; ++i)
    if (!subst_[i]) live_.push_back(static_cast<int>(i));
  live_index_.assign(ngens_, -1);
  for (std::size_t k = 0; k < live_.size(); ++k) live_index_[static_cast<std::size_t>(live_[k])] = static_cast<int>(k);
  relators_ = std::move(rels);

  if (exhausted) {
    kind_ = Kind::Undecided;
    return;
  }
  if (relators_.empty()) {
    kind_ = Kind::Free;
    return;
  }
  bool abelian = live_.size() <= 1;
  if (!abelian) {
    std::set<std::pair<int, int>> commuting;
    for (const auto& r : relators_) {
      if (r.size() != 4) continue;
      if (r[2] == -r[0] && r[3] == -r[1] && std::abs(r[0]) != std::abs(r[1])) {
        int a = std::abs(r[0]) - 1, b = std::abs(r[1]) - 1;
        commuting.insert({std::min(a, b), std::max(a, b)});
      }
    }
    abelian = true;
    for (std::size_t i = 0; i < live_.size() && abelian; ++i)
      for (std::size_t j = i + 1; j < live_.size(); ++j)
        if (!commuting.count({live_[i], live_[j]})) {
          abelian = false;
          break;
        }
  }
  if (!abelian) {
    kind_ = Kind::Undecided;
    return;
  }
  kind_ = Kind::Abelian;
  std::vector<IntVector> vecs;
  for (const auto& r : relators_) {
    IntVector v(live_.size());
    for (int l : r) v[static_cast<std::size_t>(live_index_[static_cast<std::size_t>(std::abs(l) - 1)])] += l > 0 ? 1 : -1;
    vecs.push_back(std::move(v));
  }
  lattice_ = Lattice(live_.size(), std::move(vecs));
}

bool GroupSolver::is_trivial() const {
  if (kind_ == Kind::Free) return live_.empty();
  if (kind_ == Kind::Abelian) return lattice_.quotient().is_trivial();
  return false;
}

bool GroupSolver::proves_trivial(const GroupWord& w, std::size_t budget) const {
  GroupWord cur = cyclically_reduce(substitute(w));
  if (cur.empty()) return true;
  std::vector<GroupWord> pieces;
  for (const auto& r : relators_)
    for (const GroupWord& rr : {r, invert_group_word(r)})
      for (std::size_t i = 0; i < rr.size(); ++i) {
        GroupWord rot(rr.begin() + static_cast<std::ptrdiff_t>(i), rr.end());
        rot.insert(rot.end(), rr.begin(), rr.begin() + static_cast<std::ptrdiff_t>(i));
        pieces.push_back(std::move(rot));
      }
  std::size_t steps = 0;
  bool changed = true;
  while (changed && !cur.empty()) {
    changed = false;
    // triviality is invariant under conjugation, so every rotation of cur is tried
    for (std::size_t s = 0; s < cur.size() && !changed; ++s) {
      GroupWord rot(cur.begin() + static_cast<std::ptrdiff_t>(s), cur.end());
      rot.insert(rot.end(), cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(s));
      for (const auto& r : pieces) {
        if (++steps > budget) return false;
        std::size_t k = 0;
        while (k < r.size() && k < rot.size() && rot[k] == r[k]) ++k;
        if (2 * k <= r.size()) continue;
        // r = m . rest = 1, so the matched prefix m equals rest^-1
        GroupWord rest(r.begin() + static_cast<std::ptrdiff_t>(k), r.end());
        GroupWord next = invert_group_word(rest);
        next.insert(next.end(), rot.begin() + static_cast<std::ptrdiff_t>(k), rot.end());
        cur = cyclically_reduce(next);
        changed = true;
        break;
      }
    }
  }
  return cur.empty();
}

GroupWord GroupSolver::substitute(const GroupWord& w) const {
  GroupWord out;
  for (int l : w) {
    const auto& s = subst_[static_cast<std::size_t>(std::abs(l) - 1)];
    if (!s) {
      out.push_back(l);
    } else if (l > 0) {
      out.insert(out.end(), s->begin(), s->end());
    } else {
      GroupWord inv = invert_group_word(*s);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return reduce_group_word(out);
}

std::optional<IntVector> GroupSolver::normal_form(const GroupWord& w) const {
  if (kind_ == Kind::Undecided) return std::nullopt;
  GroupWord s = substitute(w);
  if (kind_ == Kind::Free) {
    IntVector out;
    out.reserve(s.size());
    for (int l : s) out.emplace_back(l);
    return out;
  }
  IntVector v(live_.size());
  for (int l : s) v[static_cast<std::size_t>(live_index_[static_cast<std::size_t>(std::abs(l) - 1)])] += l > 0 ? 1 : -1;
  return lattice_.reduce(v);
}

IntVector GroupSolver::identity_key() const {
  if (kind_ == Kind::Abelian) return lattice_.reduce(IntVector(live_.size()));
  return {};
}

IntVector GroupSolver::multiply(const IntVector& a, const IntVector& b) const {
  if (kind_ == Kind::Abelian) {
    IntVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return lattice_.reduce_coordinates(std::move(c));
  }
  GroupWord w;
  for (const auto& x : a) w.push_back(static_cast<int>(x.get_si()));
  for (const auto& x : b) w.push_back(static_cast<int>(x.get_si()));
  w = reduce_group_word(w);
  return IntVector(w.begin(), w.end());
}

IntVector GroupSolver::invert(const IntVector& a) const {
  if (kind_ == Kind::Abelian) {
    IntVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return lattice_.reduce_coordinates(std::move(c));
  }
  IntVector out(a.rbegin(), a.rend());
  for (auto& x : out) x = -x;
  return out;
}

AbelianGroup GroupSolver::abelianization() const {
  std::vector<IntVector> vecs;
  for (const auto& r : relators_) {
    IntVector v(live_.size());
    for (int l : r) v[static_cast<std::size_t>(live_index_[static_cast<std::size_t>(std::abs(l) - 1)])] += l > 0 ? 1 : -1;
    vecs.push_back(std::move(v));
  }
  return Lattice(live_.size(), std::move(vecs)).quotient();
}

std::string GroupSolver::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Free:
      if (live_.empty())
        os << "trivial";
      else
        os << "free of rank " << live_.size();
      break;
    case Kind::Abelian:
      os << lattice_.quotient().to_string();
      break;
    case Kind::Undecided:
      os << "undecided (" << live_.size() << " generators, " << relators_.size() << " relators after "
         << moves_ << " Tietze moves)";
      break;
  }
  return os.str();
}

}  // namespace crx
