#include "framestarter/starter.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "framestarter/errors.hpp"

namespace framestarter {

std::string to_string(Property p) {
  switch (p) {
    case Property::frame: return "frame";
    case Property::strong: return "strong";
    case Property::skew: return "skew";
  }
  return "?";
}

Property parse_property(const std::string& name) {
  if (name == "frame") return Property::frame;
  if (name == "strong") return Property::strong;
  if (name == "skew") return Property::skew;
  throw ParseError("property", "expected frame, strong or skew, got '" + name + "'");
}

Pair make_pair(Element a, Element b) {
  if (a == b) throw StructuralError("pair members must differ");
  if (b < a) std::swap(a, b);
  return Pair{std::move(a), std::move(b)};
}

FrameStarter::FrameStarter(SubgroupSpec subgroup, std::vector<Pair> pairs)
    : subgroup_(std::move(subgroup)), pairs_(std::move(pairs)) {
  const std::int64_t g = group().order();
  const std::int64_t h = subgroup_.order();
  if ((g - h) % 2 != 0) {
    throw InvalidTypeError("g - h must be even for a frame starter (g=" + std::to_string(g) +
                           ", h=" + std::to_string(h) + ")");
  }
  if (static_cast<std::int64_t>(pairs_.size()) != (g - h) / 2) {
    throw StructuralError("type " + type_string() + " needs " + std::to_string((g - h) / 2) + " pairs, got " +
                          std::to_string(pairs_.size()));
  }
  for (auto& p : pairs_) {
    for (const Element* e : {&p.first, &p.second}) {
      if (!group().contains(*e)) throw StructuralError("pair member is not a canonical element of " + group().to_string());
      if (subgroup_.contains(*e)) throw StructuralError("pair member " + group().format(*e) + " lies in H");
    }
    if (p.first == p.second) throw StructuralError("pair members must differ");
    if (p.second < p.first) std::swap(p.first, p.second);
  }
  std::sort(pairs_.begin(), pairs_.end());
}

std::string FrameStarter::type_string() const {
  return std::to_string(h()) + "^" + std::to_string(u());
}

std::string FrameStarter::format(const Pair& p) const {
  return "{" + group().format(p.first) + "," + group().format(p.second) + "}";
}

FrameStarter negate(const FrameStarter& s) {
  std::vector<Pair> pairs;
  pairs.reserve(s.pairs().size());
  for (const auto& p : s.pairs()) pairs.push_back(make_pair(neg(s.group(), p.first), neg(s.group(), p.second)));
  return FrameStarter(s.subgroup(), std::move(pairs));
}

bool VerificationReport::holds(Property p) const noexcept {
  switch (p) {
    case Property::frame: return is_frame;
    case Property::strong: return is_strong;
    case Property::skew: return is_skew;
  }
  return false;
}

std::optional<Property> VerificationReport::level() const noexcept {
  if (is_skew) return Property::skew;
  if (is_strong) return Property::strong;
  if (is_frame) return Property::frame;
  return std::nullopt;
}

namespace {

// Records, for each dense index, which pair first produced it.
class Occupancy {
 public:
  explicit Occupancy(std::int64_t g) : owner_(static_cast<std::size_t>(g), -1) {}

  // Returns the previous owner or -1.
  std::int64_t claim(std::int64_t idx, std::int64_t pair) {
    auto& slot = owner_[static_cast<std::size_t>(idx)];
    if (slot >= 0) return slot;
    slot = pair;
    return -1;
  }

 private:
  std::vector<std::int64_t> owner_;
};

class Verifier {
 public:
  Verifier(const FrameStarter& s, bool verbose) : s_(s), verbose_(verbose) {}

  VerificationReport run(Property up_to) {
    VerificationReport report;
    report.checked = up_to;
    report.is_frame = check_frame();
    if (up_to >= Property::strong && (report.is_frame || verbose_)) {
      bool strong = check_strong();
      report.is_strong = report.is_frame && strong;
      if (up_to >= Property::skew && (report.is_strong || verbose_)) {
        bool skew = check_skew();
        report.is_skew = report.is_strong && skew;
      }
    }
    if (!failures_.empty()) report.witness = failures_.front();
    if (verbose_) report.diagnostics = std::move(failures_);
    return report;
  }

 private:
  const GroupSpec& G() const { return s_.group(); }
  std::int64_t idx(const Element& e) const { return G().index(e); }
  std::string fmt(const Element& e) const { return G().format(e); }
  std::string pair_str(std::int64_t i) const { return s_.format(s_.pairs()[static_cast<std::size_t>(i)]); }

  bool fail(Property p, std::string detail) {
    failures_.push_back(Witness{p, std::move(detail)});
    return verbose_;  // keep scanning only when collecting everything
  }

  bool check_frame() {
    bool ok = true;
    const auto& pairs = s_.pairs();
    Occupancy members(G().order());
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs.size()); ++i) {
      for (const Element* e : {&pairs[i].first, &pairs[i].second}) {
        std::int64_t prev = members.claim(idx(*e), i);
        if (prev >= 0) {
          ok = false;
          if (!fail(Property::frame, "element " + fmt(*e) + " appears in " + pair_str(prev) + " and " + pair_str(i)))
            return false;
        }
      }
    }
    Occupancy diffs(G().order());
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs.size()); ++i) {
      const auto& p = pairs[i];
      Element d = sub(G(), p.second, p.first);
      if (s_.subgroup().contains(d)) {
        ok = false;
        if (!fail(Property::frame, "difference " + fmt(d) + " ∈ H (pair " + pair_str(i) + ")")) return false;
        continue;
      }
      for (const Element& v : {d, neg(G(), d)}) {
        std::int64_t prev = diffs.claim(idx(v), i);
        if (prev >= 0) {
          ok = false;
          std::string other = prev == i ? "itself" : pair_str(prev);
          if (!fail(Property::frame, "difference " + fmt(v) + " repeated (pair " + pair_str(i) + " and " + other + ")"))
            return false;
        }
      }
    }
    return ok;
  }

  bool check_strong() {
    bool ok = true;
    const auto& pairs = s_.pairs();
    Occupancy sums(G().order());
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs.size()); ++i) {
      Element sum = add(G(), pairs[i].first, pairs[i].second);
      if (s_.subgroup().contains(sum)) {
        ok = false;
        if (!fail(Property::strong, "sum " + fmt(sum) + " ∈ H (pair " + pair_str(i) + ")")) return false;
        continue;
      }
      std::int64_t prev = sums.claim(idx(sum), i);
      if (prev >= 0) {
        ok = false;
        if (!fail(Property::strong, "sum " + fmt(sum) + " repeated (pairs " + pair_str(prev) + " and " + pair_str(i) + ")"))
          return false;
      }
    }
    return ok;
  }

  bool check_skew() {
    bool ok = true;
    const auto& pairs = s_.pairs();
    Occupancy sums(G().order());
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs.size()); ++i) {
      Element sum = add(G(), pairs[i].first, pairs[i].second);
      if (s_.subgroup().contains(sum)) {
        ok = false;
        if (!fail(Property::skew, "sum " + fmt(sum) + " ∈ H (pair " + pair_str(i) + ")")) return false;
        continue;
      }
      for (const Element& v : {sum, neg(G(), sum)}) {
        std::int64_t prev = sums.claim(idx(v), i);
        if (prev >= 0) {
          ok = false;
          std::string other = prev == i ? "itself" : pair_str(prev);
          if (!fail(Property::skew, "±sum " + fmt(v) + " repeated (pair " + pair_str(i) + " and " + other + ")"))
            return false;
        }
      }
    }
    return ok;
  }

  const FrameStarter& s_;
  bool verbose_;
  std::vector<Witness> failures_;
};

}  // namespace

VerificationReport verify(const FrameStarter& s, Property up_to, bool verbose) {
  return Verifier(s, verbose).run(up_to);
}

bool is_valid_adder(const Adder& a) {
  const auto& G = a.subgroup.group();
  std::vector<char> seen(static_cast<std::size_t>(G.order()), 0);
  for (const auto& e : a.entries) {
    if (a.subgroup.contains(e.translate)) return false;
    auto& slot = seen[static_cast<std::size_t>(G.index(e.translate))];
    if (slot) return false;
    slot = 1;
  }
  return true;
}

bool is_skew_adder(const Adder& a) {
  const auto& G = a.subgroup.group();
  if (static_cast<std::int64_t>(a.entries.size()) * 2 != G.order() - a.subgroup.order()) return false;
  std::vector<char> seen(static_cast<std::size_t>(G.order()), 0);
  for (const auto& e : a.entries) {
    if (a.subgroup.contains(e.translate)) return false;
    for (const Element& v : {e.translate, neg(G, e.translate)}) {
      auto& slot = seen[static_cast<std::size_t>(G.index(v))];
      if (slot) return false;
      slot = 1;
    }
  }
  return true;
}

OrthogonalityResult verify_orthogonal(const FrameStarter& s1, const FrameStarter& s2) {
  if (!(s1.subgroup() == s2.subgroup())) {
    throw NotComparableError("starters live over different (G, H)");
  }
  const GroupSpec& G = s1.group();
  const auto& p1 = s1.pairs();
  const auto& p2 = s2.pairs();

  // Oriented difference -> (pair index in s2, orientation flip).
  std::multimap<std::int64_t, std::pair<std::size_t, bool>> by_diff;
  for (std::size_t j = 0; j < p2.size(); ++j) {
    by_diff.emplace(G.index(sub(G, p2[j].second, p2[j].first)), std::make_pair(j, false));
    by_diff.emplace(G.index(sub(G, p2[j].first, p2[j].second)), std::make_pair(j, true));
  }

  // Each s1 pair, oriented (x, y), gets the list of (u, v) in s2 with v - u = y - x.
  struct Option {
    std::size_t partner;
    Element translate;
  };
  std::vector<std::vector<Option>> options(p1.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const auto& [x, y] = p1[i];
    auto range = by_diff.equal_range(G.index(sub(G, y, x)));
    for (auto it = range.first; it != range.second; ++it) {
      auto [j, flip] = it->second;
      const Element& u = flip ? p2[j].second : p2[j].first;
      options[i].push_back(Option{j, sub(G, u, x)});
    }
    if (options[i].empty()) {
      throw NotComparableError("no pair of the second starter has difference ±" + G.format(sub(G, y, x)));
    }
  }

  // Alignments are ambiguous only for differences of order 2, so a plain
  // depth-first search over options is cheap. `require_adder` additionally
  // demands distinct translates outside H.
  std::vector<char> partner_used(p2.size(), 0);
  std::vector<char> translate_used(static_cast<std::size_t>(G.order()), 0);
  std::vector<const Option*> chosen(p1.size(), nullptr);

  std::function<bool(std::size_t, bool)> dfs = [&](std::size_t i, bool require_adder) -> bool {
    if (i == p1.size()) return true;
    for (const auto& opt : options[i]) {
      if (partner_used[opt.partner]) continue;
      auto t = static_cast<std::size_t>(G.index(opt.translate));
      if (require_adder && (translate_used[t] || s1.subgroup().contains(opt.translate))) continue;
      partner_used[opt.partner] = 1;
      translate_used[t] = 1;
      chosen[i] = &opt;
      if (dfs(i + 1, require_adder)) return true;
      partner_used[opt.partner] = 0;
      translate_used[t] = 0;
    }
    return false;
  };

  if (!dfs(0, false)) throw NotComparableError("difference multisets of the two starters do not match");
  std::vector<const Option*> alignment = chosen;

  OrthogonalityResult result;
  std::fill(partner_used.begin(), partner_used.end(), 0);
  std::fill(translate_used.begin(), translate_used.end(), 0);
  if (dfs(0, true)) {
    result.orthogonal = true;
    Adder adder{s1.subgroup(), {}};
    for (std::size_t i = 0; i < p1.size(); ++i) adder.entries.push_back(AdderEntry{p1[i], chosen[i]->translate});
    result.adder = std::move(adder);
    return result;
  }

  std::vector<std::int64_t> owner(static_cast<std::size_t>(G.order()), -1);
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const Element& t = alignment[i]->translate;
    if (s1.subgroup().contains(t)) {
      result.witness = "translate " + G.format(t) + " ∈ H (pair " + s1.format(p1[i]) + ")";
      return result;
    }
    auto& slot = owner[static_cast<std::size_t>(G.index(t))];
    if (slot >= 0) {
      result.witness = "translate " + G.format(t) + " repeated (pairs " + s1.format(p1[static_cast<std::size_t>(slot)]) +
                       " and " + s1.format(p1[i]) + ")";
      return result;
    }
    slot = static_cast<std::int64_t>(i);
  }
  result.witness = "no alignment yields distinct translates outside H";
  return result;
}

std::int64_t TypeCensus::count(std::int64_t i, std::int64_t j) const {
  if (i > j) std::swap(i, j);
  auto it = counts.find({i, j});
  return it == counts.end() ? 0 : it->second;
}

std::int64_t TypeCensus::total() const {
  std::int64_t t = 0;
  for (const auto& [k, v] : counts) t += v;
  return t;
}

TypeCensus type_census(const FrameStarter& s, std::int64_t m) {
  TypeCensus census;
  census.modulus = m;
  for (const auto& p : s.pairs()) {
    std::int64_t a = reduce_mod(s.group(), p.first, m);
    std::int64_t b = reduce_mod(s.group(), p.second, m);
    if (a > b) std::swap(a, b);
    ++census.counts[{a, b}];
  }
  return census;
}

std::int64_t quadratic_sum_check(const FrameStarter& s) {
  const GroupSpec& G = s.group();
  if (!G.is_cyclic() || G.order() % 2 == 0) {
    throw UnsupportedOperationError("quadratic sum check needs a cyclic group of odd order");
  }
  const auto g = static_cast<__int128>(G.order());
  __int128 acc = 0;
  for (const auto& p : s.pairs()) {
    __int128 sum = add(G, p.first, p.second).value();
    acc = (acc + sum * sum) % g;
  }
  return static_cast<std::int64_t>(acc);
}

std::vector<std::int64_t> half_set(const GroupSpec& spec, const SubgroupSpec& h) {
  if (!spec.is_cyclic() || spec.order() % 2 == 0) {
    throw UnsupportedOperationError("half set needs a cyclic group of odd order");
  }
  if (!(h.group() == spec)) throw StructuralError("subgroup belongs to a different group");
  const std::int64_t r = h.index();
  std::vector<std::int64_t> out;
  for (std::int64_t j = 1; j <= (spec.order() - 1) / 2; ++j) {
    if (j % r != 0) out.push_back(j);
  }
  return out;
}

}  // namespace framestarter
