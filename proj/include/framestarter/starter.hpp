#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framestarter/group.hpp"

namespace framestarter {

/// The three nested starter properties. Ordered: skew implies strong implies frame.
enum class Property { frame = 0, strong = 1, skew = 2 };

std::string to_string(Property p);
Property parse_property(const std::string& name);

/// Unordered pair {first, second} kept in lexicographic order.
struct Pair {
  Element first;
  Element second;

  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Builds a canonical pair; throws StructuralError when a == b.
Pair make_pair(Element a, Element b);

/**
 * A set of (g-h)/2 pairs over G \ H, stored sorted.
 *
 * Construction checks the shape only: the pair count, and that every member
 * lies in G \ H. Whether the pairs actually form a frame starter is answered
 * by the verify_* functions.
 */
class FrameStarter {
 public:
  FrameStarter(SubgroupSpec subgroup, std::vector<Pair> pairs);

  const GroupSpec& group() const noexcept { return subgroup_.group(); }
  const SubgroupSpec& subgroup() const noexcept { return subgroup_; }
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }

  /// Declared type h^u.
  std::int64_t h() const noexcept { return subgroup_.order(); }
  std::int64_t u() const noexcept { return group().order() / h(); }
  std::string type_string() const;

  std::string format(const Pair& p) const;

  friend bool operator==(const FrameStarter& a, const FrameStarter& b) {
    return a.subgroup_ == b.subgroup_ && a.pairs_ == b.pairs_;
  }

 private:
  SubgroupSpec subgroup_;
  std::vector<Pair> pairs_;
};

/// Negated starter -S = {{-x, -y}}.
FrameStarter negate(const FrameStarter& s);

struct Witness {
  Property property;
  std::string detail;
};

/**
 * Outcome of verification up to `checked`. The flags always satisfy
 * is_skew => is_strong => is_frame; `witness` names the first violation.
 */
struct VerificationReport {
  bool is_frame = false;
  bool is_strong = false;
  bool is_skew = false;
  Property checked = Property::skew;
  std::optional<Witness> witness;
  /// Every violation found; only filled when verbose verification is requested.
  std::vector<Witness> diagnostics;

  bool holds(Property p) const noexcept;
  /// Strongest property that holds, or nullopt if not even a frame starter.
  std::optional<Property> level() const noexcept;
};

VerificationReport verify(const FrameStarter& s, Property up_to, bool verbose = false);
inline VerificationReport verify_frame(const FrameStarter& s) { return verify(s, Property::frame); }
inline VerificationReport verify_strong(const FrameStarter& s) { return verify(s, Property::strong); }
inline VerificationReport verify_skew(const FrameStarter& s) { return verify(s, Property::skew); }

/// One adder entry: `base + translate` is a pair of the orthogonal starter.
struct AdderEntry {
  Pair base;
  Element translate;

  friend bool operator==(const AdderEntry&, const AdderEntry&) = default;
};

struct Adder {
  SubgroupSpec subgroup;
  std::vector<AdderEntry> entries;
};

/// Translates are distinct and avoid H.
bool is_valid_adder(const Adder& a);
/// {±a_i} partitions G \ H.
bool is_skew_adder(const Adder& a);

struct OrthogonalityResult {
  bool orthogonal = false;
  std::optional<Adder> adder;
  std::optional<std::string> witness;
};

/**
 * Matches the pairs of `s1` and `s2` by difference and checks that the
 * translates s1 -> s2 are distinct elements of G \ H. The adder maps each
 * pair of `s1` onto its partner in `s2`.
 *
 * Throws NotComparableError when the starters live over different (G, H)
 * or their difference multisets cannot be matched.
 */
OrthogonalityResult verify_orthogonal(const FrameStarter& s1, const FrameStarter& s2);

/// Pair counts a_{i,j} by residues of the members mod m (i <= j).
struct TypeCensus {
  std::int64_t modulus = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> counts;

  std::int64_t count(std::int64_t i, std::int64_t j) const;
  std::int64_t total() const;
};

TypeCensus type_census(const FrameStarter& s, std::int64_t m);

/// Sum of (x_i + y_i)^2 mod g over all pairs. Cyclic odd order only.
std::int64_t quadratic_sum_check(const FrameStarter& s);

/// {j : 1 <= j <= (g-1)/2, j not divisible by r}. Cyclic odd order only.
std::vector<std::int64_t> half_set(const GroupSpec& spec, const SubgroupSpec& h);

}  // namespace framestarter
