#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framestarter/starter.hpp"
#include "framestarter/theory.hpp"

namespace framestarter {

enum class SearchMode { find_first, exhaustive_count, prove_nonexistence };
enum class SearchResult { found, exhausted_none, budget_exceeded };

/// How the engine picks the element to branch on below the root.
enum class BranchRule {
  least_element,      // smallest uncovered element
  fewest_candidates,  // uncovered element with the fewest feasible partners
};

std::string to_string(SearchMode m);
std::string to_string(SearchResult r);
std::string to_string(BranchRule b);
SearchMode parse_search_mode(const std::string& s);
BranchRule parse_branch_rule(const std::string& s);

struct ProgressEvent {
  std::uint64_t nodes = 0;
  std::size_t depth = 0;
  double elapsed_seconds = 0;
};

/// Largest group order the search engine handles.
inline constexpr std::int64_t kMaxSearchOrder = 1024;
/// Orders above this need an explicit node budget.
inline constexpr std::int64_t kUnboundedSearchOrder = 60;

struct SearchConfig {
  StarterType target_type;
  Property property = Property::skew;
  SearchMode mode = SearchMode::find_first;
  std::optional<std::uint64_t> node_budget;
  int worker_count = 1;
  /// Root reduction: the partner y of element 1 is restricted to y <= y^{-1}
  /// whenever y is a unit (multiplying a starter by y^{-1} swaps the two).
  bool symmetry_reduction = true;
  /// Full multiplier lex-leader pruning below the root (implies symmetry_reduction).
  bool multiplier_pruning = false;
  BranchRule branch_rule = BranchRule::fewest_candidates;
  /// Starters retained in exhaustive_count mode; all are counted.
  std::size_t max_kept_solutions = 1000;
  std::function<void(const ProgressEvent&)> on_progress;
  std::uint64_t progress_interval = 1u << 24;
};

struct SearchOutcome {
  SearchResult result = SearchResult::exhausted_none;
  /// Verified starters, sorted canonically.
  std::vector<FrameStarter> starters;
  /// Number of solutions found (exact in exhaustive_count mode without budget stop).
  std::uint64_t solution_count = 0;
  std::uint64_t nodes_visited = 0;
  std::chrono::duration<double> wall_time{0};
  /// The whole (reduced) tree was traversed.
  bool complete = false;
  SearchConfig config;
};

/// Throws InvalidTypeError for inadmissible types, ConfigError for bad settings.
SearchOutcome search(const SearchConfig& cfg);

/// Same engine with property forced to strong.
SearchOutcome search_strong(SearchConfig cfg);

/// Certificate backed by a completed search that found nothing.
std::optional<NonexistenceCertificate> certificate_from_search(const SearchOutcome& outcome);

/**
 * Partial assignment over Z_g \ H used to explain and test branching. Tracks
 * which elements, +-differences and sums are taken.
 */
class SearchState {
 public:
  SearchState(StarterType type, Property property);

  const StarterType& type() const noexcept { return type_; }
  Property property() const noexcept { return property_; }
  const std::vector<std::pair<std::int64_t, std::int64_t>>& placed() const noexcept { return placed_; }

  bool in_subgroup(std::int64_t x) const noexcept { return x % r_ == 0; }
  bool element_used(std::int64_t x) const { return elem_used_.at(static_cast<std::size_t>(x)) != 0; }
  bool difference_used(std::int64_t d) const { return diff_used_.at(static_cast<std::size_t>(d)) != 0; }
  bool sum_used(std::int64_t s) const { return sum_used_.at(static_cast<std::size_t>(s)) != 0; }
  bool can_place(std::int64_t x, std::int64_t y) const;
  /// Throws PreconditionError when the pair conflicts with the state.
  void place(std::int64_t x, std::int64_t y);

  std::optional<std::int64_t> least_uncovered() const;
  std::vector<std::int64_t> candidates(std::int64_t x) const;
  bool complete() const noexcept { return 2 * placed_.size() == static_cast<std::size_t>(type_.g() - type_.h); }

  /// Every occupancy table agrees with the placed pairs.
  bool consistent() const;

 private:
  std::int64_t reduce(std::int64_t v) const { return ((v % g_) + g_) % g_; }

  StarterType type_;
  Property property_;
  std::int64_t g_;
  std::int64_t r_;
  std::vector<std::pair<std::int64_t, std::int64_t>> placed_;
  std::vector<char> elem_used_;
  std::vector<char> diff_used_;
  std::vector<char> sum_used_;
};

struct Branch {
  std::int64_t element = 0;
  std::int64_t partner = 0;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/**
 * Branches on the least uncovered element against every feasible partner,
 * in increasing order. On the empty state with `symmetry_reduction`, partners
 * y that are units with y^{-1} < y are dropped.
 */
std::vector<Branch> canonical_first_branch(const SearchState& state, bool symmetry_reduction);

/// Partners of x computed with the engine's word-parallel bitset rotations.
/// Must equal state.candidates(x); exposed for testing.
std::vector<std::int64_t> bitset_candidates(const SearchState& state, std::int64_t x);

}  // namespace framestarter
