#include <doctest.h>

#include <random>
#include <set>

#include "framestarter/errors.hpp"
#include "framestarter/search.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace framestarter;

namespace {

SearchOutcome run(StarterType t, Property p, SearchMode m, bool symmetry = true, int workers = 1) {
  SearchConfig cfg;
  cfg.target_type = t;
  cfg.property = p;
  cfg.mode = m;
  cfg.symmetry_reduction = symmetry;
  cfg.worker_count = workers;
  cfg.max_kept_solutions = 100000;
  return search(cfg);
}

std::set<std::vector<Pair>> pair_sets(const SearchOutcome& o) {
  std::set<std::vector<Pair>> out;
  for (const auto& s : o.starters) out.insert(s.pairs());
  return out;
}

// Counts from the unpruned matching enumerator in oracle.hpp:
// h, u, perfect matchings, frame, strong, skew.
struct Frozen {
  std::int64_t h, u;
  std::uint64_t matchings, frame, strong, skew;
};
constexpr Frozen kOracleCounts[] = {
    {1, 3, 1, 1, 0, 0},          {2, 2, 1, 0, 0, 0},      {1, 5, 3, 1, 0, 0},        {2, 3, 3, 0, 0, 0},
    {1, 7, 15, 3, 2, 2},         {2, 4, 15, 4, 0, 0},     {4, 2, 3, 0, 0, 0},        {1, 9, 105, 9, 0, 0},
    {3, 3, 15, 3, 0, 0},         {2, 5, 105, 8, 8, 8},    {1, 11, 945, 25, 4, 4},    {2, 6, 945, 0, 0, 0},
    {4, 3, 105, 0, 0, 0},        {6, 2, 15, 0, 0, 0},     {1, 13, 10395, 133, 8, 8}, {2, 7, 10395, 0, 0, 0},
    {1, 15, 135135, 631, 32, 0}, {3, 5, 10395, 75, 0, 0}, {5, 3, 945, 15, 0, 0},     {2, 8, 135135, 768, 64, 0},
    {4, 4, 10395, 64, 0, 0},     {8, 2, 105, 0, 0, 0},
};

}  // namespace

TEST_CASE("canonical first branch") {
  SearchState empty({1, 7}, Property::skew);
  auto b = canonical_first_branch(empty, true);
  CHECK(b == std::vector<Branch>{{1, 2}, {1, 3}});
  CHECK(canonical_first_branch(empty, false).size() == 4);

  SearchState one({1, 7}, Property::skew);
  one.place(1, 3);
  auto b1 = canonical_first_branch(one, true);
  REQUIRE_FALSE(b1.empty());
  for (const auto& br : b1) CHECK(br.element == 2);

  SearchState full({1, 7}, Property::skew);
  full.place(1, 5);
  full.place(2, 3);
  full.place(4, 6);
  CHECK(full.complete());
  CHECK(full.consistent());
  CHECK(canonical_first_branch(full, true).empty());
}

TEST_CASE("search state bookkeeping") {
  SearchState s({2, 5}, Property::skew);
  CHECK(s.in_subgroup(5));
  CHECK_FALSE(s.can_place(5, 1));
  CHECK_FALSE(s.can_place(1, 1));
  s.place(3, 4);
  CHECK(s.element_used(3));
  CHECK(s.difference_used(1));
  CHECK(s.difference_used(9));
  CHECK(s.sum_used(7));
  CHECK(s.sum_used(3));
  CHECK_THROWS_AS(s.place(3, 7), PreconditionError);
  CHECK(s.least_uncovered() == 1);
  CHECK(s.consistent());
}

TEST_CASE("bitset candidates match the reference state, every width") {
  std::mt19937_64 rng(7);
  for (std::int64_t g : {15, 21, 64, 65, 100, 128, 129, 200, 256, 257, 400, 512, 513, 800, 1024}) {
    for (std::int64_t h = 1; h <= g; ++h) {
      if (g % h != 0 || (g - h) % 2 != 0 || g / h < 2) continue;
      if (h > 8) break;
      for (Property p : {Property::frame, Property::strong, Property::skew}) {
        SearchState st({h, g / h}, p);
        // random greedy partial assignment
        for (int step = 0; step < 20; ++step) {
          auto e = st.least_uncovered();
          if (!e) break;
          std::int64_t x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g));
          auto cand = st.candidates(x);
          CHECK(bitset_candidates(st, x) == cand);
          if (!cand.empty()) st.place(x, cand[rng() % cand.size()]);
        }
        CHECK(st.consistent());
      }
    }
  }
}

TEST_CASE("search examples") {
  CHECK(run({3, 7}, Property::skew, SearchMode::prove_nonexistence).result == SearchResult::exhausted_none);
  auto f = run({4, 5}, Property::skew, SearchMode::find_first);
  REQUIRE(f.result == SearchResult::found);
  CHECK(verify_skew(f.starters.front()).is_skew);
  CHECK(run({6, 5}, Property::skew, SearchMode::prove_nonexistence).result == SearchResult::exhausted_none);
  auto strong55 = run({5, 5}, Property::strong, SearchMode::prove_nonexistence);
  CHECK(strong55.result == SearchResult::exhausted_none);
  CHECK(strong55.complete);
  SearchConfig c;
  c.target_type = {2, 5};
  c.mode = SearchMode::find_first;
  auto s25 = search_strong(c);
  CHECK(s25.result == SearchResult::found);
  CHECK(s25.config.property == Property::strong);
  CHECK(run({1, 7}, Property::skew, SearchMode::find_first).result == SearchResult::found);
}

TEST_CASE("search certificate") {
  auto o = run({2, 8}, Property::skew, SearchMode::prove_nonexistence);
  auto cert = certificate_from_search(o);
  REQUIRE(cert);
  CHECK(cert->rule == Rule::exhaustive_search);
  CHECK(cert->level == Property::skew);
  CHECK(cert->type == StarterType{2, 8});
  CHECK_FALSE(certificate_from_search(run({2, 5}, Property::skew, SearchMode::find_first)));
}

TEST_CASE("search configuration errors") {
  SearchConfig c;
  c.target_type = {1, 8};
  CHECK_THROWS_AS(search(c), InvalidTypeError);
  c.target_type = {2, 33};
  CHECK_THROWS_AS(search(c), ConfigError);
  c.node_budget = 0;
  CHECK_THROWS_AS(search(c), ConfigError);
  c.target_type = {1, 1025};
  c.node_budget = 10;
  CHECK_THROWS_AS(search(c), ConfigError);
  c.target_type = {2, 5};
  c.worker_count = 0;
  CHECK_THROWS_AS(search(c), ConfigError);
}

TEST_CASE("budget stops the search") {
  SearchConfig c;
  c.target_type = {6, 9};
  c.node_budget = 1'000'000;
  auto o = search(c);
  CHECK(o.result == SearchResult::budget_exceeded);
  CHECK_FALSE(o.complete);
  CHECK(o.nodes_visited <= 1'000'000);
  CHECK_FALSE(certificate_from_search(o));

  c.mode = SearchMode::prove_nonexistence;
  c.target_type = {4, 7};
  c.node_budget = 1000;
  auto p = search(c);
  CHECK(p.result == SearchResult::budget_exceeded);
  CHECK_FALSE(certificate_from_search(p));
}

TEST_CASE("progress events") {
  SearchConfig c;
  c.target_type = {4, 7};
  c.mode = SearchMode::prove_nonexistence;
  c.progress_interval = 10000;
  int events = 0;
  std::uint64_t last = 0;
  c.on_progress = [&](const ProgressEvent& e) {
    ++events;
    CHECK(e.nodes > last);
    last = e.nodes;
  };
  auto o = search(c);
  CHECK(o.result == SearchResult::exhausted_none);
  CHECK(events > 0);
}

TEST_CASE("oracle: pruned engine matches the unpruned enumerator for g <= 16") {
  for (const auto& f : kOracleCounts) {
    CAPTURE(f.h);
    CAPTURE(f.u);
    auto live = oracle::enumerate(f.h, f.u);
    CHECK(live.matchings == f.matchings);
    CHECK(live.frame == f.frame);
    CHECK(live.strong == f.strong);
    CHECK(live.skew == f.skew);
    const std::uint64_t expected[] = {f.frame, f.strong, f.skew};
    for (Property p : {Property::frame, Property::strong, Property::skew}) {
      auto exact = run({f.h, f.u}, p, SearchMode::exhaustive_count, false);
      CHECK(exact.solution_count == expected[static_cast<int>(p)]);
      CHECK(exact.complete);
      auto reduced = run({f.h, f.u}, p, SearchMode::find_first, true);
      CHECK((reduced.result == SearchResult::found) == (expected[static_cast<int>(p)] > 0));
    }
  }
}

TEST_CASE("symmetry safety: same existence answers with and without reduction, g <= 24") {
  for (std::int64_t g = 3; g <= 24; ++g) {
    for (std::int64_t h = 1; h <= g / 2; ++h) {
      if (g % h != 0 || (g - h) % 2 != 0) continue;
      for (Property p : {Property::frame, Property::strong, Property::skew}) {
        auto on = run({h, g / h}, p, SearchMode::find_first, true);
        auto off = run({h, g / h}, p, SearchMode::find_first, false);
        SearchConfig c;
        c.target_type = {h, g / h};
        c.property = p;
        c.multiplier_pruning = true;
        auto mult = search(c);
        CAPTURE(g);
        CAPTURE(h);
        CHECK(on.result == off.result);
        CHECK(mult.result == off.result);
        CHECK(off.result != SearchResult::budget_exceeded);
      }
    }
  }
}

TEST_CASE("least-element branching finds the same answers") {
  for (auto t : {StarterType{2, 8}, StarterType{3, 7}, StarterType{4, 5}, StarterType{1, 13}}) {
    SearchConfig c;
    c.target_type = t;
    c.mode = SearchMode::exhaustive_count;
    c.symmetry_reduction = false;
    auto mrv = search(c);
    c.branch_rule = BranchRule::least_element;
    auto lex = search(c);
    CHECK(mrv.solution_count == lex.solution_count);
    CHECK(pair_sets(mrv) == pair_sets(lex));
  }
}

TEST_CASE("determinism with one worker") {
  for (auto t : {StarterType{3, 13}, StarterType{2, 9}}) {
    auto a = run(t, Property::skew, SearchMode::find_first);
    auto b = run(t, Property::skew, SearchMode::find_first);
    CHECK(a.nodes_visited == b.nodes_visited);
    CHECK(pair_sets(a) == pair_sets(b));
  }
}

TEST_CASE("parallel equivalence of exhaustive counts") {
  for (auto t : {StarterType{1, 13}, StarterType{2, 5}, StarterType{1, 11}}) {
    for (Property p : {Property::frame, Property::skew}) {
      auto one = run(t, p, SearchMode::exhaustive_count, true, 1);
      auto many = run(t, p, SearchMode::exhaustive_count, true, 3);
      CHECK(one.solution_count == many.solution_count);
      CHECK(pair_sets(one) == pair_sets(many));
      CHECK(one.nodes_visited == many.nodes_visited);
    }
  }
  auto proof = run({4, 7}, Property::skew, SearchMode::prove_nonexistence, true, 4);
  CHECK(proof.result == SearchResult::exhausted_none);
  CHECK(proof.nodes_visited == run({4, 7}, Property::skew, SearchMode::prove_nonexistence).nodes_visited);
}

TEST_CASE("exhaustive count keeps at most max_kept starters but counts all") {
  SearchConfig c;
  c.target_type = {1, 13};
  c.property = Property::frame;
  c.mode = SearchMode::exhaustive_count;
  c.symmetry_reduction = false;
  c.max_kept_solutions = 5;
  auto o = search(c);
  CHECK(o.solution_count == 133);
  CHECK(o.starters.size() == 5);
}

TEST_CASE("every returned starter verifies") {
  for (auto t : {StarterType{2, 13}, StarterType{3, 13}, StarterType{5, 7}, StarterType{2, 17}}) {
    auto o = run(t, Property::skew, SearchMode::find_first);
    REQUIRE(o.result == SearchResult::found);
    for (const auto& s : o.starters) {
      CHECK(verify_skew(s).is_skew);
      CHECK(s.h() == t.h);
      CHECK(s.u() == t.u);
    }
  }
}
