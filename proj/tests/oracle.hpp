// Independent reference computations used by the tests. Nothing here shares
// code with the search engine or the closed forms it checks.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "framestarter/starter.hpp"
#include "framestarter/theory.hpp"

namespace oracle {

// Plain integer sum of j^2 over 0 <= j < g with j not divisible by g/h.
inline std::int64_t sum_squares(std::int64_t g, std::int64_t h) {
  std::int64_t r = g / h, s = 0;
  for (std::int64_t j = 0; j < g; ++j)
    if (j % r != 0) s += j * j;
  return s;
}

// Solve 2b = a mod m by trying every b.
inline std::int64_t halve(std::int64_t a, std::int64_t m) {
  for (std::int64_t b = 0; b < m; ++b)
    if ((2 * b) % m == a) return b;
  return -1;
}

struct Counts {
  std::uint64_t matchings = 0;
  std::uint64_t frame = 0;
  std::uint64_t strong = 0;
  std::uint64_t skew = 0;
};

// Every perfect matching of Z_g \ H, checked pair by pair after it is complete.
// No pruning and no symmetry: the matching is built blindly, then tested with
// direct counting arrays.
inline Counts enumerate(std::int64_t h, std::int64_t u,
                        const std::function<void(const std::vector<std::array<std::int64_t, 2>>&, int)>& sink = {}) {
  const std::int64_t g = h * u, r = u;
  std::vector<std::int64_t> pool;
  for (std::int64_t x = 0; x < g; ++x)
    if (x % r != 0) pool.push_back(x);
  Counts c;
  if (pool.size() % 2 != 0) return c;
  std::vector<char> used(pool.size(), 0);
  std::vector<std::array<std::int64_t, 2>> pairs;

  auto level = [&]() {
    // -1 none, 0 frame, 1 strong, 2 skew
    std::vector<int> diff(static_cast<std::size_t>(g), 0), sum(static_cast<std::size_t>(g), 0),
        pmsum(static_cast<std::size_t>(g), 0);
    for (auto& p : pairs) {
      std::int64_t d = ((p[1] - p[0]) % g + g) % g;
      ++diff[static_cast<std::size_t>(d)];
      ++diff[static_cast<std::size_t>((g - d) % g)];
      std::int64_t s = (p[0] + p[1]) % g;
      ++sum[static_cast<std::size_t>(s)];
      ++pmsum[static_cast<std::size_t>(s)];
      ++pmsum[static_cast<std::size_t>((g - s) % g)];
    }
    for (std::int64_t x = 0; x < g; ++x) {
      bool in_h = x % r == 0;
      if (diff[static_cast<std::size_t>(x)] != (in_h ? 0 : 1)) return -1;
    }
    for (std::int64_t x = 0; x < g; ++x) {
      if (x % r == 0 && sum[static_cast<std::size_t>(x)] != 0) return 0;
      if (sum[static_cast<std::size_t>(x)] > 1) return 0;
    }
    for (std::int64_t x = 0; x < g; ++x) {
      bool in_h = x % r == 0;
      if (pmsum[static_cast<std::size_t>(x)] != (in_h ? 0 : 1)) return 1;
    }
    return 2;
  };

  std::function<void()> rec = [&]() {
    std::size_t first = 0;
    while (first < pool.size() && used[first]) ++first;
    if (first == pool.size()) {
      ++c.matchings;
      int lv = level();
      if (lv >= 0) ++c.frame;
      if (lv >= 1) ++c.strong;
      if (lv >= 2) ++c.skew;
      if (sink && lv >= 0) sink(pairs, lv);
      return;
    }
    used[first] = 1;
    for (std::size_t k = first + 1; k < pool.size(); ++k) {
      if (used[k]) continue;
      used[k] = 1;
      pairs.push_back({pool[first], pool[k]});
      rec();
      pairs.pop_back();
      used[k] = 0;
    }
    used[first] = 0;
  };
  rec();
  return c;
}

}  // namespace oracle
