#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "framestarter/corpus.hpp"
#include "framestarter/starter.hpp"

namespace testing {

inline framestarter::FrameStarter cyclic_starter(std::int64_t g, std::int64_t h,
                                                 const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
  using namespace framestarter;
  GroupSpec z = GroupSpec::cyclic(g);
  std::vector<Pair> ps;
  for (auto [a, b] : pairs) ps.push_back(make_pair(Element{a}, Element{b}));
  return FrameStarter(cyclic_subgroup(z, h), std::move(ps));
}

inline framestarter::FrameStarter example(const std::string& id) { return framestarter::corpus_entry(id).starter; }

}  // namespace testing
