#include "framestarter/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "framestarter/errors.hpp"

namespace framestarter {

std::string to_string(SearchMode m) {
  switch (m) {
    case SearchMode::find_first: return "find_first";
    case SearchMode::exhaustive_count: return "exhaustive_count";
    case SearchMode::prove_nonexistence: return "prove_nonexistence";
  }
  return "?";
}

std::string to_string(SearchResult r) {
  switch (r) {
    case SearchResult::found: return "found";
    case SearchResult::exhausted_none: return "exhausted_none";
    case SearchResult::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

std::string to_string(BranchRule b) {
  switch (b) {
    case BranchRule::least_element: return "least_element";
    case BranchRule::fewest_candidates: return "fewest_candidates";
  }
  return "?";
}

SearchMode parse_search_mode(const std::string& s) {
  if (s == "find_first") return SearchMode::find_first;
  if (s == "exhaustive_count") return SearchMode::exhaustive_count;
  if (s == "prove_nonexistence") return SearchMode::prove_nonexistence;
  throw ParseError("mode", "expected find_first, exhaustive_count or prove_nonexistence, got '" + s + "'");
}

BranchRule parse_branch_rule(const std::string& s) {
  if (s == "least_element") return BranchRule::least_element;
  if (s == "fewest_candidates") return BranchRule::fewest_candidates;
  throw ParseError("branch", "expected least_element or fewest_candidates, got '" + s + "'");
}

namespace {

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  // Returns 0 when a is not a unit.
  std::int64_t old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) return 0;
  return ((old_s % m) + m) % m;
}

void validate(const SearchConfig& cfg) {
  const auto& t = cfg.target_type;
  if (t.h < 1 || t.u < 2) throw InvalidTypeError("type " + t.to_string() + " needs h >= 1 and u >= 2");
  if (!t.admissible()) throw InvalidTypeError("type " + t.to_string() + " has g - h odd");
  if (t.g() > kMaxSearchOrder) {
    throw ConfigError("search supports g <= " + std::to_string(kMaxSearchOrder) + ", got " + std::to_string(t.g()));
  }
  if (cfg.worker_count < 1) throw ConfigError("worker_count must be >= 1");
  if (cfg.node_budget && *cfg.node_budget < 1) throw ConfigError("node_budget must be >= 1");
  if (!cfg.node_budget && t.g() > kUnboundedSearchOrder) {
    throw ConfigError("g = " + std::to_string(t.g()) + " > " + std::to_string(kUnboundedSearchOrder) +
                      " needs an explicit node budget");
  }
}

// ---------------------------------------------------------------------------
// Fixed-width bitset over Z_g with cyclic rotation.

template <int W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  int lowest() const {
    for (int k = 0; k < W; ++k)
      if (w[k]) return k * 64 + std::countr_zero(w[k]);
    return -1;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    for (int k = 0; k < W; ++k) r.w[k] = w[k] & o.w[k];
    return r;
  }
  Bits operator|(const Bits& o) const {
    Bits r;
    for (int k = 0; k < W; ++k) r.w[k] = w[k] | o.w[k];
    return r;
  }

  template <class F>
  void for_each(F&& f) const {
    for (int k = 0; k < W; ++k) {
      std::uint64_t x = w[k];
      while (x) {
        int b = std::countr_zero(x);
        x &= x - 1;
        f(k * 64 + b);
      }
    }
  }

  Bits shl(int n) const {
    Bits r;
    const int ws = n >> 6, bs = n & 63;
    for (int k = W - 1; k >= ws; --k) {
      std::uint64_t v = w[k - ws] << bs;
      if (bs && k - ws - 1 >= 0) v |= w[k - ws - 1] >> (64 - bs);
      r.w[k] = v;
    }
    return r;
  }
  Bits shr(int n) const {
    Bits r;
    const int ws = n >> 6, bs = n & 63;
    for (int k = 0; k + ws < W; ++k) {
      std::uint64_t v = w[k + ws] >> bs;
      if (bs && k + ws + 1 < W) v |= w[k + ws + 1] << (64 - bs);
      r.w[k] = v;
    }
    return r;
  }
};

template <>
inline Bits<1> Bits<1>::shl(int n) const {
  Bits r;
  r.w[0] = n >= 64 ? 0 : w[0] << n;
  return r;
}
template <>
inline Bits<1> Bits<1>::shr(int n) const {
  Bits r;
  r.w[0] = n >= 64 ? 0 : w[0] >> n;
  return r;
}

// Cyclic left rotation by k of a bitset over Z_g: bit i moves to (i + k) mod g.
template <int W>
Bits<W> rotate(const Bits<W>& x, int k, int g, const Bits<W>& mask) {
  if (k == 0) return x;
  return (x.shl(k) | x.shr(g - k)) & mask;
}

// ---------------------------------------------------------------------------

struct Shared {
  const SearchConfig& cfg;
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
  std::atomic<std::uint64_t> nodes{0};
  std::mutex mu;
  std::uint64_t solution_count = 0;
  std::vector<std::vector<std::pair<int, int>>> kept;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::uint64_t next_progress = 0;

  explicit Shared(const SearchConfig& c) : cfg(c), next_progress(c.progress_interval) {}
};

template <int W>
class Engine {
 public:
  Engine(Shared& shared, int g, int h, Property property)
      : shared_(shared), g_(g), r_(g / h), pairs_total_((g - h) / 2), property_(property) {
    for (int i = 0; i < g_; ++i) mask_.set(i);
    for (int v = 0; v < g_; ++v) {
      bool in_h = v % r_ == 0;
      bool involution = (2 * v) % g_ == 0;
      if (!in_h) free0_.set(v);
      if (!in_h && !involution) diff0_.set(v);
      switch (property_) {
        case Property::frame: sum0_.set(v); break;
        case Property::strong:
          if (!in_h) sum0_.set(v);
          break;
        case Property::skew:
          if (!in_h && !involution) sum0_.set(v);
          break;
      }
    }
    single_worker_ = shared_.cfg.worker_count == 1;
    budget_ = shared_.cfg.node_budget.value_or(UINT64_MAX);
    placed_.reserve(static_cast<std::size_t>(pairs_total_));
  }

  // Explores the subtree below the root pair {x, y}.
  void run_branch(int x, int y) {
    if (shared_.cfg.multiplier_pruning) build_lex_masks(y);
    Node n{free0_, diff0_, sum0_};
    place(n, x, y);
    dfs(n);
    unplace();
  }

  void finish() { flush(); }

 private:
  struct Node {
    Bits<W> free, diff, sum;
  };

  Bits<W> rotl(const Bits<W>& x, int k) const { return rotate(x, k, g_, mask_); }

  Bits<W> candidates(const Node& n, int e) const {
    Bits<W> c = n.free & rotl(n.diff, e);
    if (property_ != Property::frame) c = c & rotl(n.sum, (g_ - e) % g_);
    if (shared_.cfg.multiplier_pruning) c = c & lex_[static_cast<std::size_t>(e)];
    return c;
  }

  void place(Node& n, int x, int y) {
    n.free.reset(x);
    n.free.reset(y);
    int d = ((y - x) % g_ + g_) % g_;
    n.diff.reset(d);
    n.diff.reset((g_ - d) % g_);
    int s = (x + y) % g_;
    if (property_ == Property::skew) {
      n.sum.reset(s);
      n.sum.reset((g_ - s) % g_);
    } else if (property_ == Property::strong) {
      n.sum.reset(s);
    }
    placed_.emplace_back(x, y);
  }

  void unplace() { placed_.pop_back(); }

  // Returns false when the search must stop.
  bool count_node() {
    if (shared_.stop.load(std::memory_order_relaxed)) return false;
    if (base_ + pending_ + 1 > budget_) {
      flush();
      if (base_ + pending_ + 1 > budget_) {
        shared_.budget_hit = true;
        shared_.stop = true;
        return false;
      }
    }
    ++pending_;
    if (pending_ >= (single_worker_ ? (1u << 16) : 1024u)) flush();
    return true;
  }

  void flush() {
    if (pending_ == 0) return;
    std::uint64_t total = shared_.nodes.fetch_add(pending_) + pending_;
    pending_ = 0;
    base_ = total;
    if (shared_.cfg.on_progress && total >= shared_.next_progress) {
      std::lock_guard lock(shared_.mu);
      if (total >= shared_.next_progress) {
        shared_.next_progress = total + shared_.cfg.progress_interval;
        ProgressEvent ev;
        ev.nodes = total;
        ev.depth = placed_.size();
        ev.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - shared_.start).count();
        shared_.cfg.on_progress(ev);
      }
    }
  }

  void record() {
    std::lock_guard lock(shared_.mu);
    ++shared_.solution_count;
    if (shared_.kept.size() < shared_.cfg.max_kept_solutions || shared_.cfg.mode != SearchMode::exhaustive_count) {
      shared_.kept.push_back(placed_);
    }
    if (shared_.cfg.mode != SearchMode::exhaustive_count) shared_.stop = true;
  }

  void dfs(Node& n) {
    if (!count_node()) return;
    if (static_cast<int>(placed_.size()) == pairs_total_) {
      record();
      return;
    }
    int e = -1;
    Bits<W> cand;
    if (shared_.cfg.branch_rule == BranchRule::least_element) {
      e = n.free.lowest();
      cand = candidates(n, e);
    } else {
      int best = INT32_MAX;
      bool dead = false;
      n.free.for_each([&](int x) {
        if (dead || best == 1) return;
        Bits<W> c = candidates(n, x);
        int k = c.count();
        if (k == 0) {
          dead = true;
        } else if (k < best) {
          best = k;
          e = x;
          cand = c;
        }
      });
      if (dead) return;
    }
    bool stopped = false;
    cand.for_each([&](int y) {
      if (stopped) return;
      Node child = n;
      place(child, e, y);
      dfs(child);
      unplace();
      if (shared_.stop.load(std::memory_order_relaxed)) stopped = true;
    });
  }

  // Lex-leader masks for multiplier pruning: with 1 paired to y0, a pair {a, b}
  // is allowed only if b/a >= y0 whenever a is a unit (and a/b >= y0 for b).
  void build_lex_masks(int y0) {
    lex_.assign(static_cast<std::size_t>(g_), Bits<W>{});
    std::vector<std::int64_t> inv(static_cast<std::size_t>(g_));
    for (int x = 0; x < g_; ++x) inv[static_cast<std::size_t>(x)] = inverse_mod(x, g_);
    for (int a = 0; a < g_; ++a) {
      for (int b = 0; b < g_; ++b) {
        bool ok = true;
        if (auto ia = inv[static_cast<std::size_t>(a)]; ia && (b * ia) % g_ < y0) ok = false;
        if (auto ib = inv[static_cast<std::size_t>(b)]; ib && (a * ib) % g_ < y0) ok = false;
        if (ok) lex_[static_cast<std::size_t>(a)].set(b);
      }
    }
  }

  Shared& shared_;
  int g_, r_, pairs_total_;
  Property property_;
  Bits<W> mask_, free0_, diff0_, sum0_;
  std::vector<Bits<W>> lex_;
  std::vector<std::pair<int, int>> placed_;
  bool single_worker_ = true;
  std::uint64_t budget_ = UINT64_MAX;
  std::uint64_t base_ = 0;
  std::uint64_t pending_ = 0;
};

template <int W>
void run_workers(Shared& shared, const std::vector<Branch>& roots) {
  const auto& cfg = shared.cfg;
  const int g = static_cast<int>(cfg.target_type.g());
  const int h = static_cast<int>(cfg.target_type.h);
  const int workers = std::min<int>(cfg.worker_count, std::max<int>(1, static_cast<int>(roots.size())));

  auto work = [&](int id) {
    Engine<W> engine(shared, g, h, cfg.property);
    for (std::size_t i = static_cast<std::size_t>(id); i < roots.size(); i += static_cast<std::size_t>(workers)) {
      if (shared.stop) break;
      engine.run_branch(static_cast<int>(roots[i].element), static_cast<int>(roots[i].partner));
    }
    engine.finish();
  };

  if (workers == 1) {
    work(0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int id = 0; id < workers; ++id) {
    pool.emplace_back([&, id] {
      try {
        work(id);
      } catch (...) {
        errors[static_cast<std::size_t>(id)] = std::current_exception();
        shared.stop = true;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool starter_less(const FrameStarter& a, const FrameStarter& b) { return a.pairs() < b.pairs(); }

template <int W>
std::vector<std::int64_t> candidates_with_bits(const SearchState& st, std::int64_t x) {
  const int g = static_cast<int>(st.type().g());
  const int r = static_cast<int>(st.type().u);
  Bits<W> mask, free, diff, sum;
  for (int v = 0; v < g; ++v) {
    mask.set(v);
    bool in_h = v % r == 0;
    bool involution = (2 * v) % g == 0;
    if (!in_h && !st.element_used(v)) free.set(v);
    if (!in_h && !involution && !st.difference_used(v)) diff.set(v);
    bool sum_ok = st.property() == Property::frame ||
                  (!in_h && !st.sum_used(v) && (st.property() == Property::strong || !involution));
    if (sum_ok) sum.set(v);
  }
  const int e = static_cast<int>(x);
  Bits<W> c = free & rotate(diff, e, g, mask);
  if (st.property() != Property::frame) c = c & rotate(sum, (g - e) % g, g, mask);
  std::vector<std::int64_t> out;
  if (e % r == 0 || st.element_used(e)) return out;
  c.for_each([&](int y) { out.push_back(y); });
  return out;
}

}  // namespace

std::vector<std::int64_t> bitset_candidates(const SearchState& state, std::int64_t x) {
  const auto g = state.type().g();
  if (g > kMaxSearchOrder) throw ConfigError("bitset engine supports g <= " + std::to_string(kMaxSearchOrder));
  if (g <= 64) return candidates_with_bits<1>(state, x);
  if (g <= 128) return candidates_with_bits<2>(state, x);
  if (g <= 256) return candidates_with_bits<4>(state, x);
  if (g <= 512) return candidates_with_bits<8>(state, x);
  return candidates_with_bits<16>(state, x);
}

SearchOutcome search(const SearchConfig& cfg_in) {
  SearchConfig cfg = cfg_in;
  if (cfg.multiplier_pruning) cfg.symmetry_reduction = true;
  validate(cfg);

  const auto& t = cfg.target_type;
  Shared shared(cfg);

  SearchState empty(t, cfg.property);
  std::vector<Branch> roots = canonical_first_branch(empty, cfg.symmetry_reduction);

  bool root_ok = true;
  if (cfg.node_budget && *cfg.node_budget < 1) root_ok = false;
  shared.nodes = 1;  // the empty root
  if (root_ok) {
    const auto g = t.g();
    if (g <= 64) run_workers<1>(shared, roots);
    else if (g <= 128) run_workers<2>(shared, roots);
    else if (g <= 256) run_workers<4>(shared, roots);
    else if (g <= 512) run_workers<8>(shared, roots);
    else run_workers<16>(shared, roots);
  }

  SearchOutcome out;
  out.config = cfg;
  out.nodes_visited = shared.nodes.load();
  out.solution_count = shared.solution_count;
  out.wall_time = std::chrono::steady_clock::now() - shared.start;

  GroupSpec G = GroupSpec::cyclic(t.g());
  SubgroupSpec H = cyclic_subgroup(G, t.h);
  for (const auto& sol : shared.kept) {
    std::vector<Pair> pairs;
    pairs.reserve(sol.size());
    for (auto [x, y] : sol) pairs.push_back(make_pair(Element{x}, Element{y}));
    FrameStarter s(H, std::move(pairs));
    auto report = verify(s, cfg.property);
    if (!report.holds(cfg.property)) {
      throw std::logic_error("search produced a starter failing " + to_string(cfg.property) + " verification: " +
                             (report.witness ? report.witness->detail : std::string()));
    }
    out.starters.push_back(std::move(s));
  }
  std::sort(out.starters.begin(), out.starters.end(), starter_less);

  const bool budget_hit = shared.budget_hit.load();
  if (cfg.mode == SearchMode::exhaustive_count) {
    out.complete = !budget_hit;
    if (budget_hit) out.result = SearchResult::budget_exceeded;
    else out.result = out.solution_count > 0 ? SearchResult::found : SearchResult::exhausted_none;
  } else {
    if (out.solution_count > 0) {
      out.result = SearchResult::found;
      out.complete = false;
    } else if (budget_hit) {
      out.result = SearchResult::budget_exceeded;
    } else {
      out.result = SearchResult::exhausted_none;
      out.complete = true;
    }
  }
  return out;
}

SearchOutcome search_strong(SearchConfig cfg) {
  cfg.property = Property::strong;
  return search(cfg);
}

std::optional<NonexistenceCertificate> certificate_from_search(const SearchOutcome& outcome) {
  if (outcome.result != SearchResult::exhausted_none || !outcome.complete) return std::nullopt;
  NonexistenceCertificate c;
  c.type = outcome.config.target_type;
  c.level = outcome.config.property;
  c.rule = Rule::exhaustive_search;
  c.statement = "complete backtracking over Z_" + std::to_string(c.type.g()) + " (" +
                std::to_string(outcome.nodes_visited) + " nodes" +
                (outcome.config.symmetry_reduction ? ", root multiplier reduction" : "") +
                (outcome.config.multiplier_pruning ? ", multiplier pruning" : "") + ") found no " +
                (c.level == Property::frame ? std::string() : to_string(c.level) + " ") + "frame starter";
  return c;
}

// ---------------------------------------------------------------------------

SearchState::SearchState(StarterType type, Property property)
    : type_(type), property_(property), g_(type.g()), r_(type.u) {
  if (!type.admissible()) throw InvalidTypeError("type " + type.to_string() + " has g - h odd");
  elem_used_.assign(static_cast<std::size_t>(g_), 0);
  diff_used_.assign(static_cast<std::size_t>(g_), 0);
  sum_used_.assign(static_cast<std::size_t>(g_), 0);
}

bool SearchState::can_place(std::int64_t x, std::int64_t y) const {
  if (x < 0 || y < 0 || x >= g_ || y >= g_ || x == y) return false;
  if (in_subgroup(x) || in_subgroup(y) || element_used(x) || element_used(y)) return false;
  std::int64_t d = reduce(y - x);
  if (in_subgroup(d) || reduce(2 * d) == 0 || diff_used_[static_cast<std::size_t>(d)]) return false;
  std::int64_t s = reduce(x + y);
  switch (property_) {
    case Property::frame: return true;
    case Property::strong: return !in_subgroup(s) && !sum_used_[static_cast<std::size_t>(s)];
    case Property::skew:
      return !in_subgroup(s) && reduce(2 * s) != 0 && !sum_used_[static_cast<std::size_t>(s)];
  }
  return false;
}

void SearchState::place(std::int64_t x, std::int64_t y) {
  if (!can_place(x, y)) {
    throw PreconditionError("pair {" + std::to_string(x) + "," + std::to_string(y) + "} conflicts with the state");
  }
  elem_used_[static_cast<std::size_t>(x)] = elem_used_[static_cast<std::size_t>(y)] = 1;
  std::int64_t d = reduce(y - x);
  diff_used_[static_cast<std::size_t>(d)] = diff_used_[static_cast<std::size_t>(reduce(-d))] = 1;
  std::int64_t s = reduce(x + y);
  if (property_ == Property::strong) sum_used_[static_cast<std::size_t>(s)] = 1;
  if (property_ == Property::skew) sum_used_[static_cast<std::size_t>(s)] = sum_used_[static_cast<std::size_t>(reduce(-s))] = 1;
  placed_.emplace_back(std::min(x, y), std::max(x, y));
}

std::optional<std::int64_t> SearchState::least_uncovered() const {
  for (std::int64_t x = 1; x < g_; ++x) {
    if (!in_subgroup(x) && !element_used(x)) return x;
  }
  return std::nullopt;
}

std::vector<std::int64_t> SearchState::candidates(std::int64_t x) const {
  std::vector<std::int64_t> out;
  for (std::int64_t y = 0; y < g_; ++y)
    if (can_place(x, y)) out.push_back(y);
  return out;
}

bool SearchState::consistent() const {
  SearchState fresh(type_, property_);
  for (auto [x, y] : placed_) {
    if (!fresh.can_place(x, y)) return false;
    fresh.place(x, y);
  }
  return fresh.elem_used_ == elem_used_ && fresh.diff_used_ == diff_used_ && fresh.sum_used_ == sum_used_;
}

std::vector<Branch> canonical_first_branch(const SearchState& state, bool symmetry_reduction) {
  std::vector<Branch> out;
  if (state.complete()) return out;
  auto e = state.least_uncovered();
  if (!e) return out;
  const std::int64_t g = state.type().g();
  for (std::int64_t y : state.candidates(*e)) {
    if (symmetry_reduction && state.placed().empty()) {
      std::int64_t inv = inverse_mod(y, g);
      if (inv != 0 && inv < y) continue;
    }
    out.push_back(Branch{*e, y});
  }
  return out;
}

}  // namespace framestarter
