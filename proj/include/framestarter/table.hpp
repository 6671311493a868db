#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "framestarter/serialize.hpp"

namespace framestarter {

enum class Existence { yes, no, open };
enum class Authority { none, theorem, example, exhaustive_search, search };

std::string to_string(Existence e);
std::string to_string(Authority a);

struct TableOptions {
  std::int64_t max_g = 57;
  std::uint64_t cell_budget = 1'000'000'000;
  /// Run the heavy exhaustive cells (2^16, 4^8, 4^9, 4^10) with deep_budget.
  bool deep = false;
  std::uint64_t deep_budget = 100'000'000'000;
  /// Keep types already excluded by the classical order/quotient obstructions.
  bool all_types = false;
  int worker_count = 1;
  std::function<void(const std::string&)> on_cell;
};

struct TableRow {
  StarterType type;
  Existence existence = Existence::open;
  Authority authority = Authority::none;
  std::string detail;
  std::optional<NonexistenceCertificate> certificate;
  std::optional<FrameStarter> witness;
  std::uint64_t nodes = 0;
  bool searched = false;
};

/// Types h^u with h >= 2, u >= 5, g <= max_g, g - h even, in order of h then u.
std::vector<StarterType> table_types(std::int64_t max_g, bool all_types);
bool is_deep_cell(const StarterType& t);

TableRow table_cell(const StarterType& t, const TableOptions& opts);
std::vector<TableRow> build_table(const TableOptions& opts);

std::string render_markdown(const std::vector<TableRow>& rows);
std::string render_csv(const std::vector<TableRow>& rows);
json table_to_json(const std::vector<TableRow>& rows);

}  // namespace framestarter
