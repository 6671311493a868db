#include "framestarter/table.hpp"

#include <sstream>
#include <stdexcept>

#include "framestarter/corpus.hpp"
#include "framestarter/errors.hpp"

namespace framestarter {

std::string to_string(Existence e) {
  switch (e) {
    case Existence::yes: return "yes";
    case Existence::no: return "no";
    case Existence::open: return "?";
  }
  return "?";
}

std::string to_string(Authority a) {
  switch (a) {
    case Authority::none: return "";
    case Authority::theorem: return "theorem";
    case Authority::example: return "example";
    case Authority::exhaustive_search: return "exhaustive search";
    case Authority::search: return "search";
  }
  return "";
}

std::vector<StarterType> table_types(std::int64_t max_g, bool all_types) {
  if (max_g > kMaxSearchOrder) {
    throw ConfigError("table supports g <= " + std::to_string(kMaxSearchOrder));
  }
  std::vector<StarterType> out;
  for (std::int64_t h = 2; 5 * h <= max_g; ++h) {
    for (std::int64_t u = 5; h * u <= max_g; ++u) {
      StarterType t{h, u};
      if (!t.admissible()) continue;
      if (!all_types && test_prior_theorems(t)) continue;
      out.push_back(t);
    }
  }
  return out;
}

bool is_deep_cell(const StarterType& t) {
  return (t.h == 2 && t.u == 16) || (t.h == 4 && t.u >= 8 && t.u <= 10);
}

namespace {

std::optional<std::string> corpus_example_for(const StarterType& t) {
  for (const auto& d : load_corpus()) {
    if (d.starter.group().is_cyclic() && d.starter.h() == t.h && d.starter.u() == t.u) return d.id;
  }
  return std::nullopt;
}

}  // namespace

TableRow table_cell(const StarterType& t, const TableOptions& opts) {
  TableRow row;
  row.type = t;

  Certification cert = certify(t);
  if (cert.certificate && cert.certificate->rules_out(Property::skew)) {
    row.existence = Existence::no;
    row.authority = Authority::theorem;
    row.certificate = cert.certificate;
    row.detail = to_string(cert.certificate->rule);
    return row;
  }

  auto construction = known_construction(t);
  auto example = corpus_example_for(t);
  if (construction) {
    row.existence = Existence::yes;
    row.authority = Authority::theorem;
    row.detail = "F_q x Z_2 construction";
  } else if (example) {
    row.existence = Existence::yes;
    row.authority = Authority::example;
    row.detail = *example;
  }

  if (is_deep_cell(t) && !opts.deep) {
    if (row.existence == Existence::open) row.detail = "skipped, needs --deep";
    return row;
  }

  SearchConfig cfg;
  cfg.target_type = t;
  cfg.property = Property::skew;
  cfg.mode = SearchMode::find_first;
  cfg.node_budget = is_deep_cell(t) ? opts.deep_budget : opts.cell_budget;
  cfg.worker_count = opts.worker_count;
  cfg.multiplier_pruning = true;
  SearchOutcome out = search(cfg);
  row.searched = true;
  row.nodes = out.nodes_visited;

  auto append = [&](const std::string& s) { row.detail += (row.detail.empty() ? "" : "; ") + s; };
  switch (out.result) {
    case SearchResult::found:
      row.witness = out.starters.front();
      if (row.existence == Existence::open) {
        row.existence = Existence::yes;
        row.authority = Authority::search;
      }
      append("witness found in " + std::to_string(out.nodes_visited) + " nodes");
      break;
    case SearchResult::exhausted_none:
      if (row.existence == Existence::yes) {
        throw std::logic_error("search exhausted type " + t.to_string() + " although a starter is known");
      }
      row.existence = Existence::no;
      row.authority = Authority::exhaustive_search;
      row.certificate = certificate_from_search(out);
      append(std::to_string(out.nodes_visited) + " nodes");
      break;
    case SearchResult::budget_exceeded:
      append("budget of " + std::to_string(*cfg.node_budget) + " nodes exceeded");
      break;
  }
  return row;
}

std::vector<TableRow> build_table(const TableOptions& opts) {
  std::vector<TableRow> rows;
  for (const auto& t : table_types(opts.max_g, opts.all_types)) {
    rows.push_back(table_cell(t, opts));
    if (opts.on_cell) {
      const auto& r = rows.back();
      opts.on_cell(t.to_string() + " " + to_string(r.existence) + " " + to_string(r.authority));
    }
  }
  return rows;
}

std::string render_markdown(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "| type | existence | authority | detail |\n";
  out << "|---|---|---|---|\n";
  for (const auto& r : rows) {
    out << "| " << r.type.to_string() << " | " << to_string(r.existence) << " | " << to_string(r.authority) << " | "
        << r.detail << " |\n";
  }
  return out.str();
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string render_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "type,existence,authority,detail\n";
  for (const auto& r : rows) {
    out << csv_field(r.type.to_string()) << ',' << csv_field(to_string(r.existence)) << ','
        << csv_field(to_string(r.authority)) << ',' << csv_field(r.detail) << '\n';
  }
  return out.str();
}

json table_to_json(const std::vector<TableRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j{{"type", r.type.to_string()},
           {"existence", to_string(r.existence)},
           {"authority", to_string(r.authority)},
           {"detail", r.detail},
           {"searched", r.searched},
           {"nodes", r.nodes}};
    if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
    if (r.witness) j["witness"] = starter_to_json(*r.witness);
    arr.push_back(j);
  }
  return arr;
}

}  // namespace framestarter
