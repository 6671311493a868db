#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "framestarter/corpus.hpp"
#include "framestarter/errors.hpp"
#include "framestarter/serialize.hpp"
#include "framestarter/table.hpp"

namespace py = pybind11;
namespace fs = framestarter;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
std::string dump(const fs::json& j) { return j.dump(); }

fs::StarterDocument document(const std::string& text) { return fs::parse_starter_text(text); }

std::string verify(const std::string& text, const std::string& property) {
  auto d = document(text);
  return dump(fs::report_to_json(fs::verify(d.starter, fs::parse_property(property))));
}

std::string certify(const std::string& type) {
  return dump(fs::certification_to_json(fs::certify(fs::StarterType::parse(type))));
}

std::string run_search(const std::string& type, const std::string& property, const std::string& mode,
                       std::optional<std::uint64_t> budget, int workers, bool symmetry, bool multiplier,
                       const std::string& branch, std::size_t max_kept) {
  fs::SearchConfig c;
  c.target_type = fs::StarterType::parse(type);
  c.property = fs::parse_property(property);
  c.mode = fs::parse_search_mode(mode);
  c.node_budget = budget;
  c.worker_count = workers;
  c.symmetry_reduction = symmetry;
  c.multiplier_pruning = multiplier;
  c.branch_rule = fs::parse_branch_rule(branch);
  c.max_kept_solutions = max_kept;
  fs::SearchOutcome out;
  {
    py::gil_scoped_release release;
    out = fs::search(c);
  }
  return dump(fs::outcome_to_json(out));
}

std::string table(std::int64_t max_g, std::uint64_t budget, bool deep, bool all_types, int workers) {
  fs::TableOptions o;
  o.max_g = max_g;
  o.cell_budget = budget;
  o.deep = deep;
  o.all_types = all_types;
  o.worker_count = workers;
  std::vector<fs::TableRow> rows;
  {
    py::gil_scoped_release release;
    rows = fs::build_table(o);
  }
  return dump(fs::table_to_json(rows));
}

std::string render_table(std::int64_t max_g, std::uint64_t budget, const std::string& format) {
  fs::TableOptions o;
  o.max_g = max_g;
  o.cell_budget = budget;
  auto rows = fs::build_table(o);
  if (format == "csv") return fs::render_csv(rows);
  if (format == "md") return fs::render_markdown(rows);
  throw fs::ConfigError("unknown table format '" + format + "'");
}

std::string corpus() {
  fs::json arr = fs::json::array();
  for (const auto& d : fs::load_corpus()) arr.push_back(fs::document_to_json(d));
  return dump(arr);
}

std::string check_corpus() {
  fs::json arr = fs::json::array();
  for (const auto& c : fs::check_corpus()) {
    fs::json j{{"id", c.id}, {"type", c.type}, {"claimed", fs::to_string(c.claimed)}, {"passed", c.passed},
               {"report", fs::report_to_json(c.report)}};
    if (c.note) j["note"] = *c.note;
    arr.push_back(j);
  }
  return dump(arr);
}

std::string strong_to_adder(const std::string& text) {
  auto d = document(text);
  auto a = fs::strong_to_adder(d.starter);
  fs::json entries = fs::json::array();
  for (const auto& e : a.entries) {
    entries.push_back({{"pair", {e.base.first.value(), e.base.second.value()}}, {"translate", e.translate.value()}});
  }
  return dump(fs::json{{"entries", entries}, {"skew", fs::is_skew_adder(a)}, {"valid", fs::is_valid_adder(a)}});
}

std::string round_trip(const std::string& text) {
  auto d = document(text);
  d.starter = fs::adder_to_strong(fs::strong_to_adder(d.starter));
  return dump(fs::document_to_json(d));
}

std::map<std::string, std::int64_t> census(const std::string& text, std::int64_t m) {
  auto c = fs::type_census(document(text).starter, m);
  std::map<std::string, std::int64_t> out;
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = i; j < m; ++j) out[std::to_string(i) + "," + std::to_string(j)] = c.count(i, j);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  auto base = py::register_exception<fs::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<fs::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<fs::InvalidTypeError>(m, "InvalidTypeError", base.ptr());
  py::register_exception<fs::ConfigError>(m, "ConfigError", base.ptr());

  m.def("verify", &verify, py::arg("text"), py::arg("property"));
  m.def("certify", &certify, py::arg("type"));
  m.def("search", &run_search, py::arg("type"), py::arg("property"), py::arg("mode"), py::arg("budget"),
        py::arg("workers"), py::arg("symmetry"), py::arg("multiplier"), py::arg("branch"), py::arg("max_kept"));
  m.def("table", &table, py::arg("max_g"), py::arg("budget"), py::arg("deep"), py::arg("all_types"),
        py::arg("workers"));
  m.def("render_table", &render_table, py::arg("max_g"), py::arg("budget"), py::arg("format"));
  m.def("corpus", &corpus);
  m.def("check_corpus", &check_corpus);
  m.def("strong_to_adder", &strong_to_adder, py::arg("text"));
  m.def("round_trip", &round_trip, py::arg("text"));
  m.def("census", &census, py::arg("text"), py::arg("m"));
  m.def("sum_of_squares", &fs::sum_of_squares_closed_form, py::arg("g"), py::arg("h"));
}
