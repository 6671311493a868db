// framestarter: verify, certify, search, table and corpus subcommands.
//
// Exit codes: 0 decided / verified, 1 verified false, 2 input error,
// 3 open or budget exceeded.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "framestarter/corpus.hpp"
#include "framestarter/errors.hpp"
#include "framestarter/search.hpp"
#include "framestarter/serialize.hpp"
#include "framestarter/table.hpp"
#include "framestarter/theory.hpp"

namespace fs = framestarter;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInput = 2;
constexpr int kOpen = 3;

// Accepts 1000000, 10^6 and 1e6.
std::uint64_t parse_budget(const std::string& text) {
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw fs::ParseError("--budget", "expected N, a^b or aEb, got '" + text + "'");
    }
    return std::stoull(s);
  };
  auto power = [&](std::uint64_t base, std::uint64_t exp) {
    unsigned __int128 v = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
      v *= base;
      if (v > UINT64_MAX) throw fs::ParseError("--budget", "value too large: '" + text + "'");
    }
    return static_cast<std::uint64_t>(v);
  };
  if (auto p = text.find('^'); p != std::string::npos) return power(number(text.substr(0, p)), number(text.substr(p + 1)));
  if (auto p = text.find_first_of("eE"); p != std::string::npos) {
    unsigned __int128 v = static_cast<unsigned __int128>(number(text.substr(0, p))) * power(10, number(text.substr(p + 1)));
    if (v > UINT64_MAX) throw fs::ParseError("--budget", "value too large: '" + text + "'");
    return static_cast<std::uint64_t>(v);
  }
  std::uint64_t v = number(text);
  if (v == 0) throw fs::ParseError("--budget", "budget must be >= 1");
  return v;
}

int default_workers() {
  if (const char* env = std::getenv("FRAMESTARTER_WORKERS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
    }
    throw fs::ConfigError("FRAMESTARTER_WORKERS must be a positive integer, got '" + std::string(env) + "'");
  }
  return 1;
}

void print_report(const fs::VerificationReport& r) {
  std::cout << "frame:  " << (r.is_frame ? "yes" : "no") << "\n";
  std::cout << "strong: " << (r.checked >= fs::Property::strong ? (r.is_strong ? "yes" : "no") : "not checked") << "\n";
  std::cout << "skew:   " << (r.checked >= fs::Property::skew ? (r.is_skew ? "yes" : "no") : "not checked") << "\n";
  if (r.witness) std::cout << "witness: " << r.witness->detail << "\n";
  for (std::size_t i = 1; i < r.diagnostics.size(); ++i) std::cout << "  also: " << r.diagnostics[i].detail << "\n";
}

void print_certificate(const fs::NonexistenceCertificate& c) {
  std::string kind = c.level == fs::Property::frame ? "" : fs::to_string(c.level) + " ";
  std::cout << "no " << kind << "frame starter of type " << c.type.to_string() << "\n";
  std::cout << "  rule: " << fs::to_string(c.rule) << "\n";
  std::cout << "  " << c.statement << "\n";
  if (c.special_case) std::cout << "  case: " << *c.special_case << "\n";
}

struct VerifyArgs {
  std::string file;
  std::string property = "skew";
  bool json = false;
  bool verbose = false;
};

int cmd_verify(const VerifyArgs& a) {
  fs::Property p = fs::parse_property(a.property);
  fs::StarterDocument d = fs::read_starter_file(a.file);
  auto report = fs::verify(d.starter, p, a.verbose);
  if (a.json) {
    fs::json j = fs::report_to_json(report);
    j["type"] = d.starter.type_string();
    j["group"] = d.starter.group().to_string();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << a.file << ": type " << d.starter.type_string() << " in " << d.starter.group().to_string() << "\n";
    print_report(report);
    std::cout << (report.holds(p) ? "PASS " : "FAIL ") << a.property << "\n";
  }
  return report.holds(p) ? kOk : kFalse;
}

struct CertifyArgs {
  std::string type;
  bool json = false;
};

int cmd_certify(const CertifyArgs& a) {
  fs::StarterType t = fs::StarterType::parse(a.type);
  if (!t.admissible()) throw fs::InvalidTypeError("type " + t.to_string() + " has g - h odd");
  fs::Certification c = fs::certify(t);
  auto construction = fs::known_construction(t);
  if (a.json) {
    fs::json j = fs::certification_to_json(c);
    if (construction) j["construction"] = *construction;
    std::cout << j.dump(2) << "\n";
  } else if (c.certificate) {
    print_certificate(*c.certificate);
    for (std::size_t i = 1; i < c.all.size(); ++i) {
      std::cout << "  also: " << fs::to_string(c.all[i].rule) << " (" << fs::to_string(c.all[i].level) << ")\n";
    }
  } else {
    std::cout << "open: no nonexistence rule applies to type " << t.to_string() << "\n";
    if (construction) std::cout << "  exists: " << *construction << "\n";
  }
  return c.certificate ? kOk : kOpen;
}

struct SearchArgs {
  std::string type;
  std::string property = "skew";
  std::string mode = "find_first";
  std::optional<std::string> budget;
  std::optional<int> workers;
  bool no_symmetry = false;
  bool multiplier = false;
  std::string branch = "fewest_candidates";
  std::size_t max_kept = 1000;
  std::string out_dir = ".";
  bool no_write = false;
  bool progress = false;
  bool json = false;
};

int cmd_search(const SearchArgs& a) {
  fs::SearchConfig cfg;
  cfg.target_type = fs::StarterType::parse(a.type);
  cfg.property = fs::parse_property(a.property);
  cfg.mode = fs::parse_search_mode(a.mode);
  if (a.budget) cfg.node_budget = parse_budget(*a.budget);
  cfg.worker_count = a.workers ? *a.workers : default_workers();
  cfg.symmetry_reduction = !a.no_symmetry;
  cfg.multiplier_pruning = a.multiplier;
  cfg.branch_rule = fs::parse_branch_rule(a.branch);
  cfg.max_kept_solutions = a.max_kept;
  if (a.progress) {
    cfg.on_progress = [](const fs::ProgressEvent& e) { std::cerr << fs::progress_to_json(e).dump() << "\n"; };
  }
  fs::SearchOutcome out = fs::search(cfg);

  std::vector<std::string> written;
  if (!a.no_write && !out.starters.empty()) {
    std::filesystem::create_directories(a.out_dir);
    for (std::size_t i = 0; i < out.starters.size(); ++i) {
      std::string id = "search-" + std::to_string(cfg.target_type.h) + "^" + std::to_string(cfg.target_type.u) +
                       "-" + a.property + (out.starters.size() > 1 ? "-" + std::to_string(i + 1) : "");
      std::string path = (std::filesystem::path(a.out_dir) / (id + ".json")).string();
      fs::write_starter_file(path, fs::StarterDocument{out.starters[i], id, std::nullopt, cfg.property, std::nullopt});
      written.push_back(path);
    }
  }

  if (a.json) {
    fs::json j = fs::outcome_to_json(out);
    j["files"] = written;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "type " << cfg.target_type.to_string() << ", " << a.property << ", " << a.mode << ": "
              << fs::to_string(out.result) << "\n";
    std::cout << "  nodes " << out.nodes_visited << ", solutions " << out.solution_count << ", "
              << out.wall_time.count() << " s\n";
    if (!out.starters.empty()) {
      const auto& s = out.starters.front();
      std::cout << " ";
      for (const auto& p : s.pairs()) std::cout << " " << s.format(p);
      std::cout << "\n";
    }
    for (const auto& w : written) std::cout << "  wrote " << w << "\n";
    if (auto c = fs::certificate_from_search(out)) std::cout << "  " << c->statement << "\n";
  }
  return out.result == fs::SearchResult::budget_exceeded ? kOpen : kOk;
}

struct TableArgs {
  std::int64_t max_g = 57;
  std::string format = "md";
  std::optional<std::string> budget;
  std::optional<std::string> deep_budget;
  bool deep = false;
  bool all_types = false;
  std::optional<int> workers;
  bool json = false;
  bool quiet = false;
};

int cmd_table(const TableArgs& a) {
  fs::TableOptions opts;
  opts.max_g = a.max_g;
  if (a.budget) opts.cell_budget = parse_budget(*a.budget);
  if (a.deep_budget) opts.deep_budget = parse_budget(*a.deep_budget);
  opts.deep = a.deep;
  opts.all_types = a.all_types;
  opts.worker_count = a.workers ? *a.workers : default_workers();
  if (!a.quiet) opts.on_cell = [](const std::string& s) { std::cerr << s << "\n"; };
  auto rows = fs::build_table(opts);
  std::string format = a.json ? "json" : a.format;
  if (format == "json") std::cout << fs::table_to_json(rows).dump(2) << "\n";
  else if (format == "csv") std::cout << fs::render_csv(rows);
  else std::cout << fs::render_markdown(rows);
  return kOk;
}

struct CorpusArgs {
  std::string action;
  std::optional<std::string> only;
  bool json = false;
};

int cmd_corpus(const CorpusArgs& a) {
  std::vector<fs::StarterDocument> docs;
  if (a.only) docs.push_back(fs::corpus_entry(*a.only));
  else docs = fs::load_corpus();

  if (a.action == "list") {
    fs::json arr = fs::json::array();
    for (const auto& d : docs) {
      if (a.json) {
        arr.push_back(fs::document_to_json(d));
      } else {
        std::cout << d.id.value_or("?") << "  " << d.starter.type_string() << "  " << d.starter.group().to_string();
        if (d.note) std::cout << "  [" << *d.note << "]";
        std::cout << "\n";
      }
    }
    if (a.json) std::cout << arr.dump(2) << "\n";
    return kOk;
  }

  int passed = 0;
  fs::json arr = fs::json::array();
  for (const auto& d : docs) {
    fs::CorpusCheck c = fs::check_document(d);
    passed += c.passed;
    if (a.json) {
      fs::json j{{"id", c.id}, {"type", c.type}, {"claimed", fs::to_string(c.claimed)}, {"passed", c.passed}};
      j["report"] = fs::report_to_json(c.report);
      if (c.note) j["note"] = *c.note;
      arr.push_back(j);
    } else {
      std::cout << (c.passed ? "pass " : "FAIL ") << c.id << "  " << c.type << "  " << fs::to_string(c.claimed);
      if (c.note) std::cout << "  [" << *c.note << "]";
      std::cout << "\n";
      if (!c.passed && c.report.witness) std::cout << "  witness: " << c.report.witness->detail << "\n";
    }
  }
  if (a.json) std::cout << arr.dump(2) << "\n";
  else std::cout << passed << "/" << docs.size() << " verified\n";
  return passed == static_cast<int>(docs.size()) ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame starter verifier, certifier and search tool"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "framestarter 0.1.0");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Verify a starter JSON file");
  verify->add_option("file", va.file, "Starter file")->required();
  verify->add_option("--property,-p", va.property, "frame, strong or skew")->capture_default_str();
  verify->add_flag("--verbose,-v", va.verbose, "Report every violation");
  verify->add_flag("--json", va.json, "JSON output");

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Nonexistence certificate for a cyclic type");
  certify->add_option("--type,-t", ca.type, "Type h^u")->required();
  certify->add_flag("--json", ca.json, "JSON output");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Backtracking search over Z_g");
  search->add_option("--type,-t", sa.type, "Type h^u")->required();
  search->add_option("--property,-p", sa.property, "frame, strong or skew")->capture_default_str();
  search->add_option("--mode,-m", sa.mode, "find_first, exhaustive_count or prove_nonexistence")->capture_default_str();
  search->add_option("--budget,-b", sa.budget, "Node budget (N, a^b or aEb)");
  search->add_option("--workers,-w", sa.workers, "Worker threads (default FRAMESTARTER_WORKERS or 1)");
  search->add_flag("--no-symmetry", sa.no_symmetry, "Disable the root symmetry reduction");
  search->add_flag("--multiplier", sa.multiplier, "Multiplier lex-leader pruning");
  search->add_option("--branch", sa.branch, "fewest_candidates or least_element")->capture_default_str();
  search->add_option("--max-kept", sa.max_kept, "Starters kept in exhaustive_count mode")->capture_default_str();
  search->add_option("--out,-o", sa.out_dir, "Directory for found starters")->capture_default_str();
  search->add_flag("--no-write", sa.no_write, "Do not write starter files");
  search->add_flag("--progress", sa.progress, "JSON progress lines on stderr");
  search->add_flag("--json", sa.json, "JSON output");

  TableArgs ta;
  auto* table = app.add_subcommand("table", "Existence table of small cyclic skew frame starters");
  table->add_option("--max-g,-g", ta.max_g, "Largest group order")->capture_default_str();
  table->add_option("--format,-f", ta.format, "md, csv or json")
      ->check(CLI::IsMember({"md", "csv", "json"}))
      ->capture_default_str();
  table->add_option("--budget,-b", ta.budget, "Per-cell node budget (default 10^9)");
  table->add_flag("--deep", ta.deep, "Also run the heavy cells 2^16, 4^8, 4^9, 4^10");
  table->add_option("--deep-budget", ta.deep_budget, "Budget for heavy cells (default 10^11)");
  table->add_flag("--all-types", ta.all_types, "Keep types excluded by the order/quotient obstructions");
  table->add_option("--workers,-w", ta.workers, "Worker threads");
  table->add_flag("--quiet,-q", ta.quiet, "No per-cell progress on stderr");
  table->add_flag("--json", ta.json, "JSON output");

  CorpusArgs pa;
  auto* corpus = app.add_subcommand("corpus", "List or check the embedded example starters");
  corpus->add_option("action", pa.action, "list or check")->required()->check(CLI::IsMember({"list", "check"}));
  corpus->add_option("--only", pa.only, "Single entry, e.g. example-26");
  corpus->add_flag("--json", pa.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*certify) return cmd_certify(ca);
    if (*search) return cmd_search(sa);
    if (*table) return cmd_table(ta);
    if (*corpus) return cmd_corpus(pa);
  } catch (const fs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
