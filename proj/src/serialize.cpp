#include "framestarter/serialize.hpp"

#include <fstream>
#include <sstream>

#include "framestarter/errors.hpp"

namespace framestarter {

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& field(const json& obj, const std::string& key, const std::string& loc) {
  if (!obj.is_object()) throw ParseError(loc.empty() ? "/" : loc, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(at(loc, key), "missing field");
  return *it;
}

std::int64_t integer(const json& j, const std::string& loc) {
  if (!j.is_number_integer()) throw ParseError(loc, "expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

Element element_from_json(const GroupSpec& g, const json& j, const std::string& loc) {
  std::vector<std::int64_t> coords;
  if (j.is_number_integer() && g.is_cyclic()) {
    coords.push_back(j.get<std::int64_t>());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) coords.push_back(integer(j[i], at(loc, i)));
  } else {
    throw ParseError(loc, g.is_cyclic() ? "expected an integer" : "expected an array of " +
                                                                       std::to_string(g.rank()) + " integers");
  }
  if (coords.size() != g.rank()) {
    throw ParseError(loc, "element has " + std::to_string(coords.size()) + " coordinates, group " + g.to_string() +
                              " needs " + std::to_string(g.rank()));
  }
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] < 0 || coords[k] >= g.factors()[k]) {
      throw ParseError(loc, "coordinate " + std::to_string(coords[k]) + " outside [0, " +
                                std::to_string(g.factors()[k]) + ")");
    }
  }
  return Element(std::move(coords));
}

std::optional<std::string> opt_string(const json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError("/" + key, "expected a string");
  return it->get<std::string>();
}

}  // namespace

json group_to_json(const GroupSpec& g) { return json{{"factors", g.factors()}}; }

json element_to_json(const GroupSpec& g, const Element& e) {
  if (g.is_cyclic()) return e.value();
  return e.coords;
}

json subgroup_to_json(const SubgroupSpec& h) {
  if (h.group().is_cyclic()) return json{{"order", h.order()}};
  json gens = json::array();
  for (const auto& e : h.generators()) gens.push_back(e.coords);
  return json{{"generators", gens}};
}

json starter_to_json(const FrameStarter& s) {
  json pairs = json::array();
  for (const auto& p : s.pairs()) {
    pairs.push_back(json::array({element_to_json(s.group(), p.first), element_to_json(s.group(), p.second)}));
  }
  return json{{"group", group_to_json(s.group())}, {"subgroup", subgroup_to_json(s.subgroup())}, {"pairs", pairs}};
}

json document_to_json(const StarterDocument& d) {
  json j;
  if (d.id) j["id"] = *d.id;
  j["type"] = d.claimed_type.value_or(d.starter.type_string());
  if (d.claimed_property) j["claimed_property"] = to_string(*d.claimed_property);
  if (d.note) j["note"] = *d.note;
  json body = starter_to_json(d.starter);
  j["group"] = body["group"];
  j["subgroup"] = body["subgroup"];
  j["pairs"] = body["pairs"];
  return j;
}

GroupSpec group_from_json(const json& j) {
  const json& f = field(j, "factors", "/group");
  if (!f.is_array() || f.empty()) throw ParseError("/group/factors", "expected a non-empty array");
  std::vector<std::int64_t> factors;
  for (std::size_t i = 0; i < f.size(); ++i) factors.push_back(integer(f[i], at("/group/factors", i)));
  try {
    return GroupSpec(std::move(factors));
  } catch (const Error& e) {
    throw ParseError("/group/factors", e.what());
  }
}

SubgroupSpec subgroup_from_json(const GroupSpec& g, const json& j) {
  if (!j.is_object()) throw ParseError("/subgroup", "expected an object");
  try {
    if (j.contains("order")) {
      std::int64_t h = integer(j["order"], "/subgroup/order");
      if (!g.is_cyclic()) throw ParseError("/subgroup/order", "\"order\" needs a cyclic group; use \"generators\"");
      return cyclic_subgroup(g, h);
    }
    if (j.contains("generators")) {
      const json& gens = j["generators"];
      if (!gens.is_array()) throw ParseError("/subgroup/generators", "expected an array");
      std::vector<Element> elems;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        elems.push_back(element_from_json(g, gens[i], at("/subgroup/generators", i)));
      }
      return generated_subgroup(g, elems);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("/subgroup", e.what());
  }
  throw ParseError("/subgroup", "expected \"order\" or \"generators\"");
}

StarterDocument document_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("/", "expected a starter object");
  GroupSpec g = group_from_json(field(j, "group", ""));
  SubgroupSpec h = subgroup_from_json(g, field(j, "subgroup", ""));
  const json& pj = field(j, "pairs", "");
  if (!pj.is_array()) throw ParseError("/pairs", "expected an array");
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    std::string loc = at("/pairs", i);
    if (!pj[i].is_array() || pj[i].size() != 2) throw ParseError(loc, "expected a pair of two elements");
    Element a = element_from_json(g, pj[i][0], at(loc, 0));
    Element b = element_from_json(g, pj[i][1], at(loc, 1));
    if (a == b) throw ParseError(loc, "pair repeats element " + g.format(a));
    pairs.push_back(make_pair(a, b));
  }
  std::optional<Property> claimed;
  if (auto p = opt_string(j, "claimed_property")) {
    try {
      claimed = parse_property(*p);
    } catch (const ParseError& e) {
      throw ParseError("/claimed_property", e.what());
    }
  }
  try {
    FrameStarter s(h, std::move(pairs));
    return StarterDocument{std::move(s), opt_string(j, "id"), opt_string(j, "type"), claimed, opt_string(j, "note")};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("/pairs", e.what());
  }
}

StarterDocument parse_starter_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
  }
  return document_from_json(j);
}

StarterDocument read_starter_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_starter_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.location(), std::string(e.what()).substr(e.location().size() + 2));
  }
}

void write_starter_file(const std::string& path, const StarterDocument& d) {
  std::ofstream out(path);
  if (!out) throw ParseError(path, "cannot write file");
  out << document_to_json(d).dump(2) << "\n";
}

json report_to_json(const VerificationReport& r) {
  json j{{"checked", to_string(r.checked)},
         {"frame", r.is_frame},
         {"strong", r.is_strong},
         {"skew", r.is_skew},
         {"holds", r.holds(r.checked)}};
  auto lvl = r.level();
  j["level"] = lvl ? json(to_string(*lvl)) : json(nullptr);
  if (r.witness) j["witness"] = {{"property", to_string(r.witness->property)}, {"detail", r.witness->detail}};
  if (!r.diagnostics.empty()) {
    json d = json::array();
    for (const auto& w : r.diagnostics) d.push_back({{"property", to_string(w.property)}, {"detail", w.detail}});
    j["diagnostics"] = d;
  }
  return j;
}

json certificate_to_json(const NonexistenceCertificate& c) {
  json j{{"type", c.type.to_string()},
         {"level", to_string(c.level)},
         {"theorem", to_string(c.rule)},
         {"statement", c.statement},
         {"conclusive", c.conclusive}};
  if (c.special_case) j["special_case"] = *c.special_case;
  return j;
}

json certification_to_json(const Certification& c) {
  json j{{"type", c.type.to_string()}, {"open", c.open()}};
  j["certificate"] = c.certificate ? certificate_to_json(*c.certificate) : json(nullptr);
  json all = json::array();
  for (const auto& x : c.all) all.push_back(certificate_to_json(x));
  j["all"] = all;
  return j;
}

json config_to_json(const SearchConfig& c) {
  json j{{"type", c.target_type.to_string()},
         {"property", to_string(c.property)},
         {"mode", to_string(c.mode)},
         {"worker_count", c.worker_count},
         {"symmetry_reduction", c.symmetry_reduction},
         {"multiplier_pruning", c.multiplier_pruning},
         {"branch_rule", to_string(c.branch_rule)}};
  j["node_budget"] = c.node_budget ? json(*c.node_budget) : json(nullptr);
  return j;
}

json outcome_to_json(const SearchOutcome& o) {
  json starters = json::array();
  for (const auto& s : o.starters) starters.push_back(starter_to_json(s));
  json j{{"result", to_string(o.result)},
         {"complete", o.complete},
         {"solution_count", o.solution_count},
         {"nodes_visited", o.nodes_visited},
         {"wall_time_seconds", o.wall_time.count()},
         {"config", config_to_json(o.config)},
         {"starters", starters}};
  if (auto cert = certificate_from_search(o)) j["certificate"] = certificate_to_json(*cert);
  return j;
}

json progress_to_json(const ProgressEvent& e) {
  return json{{"nodes", e.nodes}, {"depth", e.depth}, {"elapsed", e.elapsed_seconds}};
}

}  // namespace framestarter
