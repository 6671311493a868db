#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "framestarter/search.hpp"
#include "framestarter/starter.hpp"
#include "framestarter/theory.hpp"

namespace framestarter {

using json = nlohmann::json;

/// A starter together with the optional metadata carried by starter files.
struct StarterDocument {
  FrameStarter starter;
  std::optional<std::string> id;
  std::optional<std::string> claimed_type;
  std::optional<Property> claimed_property;
  std::optional<std::string> note;
};

json group_to_json(const GroupSpec& g);
json subgroup_to_json(const SubgroupSpec& h);
json element_to_json(const GroupSpec& g, const Element& e);
json starter_to_json(const FrameStarter& s);
json document_to_json(const StarterDocument& d);

/// Throw ParseError naming the offending location, e.g. "pairs[2][1]".
GroupSpec group_from_json(const json& j);
SubgroupSpec subgroup_from_json(const GroupSpec& g, const json& j);
StarterDocument document_from_json(const json& j);
StarterDocument parse_starter_text(const std::string& text);
StarterDocument read_starter_file(const std::string& path);
void write_starter_file(const std::string& path, const StarterDocument& d);

json report_to_json(const VerificationReport& r);
json certificate_to_json(const NonexistenceCertificate& c);
json certification_to_json(const Certification& c);
json config_to_json(const SearchConfig& c);
json outcome_to_json(const SearchOutcome& o);
json progress_to_json(const ProgressEvent& e);

}  // namespace framestarter
