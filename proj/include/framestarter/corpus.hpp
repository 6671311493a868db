#pragma once

#include <string>
#include <vector>

#include "framestarter/serialize.hpp"

namespace framestarter {

/// One embedded example file, kept verbatim.
struct CorpusFile {
  std::string id;
  std::string text;
};

/// The eleven published starters, ordered by example number.
const std::vector<CorpusFile>& corpus_files();

std::vector<StarterDocument> load_corpus();
/// Throws ParseError for an unknown id.
StarterDocument corpus_entry(const std::string& id);

struct CorpusCheck {
  std::string id;
  std::string type;
  Property claimed = Property::skew;
  bool passed = false;
  VerificationReport report;
  std::optional<std::string> note;
};

std::vector<CorpusCheck> check_corpus();
CorpusCheck check_document(const StarterDocument& d);

}  // namespace framestarter
