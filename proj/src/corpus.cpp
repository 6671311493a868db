#include "framestarter/corpus.hpp"

#include <algorithm>

#include "framestarter/errors.hpp"

namespace framestarter {

namespace detail {
// Defined in the generated corpus_data.cpp.
extern const std::vector<CorpusFile> kCorpusFiles;
}  // namespace detail

const std::vector<CorpusFile>& corpus_files() { return detail::kCorpusFiles; }

std::vector<StarterDocument> load_corpus() {
  std::vector<StarterDocument> out;
  for (const auto& f : corpus_files()) {
    try {
      out.push_back(parse_starter_text(f.text));
    } catch (const ParseError& e) {
      throw ParseError(f.id + ":" + e.location(), std::string(e.what()).substr(e.location().size() + 2));
    }
  }
  return out;
}

StarterDocument corpus_entry(const std::string& id) {
  for (const auto& f : corpus_files())
    if (f.id == id) return parse_starter_text(f.text);
  throw ParseError("id", "no corpus entry named '" + id + "'");
}

CorpusCheck check_document(const StarterDocument& d) {
  CorpusCheck c;
  c.id = d.id.value_or("?");
  c.type = d.starter.type_string();
  c.claimed = d.claimed_property.value_or(Property::skew);
  c.report = verify(d.starter, c.claimed, true);
  c.passed = c.report.holds(c.claimed) && (!d.claimed_type || *d.claimed_type == c.type);
  c.note = d.note;
  return c;
}

std::vector<CorpusCheck> check_corpus() {
  std::vector<CorpusCheck> out;
  for (const auto& d : load_corpus()) out.push_back(check_document(d));
  return out;
}

}  // namespace framestarter
