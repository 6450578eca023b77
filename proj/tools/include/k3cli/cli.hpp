#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "k3/enriques.hpp"
#include "k3/mwl.hpp"

namespace k3::cli {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

// args excludes the program name.  Exit codes: 0 ok, 1 domain error,
// 2 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct FixtureOutcome {
  std::string name;
  std::string file;
  bool passed = false;
  std::vector<std::string> mismatches;
};

struct FixtureSummary {
  std::vector<FixtureOutcome> outcomes;
  std::size_t passed() const;
  std::size_t failed() const { return outcomes.size() - passed(); }
};

// Throws DomainError for a missing directory, UsageError for an empty or
// unmatched filter.
FixtureSummary run_fixtures(const std::string& dir, const std::optional<std::string>& filter);

std::string default_fixture_dir();
unsigned default_bits();  // K3TOOL_BITS or 256

// JSON conversions shared by commands and tests.
json int_json(const Int& n);
json form_json(const bqf::Form& f);
json field_element_json(const FieldElement& x);
json poly_json(const Poly& p);
json model_json(const ellsurf::WeierstrassModel& w);
ellsurf::WeierstrassModel model_from_json(const json& j);
json survey_json(const ellsurf::Survey& s);
json section_json(const ellsurf::SectionAnalysis& a);
json inose_json(const enriques::InoseData& d);
json fields_json(const enriques::FieldReport& f);
json sandwich_json(const enriques::KummerSandwich& k);
json report_json(const enriques::K3EnriquesReport& r);

// Flat "path: value" rendering used for text output.
std::string render_text(const json& j);

}  // namespace k3::cli
