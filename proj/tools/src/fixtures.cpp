#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "k3cli/cli.hpp"

namespace k3::cli {

namespace fs = std::filesystem;

std::size_t FixtureSummary::passed() const {
  return static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(), [](const FixtureOutcome& o) { return o.passed; }));
}

std::string default_fixture_dir() {
#ifdef K3_FIXTURE_DIR
  return K3_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

namespace {

FixtureOutcome run_one(const json& fx, const std::string& file) {
  FixtureOutcome o;
  o.file = file;
  o.name = fx.value("name", std::string("<unnamed>"));
  if (!fx.contains("command") || !fx["command"].is_array()) {
    o.mismatches.push_back("fixture has no command array");
    return o;
  }
  std::vector<std::string> args = fx["command"].get<std::vector<std::string>>();
  args.push_back("--json");
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  int want_code = fx.value("expect_exit", 0);
  if (code != want_code)
    o.mismatches.push_back("exit " + std::to_string(code) + ", expected " + std::to_string(want_code) +
                           (err.str().empty() ? "" : " (" + err.str().substr(0, err.str().find('\n')) + ")"));
  if (code == 0 && fx.contains("expect")) {
    json got;
    try {
      got = json::parse(out.str());
    } catch (const json::exception& e) {
      o.mismatches.push_back(std::string("output is not JSON: ") + e.what());
      return o;
    }
    for (auto it = fx["expect"].begin(); it != fx["expect"].end(); ++it) {
      json::json_pointer ptr(it.key());
      if (!got.contains(ptr)) {
        o.mismatches.push_back(it.key() + " missing");
      } else if (got[ptr] != it.value()) {
        o.mismatches.push_back(it.key() + " = " + got[ptr].dump() + ", expected " + it.value().dump());
      }
    }
  }
  o.passed = o.mismatches.empty();
  return o;
}

}  // namespace

FixtureSummary run_fixtures(const std::string& dir, const std::optional<std::string>& filter) {
  if (filter && filter->empty()) throw UsageError("empty --filter");
  if (!fs::is_directory(dir)) throw DomainError("fixture directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  FixtureSummary s;
  for (const auto& p : files) {
    std::ifstream in(p);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw DomainError("cannot parse fixture file " + p.string() + ": " + e.what());
    }
    json list = doc.is_array() ? doc : json::array({doc});
    for (const auto& fx : list) {
      std::string name = fx.value("name", std::string());
      if (filter && name.find(*filter) == std::string::npos) continue;
      s.outcomes.push_back(run_one(fx, p.filename().string()));
    }
  }
  if (s.outcomes.empty()) {
    if (filter) throw UsageError("filter '" + *filter + "' matches no fixture");
    throw DomainError("no fixtures in " + dir);
  }
  return s;
}

}  // namespace k3::cli
