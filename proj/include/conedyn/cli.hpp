#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace conedyn::cli {

enum ExitCode : int {
  kOk = 0,
  kVerdictFailed = 1,
  kUsage = 2,
  kNumeric = 3,
};

// A validated run description. Field specs use the JSON cone-field format:
// {"field":"constant","cone":{"type":"orthant","n":2}} or
// {"field":"homogeneous_spd","n":2}.
struct Scenario {
  std::string system;
  std::string experiment;
  // null means the system's default field.
  nlohmann::json field;
  double T = 100.0;
  double dt = 1e-3;
  int n = 1000;
  std::uint64_t seed = 0;
  std::string out;
  std::string csv;

  bool operator==(const Scenario&) const = default;
};

// Thrown with every validation problem, one per line.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& what, std::vector<std::string> problems)
      : std::runtime_error(what), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
nlohmann::json scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

// Entry point of the conedyn tool; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace conedyn::cli
