#pragma once
//
// Verification campaigns behind the command-line tool. Each command returns
// an exit code (0 pass, 1 mathematical failure, 2 configuration or budget
// error) together with a deterministic JSON report.
//

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qflag/exec.hpp"
#include "qflag/flagcomb.hpp"
#include "qflag/gkmring.hpp"

namespace qflag {

enum class ReportFormat { json, markdown };

struct CampaignConfig {
  int n = 3;
  int scale = 4;
  int max_degree = 2;
  std::optional<HeightParams> height_params;  // standard(n) when unset
  std::uint64_t seed = 42;
  std::string out;                             // empty: stdout
  EdgeConvention convention = EdgeConvention::left;
  ReportFormat format = ReportFormat::json;
  std::size_t budget = kDefaultCellBudget;
  std::size_t samples = 50;
  int cap = kDefaultPermutationCap;
  Exec exec = Exec::parallel;

  HeightParams effective_height_params() const;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws ConfigError.
void validate(const CampaignConfig& cfg);

struct CommandResult {
  int exit_code = 0;
  nlohmann::json report;
};

CommandResult cmd_verify_theorem(const CampaignConfig& cfg);
CommandResult cmd_morse_report(const CampaignConfig& cfg);
CommandResult cmd_geomlab(const CampaignConfig& cfg);

std::string render_markdown(const nlohmann::json& report);
std::string render(const nlohmann::json& report, ReportFormat format);

}  // namespace qflag
