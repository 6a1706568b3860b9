#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hfcone/cone.hpp"

namespace hfcone::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kValidation = 1, kComputation = 2, kUsage = 3 };

struct Report {
  std::string input;
  std::string command;
  int n = 0;
  std::string spinc;  // "all" or an integer
  std::string delta;  // "auto" or an integer
  std::string width;  // "auto" or an integer
  std::vector<SurgeryResult> results;
  std::string version = kVersion;

  bool operator==(const Report&) const = default;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& doc);

// "tower bottom -2; reduced: 2×[-2,len 1], 2×[0,len 1]"
std::string describe(const SurgeryResult& r);

// Entry point; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hfcone::cli
