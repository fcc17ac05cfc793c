#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bohm::cli {

enum ExitCode : int { kOk = 0, kInconclusive = 1, kUsage = 2, kExhausted = 3 };

struct Result {
  std::string out;
  std::string err;
  int code = kOk;
};

// Runs one command. `args` excludes the program name; a term argument "-"
// reads the term from `input`.
Result run(const std::vector<std::string>& args, std::string_view input = {});

const std::vector<std::string>& repro_ids();

struct ReproReport {
  std::string id;
  std::string computed;
  std::string golden;
  bool match = false;
  std::string diff;
};

// Throws std::invalid_argument for an unknown id.
ReproReport repro(const std::string& id);

// Stored expected output for a golden id; throws std::out_of_range if absent.
const std::string& golden(const std::string& id);

std::string unified_diff(const std::string& expected, const std::string& actual, const std::string& expected_name,
                         const std::string& actual_name);

}  // namespace bohm::cli
