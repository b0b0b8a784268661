#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "matineq/checks.hpp"

namespace matineq {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

// Matrix JSON: {"n": int, "re": [n*n], "im": [n*n]} row-major; "im" may be
// omitted for real matrices.
Json matrix_to_json(const HermitianMatrix& m);
HermitianMatrix matrix_from_json(const Json& j);
HermitianMatrix load_matrix_file(const std::filesystem::path& path);

Json rule_to_json(const QuadratureRule& r);
QuadratureRule rule_from_json(const Json& j);
Json tolerances_to_json(const Tolerances& t);
Tolerances tolerances_from_json(const Json& j);

Json instance_to_json(const Instance& in);
Instance instance_from_json(const Json& j);

// Non-finite numbers are written as null.
Json result_to_json(const CheckResult& r);

struct VerdictCounts {
  std::size_t pass = 0;
  std::size_t violated = 0;
  std::size_t hypothesis_unmet = 0;
  std::size_t error = 0;

  std::size_t total() const noexcept { return pass + violated + hypothesis_unmet + error; }
};
VerdictCounts count_verdicts(const std::vector<CheckResult>& results);

struct RunReport {
  std::string command;
  std::optional<std::string> timestamp;
  QuadratureRule rule;
  Tolerances tol;
  std::vector<CheckResult> results;
};
Json report_to_json(const RunReport& report);

// One hunt finding with everything verify needs to replay it.
struct CounterexampleRecord {
  Instance instance;
  QuadratureRule rule;
  Tolerances tol;
  bool force = false;
  std::vector<std::string> waived;
  std::string perturbation;
  Verdict verdict = Verdict::Violated;
  double margin = 0.0;
};
CounterexampleRecord make_record(const CheckResult& r, const CheckOptions& opt,
                                 std::string perturbation);
// The record with the full result embedded under "result".
Json record_to_json(const CounterexampleRecord& rec, const CheckResult& r);
CounterexampleRecord record_from_json(const Json& j);

std::string iso8601_now();

}  // namespace matineq
