#pragma once

// Verification suites behind the `verify` command. Every check ends as pass,
// fail or undecided-at-budget; failures carry a witness.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinwheel/report.hpp"

namespace pinwheel {

enum class Status { Pass, Fail, Undecided };
const char* to_string(Status s);

struct Check {
  std::string suite;
  std::string name;
  Status status = Status::Fail;
  Json details = Json::object();
  Json witness;  // null unless failed
  double seconds = 0;
};

struct VerifyConfig {
  int cover_level = 6;      // exact cover for n = 0..cover_level
  int collar_level = 6;     // L; L + 1 is the stabilization witness
  int depth = 2;            // frequency depth
  int oracle_level = 7;     // counting oracle at oracle_level - 2 .. oracle_level
  int census_level = 7;     // census at this level, checked against the next
  int census_depth = 6;
  int epsilon_power = 2;    // eps(z) = z^m
  std::uint64_t seed = 1;
  std::size_t motions = 200;
  std::size_t criterion_trials = 1000;
  /// Test hook: replaces the kernel generators q1..q7.
  std::optional<IntMatrix> generators_override;
};

/// cover, collared, chirality, perron, module, oracle, kernel, symmetry, pairing, canonical.
const std::vector<std::string>& suite_names();

/// Runs the named suites in the fixed order above; unknown names throw std::invalid_argument.
std::vector<Check> run_verify(const VerifyConfig& cfg, std::span<const std::string> suites);

Json to_json(const Check& c, bool timings);

}  // namespace pinwheel
