#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "twocopy/decomposition.hpp"

namespace twocopy {

using ojson = nlohmann::ordered_json;

inline constexpr uint64_t kDefaultSeed = 20240229;

// A single executable check. Failure always carries a reproducible witness
// (the suite seed plus the indices that locate the violation).
struct CheckResult {
  std::string name;
  bool pass = true;
  ojson witness;  // null unless failed
  ojson values;   // optional exact values involved
};

struct SuiteConfig {
  int qubits = 1;
  uint64_t seed = kDefaultSeed;
  int n_random_cliffords = 100;
  int n_intertwiner_cliffords = -1;  // -1: 100 for q<=2, 25 for q=3
  long long n_mc_samples = 100000;
  int threads = 1;  // 0 = auto
  std::vector<std::string> selected;  // empty = run all

  // Negative controls: deliberate fault injection, the suite must fail.
  bool corrupt_basis = false;
  bool corrupt_tableau_sign = false;
};

struct SuiteReport {
  int qubits = 1;
  uint64_t seed = 0;
  std::vector<CheckResult> checks;
  ojson character;
  ojson dimensions;
  bool all_pass = true;

  ojson to_json() const;
  std::string to_text() const;
  std::string to_csv() const;
};

std::vector<std::string> suite_check_names(int qubits);

SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace twocopy
