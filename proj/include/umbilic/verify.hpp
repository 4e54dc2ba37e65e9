#pragma once

// Identity and oracle suites over random points of M, shared by the CLI's
// `verify` command and the acceptance runner.

#include <cstdint>
#include <string>
#include <vector>

#include "umbilic/ellipsoid.hpp"

namespace umbilic {

struct VerifyOptions {
  std::vector<std::string> suites;  ///< empty: all
  int points = 1000;                ///< random on-M points per parameter pair
  int oracle_points = 100;          ///< per parameter pair, for the oracle suite
  std::uint64_t seed = 20260101;
  /// Negative control: flips the sign of rho_ZZ(N, L) in the contractions
  /// the suites check, which must make the Mainardi and LJ identities fail.
  bool inject_sign_error = false;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;   ///< largest residual / allowed bound seen (pass iff <= 1)
  std::size_t checked = 0;
  std::string detail;
};

/// The 5 x 5 grid a_i = 0.8 (i+1)/5, b_j = a_i j/4 (0 <= b <= a <= 0.8).
std::vector<EllipsoidParams> parameter_grid();

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt);

std::vector<SuiteResult> run_suites(const VerifyOptions& opt);

}  // namespace umbilic
