#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "moebius/field.hpp"

namespace moebius::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail{};
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 13;

/// Runs one acceptance criterion (1..13). Exceptions are reported as failures.
CheckResult criterion(int id, std::uint64_t seed = 1);

/// Runs the selected criteria (all when `ids` is empty) in order, invoking
/// `on_result` after each one.
std::vector<CheckResult> acceptance(std::uint64_t seed = 1, const std::vector<int>& ids = {},
                                    const std::function<void(const CheckResult&)>& on_result = {});

/// Identity and invariance checks on a user-supplied curve: Euclidean and
/// scale invariance, first variation against central differences, the
/// decomposition identity and the L² gradient pairing.
std::vector<CheckResult> curve_suite(const ClosedCurve& curve, std::uint64_t seed = 1);

}  // namespace moebius::verify
