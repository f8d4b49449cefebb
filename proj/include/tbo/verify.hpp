#pragma once

// The identity suite run by `verify`: every verdict names the identity it tested.

#include <cstdint>
#include <string>
#include <vector>

#include "tbo/contraction_twist.hpp"
#include "tbo/problem.hpp"

namespace tbo {

enum class Status { Pass, Fail, Skipped };
const char* to_string(Status s);

struct Verdict {
  int criterion = 0;
  std::string identity;
  Status status = Status::Pass;
  std::string detail;
};

struct VerificationResult {
  std::string name;
  std::int64_t k_min = 0, k_max = 0;
  std::vector<SpecializationPoint> specializations;
  std::vector<Verdict> verdicts;

  bool any(Status s) const;
  /// 0 all pass, 1 some failure, 3 something unsupported was skipped.
  int exit_code() const;
};

/// Default k range [-2, N + 2] unless the problem overrides it.
std::pair<std::int64_t, std::int64_t> k_range(const ProblemFile& p, const WallCrossing& wc);

/// Seeded and deterministic: the i-th point depends only on (seed, i).
std::vector<SpecializationPoint> specializations_for(const CrossingContext& ctx, const ProblemOptions& o);

/// Throws the module errors of an invalid or non-crepant problem.
VerificationResult run_verification(const ProblemFile& p);

}  // namespace tbo
