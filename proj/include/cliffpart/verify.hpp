#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "cliffpart/report.hpp"

namespace cliffpart {

/// Optional deliberate corruption of one commutation table entry, used to
/// demonstrate that the consistency checks actually bite.
struct FaultInjection {
  bool active = false;
  int i = 0;
  int j = 0;
};

// Each suite returns its name, pass verdict, worst deviation and the number
// of individual checks performed.  Tolerances are fixed inside the suites.

SuiteResult suite_representation(const FaultInjection& fault = {});
SuiteResult suite_hyperbolic(std::uint64_t seed);
SuiteResult suite_trace_three_way(std::uint64_t seed, const SizeGuards& g = {});
SuiteResult suite_projectors(std::uint64_t seed);
SuiteResult suite_pipeline(std::uint64_t seed, const SizeGuards& g = {});
SuiteResult suite_pipeline_full(std::uint64_t seed, const SizeGuards& g = {});
SuiteResult suite_closed_form(std::uint64_t seed);
SuiteResult suite_decomposed(std::uint64_t seed, const SizeGuards& g = {});
SuiteResult suite_multisum(std::uint64_t seed, const SizeGuards& g = {});

VerifyReport run_all_suites(std::uint64_t seed, const SizeGuards& g = {},
                            const FaultInjection& fault = {});

}  // namespace cliffpart
