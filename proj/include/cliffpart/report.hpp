#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cliffpart/potts.hpp"

namespace cliffpart {

struct TimedResult {
  PartitionResult result;
  double wall_ms = 0.0;
};

struct Deviation {
  std::string first;
  std::string second;
  double rel = 0.0;
  double tol = 0.0;
  bool pass = true;
};

struct PartitionReport {
  LatticeModel model;
  std::vector<std::string> methods;
  std::uint64_t seed = 0;
  std::vector<TimedResult> results;
  std::vector<Deviation> deviations;
  std::vector<std::string> notes;
  bool pass = true;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  double max_dev = 0.0;
  long long checks = 0;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool pass = true;
};

struct TraceReport {
  int n = 0;
  int p = 0;
  std::vector<std::string> word;
  std::complex<double> value{0.0, 0.0};
  bool is_zero = true;
  int omega_exponent = 0;  // meaningful when !is_zero
  double partitions = 0.0;
};

/// Fixed-point text for a double: 17 significant digits, round-trip safe.
std::string dtext(double v);

std::string to_json_text(const PartitionReport& r);
std::string to_json_text(const VerifyReport& r);
std::string to_json_text(const TraceReport& r);
std::string to_csv_text(const PartitionReport& r);

PartitionReport partition_report_from_json(const std::string& text);
VerifyReport verify_report_from_json(const std::string& text);

/// Relative deviation |x - y| / max(1, |y|).
double scalar_rel_dev(std::complex<double> x, std::complex<double> y);

}  // namespace cliffpart
