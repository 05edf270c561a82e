#pragma once

#include <stdexcept>
#include <string>

namespace cliffpart {

/// Thrown when a requested computation exceeds a configured size guard.
/// Callers map this to a distinct process exit code so scripted runs can
/// tell "too big" apart from "wrong".
class CapacityError : public std::runtime_error {
public:
  CapacityError(const std::string& what_arg, double requested, double limit)
      : std::runtime_error(what_arg), requested_(requested), limit_(limit) {}

  double requested() const noexcept { return requested_; }
  double limit() const noexcept { return limit_; }

private:
  double requested_;
  double limit_;
};

}  // namespace cliffpart
