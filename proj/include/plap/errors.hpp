#pragma once

#include <stdexcept>
#include <string>

namespace plap {

// Invalid user input: bad exponent range, malformed domain spec, bad config.
struct config_error : std::invalid_argument {
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical backend failed to converge or produced an unusable state.
// best_value carries the last usable quotient when one exists.
struct solver_error : std::runtime_error {
  explicit solver_error(const std::string& what, double best = 0.0)
      : std::runtime_error(what), best_value(best) {}
  double best_value;
};

}  // namespace plap
