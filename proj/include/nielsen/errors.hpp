#ifndef NIELSEN_ERRORS_HPP
#define NIELSEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nielsen {

/// Malformed or inconsistent input text (word syntax, presentation files,
/// quotient files, move logs).
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A computation refused up front because it would exceed a stated
/// resource budget (state caps, census bounds).
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nielsen

#endif  // NIELSEN_ERRORS_HPP
