#ifndef LATPROD_ERRORS_HPP
#define LATPROD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latprod {

// Base for everything thrown by the library.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument / malformed input (CLI exit code 2).
struct config_error : error {
  explicit config_error(const std::string& msg) : error(msg) {}
};

// Mathematically inadmissible input (non-squarefree polynomial,
// reducible field, singular matrix, ...). Also exit code 2.
struct domain_error : error {
  explicit domain_error(const std::string& msg) : error(msg) {}
};

// Interval widths could not be driven small enough to decide a
// predicate (CLI exit code 3).
struct precision_error : error {
  explicit precision_error(const std::string& msg) : error(msg) {}
};

// The computation is well posed but refused: certification is
// impossible or the work estimate is absurd (CLI exit code 4).
struct refused_error : error {
  explicit refused_error(const std::string& msg) : error(msg) {}
};

}  // namespace latprod

#endif
