#ifndef URNPHYLO_ERRORS_HPP
#define URNPHYLO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace urnphylo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidEdgeError : Error {
  using Error::Error;
};

struct DuplicateTaxonError : Error {
  using Error::Error;
};

// Edge-type classification is undefined for unrooted trees with fewer than
// six leaves; callers get this instead of a best-effort vector.
struct ClassificationUndefinedError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), pos(position) {}
  std::size_t pos;
};

struct TenabilityViolationError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace urnphylo

#endif
