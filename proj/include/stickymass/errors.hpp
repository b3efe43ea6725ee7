#ifndef STICKYMASS_ERRORS_HPP
#define STICKYMASS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stickymass {

// Thrown when a computation would exceed a configured size/budget cap
// (alphabet caps, enumeration budgets).  Argument-validation failures use
// std::invalid_argument instead.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stickymass

#endif
