#pragma once

#include <stdexcept>
#include <string>

namespace pointlab {

// A bracketing step failed in a way that carries meaning of its own,
// e.g. no finite percolation threshold exists to be bracketed.
class BracketingError : public std::runtime_error {
 public:
  explicit BracketingError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative procedure exhausted its budget without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pointlab
