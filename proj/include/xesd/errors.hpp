#pragma once

#include <stdexcept>
#include <string>

namespace xesd {

// Bad input: out-of-range parameter, invalid state, non-unitary factor,
// incomplete Kraus set, non-X matrix where an X state is required.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Iteration cap hit, or a result that is analytically impossible
// (complex or clearly negative concurrence eigenvalues).
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xesd
