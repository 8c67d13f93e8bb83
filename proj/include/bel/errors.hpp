#pragma once

#include <stdexcept>
#include <string>

namespace bel {

// Violated preconditions, unsupported measure kinds, bad user input.
// The CLI maps this to exit code 1.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdowns: failed Stieltjes inversion, non-real poles,
// vanishing transforms. The CLI maps this to exit code 2.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bel
