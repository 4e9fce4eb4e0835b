#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace superdense {

enum class ErrorKind {
  invalid_argument,
  parse_error,
  insufficient_digits,
  invalid_gluing,
  disconnected_surface,
  hits_singularity,
  degenerate_level,
  out_of_range,
  empty_window,
  undecidable,
  budget_exceeded,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// An orbit or trajectory ran into a vertex of the surface.
///
/// `step` is the 1-based index of the orbit point (crossing) from which the
/// flow could not be continued; `endpoint` is the offending branch endpoint
/// written as an exact linear form in alpha.
class SingularityError : public Error {
 public:
  SingularityError(std::size_t step, std::string endpoint)
      : Error(ErrorKind::hits_singularity,
              "hits singularity at step " + std::to_string(step) + " (endpoint " +
                  endpoint + ")"),
        step_(step),
        endpoint_(std::move(endpoint)) {}

  std::size_t step() const noexcept { return step_; }
  const std::string& endpoint() const noexcept { return endpoint_; }

 private:
  std::size_t step_;
  std::string endpoint_;
};

/// A certificate needs more crossings than the configured budget allows.
class BudgetError : public Error {
 public:
  BudgetError(std::uint64_t required, std::uint64_t budget)
      : Error(ErrorKind::budget_exceeded,
              "budget exceeded: need m* = " + std::to_string(required) +
                  " crossings, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace superdense
