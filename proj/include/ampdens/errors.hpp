#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ampdens {

/// Some observation is not covered by any strictly positive (weighted) window.
class InfeasibleError : public std::runtime_error {
public:
  InfeasibleError(const std::string& what, std::size_t sample_index)
      : std::runtime_error(what), sample_index_(sample_index) {}

  std::size_t sample_index() const noexcept { return sample_index_; }

private:
  std::size_t sample_index_;
};

/// An iteration hit its cap (or stopped making progress) before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double final_error, std::vector<double> trace)
      : std::runtime_error(what), final_error_(final_error), trace_(std::move(trace)) {}

  double final_error() const noexcept { return final_error_; }
  const std::vector<double>& trace() const noexcept { return trace_; }

private:
  double final_error_;
  std::vector<double> trace_;
};

/// Malformed or invariant-violating model / sample document.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ampdens
