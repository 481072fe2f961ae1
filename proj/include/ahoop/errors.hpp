#pragma once

#include <stdexcept>
#include <string>

namespace ahoop {

/// A numerical procedure could not produce its result (no resonance in the
/// scan window, singular matching system, indefinite norm matrix, ...).
/// Invalid inputs are reported with std::invalid_argument / std::domain_error.
class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ahoop
