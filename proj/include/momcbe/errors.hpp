#pragma once
#include <stdexcept>
#include <string>

namespace momcbe {

// Precondition violations: malformed signatures, non-interlacing pairs, bad parameters.
struct contract_error : std::invalid_argument {
  explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

// Requests whose mathematical answer is not a finite number in the requested regime.
struct divergence_error : std::domain_error {
  explicit divergence_error(const std::string& what) : std::domain_error(what) {}
};

// Work refused because it would exceed a configured cap (layer states, memo nodes, free coordinates).
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Floating-point results that fail their own consistency checks (e.g. imaginary residue).
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace momcbe
