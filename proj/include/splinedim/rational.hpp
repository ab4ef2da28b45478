#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace splinedim {

// All plane geometry runs on exact rationals; slope equality and collinearity
// are decided without tolerances.
using Int = mpz_class;
using Rat = mpq_class;

// Parses "p" or "p/q" with integer p, q and q > 0 in the result.
// Throws std::invalid_argument on anything else (floats, hex, empty, q = 0).
Rat parse_rational(const std::string& text);

// Reduced form, "p" or "p/q". Inverse of parse_rational.
std::string rational_to_string(const Rat& value);

// A module invariant failed at runtime. Indicates a bug, never user input;
// callers must not mask it (the CLI maps it to a dedicated exit code).
struct InternalInconsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace splinedim
