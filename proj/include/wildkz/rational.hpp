// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace wildkz {

using Q = mpq_class;

// Parses "p/q", "p" or a plain integer-valued string into an exact rational.
// Throws SchemaError on malformed input.
Q parse_rational(const std::string& text);

// Canonical "p/q" rendering (denominator always printed).
std::string to_string(const Q& x);

Q binomial(long n, long k);

// x^e for a possibly negative integer exponent; x must be nonzero when e < 0.
Q power(const Q& x, long e);

inline bool is_zero(const Q& x) { return sgn(x) == 0; }

using QVec = std::vector<Q>;

}  // namespace wildkz
