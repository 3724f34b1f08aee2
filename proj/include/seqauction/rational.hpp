#pragma once

#include <gmpxx.h>

#include <string>

namespace seqauction {

// Every game quantity in this library is an exact rational in canonical
// form. Tie detection (bid equality) must be exact, so floats are never
// used anywhere in the solve path.
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);

// Accepts "p", "-p" or "p/q" (q > 0 after sign normalisation). Anything
// else, including decimal notation, throws std::invalid_argument.
Rat rat_parse(const std::string& text);

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_str(const Rat& value);

// Fixed-point decimal rendering with `digits` fractional digits, rounded
// half away from zero. Display only; reports keep the exact form too.
std::string rat_decimal(const Rat& value, int digits = 6);

long rat_floor(const Rat& value);
long rat_ceil(const Rat& value);

inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace seqauction
