#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace surgeflow {

/// Exact rational number. All solver arithmetic runs on this type so that
/// equality invariants (complementary slackness, equal item prices per
/// destination) are checked exactly.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", or a finite decimal such as "0.125" or "-3.5".
/// Throws InputError on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Least common multiple of the denominators of all values (1 for an empty
/// range).
Integer common_denominator(std::span<const Rational> values);

Rational sum(std::span<const Rational> values);

inline const Rational& min_of(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace surgeflow
