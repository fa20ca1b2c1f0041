#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilrigid {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a certified numeric decision cannot be made at the
/// available precision. Callers typically retry at doubled precision.
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a bounded search or refinement loop hits its cap.
class ExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries a 1-based location when known.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                                : what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

namespace exact {

/// Parses "p", "-p", "p/q" (whitespace tolerant). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Exact conversion of a finite double.
Rational from_double(double x);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Representative of q modulo 1 in [-1/2, 1/2).
Rational centered_frac(const Rational& q);

/// Integer n with q - n in [-1/2, 1/2).
Integer centered_round(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace exact
}  // namespace nilrigid
