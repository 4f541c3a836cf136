/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUMVOL_RATIONAL_HPP
#define SUMVOL_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumvol {

/// Arbitrary-precision integers and rationals (GMP-backed). Every scalar in
/// the library is one of these; results are exact and canonical (gcd-reduced,
/// positive denominator) after each operation.
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Raised on malformed or out-of-contract inputs (CLI exit code 1).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a constructive certificate fails its own self-checks. This is
/// a bug signal, never an expected outcome on valid inputs (CLI exit code 2).
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw input_error("rational with zero denominator");
  Rational r(num);
  r /= Rational(den);
  return r;
}

inline Rational rational_div(const Rational& a, const Rational& b) {
  if (b == 0) throw input_error("division by zero");
  return a / b;
}

/// Parses "p", "p/q" or "-p/q" with arbitrary-precision parts.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(Integer(std::string(text)));
    }
    Integer num{std::string(text.substr(0, slash))};
    Integer den{std::string(text.substr(slash + 1))};
    return make_rational(num, den);
  } catch (const input_error&) {
    throw;
  } catch (const std::exception&) {
    throw input_error("malformed rational: '" + std::string(text) + "'");
  }
}

/// Serializes canonically as "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.str(); }

inline std::string to_string(const Integer& n) { return n.str(); }

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncated
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer rational_floor(const Rational& r) {
  return floor_div(numerator(r), denominator(r));
}

inline Integer rational_ceil(const Rational& r) {
  return -floor_div(-numerator(r), denominator(r));
}

inline Rational rational_pow(const Rational& base, int exponent) {
  if (exponent < 0) return rational_div(Rational(1), rational_pow(base, -exponent));
  Rational out(1);
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

inline std::size_t to_index(const Integer& n) {
  if (n < 0) throw input_error("negative value where an index was expected");
  return n.convert_to<std::size_t>();
}

}  // namespace sumvol

#endif  // SUMVOL_RATIONAL_HPP
