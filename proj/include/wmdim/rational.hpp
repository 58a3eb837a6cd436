// Exact rational scalar used throughout the library, plus Eigen aliases.
//
// Distances on shift spaces are dyadic, circle distances are p/Q, and
// measure weights are arbitrary positive rationals; all lemma checks are
// inequalities near tight constants, so the default arithmetic is exact.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace wmdim {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using RVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using DVec = Eigen::VectorXd;
using DMat = Eigen::MatrixXd;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  return r.str();  // "p/q", or "p" when the denominator is 1
}

/// 2^e for any integer exponent (negative exponents give dyadic fractions).
inline Rational pow2(long e) {
  Integer p = Integer(1) << static_cast<unsigned>(e < 0 ? -e : e);
  return e < 0 ? Rational(1, p) : Rational(p);
}

/// b^e for integer e >= 0.
inline Rational rational_pow(const Rational& b, long e) {
  if (e < 0) {
    if (b == 0) throw std::domain_error("rational_pow: 0 to a negative power");
    return 1 / rational_pow(b, -e);
  }
  Rational acc(1), base = b;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

/// Parses "p", "p/q" or a plain decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& s);

}  // namespace wmdim
