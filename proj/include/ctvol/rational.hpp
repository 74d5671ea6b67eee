#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <optional>
#include <string>

#include "ctvol/errors.hpp"

namespace ctvol {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using MatrixXr = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXr = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatrixXz = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXz = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;

/**
 * Parse a rational literal of the form "p" or "p/q" with optional sign and
 * surrounding whitespace. The result is always canonical (reduced, positive
 * denominator).
 *
 * @param text Literal to parse.
 * @param context Name of the field being parsed, used in error messages.
 * @throws ParseError If the literal is malformed or the denominator is zero.
 */
Rational parseRational(const std::string& text, const std::string& context = "rational");

/**
 * Format a rational as "p" (denominator one) or "p/q" in lowest terms.
 */
std::string toString(const Rational& q);

/**
 * Floor of a rational as an integer.
 */
Integer floorOf(const Rational& q);

/**
 * Exact square root of a nonnegative integer, or nullopt if v is not a
 * perfect square.
 */
std::optional<Integer> exactSqrt(const Integer& v);

/**
 * Exact square root of a nonnegative rational, or nullopt if either the
 * (reduced) numerator or denominator is not a perfect square.
 */
std::optional<Rational> exactSqrt(const Rational& q);

/**
 * d! as an arbitrary-precision integer.
 */
Integer factorial(int d);

/**
 * base^exp for nonnegative integer exponents.
 */
Rational powRational(const Rational& base, int exp);

/**
 * Least common multiple of the denominators of all entries.
 */
Integer denominatorLcm(const MatrixXr& m);

/**
 * Scale a rational matrix entrywise by the lcm of all denominators and
 * return the resulting integer matrix.
 */
MatrixXz clearDenominators(const MatrixXr& m);

/**
 * Cast helpers between the integer and rational matrix types.
 */
inline MatrixXr toRational(const MatrixXz& m) { return m.cast<Rational>(); }
inline VectorXr toRational(const VectorXz& v) { return v.cast<Rational>(); }

}  // namespace ctvol
