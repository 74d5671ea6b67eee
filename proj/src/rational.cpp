#include "ctvol/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <sstream>

namespace ctvol {

namespace {

// Strict base-10 integer literal: optional sign followed by digits only.
Integer parseInteger(const std::string& text, const std::string& context)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(c);
    if (t.empty())
        throw ParseError("empty integer literal in " + context);
    std::size_t start = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (start == t.size())
        throw ParseError("sign without digits in " + context + ": \"" + text + "\"");
    for (std::size_t i = start; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i])))
            throw ParseError("invalid integer literal in " + context + ": \"" + text + "\"");
    return Integer(t);
}

}  // namespace

Rational parseRational(const std::string& text, const std::string& context)
{
    std::size_t slash = text.find('/');
    if (slash == std::string::npos)
        return Rational(parseInteger(text, context));
    Integer num = parseInteger(text.substr(0, slash), context);
    Integer den = parseInteger(text.substr(slash + 1), context);
    if (den == 0)
        throw ParseError("zero denominator in " + context + ": \"" + text + "\"");
    // The two-integer constructor canonicalizes; the string constructor would not.
    return Rational(num, den);
}

std::string toString(const Rational& q)
{
    std::ostringstream os;
    os << q;
    return os.str();
}

Integer floorOf(const Rational& q)
{
    Integer n = numerator(q);
    Integer d = denominator(q);
    if (n >= 0)
        return n / d;
    return -((-n + d - 1) / d);
}

std::optional<Integer> exactSqrt(const Integer& v)
{
    if (v < 0)
        return std::nullopt;
    Integer s = boost::multiprecision::sqrt(v);
    if (s * s == v)
        return s;
    return std::nullopt;
}

std::optional<Rational> exactSqrt(const Rational& q)
{
    if (q < 0)
        return std::nullopt;
    std::optional<Integer> n = exactSqrt(numerator(q));
    std::optional<Integer> d = exactSqrt(denominator(q));
    if (!n || !d)
        return std::nullopt;
    return Rational(*n, *d);
}

Integer factorial(int d)
{
    Integer f = 1;
    for (int k = 2; k <= d; ++k)
        f *= k;
    return f;
}

Rational powRational(const Rational& base, int exp)
{
    if (exp < 0)
        throw DimensionError("powRational requires a nonnegative exponent");
    Rational r = 1;
    for (int k = 0; k < exp; ++k)
        r *= base;
    return r;
}

Integer denominatorLcm(const MatrixXr& m)
{
    Integer l = 1;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            l = boost::multiprecision::lcm(l, denominator(m(i, j)));
    return l;
}

MatrixXz clearDenominators(const MatrixXr& m)
{
    Integer l = denominatorLcm(m);
    MatrixXz out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            Rational scaled = m(i, j) * Rational(l);
            out(i, j) = numerator(scaled);
        }
    return out;
}

}  // namespace ctvol
