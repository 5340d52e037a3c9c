#pragma once

// Exact rational helpers on top of GMP's mpq_class.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cy4
{

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer &num, const Integer &den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p" or "p/q" with an optional leading sign; whitespace is not allowed.
inline Rational parse_rational(std::string_view text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    std::size_t i = 0;
    if (text[0] == '+' || text[0] == '-') {
        ++i;
    }
    bool seen_digit = false, seen_slash = false, digit_after_slash = false;
    for (std::size_t j = i; j < text.size(); ++j) {
        const char c = text[j];
        if (c >= '0' && c <= '9') {
            seen_digit = true;
            if (seen_slash) {
                digit_after_slash = true;
            }
        } else if (c == '/' && !seen_slash && seen_digit) {
            seen_slash = true;
        } else {
            throw std::invalid_argument("malformed rational literal: " + std::string(text));
        }
    }
    if (!seen_digit || (seen_slash && !digit_after_slash)) {
        throw std::invalid_argument("malformed rational literal: " + std::string(text));
    }
    std::string s(text[0] == '+' ? text.substr(1) : text);
    Rational r;
    if (r.set_str(s, 10) != 0) {
        throw std::invalid_argument("malformed rational literal: " + std::string(text));
    }
    if (r.get_den() == 0) {
        throw std::domain_error("rational with zero denominator: " + std::string(text));
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational &r)
{
    return r.get_str(10);
}

inline Integer factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Integer binomial(unsigned n, unsigned k)
{
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

inline Integer int_gcd(const Integer &a, const Integer &b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer int_lcm(const Integer &a, const Integer &b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// gcd(p1/q1, p2/q2) = gcd(p1, p2) / lcm(q1, q2); always nonnegative.
inline Rational rational_gcd(const Rational &a, const Rational &b)
{
    Rational g(int_gcd(a.get_num(), b.get_num()), int_lcm(a.get_den(), b.get_den()));
    g.canonicalize();
    return g;
}

inline Rational pow(const Rational &base, long e)
{
    if (e < 0) {
        if (base == 0) {
            throw std::domain_error("negative power of zero");
        }
        return pow(Rational(1) / base, -e);
    }
    Rational r(1);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    r = Rational(num, den);
    r.canonicalize();
    return r;
}

} // namespace cy4
