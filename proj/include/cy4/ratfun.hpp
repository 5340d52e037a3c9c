#pragma once

// Reduced rational functions num/den over Q[l0..l3].
//
// Invariants: den != 0, gcd(num, den) = 1, den has leading coefficient 1 in
// graded-lex order. The zero function is 0/1. Two values are equal iff their
// canonical representatives are identical.

#include <cy4/poly.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cy4
{

// Raised by residue_at when the pole order exceeds one.
class PoleOrderError : public std::domain_error
{
public:
    PoleOrderError(std::size_t var, const Rational &pole)
        : std::domain_error("pole of order >= 2 at l" + std::to_string(var) + " = " + to_string(pole)), var_(var),
          pole_(pole)
    {
    }
    std::size_t variable() const
    {
        return var_;
    }
    const Rational &pole() const
    {
        return pole_;
    }

private:
    std::size_t var_;
    Rational pole_;
};

class RatFun
{
public:
    RatFun() : RatFun(zero()) {}
    explicit RatFun(const Rational &c, std::size_t arity = max_vars)
        : num_(Poly::constant(c, arity)), den_(Poly::constant(1, arity))
    {
    }
    explicit RatFun(Poly p) : num_(std::move(p)), den_(Poly::constant(1, num_.arity())) {}
    RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
    {
        Poly::check_same_arity(num_, den_);
        if (den_.is_zero()) {
            throw std::domain_error("rational function with zero denominator");
        }
        reduce();
    }

    static RatFun zero(std::size_t arity = max_vars)
    {
        return RatFun(Poly(arity));
    }

    // Caller guarantees gcd(num, den) = 1; only the scaling is normalized.
    static RatFun from_coprime(Poly num, Poly den)
    {
        if (den.is_zero()) {
            throw std::domain_error("rational function with zero denominator");
        }
        RatFun r = zero(num.arity());
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        r.normalize();
        return r;
    }

    std::size_t arity() const
    {
        return num_.arity();
    }
    const Poly &num() const
    {
        return num_;
    }
    const Poly &den() const
    {
        return den_;
    }
    bool is_zero() const
    {
        return num_.is_zero();
    }

    // Degree d with f(s*l) = s^d f(l) when num and den are homogeneous;
    // std::nullopt otherwise. The zero function reports std::nullopt too
    // since it is homogeneous of every degree.
    std::optional<int> homogeneous_degree() const
    {
        if (is_zero() || !num_.is_homogeneous() || !den_.is_homogeneous()) {
            return std::nullopt;
        }
        return num_.total_degree() - den_.total_degree();
    }

    RatFun operator-() const
    {
        RatFun r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFun operator+(const RatFun &a, const RatFun &b)
    {
        return add(a, b, false);
    }
    friend RatFun operator-(const RatFun &a, const RatFun &b)
    {
        return add(a, b, true);
    }
    friend RatFun operator*(const RatFun &a, const RatFun &b)
    {
        Poly::check_same_arity(a.num_, b.num_);
        if (a.is_zero() || b.is_zero()) {
            return zero(a.arity());
        }
        // Cross-cancel before multiplying; the result is then already coprime.
        const Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        Poly n = *divide_exact(a.num_, g1) * *divide_exact(b.num_, g2);
        Poly d = *divide_exact(a.den_, g2) * *divide_exact(b.den_, g1);
        return from_coprime(std::move(n), std::move(d));
    }
    friend RatFun operator/(const RatFun &a, const RatFun &b)
    {
        if (b.is_zero()) {
            throw std::domain_error("rational function division by zero");
        }
        return a * b.inverse();
    }
    RatFun inverse() const
    {
        if (is_zero()) {
            throw std::domain_error("inverse of zero rational function");
        }
        return from_coprime(den_, num_);
    }
    RatFun &operator+=(const RatFun &o)
    {
        return *this = *this + o;
    }
    RatFun &operator-=(const RatFun &o)
    {
        return *this = *this - o;
    }
    RatFun &operator*=(const RatFun &o)
    {
        return *this = *this * o;
    }
    RatFun &operator/=(const RatFun &o)
    {
        return *this = *this / o;
    }

    friend bool operator==(const RatFun &a, const RatFun &b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    void reduce()
    {
        if (num_.is_zero()) {
            den_ = Poly::constant(1, num_.arity());
            return;
        }
        const Poly g = gcd(num_, den_);
        if (!(g.is_constant())) {
            num_ = *divide_exact(num_, g);
            den_ = *divide_exact(den_, g);
        }
        normalize();
    }

    void normalize()
    {
        if (num_.is_zero()) {
            den_ = Poly::constant(1, num_.arity());
            return;
        }
        const Rational lc = den_.leading_coeff();
        if (lc != 1) {
            const Rational inv = Rational(1) / lc;
            num_ *= inv;
            den_ *= inv;
        }
    }

    static RatFun add(const RatFun &a, const RatFun &b, bool subtract)
    {
        Poly::check_same_arity(a.num_, b.num_);
        const Poly bn = subtract ? -b.num_ : b.num_;
        if (a.is_zero()) {
            return from_coprime(bn, b.den_);
        }
        if (b.is_zero()) {
            return a;
        }
        if (a.den_ == b.den_) {
            return RatFun(a.num_ + bn, a.den_);
        }
        // a/g*a' + b/g*b' with g = gcd of denominators.
        const Poly g = gcd(a.den_, b.den_);
        const Poly ad = *divide_exact(a.den_, g), bd = *divide_exact(b.den_, g);
        Poly n = a.num_ * bd + bn * ad;
        if (n.is_zero()) {
            return zero(a.arity());
        }
        const Poly h = gcd(n, g);
        Poly gd = g;
        if (!h.is_constant()) {
            n = *divide_exact(n, h);
            gd = *divide_exact(g, h);
        }
        return from_coprime(std::move(n), ad * bd * gd);
    }

    Poly num_;
    Poly den_;
};

// Canonical text: "0" or "(num)/(den)".
inline std::string to_string(const RatFun &f)
{
    if (f.is_zero()) {
        return "0";
    }
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

// Accepts the canonical form, a bare polynomial, or "(p)/(q)" with arbitrary
// p and q (reduced on construction).
inline RatFun parse_ratfun(std::string_view text, std::size_t arity = max_vars)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
            s.remove_prefix(1);
        }
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
            s.remove_suffix(1);
        }
        return s;
    };
    text = trim(text);
    if (!text.empty() && text.front() == '(') {
        int depth = 0;
        std::size_t close = std::string_view::npos;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '(') {
                ++depth;
            } else if (text[i] == ')' && --depth == 0) {
                close = i;
                break;
            }
        }
        if (close == std::string_view::npos) {
            throw std::invalid_argument("unbalanced parentheses in \"" + std::string(text) + "\"");
        }
        const std::string_view num_text = text.substr(1, close - 1);
        std::string_view rest = trim(text.substr(close + 1));
        if (rest.empty()) {
            return RatFun(parse_poly(num_text, arity));
        }
        if (rest.front() != '/') {
            throw std::invalid_argument("expected '/' in \"" + std::string(text) + "\"");
        }
        rest = trim(rest.substr(1));
        if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
            throw std::invalid_argument("denominator must be parenthesized in \"" + std::string(text) + "\"");
        }
        return RatFun(parse_poly(num_text, arity), parse_poly(rest.substr(1, rest.size() - 2), arity));
    }
    return RatFun(parse_poly(text, arity));
}

// Variable -> value map for specialize(); values are polynomials (constants
// for numeric assignments).
using Assignment = std::map<std::size_t, Poly>;

inline RatFun specialize(const RatFun &f, const Assignment &assignment)
{
    std::array<std::optional<Poly>, max_vars> values;
    for (const auto &[var, value] : assignment) {
        if (var >= f.arity()) {
            throw std::invalid_argument("specialize: variable outside arity");
        }
        values[var] = value;
    }
    Poly den = substitute(f.den(), values);
    if (den.is_zero()) {
        throw std::domain_error("specialize: denominator vanishes identically");
    }
    return RatFun(substitute(f.num(), values), std::move(den));
}

inline RatFun specialize(const RatFun &f, std::size_t var, const Rational &value)
{
    return specialize(f, Assignment{{var, Poly::constant(value, f.arity())}});
}

// f(c * l): every variable l_i replaced by c * l_i.
inline RatFun scale_arguments(const RatFun &f, const Poly &c)
{
    Assignment a;
    for (std::size_t i = 0; i < f.arity(); ++i) {
        a.emplace(i, c * Poly::variable(i, f.arity()));
    }
    return specialize(f, a);
}

// f(s l) = s^deg f(l). When some variable does not occur in f it serves as
// a symbolic s; otherwise s runs over a few fixed rationals. Zero passes for
// every degree.
inline bool is_homogeneous_of_degree(const RatFun &f, int deg)
{
    if (f.is_zero()) {
        return true;
    }
    if (f.homogeneous_degree() != deg) {
        return false;
    }
    auto scaled_power = [&](const Poly &s) {
        return deg >= 0 ? RatFun(pow(s, static_cast<unsigned>(deg))) * f
                        : f / RatFun(pow(s, static_cast<unsigned>(-deg)));
    };
    for (std::size_t v = 0; v < f.arity(); ++v) {
        if (!f.num().uses_variable(v) && !f.den().uses_variable(v)) {
            const Poly s = Poly::variable(v, f.arity());
            return scale_arguments(f, s) == scaled_power(s);
        }
    }
    for (const Rational &c : {make_rational(2), make_rational(-3), make_rational(5, 7)}) {
        const Poly s = Poly::constant(c, f.arity());
        if (scale_arguments(f, s) != scaled_power(s)) {
            return false;
        }
    }
    return true;
}

// Substitutes l0 = -l1 - l2 - l3 (the Calabi-Yau torus relation).
inline RatFun eliminate_cy_relation(const RatFun &f)
{
    if (f.arity() != max_vars) {
        throw std::invalid_argument("Calabi-Yau elimination needs all four variables");
    }
    const Poly l0 = -(Poly::variable(1) + Poly::variable(2) + Poly::variable(3));
    return specialize(f, Assignment{{0, l0}});
}

// lim_{x -> pole} (x - pole) f, where x = l_var. Zero when f has no pole
// there; throws PoleOrderError for poles of order two or more.
inline RatFun residue_at(const RatFun &f, std::size_t var, const Rational &pole)
{
    if (var >= f.arity()) {
        throw std::invalid_argument("residue_at: variable outside arity");
    }
    std::array<std::optional<Poly>, max_vars> at_pole;
    at_pole[var] = Poly::constant(pole, f.arity());
    if (!substitute(f.den(), at_pole).is_zero()) {
        return RatFun::zero(f.arity());
    }
    const Poly linear = Poly::variable(var, f.arity()) - Poly::constant(pole, f.arity());
    auto reduced = divide_exact(f.den(), linear);
    if (!reduced) {
        throw std::logic_error("residue_at: vanishing denominator not divisible by linear factor");
    }
    Poly den_rest = substitute(*reduced, at_pole);
    if (den_rest.is_zero()) {
        throw PoleOrderError(var, pole);
    }
    return RatFun(substitute(f.num(), at_pole), std::move(den_rest));
}

} // namespace cy4
