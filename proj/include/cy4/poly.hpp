#pragma once

// Sparse multivariate polynomials over Q in the equivariant parameters l0..l3.
//
// Terms are stored in a vector sorted by descending graded-lex order
// (l0 > l1 > l2 > l3); no stored coefficient is zero and the zero
// polynomial has no terms.

#include <cy4/rational.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cy4
{

inline constexpr std::size_t max_vars = 4;

struct Monomial {
    std::array<int, max_vars> exps{};

    int degree() const
    {
        return std::accumulate(exps.begin(), exps.end(), 0);
    }
    bool is_one() const
    {
        return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
    }
    bool divides(const Monomial &other) const
    {
        for (std::size_t i = 0; i < max_vars; ++i) {
            if (exps[i] > other.exps[i]) {
                return false;
            }
        }
        return true;
    }
    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        Monomial m;
        for (std::size_t i = 0; i < max_vars; ++i) {
            m.exps[i] = a.exps[i] + b.exps[i];
        }
        return m;
    }
    friend Monomial operator/(const Monomial &a, const Monomial &b)
    {
        Monomial m;
        for (std::size_t i = 0; i < max_vars; ++i) {
            m.exps[i] = a.exps[i] - b.exps[i];
        }
        return m;
    }
    friend bool operator==(const Monomial &, const Monomial &) = default;
};

// Strict "a comes before b" in graded-lex descending order.
inline bool grlex_greater(const Monomial &a, const Monomial &b)
{
    const int da = a.degree(), db = b.degree();
    if (da != db) {
        return da > db;
    }
    return a.exps > b.exps;
}

struct Term {
    Monomial mono;
    Rational coeff;
};

class Poly
{
public:
    explicit Poly(std::size_t arity = max_vars) : arity_(check_arity(arity)) {}

    static Poly constant(const Rational &c, std::size_t arity = max_vars)
    {
        Poly p(arity);
        if (c != 0) {
            p.terms_.push_back({Monomial{}, c});
        }
        return p;
    }
    static Poly variable(std::size_t index, std::size_t arity = max_vars)
    {
        if (index >= arity) {
            throw std::invalid_argument("variable index outside polynomial arity");
        }
        Poly p(arity);
        Monomial m;
        m.exps[index] = 1;
        p.terms_.push_back({m, Rational(1)});
        return p;
    }
    static Poly monomial(const Monomial &m, const Rational &c, std::size_t arity = max_vars)
    {
        Poly p(arity);
        for (std::size_t i = arity; i < max_vars; ++i) {
            if (m.exps[i] != 0) {
                throw std::invalid_argument("monomial uses a variable outside the arity");
            }
        }
        for (int e : m.exps) {
            if (e < 0) {
                throw std::invalid_argument("negative exponent in polynomial monomial");
            }
        }
        if (c != 0) {
            p.terms_.push_back({m, c});
        }
        return p;
    }
    // Linear form sum_i w[i] * l_i.
    static Poly linear(std::span<const int> w, std::size_t arity = max_vars)
    {
        Poly p(arity);
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] != 0) {
                p += monomial(unit(i), Rational(w[i]), arity);
            }
        }
        return p;
    }
    // Builds from arbitrary (possibly unsorted, duplicated, zero) terms.
    static Poly from_terms(std::vector<Term> terms, std::size_t arity = max_vars)
    {
        Poly p(arity);
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    std::size_t arity() const
    {
        return arity_;
    }
    const std::vector<Term> &terms() const
    {
        return terms_;
    }
    std::size_t size() const
    {
        return terms_.size();
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
    }
    Rational constant_term() const
    {
        if (!terms_.empty() && terms_.back().mono.is_one()) {
            return terms_.back().coeff;
        }
        return Rational(0);
    }
    const Term &leading_term() const
    {
        if (terms_.empty()) {
            throw std::domain_error("leading term of the zero polynomial");
        }
        return terms_.front();
    }
    const Rational &leading_coeff() const
    {
        return leading_term().coeff;
    }
    // -1 for the zero polynomial.
    int total_degree() const
    {
        return terms_.empty() ? -1 : terms_.front().mono.degree();
    }
    int degree_in(std::size_t var) const
    {
        int d = terms_.empty() ? -1 : 0;
        for (const auto &t : terms_) {
            d = std::max(d, t.mono.exps[var]);
        }
        return d;
    }
    // Largest power of l_var dividing every term.
    int valuation_in(std::size_t var) const
    {
        if (terms_.empty()) {
            return 0;
        }
        int v = terms_.front().mono.exps[var];
        for (const auto &t : terms_) {
            v = std::min(v, t.mono.exps[var]);
        }
        return v;
    }
    bool uses_variable(std::size_t var) const
    {
        return std::any_of(terms_.begin(), terms_.end(), [var](const Term &t) { return t.mono.exps[var] != 0; });
    }
    bool is_homogeneous() const
    {
        return terms_.empty() || terms_.front().mono.degree() == terms_.back().mono.degree();
    }

    Poly operator-() const
    {
        Poly r = *this;
        for (auto &t : r.terms_) {
            t.coeff = -t.coeff;
        }
        return r;
    }
    Poly &operator+=(const Poly &o)
    {
        *this = merge(*this, o, false);
        return *this;
    }
    Poly &operator-=(const Poly &o)
    {
        *this = merge(*this, o, true);
        return *this;
    }
    Poly &operator*=(const Rational &c)
    {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto &t : terms_) {
                t.coeff *= c;
            }
        }
        return *this;
    }
    friend Poly operator+(const Poly &a, const Poly &b)
    {
        return merge(a, b, false);
    }
    friend Poly operator-(const Poly &a, const Poly &b)
    {
        return merge(a, b, true);
    }
    friend Poly operator*(Poly a, const Rational &c)
    {
        a *= c;
        return a;
    }
    friend Poly operator*(const Rational &c, Poly a)
    {
        a *= c;
        return a;
    }
    friend Poly operator*(const Poly &a, const Poly &b)
    {
        check_same_arity(a, b);
        Poly r(a.arity_);
        if (a.is_zero() || b.is_zero()) {
            return r;
        }
        std::vector<Term> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto &x : a.terms_) {
            for (const auto &y : b.terms_) {
                out.push_back({x.mono * y.mono, x.coeff * y.coeff});
            }
        }
        r.terms_ = std::move(out);
        r.canonicalize();
        return r;
    }
    Poly &operator*=(const Poly &o)
    {
        *this = *this * o;
        return *this;
    }
    friend bool operator==(const Poly &a, const Poly &b)
    {
        if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) {
                return false;
            }
        }
        return true;
    }

    static void check_same_arity(const Poly &a, const Poly &b)
    {
        if (a.arity_ != b.arity_) {
            throw std::invalid_argument("polynomial arity mismatch");
        }
    }

    static Monomial unit(std::size_t i)
    {
        Monomial m;
        m.exps[i] = 1;
        return m;
    }

private:
    static std::size_t check_arity(std::size_t arity)
    {
        if (arity == 0 || arity > max_vars) {
            throw std::invalid_argument("polynomial arity must be between 1 and 4");
        }
        return arity;
    }

    void canonicalize()
    {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term &x, const Term &y) { return grlex_greater(x.mono, y.mono); });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto &t : terms_) {
            if (!out.empty() && out.back().mono == t.mono) {
                out.back().coeff += t.coeff;
            } else {
                out.push_back(std::move(t));
            }
        }
        std::erase_if(out, [](const Term &t) { return t.coeff == 0; });
        terms_ = std::move(out);
    }

    static Poly merge(const Poly &a, const Poly &b, bool subtract)
    {
        check_same_arity(a, b);
        Poly r(a.arity_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && grlex_greater(a.terms_[i].mono, b.terms_[j].mono))) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].mono, a.terms_[i].mono)) {
                Term t = b.terms_[j++];
                if (subtract) {
                    t.coeff = -t.coeff;
                }
                r.terms_.push_back(std::move(t));
            } else {
                Rational c = a.terms_[i].coeff;
                if (subtract) {
                    c -= b.terms_[j].coeff;
                } else {
                    c += b.terms_[j].coeff;
                }
                if (c != 0) {
                    r.terms_.push_back({a.terms_[i].mono, std::move(c)});
                }
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::size_t arity_;
    std::vector<Term> terms_;
};

inline Poly pow(const Poly &base, unsigned e)
{
    Poly result = Poly::constant(1, base.arity());
    Poly b = base;
    while (e != 0) {
        if (e & 1U) {
            result *= b;
        }
        e >>= 1U;
        if (e != 0) {
            b *= b;
        }
    }
    return result;
}

// Multivariate division with respect to graded lex; returns (quotient, remainder).
inline std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b)
{
    Poly::check_same_arity(a, b);
    if (b.is_zero()) {
        throw std::domain_error("polynomial division by zero");
    }
    const Term &lead = b.leading_term();
    std::vector<Term> quot, rem;
    Poly p = a;
    while (!p.is_zero()) {
        const Term &lt = p.leading_term();
        if (lead.mono.divides(lt.mono)) {
            Term t{lt.mono / lead.mono, lt.coeff / lead.coeff};
            quot.push_back(t);
            p -= Poly::monomial(t.mono, t.coeff, a.arity()) * b;
        } else {
            rem.push_back(lt);
            p -= Poly::monomial(lt.mono, lt.coeff, a.arity());
        }
    }
    return {Poly::from_terms(std::move(quot), a.arity()), Poly::from_terms(std::move(rem), a.arity())};
}

inline std::optional<Poly> divide_exact(const Poly &a, const Poly &b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) {
        return std::nullopt;
    }
    return q;
}

inline bool divides(const Poly &divisor, const Poly &p)
{
    return divide_exact(p, divisor).has_value();
}

// Positive rational c with p / c having coprime integer coefficients.
inline Rational content(const Poly &p)
{
    if (p.is_zero()) {
        return Rational(0);
    }
    Integer num = 0, den = 1;
    for (const auto &t : p.terms()) {
        num = int_gcd(num, t.coeff.get_num());
        den = int_lcm(den, t.coeff.get_den());
    }
    Rational c(num, den);
    c.canonicalize();
    return c;
}

// Integer-coefficient primitive part with positive leading coefficient.
inline Poly primitive_part(const Poly &p)
{
    if (p.is_zero()) {
        return p;
    }
    Rational c = content(p);
    if (p.leading_coeff() < 0) {
        c = -c;
    }
    return p * (Rational(1) / c);
}

// Substitutes polynomials for variables; std::nullopt leaves a variable unchanged.
inline Poly substitute(const Poly &p, std::span<const std::optional<Poly>> values)
{
    std::array<std::vector<Poly>, max_vars> powers;
    for (std::size_t v = 0; v < values.size() && v < max_vars; ++v) {
        if (values[v]) {
            Poly::check_same_arity(p, *values[v]);
            powers[v].push_back(Poly::constant(1, p.arity()));
        }
    }
    auto power_of = [&](std::size_t v, int e) -> const Poly & {
        auto &cache = powers[v];
        while (static_cast<int>(cache.size()) <= e) {
            cache.push_back(cache.back() * *values[v]);
        }
        return cache[static_cast<std::size_t>(e)];
    };
    Poly result(p.arity());
    for (const auto &t : p.terms()) {
        Monomial kept = t.mono;
        Poly term = Poly::constant(1, p.arity());
        for (std::size_t v = 0; v < values.size() && v < max_vars; ++v) {
            if (values[v] && kept.exps[v] != 0) {
                term *= power_of(v, kept.exps[v]);
                kept.exps[v] = 0;
            }
        }
        result += Poly::monomial(kept, t.coeff, p.arity()) * term;
    }
    return result;
}

namespace detail
{

// Univariate view of a polynomial in variable v with coefficients free of v.
using UniPoly = std::vector<Poly>;

inline UniPoly to_univariate(const Poly &p, std::size_t v)
{
    UniPoly u(static_cast<std::size_t>(std::max(p.degree_in(v), 0)) + 1, Poly(p.arity()));
    std::vector<std::vector<Term>> buckets(u.size());
    for (const auto &t : p.terms()) {
        Monomial m = t.mono;
        const auto e = static_cast<std::size_t>(m.exps[v]);
        m.exps[v] = 0;
        buckets[e].push_back({m, t.coeff});
    }
    for (std::size_t e = 0; e < u.size(); ++e) {
        u[e] = Poly::from_terms(std::move(buckets[e]), p.arity());
    }
    while (u.size() > 1 && u.back().is_zero()) {
        u.pop_back();
    }
    return u;
}

inline Poly from_univariate(const UniPoly &u, std::size_t v, std::size_t arity)
{
    std::vector<Term> terms;
    for (std::size_t e = 0; e < u.size(); ++e) {
        for (const auto &t : u[e].terms()) {
            Monomial m = t.mono;
            m.exps[v] += static_cast<int>(e);
            terms.push_back({m, t.coeff});
        }
    }
    return Poly::from_terms(std::move(terms), arity);
}

inline bool uni_is_zero(const UniPoly &u)
{
    return u.size() == 1 && u[0].is_zero();
}

inline int uni_degree(const UniPoly &u)
{
    return uni_is_zero(u) ? -1 : static_cast<int>(u.size()) - 1;
}

inline void uni_trim(UniPoly &u)
{
    while (u.size() > 1 && u.back().is_zero()) {
        u.pop_back();
    }
}

Poly gcd_integral(const Poly &a, const Poly &b);
Poly normalize_sign(Poly p);

inline Poly uni_content(const UniPoly &u)
{
    Poly g(u[0].arity());
    for (const auto &c : u) {
        if (!c.is_zero()) {
            g = g.is_zero() ? normalize_sign(c) : gcd_integral(g, c);
        }
        if (g.is_constant() && g.constant_term() == 1) {
            break;
        }
    }
    return g;
}

inline UniPoly uni_divide(const UniPoly &u, const Poly &c)
{
    UniPoly r;
    r.reserve(u.size());
    for (const auto &x : u) {
        auto q = divide_exact(x, c);
        if (!q) {
            throw std::logic_error("content does not divide coefficient");
        }
        r.push_back(std::move(*q));
    }
    return r;
}

// Pseudo-remainder of a by b (both nonzero, deg a >= deg b), without the
// final power of lc(b); callers take primitive parts anyway.
inline UniPoly uni_prem(UniPoly a, const UniPoly &b)
{
    const int db = uni_degree(b);
    const Poly &lb = b.back();
    while (!uni_is_zero(a) && uni_degree(a) >= db) {
        const int da = uni_degree(a);
        const Poly la = a.back();
        const auto shift = static_cast<std::size_t>(da - db);
        for (auto &c : a) {
            c *= lb;
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[i + shift] -= la * b[i];
        }
        uni_trim(a);
    }
    return a;
}

inline Poly normalize_sign(Poly p)
{
    if (!p.is_zero() && p.leading_coeff() < 0) {
        p = -p;
    }
    return p;
}

// Both polynomials homogeneous and supported on variables {x, y}: dehomogenize
// at y = 1, take a univariate gcd and rehomogenize.
inline std::optional<Poly> gcd_homogeneous_pair(const Poly &a, const Poly &b)
{
    if (!a.is_homogeneous() || !b.is_homogeneous()) {
        return std::nullopt;
    }
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < a.arity(); ++v) {
        if (a.uses_variable(v) || b.uses_variable(v)) {
            vars.push_back(v);
        }
    }
    if (vars.size() != 2) {
        return std::nullopt;
    }
    const std::size_t x = vars[0], y = vars[1];
    const int common_y = std::min(a.valuation_in(y), b.valuation_in(y));
    std::array<std::optional<Poly>, max_vars> at_one;
    at_one[y] = Poly::constant(1, a.arity());
    const Poly ua = substitute(a, at_one), ub = substitute(b, at_one);
    const Poly g = gcd_integral(ua, ub);
    const int dg = g.degree_in(x);
    std::vector<Term> terms;
    for (const auto &t : g.terms()) {
        Monomial m = t.mono;
        m.exps[y] = dg - m.exps[x] + common_y;
        terms.push_back({m, t.coeff});
    }
    return Poly::from_terms(std::move(terms), a.arity());
}

// gcd over Z[l0..l3] of integer-coefficient polynomials, positive leading coefficient.
inline Poly gcd_integral(const Poly &a, const Poly &b)
{
    if (a.is_zero()) {
        return normalize_sign(b);
    }
    if (b.is_zero()) {
        return normalize_sign(a);
    }
    if (a.is_constant() || b.is_constant()) {
        const Rational ca = content(a), cb = content(b);
        return Poly::constant(rational_gcd(ca, cb), a.arity());
    }
    if (auto g = gcd_homogeneous_pair(a, b)) {
        return *g;
    }
    std::size_t v = 0;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (a.uses_variable(i) || b.uses_variable(i)) {
            v = i;
        }
    }
    const UniPoly ua = to_univariate(a, v), ub = to_univariate(b, v);
    if (uni_degree(ua) == 0) {
        return gcd_integral(a, uni_content(ub));
    }
    if (uni_degree(ub) == 0) {
        return gcd_integral(uni_content(ua), b);
    }
    const Poly ca = uni_content(ua), cb = uni_content(ub);
    const Poly c = gcd_integral(ca, cb);
    UniPoly p = uni_divide(ua, ca), q = uni_divide(ub, cb);
    if (uni_degree(p) < uni_degree(q)) {
        std::swap(p, q);
    }
    while (!uni_is_zero(q)) {
        UniPoly r = uni_prem(p, q);
        p = std::move(q);
        if (uni_is_zero(r)) {
            q = std::move(r);
            break;
        }
        if (uni_degree(r) == 0) {
            // Coprime in v.
            p = UniPoly{Poly::constant(1, a.arity())};
            break;
        }
        q = uni_divide(r, uni_content(r));
    }
    const Poly pp = from_univariate(uni_divide(p, uni_content(p)), v, a.arity());
    return normalize_sign(c * pp);
}

} // namespace detail

// Greatest common divisor: gcd of the rational contents times the primitive
// gcd, normalized to a positive leading coefficient.
inline Poly gcd(const Poly &a, const Poly &b)
{
    Poly::check_same_arity(a, b);
    if (a.is_zero() && b.is_zero()) {
        throw std::domain_error("gcd of two zero polynomials");
    }
    if (a.is_zero()) {
        return detail::normalize_sign(b);
    }
    if (b.is_zero()) {
        return detail::normalize_sign(a);
    }
    const Rational c = rational_gcd(content(a), content(b));
    return detail::gcd_integral(primitive_part(a), primitive_part(b)) * c;
}

// ---------------------------------------------------------------------------
// Text form: terms in descending graded-lex order, e.g. "l0^2 - 3/4*l0*l3 + 1/6".

inline std::string monomial_to_string(const Monomial &m, char letter)
{
    std::string s;
    for (std::size_t i = 0; i < max_vars; ++i) {
        if (m.exps[i] == 0) {
            continue;
        }
        if (!s.empty()) {
            s += '*';
        }
        s += letter;
        s += std::to_string(i);
        if (m.exps[i] != 1) {
            s += '^';
            s += std::to_string(m.exps[i]);
        }
    }
    return s;
}

inline std::string to_string(const Poly &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto &t : p.terms()) {
        const bool neg = t.coeff < 0;
        if (first) {
            if (neg) {
                s += '-';
            }
        } else {
            s += neg ? " - " : " + ";
        }
        first = false;
        const Rational mag = abs(t.coeff);
        if (t.mono.is_one()) {
            s += to_string(mag);
        } else {
            if (mag != 1) {
                s += to_string(mag);
                s += '*';
            }
            s += monomial_to_string(t.mono, 'l');
        }
    }
    return s;
}

namespace detail
{

// Shared tokenizer for signed sums of products, used for Poly and KClass text.
class TermScanner
{
public:
    TermScanner(std::string_view text, char letter, bool allow_negative_exponents)
        : text_(text), letter_(letter), allow_neg_(allow_negative_exponents)
    {
    }

    struct ParsedTerm {
        Rational coeff;
        std::array<int, max_vars> exps{};
    };

    std::vector<ParsedTerm> parse()
    {
        std::vector<ParsedTerm> out;
        skip_ws();
        if (pos_ == text_.size()) {
            fail("empty expression");
        }
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ == text_.size()) {
                break;
            }
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            ParsedTerm t = parse_term();
            t.coeff *= sign;
            out.push_back(t);
        }
        return out;
    }

private:
    ParsedTerm parse_term()
    {
        ParsedTerm t{Rational(1), {}};
        bool any = false;
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
                t.coeff *= parse_number();
            } else if (pos_ < text_.size() && peek() == letter_) {
                ++pos_;
                if (pos_ >= text_.size() || peek() < '0' || peek() > '3') {
                    fail("expected variable index 0..3");
                }
                const auto idx = static_cast<std::size_t>(peek() - '0');
                ++pos_;
                int e = 1;
                skip_ws();
                if (pos_ < text_.size() && peek() == '^') {
                    ++pos_;
                    e = parse_int();
                    if (e < 0 && !allow_neg_) {
                        fail("negative exponent");
                    }
                }
                t.exps[idx] += e;
            } else {
                fail("expected a number or variable");
            }
            any = true;
            skip_ws();
            if (pos_ < text_.size() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) {
            fail("empty term");
        }
        return t;
    }

    Rational parse_number()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
        if (pos_ < text_.size() && peek() == '/') {
            ++pos_;
            const std::size_t dstart = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
                ++pos_;
            }
            if (dstart == pos_) {
                fail("missing denominator");
            }
        }
        return parse_rational(text_.substr(start, pos_ - start));
    }

    int parse_int()
    {
        skip_ws();
        int sign = 1;
        if (pos_ < text_.size() && (peek() == '-' || peek() == '+')) {
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
        }
        const std::size_t start = pos_;
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 1000000) {
                fail("exponent too large");
            }
            ++pos_;
        }
        if (start == pos_) {
            fail("expected integer exponent");
        }
        return static_cast<int>(sign * v);
    }

    char peek() const
    {
        return text_[pos_];
    }
    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    [[noreturn]] void fail(const std::string &what) const
    {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + what + " in \"" +
                                    std::string(text_) + "\"");
    }

    std::string_view text_;
    char letter_;
    bool allow_neg_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Poly parse_poly(std::string_view text, std::size_t arity = max_vars)
{
    std::vector<Term> terms;
    for (const auto &t : detail::TermScanner(text, 'l', false).parse()) {
        Monomial m;
        m.exps = t.exps;
        for (std::size_t i = arity; i < max_vars; ++i) {
            if (m.exps[i] != 0) {
                throw std::invalid_argument("variable outside arity in \"" + std::string(text) + "\"");
            }
        }
        terms.push_back({m, t.coeff});
    }
    return Poly::from_terms(std::move(terms), arity);
}

} // namespace cy4
