#pragma once

// Products of linear forms with a rational scalar, and their exact sums.
//
// Every equivariant Euler class in this library is such a product, so sums of
// localization contributions are formed over the least common multiple of
// the factored denominators and only the linear factors of that denominator
// are ever tested for cancellation.

#include <cy4/parallel.hpp>
#include <cy4/ratfun.hpp>

#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace cy4
{

// Integer linear form sum_i c[i] * l_i, primitive with its first nonzero
// coefficient positive.
using LinearForm = std::array<int, max_vars>;

class LinearProduct
{
public:
    LinearProduct() = default;
    explicit LinearProduct(const Rational &scalar) : scalar_(scalar) {}

    // Multiplies by (sum_i w[i] l_i)^e; w must be nonzero.
    void mul_form(const LinearForm &w, int e)
    {
        if (e == 0 || scalar_ == 0) {
            return;
        }
        int g = 0;
        for (int c : w) {
            g = std::gcd(g, std::abs(c));
        }
        if (g == 0) {
            throw std::domain_error("zero linear form in product");
        }
        LinearForm prim{};
        int sign = 0;
        for (std::size_t i = 0; i < max_vars; ++i) {
            prim[i] = w[i] / g;
            if (sign == 0 && prim[i] != 0) {
                sign = prim[i] > 0 ? 1 : -1;
            }
        }
        for (auto &c : prim) {
            c *= sign;
        }
        scalar_ *= pow(Rational(sign * g), e);
        auto it = factors_.try_emplace(prim, 0).first;
        it->second += e;
        if (it->second == 0) {
            factors_.erase(it);
        }
    }
    void mul_scalar(const Rational &c)
    {
        scalar_ *= c;
        if (scalar_ == 0) {
            factors_.clear();
        }
    }
    LinearProduct &operator*=(const LinearProduct &o)
    {
        mul_scalar(o.scalar_);
        for (const auto &[f, e] : o.factors_) {
            mul_form(f, e);
        }
        return *this;
    }

    const Rational &scalar() const
    {
        return scalar_;
    }
    const std::map<LinearForm, int> &factors() const
    {
        return factors_;
    }
    bool is_zero() const
    {
        return scalar_ == 0;
    }
    // Sum of exponents: the homogeneous degree of the product.
    int degree() const
    {
        int d = 0;
        for (const auto &[f, e] : factors_) {
            d += e;
        }
        return d;
    }

    RatFun to_ratfun() const
    {
        Poly num = Poly::constant(scalar_), den = Poly::constant(1);
        for (const auto &[f, e] : factors_) {
            const Poly lin = Poly::linear(f);
            if (e > 0) {
                num *= pow(lin, static_cast<unsigned>(e));
            } else {
                den *= pow(lin, static_cast<unsigned>(-e));
            }
        }
        return RatFun::from_coprime(std::move(num), std::move(den));
    }

private:
    Rational scalar_{1};
    std::map<LinearForm, int> factors_;
};

namespace detail
{

// Homogeneous polynomial in two variables x < y: c[k] is the coefficient of
// x^(deg-k) y^k.
struct BinaryForm {
    std::vector<Integer> c{Integer(1)};

    void mul_linear(const Integer &a, const Integer &b)
    {
        std::vector<Integer> out(c.size() + 1);
        for (std::size_t k = 0; k < c.size(); ++k) {
            out[k] += a * c[k];
            out[k + 1] += b * c[k];
        }
        c = std::move(out);
    }

    // Exact division by a*x + b*y with (a, b) primitive; false if not divisible.
    bool div_linear(const Integer &a, const Integer &b)
    {
        const std::size_t m = c.size() - 1;
        if (m == 0) {
            return false;
        }
        std::vector<Integer> q(m);
        if (a == 0) {
            if (c[0] != 0) {
                return false;
            }
            for (std::size_t k = 1; k <= m; ++k) {
                q[k - 1] = c[k] * b;
            }
            c = std::move(q);
            return true;
        }
        Integer prev = 0, rem;
        for (std::size_t k = 0; k < m; ++k) {
            rem = c[k] - b * prev;
            if (!mpz_divisible_p(rem.get_mpz_t(), a.get_mpz_t())) {
                return false;
            }
            mpz_divexact(q[k].get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t());
            prev = q[k];
        }
        if (c[m] != b * prev) {
            return false;
        }
        c = std::move(q);
        return true;
    }

    bool is_zero() const
    {
        return std::all_of(c.begin(), c.end(), [](const Integer &v) { return v == 0; });
    }

    Poly to_poly(std::size_t x, std::size_t y, const Rational &scale) const
    {
        const int deg = static_cast<int>(c.size()) - 1;
        std::vector<Term> terms;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] != 0) {
                Monomial m;
                m.exps[x] += deg - static_cast<int>(k);
                m.exps[y] += static_cast<int>(k);
                terms.push_back({m, Rational(c[k]) * scale});
            }
        }
        return Poly::from_terms(std::move(terms));
    }
};

} // namespace detail

// Exact sum of factored terms as a reduced rational function. Numerators over
// the common denominator are expanded in parallel; the sum itself is formed
// serially in input order.
inline RatFun sum_factored(std::span<const LinearProduct> terms, unsigned workers = 1)
{
    std::map<LinearForm, int> common;
    std::vector<std::size_t> live;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        if (terms[t].is_zero()) {
            continue;
        }
        live.push_back(t);
        for (const auto &[f, e] : terms[t].factors()) {
            if (e < 0) {
                int &m = common[f];
                m = std::max(m, -e);
            }
        }
    }
    if (live.empty()) {
        return RatFun::zero();
    }

    // Support of every linear form involved.
    std::array<bool, max_vars> used{};
    for (std::size_t t : live) {
        for (const auto &[f, e] : terms[t].factors()) {
            for (std::size_t i = 0; i < max_vars; ++i) {
                used[i] = used[i] || f[i] != 0;
            }
        }
    }
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < max_vars; ++i) {
        if (used[i]) {
            vars.push_back(i);
        }
    }
    bool same_degree = true;
    for (std::size_t t : live) {
        same_degree = same_degree && terms[t].degree() == terms[live[0]].degree();
    }

    if (vars.size() <= 2 && same_degree) {
        const std::size_t x = vars.empty() ? 0 : vars[0];
        const std::size_t y = vars.size() < 2 ? (x == 0 ? 1 : 0) : vars[1];
        const std::size_t lo = std::min(x, y), hi = std::max(x, y);

        Integer scale_den = 1;
        for (std::size_t t : live) {
            scale_den = int_lcm(scale_den, terms[t].scalar().get_den());
        }
        std::vector<detail::BinaryForm> nums(live.size());
        parallel_for(live.size(), workers, [&](std::size_t idx) {
            const LinearProduct &p = terms[live[idx]];
            detail::BinaryForm acc;
            std::map<LinearForm, int> exps;
            for (const auto &[f, e] : p.factors()) {
                exps[f] = e;
            }
            for (const auto &[f, m] : common) {
                exps[f] += m;
            }
            for (const auto &[f, e] : exps) {
                for (int r = 0; r < e; ++r) {
                    acc.mul_linear(f[lo], f[hi]);
                }
            }
            const Rational s = p.scalar() * Rational(scale_den);
            for (auto &v : acc.c) {
                v *= s.get_num();
            }
            nums[idx] = std::move(acc);
        });
        detail::BinaryForm total;
        total.c.assign(nums[0].c.size(), Integer(0));
        for (const auto &n : nums) {
            if (n.c.size() != total.c.size()) {
                throw std::logic_error("sum_factored: inconsistent numerator degrees");
            }
            for (std::size_t k = 0; k < n.c.size(); ++k) {
                total.c[k] += n.c[k];
            }
        }
        if (total.is_zero()) {
            return RatFun::zero();
        }
        for (auto &[f, m] : common) {
            while (m > 0 && total.c.size() > 1 && total.div_linear(f[lo], f[hi])) {
                --m;
            }
        }
        Poly den = Poly::constant(1);
        for (const auto &[f, m] : common) {
            if (m > 0) {
                den *= pow(Poly::linear(f), static_cast<unsigned>(m));
            }
        }
        return RatFun::from_coprime(total.to_poly(lo, hi, Rational(1) / Rational(scale_den)), std::move(den));
    }

    // General path: sparse polynomial arithmetic.
    std::vector<Poly> nums(live.size());
    parallel_for(live.size(), workers, [&](std::size_t idx) {
        const LinearProduct &p = terms[live[idx]];
        Poly acc = Poly::constant(p.scalar());
        std::map<LinearForm, int> exps;
        for (const auto &[f, e] : p.factors()) {
            exps[f] = e;
        }
        for (const auto &[f, m] : common) {
            exps[f] += m;
        }
        for (const auto &[f, e] : exps) {
            if (e > 0) {
                acc *= pow(Poly::linear(f), static_cast<unsigned>(e));
            }
        }
        nums[idx] = std::move(acc);
    });
    Poly total;
    for (const auto &n : nums) {
        total += n;
    }
    if (total.is_zero()) {
        return RatFun::zero();
    }
    for (auto &[f, m] : common) {
        const Poly lin = Poly::linear(f);
        while (m > 0) {
            auto q = divide_exact(total, lin);
            if (!q) {
                break;
            }
            total = std::move(*q);
            --m;
        }
    }
    Poly den = Poly::constant(1);
    for (const auto &[f, m] : common) {
        if (m > 0) {
            den *= pow(Poly::linear(f), static_cast<unsigned>(m));
        }
    }
    return RatFun::from_coprime(std::move(total), std::move(den));
}

} // namespace cy4
