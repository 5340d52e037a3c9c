#pragma once

// Virtual representations of the torus (C*)^4: finite Z-linear combinations
// of characters t0^w0 t1^w1 t2^w2 t3^w3.

#include <cy4/poly.hpp>

#include <array>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>

namespace cy4
{

using Weight = std::array<int, max_vars>;

inline constexpr Weight trivial_weight{};

inline Weight weight_add(const Weight &a, const Weight &b)
{
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Weight weight_neg(const Weight &a)
{
    return {-a[0], -a[1], -a[2], -a[3]};
}

inline Weight weight_scale(const Weight &a, int s)
{
    return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

inline Weight unit_weight(std::size_t i, int power = 1)
{
    Weight w{};
    w[i] = power;
    return w;
}

// Print order: by L1 norm, then descending lexicographic ("2 - t3 - t3^-1").
struct WeightOrder {
    bool operator()(const Weight &a, const Weight &b) const
    {
        int na = 0, nb = 0;
        for (std::size_t i = 0; i < max_vars; ++i) {
            na += std::abs(a[i]);
            nb += std::abs(b[i]);
        }
        if (na != nb) {
            return na < nb;
        }
        return a > b;
    }
};

class KClass
{
public:
    using Terms = std::map<Weight, long, WeightOrder>;

    KClass() = default;

    static KClass constant(long n)
    {
        return character(trivial_weight, n);
    }
    static KClass character(const Weight &w, long mult = 1)
    {
        KClass k;
        k.add(w, mult);
        return k;
    }

    const Terms &terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    long multiplicity(const Weight &w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? 0 : it->second;
    }
    long trivial_multiplicity() const
    {
        return multiplicity(trivial_weight);
    }
    long rank() const
    {
        long r = 0;
        for (const auto &[w, m] : terms_) {
            r += m;
        }
        return r;
    }

    void add(const Weight &w, long mult)
    {
        if (mult == 0) {
            return;
        }
        auto it = terms_.try_emplace(w, 0).first;
        it->second += mult;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }

    KClass &operator+=(const KClass &o)
    {
        for (const auto &[w, m] : o.terms_) {
            add(w, m);
        }
        return *this;
    }
    KClass &operator-=(const KClass &o)
    {
        for (const auto &[w, m] : o.terms_) {
            add(w, -m);
        }
        return *this;
    }
    friend KClass operator+(KClass a, const KClass &b)
    {
        return a += b;
    }
    friend KClass operator-(KClass a, const KClass &b)
    {
        return a -= b;
    }
    KClass operator-() const
    {
        KClass r;
        for (const auto &[w, m] : terms_) {
            r.terms_.emplace(w, -m);
        }
        return r;
    }
    friend KClass operator*(const KClass &a, const KClass &b)
    {
        KClass r;
        for (const auto &[wa, ma] : a.terms_) {
            for (const auto &[wb, mb] : b.terms_) {
                r.add(weight_add(wa, wb), ma * mb);
            }
        }
        return r;
    }
    friend KClass operator*(long s, const KClass &a)
    {
        KClass r;
        for (const auto &[w, m] : a.terms_) {
            r.add(w, s * m);
        }
        return r;
    }
    KClass &operator*=(const KClass &o)
    {
        return *this = *this * o;
    }
    friend bool operator==(const KClass &, const KClass &) = default;

private:
    Terms terms_;
};

// Dual representation: t^w -> t^-w.
inline KClass conj(const KClass &k)
{
    KClass r;
    for (const auto &[w, m] : k.terms()) {
        r.add(weight_neg(w), m);
    }
    return r;
}

// Canonical representative modulo the Calabi-Yau relation t0 t1 t2 t3 = 1,
// eliminating t2. Classes written in t0, t1, t3 alone are already canonical.
inline KClass cy_reduce(const KClass &k)
{
    KClass r;
    for (const auto &[w, m] : k.terms()) {
        const int s = w[2];
        r.add({w[0] - s, w[1] - s, 0, w[3] - s}, m);
    }
    return r;
}

inline std::string to_string(const KClass &k)
{
    if (k.is_zero()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto &[w, m] : k.terms()) {
        const bool neg = m < 0;
        if (first) {
            if (neg) {
                s += '-';
            }
        } else {
            s += neg ? " - " : " + ";
        }
        first = false;
        const long mag = std::labs(m);
        std::string mono;
        for (std::size_t i = 0; i < max_vars; ++i) {
            if (w[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += '*';
            }
            mono += 't' + std::to_string(i);
            if (w[i] != 1) {
                mono += '^' + std::to_string(w[i]);
            }
        }
        if (mono.empty()) {
            s += std::to_string(mag);
        } else {
            if (mag != 1) {
                s += std::to_string(mag) + '*';
            }
            s += mono;
        }
    }
    return s;
}

inline KClass parse_kclass(std::string_view text)
{
    KClass k;
    for (const auto &t : detail::TermScanner(text, 't', true).parse()) {
        if (t.coeff.get_den() != 1 || !t.coeff.get_num().fits_slong_p()) {
            throw std::invalid_argument("K-class multiplicities must be machine integers: \"" + std::string(text) +
                                        "\"");
        }
        k.add(t.exps, t.coeff.get_num().get_si());
    }
    return k;
}

} // namespace cy4
