#pragma once

// Equivariant K-theory on the zero section P^1 of Tot(L1 + L2 + L3):
// Riemann-Roch characters, the adjunction formula for chi_X(i_*F, i_*F),
// Euler classes and square-root checks.

#include <cy4/factored.hpp>
#include <cy4/kclass.hpp>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace cy4
{

class GeometryError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an Euler class is requested for a class with a surviving
// trivial weight; in localization sums this always indicates an assembly bug.
class EulerClassError : public std::domain_error
{
public:
    explicit EulerClassError(long trivial_mult)
        : std::domain_error("Euler class undefined: trivial weight has net multiplicity " +
                            std::to_string(trivial_mult)),
          mult_(trivial_mult)
    {
    }
    long trivial_multiplicity() const
    {
        return mult_;
    }

private:
    long mult_;
};

// Degrees of L1, L2, L3 on P^1; Calabi-Yau iff they sum to -2.
struct SplitGeometry {
    int l1 = -1;
    int l2 = -1;
    int l3 = 0;

    bool is_calabi_yau() const
    {
        return l1 + l2 + l3 == -2;
    }
    void validate() const
    {
        if (!is_calabi_yau()) {
            throw GeometryError("geometry (" + std::to_string(l1) + "," + std::to_string(l2) + "," +
                                std::to_string(l3) + ") violates l1 + l2 + l3 = -2");
        }
    }
    bool is_resolved_conifold_times_line() const
    {
        return l1 == -1 && l2 == -1 && l3 == 0;
    }
    std::array<int, 3> degrees() const
    {
        return {l1, l2, l3};
    }
    friend bool operator==(const SplitGeometry &, const SplitGeometry &) = default;
};

inline std::string to_string(const SplitGeometry &g)
{
    return "(" + std::to_string(g.l1) + "," + std::to_string(g.l2) + "," + std::to_string(g.l3) + ")";
}

// O_{P^1}(a Z0 + b Zinf) twisted by an extra torus character.
struct EqLineBundleP1 {
    int a = 0;
    int b = 0;
    Weight twist{};

    int degree() const
    {
        return a + b;
    }
    friend EqLineBundleP1 operator*(const EqLineBundleP1 &x, const EqLineBundleP1 &y)
    {
        return {x.a + y.a, x.b + y.b, weight_add(x.twist, y.twist)};
    }
    EqLineBundleP1 dual() const
    {
        return {-a, -b, weight_neg(twist)};
    }
};

// chi(P^1, O(a Z0 + b Zinf)) as a character of the t0-action.
inline KClass chi_p1_line(int a, int b)
{
    KClass k;
    if (a + b >= 0) {
        for (int j = -b; j <= a; ++j) {
            k.add(unit_weight(0, j), 1);
        }
    } else {
        for (int j = a + 1; j <= -b - 1; ++j) {
            k.add(unit_weight(0, j), -1);
        }
    }
    return k;
}

inline KClass chi_p1_line(const EqLineBundleP1 &l)
{
    return chi_p1_line(l.a, l.b) * KClass::character(l.twist);
}

// chi_{P^1}(A, B) = chi(A^dual (x) B).
inline KClass chi_p1_pair(const EqLineBundleP1 &A, const EqLineBundleP1 &B)
{
    return chi_p1_line(A.dual() * B);
}

using NormalWeights = std::array<Weight, 3>;

inline NormalWeights standard_normal_weights()
{
    return {unit_weight(1), unit_weight(2), unit_weight(3)};
}

// Summands of Lambda^p N for N = sum_i O(l_i Zinf) (x) t_i, p = 0..3.
inline std::array<std::vector<EqLineBundleP1>, 4> exterior_powers_normal(const SplitGeometry &geom,
                                                                        const NormalWeights &weights)
{
    const auto l = geom.degrees();
    std::array<EqLineBundleP1, 3> n;
    for (std::size_t i = 0; i < 3; ++i) {
        n[i] = {0, l[i], weights[i]};
    }
    std::array<std::vector<EqLineBundleP1>, 4> out;
    out[0].push_back({});
    for (std::size_t i = 0; i < 3; ++i) {
        out[1].push_back(n[i]);
        for (std::size_t j = i + 1; j < 3; ++j) {
            out[2].push_back(n[i] * n[j]);
        }
    }
    out[3].push_back(n[0] * n[1] * n[2]);
    return out;
}

// chi_X(i_*F, i_*F) = sum_p (-1)^p chi_{P^1}(F, F (x) Lambda^p N), expanded
// bilinearly over the summands of F and reduced modulo t0 t1 t2 t3 = 1.
inline KClass chi_adjunction(const std::vector<EqLineBundleP1> &F, const SplitGeometry &geom,
                             const NormalWeights &weights = standard_normal_weights())
{
    if (F.empty()) {
        throw std::invalid_argument("chi_adjunction: empty sheaf");
    }
    geom.validate();
    const auto wedge = exterior_powers_normal(geom, weights);
    KClass total;
    for (const auto &A : F) {
        for (const auto &B : F) {
            for (std::size_t p = 0; p < 4; ++p) {
                for (const auto &w : wedge[p]) {
                    const KClass c = chi_p1_pair(A, B * w);
                    if (p % 2 == 0) {
                        total += c;
                    } else {
                        total -= c;
                    }
                }
            }
        }
    }
    return cy_reduce(total);
}

// chi_X(O_X, i_*F) = chi_{P^1}(F).
inline KClass chi_sections(const std::vector<EqLineBundleP1> &F)
{
    KClass total;
    for (const auto &L : F) {
        total += chi_p1_line(L);
    }
    return total;
}

// Product over weights w of (w . lambda)^mult, kept factored.
inline LinearProduct euler_factored(const KClass &c)
{
    if (const long t = c.trivial_multiplicity(); t != 0) {
        throw EulerClassError(t);
    }
    LinearProduct p;
    for (const auto &[w, m] : c.terms()) {
        p.mul_form(w, static_cast<int>(m));
    }
    return p;
}

inline RatFun euler_class(const KClass &c)
{
    return euler_factored(c).to_ratfun();
}

// full == half + conj(half) modulo the Calabi-Yau relation.
inline bool check_square_root(const KClass &full, const KClass &half)
{
    return cy_reduce(full) == cy_reduce(half + conj(half));
}

} // namespace cy4
