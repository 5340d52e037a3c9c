#pragma once

// Torus-fixed Joyce-Song pairs on local P^1 and their equivariant invariants.
//
// For X = Tot(O(-1) + O(-1) + O) the fixed pairs of class d[P^1] and Euler
// characteristic n = d(k+1) are indexed by weak compositions (d_0..d_k) of d;
// for d = 1 on any split Calabi-Yau geometry by (a, b) with a + b = n - 1.

#include <cy4/equivariant.hpp>
#include <cy4/factored.hpp>
#include <cy4/parallel.hpp>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace cy4
{

struct Composition {
    std::vector<int> parts;

    int k() const
    {
        return static_cast<int>(parts.size()) - 1;
    }
    int d() const
    {
        return std::accumulate(parts.begin(), parts.end(), 0);
    }
    friend bool operator==(const Composition &, const Composition &) = default;
};

struct D1FixedPoint {
    int a = 0;
    int b = 0;
    int n() const
    {
        return a + b + 1;
    }
    friend bool operator==(const D1FixedPoint &, const D1FixedPoint &) = default;
};

// Weak compositions of `total` into `parts` nonnegative parts, in reverse
// lexicographic order ((total,0,..), ..., (0,..,total)).
inline std::vector<Composition> weak_compositions(int total, int parts)
{
    std::vector<Composition> out;
    if (parts <= 0 || total < 0) {
        return out;
    }
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    auto rec = [&](auto &&self, std::size_t pos, int remaining) -> void {
        if (pos + 1 == cur.size()) {
            cur[pos] = remaining;
            out.push_back({cur});
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

// Fixed points of P^JS_n(X, d[P^1]) for the (-1,-1,0) geometry.
inline std::vector<Composition> enumerate_fixed_points(int n, int d)
{
    if (d <= 0) {
        throw std::invalid_argument("enumerate_fixed_points: d must be positive");
    }
    if (n < d || n % d != 0) {
        return {};
    }
    return weak_compositions(d, n / d);
}

inline std::vector<D1FixedPoint> enumerate_d1_fixed_points(int n)
{
    std::vector<D1FixedPoint> out;
    for (int a = n - 1; a >= 0; --a) {
        out.push_back({a, n - 1 - a});
    }
    return out;
}

// F = sum_i O(i Z0 + (k-i) Zinf) (x) (1 + t3^-1 + ... + t3^-(d_i-1)).
inline std::vector<EqLineBundleP1> fixed_point_sheaf(const Composition &c)
{
    std::vector<EqLineBundleP1> F;
    const int k = c.k();
    for (int i = 0; i <= k; ++i) {
        for (int j = 0; j < c.parts[static_cast<std::size_t>(i)]; ++j) {
            F.push_back({i, k - i, unit_weight(3, -j)});
        }
    }
    return F;
}

inline std::vector<EqLineBundleP1> fixed_point_sheaf(const D1FixedPoint &p)
{
    return {{p.a, p.b, trivial_weight}};
}

// chi_X(I, I)_0 = chi_X(F, F) - chi(F) - conj(chi(F)), assembled by adjunction.
inline KClass full_obstruction(const std::vector<EqLineBundleP1> &F, const SplitGeometry &geom)
{
    const KClass sections = chi_sections(F);
    return cy_reduce(chi_adjunction(F, geom) - sections - conj(sections));
}

// -sum_i chi(L_i) t_i - sum_{j=-b, j!=0}^{a} t0^j, with chi(L_i) = l_i + 1
// entering as a multiplicity.
inline KClass half_obstruction_d1(const D1FixedPoint &p, const SplitGeometry &geom)
{
    geom.validate();
    if (p.a < 0 || p.b < 0) {
        throw std::invalid_argument("half_obstruction_d1: a and b must be nonnegative");
    }
    KClass half;
    const auto l = geom.degrees();
    for (std::size_t i = 0; i < 3; ++i) {
        half.add(unit_weight(i + 1), -(l[i] + 1));
    }
    for (int j = -p.b; j <= p.a; ++j) {
        if (j != 0) {
            half.add(unit_weight(0, j), -1);
        }
    }
    return half;
}

// Same square root with chi(L_i) taken as the full t0-character of
// chi(O(l_i Zinf)); doubles to the adjunction class for every geometry.
inline KClass half_obstruction_d1_equivariant(const D1FixedPoint &p, const SplitGeometry &geom)
{
    geom.validate();
    const auto l = geom.degrees();
    KClass half = KClass::constant(1);
    for (std::size_t i = 0; i < 3; ++i) {
        half -= chi_p1_line(0, l[i]) * KClass::character(unit_weight(i + 1));
    }
    half -= chi_p1_line(p.a, p.b);
    return half;
}

// Square root of chi_X(I,I)_0 at the fixed point indexed by c:
//   -sum_i (sum_{j=-(k-i)}^{i} t0^j)(sum_{j<d_i} t3^-j)
//   + sum_{i<j} t0^(j-i) (1 - t3^d_i - t3^-d_j + t3^(d_i-d_j))
//   + sum_i (1 - t3^d_i).
inline KClass half_obstruction_general(const Composition &c)
{
    const int k = c.k();
    if (k < 0) {
        throw std::invalid_argument("half_obstruction_general: empty composition");
    }
    KClass half;
    for (int i = 0; i <= k; ++i) {
        const int di = c.parts[static_cast<std::size_t>(i)];
        for (int j0 = -(k - i); j0 <= i; ++j0) {
            for (int j3 = 0; j3 < di; ++j3) {
                half.add({j0, 0, 0, -j3}, -1);
            }
        }
        half.add(trivial_weight, 1);
        half.add(unit_weight(3, di), -1);
    }
    for (int i = 0; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            const int di = c.parts[static_cast<std::size_t>(i)], dj = c.parts[static_cast<std::size_t>(j)];
            half.add({j - i, 0, 0, 0}, 1);
            half.add({j - i, 0, 0, di}, -1);
            half.add({j - i, 0, 0, -dj}, -1);
            half.add({j - i, 0, 0, di - dj}, 1);
        }
    }
    return half;
}

// The square root above and the closed double product/sum differ, fixed point
// by fixed point, by (-1)^(number of zero parts). Contributions are weighted
// by this sign so that the enumerated sum carries the closed form's
// orientation; Orientation::half_class drops it.
inline int orientation_sign(const Composition &c)
{
    const auto zeros = std::count(c.parts.begin(), c.parts.end(), 0);
    return zeros % 2 == 0 ? 1 : -1;
}

enum class Orientation { closed_form, half_class };

struct InvariantResult {
    RatFun value;
    int n = 0;
    int d = 0;
    SplitGeometry geometry;
    std::size_t fixed_point_count = 0;
    // Per-fixed-point Euler classes, in enumeration order (when requested).
    std::vector<LinearProduct> contributions;
    double elapsed_ms = 0;
};

struct InvariantOptions {
    unsigned workers = 1;
    bool keep_contributions = false;
    Orientation orientation = Orientation::closed_form;
};

// Sum over fixed points of e_T(chi_X(I,I)^{1/2}_0).
inline InvariantResult js_invariant_enumerated(int n, int d, const SplitGeometry &geom = {},
                                               const InvariantOptions &opts = {})
{
    const auto start = std::chrono::steady_clock::now();
    geom.validate();
    InvariantResult res;
    res.n = n;
    res.d = d;
    res.geometry = geom;
    if (n == 0 && d == 0) {
        res.value = RatFun(Rational(1));
        return res;
    }
    if (d <= 0) {
        throw std::invalid_argument("js_invariant_enumerated: d must be positive");
    }
    if (d >= 2 && !geom.is_resolved_conifold_times_line()) {
        throw GeometryError("invariants with d >= 2 are only available for the (-1,-1,0) geometry");
    }
    std::vector<LinearProduct> contributions;
    if (n >= d && n % d == 0) {
        if (d == 1) {
            const auto points = enumerate_d1_fixed_points(n);
            contributions.resize(points.size());
            parallel_for(points.size(), opts.workers, [&](std::size_t i) {
                contributions[i] = euler_factored(half_obstruction_d1(points[i], geom));
            });
        } else {
            const auto points = enumerate_fixed_points(n, d);
            contributions.resize(points.size());
            parallel_for(points.size(), opts.workers, [&](std::size_t i) {
                contributions[i] = euler_factored(half_obstruction_general(points[i]));
                if (opts.orientation == Orientation::closed_form) {
                    contributions[i].mul_scalar(orientation_sign(points[i]));
                }
            });
        }
    }
    res.fixed_point_count = contributions.size();
    res.value = sum_factored(contributions, opts.workers);
    if (opts.keep_contributions) {
        res.contributions = std::move(contributions);
    }
    res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

// The closed double product/sum for n = d(k+1) on (-1,-1,0), evaluated with
// generic rational-function arithmetic (independent of the K-theory path).
inline InvariantResult js_invariant_closed_form(int n, int d)
{
    const auto start = std::chrono::steady_clock::now();
    if (d < 1 || n < d || n % d != 0) {
        throw std::invalid_argument("js_invariant_closed_form: need d >= 1, d | n and n >= d");
    }
    const int k = n / d - 1;
    const Poly l0 = Poly::variable(0), l3 = Poly::variable(3);
    auto lin = [&](long c0, long c3) { return l0 * Rational(c0) + l3 * Rational(c3); };

    RatFun sum;
    const auto comps = weak_compositions(d, k + 1);
    for (const auto &c : comps) {
        Poly num = Poly::constant(1), den = Poly::constant(1);
        Integer fact = 1;
        for (int di : c.parts) {
            fact *= factorial(static_cast<unsigned>(di));
        }
        den *= Rational(fact);
        for (int i = 0; i <= k; ++i) {
            for (int j = i + 1; j <= k; ++j) {
                num *= lin(j - i, c.parts[static_cast<std::size_t>(i)] - c.parts[static_cast<std::size_t>(j)]);
            }
        }
        for (int i = 0; i <= k; ++i) {
            for (int a = 1; a <= c.parts[static_cast<std::size_t>(i)]; ++a) {
                for (int b = 1; b <= k - i; ++b) {
                    den *= lin(b, a);
                }
                for (int b = 1; b <= i; ++b) {
                    den *= lin(-b, a);
                }
            }
        }
        sum += RatFun(std::move(num), std::move(den));
    }
    Integer superfact = 1;
    for (int j = 1; j <= k; ++j) {
        superfact *= factorial(static_cast<unsigned>(j));
    }
    const int sign = ((k + 1) * (d + 1)) % 2 == 0 ? 1 : -1;
    Poly prefactor_den = pow(l0, static_cast<unsigned>(k * (k + 1) / 2)) * pow(l3, static_cast<unsigned>(d));
    prefactor_den *= Rational(superfact);
    const RatFun prefactor(Poly::constant(sign), std::move(prefactor_den));

    InvariantResult res;
    res.n = n;
    res.d = d;
    res.fixed_point_count = comps.size();
    res.value = prefactor * sum;
    res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

// Predicted value: 1/(d! l3^d) when n = d, zero otherwise.
inline RatFun conjectured_value(int n, int d)
{
    if (n != d) {
        return RatFun::zero();
    }
    return RatFun(Poly::constant(1), pow(Poly::variable(3), static_cast<unsigned>(d)) * Rational(factorial(d)));
}

enum class ConjectureStatus { match, counterexample, not_applicable };

inline std::string to_string(ConjectureStatus s)
{
    switch (s) {
    case ConjectureStatus::match:
        return "match";
    case ConjectureStatus::counterexample:
        return "counterexample";
    case ConjectureStatus::not_applicable:
        break;
    }
    return "n/a";
}

struct ConjectureEntry {
    InvariantResult result;
    ConjectureStatus status = ConjectureStatus::not_applicable;
    // Global sign relating the value to the prediction; the invariants are
    // only defined up to the choice of orientation. 0 for counterexamples.
    int orientation_sign = 0;
};

inline ConjectureEntry check_conjecture(int n, int d, const InvariantOptions &opts = {})
{
    ConjectureEntry e{js_invariant_enumerated(n, d, SplitGeometry{}, opts)};
    const RatFun expected = conjectured_value(n, d);
    if (e.result.value == expected) {
        e.orientation_sign = 1;
    } else if (e.result.value == -expected) {
        e.orientation_sign = -1;
    }
    e.status = e.orientation_sign != 0 ? ConjectureStatus::match : ConjectureStatus::counterexample;
    return e;
}

struct ConjectureReport {
    std::vector<ConjectureEntry> entries;
    std::optional<std::size_t> first_counterexample;

    bool ok() const
    {
        return !first_counterexample.has_value();
    }
};

// All 1 <= d <= d_max, 1 <= n/d <= ratio_max, in (d, n) order. Each value is
// fully simplified; residues are never used here since poles may be multiple.
inline ConjectureReport verify_conjecture(int d_max, int ratio_max, const InvariantOptions &opts = {})
{
    if (d_max < 1 || ratio_max < 1) {
        throw std::invalid_argument("verify_conjecture: d_max and ratio_max must be >= 1");
    }
    ConjectureReport report;
    for (int d = 1; d <= d_max; ++d) {
        for (int r = 1; r <= ratio_max; ++r) {
            report.entries.push_back(check_conjecture(d * r, d, opts));
            if (!report.first_counterexample && report.entries.back().status == ConjectureStatus::counterexample) {
                report.first_counterexample = report.entries.size() - 1;
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// The n = 2d stratum: with l3 = 1,
//   Phi = sum_{d0+d1=d} (-1)^d1/(d0! d1!) (l0 + d0 - d1) /
//         ((l0 + d0)...(l0 + 1) l0 (l0 - 1)...(l0 - d1)),
// and P^JS_{2d,d} = Phi / l3^d after rehomogenizing.

inline RatFun phi_summand(int d0, int d1)
{
    const Poly l0 = Poly::variable(0), l3 = Poly::variable(3);
    Poly num = (l0 + l3 * Rational(d0 - d1)) * Rational(d1 % 2 == 0 ? 1 : -1);
    Poly den = Poly::constant(Rational(factorial(d0) * factorial(d1)));
    for (int a = 0; a <= d0; ++a) {
        den *= l0 + l3 * Rational(a);
    }
    for (int b = 1; b <= d1; ++b) {
        den *= l0 - l3 * Rational(b);
    }
    return RatFun(std::move(num), std::move(den));
}

// Residue of the d1 = i summand of Phi at l0 = m, from the hand-evaluated
// factorial expressions (m >= 0 directly; m < 0 by the l0 -> -l0 mirror).
inline Rational phi_summand_residue_closed_form(int d, int i, int m)
{
    if (m >= 0) {
        if (i < m) {
            return 0;
        }
        const Rational r = make_rational(Integer(m + d - 2 * i),
                                         factorial(d - i) * factorial(i) * factorial(i - m) * factorial(m + d - i));
        return m % 2 == 0 ? r : Rational(-r);
    }
    const int mp = -m;
    if (d - i < mp) {
        return 0;
    }
    const Rational r =
        make_rational(Integer(d - 2 * i - mp), factorial(d - i) * factorial(i) * factorial(d - i - mp) * factorial(mp + i));
    return mp % 2 == 0 ? r : Rational(-r);
}

// (-1)^m sum_j j / (((m+d-j)/2)! ((d-m+j)/2)! ((d-m-j)/2)! ((m+d+j)/2)!),
// j = m+d-2i running over i = m..d; vanishes by j -> -j antisymmetry.
inline Rational phi_residue_symmetric_form(int d, int m)
{
    Rational total = 0;
    for (int i = m; i <= d; ++i) {
        const int j = m + d - 2 * i;
        total += make_rational(Integer(j), factorial((m + d - j) / 2) * factorial((d - m + j) / 2) *
                                               factorial((d - m - j) / 2) * factorial((m + d + j) / 2));
    }
    return m % 2 == 0 ? total : Rational(-total);
}

struct ResidueEntry {
    int pole = 0;
    Rational residue;              // residue_at(Phi, m)
    Rational summand_residue_sum;  // sum of residue_at(summand, m)
    Rational closed_form_sum;      // sum of factorial expressions
    bool summands_match_closed_form = true;
};

struct ResidueReport {
    int d = 0;
    bool all_poles_simple = true;
    std::string pole_error;
    bool phi_identically_zero = false;
    bool symmetric_form_vanishes = true;
    std::vector<ResidueEntry> residues;

    bool ok() const
    {
        bool res_ok = true;
        for (const auto &r : residues) {
            res_ok = res_ok && r.residue == 0 && r.summand_residue_sum == 0 && r.closed_form_sum == 0 &&
                     r.summands_match_closed_form;
        }
        return all_poles_simple && phi_identically_zero && symmetric_form_vanishes && res_ok;
    }
};

inline ResidueReport residue_vanishing_check(int d)
{
    if (d < 1) {
        throw std::invalid_argument("residue_vanishing_check: d must be positive");
    }
    ResidueReport rep;
    rep.d = d;
    std::vector<RatFun> summands;
    RatFun phi;
    for (int d1 = 0; d1 <= d; ++d1) {
        summands.push_back(specialize(phi_summand(d - d1, d1), 3, Rational(1)));
        phi += summands.back();
    }
    rep.phi_identically_zero = phi.is_zero();
    for (int m = -d; m <= d; ++m) {
        ResidueEntry e;
        e.pole = m;
        try {
            e.residue = residue_at(phi, 0, m).num().constant_term();
            for (int d1 = 0; d1 <= d; ++d1) {
                const RatFun r = residue_at(summands[static_cast<std::size_t>(d1)], 0, m);
                if (!r.num().is_constant() || !r.den().is_constant()) {
                    throw std::logic_error("residue of univariate summand is not a constant");
                }
                const Rational rv = r.num().constant_term() / r.den().constant_term();
                const Rational cf = phi_summand_residue_closed_form(d, d1, m);
                e.summand_residue_sum += rv;
                e.closed_form_sum += cf;
                e.summands_match_closed_form = e.summands_match_closed_form && rv == cf;
            }
        } catch (const PoleOrderError &err) {
            rep.all_poles_simple = false;
            rep.pole_error = err.what();
        }
        if (m >= 0 && phi_residue_symmetric_form(d, m) != 0) {
            rep.symmetric_form_vanishes = false;
        }
        rep.residues.push_back(std::move(e));
    }
    return rep;
}

} // namespace cy4
