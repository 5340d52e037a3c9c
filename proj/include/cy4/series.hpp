#pragma once

// Truncated generating series over a curve-class lattice Z^r: stable pair
// invariants P^t_{n,beta} from genus 0/1 Gopakumar-Vafa type invariants,
// wall-crossing checks, MacMahon products and GV/GW conversions.
//
// Effective classes are the nonnegative vectors; deg(beta) = omega . beta.

#include <cy4/parallel.hpp>
#include <cy4/rational.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cy4
{

using CurveClass = std::vector<int>;
using ClassMap = std::map<CurveClass, Rational>;
using MeetingMap = std::map<std::pair<CurveClass, CurveClass>, Rational>;

inline std::string to_string(const CurveClass &b)
{
    std::string s = "[";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += std::to_string(b[i]);
    }
    return s + "]";
}

class ClassLattice
{
public:
    ClassLattice() : ClassLattice({1}) {}
    explicit ClassLattice(std::vector<int> omega) : omega_(std::move(omega))
    {
        if (omega_.empty()) {
            throw std::invalid_argument("lattice rank must be positive");
        }
        for (int w : omega_) {
            if (w <= 0) {
                throw std::invalid_argument("degree weights must be positive");
            }
        }
    }

    std::size_t rank() const
    {
        return omega_.size();
    }
    const std::vector<int> &omega() const
    {
        return omega_;
    }

    int degree(const CurveClass &b) const
    {
        check(b);
        return std::inner_product(b.begin(), b.end(), omega_.begin(), 0);
    }
    bool is_effective(const CurveClass &b) const
    {
        check(b);
        return std::all_of(b.begin(), b.end(), [](int x) { return x >= 0; });
    }
    CurveClass zero() const
    {
        return CurveClass(rank(), 0);
    }

    // Effective classes of degree <= max_degree (including 0), ordered by
    // degree and then lexicographically.
    std::vector<CurveClass> effective_classes(int max_degree) const
    {
        std::vector<CurveClass> out;
        CurveClass cur(rank(), 0);
        auto rec = [&](auto &&self, std::size_t pos, int budget) -> void {
            if (pos == rank()) {
                out.push_back(cur);
                return;
            }
            for (int v = 0; v * omega_[pos] <= budget; ++v) {
                cur[pos] = v;
                self(self, pos + 1, budget - v * omega_[pos]);
            }
            cur[pos] = 0;
        };
        if (max_degree >= 0) {
            rec(rec, 0, max_degree);
        }
        std::stable_sort(out.begin(), out.end(),
                         [&](const CurveClass &a, const CurveClass &b) { return key(a) < key(b); });
        return out;
    }

    // Nonzero effective beta' with beta - beta' effective and nonzero.
    std::vector<CurveClass> proper_subclasses(const CurveClass &b) const
    {
        std::vector<CurveClass> out;
        for (auto &c : effective_classes(degree(b))) {
            if (c != zero() && c != b && dominated(c, b)) {
                out.push_back(std::move(c));
            }
        }
        return out;
    }

    static bool dominated(const CurveClass &a, const CurveClass &b)
    {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > b[i]) {
                return false;
            }
        }
        return true;
    }

private:
    std::pair<int, CurveClass> key(const CurveClass &b) const
    {
        return {degree(b), b};
    }
    void check(const CurveClass &b) const
    {
        if (b.size() != rank()) {
            throw std::invalid_argument("curve class " + to_string(b) + " has wrong rank");
        }
    }

    std::vector<int> omega_;
};

inline CurveClass class_add(CurveClass a, const CurveClass &b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += b[i];
    }
    return a;
}

inline CurveClass class_sub(CurveClass a, const CurveClass &b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] -= b[i];
    }
    return a;
}

inline CurveClass class_scale(CurveClass a, int s)
{
    for (auto &x : a) {
        x *= s;
    }
    return a;
}

// beta / d if every component is divisible by d.
inline std::optional<CurveClass> class_divide(const CurveClass &b, int d)
{
    CurveClass q(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] % d != 0) {
            return std::nullopt;
        }
        q[i] = b[i] / d;
    }
    return q;
}

inline int class_content(const CurveClass &b)
{
    int g = 0;
    for (int x : b) {
        g = std::gcd(g, x);
    }
    return g;
}

inline Rational lookup(const ClassMap &m, const CurveClass &b)
{
    auto it = m.find(b);
    return it == m.end() ? Rational(0) : it->second;
}

struct GVTable {
    ClassLattice lattice;
    ClassMap n0;
    ClassMap n1;
    std::optional<ClassMap> p0;
    MeetingMap meeting;
};

struct Bounds {
    int N = 0;
    int D = 0;
};

// A stability parameter t, always on a definite side of any wall.
struct StabilityParameter {
    enum class Side { plus, minus, exact, zero_limit, infinity };

    Rational t{1};
    Side side = Side::exact;

    static StabilityParameter at(const Rational &t, Side side)
    {
        if (t <= 0) {
            throw std::invalid_argument("stability parameter must be positive");
        }
        return {t, side};
    }
    static StabilityParameter zero_limit()
    {
        return {Rational(0), Side::zero_limit};
    }
    static StabilityParameter infinity()
    {
        return {Rational(0), Side::infinity};
    }

    // Whether a class of this degree satisfies omega . beta > 1/t.
    bool admits(int degree) const
    {
        switch (side) {
        case Side::zero_limit:
            return false;
        case Side::infinity:
            return degree > 0;
        case Side::plus:
            return Rational(degree) * t >= 1;
        case Side::minus:
        case Side::exact:
            break;
        }
        return Rational(degree) * t > 1;
    }
};

class WallError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

inline std::string to_string(StabilityParameter::Side s)
{
    switch (s) {
    case StabilityParameter::Side::plus:
        return "+";
    case StabilityParameter::Side::minus:
        return "-";
    case StabilityParameter::Side::exact:
        return "exact";
    case StabilityParameter::Side::zero_limit:
        return "zero";
    case StabilityParameter::Side::infinity:
        break;
    }
    return "inf";
}

// ---------------------------------------------------------------------------
// Truncated series in y and q^beta.

class TruncatedSeries
{
public:
    using Key = std::pair<int, CurveClass>;

    TruncatedSeries(ClassLattice lattice, Bounds bounds) : lattice_(std::move(lattice)), bounds_(bounds) {}

    static TruncatedSeries one(const ClassLattice &lattice, Bounds bounds)
    {
        TruncatedSeries s(lattice, bounds);
        s.set(0, lattice.zero(), 1);
        return s;
    }

    const ClassLattice &lattice() const
    {
        return lattice_;
    }
    Bounds bounds() const
    {
        return bounds_;
    }
    const std::map<Key, Rational> &coefficients() const
    {
        return coeffs_;
    }
    bool in_bounds(int n, const CurveClass &b) const
    {
        return n >= 0 && n <= bounds_.N && lattice_.is_effective(b) && lattice_.degree(b) <= bounds_.D;
    }

    Rational coefficient(int n, const CurveClass &b) const
    {
        auto it = coeffs_.find({n, b});
        return it == coeffs_.end() ? Rational(0) : it->second;
    }
    // Values outside the bounds are discarded.
    void set(int n, const CurveClass &b, const Rational &c)
    {
        if (!in_bounds(n, b)) {
            return;
        }
        if (c == 0) {
            coeffs_.erase({n, b});
        } else {
            coeffs_[{n, b}] = c;
        }
    }

    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        TruncatedSeries r(a.lattice_, {std::min(a.bounds_.N, b.bounds_.N), std::min(a.bounds_.D, b.bounds_.D)});
        for (const auto &[ka, ca] : a.coeffs_) {
            for (const auto &[kb, cb] : b.coeffs_) {
                const int n = ka.first + kb.first;
                CurveClass beta = class_add(ka.second, kb.second);
                if (r.in_bounds(n, beta)) {
                    r.coeffs_[{n, std::move(beta)}] += ca * cb;
                }
            }
        }
        std::erase_if(r.coeffs_, [](const auto &kv) { return kv.second == 0; });
        return r;
    }
    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        return a.coeffs_ == b.coeffs_;
    }

private:
    ClassLattice lattice_;
    Bounds bounds_;
    std::map<Key, Rational> coeffs_;
};

// exp(c y q^beta)
inline TruncatedSeries exp_factor(const ClassLattice &lattice, Bounds bounds, const CurveClass &beta, const Rational &c)
{
    TruncatedSeries s = TruncatedSeries::one(lattice, bounds);
    Rational term = 1;
    for (int m = 1; m <= bounds.N; ++m) {
        term *= c / Rational(m);
        s.set(m, class_scale(beta, m), term);
    }
    return s;
}

// exp(G) for a q-series G without constant term, via deg(beta) F_beta =
// sum_{gamma + delta = beta} deg(gamma) G_gamma F_delta.
inline ClassMap exp_q_series(const ClassLattice &lattice, int D, const ClassMap &G)
{
    ClassMap F;
    for (const auto &beta : lattice.effective_classes(D)) {
        if (beta == lattice.zero()) {
            F[beta] = 1;
            continue;
        }
        Rational acc = 0;
        for (const auto &[gamma, g] : G) {
            if (gamma != lattice.zero() && ClassLattice::dominated(gamma, beta)) {
                acc += Rational(lattice.degree(gamma)) * g * lookup(F, class_sub(beta, gamma));
            }
        }
        acc /= Rational(lattice.degree(beta));
        if (acc != 0) {
            F[beta] = acc;
        }
    }
    return F;
}

// Coefficients of M(q) = prod_{k>=1} (1 - q^k)^(-k) through q^order, from
// j a_j = sum_{i=1}^{j} sigma_2(i) a_{j-i}.
inline std::vector<Integer> macmahon(int order)
{
    if (order < 0) {
        throw std::invalid_argument("macmahon: negative order");
    }
    std::vector<Integer> sigma2(static_cast<std::size_t>(order) + 1, 0);
    for (int k = 1; k <= order; ++k) {
        for (int m = k; m <= order; m += k) {
            sigma2[static_cast<std::size_t>(m)] += Integer(k) * k;
        }
    }
    std::vector<Integer> a(static_cast<std::size_t>(order) + 1, 0);
    a[0] = 1;
    for (int j = 1; j <= order; ++j) {
        Integer acc = 0;
        for (int i = 1; i <= j; ++i) {
            acc += sigma2[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j - i)];
        }
        a[static_cast<std::size_t>(j)] = acc / j;
    }
    return a;
}

// sum_beta P_{0,beta} q^beta = prod_beta M(q^beta)^{n1_beta}, using
// log M(q) = sum_{j>=1} (sigma_2(j)/j) q^j.
inline ClassMap p0_from_n1(const ClassLattice &lattice, int D, const ClassMap &n1)
{
    ClassMap log;
    for (const auto &[beta, c] : n1) {
        if (c == 0) {
            continue;
        }
        const int db = lattice.degree(beta);
        if (db <= 0) {
            throw std::invalid_argument("n1 keys must be nonzero effective classes");
        }
        for (int j = 1; j * db <= D; ++j) {
            Integer s2 = 0;
            for (int k = 1; k <= j; ++k) {
                if (j % k == 0) {
                    s2 += Integer(k) * k;
                }
            }
            log[class_scale(beta, j)] += c * make_rational(s2, Integer(j));
        }
    }
    std::erase_if(log, [](const auto &kv) { return kv.second == 0; });
    return exp_q_series(lattice, D, log);
}

inline ClassMap effective_p0(const GVTable &gv, int D)
{
    return gv.p0 ? *gv.p0 : p0_from_n1(gv.lattice, D, gv.n1);
}

// Rejects an exact parameter sitting on a wall of the given bounds.
inline void check_not_on_wall(const StabilityParameter &t, const ClassLattice &lattice, int D)
{
    if (t.side != StabilityParameter::Side::exact) {
        return;
    }
    for (const auto &b : lattice.effective_classes(D)) {
        if (b != lattice.zero() && Rational(lattice.degree(b)) * t.t == 1) {
            throw WallError("t = " + to_string(t.t) + " lies on a wall (deg " + std::to_string(lattice.degree(b)) +
                            "); pass a side");
        }
    }
}

// P^t_{n,beta} as the sum over ordered tuples beta_0 + beta_1 + ... + beta_n =
// beta with omega . beta_i > 1/t for i >= 1, of P_{0,beta_0} prod n_{0,beta_i}.
class PtCoefficients
{
public:
    PtCoefficients(const GVTable &gv, const StabilityParameter &t, int D)
        : gv_(gv), t_(t), D_(D), p0_(effective_p0(gv, D))
    {
        check_not_on_wall(t, gv.lattice, D);
        for (const auto &[b, c] : gv.n0) {
            if (c != 0 && b != gv.lattice.zero() && gv.lattice.is_effective(b) && t.admits(gv.lattice.degree(b))) {
                parts_.emplace_back(b, c);
            }
        }
    }

    Rational operator()(int n, const CurveClass &beta)
    {
        if (n < 0 || !gv_.lattice.is_effective(beta)) {
            return 0;
        }
        if (n == 0) {
            return lookup(p0_, beta);
        }
        const auto key = std::make_pair(n, beta);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        Rational acc = 0;
        for (const auto &[b1, c] : parts_) {
            if (ClassLattice::dominated(b1, beta)) {
                acc += c * (*this)(n - 1, class_sub(beta, b1));
            }
        }
        memo_.emplace(key, acc);
        return acc;
    }

private:
    const GVTable &gv_;
    StabilityParameter t_;
    int D_;
    ClassMap p0_;
    std::vector<std::pair<CurveClass, Rational>> parts_;
    std::map<std::pair<int, CurveClass>, Rational> memo_;
};

inline Rational pt_coeff_from_gv(const StabilityParameter &t, int n, const CurveClass &beta, const GVTable &gv)
{
    PtCoefficients P(gv, t, gv.lattice.degree(beta));
    return P(n, beta);
}

// sum_beta P_{0,beta} q^beta * prod_{omega.beta > 1/t} exp(y q^beta)^{n0_beta}.
inline TruncatedSeries pt_series_from_gv(const StabilityParameter &t, const GVTable &gv, Bounds bounds)
{
    check_not_on_wall(t, gv.lattice, bounds.D);
    TruncatedSeries s(gv.lattice, bounds);
    for (const auto &[b, c] : effective_p0(gv, bounds.D)) {
        s.set(0, b, c);
    }
    for (const auto &[b, c] : gv.n0) {
        if (c != 0 && b != gv.lattice.zero() && t.admits(gv.lattice.degree(b))) {
            s = s * exp_factor(gv.lattice, bounds, b, c);
        }
    }
    return s;
}

// prod_{omega.beta = deg} exp(y q^beta)^{n0_beta}
inline TruncatedSeries wall_factor(const GVTable &gv, int deg, Bounds bounds)
{
    TruncatedSeries s = TruncatedSeries::one(gv.lattice, bounds);
    for (const auto &[b, c] : gv.n0) {
        if (c != 0 && gv.lattice.degree(b) == deg) {
            s = s * exp_factor(gv.lattice, bounds, b, c);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Wall crossing at t0.

struct WallJumpEntry {
    int n = 0;
    CurveClass beta;
    Rational jump;            // P^{t0+} - P^{t0-}
    Rational expanded_rhs;    // coefficient identity of the product formula
    bool simple = false;      // all nonzero terms of expanded_rhs have k = 1
    Rational mspace_rhs;      // sum n P^{t0}_{n-1,beta'} n0_{beta''}
};

struct WallJumpReport {
    Rational t0;
    bool on_wall = false;        // 1/t0 is the degree of some class in bounds
    bool series_identity = true;  // PT^{t0+} = wall factor * PT^{t0-}
    std::vector<WallJumpEntry> entries;

    bool jumps_match() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const auto &e) { return e.jump == e.expanded_rhs; });
    }
    bool simple_walls_match() const
    {
        return std::all_of(entries.begin(), entries.end(),
                           [](const auto &e) { return !e.simple || e.mspace_rhs == e.expanded_rhs; });
    }
    bool ok() const
    {
        return series_identity && jumps_match() && simple_walls_match();
    }
};

// P^{t0} in the simple-wall formula is taken from the t0- chamber, which the
// simple-wall hypothesis identifies with it.
inline WallJumpReport wall_jump_check(const Rational &t0, const GVTable &gv, Bounds bounds, unsigned workers = 1)
{
    using Side = StabilityParameter::Side;
    if (t0 <= 0) {
        throw std::invalid_argument("wall_jump_check: t0 must be positive");
    }
    const auto &L = gv.lattice;
    WallJumpReport rep;
    rep.t0 = t0;
    const Rational wall_deg = Rational(1) / t0;
    const bool integral = wall_deg.get_den() == 1 && wall_deg.get_num().fits_sint_p();
    const int deg = integral ? static_cast<int>(wall_deg.get_num().get_si()) : -1;

    std::vector<std::pair<CurveClass, Rational>> wall_parts;
    for (const auto &b : L.effective_classes(bounds.D)) {
        if (b != L.zero() && L.degree(b) == deg) {
            rep.on_wall = true;
            if (Rational c = lookup(gv.n0, b); c != 0) {
                wall_parts.emplace_back(b, c);
            }
        }
    }

    const auto plus = StabilityParameter::at(t0, Side::plus), minus = StabilityParameter::at(t0, Side::minus);
    const TruncatedSeries s_minus = pt_series_from_gv(minus, gv, bounds);
    const TruncatedSeries rhs = (integral ? wall_factor(gv, deg, bounds) : TruncatedSeries::one(L, bounds)) * s_minus;

    std::vector<std::pair<int, CurveClass>> keys;
    for (int n = 0; n <= bounds.N; ++n) {
        for (const auto &b : L.effective_classes(bounds.D)) {
            keys.emplace_back(n, b);
        }
    }
    std::vector<WallJumpEntry> entries(keys.size());
    std::vector<char> series_ok(keys.size(), 1);
    parallel_for(keys.size(), workers, [&](std::size_t idx) {
        const auto &[n, beta] = keys[idx];
        PtCoefficients Pp(gv, plus, bounds.D), Pm(gv, minus, bounds.D);
        WallJumpEntry e;
        e.n = n;
        e.beta = beta;
        const Rational p_plus = Pp(n, beta);
        series_ok[idx] = p_plus == rhs.coefficient(n, beta) * Rational(factorial(static_cast<unsigned>(n)));
        e.jump = p_plus - Pm(n, beta);

        // Ordered k-tuples of wall classes summing to beta''.
        std::map<std::pair<int, CurveClass>, Rational> tuples;
        std::function<Rational(int, const CurveClass &)> g = [&](int k, const CurveClass &b) -> Rational {
            if (k == 0) {
                return b == L.zero() ? Rational(1) : Rational(0);
            }
            if (auto it = tuples.find({k, b}); it != tuples.end()) {
                return it->second;
            }
            Rational acc = 0;
            for (const auto &[w, c] : wall_parts) {
                if (ClassLattice::dominated(w, b)) {
                    acc += c * g(k - 1, class_sub(b, w));
                }
            }
            tuples.emplace(std::make_pair(k, b), acc);
            return acc;
        };
        bool higher = false;
        bool any = false;
        for (int k = 1; k <= n; ++k) {
            for (const auto &bpp : L.effective_classes(L.degree(beta))) {
                if (!ClassLattice::dominated(bpp, beta)) {
                    continue;
                }
                const Rational term = Pm(n - k, class_sub(beta, bpp)) * g(k, bpp);
                if (term != 0) {
                    any = true;
                    higher = higher || k > 1;
                    e.expanded_rhs += Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))) * term;
                }
            }
        }
        e.simple = any && !higher;
        if (n >= 1) {
            for (const auto &[w, c] : wall_parts) {
                if (ClassLattice::dominated(w, beta)) {
                    e.mspace_rhs += Rational(n) * Pm(n - 1, class_sub(beta, w)) * c;
                }
            }
        }
        entries[idx] = std::move(e);
    });
    rep.series_identity = std::all_of(series_ok.begin(), series_ok.end(), [](char c) { return c != 0; });
    for (auto &e : entries) {
        if (e.jump != 0 || e.expanded_rhs != 0 || e.mspace_rhs != 0) {
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

// PT^{t -> 0+} times the wall factors for deg = D, D-1, ..., 1 (walls in
// increasing t) equals PT^{t -> infinity} within the bounds.
inline bool telescoping_check(const GVTable &gv, Bounds bounds)
{
    TruncatedSeries s = pt_series_from_gv(StabilityParameter::zero_limit(), gv, bounds);
    for (int deg = bounds.D; deg >= 1; --deg) {
        s = wall_factor(gv, deg, bounds) * s;
    }
    return s == pt_series_from_gv(StabilityParameter::infinity(), gv, bounds);
}

// P^JS_{n,beta} = sum over ordered beta_1 + ... + beta_n = beta with every
// omega . beta_i = omega . beta / n of prod n_{0,beta_i}.
inline Rational js_chamber_from_gv(int n, const CurveClass &beta, const GVTable &gv)
{
    const auto &L = gv.lattice;
    if (n == 0) {
        return lookup(effective_p0(gv, L.degree(beta)), beta);
    }
    const int db = L.degree(beta);
    if (n < 0 || db % n != 0) {
        return 0;
    }
    const int part = db / n;
    std::function<Rational(int, const CurveClass &)> f = [&](int k, const CurveClass &b) -> Rational {
        if (k == 0) {
            return b == L.zero() ? Rational(1) : Rational(0);
        }
        Rational acc = 0;
        for (const auto &[w, c] : gv.n0) {
            if (c != 0 && L.degree(w) == part && ClassLattice::dominated(w, b)) {
                acc += c * f(k - 1, class_sub(b, w));
            }
        }
        return acc;
    };
    return f(n, beta);
}

// ---------------------------------------------------------------------------
// Chamber structure from minimal Euler characteristics n(beta).

using NMinTable = std::map<CurveClass, int>;

inline int nmin_at(const NMinTable &nmin, const CurveClass &b)
{
    auto it = nmin.find(b);
    if (it == nmin.end()) {
        throw std::out_of_range("n(beta) missing for class " + to_string(b));
    }
    return it->second;
}

// n/deg(beta) <= n(beta')/deg(beta') for every 0 < beta' < beta.
inline bool no_wall_predicate(const ClassLattice &L, const CurveClass &beta, int n, const NMinTable &nmin)
{
    const int db = L.degree(beta);
    for (const auto &b : L.proper_subclasses(beta)) {
        if (static_cast<long>(n) * L.degree(b) > static_cast<long>(nmin_at(nmin, b)) * db) {
            return false;
        }
    }
    return true;
}

// n''/deg(beta'') in (n/deg(beta), infinity) for 0 < beta'' < beta and
// n(beta'') <= n'' <= n - n(beta - beta''), sorted and deduplicated.
inline std::vector<Rational> wall_candidates(const ClassLattice &L, const CurveClass &beta, int n,
                                             const NMinTable &nmin)
{
    const Rational slope = make_rational(n, L.degree(beta));
    std::vector<Rational> out;
    for (const auto &b : L.proper_subclasses(beta)) {
        const int lo = nmin_at(nmin, b), hi = n - nmin_at(nmin, class_sub(beta, b));
        for (int npp = lo; npp <= hi; ++npp) {
            const Rational v = make_rational(npp, L.degree(b));
            if (v > slope) {
                out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Gromov-Witten / Gopakumar-Vafa conversions.

// GW_{0,beta} = sum_{d | beta} d^-2 n_{0,beta/d}
inline ClassMap gw0_from_gv(const ClassLattice &L, int D, const ClassMap &n0)
{
    ClassMap gw;
    for (const auto &beta : L.effective_classes(D)) {
        if (beta == L.zero()) {
            continue;
        }
        Rational acc = 0;
        for (int d = 1; d <= class_content(beta); ++d) {
            if (auto q = class_divide(beta, d)) {
                acc += lookup(n0, *q) / Rational(d * d);
            }
        }
        if (acc != 0) {
            gw[beta] = acc;
        }
    }
    return gw;
}

inline ClassMap gv0_from_gw(const ClassLattice &L, int D, const ClassMap &gw0)
{
    ClassMap n0;
    for (const auto &beta : L.effective_classes(D)) {
        if (beta == L.zero()) {
            continue;
        }
        Rational acc = lookup(gw0, beta);
        for (int d = 2; d <= class_content(beta); ++d) {
            if (auto q = class_divide(beta, d)) {
                acc -= lookup(n0, *q) / Rational(d * d);
            }
        }
        if (acc != 0) {
            n0[beta] = acc;
        }
    }
    return n0;
}

inline Integer sigma1(int d)
{
    Integer s = 0;
    for (int i = 1; i <= d; ++i) {
        if (d % i == 0) {
            s += i;
        }
    }
    return s;
}

namespace detail
{

// Genus-one terms not involving n1:
// -(1/24) sum_k n0c2_{beta/k}/k + (1/24) sum_k sum_{beta1+beta2=beta/k} m/k.
inline ClassMap gw1_correction(const ClassLattice &L, int D, const ClassMap &n0_c2, const MeetingMap &meeting)
{
    ClassMap out;
    const Rational inv24 = make_rational(1, 24);
    for (const auto &[b, c] : n0_c2) {
        const int db = L.degree(b);
        for (int k = 1; db > 0 && k * db <= D; ++k) {
            out[class_scale(b, k)] -= inv24 * c / Rational(k);
        }
    }
    for (const auto &[pair, m] : meeting) {
        const CurveClass b = class_add(pair.first, pair.second);
        const int db = L.degree(b);
        for (int k = 1; db > 0 && k * db <= D; ++k) {
            out[class_scale(b, k)] += inv24 * m / Rational(k);
        }
    }
    std::erase_if(out, [](const auto &kv) { return kv.second == 0; });
    return out;
}

} // namespace detail

inline ClassMap gw1_assemble(const ClassLattice &L, int D, const ClassMap &n1, const ClassMap &n0_c2,
                             const MeetingMap &meeting)
{
    ClassMap gw = detail::gw1_correction(L, D, n0_c2, meeting);
    for (const auto &[b, c] : n1) {
        const int db = L.degree(b);
        for (int d = 1; db > 0 && d * db <= D; ++d) {
            gw[class_scale(b, d)] += c * make_rational(sigma1(d), Integer(d));
        }
    }
    std::erase_if(gw, [](const auto &kv) { return kv.second == 0; });
    return gw;
}

inline ClassMap gw1_extract_n1(const ClassLattice &L, int D, const ClassMap &gw1, const ClassMap &n0_c2,
                               const MeetingMap &meeting)
{
    const ClassMap corr = detail::gw1_correction(L, D, n0_c2, meeting);
    ClassMap n1;
    for (const auto &beta : L.effective_classes(D)) {
        if (beta == L.zero()) {
            continue;
        }
        Rational acc = lookup(gw1, beta) - lookup(corr, beta);
        for (int d = 2; d <= class_content(beta); ++d) {
            if (auto q = class_divide(beta, d)) {
                acc -= lookup(n1, *q) * make_rational(sigma1(d), Integer(d));
            }
        }
        if (acc != 0) {
            n1[beta] = acc;
        }
    }
    return n1;
}

} // namespace cy4
