#pragma once

// cy4pairs command line: equivariant invariants of local P^1, conjecture
// sweeps, residue checks and wall-crossing series checks.
//
// Exit codes: 0 success, 1 mathematical mismatch or counterexample,
// 2 usage or malformed input, 3 internal error.

#include <cy4/cy4.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cy4::cli
{

enum ExitCode : int { ok = 0, mismatch = 1, usage = 2, internal = 3 };

namespace detail
{

inline json geometry_json(const SplitGeometry &g)
{
    return json::array({g.l1, g.l2, g.l3});
}

inline json report_json(const InvariantResult &r, const std::string &status, bool deterministic)
{
    json j;
    j["n"] = r.n;
    j["d"] = r.d;
    j["geometry"] = geometry_json(r.geometry);
    j["value"] = to_string(r.value);
    j["fixed_point_count"] = r.fixed_point_count;
    j["elapsed_ms"] = deterministic ? 0.0 : r.elapsed_ms;
    j["conjecture_status"] = status;
    return j;
}

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json_file(const std::string &path)
{
    const json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) {
        throw InputError(path + " is not valid JSON");
    }
    return j;
}

inline std::string trim(std::string s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
    }
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
    }
    return s.substr(i);
}

inline StabilityParameter::Side parse_side(const std::string &s)
{
    using Side = StabilityParameter::Side;
    if (s == "+" || s == "plus") {
        return Side::plus;
    }
    if (s == "-" || s == "minus") {
        return Side::minus;
    }
    if (s == "exact") {
        return Side::exact;
    }
    if (s == "zero" || s == "0+") {
        return Side::zero_limit;
    }
    if (s == "inf" || s == "infinity") {
        return Side::infinity;
    }
    throw InputError("unknown side \"" + s + "\" (use +, -, exact, zero, inf)");
}

inline int max_key_degree(const ClassLattice &L, const ClassMap &m)
{
    int D = 0;
    for (const auto &[b, v] : m) {
        D = std::max(D, L.degree(b));
    }
    return D;
}

} // namespace detail

struct JsOptions {
    int n = 1;
    int d = 1;
    int l1 = -1, l2 = -1, l3 = 0;
    std::string format = "text";
    std::string golden;
    bool closed_form = false;
    bool deterministic = false;
};

inline int cmd_js(const JsOptions &o, unsigned workers, std::ostream &out, std::ostream &err)
{
    const SplitGeometry geom{o.l1, o.l2, o.l3};
    InvariantResult r;
    if (o.closed_form) {
        if (!geom.is_resolved_conifold_times_line()) {
            err << "error: the closed form is only available for the (-1,-1,0) geometry\n";
            return usage;
        }
        if (o.d >= 1 && o.n >= o.d && o.n % o.d == 0) {
            r = js_invariant_closed_form(o.n, o.d);
        } else {
            r = js_invariant_enumerated(o.n, o.d, geom);
        }
    } else {
        r = js_invariant_enumerated(o.n, o.d, geom, {workers});
    }
    std::string status = "n/a";
    if (geom.is_resolved_conifold_times_line() && o.d >= 1) {
        const RatFun expected = conjectured_value(o.n, o.d);
        status = (r.value == expected || r.value == -expected) ? "match" : "counterexample";
    }
    const std::string text = to_string(r.value);
    if (o.format == "json") {
        out << detail::report_json(r, status, o.deterministic).dump() << "\n";
    } else {
        out << text << "\n";
    }
    if (!o.golden.empty()) {
        const std::string expected = detail::trim(detail::read_file(o.golden));
        RatFun golden;
        try {
            golden = parse_ratfun(expected);
        } catch (const std::invalid_argument &e) {
            throw InputError("golden file " + o.golden + ": " + e.what());
        }
        if (expected != text || golden != r.value) {
            err << "golden mismatch: expected " << expected << ", got " << text << "\n";
            return mismatch;
        }
    }
    return status == "counterexample" ? mismatch : ok;
}

struct VerifyOptions {
    int d_max = 1;
    int ratio_max = 1;
    std::string checkpoint;
    bool deterministic = false;
};

inline int cmd_verify(const VerifyOptions &o, unsigned workers, std::ostream &out, std::ostream &)
{
    if (o.d_max < 1 || o.ratio_max < 1) {
        throw InputError("--d-max and --ratio-max must be at least 1");
    }
    std::map<std::pair<int, int>, json> done;
    if (!o.checkpoint.empty()) {
        std::ifstream in(o.checkpoint);
        std::string line;
        while (std::getline(in, line)) {
            const json j = json::parse(line, nullptr, false);
            if (!j.is_discarded() && j.contains("n") && j.contains("d")) {
                done[{j["n"].get<int>(), j["d"].get<int>()}] = j;
            }
        }
    }
    std::vector<std::pair<int, int>> tasks;
    for (int d = 1; d <= o.d_max; ++d) {
        for (int r = 1; r <= o.ratio_max; ++r) {
            tasks.emplace_back(d * r, d);
        }
    }
    std::vector<json> results(tasks.size());
    std::mutex io;
    std::ofstream ckpt;
    if (!o.checkpoint.empty()) {
        ckpt.open(o.checkpoint, std::ios::app);
        if (!ckpt) {
            throw InputError("cannot open checkpoint " + o.checkpoint);
        }
    }
    parallel_for(tasks.size(), workers, [&](std::size_t i) {
        const auto [n, d] = tasks[i];
        if (auto it = done.find({n, d}); it != done.end()) {
            results[i] = it->second;
            return;
        }
        const ConjectureEntry e = check_conjecture(n, d);
        json j = detail::report_json(e.result, to_string(e.status), o.deterministic);
        j["orientation_sign"] = e.orientation_sign;
        if (ckpt.is_open()) {
            std::lock_guard lock(io);
            ckpt << j.dump() << "\n" << std::flush;
        }
        results[i] = std::move(j);
    });
    bool counterexample = false;
    for (auto &j : results) {
        if (o.deterministic) {
            j["elapsed_ms"] = 0.0;
        }
        counterexample = counterexample || j["conjecture_status"] != "match";
        out << j.dump() << "\n";
    }
    return counterexample ? mismatch : ok;
}

inline int cmd_residue(int d_max, std::ostream &out)
{
    if (d_max < 1) {
        throw InputError("--d-max must be at least 1");
    }
    bool all = true;
    for (int d = 1; d <= d_max; ++d) {
        const ResidueReport rep = residue_vanishing_check(d);
        json j;
        j["d"] = d;
        j["poles_simple"] = rep.all_poles_simple;
        j["phi_identically_zero"] = rep.phi_identically_zero;
        j["symmetric_form_vanishes"] = rep.symmetric_form_vanishes;
        json res = json::array();
        for (const auto &e : rep.residues) {
            res.push_back({{"pole", e.pole},
                           {"residue", to_string(e.residue)},
                           {"closed_form", to_string(e.closed_form_sum)},
                           {"summands_match_closed_form", e.summands_match_closed_form}});
        }
        j["residues"] = res;
        j["ok"] = rep.ok();
        if (!rep.pole_error.empty()) {
            j["pole_error"] = rep.pole_error;
        }
        all = all && rep.ok();
        out << j.dump() << "\n";
    }
    return all ? ok : mismatch;
}

struct SeriesOptions {
    std::string sub;
    std::string gv_file;
    int N = 2;
    int D = -1;
    std::string t = "1";
    std::string side = "+";
};

inline int cmd_series(const SeriesOptions &o, unsigned workers, std::ostream &out)
{
    const json input = detail::read_json_file(o.gv_file);
    if (o.sub == "gvinvert") {
        const ClassLattice L = lattice_from_json(input);
        const ClassMap gw0 = input.contains("gw0") ? classmap_from_json(input["gw0"], L.rank()) : ClassMap{};
        const ClassMap gw1 = input.contains("gw1") ? classmap_from_json(input["gw1"], L.rank()) : ClassMap{};
        const ClassMap c2 = input.contains("n0_c2") ? classmap_from_json(input["n0_c2"], L.rank()) : ClassMap{};
        const MeetingMap m = input.contains("meeting") ? meeting_from_json(input["meeting"], L.rank()) : MeetingMap{};
        const int D = o.D >= 0 ? o.D : std::max(detail::max_key_degree(L, gw0), detail::max_key_degree(L, gw1));
        json j;
        j["D"] = D;
        j["n0"] = classmap_to_json(gv0_from_gw(L, D, gw0));
        if (input.contains("gw1")) {
            j["n1"] = classmap_to_json(gw1_extract_n1(L, D, gw1, c2, m));
        }
        out << j.dump() << "\n";
        return ok;
    }

    const GVTable gv = gvtable_from_json(input);
    int D = o.D;
    if (D < 0) {
        D = std::max({detail::max_key_degree(gv.lattice, gv.n0), detail::max_key_degree(gv.lattice, gv.n1),
                      gv.p0 ? detail::max_key_degree(gv.lattice, *gv.p0) : 0});
    }
    if (o.N < 0) {
        throw InputError("--N must be nonnegative");
    }
    const Bounds bounds{o.N, D};
    Rational t;
    try {
        t = parse_rational(o.t);
    } catch (const std::invalid_argument &e) {
        throw InputError(std::string("--t: ") + e.what());
    }

    if (o.sub == "pt") {
        const auto side = detail::parse_side(o.side);
        StabilityParameter param;
        if (side == StabilityParameter::Side::zero_limit) {
            param = StabilityParameter::zero_limit();
        } else if (side == StabilityParameter::Side::infinity) {
            param = StabilityParameter::infinity();
        } else {
            if (t <= 0) {
                throw InputError("--t must be positive");
            }
            param = StabilityParameter::at(t, side);
        }
        const TruncatedSeries series = pt_series_from_gv(param, gv, bounds);
        std::vector<std::pair<int, CurveClass>> keys;
        for (int n = 0; n <= bounds.N; ++n) {
            for (const auto &b : gv.lattice.effective_classes(bounds.D)) {
                keys.emplace_back(n, b);
            }
        }
        std::vector<Rational> values(keys.size());
        parallel_for(keys.size(), workers, [&](std::size_t i) {
            PtCoefficients P(gv, param, bounds.D);
            values[i] = P(keys[i].first, keys[i].second);
        });
        bool agree = true;
        json coeffs = json::array();
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const auto &[n, b] = keys[i];
            const Rational from_series = series.coefficient(n, b) * Rational(factorial(static_cast<unsigned>(n)));
            const bool same = from_series == values[i];
            agree = agree && same;
            if (values[i] == 0 && same) {
                continue;
            }
            coeffs.push_back({{"n", n},
                              {"beta", b},
                              {"value", to_string(values[i])},
                              {"provenance", "ordered-tuple sum"},
                              {"product_expansion", to_string(from_series)},
                              {"paths_agree", same}});
        }
        json j;
        j["t"] = (side == StabilityParameter::Side::zero_limit || side == StabilityParameter::Side::infinity)
                     ? json(nullptr)
                     : json(to_string(t));
        j["side"] = to_string(side);
        j["N"] = bounds.N;
        j["D"] = bounds.D;
        j["p0_source"] = gv.p0 ? "given" : "MacMahon product of n1";
        j["coefficients"] = coeffs;
        out << j.dump() << "\n";
        return agree ? ok : mismatch;
    }

    if (o.sub == "wallcheck") {
        if (t <= 0) {
            throw InputError("--t must be positive");
        }
        const WallJumpReport rep = wall_jump_check(t, gv, bounds, workers);
        json entries = json::array();
        for (const auto &e : rep.entries) {
            json je{{"n", e.n},
                    {"beta", e.beta},
                    {"jump", to_string(e.jump)},
                    {"expanded_rhs", to_string(e.expanded_rhs)},
                    {"simple", e.simple}};
            if (e.simple) {
                je["mspace_rhs"] = to_string(e.mspace_rhs);
            }
            entries.push_back(std::move(je));
        }
        json j;
        j["t0"] = to_string(rep.t0);
        j["on_wall"] = rep.on_wall;
        j["series_identity"] = rep.series_identity;
        j["jumps_match"] = rep.jumps_match();
        j["simple_walls_match"] = rep.simple_walls_match();
        j["telescoping"] = telescoping_check(gv, bounds);
        j["entries"] = entries;
        out << j.dump() << "\n";
        return rep.ok() && j["telescoping"].get<bool>() ? ok : mismatch;
    }
    throw InputError("unknown series subcommand \"" + o.sub + "\"");
}

// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Equivariant Joyce-Song pair invariants of local P^1 and wall-crossing series", "cy4pairs"};
    app.require_subcommand(1);
    unsigned jobs = default_workers();
    app.add_option("-j,--jobs", jobs, "Worker threads (default: $CY4_JOBS or hardware concurrency)")
        ->check(CLI::PositiveNumber);

    JsOptions js;
    auto *js_cmd = app.add_subcommand("js", "Compute P^JS_{n,d}");
    js_cmd->add_option("--n", js.n, "Euler characteristic")->required();
    js_cmd->add_option("--d", js.d, "Curve degree")->required();
    js_cmd->add_option("--l1", js.l1, "Degree of L1");
    js_cmd->add_option("--l2", js.l2, "Degree of L2");
    js_cmd->add_option("--l3", js.l3, "Degree of L3");
    js_cmd->add_option("--format", js.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    js_cmd->add_option("--golden", js.golden, "Compare the printed value with this file");
    js_cmd->add_flag("--closed-form", js.closed_form, "Evaluate the closed double sum instead of enumerating");
    js_cmd->add_flag("--deterministic", js.deterministic, "Report elapsed_ms as 0");

    VerifyOptions verify;
    auto *verify_cmd = app.add_subcommand("verify", "Check P^JS_{n,d} against the predicted values");
    verify_cmd->add_option("--d-max", verify.d_max)->required();
    verify_cmd->add_option("--ratio-max", verify.ratio_max)->required();
    verify_cmd->add_option("--checkpoint", verify.checkpoint, "Append-only JSON-lines file for resuming");
    verify_cmd->add_flag("--deterministic", verify.deterministic, "Report elapsed_ms as 0");

    int residue_d_max = 1;
    auto *residue_cmd = app.add_subcommand("residue", "Residue vanishing for the n = 2d family");
    residue_cmd->add_option("--d-max", residue_d_max)->required();

    SeriesOptions series;
    auto *series_cmd = app.add_subcommand("series", "Wall-crossing series from GV type invariants");
    series_cmd->add_option("subcommand", series.sub, "pt, wallcheck or gvinvert")
        ->required()
        ->check(CLI::IsMember({"pt", "wallcheck", "gvinvert"}));
    series_cmd->add_option("--gv-file", series.gv_file, "GV table JSON")->required();
    series_cmd->add_option("--N", series.N, "Truncation in n");
    series_cmd->add_option("--D", series.D, "Truncation in degree (default: largest key degree)");
    series_cmd->add_option("--t", series.t, "Stability parameter p/q");
    series_cmd->add_option("--side", series.side, "+, -, exact, zero or inf");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*js_cmd) {
            return cmd_js(js, jobs, out, err);
        }
        if (*verify_cmd) {
            return cmd_verify(verify, jobs, out, err);
        }
        if (*residue_cmd) {
            return cmd_residue(residue_d_max, out);
        }
        return cmd_series(series, jobs, out);
    } catch (const EulerClassError &e) {
        err << "internal error: " << e.what() << "\n";
        return internal;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return internal;
    }
}

} // namespace cy4::cli
