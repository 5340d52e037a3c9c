#pragma once

// JSON form of GV tables:
//   {"rank": r, "omega": [..], "n0": {"[b1,..,br]": "p/q"}, "n1": {..},
//    "p0": {..}, "meeting": {"[..]|[..]": "p/q"}}
// Values are "p/q" strings or JSON integers. Missing maps are empty; a
// missing "p0" means P_{0,beta} is generated from n1.

#include <cy4/series.hpp>

#include <json.hpp>

#include <string>

namespace cy4
{

using json = nlohmann::json;

class InputError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

inline Rational rational_from_json(const json &v)
{
    try {
        if (v.is_string()) {
            return parse_rational(v.get<std::string>());
        }
        if (v.is_number_integer()) {
            return Rational(Integer(std::to_string(v.get<long long>())));
        }
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    throw InputError("expected a rational (\"p/q\" string or integer), got " + v.dump());
}

inline CurveClass class_from_key(const std::string &key, std::size_t rank)
{
    const json arr = json::parse(key, nullptr, false);
    if (arr.is_discarded() || !arr.is_array() || arr.size() != rank) {
        throw InputError("bad class key \"" + key + "\" for rank " + std::to_string(rank));
    }
    CurveClass b;
    for (const auto &x : arr) {
        if (!x.is_number_integer() || x.get<long long>() < 0) {
            throw InputError("class key \"" + key + "\" must list nonnegative integers");
        }
        b.push_back(x.get<int>());
    }
    return b;
}

inline ClassMap classmap_from_json(const json &obj, std::size_t rank)
{
    if (!obj.is_object()) {
        throw InputError("expected an object of class -> value");
    }
    ClassMap m;
    for (const auto &[key, v] : obj.items()) {
        if (Rational r = rational_from_json(v); r != 0) {
            m[class_from_key(key, rank)] = r;
        }
    }
    return m;
}

inline json classmap_to_json(const ClassMap &m)
{
    json obj = json::object();
    for (const auto &[b, v] : m) {
        obj[to_string(b)] = to_string(v);
    }
    return obj;
}

inline MeetingMap meeting_from_json(const json &obj, std::size_t rank)
{
    if (!obj.is_object()) {
        throw InputError("\"meeting\" must be an object");
    }
    MeetingMap m;
    for (const auto &[key, v] : obj.items()) {
        const auto bar = key.find('|');
        if (bar == std::string::npos) {
            throw InputError("meeting key \"" + key + "\" must have the form [..]|[..]");
        }
        if (Rational r = rational_from_json(v); r != 0) {
            m[{class_from_key(key.substr(0, bar), rank), class_from_key(key.substr(bar + 1), rank)}] = r;
        }
    }
    return m;
}

inline json meeting_to_json(const MeetingMap &m)
{
    json obj = json::object();
    for (const auto &[pair, v] : m) {
        obj[to_string(pair.first) + "|" + to_string(pair.second)] = to_string(v);
    }
    return obj;
}

inline ClassLattice lattice_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("rank") || !j["rank"].is_number_integer()) {
        throw InputError("GV table needs an integer \"rank\"");
    }
    const auto rank = j["rank"].get<long long>();
    if (rank < 1) {
        throw InputError("\"rank\" must be positive");
    }
    std::vector<int> omega(static_cast<std::size_t>(rank), 1);
    if (j.contains("omega")) {
        const auto &w = j["omega"];
        if (!w.is_array() || w.size() != omega.size()) {
            throw InputError("\"omega\" must be an array of length rank");
        }
        for (std::size_t i = 0; i < omega.size(); ++i) {
            if (!w[i].is_number_integer() || w[i].get<long long>() <= 0) {
                throw InputError("\"omega\" entries must be positive integers");
            }
            omega[i] = w[i].get<int>();
        }
    }
    return ClassLattice(std::move(omega));
}

inline GVTable gvtable_from_json(const json &j)
{
    GVTable gv;
    gv.lattice = lattice_from_json(j);
    const std::size_t r = gv.lattice.rank();
    if (j.contains("n0")) {
        gv.n0 = classmap_from_json(j["n0"], r);
    }
    if (j.contains("n1")) {
        gv.n1 = classmap_from_json(j["n1"], r);
    }
    if (j.contains("p0")) {
        gv.p0 = classmap_from_json(j["p0"], r);
    }
    if (j.contains("meeting")) {
        gv.meeting = meeting_from_json(j["meeting"], r);
    }
    for (const auto &[b, v] : gv.n0) {
        if (b == gv.lattice.zero()) {
            throw InputError("n0 is not defined on the zero class");
        }
    }
    for (const auto &[b, v] : gv.n1) {
        if (b == gv.lattice.zero()) {
            throw InputError("n1 is not defined on the zero class");
        }
    }
    return gv;
}

inline json gvtable_to_json(const GVTable &gv)
{
    json j;
    j["rank"] = gv.lattice.rank();
    j["omega"] = gv.lattice.omega();
    j["n0"] = classmap_to_json(gv.n0);
    j["n1"] = classmap_to_json(gv.n1);
    if (gv.p0) {
        j["p0"] = classmap_to_json(*gv.p0);
    }
    j["meeting"] = meeting_to_json(gv.meeting);
    return j;
}

} // namespace cy4
