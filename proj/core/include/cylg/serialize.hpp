#pragma once

#include <string>

#include "json.hpp"
#include "cylg/multipoly.hpp"
#include "cylg/power_series.hpp"
#include "cylg/qext.hpp"

namespace cylg {

using nlohmann::json;

// Rat <-> ["num","den"] with decimal strings (exact at any size).
inline json rat_to_json(const Rat& r) {
    return json::array({r.get_num().get_str(), r.get_den().get_str()});
}

inline Rat rat_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("rat_from_json: expected [num,den]");
    Rat r(mpz_class(j[0].get<std::string>()), mpz_class(j[1].get<std::string>()));
    r.canonicalize();
    return r;
}

// QExt <-> array of four [num,den] pairs, ordered (1, sqrt2, i, i*sqrt2).
inline json qext_to_json(const QExt& x) {
    return json::array({rat_to_json(x.a), rat_to_json(x.b), rat_to_json(x.c), rat_to_json(x.d)});
}

inline QExt qext_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument("qext_from_json: expected 4 coords");
    return QExt(rat_from_json(j[0]), rat_from_json(j[1]), rat_from_json(j[2]), rat_from_json(j[3]));
}

// PowerSeries<QExt> <-> array of [exp-num, exp-den, QExt] triples plus order.
inline json ps_to_json(const PowerSeries<QExt>& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.uterms()) {
        std::int64_t num = e, den = s.den();
        if (den == 2 && num % 2 == 0) { num /= 2; den = 1; }
        terms.push_back(json::array({num, den, qext_to_json(c)}));
    }
    return json{{"terms", terms}, {"qorder_num", s.ulimit()}, {"qorder_den", s.den()}};
}

inline PowerSeries<QExt> ps_from_json(const json& j) {
    std::int64_t un = j.at("qorder_num").get<std::int64_t>();
    int den = j.at("qorder_den").get<int>();
    PowerSeries<QExt> s(un / den, den);
    for (const auto& t : j.at("terms")) {
        std::int64_t num = t[0].get<std::int64_t>();
        int d2 = t[1].get<int>();
        s.set_q(num, d2, qext_from_json(t[2]));
    }
    return s;
}

// MultiPoly over QExt or over PowerSeries<QExt>, with explicit variable names.
inline json mp_to_json(const MultiPoly<QExt>& p, const std::vector<std::string>& vars) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back(json{{"exps", e}, {"coeff", qext_to_json(c)}});
    return json{{"vars", vars}, {"terms", terms}};
}

inline json mp_to_json(const MultiPoly<PowerSeries<QExt>>& p, const std::vector<std::string>& vars) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back(json{{"exps", e}, {"coeff", ps_to_json(c)}});
    return json{{"vars", vars}, {"terms", terms}};
}

}  // namespace cylg
