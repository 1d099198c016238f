#pragma once

// JSON and text rendering of analysis results. Rationals are written as
// {"num": "...", "den": "..."} decimal strings.

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbicert/certify.hpp"
#include "orbicert/coset_enum.hpp"
#include "orbicert/orbicomplex.hpp"
#include "orbicert/presentation.hpp"
#include "orbicert/types.hpp"

namespace orbicert {

inline constexpr char const* version = "0.1.0";

using json = nlohmann::json;

inline json to_json(Rational const& q) {
    return {{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

inline json to_json(std::optional<Integer> const& k) {
    return k ? json(k->str()) : json(nullptr);
}

inline json to_json(RouteOutcome const& r) {
    json j = {{"method", to_string(r.method)}, {"status", to_string(r.status)}};
    // null order means infinite order in the abelianization
    j["order"] = r.order ? json(r.order->str()) : json("INFINITE");
    return j;
}

inline json to_json(OrderVerdict const& v) {
    json routes = json::array();
    for (auto const& r : v.routes) {
        routes.push_back(to_json(r));
    }
    return {{"relator", v.relator + 1},
            {"claimed", v.claimed},
            {"status", to_string(v.status)},
            {"method", v.method ? json(to_string(*v.method)) : json(nullptr)},
            {"actual", to_json(v.actual)},
            {"routes", routes},
            {"routes_agree", v.routes_agree}};
}

inline json to_json(Conclusion const& c) {
    json j = {{"kind", to_string(c.kind)}};
    switch (c.kind) {
        case ConclusionKind::betti1_lower_bound:
            j["value"] = to_json(*c.value);
            break;
        case ConclusionKind::finite_bound_ok:
            j["value"] = {{"order", c.order->str()}, {"bound", c.value->str()}};
            break;
        case ConclusionKind::violation:
            j["detail"] = c.detail;
            break;
        default:
            break;
    }
    return j;
}

inline json to_json(EulerReport const& e) {
    return {{"betti", {e.betti.b0, e.betti.b1, e.betti.b2}},
            {"group_order", e.group_order},
            {"chi_orb", to_json(e.chi_orb)},
            {"lhs", to_json(e.lhs)},
            {"identity_holds", e.identity_holds},
            {"b1_vanishes", e.b1_vanishes},
            {"b2_predicted", e.b2_predicted.str()},
            {"b2_matches", e.b2_matches},
            {"cycle_space_dim", e.cycle_space_dim}};
}

inline json to_json(Certificate const& c) {
    json verdicts = json::array();
    for (auto const& v : c.order_verdicts) {
        verdicts.push_back(to_json(v));
    }
    json conclusions = json::array();
    for (auto const& k : c.conclusions) {
        conclusions.push_back(to_json(k));
    }
    json diag = json::array();
    for (auto const& k : c.abelianization.smith_diagonal) {
        diag.push_back(k.str());
    }
    return {{"presentation", c.presentation},
            {"d", c.d},
            {"r", c.r},
            {"sum_inv_m", to_json(c.sum_inv_m)},
            {"chi_orb", to_json(c.chi_orb)},
            {"order_verdicts", verdicts},
            {"group_size", c.group_size ? json(c.group_size->str()) : json("UNKNOWN")},
            {"conclusions", conclusions},
            {"abelianization",
             {{"smith_diagonal", diag},
              {"free_rank", c.abelianization.free_rank},
              {"infinite", c.abelianization.infinite()},
              {"note", "independent cross-check; not used for conclusions"}}},
            {"warnings", c.warnings}};
}

inline json to_json(CosetTable const& t, std::vector<std::string> const& names) {
    json columns = json::array();
    for (auto const& n : names) {
        columns.push_back(n);
        columns.push_back(n + "^-1");
    }
    json rows = json::array();
    std::size_t cols = 2 * t.generator_count();
    for (std::size_t c = 0; c < t.size(); ++c) {
        json row = json::array();
        for (std::size_t x = 0; x < cols; ++x) {
            row.push_back(t.entries()[c * cols + x]);
        }
        rows.push_back(std::move(row));
    }
    return {{"columns", columns}, {"rows", rows}};
}

// Approximate decimal rendering, for display only.
inline std::string approximate(Rational const& q) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", q.convert_to<double>());
    return buf;
}

inline std::string describe(Conclusion const& c) {
    std::string s = to_string(c.kind);
    if (c.kind == ConclusionKind::finite_bound_ok) {
        s += " (|G| = " + c.order->str() + " >= " + c.value->str() + ")";
    } else if (c.kind == ConclusionKind::betti1_lower_bound) {
        s += " (beta2_1(G) >= " + to_string(*c.value) + ")";
    } else if (c.kind == ConclusionKind::violation) {
        s += " (" + c.detail + ")";
    }
    return s;
}

inline std::string render_euler(EulerReport const& e) {
    std::ostringstream out;
    out << "betti numbers of X: (" << e.betti.b0 << ", " << e.betti.b1 << ", "
        << e.betti.b2 << ")\n"
        << "|G|: " << e.group_order << "\n"
        << "(b0 - b1 + b2)/|G|: " << to_string(e.lhs) << "\n"
        << "1 - d + sum 1/m_i:  " << to_string(e.chi_orb) << "\n"
        << "identity: " << (e.identity_holds ? "holds" : "FAILS") << "\n"
        << "b1 = 0: " << (e.b1_vanishes ? "yes" : "NO") << "\n"
        << "b2 predicted |G| chi_orb - 1 = " << e.b2_predicted.str() << ": "
        << (e.b2_matches ? "matches" : "MISMATCH") << "\n"
        << "cycle space dimension E - V + 1: " << e.cycle_space_dim << "\n";
    return out.str();
}

inline std::string render_text(Certificate const& c) {
    std::ostringstream out;
    out << "presentation: " << c.presentation << "\n"
        << "d = " << c.d << ", r = " << c.r << "\n"
        << "sum 1/m_i = " << to_string(c.sum_inv_m) << "\n"
        << "chi_orb = " << to_string(c.chi_orb)
        << " (approx. " << approximate(c.chi_orb) << ")\n"
        << "group size: " << (c.group_size ? c.group_size->str() : "UNKNOWN") << "\n";
    for (auto const& w : c.warnings) {
        out << "warning: " << w << "\n";
    }
    for (auto const& v : c.order_verdicts) {
        out << "relator " << v.relator + 1 << ": claimed order " << v.claimed << " "
            << to_string(v.status);
        if (v.method) {
            out << " via " << to_string(*v.method);
        }
        if (v.actual) {
            out << " (actual order " << v.actual->str() << ")";
        }
        out << "\n";
    }
    out << "abelianization invariants:";
    for (auto const& k : c.abelianization.smith_diagonal) {
        out << " " << k.str();
    }
    out << (c.abelianization.infinite() ? " (infinite)" : " (finite)") << "\n";
    out << "conclusions:";
    if (c.conclusions.empty()) {
        out << " none";
    }
    out << "\n";
    for (auto const& k : c.conclusions) {
        out << "  " << describe(k) << "\n";
    }
    if (c.euler) {
        out << render_euler(*c.euler);
    }
    return out.str();
}

}  // namespace orbicert
