#pragma once

// End-to-end pipeline behind the command-line tool: parse, enumerate,
// verify relator orders, apply the certificates, optionally check the Euler
// identity, and assemble the JSON report.

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <variant>

#include "orbicert/certify.hpp"
#include "orbicert/coset_enum.hpp"
#include "orbicert/orbicomplex.hpp"
#include "orbicert/presentation.hpp"
#include "orbicert/report.hpp"

namespace orbicert {

enum ExitCode : int {
    exit_ok = 0,
    exit_violation = 1,
    exit_inconclusive = 2,
    exit_input_error = 3,
};

struct AnalyzeOptions {
    EnumerationLimits limits;
    bool euler = false;
    bool no_enum = false;
    bool deterministic = false;
    std::size_t max_cells = default_max_cells;
    std::optional<std::string> witness_text;
    std::string source = "-";
};

struct Analysis {
    Presentation presentation;
    Certificate certificate;
    std::optional<CosetTable> table;  // standardized, when closed
    std::optional<EnumerationStats> stats;
    bool closed = false;
    std::optional<std::string> euler_error;
    bool order_mismatch = false;
    json timings = json::object();
    json report;
};

namespace detail {
    class Stopwatch {
      public:
        double lap_ms() {
            auto now = std::chrono::steady_clock::now();
            double ms = std::chrono::duration<double, std::milli>(now - last_).count();
            last_ = now;
            return ms;
        }

      private:
        std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
    };
}  // namespace detail

inline int exit_code(Analysis const& a) {
    Certificate const& c = a.certificate;
    bool refuted = std::any_of(c.order_verdicts.begin(), c.order_verdicts.end(),
                               [](OrderVerdict const& v) {
                                   return v.status == OrderStatus::refuted;
                               });
    bool euler_failed = c.euler && !(c.euler->identity_holds &&
                                     c.euler->b1_vanishes && c.euler->b2_matches);
    if (refuted || c.has(ConclusionKind::violation) || euler_failed ||
        a.order_mismatch) {
        return exit_violation;
    }
    bool concluded = std::any_of(c.conclusions.begin(), c.conclusions.end(),
                                 [](Conclusion const& k) {
                                     return k.kind != ConclusionKind::hypothesis_unverified;
                                 });
    return concluded ? exit_ok : exit_inconclusive;
}

// Throws ParseError / InvalidWitness on bad input.
inline Analysis analyze(std::string const& text, AnalyzeOptions const& opts) {
    Analysis a;
    detail::Stopwatch clock;
    a.presentation = parse_presentation(text);
    Presentation const& p = a.presentation;
    std::optional<WitnessQuotient> witness;
    if (opts.witness_text) {
        witness = parse_witness(*opts.witness_text, p);
    }
    a.timings["parse_ms"] = clock.lap_ms();

    if (!opts.no_enum) {
        EnumerationResult result = enumerate(p, opts.limits);
        if (auto* t = std::get_if<CosetTable>(&result)) {
            a.closed = true;
            a.stats = t->stats();
            a.table = standardize(*t);
        } else {
            a.stats = std::get<NonTermination>(result).stats;
        }
    }
    a.timings["enumerate_ms"] = clock.lap_ms();

    auto verdicts = verify_orders(p, a.table ? &*a.table : nullptr,
                                  witness ? &*witness : nullptr);
    a.timings["verify_ms"] = clock.lap_ms();

    std::optional<Integer> size;
    if (a.table) {
        size = Integer(a.table->size());
    }
    a.certificate = apply_theorems(p, verdicts, size);
    a.timings["certify_ms"] = clock.lap_ms();

    if (opts.euler) {
        if (!a.table) {
            a.euler_error = "the Euler check needs a closed coset table";
        } else {
            try {
                a.certificate.euler = euler_identity_check(p, *a.table, opts.max_cells);
            } catch (OrderMismatch const& e) {
                a.order_mismatch = true;
                a.euler_error = e.what();
            } catch (ComplexTooLarge const& e) {
                a.euler_error = e.what();
            }
        }
    }
    a.timings["euler_ms"] = clock.lap_ms();

    if (opts.deterministic) {
        for (auto& [k, v] : a.timings.items()) {
            v = 0;
        }
    }

    json coset_stats = nullptr;
    if (a.stats) {
        coset_stats = {{"cosets_defined", a.stats->cosets_defined},
                       {"max_live", a.stats->max_live},
                       {"closed", a.closed},
                       {"strategy", to_string(opts.limits.strategy)},
                       {"max_cosets", opts.limits.max_cosets},
                       {"table", a.table ? to_json(*a.table, p.generator_names)
                                         : json(nullptr)}};
    }
    json cert = to_json(a.certificate);
    cert["euler_error"] = a.euler_error ? json(*a.euler_error) : json(nullptr);
    a.report = {
        {"version", version},
        {"input",
         {{"source", opts.source},
          {"presentation", to_string(p)},
          {"options",
           {{"euler", opts.euler},
            {"no_enum", opts.no_enum},
            {"witness", opts.witness_text.has_value()},
            {"max_cells", opts.max_cells},
            {"deterministic", opts.deterministic}}}}},
        {"certificate", cert},
        {"coset_stats", coset_stats},
        {"euler", a.certificate.euler ? to_json(*a.certificate.euler) : json(nullptr)},
        {"timings", a.timings},
    };
    return a;
}

}  // namespace orbicert
