#pragma once

#include "fqtrace/config.hpp"
#include "fqtrace/rational.hpp"

#include <string>
#include <vector>

namespace fqtrace {

// One row of the convergence table, at window height Lambda = q^k.
// All scalar entries are exact rationals carrying one implicit unit of
// log q (traces and the explicit-side terms are degree-1 quantities).
struct TraceRow {
    long k = 0;
    long depth = 0;
    bool saturated = false;
    long dim_q0 = 0;
    long dim_qbar0 = 0;
    long dim_qfull = 0;

    Rat tr_q0, tr_qbar0, tr_qfull;

    Rat rhs_main;              // window term 2 h(0) (2k+1)
    Rat rhs_h0, rhs_h1;        // boundary weights sum h(e), sum h(e) q^{-e}
    std::vector<Rat> pv_place; // principal value per place, in place order
    Rat rhs_weil;              // sum of pv_place
    Rat rhs_total;             // rhs_main - rhs_h0 - rhs_h1 + rhs_weil

    Rat gap_identity;          // tr_q0 - tr_qbar0
    Rat gap_thm31;             // tr_q0 - rhs_total
    Rat gap_lemma35;           // (tr_qfull - tr_q0) - (rhs_h0 + rhs_h1)

    long micros = 0;           // wall time spent building this row
};

struct TraceReport {
    ExperimentConfig config;
    std::vector<std::string> place_labels; // canonical labels, place order
    std::vector<TraceRow> rows;            // ordered by k
    std::string warning;                   // empty, or the support-bound note
};

// Builds one row per k in [k_min, k_max].  Up to `jobs` rows are built
// concurrently; the returned rows are ordered by k and, in exact mode, are
// identical for every thread count.
TraceReport run_experiment(const ExperimentConfig& cfg, int jobs = 1);

// Fixed-column table: k, Lambda, dimQ0, dimQbar0, trQ0, trQbar0, trQfull,
// rhs_main, rhs_h0, rhs_h1, rhs_weil, gap_identity, gap_thm31, gap_lemma35.
// Exact mode renders rationals as "num/den"; float mode renders them as
// doubles scaled by ln q.  Timing fields are emitted only on request so
// that default output is bit-for-bit reproducible.
std::string render_csv(const TraceReport& r);
std::string render_json(const TraceReport& r, bool with_timings = false);
std::string render_report(const TraceReport& r, bool with_timings = false);

// Narrow tables for the inspection subcommands.
std::string render_dims(const TraceReport& r);
std::string render_weil(const TraceReport& r);
std::string render_places(const PlaceSet& S, const std::string& format);

// Helpers shared with the float-path check: exact value -> printed cell.
std::string float_cell(const Rat& value, int q, int precision);
std::string exact_cell(const Rat& value);

} // namespace fqtrace
