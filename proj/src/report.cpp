#include "fqtrace/report.hpp"

#include "fqtrace/rhs.hpp"
#include "fqtrace/spaces.hpp"
#include "fqtrace/traces.hpp"

#include "json.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace fqtrace {

namespace {

const char* kColumns[] = {
    "k",        "Lambda",   "dimQ0",    "dimQbar0",     "trQ0",
    "trQbar0",  "trQfull",  "rhs_main", "rhs_h0",       "rhs_h1",
    "rhs_weil", "gap_identity", "gap_thm31", "gap_lemma35",
};

std::string lambda_str(int q, long k) {
    Rat lam = rat_pow(static_cast<long>(q), k);
    return boost::multiprecision::numerator(lam).str();
}

TraceRow build_row(const PlaceSet& S, const ExperimentConfig& cfg, long k) {
    auto t0 = std::chrono::steady_clock::now();

    EngineSpaces E = build_engine(S, k, cfg.depth);
    EngineTraces T = traces_for(E, cfg.h);
    ExplicitSide X = explicit_side(S, k, cfg.h);

    TraceRow r;
    r.k = k;
    r.depth = E.depth;
    r.saturated = E.saturated;
    r.dim_q0 = E.dim_q0;
    r.dim_qbar0 = E.dim_qbar0;
    r.dim_qfull = E.dim_qfull;
    r.tr_q0 = T.tr_q0.value;
    r.tr_qbar0 = T.tr_qbar0.value;
    r.tr_qfull = T.tr_qfull.value;
    r.rhs_main = X.main.value;
    r.rhs_h0 = X.hat0.value;
    r.rhs_h1 = X.hat1.value;
    for (const auto& v : S.places) r.pv_place.push_back(place_pv_term(cfg.h, v).value);
    r.rhs_weil = X.pv_sum.value;
    r.rhs_total = X.total.value;
    r.gap_identity = r.tr_q0 - r.tr_qbar0;
    r.gap_thm31 = r.tr_q0 - r.rhs_total;
    r.gap_lemma35 = (r.tr_qfull - r.tr_q0) - (r.rhs_h0 + r.rhs_h1);

    auto t1 = std::chrono::steady_clock::now();
    r.micros = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
    return r;
}

} // namespace

TraceReport run_experiment(const ExperimentConfig& cfg, int jobs) {
    PlaceSet S = cfg.make_places();

    TraceReport rep;
    rep.config = cfg;
    for (const auto& v : S.places) rep.place_labels.push_back(v.label());

    if (!cfg.h.is_zero()) {
        long bound = identity_support_bound(S);
        long reach = std::max(std::labs(cfg.h.min_class()), std::labs(cfg.h.max_class()));
        if (reach > bound) {
            std::ostringstream os;
            os << "multiplier reaches class radius " << reach
               << " but the place set only closes the identity up to radius " << bound
               << "; the gap_identity column need not vanish";
            rep.warning = os.str();
        }
    }

    const long n = cfg.k_max - cfg.k_min + 1;
    rep.rows.resize(static_cast<size_t>(n));

    int workers = jobs < 1 ? 1 : static_cast<int>(std::min<long>(jobs, n));
    std::atomic<long> next{0};
    auto drain = [&]() {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n) return;
            rep.rows[static_cast<size_t>(i)] = build_row(S, cfg, cfg.k_min + i);
        }
    };
    if (workers <= 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
        for (auto& th : pool) th.join();
    }
    return rep;
}

std::string exact_cell(const Rat& value) { return rat_str(value); }

std::string float_cell(const Rat& value, int q, int precision) {
    double v = value.convert_to<double>() * std::log(static_cast<double>(q));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

namespace {

// Renders one rational cell according to the configured mode.
std::string cell(const TraceReport& r, const Rat& v) {
    if (r.config.mode == "float") return float_cell(v, r.config.q, r.config.precision);
    return exact_cell(v);
}

std::vector<std::string> row_cells(const TraceReport& rep, const TraceRow& r) {
    std::vector<std::string> c;
    c.push_back(std::to_string(r.k));
    c.push_back(lambda_str(rep.config.q, r.k));
    c.push_back(std::to_string(r.dim_q0));
    c.push_back(std::to_string(r.dim_qbar0));
    for (const Rat* v : {&r.tr_q0, &r.tr_qbar0, &r.tr_qfull, &r.rhs_main, &r.rhs_h0,
                         &r.rhs_h1, &r.rhs_weil, &r.gap_identity, &r.gap_thm31,
                         &r.gap_lemma35})
        c.push_back(cell(rep, *v));
    return c;
}

std::string join_csv(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

} // namespace

std::string render_csv(const TraceReport& r) {
    std::string out;
    out += join_csv({std::begin(kColumns), std::end(kColumns)});
    for (const auto& row : r.rows) out += join_csv(row_cells(r, row));
    return out;
}

std::string render_json(const TraceReport& r, bool with_timings) {
    nlohmann::json j;
    j["config"]["q"] = r.config.q;
    j["config"]["S"] = r.place_labels;
    nlohmann::json hh = nlohmann::json::array();
    for (const auto& [e, v] : r.config.h.coef)
        hh.push_back({{"class", e}, {"value", rat_str(v)}});
    j["config"]["h"] = hh;
    j["config"]["k_min"] = r.config.k_min;
    j["config"]["k_max"] = r.config.k_max;
    j["config"]["depth"] = r.config.depth < 0 ? "auto" : std::to_string(r.config.depth);
    j["config"]["mode"] = r.config.mode;
    if (!r.warning.empty()) j["warning"] = r.warning;

    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json o;
        auto cells = row_cells(r, row);
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i == 0) o["k"] = row.k;
            else if (i == 2) o["dimQ0"] = row.dim_q0;
            else if (i == 3) o["dimQbar0"] = row.dim_qbar0;
            else o[kColumns[i]] = cells[i];
        }
        o["dimQfull"] = row.dim_qfull;
        o["depth"] = row.depth;
        o["saturated"] = row.saturated;
        if (with_timings) o["micros"] = row.micros;
        rows.push_back(o);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string render_report(const TraceReport& r, bool with_timings) {
    if (r.config.format == "json") return render_json(r, with_timings);
    return render_csv(r);
}

std::string render_dims(const TraceReport& r) {
    if (r.config.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : r.rows)
            rows.push_back({{"k", row.k},
                            {"Lambda", lambda_str(r.config.q, row.k)},
                            {"depth", row.depth},
                            {"saturated", row.saturated},
                            {"dimQ0", row.dim_q0},
                            {"dimQbar0", row.dim_qbar0},
                            {"dimQfull", row.dim_qfull}});
        return nlohmann::json{{"rows", rows}}.dump(2) + "\n";
    }
    std::string out = "k,Lambda,depth,saturated,dimQ0,dimQbar0,dimQfull\n";
    for (const auto& row : r.rows)
        out += join_csv({std::to_string(row.k), lambda_str(r.config.q, row.k),
                         std::to_string(row.depth), row.saturated ? "1" : "0",
                         std::to_string(row.dim_q0), std::to_string(row.dim_qbar0),
                         std::to_string(row.dim_qfull)});
    return out;
}

std::string render_weil(const TraceReport& r) {
    if (r.config.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : r.rows) {
            nlohmann::json o{{"k", row.k},
                             {"rhs_main", cell(r, row.rhs_main)},
                             {"rhs_h0", cell(r, row.rhs_h0)},
                             {"rhs_h1", cell(r, row.rhs_h1)},
                             {"rhs_weil", cell(r, row.rhs_weil)},
                             {"rhs_total", cell(r, row.rhs_total)}};
            nlohmann::json pv;
            for (size_t i = 0; i < r.place_labels.size(); ++i)
                pv[r.place_labels[i]] = cell(r, row.pv_place[i]);
            o["pv"] = pv;
            rows.push_back(o);
        }
        return nlohmann::json{{"rows", rows}}.dump(2) + "\n";
    }
    std::string header = "k,rhs_main,rhs_h0,rhs_h1";
    for (const auto& lbl : r.place_labels) header += ",pv[" + lbl + "]";
    header += ",rhs_weil,rhs_total\n";
    std::string out = header;
    for (const auto& row : r.rows) {
        std::vector<std::string> cells{std::to_string(row.k), cell(r, row.rhs_main),
                                       cell(r, row.rhs_h0), cell(r, row.rhs_h1)};
        for (const auto& pv : row.pv_place) cells.push_back(cell(r, pv));
        cells.push_back(cell(r, row.rhs_weil));
        cells.push_back(cell(r, row.rhs_total));
        out += join_csv(cells);
    }
    return out;
}

std::string render_places(const PlaceSet& S, const std::string& format) {
    auto N = S.counting_seq(8);
    auto M = S.moebius_seq(8);
    if (format == "json") {
        nlohmann::json places = nlohmann::json::array();
        for (size_t i = 0; i < S.places.size(); ++i) {
            const auto& v = S.places[i];
            places.push_back({{"label", v.label()},
                              {"deg", v.deg},
                              {"qv", v.qv_long()},
                              {"n", v.n},
                              {"u", S.u[i]}});
        }
        nlohmann::json j{{"q", S.q}, {"k0", S.k0}, {"places", places}};
        nlohmann::json ns = nlohmann::json::array(), ms = nlohmann::json::array();
        for (const auto& x : N) ns.push_back(rat_str(x));
        for (const auto& x : M) ms.push_back(rat_str(x));
        j["counting_seq"] = ns;
        j["moebius_seq"] = ms;
        return j.dump(2) + "\n";
    }
    std::string out = "label,deg,qv,n,u\n";
    for (size_t i = 0; i < S.places.size(); ++i) {
        const auto& v = S.places[i];
        out += join_csv({v.label(), std::to_string(v.deg), std::to_string(v.qv_long()),
                         std::to_string(v.n), std::to_string(S.u[i])});
    }
    out += "# k0 = " + std::to_string(S.k0) + "\n";
    out += "# N =";
    for (const auto& x : N) out += " " + rat_str(x);
    out += "\n# M =";
    for (const auto& x : M) out += " " + rat_str(x);
    out += "\n";
    return out;
}

} // namespace fqtrace
