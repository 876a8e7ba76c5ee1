#pragma once

#include "fqtrace/hfunction.hpp"
#include "fqtrace/place_set.hpp"

#include <string>
#include <vector>

namespace fqtrace {

// Run configuration for the trace-table harness.  Stored as line-based
// `key = value` text so golden files diff cleanly; class-multiplier entries
// are written one per class as `h[e] = num/den`.
struct ExperimentConfig {
    int q = 2;
    std::vector<std::string> place_labels{"inf", "t"};
    HFunction h;                // class multiplier; empty means h = 0
    long k_min = 0;
    long k_max = 4;
    long depth = -1;            // -1: saturate automatically per height
    std::string format = "csv"; // csv | json
    std::string mode = "exact"; // exact | float
    int precision = 17;         // significant digits printed in float mode

    // Builds and validates the place set (throws std::invalid_argument with
    // the offending condition named).
    PlaceSet make_places() const;

    friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
        return a.q == b.q && a.place_labels == b.place_labels &&
               a.h.coef == b.h.coef && a.k_min == b.k_min && a.k_max == b.k_max &&
               a.depth == b.depth && a.format == b.format && a.mode == b.mode &&
               a.precision == b.precision;
    }
};

// Parses config text.  Unknown keys, malformed lines, and out-of-range
// values all throw std::invalid_argument naming the line.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Inverse of parse_config_text: parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& c);

// Largest class radius for which the monoid/unit trace identity is expected
// to close over S: one less than the smallest degree of a place missing
// from S.  Multipliers reaching beyond it are legal but the identity gap
// column need not vanish; callers may warn.
long identity_support_bound(const PlaceSet& S);

} // namespace fqtrace
