#include "fqtrace/config.hpp"

#include "fqtrace/places.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fqtrace {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_line(int lineno, const std::string& line, const std::string& why) {
    std::ostringstream os;
    os << "config line " << lineno << ": " << why << " ('" << line << "')";
    throw std::invalid_argument(os.str());
}

long parse_long(const std::string& s, int lineno, const std::string& line) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) bad_line(lineno, line, "trailing junk after integer");
        return v;
    } catch (const std::invalid_argument&) {
        bad_line(lineno, line, "expected an integer");
    } catch (const std::out_of_range&) {
        bad_line(lineno, line, "integer out of range");
    }
}

// "num/den" or a bare integer; denominator must be nonzero.
Rat parse_rat(const std::string& s, int lineno, const std::string& line) {
    std::string t = trim(s);
    if (t.empty()) bad_line(lineno, line, "empty rational");
    size_t slash = t.find('/');
    try {
        using boost::multiprecision::cpp_int;
        if (slash == std::string::npos) return Rat(cpp_int(t));
        cpp_int num(trim(t.substr(0, slash)));
        cpp_int den(trim(t.substr(slash + 1)));
        if (den == 0) bad_line(lineno, line, "zero denominator");
        return Rat(num) / Rat(den);
    } catch (const std::runtime_error&) {
        bad_line(lineno, line, "malformed rational, want num/den");
    }
}

std::vector<std::string> split_labels(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    cfg.place_labels.clear();
    cfg.h = HFunction{};
    bool saw_places = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        size_t eq = line.find('=');
        if (eq == std::string::npos) bad_line(lineno, raw, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) bad_line(lineno, raw, "empty key");
        if (val.empty()) bad_line(lineno, raw, "empty value");

        if (key == "q") {
            cfg.q = static_cast<int>(parse_long(val, lineno, raw));
        } else if (key == "S") {
            cfg.place_labels = split_labels(val);
            saw_places = true;
        } else if (key == "k_min") {
            cfg.k_min = parse_long(val, lineno, raw);
        } else if (key == "k_max") {
            cfg.k_max = parse_long(val, lineno, raw);
        } else if (key == "depth") {
            if (val == "auto")
                cfg.depth = -1;
            else {
                cfg.depth = parse_long(val, lineno, raw);
                if (cfg.depth < 0) bad_line(lineno, raw, "depth must be 'auto' or >= 0");
            }
        } else if (key == "format") {
            if (val != "csv" && val != "json") bad_line(lineno, raw, "format must be csv or json");
            cfg.format = val;
        } else if (key == "mode") {
            if (val != "exact" && val != "float") bad_line(lineno, raw, "mode must be exact or float");
            cfg.mode = val;
        } else if (key == "precision") {
            long p = parse_long(val, lineno, raw);
            if (p < 6 || p > 40) bad_line(lineno, raw, "precision must be in [6, 40]");
            cfg.precision = static_cast<int>(p);
        } else if (key.size() > 3 && key.compare(0, 2, "h[") == 0 && key.back() == ']') {
            std::string inner = key.substr(2, key.size() - 3);
            long e = parse_long(trim(inner), lineno, raw);
            cfg.h.set(e, parse_rat(val, lineno, raw));
        } else {
            bad_line(lineno, raw, "unknown key '" + key + "'");
        }
    }

    if (!saw_places) throw std::invalid_argument("config: missing key 'S'");
    if (cfg.k_min < 0) throw std::invalid_argument("config: k_min must be >= 0");
    if (cfg.k_max < cfg.k_min) throw std::invalid_argument("config: k_max must be >= k_min");
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "q = " << c.q << "\n";
    os << "S = ";
    for (size_t i = 0; i < c.place_labels.size(); ++i)
        os << (i ? ", " : "") << c.place_labels[i];
    os << "\n";
    for (const auto& [e, v] : c.h.coef)
        if (v != 0) os << "h[" << e << "] = " << rat_str(v) << "\n";
    os << "k_min = " << c.k_min << "\n";
    os << "k_max = " << c.k_max << "\n";
    if (c.depth < 0)
        os << "depth = auto\n";
    else
        os << "depth = " << c.depth << "\n";
    os << "format = " << c.format << "\n";
    os << "mode = " << c.mode << "\n";
    os << "precision = " << c.precision << "\n";
    return os.str();
}

PlaceSet ExperimentConfig::make_places() const {
    return parse_place_set(q, place_labels);
}

long identity_support_bound(const PlaceSet& S) {
    for (int d = 1;; ++d) {
        long want = count_irreducibles(S.q, d) + (d == 1 ? 1 : 0);
        long have = 0;
        for (const auto& v : S.places)
            if (v.deg == d) ++have;
        if (have < want) return d - 1;
    }
}

} // namespace fqtrace
