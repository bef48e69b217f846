#pragma once

#include "metalearn.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace bstlab {

// --- sequence generators --------------------------------------------------------

enum class GeneratorKind {
    sequential,           // 1,2,...,n repeating
    uniform_random,       // independent uniform keys
    bit_reversal,         // bit-reversal permutation of 1..n repeating (n a power of two)
    working_set_clustered,// bursts of searches inside a small moving key window
    alt_gap_adversary,    // uniform over the one-level-separated target set (n a power of two)
    constant,             // the median key over and over
};

inline const std::vector<GeneratorKind> &all_generators() {
    static const std::vector<GeneratorKind> kinds{
        GeneratorKind::sequential,         GeneratorKind::uniform_random,
        GeneratorKind::bit_reversal,       GeneratorKind::working_set_clustered,
        GeneratorKind::alt_gap_adversary,  GeneratorKind::constant,
    };
    return kinds;
}

inline std::string to_string(GeneratorKind k) {
    switch (k) {
    case GeneratorKind::sequential:
        return "sequential";
    case GeneratorKind::uniform_random:
        return "uniform_random";
    case GeneratorKind::bit_reversal:
        return "bit_reversal";
    case GeneratorKind::working_set_clustered:
        return "working_set_clustered";
    case GeneratorKind::alt_gap_adversary:
        return "alt_gap_adversary";
    case GeneratorKind::constant:
        return "constant";
    }
    return "unknown";
}

inline std::optional<GeneratorKind> generator_from_name(std::string_view name) {
    for (GeneratorKind k : all_generators())
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::uniform_random;
    int n = 0;
    int m = 0;
    std::uint64_t seed = 1;
};

inline bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

// The adversarial target set: split [lo..hi] at mid = floor((lo+hi)/2) into
// [lo..mid] and [mid+1..hi]; at every level record the smallest key of the
// right half (= mid+1), descend left, and finish with the leftmost key.
// Any two targets are split apart at exactly one level of the hierarchy.
inline std::vector<Key> alt_gap_targets(int n) {
    if (!is_power_of_two(n))
        throw std::invalid_argument("alt_gap_adversary: n must be a power of two");
    std::vector<Key> targets;
    Key lo = 1, hi = n;
    while (lo < hi) {
        const Key mid = (lo + hi) / 2;
        targets.push_back(mid + 1);
        hi = mid;
    }
    targets.push_back(lo);
    return targets;
}

inline SearchSequence generate(const GeneratorSpec &spec) {
    if (spec.n < 1)
        throw std::invalid_argument("generator: n must be positive");
    if (spec.m < 1)
        throw std::invalid_argument("generator: m must be positive");
    std::mt19937_64 gen(spec.seed);
    // 64-bit draw reduced by modulo: deterministic and portable; the bias is
    // ~n/2^64 and irrelevant at laboratory scale.
    auto uniform = [&](int count) { return static_cast<int>(gen() % count); };
    std::vector<Key> keys(spec.m);
    switch (spec.kind) {
    case GeneratorKind::sequential:
        for (int i = 0; i < spec.m; ++i)
            keys[i] = 1 + i % spec.n;
        break;
    case GeneratorKind::uniform_random:
        for (int i = 0; i < spec.m; ++i)
            keys[i] = 1 + uniform(spec.n);
        break;
    case GeneratorKind::bit_reversal: {
        if (!is_power_of_two(spec.n))
            throw std::invalid_argument("bit_reversal: n must be a power of two");
        int bits = 0;
        while ((1 << bits) < spec.n)
            ++bits;
        for (int i = 0; i < spec.m; ++i) {
            const unsigned v = static_cast<unsigned>(i % spec.n);
            unsigned r = 0;
            for (int b = 0; b < bits; ++b)
                if (v & (1u << b))
                    r |= 1u << (bits - 1 - b);
            keys[i] = static_cast<Key>(r + 1);
        }
        break;
    }
    case GeneratorKind::working_set_clustered: {
        const int cluster = std::max(1, spec.n / 8);
        const int burst = 4 * cluster;
        Key start = 1;
        for (int i = 0; i < spec.m; ++i) {
            if (i % burst == 0)
                start = 1 + uniform(spec.n - cluster + 1);
            keys[i] = start + uniform(cluster);
        }
        break;
    }
    case GeneratorKind::alt_gap_adversary: {
        const std::vector<Key> targets = alt_gap_targets(spec.n);
        for (int i = 0; i < spec.m; ++i)
            keys[i] = targets[uniform(static_cast<int>(targets.size()))];
        break;
    }
    case GeneratorKind::constant:
        for (int i = 0; i < spec.m; ++i)
            keys[i] = (spec.n + 1) / 2;
        break;
    }
    return make_sequence(spec.n, keys);
}

// --- sequence file format ---------------------------------------------------------

// "n m" on the first line, then the m keys separated by whitespace.
inline void save_sequence(std::ostream &os, const SearchSequence &x) {
    os << x.n << ' ' << x.length() << '\n';
    for (int i = 0; i < x.length(); ++i)
        os << x.keys[i] << (i + 1 == x.length() ? '\n' : ' ');
}

inline SearchSequence load_sequence(std::istream &is) {
    int n = 0, m = 0;
    if (!(is >> n >> m))
        throw std::invalid_argument("sequence file: expected header 'n m'");
    std::vector<Key> keys(m);
    for (int i = 0; i < m; ++i)
        if (!(is >> keys[i]))
            throw std::invalid_argument("sequence file: expected " + std::to_string(m) +
                                        " keys, got " + std::to_string(i));
    return make_sequence(n, keys);
}

// --- secondary effects probe ------------------------------------------------------

// Adding points to satisfy old pairs can leave new pairs unsatisfied. Each
// phase runs both signed sweeps on the current set and inserts their corner
// points; the probe reports how the per-phase addition counts decay until
// the set is arborally satisfied.
struct ProbePhase {
    long long plus_rects = 0;
    long long minus_rects = 0;
    long long added = 0; // distinct new points this phase
};

struct ProbeReport {
    std::vector<ProbePhase> phases;
    bool reached_ass = false;
    PointSet final_set;

    long long total_added() const {
        long long t = 0;
        for (const auto &p : phases)
            t += p.added;
        return t;
    }
};

inline ProbeReport secondary_effects_probe(const PointSet &G, int max_phases = 64) {
    ProbeReport rep;
    PointSet S = G;
    for (int k = 0; k < max_phases; ++k) {
        const IrbSweep plus = irb_sweep_plus(S);
        const IrbSweep minus = irb_sweep_minus(S);
        ProbePhase ph;
        ph.plus_rects = static_cast<long long>(plus.rects.size());
        ph.minus_rects = static_cast<long long>(minus.rects.size());
        for (const Point &p : plus.added.points())
            if (S.insert(p))
                ++ph.added;
        for (const Point &p : minus.added.points())
            if (S.insert(p))
                ++ph.added;
        rep.phases.push_back(ph);
        if (ph.added == 0)
            break;
    }
    rep.reached_ass = is_ass(S);
    rep.final_set = std::move(S);
    return rep;
}

// --- SVG emission -----------------------------------------------------------------

struct SvgOverlays {
    std::vector<Point> greedy;    // filled dots
    std::vector<Point> irb_plus;  // square outlines
    std::vector<Point> irb_minus; // square outlines
};

namespace detail {

// Color additions by which side of the row's base point they fall on.
inline const char *side_color(const PointSet &base, Point p) {
    const auto row = base.row(p.time);
    if (row.size() != 1)
        return "#777777";
    return p.key < row.front().key ? "#1f6fd0" : "#d03030";
}

} // namespace detail

// Time-vs-key diagram: black dots are the base points (time increases
// upward), colored dots are overlay additions (blue left of the base point
// of their row, red right of it), squares mark the signed-sweep corners.
inline std::string emit_svg(const PointSet &base, const SvgOverlays &ov = {}) {
    const int cell = 18, margin = 30, dot = 4;
    const int n = std::max(base.n(), 1), m = std::max(base.m(), 1);
    const int width = 2 * margin + (n - 1) * cell;
    const int height = 2 * margin + (m - 1) * cell;
    auto px = [&](Key k) { return margin + (k - 1) * cell; };
    auto py = [&](Time t) { return margin + (m - t) * cell; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (Key k = 1; k <= base.n(); ++k)
        os << "  <line x1=\"" << px(k) << "\" y1=\"" << py(m) << "\" x2=\"" << px(k)
           << "\" y2=\"" << py(1) << "\" stroke=\"#eeeeee\"/>\n";
    for (Time t = 1; t <= base.m(); ++t)
        os << "  <line x1=\"" << px(1) << "\" y1=\"" << py(t) << "\" x2=\"" << px(n)
           << "\" y2=\"" << py(t) << "\" stroke=\"#eeeeee\"/>\n";
    for (const Point &p : ov.greedy)
        os << "  <circle cx=\"" << px(p.key) << "\" cy=\"" << py(p.time) << "\" r=\"" << dot
           << "\" fill=\"" << detail::side_color(base, p) << "\"/>\n";
    auto square = [&](const Point &p) {
        const int s = dot + 3;
        os << "  <rect x=\"" << px(p.key) - s << "\" y=\"" << py(p.time) - s << "\" width=\""
           << 2 * s << "\" height=\"" << 2 * s << "\" fill=\"none\" stroke=\""
           << detail::side_color(base, p) << "\" stroke-width=\"1.5\"/>\n";
    };
    for (const Point &p : ov.irb_plus)
        square(p);
    for (const Point &p : ov.irb_minus)
        square(p);
    for (const Point &p : base.points())
        os << "  <circle cx=\"" << px(p.key) << "\" cy=\"" << py(p.time) << "\" r=\"" << dot
           << "\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

// Standard diagram of a sequence: its points, the greedy additions, and
// both signed-sweep corner sets.
inline std::string emit_sequence_svg(const SearchSequence &x) {
    const PointSet G = from_sequence(x);
    SvgOverlays ov;
    const PointSet greedy = greedy_superset(G);
    for (const Point &p : greedy.points())
        if (!G.contains(p))
            ov.greedy.push_back(p);
    ov.irb_plus = irb_sweep_plus(G).added.points();
    ov.irb_minus = irb_sweep_minus(G).added.points();
    return emit_svg(G, ov);
}

// --- configuration ----------------------------------------------------------------

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat "key = value" text: one pair per line, '#' starts a comment, list
// values are comma-separated.
inline std::map<std::string, std::string> parse_key_values(std::istream &is) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = val;
    }
    return kv;
}

inline std::vector<std::string> split_list(const std::string &val) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(val);
    while (std::getline(is, item, ',')) {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a != std::string::npos)
            out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

struct ExperimentConfig {
    int n = 16;
    int m = 256;
    std::uint64_t seed = 1;
    std::vector<GeneratorKind> generators{GeneratorKind::uniform_random};
    std::vector<AlgorithmId> algorithms{AlgorithmId::splay};
    bool bounds = true;
    bool oracle = true;       // oracle columns where the grid is small enough
    OracleLimits oracle_limits;
    int epoch_f = 0;          // 0: use n
    double epsilon = 0.5;
    std::string out_dir = ".";
};

inline ExperimentConfig experiment_config_from(const std::map<std::string, std::string> &kv) {
    ExperimentConfig cfg;
    auto to_int = [](const std::string &key, const std::string &val) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(val, &used);
            if (used != val.size())
                throw std::invalid_argument("");
            return v;
        } catch (const std::exception &) {
            throw config_error("config: " + key + " must be an integer, got '" + val + "'");
        }
    };
    auto to_bool = [](const std::string &key, const std::string &val) {
        if (val == "true" || val == "on" || val == "1")
            return true;
        if (val == "false" || val == "off" || val == "0")
            return false;
        throw config_error("config: " + key + " must be a boolean, got '" + val + "'");
    };
    for (const auto &[key, val] : kv) {
        if (key == "n")
            cfg.n = static_cast<int>(to_int(key, val));
        else if (key == "m")
            cfg.m = static_cast<int>(to_int(key, val));
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(to_int(key, val));
        else if (key == "generators") {
            cfg.generators.clear();
            for (const std::string &name : split_list(val)) {
                const auto k = generator_from_name(name);
                if (!k)
                    throw config_error("config: unknown generator '" + name + "'");
                cfg.generators.push_back(*k);
            }
        } else if (key == "algorithms") {
            cfg.algorithms.clear();
            for (const std::string &name : split_list(val)) {
                const auto a = algorithm_from_name(name);
                if (!a)
                    throw config_error("config: unknown algorithm '" + name + "'");
                cfg.algorithms.push_back(*a);
            }
        } else if (key == "bounds")
            cfg.bounds = to_bool(key, val);
        else if (key == "oracle")
            cfg.oracle = to_bool(key, val);
        else if (key == "oracle_max_nodes")
            cfg.oracle_limits.max_nodes = to_int(key, val);
        else if (key == "oracle_max_cells")
            cfg.oracle_limits.max_cells = static_cast<int>(to_int(key, val));
        else if (key == "epoch_f")
            cfg.epoch_f = static_cast<int>(to_int(key, val));
        else if (key == "epsilon") {
            try {
                cfg.epsilon = std::stod(val);
            } catch (const std::exception &) {
                throw config_error("config: epsilon must be a number, got '" + val + "'");
            }
        } else if (key == "out_dir")
            cfg.out_dir = val;
        else
            throw config_error("config: unknown key '" + key + "'");
    }
    if (cfg.n < 1 || cfg.m < 1)
        throw config_error("config: n and m must be positive");
    if (cfg.generators.empty())
        throw config_error("config: at least one generator required");
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string &path) {
    std::ifstream is(path);
    if (!is)
        throw config_error("config: cannot open '" + path + "'");
    return experiment_config_from(parse_key_values(is));
}

// --- JSON report emission -----------------------------------------------------------

inline nlohmann::json bound_report_json(const BoundReport &b) {
    return nlohmann::json{
        {"n", b.n},
        {"m", b.m},
        {"greedy_size", b.greedy_size},
        {"irb_plus", b.irb_plus},
        {"irb_minus", b.irb_minus},
        {"irb_total", b.irb_total},
        {"alternation", b.alternation},
        {"funnel", b.funnel},
        {"working_set", b.working_set},
        {"dynamic_finger", b.dynamic_finger},
        {"unified", b.unified},
    };
}

inline nlohmann::json onopt_report_json(const OnOptReport &r) {
    nlohmann::json experts = nlohmann::json::array();
    for (AlgorithmId id : r.experts)
        experts.push_back(to_string(id));
    return nlohmann::json{
        {"n", r.n},
        {"m", r.m},
        {"f", r.f},
        {"epochs", r.epochs},
        {"padding", r.padding},
        {"epsilon", r.epsilon},
        {"seed", r.seed},
        {"experts", experts},
        {"chosen", r.chosen},
        {"penalties", r.penalties},
        {"total_cost", r.total_cost},
        {"total_cost_padded", r.total_cost_padded},
        {"rebuild_cost", r.rebuild_cost},
        {"member_cost", r.member_cost},
        {"member_cost_padded", r.member_cost_padded},
        {"rho_max", r.rho_max},
        {"clamped", r.clamped},
        {"boundaries_canonical", r.boundaries_canonical},
        {"bound_rhs", r.bound_rhs},
    };
}

// --- experiment runner ----------------------------------------------------------------

struct ExperimentResult {
    std::string csv;        // one row per (generator, algorithm)
    nlohmann::json report;  // per-generator bounds and oracle results
};

inline ExperimentResult run_experiment(const ExperimentConfig &cfg) {
    ExperimentResult res;
    std::ostringstream csv;
    csv << "generator,algorithm,n,m,seed,total_cost,touched,greedy,irb_plus,irb_minus,"
           "irb_total,alt,funnel,working_set,dynamic_finger,unified,oracle_min,oracle_optimal\n";
    res.report["config"] = {
        {"n", cfg.n},       {"m", cfg.m},           {"seed", cfg.seed},
        {"bounds", cfg.bounds}, {"oracle", cfg.oracle}, {"epsilon", cfg.epsilon},
    };
    res.report["generators"] = nlohmann::json::array();
    for (GeneratorKind kind : cfg.generators) {
        const SearchSequence x = generate({kind, cfg.n, cfg.m, cfg.seed});
        const PointSet G = from_sequence(x);
        nlohmann::json gen_entry{{"generator", to_string(kind)}};

        std::string bound_cols = ",,,,,,,,";
        BoundReport bounds{};
        if (cfg.bounds) {
            bounds = compute_bound_report(x);
            std::ostringstream bc;
            bc << bounds.greedy_size << ',' << bounds.irb_plus << ',' << bounds.irb_minus << ','
               << bounds.irb_total << ',' << bounds.alternation << ',' << bounds.funnel << ','
               << bounds.working_set << ',' << bounds.dynamic_finger << ',' << bounds.unified;
            bound_cols = bc.str();
            gen_entry["bounds"] = bound_report_json(bounds);
        }

        std::string oracle_cols = ",";
        if (cfg.oracle &&
            static_cast<long long>(cfg.n) * cfg.m <= cfg.oracle_limits.max_cells) {
            const OracleResult orc = min_ass_superset(G, cfg.oracle_limits);
            std::ostringstream oc;
            oc << orc.min_size() << ',' << (orc.optimal ? "true" : "false");
            oracle_cols = oc.str();
            gen_entry["oracle"] = {{"min_size", orc.min_size()},
                                   {"optimal", orc.optimal},
                                   {"nodes_explored", orc.nodes_explored}};
        }

        gen_entry["algorithms"] = nlohmann::json::object();
        for (AlgorithmId alg : cfg.algorithms) {
            const Trace tr = run_algorithm(alg, x);
            csv << to_string(kind) << ',' << to_string(alg) << ',' << cfg.n << ',' << cfg.m
                << ',' << cfg.seed << ',' << tr.total_cost() << ',' << tr.touched_total() << ','
                << bound_cols << ',' << oracle_cols << '\n';
            gen_entry["algorithms"][to_string(alg)] = {{"total_cost", tr.total_cost()},
                                                       {"touched", tr.touched_total()}};
        }
        res.report["generators"].push_back(std::move(gen_entry));
    }
    res.csv = csv.str();
    return res;
}

} // namespace bstlab
