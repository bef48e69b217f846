#pragma once

#include "oracle.hpp"
#include "registry.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace bstlab {

// --- randomized weighted majority ----------------------------------------------

// Multiplicative-weights expert chooser: weights decay as (1-eps)^penalty,
// the round's expert is sampled proportionally to the current weights.
class WeightedMajority {
  public:
    WeightedMajority(int experts, double epsilon) : eps_(epsilon), w_(experts, 1.0) {
        if (experts < 1)
            throw std::invalid_argument("weighted majority: need at least one expert");
        if (!(epsilon > 0.0) || !(epsilon <= 1.0))
            throw std::invalid_argument("weighted majority: epsilon must lie in (0,1]");
    }

    int experts() const { return static_cast<int>(w_.size()); }
    const std::vector<double> &weights() const { return w_; }

    // Sample an expert index proportional to the weights. The uniform draw
    // uses the top 53 bits of the generator so results are identical across
    // platforms.
    int sample(std::mt19937_64 &gen) const {
        const double u = std::ldexp(static_cast<double>(gen() >> 11), -53);
        double total = 0;
        for (double w : w_)
            total += w;
        double r = u * total, acc = 0;
        for (std::size_t i = 0; i + 1 < w_.size(); ++i) {
            acc += w_[i];
            if (r < acc)
                return static_cast<int>(i);
        }
        return static_cast<int>(w_.size()) - 1;
    }

    void update(const std::vector<double> &penalty) {
        if (penalty.size() != w_.size())
            throw std::invalid_argument("weighted majority: ragged penalty vector");
        for (double p : penalty)
            if (!(p >= 0.0) || !(p <= 1.0))
                throw std::invalid_argument("weighted majority: penalties must lie in [0,1]");
        double mx = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            w_[i] *= std::pow(1.0 - eps_, penalty[i]);
            mx = std::max(mx, w_[i]);
        }
        if (mx <= 0.0) {
            w_.assign(w_.size(), 1.0); // all weights annihilated (eps == 1): restart flat
        } else if (mx < 1e-150) {
            for (double &w : w_)
                w /= mx; // rescale against underflow; ratios are what matter
        }
    }

  private:
    double eps_;
    std::vector<double> w_;
};

struct WeightedMajorityRun {
    std::vector<int> choices;
    double total_penalty = 0;
    std::vector<double> expert_totals; // full-information column sums
};

// Run the chooser over a full penalty stream: each round samples an expert
// with the weights of the previous rounds only, then reveals the round's
// penalty column.
inline WeightedMajorityRun weighted_majority(const std::vector<std::vector<double>> &rounds,
                                             int experts, double epsilon, std::uint64_t seed) {
    WeightedMajority wm(experts, epsilon);
    std::mt19937_64 gen(seed);
    WeightedMajorityRun run;
    run.expert_totals.assign(experts, 0.0);
    for (const auto &round : rounds) {
        const int pick = wm.sample(gen);
        run.choices.push_back(pick);
        wm.update(round); // validates the row
        run.total_penalty += round[pick];
        for (int j = 0; j < experts; ++j)
            run.expert_totals[j] += round[j];
    }
    return run;
}

// --- epochs ---------------------------------------------------------------------

struct EpochSchedule {
    int f = 0;              // searches per epoch
    int epochs = 0;
    int padding = 0;        // searches appended to fill the last epoch
    std::vector<Key> keys;  // padded key stream, length epochs * f
};

// Split a sequence into epochs of exactly f searches; the last epoch is
// padded by repeating the final key, and the padding is recorded so its
// cost can be excluded from comparisons.
inline EpochSchedule split_epochs(const SearchSequence &x, int f) {
    validate(x);
    if (x.length() == 0)
        throw std::invalid_argument("epochs: sequence must be non-empty");
    if (f < x.n)
        throw std::invalid_argument("epochs: epoch length must be at least n");
    EpochSchedule s;
    s.f = f;
    s.epochs = (x.length() + f - 1) / f;
    s.padding = s.epochs * f - x.length();
    s.keys = x.keys;
    s.keys.resize(static_cast<std::size_t>(s.epochs) * f, x.keys.back());
    return s;
}

inline bool is_epoch_expert(AlgorithmId id) {
    return id == AlgorithmId::splay || id == AlgorithmId::move_to_root ||
           id == AlgorithmId::static_balanced || id == AlgorithmId::tango;
}

inline void validate_expert_pool(const std::vector<AlgorithmId> &pool) {
    if (pool.empty())
        throw std::invalid_argument("expert pool: must be non-empty");
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!is_online(pool[i]) || !is_epoch_expert(pool[i]))
            throw std::invalid_argument("expert pool: " + to_string(pool[i]) +
                                        " is not an online epoch algorithm");
        for (std::size_t j = i + 1; j < pool.size(); ++j)
            if (pool[i] == pool[j])
                throw std::invalid_argument("expert pool: duplicate member " + to_string(pool[i]));
    }
}

// Run one expert over one epoch. The machine is expected to be canonical;
// experts that want a different starting shape pay a lump 3n conversion
// (any shape is reachable from canonical in under 3n unit ops). Returns the
// unit-op delta; appends per-search records to sink when given.
inline long long run_expert_epoch(AlgorithmId id, BstMachine &m, const Key *keys, int count,
                                  int index_base, Trace *sink) {
    const long long before = m.op_count();
    auto run_all = [&](auto &&strategy) {
        for (int i = 0; i < count; ++i) {
            m.begin_search(keys[i]);
            strategy(m, keys[i]);
            TraceRecord rec = m.end_search();
            rec.index = index_base + i + 1;
            if (sink)
                sink->records.push_back(std::move(rec));
        }
    };
    switch (id) {
    case AlgorithmId::splay:
        run_all([](BstMachine &mm, Key k) { splay_search(mm, k); });
        break;
    case AlgorithmId::move_to_root:
        run_all([](BstMachine &mm, Key k) { move_to_root_once(mm, k); });
        break;
    case AlgorithmId::static_balanced: {
        Key root = 0;
        auto links = median_split_links(m.size(), &root);
        std::vector<std::array<Key, 3>> relinks;
        for (Key k = 1; k <= m.size(); ++k)
            relinks.push_back({k, links[k][0], links[k][1]});
        m.rewire(root, relinks);
        m.charge(3LL * m.size());
        run_all([](BstMachine &mm, Key k) { walk_from_root(mm, k); });
        break;
    }
    case AlgorithmId::tango: {
        TangoState st(m.size());
        m.rewire(st.initial_root(), st.initial_relinks());
        m.charge(3LL * m.size());
        run_all([&](BstMachine &mm, Key k) { st.search(mm, k); });
        break;
    }
    default:
        throw std::invalid_argument("not an epoch expert: " + to_string(id));
    }
    return m.op_count() - before;
}

// --- the epoch combiner -----------------------------------------------------------

struct OnOptConfig {
    int f = 0;             // epoch length; 0 means "use n"
    double epsilon = 0.5;
    std::uint64_t seed = 1;
    std::vector<AlgorithmId> experts{AlgorithmId::splay, AlgorithmId::move_to_root,
                                     AlgorithmId::static_balanced};
};

struct OnOptReport {
    int n = 0, m = 0, f = 0, epochs = 0, padding = 0;
    double epsilon = 0;
    std::uint64_t seed = 0;
    std::vector<AlgorithmId> experts;

    Trace trace;                     // the live run, padded stream included
    long long rebuild_cost = 0;      // canonical rebuilds between epochs
    long long total_cost_padded = 0; // every unit op of the live machine
    long long total_cost = 0;        // padding searches excluded

    std::vector<int> chosen;                     // expert index per epoch
    std::vector<std::vector<double>> penalties;  // per epoch, per expert
    std::vector<long long> member_cost_padded;   // full-information totals
    std::vector<long long> member_cost;          // padding excluded
    double rho_max = 0;
    long long clamped = 0;           // penalties that exceeded rho_max and were capped
    bool boundaries_canonical = true;
    double bound_rhs = 0; // (1+eps)*best member + rho_max*ln(K)/eps + epochs*3n
};

// Epoch-granular expert combination: per epoch, sample an expert by
// weighted majority, run it on the live machine from the canonical state,
// rebuild to canonical (real rotations, counted), then replay every expert
// on a fresh canonical machine to reveal the full penalty column.
inline OnOptReport onopt_execute(const SearchSequence &x, OnOptConfig cfg = {}) {
    validate(x);
    validate_expert_pool(cfg.experts);
    const int f = cfg.f == 0 ? x.n : cfg.f;
    const EpochSchedule sched = split_epochs(x, f);
    const int K = static_cast<int>(cfg.experts.size());

    OnOptReport rep;
    rep.n = x.n;
    rep.m = x.length();
    rep.f = f;
    rep.epochs = sched.epochs;
    rep.padding = sched.padding;
    rep.epsilon = cfg.epsilon;
    rep.seed = cfg.seed;
    rep.experts = cfg.experts;
    rep.trace.n = x.n;
    rep.member_cost_padded.assign(K, 0);
    rep.member_cost.assign(K, 0);
    rep.rho_max = 3.0 * x.n * f;

    WeightedMajority wm(K, cfg.epsilon);
    std::mt19937_64 gen(cfg.seed);
    BstMachine live(x.n);
    std::vector<long long> last_epoch_cost(K, 0);

    for (int e = 0; e < sched.epochs; ++e) {
        const Key *keys = sched.keys.data() + static_cast<std::size_t>(e) * f;
        const int pick = wm.sample(gen);
        rep.chosen.push_back(pick);
        run_expert_epoch(cfg.experts[pick], live, keys, f, e * f, &rep.trace);
        rep.rebuild_cost += rebuild_to_canonical(live);
        rep.boundaries_canonical = rep.boundaries_canonical && live.is_canonical();

        std::vector<double> pen(K, 0.0);
        for (int j = 0; j < K; ++j) {
            BstMachine replay(x.n);
            const long long cj = run_expert_epoch(cfg.experts[j], replay, keys, f, e * f, nullptr);
            rep.member_cost_padded[j] += cj;
            last_epoch_cost[j] = cj;
            double p = static_cast<double>(cj) / rep.rho_max;
            if (p > 1.0) {
                p = 1.0;
                ++rep.clamped;
            }
            pen[j] = p;
        }
        rep.penalties.push_back(pen);
        wm.update(pen);
    }

    rep.total_cost_padded = live.op_count();
    long long pad_cost = 0;
    for (const auto &rec : rep.trace.records)
        if (rec.index > rep.m)
            pad_cost += rec.cost;
    rep.total_cost = rep.total_cost_padded - pad_cost;

    rep.member_cost = rep.member_cost_padded;
    if (rep.padding > 0) {
        const Key *last = sched.keys.data() + static_cast<std::size_t>(sched.epochs - 1) * f;
        const int real = f - rep.padding;
        for (int j = 0; j < K; ++j) {
            BstMachine replay(x.n);
            const long long cj =
                real > 0 ? run_expert_epoch(cfg.experts[j], replay, last, real, 0, nullptr) : 0;
            rep.member_cost[j] += cj - last_epoch_cost[j];
        }
    }

    long long best = rep.member_cost_padded.empty() ? 0 : rep.member_cost_padded[0];
    for (long long c : rep.member_cost_padded)
        best = std::min(best, c);
    rep.bound_rhs = (1.0 + cfg.epsilon) * static_cast<double>(best) +
                    rep.rho_max * std::log(static_cast<double>(K)) / cfg.epsilon +
                    3.0 * x.n * sched.epochs;
    return rep;
}

// --- epoch decomposition of the optimum -------------------------------------------

struct EpochDecomposition {
    int f = 0, epochs = 0, c = 3;
    long long whole = 0;            // oracle minimum for the whole sequence
    std::vector<long long> parts;   // oracle minimum per epoch
    long long parts_sum = 0;
    bool all_optimal = true;        // every oracle call certified
    bool lower_ok = false;          // sum of parts <= whole + epochs*c*f
    bool upper_ok = false;          // whole <= sum of parts + epochs*c*f

    bool verified() const { return all_optimal && lower_ok && upper_ok; }
};

// Desk-scale check that the optimum decomposes over epochs up to an
// additive c*f per epoch, in both directions.
inline EpochDecomposition epoch_opt_decomposition_check(const SearchSequence &x, int f,
                                                        OracleLimits limits = {}, int c = 3) {
    validate(x);
    if (f < 1)
        throw std::invalid_argument("epoch decomposition: f must be positive");
    EpochDecomposition d;
    d.f = f;
    d.c = c;
    const OracleResult whole = min_ass_superset(from_sequence(x), limits);
    d.whole = whole.min_size();
    d.all_optimal = whole.optimal;
    for (int start = 0; start < x.length(); start += f) {
        const int len = std::min(f, x.length() - start);
        std::vector<Key> part(x.keys.begin() + start, x.keys.begin() + start + len);
        const OracleResult r = min_ass_superset(from_sequence(make_sequence(x.n, part)), limits);
        d.parts.push_back(r.min_size());
        d.parts_sum += r.min_size();
        d.all_optimal = d.all_optimal && r.optimal;
        ++d.epochs;
    }
    const long long slack = static_cast<long long>(d.epochs) * c * f;
    d.lower_ok = d.parts_sum <= d.whole + slack;
    d.upper_ok = d.whole <= d.parts_sum + slack;
    return d;
}

} // namespace bstlab
