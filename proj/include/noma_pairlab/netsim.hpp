#pragma once

// Monte-Carlo cellular network for pairing experiments.
//
// BSs and users are dropped as homogeneous Poisson point processes on a
// square region. Links see log-distance pathloss times unit-mean
// exponential (Rayleigh power) fading. Each user is served by the BS that
// gives it the largest SINR, all other BSs interfering at full power.
// Pairing algorithms then run independently on the users of every BS.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "noma_pairlab/core_rates.hpp"
#include "noma_pairlab/errors.hpp"
#include "noma_pairlab/pairing.hpp"

namespace noma {

struct SimConfig {
    double bs_density = 25.0;     // BS / km^2
    double user_density = 120.0;  // users / km^2
    double region_side = 1.0;     // km
    double tx_power_dbm = 46.0;
    double noise_dbm = -104.0;
    double pathloss_a = 128.1;  // dB at 1 km
    double pathloss_b = 37.6;   // dB per decade
    double fading_scale = 1.0;  // E[|h|^2] = fading_scale^2
    int realizations = 80;
    std::uint64_t seed = 1;
    double beta = 0.0;
    RateModel rate_model = RateModel::LR;
    SplitPolicy split_policy = default_split_policy();
    bool geometry_redraw = true;  // false: one BS/user layout, fading redrawn only
    int users_per_bs = 0;         // > 0 overrides user_density
    int threads = 0;              // 0: NOMA_PAIRLAB_THREADS or hardware concurrency
    double min_distance_km = 0.01;

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!std::isfinite(v) || v <= 0.0) throw ConfigError(std::string(name) + " must be > 0");
        };
        positive(bs_density, "bs_density");
        positive(user_density, "user_density");
        positive(region_side, "region_side");
        positive(fading_scale, "fading_scale");
        positive(min_distance_km, "min_distance_km");
        if (realizations <= 0) throw ConfigError("realizations must be > 0");
        if (users_per_bs < 0) throw ConfigError("users_per_bs must be >= 0");
        if (threads < 0) throw ConfigError("threads must be >= 0");
        if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_dbm) || !std::isfinite(pathloss_a) ||
            !std::isfinite(pathloss_b)) {
            throw ConfigError("power and pathloss parameters must be finite");
        }
        if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in [0, 1]");
    }

    double area() const { return region_side * region_side; }
    double tx_power_mw() const { return std::pow(10.0, tx_power_dbm / 10.0); }
    double noise_mw() const { return std::pow(10.0, noise_dbm / 10.0); }
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

using Rng = std::mt19937_64;

/// Independent stream per (seed, stream index); same inputs, same stream,
/// whatever thread draws it.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

inline std::vector<Point> uniform_points(std::size_t count, double side, Rng& rng) {
    std::uniform_real_distribution<double> coord(0.0, side);
    std::vector<Point> pts(count);
    for (auto& p : pts) {
        p.x = coord(rng);
        p.y = coord(rng);
    }
    return pts;
}

inline std::size_t poisson_count(double mean, Rng& rng) {
    std::poisson_distribution<long long> dist(mean);
    return static_cast<std::size_t>(dist(rng));
}

struct Deployment {
    std::vector<Point> bs;
    std::vector<Point> users;
    int empty_redraws = 0;  // realizations discarded for having no BS
};

inline Deployment deploy(const SimConfig& config, Rng& rng) {
    Deployment d;
    std::size_t n_bs = 0;
    while ((n_bs = poisson_count(config.bs_density * config.area(), rng)) == 0) ++d.empty_redraws;
    d.bs = uniform_points(n_bs, config.region_side, rng);
    if (config.users_per_bs == 0) {
        d.users = uniform_points(poisson_count(config.user_density * config.area(), rng),
                                 config.region_side, rng);
    }
    return d;
}

/// Linear pathloss gain at distance d (km), distance floored at
/// `min_distance_km`.
inline double pathloss_gain(double d_km, const SimConfig& config) {
    const double d = std::max(d_km, config.min_distance_km);
    const double loss_db = config.pathloss_a + config.pathloss_b * std::log10(d);
    return std::pow(10.0, -loss_db / 10.0);
}

inline double draw_fading(const SimConfig& config, Rng& rng) {
    std::exponential_distribution<double> power(1.0 / (config.fading_scale * config.fading_scale));
    return power(rng);
}

/// Row-major users x BSs matrix of linear link gains.
struct GainMatrix {
    std::size_t n_users = 0;
    std::size_t n_bs = 0;
    std::vector<double> gain;

    double operator()(std::size_t u, std::size_t b) const { return gain[u * n_bs + b]; }
    double& operator()(std::size_t u, std::size_t b) { return gain[u * n_bs + b]; }
};

inline std::vector<double> user_gains(const Point& user, const std::vector<Point>& bs,
                                      const SimConfig& config, Rng& rng) {
    std::vector<double> g(bs.size());
    for (std::size_t b = 0; b < bs.size(); ++b) {
        g[b] = pathloss_gain(distance(user, bs[b]), config) * draw_fading(config, rng);
    }
    return g;
}

inline GainMatrix channel_gains(const std::vector<Point>& bs, const std::vector<Point>& users,
                                const SimConfig& config, Rng& rng) {
    GainMatrix m{users.size(), bs.size(), std::vector<double>(users.size() * bs.size())};
    for (std::size_t u = 0; u < users.size(); ++u) {
        const auto g = user_gains(users[u], bs, config, rng);
        std::copy(g.begin(), g.end(), m.gain.begin() + static_cast<std::ptrdiff_t>(u * bs.size()));
    }
    return m;
}

struct Association {
    std::size_t serving_bs;
    double sinr;  // linear
};

/// SINR toward each BS with every other BS as interference; the best one
/// wins, ties to the lowest index.
inline Association best_server(const std::vector<double>& gains, const SimConfig& config) {
    const double p = config.tx_power_mw();
    const double n0 = config.noise_mw();
    Association best{0, -1.0};
    for (std::size_t b = 0; b < gains.size(); ++b) {
        double interference = 0.0;
        for (std::size_t k = 0; k < gains.size(); ++k) {
            if (k != b) interference += p * gains[k];
        }
        const double sinr = p * gains[b] / (n0 + interference);
        if (sinr > best.sinr) best = {b, sinr};
    }
    return best;
}

struct NetworkSnapshot {
    std::vector<Point> bs_positions;
    std::vector<Point> user_positions;
    GainMatrix link_gain;
    std::vector<std::size_t> association;
    std::vector<double> served_sinr;

    /// SINR of user u toward BS b with all other BSs interfering.
    double sinr_toward(std::size_t u, std::size_t b, const SimConfig& config) const {
        const double p = config.tx_power_mw();
        double interference = 0.0;
        for (std::size_t k = 0; k < link_gain.n_bs; ++k) {
            if (k != b) interference += p * link_gain(u, k);
        }
        return p * link_gain(u, b) / (config.noise_mw() + interference);
    }
};

inline NetworkSnapshot associate_and_sinr(std::vector<Point> bs, std::vector<Point> users, GainMatrix gains,
                                          const SimConfig& config) {
    NetworkSnapshot snap{std::move(bs), std::move(users), std::move(gains), {}, {}};
    const std::size_t n_bs = snap.link_gain.n_bs;
    snap.association.resize(snap.link_gain.n_users);
    snap.served_sinr.resize(snap.link_gain.n_users);
    for (std::size_t u = 0; u < snap.link_gain.n_users; ++u) {
        const std::vector<double> row(snap.link_gain.gain.begin() + static_cast<std::ptrdiff_t>(u * n_bs),
                                      snap.link_gain.gain.begin() + static_cast<std::ptrdiff_t>((u + 1) * n_bs));
        const auto a = best_server(row, config);
        snap.association[u] = a.serving_bs;
        snap.served_sinr[u] = a.sinr;
    }
    return snap;
}

/// Drops users uniformly until every BS serves exactly `per_bs` of them,
/// discarding users whose best server is already full. Gives up after
/// `max_draws` users; BSs that are still short keep what they have.
inline NetworkSnapshot fill_users_per_bs(const std::vector<Point>& bs, int per_bs, const SimConfig& config,
                                         Rng& rng, std::size_t max_draws = 2'000'000) {
    NetworkSnapshot snap{bs, {}, GainMatrix{0, bs.size(), {}}, {}, {}};
    std::vector<int> load(bs.size(), 0);
    std::size_t open = bs.size();
    std::uniform_real_distribution<double> coord(0.0, config.region_side);
    for (std::size_t draw = 0; draw < max_draws && open > 0; ++draw) {
        Point p;
        p.x = coord(rng);
        p.y = coord(rng);
        const auto g = user_gains(p, bs, config, rng);
        const auto a = best_server(g, config);
        if (load[a.serving_bs] >= per_bs) continue;
        if (++load[a.serving_bs] == per_bs) --open;
        snap.user_positions.push_back(p);
        snap.link_gain.gain.insert(snap.link_gain.gain.end(), g.begin(), g.end());
        ++snap.link_gain.n_users;
        snap.association.push_back(a.serving_bs);
        snap.served_sinr.push_back(a.sinr);
    }
    return snap;
}

/// Users attached to each BS, as pairing inputs. Ids are "u<index>".
inline std::vector<std::vector<UserChannel>> users_by_bs(const NetworkSnapshot& snap) {
    std::vector<std::vector<UserChannel>> cells(snap.bs_positions.size());
    for (std::size_t u = 0; u < snap.served_sinr.size(); ++u) {
        cells[snap.association[u]].emplace_back("u" + std::to_string(u), snap.served_sinr[u]);
    }
    return cells;
}

struct AlgorithmSummary {
    Algorithm algorithm;
    double mean_asr = 0.0;        // per-BS sum rate, averaged over BSs then realizations
    double std_asr = 0.0;         // sample std over realizations
    double mean_user_rate = 0.0;  // per-user rate, averaged over users then realizations
    double std_user_rate = 0.0;
    int realizations = 0;
};

struct ExperimentResult {
    std::vector<AlgorithmSummary> algorithms;
    int realizations_used = 0;
    int empty_realizations = 0;  // no BS served any user; left out of the means
    int bs_redraws = 0;
    std::uint64_t seed = 0;

    const AlgorithmSummary& at(Algorithm a) const {
        for (const auto& s : algorithms) {
            if (s.algorithm == a) return s;
        }
        throw ConfigError("algorithm not part of this experiment");
    }
};

namespace detail {

struct RealizationSample {
    bool has_users = false;
    int bs_redraws = 0;
    std::vector<double> asr;        // per algorithm
    std::vector<double> user_rate;  // per algorithm
};

inline int resolve_threads(const SimConfig& config) {
    if (config.threads > 0) return config.threads;
    if (const char* env = std::getenv("NOMA_PAIRLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline constexpr std::uint64_t kGeometryStream = 0xFFFF'FFFF'FFFF'FFFFull;

inline RealizationSample run_realization(const SimConfig& config, const std::vector<Algorithm>& algorithms,
                                         const Deployment* fixed, std::uint64_t index) {
    Rng rng = stream_rng(config.seed, index);
    RealizationSample out;
    Deployment local;
    const Deployment* layout = fixed;
    if (!layout) {
        local = deploy(config, rng);
        out.bs_redraws = local.empty_redraws;
        layout = &local;
    }

    NetworkSnapshot snap;
    if (config.users_per_bs > 0) {
        snap = fill_users_per_bs(layout->bs, config.users_per_bs, config, rng);
    } else {
        auto gains = channel_gains(layout->bs, layout->users, config, rng);
        snap = associate_and_sinr(layout->bs, layout->users, std::move(gains), config);
    }

    const auto cells = users_by_bs(snap);
    const DrTable table = DrTable::cqi_default();
    std::size_t active = 0;
    std::size_t n_users = 0;
    for (const auto& c : cells) {
        if (!c.empty()) ++active;
        n_users += c.size();
    }
    out.asr.assign(algorithms.size(), 0.0);
    out.user_rate.assign(algorithms.size(), 0.0);
    if (active == 0) return out;
    out.has_users = true;

    for (std::size_t k = 0; k < algorithms.size(); ++k) {
        double total = 0.0;
        for (const auto& cell : cells) {
            if (cell.empty()) continue;
            const auto plan = make_plan(algorithms[k], cell, config.beta, config.split_policy);
            total += evaluate_plan(plan, config.beta, config.rate_model, table).total;
        }
        out.asr[k] = total / static_cast<double>(active);
        out.user_rate[k] = total / static_cast<double>(n_users);
    }
    return out;
}

inline void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
    mean = 0.0;
    sd = 0.0;
    if (xs.empty()) return;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace detail

/// Runs `config.realizations` independent realizations and averages the
/// per-BS sum rate of each algorithm. Realizations run in parallel on
/// private RNG streams derived from (seed, realization index) and are
/// reduced in index order, so the result does not depend on thread count.
inline ExperimentResult run_experiment(const SimConfig& config, const std::vector<Algorithm>& algorithms) {
    config.validate();
    if (algorithms.empty()) throw ConfigError("no algorithms requested");
    {
        std::set<Algorithm> seen(algorithms.begin(), algorithms.end());
        if (seen.size() != algorithms.size()) throw ConfigError("duplicate algorithm in request");
    }

    Deployment fixed;
    const Deployment* fixed_ptr = nullptr;
    ExperimentResult result;
    result.seed = config.seed;
    if (!config.geometry_redraw) {
        Rng rng = stream_rng(config.seed, detail::kGeometryStream);
        fixed = deploy(config, rng);
        result.bs_redraws = fixed.empty_redraws;
        fixed_ptr = &fixed;
    }

    const auto n = static_cast<std::size_t>(config.realizations);
    std::vector<detail::RealizationSample> samples(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            samples[i] = detail::run_realization(config, algorithms, fixed_ptr, i);
        }
    };
    const int n_threads = std::min<int>(detail::resolve_threads(config), config.realizations);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    std::vector<std::vector<double>> asr(algorithms.size());
    std::vector<std::vector<double>> rate(algorithms.size());
    for (const auto& s : samples) {
        result.bs_redraws += s.bs_redraws;
        if (!s.has_users) {
            ++result.empty_realizations;
            continue;
        }
        ++result.realizations_used;
        for (std::size_t k = 0; k < algorithms.size(); ++k) {
            asr[k].push_back(s.asr[k]);
            rate[k].push_back(s.user_rate[k]);
        }
    }
    for (std::size_t k = 0; k < algorithms.size(); ++k) {
        AlgorithmSummary sum{algorithms[k]};
        detail::mean_std(asr[k], sum.mean_asr, sum.std_asr);
        detail::mean_std(rate[k], sum.mean_user_rate, sum.std_user_rate);
        sum.realizations = result.realizations_used;
        result.algorithms.push_back(sum);
    }
    return result;
}

}  // namespace noma
