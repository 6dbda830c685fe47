#pragma once

// Single-pair parameter sweeps (power split, SIC imperfection) and the
// users-per-BS sweep over the network simulator.

#include <cmath>
#include <string>
#include <vector>

#include "noma_pairlab/core_rates.hpp"
#include "noma_pairlab/errors.hpp"
#include "noma_pairlab/netsim.hpp"

namespace noma {

struct SweepRow {
    std::string sweep_var;  // "alpha" or "beta"
    double value;
    double r_s_noma;
    double r_w_noma;
    double r_s_oma;
    double r_w_oma;
    double asr_noma;
    double asr_oma;
};

/// Inclusive arithmetic range; the endpoint is kept when it lands on the
/// grid up to rounding.
struct Range {
    double start;
    double stop;
    double step;

    std::vector<double> values() const {
        if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
            throw ConfigError("range needs start <= stop and step > 0");
        }
        std::vector<double> out;
        const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
        for (long long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
};

inline SweepRow sweep_point(const char* var, double value, double gamma_s, double gamma_w, double alpha,
                            double beta, RateModel model, const DrTable& table) {
    const auto noma = pair_rates(gamma_s, gamma_w, PowerSplit(alpha), SicImperfection(beta), model, table);
    const double oma_s = single_rate(gamma_s, model, table);
    const double oma_w = single_rate(gamma_w, model, table);
    return {var, value, noma.strong, noma.weak, oma_s, oma_w, noma.strong + noma.weak, oma_s + oma_w};
}

/// Rates of one pair as alpha_s varies at fixed beta. Values outside (0, 1)
/// are skipped.
inline std::vector<SweepRow> alpha_sweep(double gamma_s, double gamma_w, double beta,
                                         const std::vector<double>& alphas, RateModel model,
                                         const DrTable& table = DrTable::cqi_default()) {
    std::vector<SweepRow> rows;
    for (double a : alphas) {
        if (a <= 0.0 || a >= 1.0) continue;
        rows.push_back(sweep_point("alpha", a, gamma_s, gamma_w, a, beta, model, table));
    }
    return rows;
}

/// Rates of one pair as beta varies at fixed alpha_s. Values outside
/// [0, 1] are skipped.
inline std::vector<SweepRow> beta_sweep(double gamma_s, double gamma_w, double alpha,
                                        const std::vector<double>& betas, RateModel model,
                                        const DrTable& table = DrTable::cqi_default()) {
    std::vector<SweepRow> rows;
    for (double b : betas) {
        if (b < 0.0 || b > 1.0) continue;
        rows.push_back(sweep_point("beta", b, gamma_s, gamma_w, alpha, b, model, table));
    }
    return rows;
}

/// First sweep value at which f(row) changes sign relative to the first
/// row, linearly interpolated between the bracketing rows. NaN if no
/// change.
template <class F>
double sign_change(const std::vector<SweepRow>& rows, F&& f) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double prev = f(rows[i - 1]);
        const double cur = f(rows[i]);
        if ((prev > 0.0) != (cur > 0.0)) {
            if (cur == prev) return rows[i].value;
            return rows[i - 1].value + (rows[i].value - rows[i - 1].value) * prev / (prev - cur);
        }
    }
    return std::nan("");
}

struct UsersSweepRow {
    int n_users;
    Algorithm algorithm;
    double mean_asr;
    double std_asr;
    int realizations;
    std::uint64_t seed;
};

/// One experiment per users-per-BS value; same seed for each so the BS
/// layouts are shared across the sweep.
inline std::vector<UsersSweepRow> users_sweep(SimConfig config, const std::vector<int>& n_users,
                                              const std::vector<Algorithm>& algorithms) {
    std::vector<UsersSweepRow> rows;
    for (int n : n_users) {
        if (n <= 0) throw ConfigError("users per BS must be positive");
        config.users_per_bs = n;
        const auto res = run_experiment(config, algorithms);
        for (const auto& s : res.algorithms) {
            rows.push_back({n, s.algorithm, s.mean_asr, s.std_asr, s.realizations, config.seed});
        }
    }
    return rows;
}

}  // namespace noma
