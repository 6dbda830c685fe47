#pragma once

// Exhaustive best plan for small user sets: every partial matching whose
// pairs pass the MSD test, remaining users OMA. Pair rates are evaluated
// from the closed-form SINR expressions directly.

#include <cmath>
#include <vector>

#include "noma_pairlab/bounds.hpp"
#include "noma_pairlab/pairing.hpp"

namespace oracle {

inline double oma_lr(double g) { return 0.5 * std::log2(1.0 + g); }

inline double pair_lr(double gs, double gw, double alpha, double beta) {
    const double hs = alpha * gs / (1.0 + beta * (1.0 - alpha) * gs);
    const double hw = (1.0 - alpha) * gw / (1.0 + alpha * gw);
    return std::log2(1.0 + hs) + std::log2(1.0 + hw);
}

struct BruteForce {
    const std::vector<double>& gammas;
    double beta;
    const noma::SplitPolicy& policy;
    std::vector<bool> taken;
    double best = -1.0;
    std::size_t plans = 0;

    void search(std::size_t i, double acc) {
        while (i < gammas.size() && taken[i]) ++i;
        if (i == gammas.size()) {
            ++plans;
            if (acc > best) best = acc;
            return;
        }
        taken[i] = true;
        search(i + 1, acc + oma_lr(gammas[i]));
        for (std::size_t j = i + 1; j < gammas.size(); ++j) {
            if (taken[j]) continue;
            const double gs = std::max(gammas[i], gammas[j]);
            const double gw = std::min(gammas[i], gammas[j]);
            if (!(gs - gw > noma::msd(gs, gw))) continue;
            const double alpha = noma::select_alpha(gs, gw, beta, policy).strong();
            taken[j] = true;
            search(i + 1, acc + pair_lr(gs, gw, alpha, beta));
            taken[j] = false;
        }
        taken[i] = false;
    }
};

/// Best total LR rate over all MSD-respecting plans.
inline double best_msd_plan_rate(const std::vector<double>& gammas, double beta,
                                 const noma::SplitPolicy& policy) {
    BruteForce bf{gammas, beta, policy, std::vector<bool>(gammas.size(), false)};
    bf.search(0, 0.0);
    return bf.best;
}

}  // namespace oracle
