#pragma once

// User pairing for two-user downlink NOMA: the adaptive MSD-gated scheme
// (A-UP), the near-far and uniform-gain-difference baselines, power-split
// selection inside the feasible interval, and plan evaluation.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noma_pairlab/bounds.hpp"
#include "noma_pairlab/core_rates.hpp"
#include "noma_pairlab/errors.hpp"

namespace noma {

struct NomaPair {
    UserChannel weak;
    UserChannel strong;
    PowerSplit split;
};

struct PairPlan {
    std::vector<NomaPair> pairs;
    std::vector<UserChannel> singles;

    std::size_t user_count() const { return 2 * pairs.size() + singles.size(); }
};

class SplitPolicy {
public:
    enum class Mode { Midpoint, GridArgmax };

    static SplitPolicy midpoint() { return SplitPolicy(Mode::Midpoint, 0); }
    static SplitPolicy grid(int points) {
        if (points < 2) throw ConfigError("grid split policy needs at least 2 points");
        return SplitPolicy(Mode::GridArgmax, points);
    }

    Mode mode() const { return mode_; }
    int grid_points() const { return grid_points_; }

    /// "midpoint" or "grid:<n>".
    static SplitPolicy parse(std::string_view text) {
        if (text == "midpoint") return midpoint();
        if (text.starts_with("grid:")) {
            const std::string digits(text.substr(5));
            std::size_t used = 0;
            int n = 0;
            try {
                n = std::stoi(digits, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != digits.size()) {
                throw ConfigError("bad grid point count in split policy '" + std::string(text) + "'");
            }
            return grid(n);
        }
        throw ConfigError("unknown split policy '" + std::string(text) + "'");
    }

    std::string to_string() const {
        return mode_ == Mode::Midpoint ? "midpoint" : "grid:" + std::to_string(grid_points_);
    }

private:
    SplitPolicy(Mode m, int n) : mode_(m), grid_points_(n) {}

    Mode mode_;
    int grid_points_;
};

inline SplitPolicy default_split_policy() { return SplitPolicy::grid(101); }

/// Power split strictly inside (alpha_lower_positivity, alpha_upper).
/// Grid mode scans `grid_points` interior points of the open interval and
/// keeps the first one maximising the LR sum rate at the given beta.
inline PowerSplit select_alpha(double gamma_s, double gamma_w, double beta, const SplitPolicy& policy) {
    const double hi = alpha_upper(gamma_w);
    const double lo = alpha_lower_positivity(gamma_s, gamma_w);
    if (!(hi > lo)) {
        throw FeasibilityError("empty power-split interval for pair (" + std::to_string(gamma_s) + ", " +
                               std::to_string(gamma_w) + ")");
    }
    if (policy.mode() == SplitPolicy::Mode::Midpoint) return PowerSplit(0.5 * (lo + hi));

    const SicImperfection sic(beta);
    const int n = policy.grid_points();
    double best_alpha = 0.0;
    double best_asr = -1.0;
    for (int k = 1; k <= n; ++k) {
        const double alpha = lo + (hi - lo) * k / (n + 1);
        const auto sinr = noma_sinr_pair(gamma_s, gamma_w, PowerSplit(alpha), sic);
        const double asr = asr_noma(noma_rates(sinr.strong, sinr.weak));
        if (asr > best_asr) {
            best_asr = asr;
            best_alpha = alpha;
        }
    }
    return PowerSplit(best_alpha);
}

/// Split for pairs formed without the MSD gate (baselines). Falls back to
/// just below alpha_upper when the interval is empty.
inline PowerSplit select_alpha_or_clamp(double gamma_s, double gamma_w, double beta,
                                        const SplitPolicy& policy) {
    if (alpha_upper(gamma_w) > alpha_lower_positivity(gamma_s, gamma_w)) {
        return select_alpha(gamma_s, gamma_w, beta, policy);
    }
    return PowerSplit(alpha_upper(gamma_w) * (1.0 - 1e-6));
}

inline std::vector<UserChannel> sorted_ascending(std::vector<UserChannel> users) {
    std::stable_sort(users.begin(), users.end(), weaker_than);
    return users;
}

/// Two stacks for A-UP, index 0 being the top of each stack.
/// g1: lower half, strongest first. g2: upper half, weakest first.
struct GroupSplit {
    std::vector<UserChannel> g1;
    std::vector<UserChannel> g2;
    std::optional<UserChannel> median;  // odd N only; always OMA
};

inline GroupSplit split_groups(const std::vector<UserChannel>& users) {
    auto sorted = sorted_ascending(users);
    GroupSplit groups;
    const std::size_t half = sorted.size() / 2;
    if (sorted.size() % 2 == 1) groups.median = sorted[half];
    groups.g1.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(half));
    std::reverse(groups.g1.begin(), groups.g1.end());
    groups.g2.assign(sorted.end() - static_cast<std::ptrdiff_t>(half), sorted.end());
    return groups;
}

/// Adaptive user pairing.
///
/// G1 users are taken from the top of their stack. Each one is matched with
/// the first unused G2 user (from the top) that satisfies the MSD test; G2
/// users passed over stay available for later G1 users. A G1 user with no
/// admissible partner becomes OMA and takes the current top of G2 with it,
/// so that the strongest G2 users stay available for the weakest G1 users.
/// G2 users still unused at the end are OMA.
inline PairPlan pair_aup(const GroupSplit& groups, double beta, const SplitPolicy& policy) {
    PairPlan plan;
    const auto& g1 = groups.g1;
    const auto& g2 = groups.g2;
    std::vector<bool> used(g2.size(), false);
    std::size_t top = 0;

    for (const auto& weak : g1) {
        while (top < g2.size() && used[top]) ++top;
        if (top == g2.size()) {
            plan.singles.push_back(weak);
            continue;
        }
        std::optional<std::size_t> match;
        for (std::size_t j = top; j < g2.size(); ++j) {
            if (!used[j] && msd_satisfied(g2[j].gamma, weak.gamma)) {
                match = j;
                break;
            }
        }
        if (match) {
            used[*match] = true;
            const auto& strong = g2[*match];
            plan.pairs.push_back({weak, strong, select_alpha(strong.gamma, weak.gamma, beta, policy)});
        } else {
            plan.singles.push_back(weak);
            plan.singles.push_back(g2[top]);
            used[top] = true;
        }
    }
    for (std::size_t j = 0; j < g2.size(); ++j) {
        if (!used[j]) plan.singles.push_back(g2[j]);
    }
    if (groups.median) plan.singles.push_back(*groups.median);
    std::stable_sort(plan.singles.begin(), plan.singles.end(), weaker_than);
    return plan;
}

inline PairPlan pair_aup(const std::vector<UserChannel>& users, double beta, const SplitPolicy& policy) {
    return pair_aup(split_groups(users), beta, policy);
}

namespace detail {

inline NomaPair unconditional_pair(const UserChannel& a, const UserChannel& b, double beta,
                                   const SplitPolicy& policy) {
    const bool a_weaker = weaker_than(a, b);
    const UserChannel& weak = a_weaker ? a : b;
    const UserChannel& strong = a_weaker ? b : a;
    if (weak.gamma <= 0.0) {
        // Bounds are undefined at zero SINR; any split is as good as another.
        return {weak, strong, PowerSplit(0.5 * (1.0 - 1e-6))};
    }
    return {weak, strong, select_alpha_or_clamp(strong.gamma, weak.gamma, beta, policy)};
}

}  // namespace detail

/// Near-far baseline: i-th weakest with i-th strongest, no MSD gate.
inline PairPlan pair_near_far(const std::vector<UserChannel>& users, double beta,
                              const SplitPolicy& policy) {
    const auto sorted = sorted_ascending(users);
    const std::size_t n = sorted.size();
    PairPlan plan;
    for (std::size_t i = 0; i < n / 2; ++i) {
        plan.pairs.push_back(detail::unconditional_pair(sorted[i], sorted[n - 1 - i], beta, policy));
    }
    if (n % 2 == 1) plan.singles.push_back(sorted[n / 2]);
    return plan;
}

/// Uniform channel gain difference baseline: i-th user of the lower half
/// with the i-th user of the upper half, no MSD gate. Odd N drops the
/// median to OMA first.
inline PairPlan pair_ucgd(const std::vector<UserChannel>& users, double beta, const SplitPolicy& policy) {
    auto sorted = sorted_ascending(users);
    PairPlan plan;
    if (sorted.size() % 2 == 1) {
        const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
        plan.singles.push_back(*mid);
        sorted.erase(mid);
    }
    const std::size_t half = sorted.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        plan.pairs.push_back(detail::unconditional_pair(sorted[i], sorted[i + half], beta, policy));
    }
    return plan;
}

inline PairPlan all_oma(const std::vector<UserChannel>& users) {
    return {{}, sorted_ascending(users)};
}

enum class Algorithm { AUP, NF, UCGD, OMA };

inline std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::AUP: return "aup";
        case Algorithm::NF: return "nf";
        case Algorithm::UCGD: return "ucgd";
        case Algorithm::OMA: return "oma";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view text) {
    if (text == "aup") return Algorithm::AUP;
    if (text == "nf") return Algorithm::NF;
    if (text == "ucgd") return Algorithm::UCGD;
    if (text == "oma") return Algorithm::OMA;
    throw ConfigError("unknown algorithm '" + std::string(text) + "'");
}

inline PairPlan make_plan(Algorithm algorithm, const std::vector<UserChannel>& users, double beta,
                          const SplitPolicy& policy) {
    switch (algorithm) {
        case Algorithm::AUP: return pair_aup(users, beta, policy);
        case Algorithm::NF: return pair_near_far(users, beta, policy);
        case Algorithm::UCGD: return pair_ucgd(users, beta, policy);
        case Algorithm::OMA: return all_oma(users);
    }
    return all_oma(users);
}

enum class Role { Strong, Weak, Oma };

inline std::string_view to_string(Role r) {
    switch (r) {
        case Role::Strong: return "strong";
        case Role::Weak: return "weak";
        case Role::Oma: return "oma";
    }
    return "?";
}

struct UserRate {
    std::string user_id;
    double gamma;
    Role role;
    double rate;      // under the plan
    double oma_rate;  // same user served OMA, same rate model
};

struct RateReport {
    std::vector<UserRate> users;
    double total = 0.0;
    double oma_total = 0.0;
};

inline RateReport evaluate_plan(const PairPlan& plan, double beta, RateModel model,
                                const DrTable& table = DrTable::cqi_default()) {
    const SicImperfection sic(beta);
    RateReport report;
    auto add = [&](const UserChannel& u, Role role, double rate) {
        const double oma = single_rate(u.gamma, model, table);
        report.users.push_back({u.user_id, u.gamma, role, rate, oma});
        report.total += rate;
        report.oma_total += oma;
    };
    for (const auto& p : plan.pairs) {
        const auto r = pair_rates(p.strong.gamma, p.weak.gamma, p.split, sic, model, table);
        add(p.weak, Role::Weak, r.weak);
        add(p.strong, Role::Strong, r.strong);
    }
    for (const auto& u : plan.singles) add(u, Role::Oma, single_rate(u.gamma, model, table));
    return report;
}

}  // namespace noma
