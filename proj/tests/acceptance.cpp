// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "noma_pairlab/noma_pairlab.hpp"
#include "oracle/brute_force.hpp"
#include "oracle/fixtures.hpp"
#include "oracle/random_tuples.hpp"

using namespace noma;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    const char* id;
    const char* title;
    double budget_s;
    std::function<Outcome()> body;
};

std::string f6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

const double kGs = db_to_linear(10.48);
const double kGw = db_to_linear(4.69);
const double kGs2 = db_to_linear(8.64);
const double kGw2 = db_to_linear(3.88);

Outcome alpha_bounds() {
    const double up = alpha_upper(kGw);
    const double lo = alpha_lower_positivity(kGs, kGw);
    const bool ok = std::abs(up - 0.33) <= 0.01 && std::abs(lo - 0.25) <= 0.01;
    return {ok, "alpha_upper=" + f6(up) + " (0.33+-0.01), alpha_lower_positivity=" + f6(lo) + " (0.25+-0.01)"};
}

Outcome beta_bounds() {
    const double b1 = beta_upper_star(kGs, kGw);
    const double b2 = beta_upper_star(kGs2, kGw2);
    const bool ok = std::abs(b1 - 0.06) <= 0.01 && b2 > 0.05 && b2 < 0.2;
    return {ok, "beta_upper_star(10.48,4.69)=" + f6(b1) + " (0.06+-0.01), beta_upper_star(8.64,3.88)=" + f6(b2) +
                    " in (0.05,0.2)"};
}

const std::vector<oracle::Tuple>& tuples() {
    static const auto ts = oracle::random_tuples(20000, 20240601);
    return ts;
}

Outcome equivalences() {
    const auto a = oracle::check_weak(tuples());
    const auto b = oracle::check_strong(tuples());
    const auto c = oracle::check_sum(tuples());
    std::ostringstream d;
    d << "tuples=" << tuples().size() << " A:" << a.mismatches << "/" << a.samples << " mismatches, "
      << a.flip_failures << "/" << a.flips_checked << " flip failures; B:" << b.mismatches << "/" << b.samples
      << ", " << b.flip_failures << "/" << b.flips_checked << "; C:" << c.mismatches << "/" << c.samples << ", "
      << c.flip_failures << "/" << c.flips_checked << ", denominators<=0: " << c.denominator_failures;
    return {a.ok() && b.ok() && c.ok(), d.str()};
}

Outcome msd_interval() {
    const auto bad = oracle::msd_interval_disagreements(tuples());
    std::size_t pairable = 0;
    for (const auto& t : tuples()) pairable += msd_satisfied(t.gamma_s, t.gamma_w);
    return {bad == 0, "disagreements=" + std::to_string(bad) + " over " + std::to_string(tuples().size()) +
                          " tuples (" + std::to_string(pairable) + " pairable)"};
}

std::vector<std::pair<std::string, std::string>> id_pairs(const PairPlan& p) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& x : p.pairs) out.emplace_back(x.weak.user_id, x.strong.user_id);
    return out;
}

std::vector<std::string> single_ids(const PairPlan& p) {
    std::vector<std::string> out;
    for (const auto& u : p.singles) out.push_back(u.user_id);
    return out;
}

Outcome aup_fixtures() {
    using P = std::vector<std::pair<std::string, std::string>>;
    const auto policy = default_split_policy();
    const auto c1 = pair_aup(oracle::users_from_db(oracle::kCase1Db), 0.0, policy);
    const auto c2 = pair_aup(oracle::users_from_db(oracle::kCase2Db), 0.0, policy);
    const auto c3 = pair_aup(oracle::users_from_db(oracle::kCase3Db), 0.0, policy);
    const bool ok1 = id_pairs(c1) == P{{"U4", "U5"}, {"U3", "U6"}, {"U2", "U7"}, {"U1", "U8"}} && c1.singles.empty();
    const bool ok2 = id_pairs(c2) == P{{"U4", "U6"}, {"U3", "U5"}, {"U2", "U7"}, {"U1", "U8"}} && c2.singles.empty();
    const bool ok3 = id_pairs(c3) == P{{"U3", "U6"}, {"U2", "U7"}, {"U1", "U8"}} &&
                     single_ids(c3) == std::vector<std::string>{"U4", "U5"};
    return {ok1 && ok2 && ok3, std::string("case1 ") + (ok1 ? "ok" : "MISMATCH") + ", case2 " +
                                   (ok2 ? "ok" : "MISMATCH") + ", case3 " + (ok3 ? "ok" : "MISMATCH")};
}

struct GapStats {
    int instances = 0, within = 0, violations = 0;
    double worst = 0.0, sum = 0.0;
};

// Same instances for every beta: the generator is reseeded per call.
GapStats small_n_gaps(double beta) {
    std::mt19937_64 rng(6080);
    std::uniform_real_distribution<double> db(-5.0, 30.0);
    const auto policy = default_split_policy();
    GapStats s;
    for (int n : {6, 8}) {
        for (int k = 0; k < 200; ++k) {
            std::vector<UserChannel> users;
            std::vector<double> gammas;
            for (int i = 0; i < n; ++i) {
                users.emplace_back("u" + std::to_string(i), db_to_linear(db(rng)));
                gammas.push_back(users.back().gamma);
            }
            const auto plan = pair_aup(users, beta, policy);
            bool sound = plan.user_count() == users.size();
            for (const auto& p : plan.pairs) sound = sound && msd_satisfied(p.strong.gamma, p.weak.gamma);
            if (!sound) ++s.violations;
            const double aup = evaluate_plan(plan, beta, RateModel::LR).total;
            const double best = oracle::best_msd_plan_rate(gammas, beta, policy);
            const double gap = (best - aup) / best;
            s.worst = std::max(s.worst, gap);
            s.sum += gap;
            s.within += gap <= 0.10;
            ++s.instances;
        }
    }
    return s;
}

// Judged at perfect SIC, the pair command's default. The beta = 0.13 gap is
// reported only: there the oracle mostly picks all-OMA plans.
Outcome small_n_oracle() {
    const auto s = small_n_gaps(0.0);
    const auto lossy = small_n_gaps(0.13);
    return {s.violations == 0 && lossy.violations == 0 && s.within == s.instances,
            "beta=0: " + std::to_string(s.within) + "/" + std::to_string(s.instances) +
                " within 10% of brute force, mean gap " + f6(s.sum / s.instances) + ", worst gap " + f6(s.worst) +
                ", invariant violations " + std::to_string(s.violations + lossy.violations) +
                "; beta=0.13 (info): mean gap " + f6(lossy.sum / lossy.instances) + ", worst " + f6(lossy.worst)};
}

Outcome fig8_ordering() {
    const std::vector<Algorithm> algs{Algorithm::AUP, Algorithm::NF, Algorithm::UCGD, Algorithm::OMA};
    int checks = 0, held = 0;
    double min_aup_nf = 1e9, min_aup_ucgd = 1e9, min_oma_nf = 1e9;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SimConfig c;
        c.beta = 0.13;
        c.realizations = 80;
        c.seed = seed;
        for (int n : {8, 16, 32}) {
            c.users_per_bs = n;
            const auto r = run_experiment(c, algs);
            const double aup = r.at(Algorithm::AUP).mean_asr, nf = r.at(Algorithm::NF).mean_asr,
                         ucgd = r.at(Algorithm::UCGD).mean_asr, oma = r.at(Algorithm::OMA).mean_asr;
            min_aup_nf = std::min(min_aup_nf, aup - nf);
            min_aup_ucgd = std::min(min_aup_ucgd, aup - ucgd);
            min_oma_nf = std::min(min_oma_nf, oma - nf);
            checks += 3;
            held += (aup >= nf) + (aup >= ucgd) + (oma >= nf);
        }
    }
    return {held == checks, std::to_string(held) + "/" + std::to_string(checks) +
                                " orderings hold; min margins AUP-NF " + f6(min_aup_nf) + ", AUP-UCGD " +
                                f6(min_aup_ucgd) + ", OMA-NF " + f6(min_oma_nf)};
}

Outcome crossovers() {
    const auto beta_rows = beta_sweep(kGs, kGw, 0.32, Range{0.0, 0.3, 1e-4}.values(), RateModel::LR);
    const double beta_x = sign_change(beta_rows, [](const SweepRow& r) { return r.asr_noma - r.asr_oma; });
    const auto alpha_rows = alpha_sweep(kGs, kGw, 0.02, Range{0.0, 0.6, 1e-4}.values(), RateModel::LR);
    const double weak_x = sign_change(alpha_rows, [](const SweepRow& r) { return r.r_w_noma - r.r_w_oma; });
    const double strong_x = sign_change(alpha_rows, [](const SweepRow& r) { return r.r_s_noma - r.r_s_oma; });
    const bool ok = beta_x >= 0.05 && beta_x <= 0.08 && weak_x >= 0.32 && weak_x <= 0.34 && strong_x >= 0.24 &&
                    strong_x <= 0.27;
    return {ok, "ASR crossing beta=" + f6(beta_x) + " in [0.05,0.08]; weak crossing alpha=" + f6(weak_x) +
                    " in [0.32,0.34]; strong crossing alpha=" + f6(strong_x) + " in [0.24,0.27]"};
}

Outcome generators() {
    SimConfig c;
    Rng rng = stream_rng(99, 0);
    const int n_fading = 1'000'000;
    double sum = 0.0;
    for (int i = 0; i < n_fading; ++i) sum += draw_fading(c, rng);
    const double fading_mean = sum / n_fading;

    const int n_ppp = 10000;
    const double mean = c.bs_density * c.area();
    double count = 0.0;
    for (int i = 0; i < n_ppp; ++i) count += static_cast<double>(poisson_count(mean, rng));
    const double ppp_mean = count / n_ppp;
    const double sigma = std::sqrt(mean / n_ppp);
    const bool ok = std::abs(fading_mean - 1.0) <= 0.01 && std::abs(ppp_mean - mean) <= 3.0 * sigma;
    return {ok, "fading mean " + f6(fading_mean) + " (1+-0.01); PPP mean count " + f6(ppp_mean) + " (" + f6(mean) +
                    "+-" + f6(3.0 * sigma) + ")"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"AC1", "alpha bounds at 10.48/4.69 dB", 1.0, alpha_bounds},
        {"AC2", "beta bound at 10.48/4.69 and 8.64/3.88 dB", 1.0, beta_bounds},
        {"AC3", "equivalences A, B, C over random tuples", 10.0, equivalences},
        {"AC4", "MSD <=> non-empty split interval", 5.0, msd_interval},
        {"AC5", "A-UP structural fixtures", 1.0, aup_fixtures},
        {"AC6", "small-N brute-force oracle", 60.0, small_n_oracle},
        {"AC7", "network ASR ordering at beta=0.13", 300.0, fig8_ordering},
        {"AC8", "beta and alpha sweep crossovers", 1.0, crossovers},
        {"AC9", "fading and PPP generators", 30.0, generators},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("[%s] %s %s: %s (%.2fs / %.0fs budget%s)\n", pass ? "PASS" : "FAIL", c.id, c.title,
                    o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", OVER BUDGET");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
