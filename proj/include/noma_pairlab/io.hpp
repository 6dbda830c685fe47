#pragma once

// Text formats: users files, simulation config files, CSV/JSON reports.
//
// Files carry SINRs in dB and rates in bits/s/Hz. CSV numbers are written
// with 12 significant digits; JSON numbers round-trip exactly.

#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "noma_pairlab/bounds.hpp"
#include "noma_pairlab/core_rates.hpp"
#include "noma_pairlab/errors.hpp"
#include "noma_pairlab/netsim.hpp"
#include "noma_pairlab/pairing.hpp"
#include "noma_pairlab/sweeps.hpp"

namespace noma::io {

inline constexpr std::string_view kToolVersion = "0.3.0";
inline constexpr std::string_view kUnitsLine = "# SINR in dB, rates in bits/s/Hz";

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_number(std::string_view text, std::string_view what) {
    const std::string s = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v)) {
        throw ConfigError("bad number for " + std::string(what) + ": '" + s + "'");
    }
    return v;
}

inline long long parse_integer(std::string_view text, std::string_view what) {
    const double v = parse_number(text, what);
    if (v != std::floor(v)) throw ConfigError(std::string(what) + " must be an integer");
    return static_cast<long long>(v);
}

inline std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

// ---------------------------------------------------------------- users file

/// `user_id,gamma_db` per line; `#` starts a comment.
inline std::vector<UserChannel> parse_users(std::istream& in) {
    std::vector<UserChannel> users;
    std::set<std::string> ids;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        const std::string where = "line " + std::to_string(lineno);
        if (fields.size() != 2 || fields[0].empty()) {
            throw ConfigError(where + ": expected 'user_id,gamma_db'");
        }
        const double db = parse_number(fields[1], where + " gamma_db");
        if (!ids.insert(fields[0]).second) throw ConfigError(where + ": duplicate user id '" + fields[0] + "'");
        users.emplace_back(fields[0], db_to_linear(db));
    }
    return users;
}

// --------------------------------------------------------------- config file

struct SimulateSetup {
    SimConfig sim;
    std::vector<int> n_users;  // users-per-BS sweep; empty: one experiment
    std::optional<Range> alpha_range;
    std::optional<Range> beta_range;
    double pair_gamma_s_db = 10.48;
    double pair_gamma_w_db = 4.69;
    double alpha_sweep_beta = 0.02;
    double beta_sweep_alpha = 0.32;
};

inline RateModel parse_rate_model(std::string_view s) {
    if (s == "lr") return RateModel::LR;
    if (s == "dr") return RateModel::DR;
    throw ConfigError("rate model must be 'lr' or 'dr', got '" + std::string(s) + "'");
}

inline std::string_view to_string(RateModel m) { return m == RateModel::LR ? "lr" : "dr"; }

inline bool parse_bool(std::string_view s, std::string_view what) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("bad boolean for " + std::string(what) + ": '" + std::string(s) + "'");
}

/// `start:stop:step`
inline Range parse_range(std::string_view s, std::string_view what) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError(std::string(what) + " must be start:stop:step");
    Range r{parse_number(parts[0], what), parse_number(parts[1], what), parse_number(parts[2], what)};
    r.values();  // validates
    return r;
}

/// Flat `key = value` file. Keys mirror SimConfig field names plus the
/// sweep keys (n_users, alpha_sweep, beta_sweep, pair_gamma_s_db,
/// pair_gamma_w_db, alpha_sweep_beta, beta_sweep_alpha).
inline SimulateSetup parse_sim_config(std::istream& in) {
    SimulateSetup setup;
    auto& c = setup.sim;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(lineno);
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string val = trim(std::string_view(line).substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
        const std::string what = where + " " + key;

        if (key == "bs_density") c.bs_density = parse_number(val, what);
        else if (key == "user_density") c.user_density = parse_number(val, what);
        else if (key == "region_side") c.region_side = parse_number(val, what);
        else if (key == "tx_power_dbm") c.tx_power_dbm = parse_number(val, what);
        else if (key == "noise_dbm") c.noise_dbm = parse_number(val, what);
        else if (key == "pathloss_a") c.pathloss_a = parse_number(val, what);
        else if (key == "pathloss_b") c.pathloss_b = parse_number(val, what);
        else if (key == "fading_scale") c.fading_scale = parse_number(val, what);
        else if (key == "realizations") c.realizations = static_cast<int>(parse_integer(val, what));
        else if (key == "seed") {
            const long long s = parse_integer(val, what);
            if (s < 0) throw ConfigError(what + " must be non-negative");
            c.seed = static_cast<std::uint64_t>(s);
        }
        else if (key == "beta") c.beta = parse_number(val, what);
        else if (key == "rate_model") c.rate_model = parse_rate_model(val);
        else if (key == "split_policy") c.split_policy = SplitPolicy::parse(val);
        else if (key == "geometry_redraw") c.geometry_redraw = parse_bool(val, what);
        else if (key == "users_per_bs") c.users_per_bs = static_cast<int>(parse_integer(val, what));
        else if (key == "threads") c.threads = static_cast<int>(parse_integer(val, what));
        else if (key == "min_distance_km") c.min_distance_km = parse_number(val, what);
        else if (key == "n_users") {
            for (const auto& f : split(val, ',')) {
                const auto n = parse_integer(f, what);
                if (n <= 0) throw ConfigError(what + ": user counts must be positive");
                setup.n_users.push_back(static_cast<int>(n));
            }
        }
        else if (key == "alpha_sweep") setup.alpha_range = parse_range(val, what);
        else if (key == "beta_sweep") setup.beta_range = parse_range(val, what);
        else if (key == "pair_gamma_s_db") setup.pair_gamma_s_db = parse_number(val, what);
        else if (key == "pair_gamma_w_db") setup.pair_gamma_w_db = parse_number(val, what);
        else if (key == "alpha_sweep_beta") setup.alpha_sweep_beta = parse_number(val, what);
        else if (key == "beta_sweep_alpha") setup.beta_sweep_alpha = parse_number(val, what);
        else throw ConfigError(where + ": unknown key '" + key + "'");
    }
    c.validate();
    if (setup.pair_gamma_s_db < setup.pair_gamma_w_db) {
        throw ConfigError("pair_gamma_s_db must be >= pair_gamma_w_db");
    }
    if (!(setup.alpha_sweep_beta >= 0.0 && setup.alpha_sweep_beta <= 1.0)) {
        throw ConfigError("alpha_sweep_beta must lie in [0, 1]");
    }
    if (!(setup.beta_sweep_alpha > 0.0 && setup.beta_sweep_alpha < 1.0)) {
        throw ConfigError("beta_sweep_alpha must lie in (0, 1)");
    }
    return setup;
}

inline nlohmann::json to_json(const SimulateSetup& setup) {
    const auto& c = setup.sim;
    nlohmann::json j = {
        {"bs_density", c.bs_density},
        {"user_density", c.user_density},
        {"region_side", c.region_side},
        {"tx_power_dbm", c.tx_power_dbm},
        {"noise_dbm", c.noise_dbm},
        {"pathloss_a", c.pathloss_a},
        {"pathloss_b", c.pathloss_b},
        {"fading_scale", c.fading_scale},
        {"realizations", c.realizations},
        {"seed", c.seed},
        {"beta", c.beta},
        {"rate_model", to_string(c.rate_model)},
        {"split_policy", c.split_policy.to_string()},
        {"geometry_redraw", c.geometry_redraw},
        {"users_per_bs", c.users_per_bs},
        {"threads", c.threads},
        {"min_distance_km", c.min_distance_km},
        {"n_users", setup.n_users},
        {"pair_gamma_s_db", setup.pair_gamma_s_db},
        {"pair_gamma_w_db", setup.pair_gamma_w_db},
        {"alpha_sweep_beta", setup.alpha_sweep_beta},
        {"beta_sweep_alpha", setup.beta_sweep_alpha},
    };
    auto range = [](const std::optional<Range>& r) -> nlohmann::json {
        if (!r) return nullptr;
        return {{"start", r->start}, {"stop", r->stop}, {"step", r->step}};
    };
    j["alpha_sweep"] = range(setup.alpha_range);
    j["beta_sweep"] = range(setup.beta_range);
    return j;
}

// ------------------------------------------------------------------- reports

struct BoundsReport {
    double gamma_s;  // linear
    double gamma_w;
    double alpha;
    double beta;
    FeasibleRegion region;
};

inline BoundsReport make_bounds_report(double gamma_s, double gamma_w, std::optional<double> alpha,
                                       double beta) {
    const double a = alpha.value_or(alpha_upper(gamma_w));
    return {gamma_s, gamma_w, a, beta, feasible_region(gamma_s, gamma_w, a, beta)};
}

inline nlohmann::json to_json(const BoundsReport& r) {
    return {
        {"gamma_s_db", linear_to_db(r.gamma_s)},
        {"gamma_w_db", linear_to_db(r.gamma_w)},
        {"alpha", r.alpha},
        {"beta", r.beta},
        {"alpha_upper", r.region.alpha_upper},
        {"alpha_lower_positivity", r.region.alpha_lower_positivity},
        {"alpha_lower_strong", r.region.alpha_lower_strong},
        {"beta_upper_star", r.region.beta_upper_star},
        {"beta_upper_at_alpha", r.region.beta_upper_at_alpha},
        {"msd", r.region.msd},
        {"pairable", r.region.pairable},
    };
}

inline void write_bounds_csv(std::ostream& out, const BoundsReport& r) {
    out << kUnitsLine << '\n'
        << "gamma_s_db,gamma_w_db,alpha,beta,alpha_upper,alpha_lower_positivity,alpha_lower_strong,"
           "beta_upper_star,beta_upper_at_alpha,msd,pairable\n"
        << fmt(linear_to_db(r.gamma_s)) << ',' << fmt(linear_to_db(r.gamma_w)) << ',' << fmt(r.alpha) << ','
        << fmt(r.beta) << ',' << fmt(r.region.alpha_upper) << ',' << fmt(r.region.alpha_lower_positivity)
        << ',' << fmt(r.region.alpha_lower_strong) << ',' << fmt(r.region.beta_upper_star) << ','
        << fmt(r.region.beta_upper_at_alpha) << ',' << fmt(r.region.msd) << ','
        << (r.region.pairable ? "true" : "false") << '\n';
}

struct PlanSettings {
    Algorithm algorithm;
    double beta;
    RateModel rate_model;
    SplitPolicy split_policy;
};

inline nlohmann::json to_json(const PairPlan& plan, const RateReport& report, const PlanSettings& s) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : plan.pairs) {
        pairs.push_back({{"weak", p.weak.user_id},
                         {"strong", p.strong.user_id},
                         {"gamma_weak_db", linear_to_db(p.weak.gamma)},
                         {"gamma_strong_db", linear_to_db(p.strong.gamma)},
                         {"alpha_s", p.split.strong()}});
    }
    nlohmann::json singles = nlohmann::json::array();
    for (const auto& u : plan.singles) singles.push_back({{"user_id", u.user_id}, {"gamma_db", linear_to_db(u.gamma)}});
    nlohmann::json users = nlohmann::json::array();
    for (const auto& u : report.users) {
        users.push_back({{"user_id", u.user_id},
                         {"gamma_db", linear_to_db(u.gamma)},
                         {"role", to_string(u.role)},
                         {"rate", u.rate},
                         {"oma_rate", u.oma_rate}});
    }
    return {{"algorithm", to_string(s.algorithm)},
            {"beta", s.beta},
            {"rate_model", to_string(s.rate_model)},
            {"split_policy", s.split_policy.to_string()},
            {"pairs", pairs},
            {"singles", singles},
            {"users", users},
            {"total_rate", report.total},
            {"oma_total_rate", report.oma_total}};
}

/// One row per user; pair members name their partner and the split.
inline void write_plan_csv(std::ostream& out, const PairPlan& plan, const RateReport& report,
                           const PlanSettings& s) {
    out << kUnitsLine << '\n'
        << "# algorithm=" << to_string(s.algorithm) << " beta=" << fmt(s.beta)
        << " rate_model=" << to_string(s.rate_model) << " split_policy=" << s.split_policy.to_string() << '\n'
        << "user_id,gamma_db,role,partner,alpha_s,rate,oma_rate\n";
    auto partner_of = [&](const std::string& id) -> std::pair<std::string, std::string> {
        for (const auto& p : plan.pairs) {
            if (p.weak.user_id == id) return {p.strong.user_id, fmt(p.split.strong())};
            if (p.strong.user_id == id) return {p.weak.user_id, fmt(p.split.strong())};
        }
        return {"", ""};
    };
    for (const auto& u : report.users) {
        const auto [partner, alpha] = partner_of(u.user_id);
        out << u.user_id << ',' << fmt(linear_to_db(u.gamma)) << ',' << to_string(u.role) << ',' << partner
            << ',' << alpha << ',' << fmt(u.rate) << ',' << fmt(u.oma_rate) << '\n';
    }
    out << "# total_rate=" << fmt(report.total) << " oma_total_rate=" << fmt(report.oma_total) << '\n';
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kUnitsLine << '\n' << "sweep_var,value,r_s_noma,r_w_noma,r_s_oma,r_w_oma,asr_noma,asr_oma\n";
    for (const auto& r : rows) {
        out << r.sweep_var << ',' << fmt(r.value) << ',' << fmt(r.r_s_noma) << ',' << fmt(r.r_w_noma) << ','
            << fmt(r.r_s_oma) << ',' << fmt(r.r_w_oma) << ',' << fmt(r.asr_noma) << ',' << fmt(r.asr_oma)
            << '\n';
    }
}

inline void write_users_sweep_csv(std::ostream& out, const std::vector<UsersSweepRow>& rows) {
    out << "# rates in bits/s/Hz; mean_asr is the per-BS sum rate\n"
        << "n_users,algorithm,mean_asr,std_asr,realizations,seed\n";
    for (const auto& r : rows) {
        out << r.n_users << ',' << to_string(r.algorithm) << ',' << fmt(r.mean_asr) << ',' << fmt(r.std_asr)
            << ',' << r.realizations << ',' << r.seed << '\n';
    }
}

}  // namespace noma::io
