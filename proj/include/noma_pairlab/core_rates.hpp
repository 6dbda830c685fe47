#pragma once

// Two-user downlink NOMA link model with imperfect SIC.
//
// Every quantity here is a linear-scale SINR or a spectral efficiency in
// bits/s/Hz (log base 2). Conversion from dB happens at the edges of the
// program (CLI, network reports), never inside these functions.

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "noma_pairlab/errors.hpp"

namespace noma {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

namespace detail {

inline void require_sinr(double gamma, const char* name) {
    if (!std::isfinite(gamma) || gamma < 0.0) {
        throw DomainError(std::string(name) + " must be finite and non-negative, got " +
                          std::to_string(gamma));
    }
}

}  // namespace detail

/// One user as seen by its serving BS: an identifier and the OMA SINR.
struct UserChannel {
    std::string user_id;
    double gamma = 0.0;

    UserChannel() = default;
    UserChannel(std::string id, double g) : user_id(std::move(id)), gamma(g) {
        detail::require_sinr(gamma, "gamma");
    }

    friend bool operator==(const UserChannel&, const UserChannel&) = default;
};

/// Ordering used everywhere a user list is sorted: by SINR, ties by id.
inline bool weaker_than(const UserChannel& a, const UserChannel& b) {
    if (a.gamma != b.gamma) return a.gamma < b.gamma;
    return a.user_id < b.user_id;
}

/// Fraction of BS power given to the strong user. The weak user gets the rest.
class PowerSplit {
public:
    explicit PowerSplit(double alpha_s) : alpha_s_(alpha_s) {
        if (!(alpha_s > 0.0 && alpha_s < 1.0)) {
            throw DomainError("alpha_s must lie in (0, 1), got " + std::to_string(alpha_s));
        }
    }

    double strong() const { return alpha_s_; }
    double weak() const { return 1.0 - alpha_s_; }

    friend bool operator==(const PowerSplit&, const PowerSplit&) = default;

private:
    double alpha_s_;
};

/// Fraction of the weak user's signal left after SIC at the strong user.
class SicImperfection {
public:
    explicit SicImperfection(double beta = 0.0) : beta_(beta) {
        if (!(beta >= 0.0 && beta <= 1.0)) {
            throw DomainError("beta must lie in [0, 1], got " + std::to_string(beta));
        }
    }

    double beta() const { return beta_; }
    bool perfect() const { return beta_ == 0.0; }

private:
    double beta_;
};

struct DrEntry {
    double threshold;  // linear SINR
    double rate;       // bits/s/Hz
};

/// Staircase SINR -> rate mapping (discrete-rate model).
class DrTable {
public:
    explicit DrTable(std::vector<DrEntry> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw ConfigError("DR table must have at least one entry");
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& e = entries_[i];
            if (!std::isfinite(e.threshold) || !std::isfinite(e.rate) || e.threshold < 0.0 ||
                e.rate < 0.0) {
                throw ConfigError("DR table entry " + std::to_string(i) + " is not finite/non-negative");
            }
            if (i > 0 && !(e.threshold > entries_[i - 1].threshold && e.rate > entries_[i - 1].rate)) {
                throw ConfigError("DR table thresholds and rates must be strictly increasing");
            }
        }
    }

    const std::vector<DrEntry>& entries() const { return entries_; }

    /// 15-step table in the shape of an LTE CQI table (4-bit CQI, 10% BLER
    /// switching points). Thresholds are given in dB and stored linear.
    static DrTable cqi_default() {
        static constexpr std::array<std::pair<double, double>, 15> kCqi{{
            {-6.7, 0.1523}, {-4.7, 0.2344}, {-2.3, 0.3770}, {0.2, 0.6016}, {2.4, 0.8770},
            {4.3, 1.1758},  {5.9, 1.4766},  {8.1, 1.9141},  {10.3, 2.4063}, {11.7, 2.7305},
            {14.1, 3.3223}, {16.3, 3.9023}, {18.7, 4.5234}, {21.0, 5.1152}, {22.7, 5.5547},
        }};
        std::vector<DrEntry> entries;
        entries.reserve(kCqi.size());
        for (const auto& [db, rate] : kCqi) entries.push_back({db_to_linear(db), rate});
        return DrTable(std::move(entries));
    }

private:
    std::vector<DrEntry> entries_;
};

enum class RateModel { LR, DR };

/// OMA rate, (1/2) log2(1 + gamma). The half accounts for the orthogonal
/// resource split between two users.
inline double oma_rate(double gamma) {
    detail::require_sinr(gamma, "gamma");
    return 0.5 * std::log2(1.0 + gamma);
}

struct NomaSinr {
    double strong;
    double weak;
};

/// Post-SIC SINRs of an ordered (strong, weak) NOMA pair, written in terms
/// of the users' OMA SINRs.
inline NomaSinr noma_sinr_pair(double gamma_s, double gamma_w, PowerSplit split,
                               SicImperfection sic) {
    detail::require_sinr(gamma_s, "gamma_s");
    detail::require_sinr(gamma_w, "gamma_w");
    if (gamma_s < gamma_w) {
        throw OrderingError("strong user SINR below weak user SINR");
    }
    const double a = split.strong();
    const double b = sic.beta();
    return {a * gamma_s / (1.0 + b * (1.0 - a) * gamma_s),
            (1.0 - a) * gamma_w / (1.0 + a * gamma_w)};
}

struct PairRates {
    double strong;
    double weak;
};

/// NOMA rates log2(1 + gamma_hat). No multiplexing factor: both users
/// occupy the full resource.
inline PairRates noma_rates(double gamma_hat_s, double gamma_hat_w) {
    detail::require_sinr(gamma_hat_s, "gamma_hat_s");
    detail::require_sinr(gamma_hat_w, "gamma_hat_w");
    return {std::log2(1.0 + gamma_hat_s), std::log2(1.0 + gamma_hat_w)};
}

inline double asr_noma(double rate_s, double rate_w) { return rate_s + rate_w; }
inline double asr_noma(const PairRates& r) { return r.strong + r.weak; }

inline double asr_oma(double gamma_s, double gamma_w) {
    return oma_rate(gamma_s) + oma_rate(gamma_w);
}

/// Rate of the highest step whose threshold is <= gamma; 0 below the first
/// step. OMA users get half of the step rate.
inline double dr_rate(double gamma, const DrTable& table, bool oma_flag) {
    detail::require_sinr(gamma, "gamma");
    double rate = 0.0;
    for (const auto& e : table.entries()) {
        if (e.threshold <= gamma) {
            rate = e.rate;
        } else {
            break;
        }
    }
    return oma_flag ? 0.5 * rate : rate;
}

/// NOMA rates of a pair under either rate model.
inline PairRates pair_rates(double gamma_s, double gamma_w, PowerSplit split, SicImperfection sic,
                            RateModel model, const DrTable& table) {
    const auto sinr = noma_sinr_pair(gamma_s, gamma_w, split, sic);
    if (model == RateModel::LR) return noma_rates(sinr.strong, sinr.weak);
    return {dr_rate(sinr.strong, table, false), dr_rate(sinr.weak, table, false)};
}

/// OMA rate of a single user under either rate model.
inline double single_rate(double gamma, RateModel model, const DrTable& table) {
    return model == RateModel::LR ? oma_rate(gamma) : dr_rate(gamma, table, true);
}

}  // namespace noma
