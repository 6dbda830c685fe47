#pragma once

// Closed-form bounds on the power split and on the SIC imperfection under
// which a two-user NOMA pair beats OMA, and the minimum SINR difference
// (MSD) pairing criterion built from them.
//
// Values are returned raw. Nothing is clamped to [0, 1]: a negative
// beta bound is the signal that a split can never beat OMA.

#include <cmath>
#include <string>

#include "noma_pairlab/core_rates.hpp"
#include "noma_pairlab/errors.hpp"

namespace noma {

inline constexpr double kSingularTol = 1e-12;

namespace detail {

inline void require_positive_weak(double gamma_w) {
    if (!std::isfinite(gamma_w) || gamma_w <= 0.0) {
        throw DomainError("bounds need gamma_w > 0, got " + std::to_string(gamma_w));
    }
}

inline void require_ordered(double gamma_s, double gamma_w) {
    require_positive_weak(gamma_w);
    if (!std::isfinite(gamma_s)) throw DomainError("gamma_s must be finite");
    if (gamma_s < gamma_w) throw OrderingError("bounds need gamma_s >= gamma_w");
}

inline double checked_ratio(double num, double den, const char* what) {
    if (std::abs(den) < kSingularTol) {
        throw SingularityError(std::string(what) + ": denominator vanishes");
    }
    return num / den;
}

}  // namespace detail

/// Largest strong-user share for which the weak user still beats OMA:
/// (sqrt(1 + gamma_w) - 1) / gamma_w. Decreasing in gamma_w, below 0.5.
inline double alpha_upper(double gamma_w) {
    detail::require_positive_weak(gamma_w);
    // Rationalised form; same value, no cancellation for small gamma_w.
    return 1.0 / (std::sqrt(1.0 + gamma_w) + 1.0);
}

/// Smallest strong-user share for which the strong user beats OMA at the
/// given SIC imperfection.
inline double alpha_lower_strong(double gamma_s, double beta) {
    if (!std::isfinite(gamma_s) || gamma_s <= 0.0) {
        throw DomainError("alpha_lower_strong needs gamma_s > 0");
    }
    const double b = SicImperfection(beta).beta();
    const double root = std::sqrt(1.0 + gamma_s);
    // (root - 1) / gamma_s == 1 / (root + 1)
    return (1.0 + b * gamma_s) / ((root + 1.0) * (1.0 + b * root - b));
}

/// Lower end of the admissible power-split interval used by the MSD test:
/// 1 / (sqrt(1 + gamma_s) + 1 / sqrt(1 + gamma_w)). It lies above the sign
/// change of beta_upper_at_alpha, so beta_upper_at_alpha is positive there.
inline double alpha_lower_positivity(double gamma_s, double gamma_w) {
    detail::require_ordered(gamma_s, gamma_w);
    return 1.0 / (std::sqrt(1.0 + gamma_s) + 1.0 / std::sqrt(1.0 + gamma_w));
}

/// Largest beta for which ASR^NOMA > ASR^OMA at a fixed split alpha_s.
/// Negative for alpha_s below 1 / (1 + sqrt(1 + gamma_s) sqrt(1 + gamma_w)),
/// where no beta helps.
inline double beta_upper_at_alpha(double gamma_s, double gamma_w, double alpha_s) {
    detail::require_ordered(gamma_s, gamma_w);
    const double a = PowerSplit(alpha_s).strong();
    const double rs = std::sqrt(1.0 + gamma_s);
    const double rw = std::sqrt(1.0 + gamma_w);
    const double num = (1.0 + a * gamma_s) * rw - (1.0 + a * gamma_w) * rs;
    const double den = gamma_s * (1.0 - a) * (rs * (1.0 + a * gamma_w) - rw);
    return detail::checked_ratio(num, den, "beta_upper_at_alpha");
}

/// beta_upper_at_alpha evaluated at alpha_s = alpha_upper(gamma_w).
inline double beta_upper_star(double gamma_s, double gamma_w) {
    detail::require_ordered(gamma_s, gamma_w);
    if (gamma_s == gamma_w) return 0.0;
    const double rs = std::sqrt(1.0 + gamma_s);
    const double rw = std::sqrt(1.0 + gamma_w);
    const double num = gamma_w - gamma_s + gamma_s * rw - gamma_w * rs;
    const double den = gamma_s * (rs - 1.0) * (gamma_w - rw + 1.0);
    return detail::checked_ratio(num, den, "beta_upper_star");
}

/// Minimum SINR difference: the pair is NOMA-worthy iff
/// gamma_s - gamma_w > msd(gamma_s, gamma_w).
inline double msd(double gamma_s, double gamma_w) {
    detail::require_ordered(gamma_s, gamma_w);
    const double rs = std::sqrt(1.0 + gamma_s);
    const double rw = std::sqrt(1.0 + gamma_w);
    return gamma_s - (rw - 1.0) * (rs * rw + 1.0) / rw;
}

/// Strict MSD test. Equality is not pairable.
inline bool msd_satisfied(double gamma_s, double gamma_w) {
    if (gamma_w <= 0.0 || gamma_s < gamma_w) return false;
    return gamma_s - gamma_w > msd(gamma_s, gamma_w);
}

struct FeasibleRegion {
    double alpha_upper;
    double alpha_lower_strong;
    double alpha_lower_positivity;
    double beta_upper_at_alpha;
    double beta_upper_star;
    double msd;
    bool pairable;
};

/// All bounds for one ordered pair at a given (alpha_s, beta).
///
/// `pairable` comes from the MSD test and is cross-checked against the
/// power-split interval (alpha_lower_positivity, alpha_upper). The two are
/// algebraically the same statement; if rounding makes them disagree the
/// pair sits on the boundary and is reported as not pairable.
inline FeasibleRegion feasible_region(double gamma_s, double gamma_w, double alpha_s, double beta) {
    detail::require_ordered(gamma_s, gamma_w);
    FeasibleRegion r{};
    r.alpha_upper = alpha_upper(gamma_w);
    r.alpha_lower_strong = alpha_lower_strong(gamma_s, beta);
    r.alpha_lower_positivity = alpha_lower_positivity(gamma_s, gamma_w);
    r.beta_upper_at_alpha = beta_upper_at_alpha(gamma_s, gamma_w, alpha_s);
    r.beta_upper_star = beta_upper_star(gamma_s, gamma_w);
    r.msd = msd(gamma_s, gamma_w);
    const bool by_msd = gamma_s - gamma_w > r.msd;
    const bool by_interval = r.alpha_upper > r.alpha_lower_positivity;
    r.pairable = by_msd && by_interval;
    return r;
}

}  // namespace noma
