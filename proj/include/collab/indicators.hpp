#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "collab/errors.hpp"

namespace collab {

namespace detail {
inline void require_joint_bound(std::uint64_t n_a, std::uint64_t n_b, std::uint64_t n_ab) {
    if (n_ab > n_a || n_ab > n_b) {
        throw ValidationError("joint count " + std::to_string(n_ab) +
                              " exceeds a marginal count (" + std::to_string(n_a) + ", " +
                              std::to_string(n_b) + ")");
    }
}
}  // namespace detail

/// Jaccard index on the 0-100 scale: 100 * n_ab / (n_a + n_b - n_ab).
/// Undefined when the union is empty.
inline double jaccard_index(std::uint64_t n_a, std::uint64_t n_b, std::uint64_t n_ab) {
    detail::require_joint_bound(n_a, n_b, n_ab);
    const std::uint64_t union_size = n_a + n_b - n_ab;
    if (union_size == 0) throw IndicatorError("jaccard undefined: empty union");
    return 100.0 * static_cast<double>(n_ab) / static_cast<double>(union_size);
}

/// Salton (cosine) measure on the 0-100 scale: 100 * n_ab / sqrt(n_a * n_b).
/// Computed as 100 * sqrt(n_ab^2 / (n_a * n_b)) so that multiplying all three
/// counts by the same integer leaves the result bit-identical.
inline double salton_measure(std::uint64_t n_a, std::uint64_t n_b, std::uint64_t n_ab) {
    detail::require_joint_bound(n_a, n_b, n_ab);
    if (n_a == 0 || n_b == 0) throw IndicatorError("salton undefined: an entity has no documents");
    const double num = static_cast<double>(n_ab) * static_cast<double>(n_ab);
    const double den = static_cast<double>(n_a) * static_cast<double>(n_b);
    return 100.0 * std::sqrt(num / den);
}

/// Ratio of a core-stratum Jaccard to the whole-corpus Jaccard for the same pair.
inline double core_ratio(double jaccard_core, double jaccard_all) {
    if (!(jaccard_all > 0.0)) throw IndicatorError("core ratio undefined: whole-corpus jaccard is zero");
    return jaccard_core / jaccard_all;
}

/// Collaborative gain g(A<-B): core share of the joint A&B documents divided by
/// A's own core share. 1 means parity with A's own output profile.
inline double collaborative_gain(std::uint64_t joint_core, std::uint64_t joint_all,
                                 std::uint64_t own_core, std::uint64_t own_all) {
    if (joint_all == 0) throw IndicatorError("gain undefined: no joint documents");
    if (own_all == 0) throw IndicatorError("gain undefined: entity has no documents");
    if (own_core == 0) throw IndicatorError("gain undefined: entity has no core documents");
    detail::require_joint_bound(joint_all, joint_all, joint_core);
    const double joint_share = static_cast<double>(joint_core) / static_cast<double>(joint_all);
    const double own_share = static_cast<double>(own_core) / static_cast<double>(own_all);
    return joint_share / own_share;
}

/// Difference between the joint documents' main-stratum share and an entity's
/// own share, in percentage points, with the multiplicative gain ratio as a
/// companion reading (absent when the entity has no main-stratum documents).
struct ShareDelta {
    double points = 0.0;
    std::optional<double> ratio;
};

inline ShareDelta share_delta(std::uint64_t joint_main, std::uint64_t joint_all,
                              std::uint64_t own_main, std::uint64_t own_all) {
    if (joint_all == 0 || own_all == 0) throw IndicatorError("share delta undefined: empty denominator");
    const double joint_share = static_cast<double>(joint_main) / static_cast<double>(joint_all);
    const double own_share = static_cast<double>(own_main) / static_cast<double>(own_all);
    ShareDelta d;
    d.points = 100.0 * joint_share - 100.0 * own_share;
    if (own_main > 0) d.ratio = joint_share / own_share;
    return d;
}

}  // namespace collab
