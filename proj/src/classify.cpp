#include "collab/classify.hpp"

#include <algorithm>

namespace collab {

std::string_view pair_tag_name(PairTag tag) {
    switch (tag) {
        case PairTag::WinWin: return "win-win";
        case PairTag::WinLoss: return "win-loss";
        case PairTag::LossLoss: return "loss-loss";
        case PairTag::Parity: return "parity";
        case PairTag::Insufficient: return "insufficient";
    }
    return "insufficient";
}

std::string_view role_name(Role role) {
    switch (role) {
        case Role::Donor: return "donor";
        case Role::Acceptor: return "acceptor";
        case Role::Borderline: return "borderline";
    }
    return "borderline";
}

PairOutcome classify_pair(std::optional<double> gain_a, std::optional<double> gain_b) {
    if (!gain_a || !gain_b) return {PairTag::Insufficient, std::nullopt};
    const bool a_wins = *gain_a > 1.0;
    const bool b_wins = *gain_b > 1.0;
    if (a_wins && b_wins) return {PairTag::WinWin, std::nullopt};
    if (a_wins) return {PairTag::WinLoss, Side::A};
    if (b_wins) return {PairTag::WinLoss, Side::B};
    if (*gain_a < 1.0 && *gain_b < 1.0) return {PairTag::LossLoss, std::nullopt};
    // No winner and at least one side at exactly 1: neither reciprocal gain
    // nor mutual loss.
    return {PairTag::Parity, std::nullopt};
}

std::size_t vampirism_count(const MaskedMatrix& gain, std::string_view entity) {
    const auto j = gain.require_index(entity);
    std::size_t count = 0;
    for (std::size_t i = 0; i < gain.size(); ++i) {
        if (i == j) continue;
        const auto received = gain.cell(j, i);
        const auto given = gain.cell(i, j);
        if (received && given && *received > 1.0 && *given < 1.0) ++count;
    }
    return count;
}

std::set<std::string> always_positive_partners(const MaskedMatrix& gain) {
    std::set<std::string> out;
    const std::size_t n = gain.size();
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t defined = 0;
        bool all_above_one = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            if (const auto v = gain.cell(i, j)) {
                ++defined;
                all_above_one = all_above_one && *v > 1.0;
            }
        }
        if (defined > 0 && all_above_one) out.insert(gain.labels()[j]);
    }
    return out;
}

std::set<std::string> self_gainers(const MaskedMatrix& gain) {
    std::set<std::string> out;
    const std::size_t n = gain.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t defined = 0;
        bool all_above_one = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (const auto v = gain.cell(i, j)) {
                ++defined;
                all_above_one = all_above_one && *v > 1.0;
            }
        }
        if (defined > 0 && all_above_one) out.insert(gain.labels()[i]);
    }
    return out;
}

Role classify_entity_role(double avg_nonreciprocity, double band) {
    if (band < 0.0) throw ValidationError("borderline band must be non-negative");
    if (avg_nonreciprocity > band) return Role::Donor;
    if (avg_nonreciprocity < -band) return Role::Acceptor;
    return Role::Borderline;
}

Summary summarize(const MaskedMatrix* ratio, const MaskedMatrix* gain, const MaskedMatrix* nonrec,
                  double borderline_band) {
    const MaskedMatrix* first = ratio ? ratio : (gain ? gain : nonrec);
    if (!first) return {};
    for (const MaskedMatrix* m : {ratio, gain, nonrec}) {
        if (m && m->labels() != first->labels()) {
            throw ValidationError("summary inputs use different orderings");
        }
    }

    Summary s;
    const std::size_t n = first->size();
    s.entity_count = n;
    s.pair_slots = n < 2 ? 0 : n * (n - 1) / 2;

    const MaskedMatrix* driving = ratio ? ratio : gain;
    if (driving) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (driving->defined(i, j) && driving->defined(j, i)) ++s.pairs_defined;
            }
        }
    }

    if (ratio) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto v = ratio->cell(i, j);
                if (!v || !ratio->defined(j, i)) continue;
                if (*v < 1.0) ++s.ratio_below_one;
                if (*v > 3.0) ++s.ratio_above_three;
            }
        }
    }

    if (gain) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto outcome = classify_pair(gain->cell(i, j), gain->cell(j, i));
                switch (outcome.tag) {
                    case PairTag::WinWin: ++s.win_win; break;
                    case PairTag::WinLoss: ++s.win_loss; break;
                    case PairTag::LossLoss:
                        ++s.loss_loss;
                        s.loss_loss_pairs.emplace_back(gain->labels()[i], gain->labels()[j]);
                        break;
                    case PairTag::Parity: ++s.parity; break;
                    case PairTag::Insufficient: ++s.insufficient; break;
                }
            }
        }
    }

    if (nonrec) {
        for (const auto& [label, avg] : column_averages(*nonrec)) {
            s.roles.emplace(label, classify_entity_role(avg, borderline_band));
        }
    }
    return s;
}

}  // namespace collab
