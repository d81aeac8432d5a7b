#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "collab/matrix.hpp"

namespace collab {

/// Qualitative outcome of one collaboration pair. Gains of exactly 1 count as
/// neither win nor loss; a pair with no winner and a non-losing side is Parity.
enum class PairTag { WinWin, WinLoss, LossLoss, Parity, Insufficient };

std::string_view pair_tag_name(PairTag tag);

enum class Side { A, B };

struct PairOutcome {
    PairTag tag = PairTag::Insufficient;
    std::optional<Side> beneficiary;  // set for WinLoss only: the side with gain > 1
};

/// Classifies from the two received gains (gain_a = what A receives from B).
/// A masked side makes the pair Insufficient.
PairOutcome classify_pair(std::optional<double> gain_a, std::optional<double> gain_b);

/// Number of partners that lose (< 1) while the entity gains (> 1).
std::size_t vampirism_count(const MaskedMatrix& gain, std::string_view entity);

/// Entities whose column has at least one defined cell and every defined cell
/// above 1: partnering with them helps every observed partner.
std::set<std::string> always_positive_partners(const MaskedMatrix& gain);

/// Entities whose row has at least one defined cell and every defined cell
/// above 1: every observed collaboration lifts their own core share.
std::set<std::string> self_gainers(const MaskedMatrix& gain);

enum class Role { Donor, Acceptor, Borderline };

std::string_view role_name(Role role);

/// Role from the entity's average non-reciprocity: above +band donor, below
/// -band acceptor, otherwise borderline. Band must be non-negative.
Role classify_entity_role(double avg_nonreciprocity, double band);

struct Summary {
    std::size_t entity_count = 0;
    std::size_t pair_slots = 0;      // all unordered pairs of the ordering
    std::size_t pairs_defined = 0;   // non-masked pairs of the driving matrix
    std::size_t ratio_below_one = 0;
    std::size_t ratio_above_three = 0;
    std::size_t win_win = 0;
    std::size_t win_loss = 0;
    std::size_t loss_loss = 0;
    std::size_t parity = 0;
    std::size_t insufficient = 0;
    std::vector<std::pair<std::string, std::string>> loss_loss_pairs;
    std::map<std::string, Role> roles;  // entities with a defined average only
};

/// Aggregates pair and entity classifications. Any matrix may be null; given
/// matrices must share one ordering. Pair counts come from `gain`, ratio-band
/// counts from `ratio`, roles from `nonrec` column averages. `pairs_defined`
/// refers to `ratio` when present, otherwise to `gain`.
Summary summarize(const MaskedMatrix* ratio, const MaskedMatrix* gain,
                  const MaskedMatrix* nonrec, double borderline_band = 0.1);

}  // namespace collab
