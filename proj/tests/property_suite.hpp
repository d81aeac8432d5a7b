#pragma once

// Randomized property suite shared by the property test binary and the
// acceptance runner. Every check recomputes its expectation through the
// scalar operations, never through the matrix pipeline it is checking.

#include <cstdint>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "collab/cooccur.hpp"
#include "collab/indicators.hpp"
#include "collab/matrix.hpp"
#include "helpers.hpp"

namespace testutil {

struct PropertyStats {
    std::size_t trials = 0;
    std::size_t checks = 0;
    std::size_t failures = 0;
};

inline void property_fail(PropertyStats& stats, std::ostream& log, const std::string& what) {
    ++stats.failures;
    if (stats.failures <= 20) log << "    property failure: " << what << "\n";
}

inline PropertyStats run_property_suite(std::size_t trials, std::uint32_t seed,
                                        std::ostream& log) {
    using namespace collab;
    PropertyStats stats;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> entity_count(2, 8);
    std::uniform_int_distribution<int> record_count(0, 200);
    std::uniform_int_distribution<std::uint64_t> threshold_pick(1, 3);
    std::bernoulli_distribution coin(0.5);

    const auto expect = [&](bool ok, auto describe) {
        ++stats.checks;
        if (!ok) property_fail(stats, log, describe());
    };

    for (std::size_t trial = 0; trial < trials; ++trial) {
        ++stats.trials;
        const std::size_t n = entity_count(rng);
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back("E" + std::to_string(i));

        std::vector<RawRecord> raw;
        const int records = record_count(rng);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::uniform_int_distribution<int> member_count(1, static_cast<int>(std::min<std::size_t>(4, n)));
        for (int r = 0; r < records; ++r) {
            std::set<std::string> members;
            const int want = member_count(rng);
            while (static_cast<int>(members.size()) < want) {
                members.insert(ids[pick(rng)]);
            }
            raw.push_back({"p" + std::to_string(r), coin(rng),
                           std::vector<std::string>(members.begin(), members.end())});
        }
        const auto corpus = make_corpus(ids, raw);
        const ThresholdPolicy policy{threshold_pick(rng)};

        const auto jac_all = jaccard_matrix(corpus, ids, Stratum::All, policy);
        const auto jac_core = jaccard_matrix(corpus, ids, Stratum::Core, policy);
        const auto ratio = ratio_matrix(jac_core, jac_all);
        const auto gain = gain_matrix(corpus, ids, policy);
        const auto nonrec = nonreciprocity_matrix(gain);

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const auto all_counts = pair_counts(corpus, ids[i], ids[j], Stratum::All);
                const auto core_counts = pair_counts(corpus, ids[i], ids[j], Stratum::Core);

                // stratum monotonicity on raw counts
                expect(core_counts.n_a <= all_counts.n_a && core_counts.n_b <= all_counts.n_b &&
                           core_counts.n_ab <= all_counts.n_ab,
                       [&] { return "core counts exceed all counts at " + ids[i] + "/" + ids[j]; });

                // masks agree across strata and stay symmetric
                expect(jac_all.defined(i, j) == jac_core.defined(i, j) &&
                           jac_all.defined(i, j) == jac_all.defined(j, i),
                       [&] { return "jaccard masks disagree at " + ids[i] + "/" + ids[j]; });
                expect(gain.defined(i, j) == gain.defined(j, i),
                       [&] { return "gain mask asymmetric at " + ids[i] + "/" + ids[j]; });
                expect(nonrec.defined(i, j) == gain.defined(i, j),
                       [&] { return "gain and non-reciprocity masks differ at " + ids[i] + "/" + ids[j]; });

                // every defined cell equals its scalar composition exactly
                if (jac_all.defined(i, j)) {
                    const double expected =
                        jaccard_index(all_counts.n_a, all_counts.n_b, all_counts.n_ab);
                    expect(jac_all.value(i, j) == expected, [&] {
                        return "jaccard(all) cell differs from scalar at " + ids[i] + "/" + ids[j];
                    });
                }
                if (jac_core.defined(i, j)) {
                    const double expected =
                        jaccard_index(core_counts.n_a, core_counts.n_b, core_counts.n_ab);
                    expect(jac_core.value(i, j) == expected, [&] {
                        return "jaccard(core) cell differs from scalar at " + ids[i] + "/" + ids[j];
                    });
                }
                if (ratio.defined(i, j)) {
                    const double expected = core_ratio(jac_core.value(i, j), jac_all.value(i, j));
                    expect(ratio.value(i, j) == expected, [&] {
                        return "ratio cell differs from scalar at " + ids[i] + "/" + ids[j];
                    });
                }
                if (gain.defined(i, j)) {
                    const double expected =
                        collaborative_gain(core_counts.n_ab, all_counts.n_ab,
                                           corpus.count_core(ids[i]), corpus.count_all(ids[i]));
                    expect(gain.value(i, j) == expected, [&] {
                        return "gain cell differs from scalar at " + ids[i] + "/" + ids[j];
                    });
                }
                if (nonrec.defined(i, j)) {
                    expect(nonrec.value(i, j) + nonrec.value(j, i) == 0.0, [&] {
                        return "non-reciprocity not exactly skew at " + ids[i] + "/" + ids[j];
                    });
                    expect(nonrec.value(i, j) == gain.value(i, j) - gain.value(j, i), [&] {
                        return "non-reciprocity differs from gain difference at " + ids[i] + "/" +
                               ids[j];
                    });
                }

                // jaccard never exceeds salton; both are swap-symmetric
                if (all_counts.n_a > 0 && all_counts.n_b > 0) {
                    const double jac =
                        jaccard_index(all_counts.n_a, all_counts.n_b, all_counts.n_ab);
                    const double sal =
                        salton_measure(all_counts.n_a, all_counts.n_b, all_counts.n_ab);
                    expect(jac <= sal + 1e-9,
                           [&] { return "jaccard exceeds salton at " + ids[i] + "/" + ids[j]; });
                    expect(sal == salton_measure(all_counts.n_b, all_counts.n_a, all_counts.n_ab),
                           [&] { return "salton asymmetric at " + ids[i] + "/" + ids[j]; });

                    // scale invariance under count multiplication
                    for (const std::uint64_t k : {2ull, 3ull, 10ull}) {
                        expect(jaccard_index(k * all_counts.n_a, k * all_counts.n_b,
                                             k * all_counts.n_ab) == jac,
                               [&] { return "jaccard not scale invariant (k=" + std::to_string(k) + ")"; });
                        expect(salton_measure(k * all_counts.n_a, k * all_counts.n_b,
                                              k * all_counts.n_ab) == sal,
                               [&] { return "salton not scale invariant (k=" + std::to_string(k) + ")"; });
                    }
                }
                if (gain.defined(i, j)) {
                    const auto oc = corpus.count_core(ids[i]);
                    const auto oa = corpus.count_all(ids[i]);
                    const double g = gain.value(i, j);
                    for (const std::uint64_t k : {2ull, 3ull, 10ull}) {
                        expect(collaborative_gain(k * core_counts.n_ab, k * all_counts.n_ab,
                                                  k * oc, k * oa) == g,
                               [&] { return "gain not scale invariant (k=" + std::to_string(k) + ")"; });
                    }
                }
            }
        }

        // TSV round trip is lossless at 2-decimal precision
        for (const MaskedMatrix* m : {&jac_all, &ratio, &gain, &nonrec}) {
            std::istringstream in(to_tsv(*m));
            const auto back = matrix_from_tsv(in, m->kind());
            expect(back.labels() == m->labels(), [&] { return std::string("round trip lost labels"); });
            bool cells_ok = true;
            for (std::size_t i = 0; i < n && cells_ok; ++i) {
                for (std::size_t j = 0; j < n && cells_ok; ++j) {
                    if (i == j) continue;
                    if (back.defined(i, j) != m->defined(i, j)) cells_ok = false;
                    else if (m->defined(i, j) && back.value(i, j) != round2(m->value(i, j)))
                        cells_ok = false;
                }
            }
            expect(cells_ok, [&] { return std::string("round trip changed a cell"); });
            std::istringstream in2(to_tsv(back));
            expect(to_tsv(matrix_from_tsv(in2, m->kind())) == to_tsv(back),
                   [&] { return std::string("second round trip not byte-stable"); });
        }
    }
    return stats;
}

}  // namespace testutil
