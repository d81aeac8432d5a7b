#include <doctest.h>

#include <sstream>

#include "collab/indicators.hpp"
#include "collab/matrix.hpp"
#include "helpers.hpp"

using namespace collab;

namespace {

MaskedMatrix two_by_two(double ab, double ba, MatrixKind kind = MatrixKind::Asymmetric) {
    MaskedMatrix m({"X", "Y"}, kind);
    m.set(0, 1, ab);
    m.set(1, 0, ba);
    return m;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("MaskedMatrix basics") {
    MaskedMatrix m({"A", "B"}, MatrixKind::Symmetric);
    CHECK_FALSE(m.defined(0, 1));
    m.set(0, 1, 2.5);
    CHECK(m.defined(0, 1));
    CHECK(m.value(0, 1) == 2.5);
    CHECK_FALSE(m.cell(1, 0).has_value());
    CHECK_THROWS_AS(m.value(1, 0), ValidationError);
    CHECK_THROWS_AS(m.set(0, 0, 1.0), ValidationError);
    CHECK_THROWS_AS(m.value(0, 5), ValidationError);
    m.mask(0, 1);
    CHECK_FALSE(m.defined(0, 1));
    CHECK(m.require_index("B") == 1);
    CHECK_THROWS_AS(m.require_index("Z"), ValidationError);
}

TEST_CASE("jaccard_matrix on C0 with threshold 1") {
    const auto corpus = testutil::c0();
    const std::vector<std::string> ordering = {"A", "B", "C"};
    const auto m = jaccard_matrix(corpus, ordering, Stratum::All, {1});
    CHECK(m.kind() == MatrixKind::Symmetric);
    CHECK(m.value(0, 1) == doctest::Approx(100.0 * 2 / 6));
    // oracle: B appears in p1,p2,p5,p6 and C in p6, so the union has 4
    // documents and the joint 1, giving 25.0
    CHECK(m.value(1, 2) == doctest::Approx(25.0));
    // (A,C) has no joint documents: below any threshold, masked
    CHECK_FALSE(m.defined(0, 2));
    CHECK(m.value(0, 1) == m.value(1, 0));
}

TEST_CASE("jaccard_matrix threshold 2 keeps only the (A,B) cell") {
    const auto corpus = testutil::c0();
    const std::vector<std::string> ordering = {"A", "B", "C"};
    const auto m = jaccard_matrix(corpus, ordering, Stratum::All, {2});
    CHECK(m.defined(0, 1));
    CHECK_FALSE(m.defined(1, 2));
    CHECK_FALSE(m.defined(0, 2));
}

TEST_CASE("jaccard_matrix masks are identical across strata") {
    const auto corpus = testutil::c0();
    const std::vector<std::string> ordering = {"A", "B", "C"};
    const auto all = jaccard_matrix(corpus, ordering, Stratum::All, {1});
    const auto core = jaccard_matrix(corpus, ordering, Stratum::Core, {1});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(all.defined(i, j) == core.defined(i, j));
        }
    }
}

TEST_CASE("a 7.22 percent cell means every 14th document of the union is joint") {
    // 361 joint core documents, entity a with 3000 core documents total and
    // entity b with 2361: union 5000, jaccard exactly 7.22
    std::vector<testutil::RawRecord> raw;
    int serial = 0;
    for (int i = 0; i < 361; ++i) raw.push_back({"j" + std::to_string(serial++), true, {"TSU", "TPU"}});
    for (int i = 0; i < 2639; ++i) raw.push_back({"a" + std::to_string(serial++), true, {"TSU"}});
    for (int i = 0; i < 2000; ++i) raw.push_back({"b" + std::to_string(serial++), true, {"TPU"}});
    const auto corpus = testutil::make_corpus({"TSU", "TPU"}, raw);
    const std::vector<std::string> ordering = {"TSU", "TPU"};
    const auto m = jaccard_matrix(corpus, ordering, Stratum::Core, {20});
    CHECK(m.value(0, 1) == doctest::Approx(7.22));
    CHECK(100.0 / m.value(0, 1) == doctest::Approx(13.85).epsilon(0.001));
}

TEST_CASE("ratio_matrix divides strata elementwise") {
    auto core = two_by_two(0.69, 0.69, MatrixKind::Symmetric);
    auto all = two_by_two(0.38, 0.38, MatrixKind::Symmetric);
    const auto ratio = ratio_matrix(core, all);
    CHECK(ratio.value(0, 1) == doctest::Approx(0.69 / 0.38));
    CHECK(format_value(ratio.value(0, 1)) == "1.82");
}

TEST_CASE("ratio_matrix: equal strata give an all-ones matrix") {
    const auto corpus = testutil::c0();
    const std::vector<std::string> ordering = {"A", "B", "C"};
    const auto all = jaccard_matrix(corpus, ordering, Stratum::All, {1});
    const auto ratio = ratio_matrix(all, all);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (ratio.defined(i, j)) CHECK(ratio.value(i, j) == 1.0);
        }
    }
    CHECK(ratio.defined(0, 1));
}

TEST_CASE("ratio_matrix masks propagate and zero denominators mask") {
    auto core = two_by_two(0.5, 0.5, MatrixKind::Symmetric);
    MaskedMatrix all({"X", "Y"}, MatrixKind::Symmetric);  // fully masked
    const auto ratio = ratio_matrix(core, all);
    CHECK_FALSE(ratio.defined(0, 1));

    auto zero_all = two_by_two(0.0, 0.0, MatrixKind::Symmetric);
    const auto ratio2 = ratio_matrix(core, zero_all);
    CHECK_FALSE(ratio2.defined(0, 1));
}

TEST_CASE("ratio_matrix rejects mismatched orderings") {
    MaskedMatrix a({"X", "Y"}, MatrixKind::Symmetric);
    MaskedMatrix b({"X", "Z"}, MatrixKind::Symmetric);
    CHECK_THROWS_AS(ratio_matrix(a, b), ValidationError);
}

TEST_CASE("gain_matrix on C0 gives parity for the (A,B) pair") {
    const auto corpus = testutil::c0();
    const std::vector<std::string> ordering = {"A", "B", "C"};
    const auto m = gain_matrix(corpus, ordering, {1});
    CHECK(m.kind() == MatrixKind::Asymmetric);
    CHECK(m.value(0, 1) == 1.0);  // A <- B
    CHECK(m.value(1, 0) == 1.0);  // B <- A
    // B <- C: the joint document p6 is core, B's own share is 1/2
    CHECK(m.value(1, 2) == doctest::Approx(2.0));
    CHECK_FALSE(m.defined(0, 2));
}

TEST_CASE("gain_matrix equals the scalar composition cell by cell") {
    const auto corpus = testutil::c0();
    const std::vector<std::string> ordering = {"A", "B", "C"};
    const auto m = gain_matrix(corpus, ordering, {1});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j || !m.defined(i, j)) continue;
            const auto all = pair_counts(corpus, ordering[i], ordering[j], Stratum::All);
            const auto core = pair_counts(corpus, ordering[i], ordering[j], Stratum::Core);
            const auto expected = collaborative_gain(core.n_ab, all.n_ab,
                                                     corpus.count_core(ordering[i]),
                                                     corpus.count_all(ordering[i]));
            CHECK(m.value(i, j) == expected);
        }
    }
}

TEST_CASE("gain_matrix masks entities without core output and warns") {
    // D collaborates with A but has no core documents
    auto raw = testutil::c0_records();
    raw.push_back({"p7", false, {"A", "D"}});
    const auto corpus = testutil::make_corpus({"A", "B", "C", "D"}, raw);
    const std::vector<std::string> ordering = {"A", "B", "C", "D"};
    std::vector<std::string> warnings;
    const auto m = gain_matrix(corpus, ordering, {1}, &warnings);
    CHECK_FALSE(m.defined(0, 3));
    CHECK_FALSE(m.defined(3, 0));
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("'D'") != std::string::npos);
    // mask stays symmetric
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(m.defined(i, j) == m.defined(j, i));
        }
    }
}

TEST_CASE("a parity corpus yields 1.0 in every defined gain cell") {
    // every pair: one core + one non-core joint document; every entity's own
    // share is 1/2 as well
    std::vector<testutil::RawRecord> raw;
    int serial = 0;
    const std::vector<std::string> ids = {"A", "B", "C"};
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            raw.push_back({"c" + std::to_string(serial++), true, {ids[i], ids[j]}});
            raw.push_back({"n" + std::to_string(serial++), false, {ids[i], ids[j]}});
        }
    }
    const auto corpus = testutil::make_corpus(ids, raw);
    const auto m = gain_matrix(corpus, ids, {1});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (i != j) CHECK(m.value(i, j) == 1.0);
        }
    }
}

TEST_CASE("nonreciprocity_matrix from a hand-built gain matrix") {
    const auto gain = two_by_two(0.48, 3.82);  // X <- Y, Y <- X
    const auto nonrec = nonreciprocity_matrix(gain);
    CHECK(nonrec.kind() == MatrixKind::SkewSymmetric);
    CHECK(nonrec.value(0, 1) == doctest::Approx(-3.34));
    CHECK(nonrec.value(0, 1) + nonrec.value(1, 0) == 0.0);
}

TEST_CASE("nonreciprocity of a reciprocal gain matrix is zero") {
    const auto gain = two_by_two(1.7, 1.7);
    const auto nonrec = nonreciprocity_matrix(gain);
    CHECK(nonrec.value(0, 1) == 0.0);
    CHECK(nonrec.value(1, 0) == 0.0);
}

TEST_CASE("nonreciprocity masks cells whose counterpart is masked") {
    MaskedMatrix gain({"X", "Y", "Z"}, MatrixKind::Asymmetric);
    gain.set(0, 1, 2.0);
    gain.set(1, 0, 0.5);
    gain.set(0, 2, 1.5);  // (2,0) left masked
    const auto nonrec = nonreciprocity_matrix(gain);
    CHECK(nonrec.defined(0, 1));
    CHECK_FALSE(nonrec.defined(0, 2));
    CHECK_FALSE(nonrec.defined(2, 0));
    CHECK_THROWS_AS(
        nonreciprocity_matrix(MaskedMatrix({"X", "Y"}, MatrixKind::Symmetric)),
        ValidationError);
}

TEST_CASE("column_averages ignore masked cells and the diagonal") {
    MaskedMatrix m({"X", "Y", "Z"}, MatrixKind::Asymmetric);
    m.set(0, 1, 1.0);
    m.set(2, 1, 1.0);
    m.set(0, 2, 3.0);
    const auto avg = column_averages(m);
    CHECK(avg.at("Y") == 1.0);
    CHECK(avg.at("Z") == 3.0);
    CHECK(avg.count("X") == 0);  // empty column has no entry
}

TEST_CASE("display rounding is half away from zero at 2 decimals") {
    CHECK(format_value(0.999999) == "1.00");
    CHECK(format_value(-3.335) == "-3.34");
    CHECK(format_value(100.0 * 2 / 6) == "33.33");
    // exactly representable halves round away from zero
    CHECK(format_value(0.125) == "0.13");
    CHECK(format_value(-0.125) == "-0.13");
    CHECK(format_value(-0.004) == "0.00");
    CHECK(round2(2.563333) == doctest::Approx(2.56));
}

TEST_CASE("TSV serialization writes labels, blanks and 2-decimal values") {
    auto m = two_by_two(0.48, 3.82);
    const auto tsv = to_tsv(m);
    CHECK(tsv == "\tX\tY\nX\t\t0.48\nY\t3.82\t\n");
}

TEST_CASE("TSV round trip preserves values at 2-decimal precision") {
    MaskedMatrix m({"A", "B", "C"}, MatrixKind::Asymmetric);
    m.set(0, 1, 1.23456);
    m.set(1, 0, -0.005);
    m.set(2, 0, 15.705);
    std::istringstream in(to_tsv(m));
    const auto back = matrix_from_tsv(in, MatrixKind::Asymmetric);
    CHECK(back.labels() == m.labels());
    CHECK(back.value(0, 1) == round2(m.value(0, 1)));
    CHECK(back.value(1, 0) == round2(m.value(1, 0)));
    CHECK(back.value(2, 0) == round2(m.value(2, 0)));
    CHECK_FALSE(back.defined(0, 2));
    // a second render is byte-identical
    CHECK(to_tsv(back) == to_tsv(back));
}

TEST_CASE("matrix_from_tsv rejects malformed input") {
    {
        std::istringstream in("\tX\tY\nX\t1.0\t2.0\nY\t\t\n");
        CHECK_THROWS_AS(matrix_from_tsv(in, MatrixKind::Symmetric), ParseError);  // diagonal set
    }
    {
        std::istringstream in("\tX\tY\nZ\t\t2.0\nY\t\t\n");
        CHECK_THROWS_AS(matrix_from_tsv(in, MatrixKind::Symmetric), ParseError);  // label mismatch
    }
    {
        std::istringstream in("\tX\tY\nX\t\tabc\nY\t\t\n");
        CHECK_THROWS_AS(matrix_from_tsv(in, MatrixKind::Symmetric), ParseError);  // bad number
    }
    {
        std::istringstream in("\tX\tY\nX\t\t1.0\n");
        CHECK_THROWS_AS(matrix_from_tsv(in, MatrixKind::Symmetric), ParseError);  // missing row
    }
}

}  // TEST_SUITE
