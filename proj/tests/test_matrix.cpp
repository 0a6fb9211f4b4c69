#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sinkhorn/matrix.hpp"
#include "sinkhorn/matrix_io.hpp"
#include "sinkhorn/rng.hpp"
#include "test_util.hpp"

using namespace sinkhorn;
using testutil::rat;
using testutil::rat_matrix;

namespace {

Matrix<Rational> random_positive(int n, SplitMix64& rng, long max_entry = 10) {
    std::vector<Rational> entries;
    for (int i = 0; i < n * n; ++i) {
        entries.emplace_back(1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(max_entry))));
    }
    return Matrix<Rational>(n, std::move(entries));
}

} // namespace

TEST_CASE("matrix invariants are enforced") {
    CHECK_THROWS_AS(Matrix<Rational>(2, {rat("1"), rat("2"), rat("3")}), Error);
    CHECK_THROWS_AS(Matrix<Rational>(2, {rat("1"), rat("0"), rat("3"), rat("1")}), Error);
    CHECK_THROWS_AS(Matrix<Rational>(2, {rat("1"), rat("-2"), rat("3"), rat("1")}), Error);
    CHECK_THROWS_AS(Matrix<Rational>::from_rows({{rat("1"), rat("2")}, {rat("3")}}), Error);
    CHECK_THROWS_AS(DiagonalFactor<Rational>({rat("1"), rat("0")}), Error);
}

TEST_CASE("row_normalize matches the two-step example") {
    const auto m = rat_matrix({{"2", "2", "6"}, {"2", "1", "2"}, {"9", "3", "3"}});
    const auto [r, d] = row_normalize(m);
    CHECK(r == rat_matrix({{"1/5", "1/5", "3/5"}, {"2/5", "1/5", "2/5"}, {"3/5", "1/5", "1/5"}}));
    CHECK(d.diag() == std::vector<Rational>{rat("1/10"), rat("1/5"), rat("1/15")});
    CHECK(scale_rows(d, m) == r);
}

TEST_CASE("col_normalize matches the two-step example") {
    const auto a = rat_matrix({{"1/5", "1/5", "3/5"}, {"2/5", "1/5", "2/5"}, {"3/5", "1/5", "1/5"}});
    const auto [c, d] = col_normalize(a);
    CHECK(c == rat_matrix({{"1/6", "1/3", "1/2"}, {"1/3", "1/3", "1/3"}, {"1/2", "1/3", "1/6"}}));
    CHECK(scale_cols(a, d) == c);
}

TEST_CASE("stochastic predicates") {
    const auto s = rat_matrix({{"1/6", "1/3", "1/2"}, {"1/3", "1/3", "1/3"}, {"1/2", "1/3", "1/6"}});
    CHECK(is_doubly_stochastic(s, Rational(0)));
    const auto a = rat_matrix({{"1/5", "1/5", "3/5"}, {"2/5", "1/5", "2/5"}, {"3/5", "1/5", "1/5"}});
    CHECK(!is_doubly_stochastic(a, Rational(0)));
    CHECK(a.col_sums() == std::vector<Rational>{rat("6/5"), rat("3/5"), rat("6/5")});
    CHECK(is_doubly_stochastic(Matrix<Rational>::constant(4, rat("1/4")), Rational(0)));
    CHECK(stochastic_residual(a) == rat("2/5"));
}

TEST_CASE("already-stochastic inputs are fixed points") {
    const auto a = rat_matrix({{"1/5", "1/5", "3/5"}, {"2/5", "1/5", "2/5"}, {"3/5", "1/5", "1/5"}});
    const auto [r, d] = row_normalize(a);
    CHECK(r == a);
    CHECK(d.diag() == DiagonalFactor<Rational>::identity(3).diag());

    const auto ones = Matrix<Rational>::constant(3, rat("1"));
    const auto [rn, dn] = row_normalize(ones);
    CHECK(rn == Matrix<Rational>::constant(3, rat("1/3")));
    CHECK(dn.diag() == std::vector<Rational>(3, rat("1/3")));
}

TEST_CASE("normalization properties on random matrices") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(4));
        const auto a = random_positive(n, rng);

        // Idempotence.
        const auto r = row_normalize(a).matrix;
        CHECK(row_normalize(r).matrix == r);
        const auto c = col_normalize(a).matrix;
        CHECK(col_normalize(c).matrix == c);

        // Transpose duality.
        CHECK(col_normalize(a).matrix == row_normalize(a.transpose()).matrix.transpose());

        // Scale invariance under positive diagonal action.
        std::vector<Rational> d;
        for (int i = 0; i < n; ++i) {
            d.emplace_back(1 + static_cast<long>(rng.below(7)), 1 + static_cast<long>(rng.below(5)));
        }
        const DiagonalFactor<Rational> df(d);
        CHECK(row_normalize(scale_rows(df, a)).matrix == r);
        CHECK(col_normalize(scale_cols(a, df)).matrix == c);
    }
}

TEST_CASE("json matrix parsing") {
    const auto m = parse_matrix_json(R"({"n": 3, "entries": [["2","2","6"],["2","1","2"],["9","3","3"]]})");
    CHECK(m == rat_matrix({{"2", "2", "6"}, {"2", "1", "2"}, {"9", "3", "3"}}));

    // Integer entries are accepted; fractions must be strings.
    const auto mi = parse_matrix_json(R"({"n": 2, "entries": [[1, 2], ["1/2", 3]]})");
    CHECK(mi == rat_matrix({{"1", "2"}, {"1/2", "3"}}));

    CHECK_THROWS_AS(parse_matrix_json("not json"), ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"n": 2, "entries": [["1","2"]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"n": 1, "entries": [[0.5]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"n": 1, "entries": [["0"]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"entries": [["1"]]})"), ParseError);
}

TEST_CASE("csv matrix parsing") {
    const auto m = parse_matrix_csv("2,2,6\n2,1,2\n9,3,3\n");
    CHECK(m == rat_matrix({{"2", "2", "6"}, {"2", "1", "2"}, {"9", "3", "3"}}));
    CHECK(parse_matrix_csv("1/2,1/2\r\n1/3,2/3\n") == rat_matrix({{"1/2", "1/2"}, {"1/3", "2/3"}}));
    CHECK_THROWS_AS(parse_matrix_csv(""), ParseError);
    CHECK_THROWS_AS(parse_matrix_csv("1,2\n3\n"), ParseError);
}

TEST_CASE("json serialization round trip") {
    const auto m = rat_matrix({{"1/6", "1/3", "1/2"}, {"1/3", "1/3", "1/3"}, {"1/2", "1/3", "1/6"}});
    CHECK(parse_matrix_json(matrix_to_json(m).dump()) == m);
}

TEST_CASE("float conversion and residuals") {
    const auto s = rat_matrix({{"1/6", "1/3", "1/2"}, {"1/3", "1/3", "1/3"}, {"1/2", "1/3", "1/6"}});
    const auto f = to_float(s, 256);
    CHECK(f.at(0, 0).precision() == 256);
    CHECK(stochastic_residual(f) < BigFloat::pow2(-250, 256));
    CHECK(f.is_symmetric());
}

TEST_CASE("symmetry check is exact") {
    CHECK(rat_matrix({{"1", "2"}, {"2", "3"}}).is_symmetric());
    CHECK(!rat_matrix({{"1", "2"}, {"3", "3"}}).is_symmetric());
}
