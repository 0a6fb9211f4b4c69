#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sinkhorn/engine.hpp"
#include "sinkhorn/rng.hpp"
#include "test_util.hpp"

using namespace sinkhorn;
using testutil::bf;
using testutil::max_entry_delta;
using testutil::rat;
using testutil::rat_matrix;
using testutil::sqrt_oracle;

namespace {

Matrix<Rational> random_symmetric(int n, SplitMix64& rng) {
    std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(n),
                                            std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Rational v(1 + static_cast<long>(rng.below(10)));
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        }
    }
    return Matrix<Rational>::from_rows(rows);
}

} // namespace

TEST_CASE("all-ones matrix converges in one half-step") {
    const auto run = sinkhorn_iterate(Matrix<Rational>::constant(3, rat("1")), Rational(0), 10);
    CHECK(run.converged);
    CHECK(run.terminated_finitely);
    CHECK(run.half_steps == 1);
    CHECK(run.limit == Matrix<Rational>::constant(3, rat("1/3")));
    CHECK(run.row_factor.diag() == std::vector<Rational>(3, rat("1/3")));
    CHECK(run.col_factor.diag() == std::vector<Rational>(3, rat("1")));
}

TEST_CASE("two-step example reaches its exact limit") {
    const auto m = rat_matrix({{"2", "2", "6"}, {"2", "1", "2"}, {"9", "3", "3"}});
    const auto run = sinkhorn_iterate(m, Rational(0), 64);
    CHECK(run.converged);
    CHECK(run.terminated_finitely);
    CHECK(run.half_steps == 2);
    CHECK(run.residual == rat("0"));
    CHECK(run.limit == rat_matrix({{"1/6", "1/3", "1/2"}, {"1/3", "1/3", "1/3"}, {"1/2", "1/3", "1/6"}}));
    // Factor consistency: S = X * M * Y exactly.
    CHECK(scale_cols(scale_rows(run.row_factor, m), run.col_factor) == run.limit);
}

TEST_CASE("already doubly stochastic input takes zero half-steps") {
    const auto s = rat_matrix({{"1/6", "1/3", "1/2"}, {"1/3", "1/3", "1/3"}, {"1/2", "1/3", "1/6"}});
    const auto run = sinkhorn_iterate(s, Rational(0), 10);
    CHECK(run.half_steps == 0);
    CHECK(run.converged);
    CHECK(detect_finite_termination(s, 10) == 0);
}

TEST_CASE("exhausted budget returns the partial result") {
    const auto m = rat_matrix({{"2", "2", "6"}, {"2", "1", "2"}, {"9", "3", "3"}});
    const auto run = sinkhorn_iterate(m, Rational(0), 1);
    CHECK(!run.converged);
    CHECK(run.half_steps == 1);
    CHECK(run.residual > rat("0"));
    CHECK(run.limit == rat_matrix({{"1/5", "1/5", "3/5"}, {"2/5", "1/5", "2/5"}, {"3/5", "1/5", "1/5"}}));
}

TEST_CASE("float iteration matches the closed form for the 2,1,1 corner matrix") {
    const auto a = rat_matrix({{"2", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}});
    const auto run = sinkhorn_iterate(to_float(a, 256), bf("1e-40"), 100000);
    CHECK(run.converged);
    CHECK(!run.terminated_finitely);
    // s11 = (5 - sqrt(17))/2.
    const BigFloat expected =
        BigFloat::from_rational((rat("5") - sqrt_oracle(17, 60)) / rat("2"), 256);
    CHECK((run.limit.at(0, 0) - expected).abs() < bf("1e-39"));
    // Factor consistency within rounding.
    const auto recon = scale_cols(scale_rows(run.row_factor, to_float(a, 256)), run.col_factor);
    CHECK(max_entry_delta(recon, run.limit) < bf("1e-60"));
}

TEST_CASE("detect_finite_termination on the two-step example") {
    const auto m = rat_matrix({{"2", "2", "6"}, {"2", "1", "2"}, {"9", "3", "3"}});
    CHECK(detect_finite_termination(m, 50) == 2);
}

TEST_CASE("detect_finite_termination finds nothing for the r=2 family matrix") {
    const auto a = rat_matrix({{"3", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}});
    CHECK(!detect_finite_termination(a, 50).has_value());
}

TEST_CASE("symmetric_balance on the all-ones matrix") {
    const auto run = symmetric_balance(Matrix<Rational>::constant(3, rat("1")), 256, bf("1e-45"), 100000);
    CHECK(run.converged);
    const BigFloat inv_sqrt3 = BigFloat(1, 256) / BigFloat(3, 256).sqrt();
    for (int i = 0; i < 3; ++i) {
        CHECK((run.row_factor[i] - inv_sqrt3).abs() < bf("1e-44"));
    }
    CHECK(max_entry_delta(run.limit, to_float(Matrix<Rational>::constant(3, rat("1/3")), 256)) < bf("1e-44"));
}

TEST_CASE("symmetric_balance matches the 2x2 closed form") {
    // For [[a,b],[b,c]]: s11 = sqrt(ac) / (sqrt(ac) + b).
    const auto a = rat_matrix({{"4", "1"}, {"1", "1"}});
    const auto run = symmetric_balance(a, 256, bf("1e-40"), 100000);
    CHECK(run.converged);
    CHECK((run.limit.at(0, 0) - BigFloat::from_rational(rat("2/3"), 256)).abs() < bf("1e-39"));
    CHECK(run.col_factor.diag() == run.row_factor.diag());

    const auto b = rat_matrix({{"9", "2"}, {"2", "5"}});
    const auto run_b = symmetric_balance(b, 256, bf("1e-40"), 100000);
    // Closed-form oracle at 256 bits: sqrt(45)/(sqrt(45)+2).
    const BigFloat sq = BigFloat(45, 256).sqrt();
    const BigFloat expected = sq / (sq + BigFloat(2, 256));
    CHECK((run_b.limit.at(0, 0) - expected).abs() < bf("1e-39"));
}

TEST_CASE("symmetric_balance reproduces the closed-form family at r=3") {
    const auto a = rat_matrix({{"6", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}});
    const auto run = symmetric_balance(a, 256, bf("1e-40"), 100000);
    CHECK(run.converged);
    // X = sqrt(1/10) * diag(1, 2, 2).
    const BigFloat scale = BigFloat::from_rational(rat("1/10"), 256).sqrt();
    CHECK((run.row_factor[0] - scale).abs() < bf("1e-39"));
    CHECK((run.row_factor[1] - BigFloat(2, 256) * scale).abs() < bf("1e-39"));
    CHECK((run.row_factor[2] - BigFloat(2, 256) * scale).abs() < bf("1e-39"));
    const auto s = to_float(rat_matrix({{"3/5", "1/5", "1/5"}, {"1/5", "2/5", "2/5"}, {"1/5", "2/5", "2/5"}}), 256);
    CHECK(max_entry_delta(run.limit, s) < bf("1e-39"));
    // Balance equations: max_i |x_i (Ax)_i - 1| <= tol.
    CHECK(run.residual <= bf("1e-40"));
}

TEST_CASE("symmetric_balance rejects asymmetric input") {
    const auto m = rat_matrix({{"2", "2", "6"}, {"2", "1", "2"}, {"9", "3", "3"}});
    CHECK_THROWS_AS(symmetric_balance(m, 256, bf("1e-30"), 1000), NotSymmetricError);
}

TEST_CASE("balance agrees with the alternating iteration on random symmetric matrices") {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = trial % 2 == 0 ? 3 : 4;
        const auto a = random_symmetric(n, rng);
        const BigFloat tol = bf("1e-30");
        const auto balanced = symmetric_balance(a, 256, tol, 200000);
        const auto iterated = sinkhorn_iterate(to_float(a, 256), tol, 200000);
        REQUIRE(balanced.converged);
        REQUIRE(iterated.converged);
        CHECK(max_entry_delta(balanced.limit, iterated.limit) < bf("1e-29"));

        // Cross-check: the symmetric factor is the geometric mean of the
        // asymmetric pair.
        for (int i = 0; i < n; ++i) {
            const BigFloat geo = (iterated.row_factor[i] * iterated.col_factor[i]).sqrt();
            CHECK((balanced.row_factor[i] - geo).abs() < bf("1e-28"));
        }
    }
}

TEST_CASE("row and column stochasticity alternate during iteration") {
    const auto a = rat_matrix({{"5", "1", "2"}, {"1", "3", "1"}, {"2", "2", "7"}});
    auto cur = row_normalize(a).matrix;
    for (int step = 0; step < 6; ++step) {
        const auto sums = step % 2 == 0 ? cur.row_sums() : cur.col_sums();
        for (const auto& s : sums) {
            CHECK(s == rat("1"));
        }
        cur = step % 2 == 0 ? col_normalize(cur).matrix : row_normalize(cur).matrix;
    }
}
