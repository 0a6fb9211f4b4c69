#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sinkhorn/engine.hpp"
#include "sinkhorn/quartic.hpp"
#include "sinkhorn/rng.hpp"
#include "test_util.hpp"

using namespace sinkhorn;
using testutil::bf;
using testutil::max_entry_delta;
using testutil::rat;
using testutil::rat_matrix;
using testutil::sqrt_oracle;

namespace {

Rational grid_rational(SplitMix64& rng) {
    return Rational(1 + static_cast<long>(rng.below(100)), 10); // 1/10 .. 10
}

std::array<Rational, 5> scaled(const Rational& s, const std::array<Rational, 5>& c) {
    return {s * c[0], s * c[1], s * c[2], s * c[3], s * c[4]};
}

} // namespace

TEST_CASE("kl quartic coefficients") {
    CHECK(quartic_kl_coeffs(rat("1"), rat("1")) ==
          std::array<Rational, 5>{rat("1"), rat("-3"), rat("0"), rat("0"), rat("0")});
    CHECK(quartic_kl_coeffs(rat("2"), rat("1")) ==
          std::array<Rational, 5>{rat("1"), rat("-7"), rat("13"), rat("-9"), rat("2")});

    // K = 6 specializes the family closed form: the root must be z = 1/10.
    const QuarticSpec q = build_quartic_kl(rat("6"), rat("1"));
    CHECK(q.poly().eval(rat("1/10")) == rat("0"));
}

TEST_CASE("klm quartic constant and linear coefficients at K=2, L=3, M=5") {
    const auto c = quartic_klm_coeffs(rat("2"), rat("3"), rat("5"));
    CHECK(c[0] == rat("210"));   // 15 * 14
    CHECK(c[1] == rat("-1658")); // -1800 + 120 + 30 - 8
    // Dual-route check of the remaining coefficients: the generic table
    // evaluated at the pattern matrix must agree term by term.
    CHECK(quartic_generic_coeffs(klm_matrix(rat("2"), rat("3"), rat("5"))) == c);
}

TEST_CASE("degenerate quartics are detected") {
    const auto ones = Matrix<Rational>::constant(3, rat("1"));
    for (const auto& coeff : quartic_generic_coeffs(ones)) {
        CHECK(coeff == rat("0"));
    }
    CHECK_THROWS_AS(build_quartic_generic(ones), DegenerateQuarticError);
    CHECK_THROWS_AS(build_quartic_klm(rat("1"), rat("1"), rat("1")), DegenerateQuarticError);
    CHECK_THROWS_AS(build_quartic_kl(rat("0"), rat("1")), Error);
    CHECK_THROWS_AS(build_quartic_generic(rat_matrix({{"2", "2", "6"}, {"2", "1", "2"}, {"9", "3", "3"}})),
                    NotSymmetricError);
}

TEST_CASE("generic quartic specializes to the pattern quartics") {
    SplitMix64 rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        const Rational k = grid_rational(rng);
        const Rational l = grid_rational(rng);
        const Rational m = grid_rational(rng);
        CHECK(quartic_generic_coeffs(klm_matrix(k, l, m)) == quartic_klm_coeffs(k, l, m));
        CHECK(quartic_generic_coeffs(kl_matrix(k, l)) == scaled(l - rat("1"), quartic_kl_coeffs(k, l)));
        CHECK(quartic_klm_coeffs(k, l, rat("1")) == scaled(l - rat("1"), quartic_kl_coeffs(k, l)));
    }
}

TEST_CASE("rank-1 detection") {
    CHECK(is_rank_one(rat_matrix({{"1", "2", "3"}, {"2", "4", "6"}, {"3", "6", "9"}})));
    CHECK(is_rank_one(Matrix<Rational>::constant(3, rat("1"))));
    CHECK(!is_rank_one(rat_matrix({{"2", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}})));
    for (const auto& coeff : quartic_generic_coeffs(rat_matrix({{"1", "2", "3"}, {"2", "4", "6"}, {"3", "6", "9"}}))) {
        CHECK(coeff == rat("0"));
    }
}

TEST_CASE("root selection on the 2,1,1 corner matrix") {
    const auto a = rat_matrix({{"2", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}});
    const QuarticSpec q = build_quartic_kl(rat("2"), rat("1"));
    // Three distinct positive roots; only (5 - sqrt(17))/4 keeps the limit
    // entries inside (0,1) since s11 = 2z.
    CHECK(isolate_positive_roots(q.poly()).size() == 3);
    const SelectedRoot sel = select_sinkhorn_root(q, a, 256);
    CHECK(sel.feasible_count == 1);
    CHECK(!sel.z_exact.has_value());
    const BigFloat expected = BigFloat::from_rational((rat("5") - sqrt_oracle(17, 70)) / rat("4"), 256);
    CHECK((sel.z - expected).abs() < bf("1e-69"));
}

TEST_CASE("root selection reports exact rational roots") {
    const QuarticSpec q = build_quartic_kl(rat("1"), rat("1"));
    const SelectedRoot sel = select_sinkhorn_root(q, Matrix<Rational>::constant(3, rat("1")), 256);
    REQUIRE(sel.z_exact.has_value());
    CHECK(*sel.z_exact == rat("1/3"));
}

TEST_CASE("reconstruct_limit on the all-ones matrix") {
    const auto lim = reconstruct_limit(Matrix<Rational>::constant(3, rat("1")),
                                       BigFloat::from_rational(rat("1/3"), 256));
    const BigFloat inv_sqrt3 = BigFloat(1, 256) / BigFloat(3, 256).sqrt();
    for (int i = 0; i < 3; ++i) {
        CHECK((lim.factor[i] - inv_sqrt3).abs() < bf("1e-70"));
        CHECK(lim.row_residuals[static_cast<std::size_t>(i)] < bf("1e-70"));
    }
    CHECK(max_entry_delta(lim.limit, to_float(Matrix<Rational>::constant(3, rat("1/3")), 256)) < bf("1e-70"));
}

TEST_CASE("reconstruct_limit at the family point r=3") {
    const auto a = rat_matrix({{"6", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}});
    const auto lim = reconstruct_limit(a, BigFloat::from_rational(rat("1/10"), 256));
    const BigFloat scale = BigFloat::from_rational(rat("1/10"), 256).sqrt();
    CHECK((lim.factor[0] - scale).abs() < bf("1e-70"));
    CHECK((lim.factor[1] - BigFloat(2, 256) * scale).abs() < bf("1e-70"));
    CHECK((lim.factor[2] - BigFloat(2, 256) * scale).abs() < bf("1e-70"));
    const auto s = to_float(rat_matrix({{"3/5", "1/5", "1/5"}, {"1/5", "2/5", "2/5"}, {"1/5", "2/5", "2/5"}}), 256);
    CHECK(max_entry_delta(lim.limit, s) < bf("1e-70"));
    CHECK(lim.limit.is_symmetric());
}

TEST_CASE("reconstruction agrees with the numeric iteration") {
    const auto a = rat_matrix({{"2", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}});
    const QuarticSpec q = build_quartic_kl(rat("2"), rat("1"));
    const SelectedRoot sel = select_sinkhorn_root(q, a, 256);
    const auto lim = reconstruct_limit(a, sel.z);
    const auto run = sinkhorn_iterate(to_float(a, 256), bf("1e-50"), 100000);
    REQUIRE(run.converged);
    CHECK(max_entry_delta(lim.limit, run.limit) < bf("1e-40"));
}

TEST_CASE("reconstruct_limit rejects infeasible roots") {
    const auto a = rat_matrix({{"2", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}});
    // z = 1 is a (double) root of the quartic, but no positive diagonal
    // balances the remaining rows there.
    CHECK_THROWS_AS(reconstruct_limit(a, BigFloat(1, 256)), NoPositiveSolutionError);
    // The largest root fails the same way once x1 = sqrt(z) > 1.
    CHECK_THROWS_AS(reconstruct_limit(a, BigFloat::from_rational(rat("228/100"), 256)),
                    NoPositiveSolutionError);
}

TEST_CASE("exact_limit3 full pipeline on random symmetric matrices") {
    SplitMix64 rng(777);
    int done = 0;
    while (done < 4) {
        std::vector<std::vector<Rational>> rows(3, std::vector<Rational>(3, Rational(1)));
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                Rational v(1 + static_cast<long>(rng.below(10)));
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
                rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
            }
        }
        const auto a = Matrix<Rational>::from_rows(rows);
        if (QuarticSpec{quartic_generic_coeffs(a), "generic"}.degenerate()) {
            continue;
        }
        ++done;
        const Exact3Result r = exact_limit3(a, std::nullopt, 256);
        REQUIRE(r.root.has_value());
        REQUIRE(r.algebraic.has_value());
        REQUIRE(r.oracle_delta.has_value());
        CHECK(*r.oracle_delta < bf("1e-45"));
        for (const auto& res : r.algebraic->row_residuals) {
            CHECK(res < bf("1e-55"));
        }
        // The quartic vanishes at the numeric root estimate.
        const auto run = sinkhorn_iterate(to_float(a, 256), bf("1e-50"), 200000);
        REQUIRE(run.converged);
        const BigFloat z_numeric = run.limit.at(0, 0) / BigFloat::from_rational(a.at(0, 0), 256);
        CHECK(r.quartic->poly().eval(z_numeric).abs() < bf("1e-40"));
    }
}

TEST_CASE("scaling the matrix scales the root inversely") {
    const auto a = rat_matrix({{"5", "2", "1"}, {"2", "3", "1"}, {"1", "1", "4"}});
    std::vector<Rational> scaled_entries;
    for (const auto& e : a.entries()) {
        scaled_entries.push_back(rat("3") * e);
    }
    const Matrix<Rational> a3(3, std::move(scaled_entries));
    const auto sel = select_sinkhorn_root(build_quartic_generic(a), a, 256);
    const auto sel3 = select_sinkhorn_root(build_quartic_generic(a3), a3, 256);
    CHECK((sel3.z * BigFloat(3, 256) - sel.z).abs() < bf("1e-70"));
}

TEST_CASE("the generic quartic degenerates beyond rank-1 inputs") {
    // Proportional second and third columns wipe out every generic
    // coefficient even though the matrix has rank > 1; the specialized
    // pattern quartic still carries the information.
    const auto corner = rat_matrix({{"2", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}});
    CHECK(QuarticSpec{quartic_generic_coeffs(corner), "generic"}.degenerate());
    CHECK(!is_rank_one(corner));
    CHECK(!QuarticSpec{quartic_kl_coeffs(rat("2"), rat("1")), "kl"}.degenerate());

    const Exact3Result r = exact_limit3(corner, std::nullopt, 256);
    CHECK(!r.quartic.has_value());
    CHECK(!r.rank1_limit.has_value());
    REQUIRE(r.numeric_fallback.has_value());
    CHECK(r.numeric_fallback->converged);
    // The fallback still finds the right limit: s11 = (5 - sqrt(17))/2.
    const BigFloat expected = BigFloat::from_rational((rat("5") - sqrt_oracle(17, 60)) / rat("2"), 256);
    CHECK((r.numeric_fallback->limit.at(0, 0) - expected).abs() < bf("1e-40"));
    bool warned = false;
    for (const auto& w : r.warnings) {
        warned = warned || w.find("numeric") != std::string::npos;
    }
    CHECK(warned);
}

TEST_CASE("numeric fallback agrees with the alternating iteration") {
    const auto a = rat_matrix({{"5", "1", "2"}, {"1", "3", "6"}, {"2", "6", "12"}});
    CHECK(QuarticSpec{quartic_generic_coeffs(a), "generic"}.degenerate());
    CHECK(!is_rank_one(a));
    const Exact3Result r = exact_limit3(a, std::nullopt, 256);
    REQUIRE(r.numeric_fallback.has_value());
    const auto run = sinkhorn_iterate(to_float(a, 256), bf("1e-45"), 200000);
    REQUIRE(run.converged);
    CHECK(max_entry_delta(r.numeric_fallback->limit, run.limit) < bf("1e-44"));
}

TEST_CASE("matrix route and pattern route agree on a non-degenerate pattern") {
    const auto a = klm_matrix(rat("2"), rat("3"), rat("1"));
    const Exact3Result via_generic = exact_limit3(a, std::nullopt, 256);
    const Exact3Result via_kl = exact_limit3(a, build_quartic_kl(rat("2"), rat("3")), 256);
    REQUIRE(via_generic.algebraic.has_value());
    REQUIRE(via_kl.algebraic.has_value());
    CHECK(max_entry_delta(via_generic.algebraic->limit, via_kl.algebraic->limit) < bf("1e-70"));
    // Same root through quartics that differ by the factor (L-1).
    CHECK((via_generic.root->z - via_kl.root->z).abs() < bf("1e-70"));
}

TEST_CASE("exact_limit3 falls back on degenerate input") {
    const Exact3Result ones = exact_limit3(Matrix<Rational>::constant(3, rat("1")), std::nullopt, 256);
    CHECK(!ones.quartic.has_value());
    REQUIRE(ones.rank1_limit.has_value());
    CHECK(*ones.rank1_limit == Matrix<Rational>::constant(3, rat("1/3")));
    REQUIRE(ones.rank1_factor.has_value());
    REQUIRE(!ones.warnings.empty());

    // Rank-1 but not constant: A = v v^T with v = (1, 2, 3).
    const Exact3Result vvt = exact_limit3(rat_matrix({{"1", "2", "3"}, {"2", "4", "6"}, {"3", "6", "9"}}),
                                          std::nullopt, 256);
    REQUIRE(vvt.rank1_limit.has_value());
    REQUIRE(vvt.rank1_factor.has_value());
    // x_i = 1/(sqrt(3) v_i): check X A X = (1/3) J.
    const auto af = to_float(rat_matrix({{"1", "2", "3"}, {"2", "4", "6"}, {"3", "6", "9"}}), 256);
    const auto xax = scale_cols(scale_rows(*vvt.rank1_factor, af), *vvt.rank1_factor);
    CHECK(max_entry_delta(xax, to_float(*vvt.rank1_limit, 256)) < bf("1e-70"));
}
