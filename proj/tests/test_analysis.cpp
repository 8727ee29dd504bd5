#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "rendezvous/analysis.hpp"

using namespace rendezvous;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

TEST_CASE("closed_form_meeting_time matches dense spectral path") {
    for (std::size_t n = 3; n <= 12; ++n) {
        const CircleWalk w{0.45, 0.25, 0.3};
        const double dense = spectral_meeting_time(laplacian(transition_matrix(build_circle(n), w))).value;
        CHECK(closed_form_meeting_time(GraphFamily::Circle, n, w).value == Approx(dense).epsilon(1e-10));
    }
    for (std::size_t n = 3; n <= 5; ++n) {
        const TorusWalk w{{0.1, 0.3, 0.05, 0.25, 0.3}};
        const double dense = spectral_meeting_time(laplacian(transition_matrix(build_torus(n), w))).value;
        CHECK(closed_form_meeting_time(GraphFamily::Torus, n, w).value == Approx(dense).epsilon(1e-10));
    }
    CHECK_THROWS_AS(closed_form_meeting_time(GraphFamily::General, 5, SimpleWalk{}), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_meeting_time(GraphFamily::Circle, 5, TorusWalk{}), std::invalid_argument);
}

TEST_CASE("scaling_study") {
    const auto tiny = scaling_study(GraphFamily::Circle, {3}, CircleWalk{});
    CHECK(tiny[0].e_tau == Approx(2.0).epsilon(1e-12));
    CHECK(tiny[0].normalizer == 9.0);

    const auto circle = scaling_study(GraphFamily::Circle, {16, 32, 64, 128, 256}, CircleWalk{});
    CHECK(circle.size() == 5);
    CHECK(ratio_spread(circle) <= 1.5);

    const auto torus = scaling_study(GraphFamily::Torus, {8, 16, 32}, TorusWalk{});
    CHECK(torus[1].normalizer == Approx(256.0 * std::log(16.0)));
    CHECK(ratio_spread(torus) <= 2.0);

    CHECK_THROWS_AS(scaling_study(GraphFamily::Torus, {256}, TorusWalk{}), std::invalid_argument);
}

TEST_CASE("lemma1_check") {
    // endpoint: LHS = 1/(1 - 1/2) = 2, RHS = 4/(1 - 0) = 4
    CHECK(lemma1_check(kPi / 4, kPi / 4));
    CHECK(lemma1_check(kPi / 4, kPi / 8));
    CHECK_THROWS_AS(lemma1_check(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(lemma1_check(0.1, 1.0), std::invalid_argument);

    const GridCheck grid = lemma1_grid(100);
    CHECK(grid.points == 10000);
    CHECK(grid.violations == 0);
    CHECK(grid.min_slack >= 0.0);
}

TEST_CASE("torus_partition_sums") {
    SUBCASE("N=2 by hand") {
        // S_0 = 1/(1 - cos^2(pi/4)) = 2; A_1 = {(1,2),(2,1),(2,2)}, each term 1/(1 - 0) = 1
        const auto ps = torus_partition_sums(2);
        REQUIRE(ps.sums.size() == 2);
        CHECK(ps.sums[0] == Approx(2.0));
        CHECK(ps.sums[1] == Approx(3.0));
        CHECK(ps.nondecreasing);
    }
    SUBCASE("N=64") {
        const auto ps = torus_partition_sums(64);
        CHECK(ps.sums.size() == 7);
        CHECK(ps.nondecreasing);
        CHECK(ps.shell_sizes.back() == 64 * 64 - 32 * 32);
        const double shell = static_cast<double>(ps.shell_sizes.back());
        CHECK(ps.sums.back() >= 0.5 * shell);
        CHECK(ps.sums.back() <= 2.0 * shell);
        // every term lies in [1, (1 - cos(pi/4))^{-1}]
        CHECK(ps.min_term.back() >= 1.0 - 1e-12);
        CHECK(ps.max_term.back() <= 1.0 / (1.0 - std::cos(kPi / 4)));
    }
    CHECK_THROWS_AS(torus_partition_sums(12), std::invalid_argument);
    CHECK_THROWS_AS(torus_partition_sums(1), std::invalid_argument);
}

TEST_CASE("boundary sum grows like N^2") {
    double lo = 1e300, hi = 0.0;
    for (std::size_t n : {16u, 32u, 64u, 128u, 256u}) {
        const double r = boundary_sum(n) / static_cast<double>(n * n);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo <= 1.2);
}

TEST_CASE("torus trigonometric forms") {
    for (std::size_t n : {3u, 4u, 8u, 16u}) {
        const auto rep = torus_form_check(n);
        CHECK(rep.expanded_max_error <= 1e-12);
        // lambda = (8/25)(2ts+3)(1-ts)
        CHECK(rep.factored_constant == Approx(8.0 / 25.0).epsilon(1e-12));
        CHECK(rep.factored_constant_spread <= 1e-10);
    }
}

TEST_CASE("derive_seed") {
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(2, {2, 3}));
}

TEST_CASE("conjecture1_experiment") {
    SUBCASE("K4: spectral equals exact") {
        const auto rows = conjecture1_experiment({4}, {3}, 2, 0, 1);
        REQUIRE(rows.size() == 2);
        for (const auto& r : rows) {
            CHECK(r.error.empty());
            CHECK(r.spectral == Approx(3.0).epsilon(1e-9));
            CHECK(r.relative_discrepancy <= 1e-9);
        }
    }
    SUBCASE("rows are ordered and reproducible") {
        const auto a = conjecture1_experiment({8, 10}, {3, 4}, 2, 200, 7);
        const auto b = conjecture1_experiment({8, 10}, {3, 4}, 2, 200, 7);
        REQUIRE(a.size() == 8);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].graph_seed == b[i].graph_seed);
            CHECK(a[i].exact == b[i].exact);
            CHECK(a[i].mc_mean == b[i].mc_mean);
        }
        CHECK(a[0].n == 8);
        CHECK(a[0].d == 3);
        CHECK(a[7].n == 10);
        CHECK(a[7].d == 4);
    }
    SUBCASE("n=8, d=4: exact value inside the Monte Carlo interval") {
        const auto rows = conjecture1_experiment({8}, {4}, 1, 10000, 11);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].mc_truncated == 0);
        CHECK(std::abs(rows[0].mc_mean - rows[0].exact) <= 3.9 * rows[0].mc_stderr);
    }
    SUBCASE("infeasible cells report an error per row") {
        const auto rows = conjecture1_experiment({5}, {3}, 1, 0, 1);
        REQUIRE(rows.size() == 1);
        CHECK_FALSE(rows[0].error.empty());
    }
}

TEST_CASE("conjecture2_check") {
    SUBCASE("K3: degenerate pair resolved in-plane") {
        const auto rep = conjecture2_check(build_circle(3));
        CHECK(rep.status == ConjectureStatus::Satisfied);
        CHECK((rep.a && rep.b && rep.c && rep.d && rep.e));
        // the resolved pair solves x + y + 1 = 0, x^2 + y^2 = 2
        const double r3 = std::sqrt(3.0);
        const double first = rep.basis(0, 0), second = rep.basis(1, 0);
        CHECK(rep.basis(2, 0) == Approx(1.0));
        CHECK(first + second == Approx(-1.0));
        CHECK(std::min(first, second) == Approx((-1 - r3) / 2));
        CHECK(std::max(first, second) == Approx((-1 + r3) / 2));
        CHECK(rep.basis(0, 1) == Approx(second));
        for (std::size_t r = 0; r < 3; ++r) CHECK(rep.basis(r, 2) == 1.0);
        CHECK(rep.column_sums[2] == Approx(3.0));
        CHECK(rep.basis_meeting_time == Approx(2.0));
        CHECK(rep.delta_t_inner_product_error <= 1e-9);
    }
    SUBCASE("circle N=4 has a 2-dimensional eigenspace for mu = 0") {
        const auto rep = conjecture2_check(build_circle(4));
        CHECK(rep.eigenspace_dims == std::vector<std::size_t>{1, 2, 1});
        CHECK(rep.status == ConjectureStatus::Satisfied);
    }
    SUBCASE("K4 has a 3-dimensional eigenspace") {
        const auto rep = conjecture2_check(random_regular(4, 3, 1));
        CHECK(rep.status == ConjectureStatus::Indeterminate);
        CHECK(rep.a);
        CHECK_FALSE(rep.witness.empty());
    }
    SUBCASE("satisfied reports reproduce the spectral meeting time") {
        for (std::size_t n = 3; n <= 10; ++n) {
            const auto rep = conjecture2_check(build_circle(n));
            if (rep.status != ConjectureStatus::Satisfied) continue;
            CHECK(rep.basis_meeting_time == Approx(rep.spectral_meeting_time).epsilon(1e-8));
            CHECK(rep.delta_t_inner_product_error <= 1e-8 * static_cast<double>(n * n));
        }
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto rep = conjecture2_check(random_regular(10, 3, seed));
            if (rep.status != ConjectureStatus::Satisfied) continue;
            CHECK(rep.basis_meeting_time == Approx(rep.spectral_meeting_time).epsilon(1e-8));
        }
    }
    SUBCASE("status is consistent with the property flags") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto rep = conjecture2_check(random_regular(12, 4, seed));
            const bool all = rep.a && rep.b && rep.c && rep.d && rep.e;
            CHECK((rep.status == ConjectureStatus::Satisfied) == all);
            if (rep.status == ConjectureStatus::Violated) CHECK_FALSE(rep.witness.empty());
        }
    }
}
