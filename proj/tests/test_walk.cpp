#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "rendezvous/walk.hpp"

using namespace rendezvous;
using doctest::Approx;

TEST_CASE("transition_matrix") {
    SUBCASE("triangle simple walk is J/3") {
        const auto p = transition_matrix(build_circle(3), SimpleWalk{});
        for (double v : p.data()) CHECK(v == Approx(1.0 / 3.0));
    }
    SUBCASE("circle N=4 uniform circle walk") {
        const auto p = transition_matrix(build_circle(4), CircleWalk{});
        const std::vector<double> row0{1.0 / 3, 1.0 / 3, 0.0, 1.0 / 3};
        CHECK(max_abs_diff(p.row(0), row0) <= 1e-15);
    }
    SUBCASE("circle walk direction convention") {
        const auto p = transition_matrix(build_circle(5), CircleWalk{0.5, 0.3, 0.2});
        CHECK(p(2, 1) == Approx(0.5));
        CHECK(p(2, 3) == Approx(0.3));
        CHECK(p(2, 2) == Approx(0.2));
        CHECK(p(0, 4) == Approx(0.5));
    }
    SUBCASE("torus N=3 uniform walk rows have five entries of 1/5") {
        const auto p = transition_matrix(build_torus(3), TorusWalk{});
        for (std::size_t r = 0; r < 9; ++r) {
            const auto row = p.row(r);
            CHECK(std::count_if(row.begin(), row.end(), [](double v) { return std::abs(v - 0.2) < 1e-15; }) == 5);
        }
    }
    SUBCASE("SimpleWalk on a regular graph is (I + A)/(d+1)") {
        const auto g = random_regular(10, 3, 4);
        const auto p = transition_matrix(g, SimpleWalk{});
        for (std::size_t u = 0; u < 10; ++u)
            for (std::size_t v = 0; v < 10; ++v)
                CHECK(p(u, v) == ((u == v || g.adjacent(u, v)) ? 0.25 : 0.0));
    }
    SUBCASE("incompatible pairings") {
        CHECK_THROWS_AS(transition_matrix(build_torus(3), CircleWalk{}), std::invalid_argument);
        CHECK_THROWS_AS(transition_matrix(build_circle(5), TorusWalk{}), std::invalid_argument);
        CHECK_THROWS_AS(transition_matrix(random_regular(8, 3, 1), CircleWalk{}), std::invalid_argument);
    }
    SUBCASE("invalid distributions") {
        CHECK_THROWS_AS(validate(CircleWalk{0.6, 0.6, -0.2}), std::invalid_argument);
        CHECK_THROWS_AS(validate(CircleWalk{0.5, 0.5, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(validate(TorusWalk{{0.2, 0.2, 0.2, 0.2, 0.3}}), std::invalid_argument);
    }
}

TEST_CASE("relative_chain") {
    SUBCASE("circle N=5 first row is (q0, q1, q2, q2, q1)") {
        const auto rc = relative_chain(build_circle(5), CircleWalk{});
        REQUIRE(rc.coefficients);
        CHECK(rc.coefficients->q0 == Approx(1.0 / 3.0));
        CHECK(rc.coefficients->q1 == Approx(2.0 / 9.0));
        CHECK(rc.coefficients->q2 == Approx(1.0 / 9.0));
        const std::vector<double> row0{1.0 / 3, 2.0 / 9, 1.0 / 9, 1.0 / 9, 2.0 / 9};
        CHECK(max_abs_diff(rc.m.row(0), row0) <= 1e-15);
        CHECK(rc.meeting_state == std::optional<std::size_t>{0});
    }
    SUBCASE("circle N=4 wrap-around puts 2 q2 at offset 2") {
        // direct product oracle: M(0,2) = sum_k P(0,k) P(2,k)
        const auto p = transition_matrix(build_circle(4), CircleWalk{});
        double direct = 0.0;
        for (std::size_t k = 0; k < 4; ++k) direct += p(0, k) * p(2, k);
        CHECK(direct == Approx(2.0 / 9.0));
        CHECK(relative_chain(build_circle(4), CircleWalk{}).m(0, 2) == Approx(direct));
    }
    SUBCASE("torus meeting state is the last cell") {
        CHECK(relative_chain(build_torus(4), TorusWalk{}).meeting_state == std::optional<std::size_t>{15});
    }
    SUBCASE("general graphs have no meeting state") {
        CHECK_FALSE(relative_chain(random_regular(8, 3, 2), SimpleWalk{}).meeting_state);
    }
    SUBCASE("row sums and symmetry of M") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 10; ++trial) {
            const auto s = oracle::random_simplex(3, rng);
            const auto rc = relative_chain(build_circle(7), CircleWalk{s[0], s[1], s[2]});
            CHECK(rc.m.asymmetry() <= 1e-12);
            for (std::size_t r = 0; r < 7; ++r) {
                double total = 0.0;
                for (double v : rc.m.row(r)) total += v;
                CHECK(total == Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("q0 + 2 q1 + 2 q2 = 1 on the simplex") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = oracle::random_simplex(3, rng);
        const auto q = circle_coefficients({s[0], s[1], s[2]});
        CHECK(q.q0 + 2 * q.q1 + 2 * q.q2 == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("laplacian") {
    SUBCASE("triangle simple walk: L = I - J/3, eigenvalues (0, 1, 1)") {
        const auto l = laplacian(transition_matrix(build_circle(3), SimpleWalk{}));
        CHECK(l.spectrum.eigenvalues[0] == Approx(0.0).scale(1.0));
        CHECK(l.spectrum.eigenvalues[1] == Approx(1.0));
        CHECK(l.spectrum.eigenvalues[2] == Approx(1.0));
        CHECK(l.zero_multiplicity == 1);
        CHECK(l.l(0, 1) == Approx(-1.0 / 3.0));
    }
    SUBCASE("circle N=4 simple: nonzero eigenvalues 8/9") {
        const auto l = laplacian(transition_matrix(build_circle(4), CircleWalk{}));
        for (std::size_t i = 1; i < 4; ++i) CHECK(l.spectrum.eigenvalues[i] == Approx(8.0 / 9.0).epsilon(1e-12));
    }
    SUBCASE("row sums zero, PSD, one zero eigenvalue on connected graphs") {
        std::mt19937_64 rng(23);
        std::vector<std::pair<RegularGraph, WalkSpec>> cases;
        for (int t = 0; t < 4; ++t) {
            const auto s = oracle::random_simplex(3, rng);
            cases.emplace_back(build_circle(6 + t), CircleWalk{s[0], s[1], s[2]});
            const auto v = oracle::random_simplex(5, rng);
            cases.emplace_back(build_torus(3 + t % 2), TorusWalk{{v[0], v[1], v[2], v[3], v[4]}});
            cases.emplace_back(random_regular(10, 3, t), SimpleWalk{});
        }
        for (const auto& [g, w] : cases) {
            const auto l = laplacian(transition_matrix(g, w));
            for (std::size_t r = 0; r < l.l.rows(); ++r) {
                double total = 0.0;
                for (double v : l.l.row(r)) total += v;
                CHECK(std::abs(total) <= 1e-12);
            }
            CHECK(l.l.asymmetry() <= 1e-12);
            CHECK(l.spectrum.eigenvalues.front() >= -1e-9);
            CHECK(l.zero_multiplicity == 1);
        }
    }
    SUBCASE("two disjoint triangles have zero multiplicity 2") {
        const RegularGraph two(2, {{1, 2}, {0, 2}, {0, 1}, {4, 5}, {3, 5}, {3, 4}});
        CHECK(laplacian(transition_matrix(two, SimpleWalk{})).zero_multiplicity == 2);
    }
}

TEST_CASE("simple walk: L eigenvalues are 1 - beta^2 with beta = (mu + 1)/(d + 1)") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = random_regular(12, 4, seed);
        DenseMatrix a(12, 12);
        for (std::size_t v = 0; v < 12; ++v)
            for (std::size_t u : g.neighbors(v)) a(v, u) = 1.0;
        std::vector<double> predicted;
        for (double mu : sym_eigen(a).eigenvalues) {
            const double beta = (mu + 1.0) / 5.0;
            predicted.push_back(1.0 - beta * beta);
        }
        std::sort(predicted.begin(), predicted.end());
        CHECK(max_abs_diff(predicted, laplacian(transition_matrix(g, SimpleWalk{})).spectrum.eigenvalues) <= 1e-8);
    }
}
