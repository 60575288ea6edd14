#include "doctest.h"

#include <cmath>

#include "iterindex/orbits.hpp"
#include "oracles.hpp"

using namespace iterindex;
using orbits::CircleEndo;
using orbits::TorusLinear;

namespace {

TorusLinear torus(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return TorusLinear{{{{a, b}, {c, d}}}};
}

orbits::Numeric1D cubic_model(std::vector<double> seeds) {
    orbits::Numeric1D n;
    n.map = [](double x) { return -1.5 * x + x * x * x; };
    n.lo = -1.0;
    n.hi = 1.0;
    n.seeds = std::move(seeds);
    return n;
}

}  // namespace

TEST_CASE("circle Lefschetz numbers match 1 - d^k") {
    for (std::int64_t d = 2; d <= 4; ++d)
        for (std::int64_t k = 1; k <= 9; ++k)
            CHECK(orbits::lefschetz(CircleEndo{d}, k) == oracle::circle_lefschetz(d, k));
}

TEST_CASE("torus Lefschetz numbers match det(I - A^k)") {
    const std::int64_t cat[] = {-1, -5, -16, -45, -121, -320, -841, -2205};
    const std::int64_t neg[] = {5, -5, 20, -45, 125, -320, 845, -2205};
    const std::int64_t fib[] = {-1, -1, -4, -5, -11, -16, -29, -45};
    for (std::int64_t k = 1; k <= 8; ++k) {
        CHECK(orbits::lefschetz(torus(2, 1, 1, 1), k) == cat[k - 1]);
        CHECK(orbits::lefschetz(torus(-2, 1, 1, -1), k) == neg[k - 1]);
        CHECK(orbits::lefschetz(torus(1, 1, 1, 0), k) == fib[k - 1]);
    }
    for (const auto& m : {oracle::Matrix{{{3, 1}, {2, 1}}}, oracle::Matrix{{{0, 1}, {1, 3}}},
                          oracle::Matrix{{{2, 0}, {0, 3}}}, oracle::Matrix{{{1, 2}, {3, -1}}}}) {
        for (std::int64_t k = 1; k <= 6; ++k) {
            CHECK(orbits::lefschetz(TorusLinear{m}, k) == oracle::torus_lefschetz(m, k));
        }
    }
}

TEST_CASE("primitive orbit counts of the circle map") {
    for (std::int64_t d = 2; d <= 3; ++d) {
        for (std::int64_t k = 1; k <= 10; ++k) {
            const auto list = orbits::enumerate_periodic_orbits(CircleEndo{d}, k);
            std::int64_t primitive = 0;
            for (const auto& o : list) {
                primitive += o.minimal_period == k;
                CHECK(k % o.minimal_period == 0);
                CHECK(o.index == -1);
            }
            CHECK(primitive == oracle::circle_primitive_orbits(d, k));
        }
    }
}

TEST_CASE("doubling map period-3 orbits") {
    const auto list = orbits::enumerate_periodic_orbits(CircleEndo{2}, 3);
    REQUIRE(list.size() == 3);
    CHECK(list[0].point == std::vector<Rational>{Rational(0)});
    CHECK(list[1].point == std::vector<Rational>{Rational(1, 7)});
    CHECK(list[2].point == std::vector<Rational>{Rational(3, 7)});
    CHECK(orbits::iterated_index_map(CircleEndo{2}, 3) == -3);
}

TEST_CASE("totient formula holds on exact models") {
    for (const orbits::MapModel& m :
         {orbits::MapModel{CircleEndo{2}}, orbits::MapModel{CircleEndo{3}},
          orbits::MapModel{torus(2, 1, 1, 1)}, orbits::MapModel{torus(-2, 1, 1, -1)},
          orbits::MapModel{torus(1, 1, 1, 0)}, orbits::MapModel{torus(0, 1, 1, -3)}}) {
        for (const auto& row : orbits::verify_theorem_index_maps(m, 8)) {
            CHECK_MESSAGE(row.equal, orbits::describe(m) << " k=" << row.k);
            CHECK(Rational(row.direct) == row.formula);
        }
    }
}

TEST_CASE("odd torus points produce bad orbits") {
    // Eigenvalues of [[-2,1],[1,-1]] are negative, one below -1: the origin is odd.
    const auto list = orbits::enumerate_periodic_orbits(torus(-2, 1, 1, -1), 2);
    bool saw_bad = false;
    for (const auto& o : list) {
        if (o.minimal_period == 1) {
            CHECK(o.parity == germ::Parity::odd);
            CHECK(o.kind == germ::OrbitKind::bad);
            saw_bad = true;
        }
    }
    CHECK(saw_bad);
}

TEST_CASE("torus validation rejects roots of unity") {
    CHECK_THROWS_AS(orbits::validate(torus(0, -1, 1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(orbits::validate(torus(1, 1, 0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(orbits::validate(torus(-1, 0, 0, 3)), std::invalid_argument);
    CHECK_THROWS_AS(orbits::validate(torus(1, -1, 1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(orbits::validate(CircleEndo{1}), std::invalid_argument);
    CHECK_NOTHROW(orbits::validate(torus(2, 1, 1, 1)));
}

TEST_CASE("numeric interval model: odd repeller and even 2-cycle") {
    const auto model = cubic_model({0.0, 0.7});
    CHECK(orbits::lefschetz(model, 1) == 1);
    CHECK(orbits::lefschetz(model, 2) == 1);
    const auto list = orbits::enumerate_periodic_orbits(model, 2);
    REQUIRE(list.size() == 2);
    const auto& cycle = list[0];
    const auto& origin = list[1];
    CHECK(cycle.minimal_period == 2);
    CHECK(std::abs(*cycle.numeric_point + std::sqrt(0.5)) < 1e-9);
    CHECK(cycle.index == 1);
    CHECK(origin.minimal_period == 1);
    CHECK(origin.parity == germ::Parity::odd);
    CHECK(origin.kind == germ::OrbitKind::bad);
    CHECK(orbits::iterated_index_map(model, 2) == 1);
    for (const auto& row : orbits::verify_theorem_index_maps(model, 4)) CHECK(row.equal);
}

TEST_CASE("numeric model with missing seeds is rejected") {
    const auto model = cubic_model({0.0});
    CHECK_NOTHROW(orbits::lefschetz(model, 1));
    CHECK_THROWS_AS(orbits::lefschetz(model, 2), orbits::SeedError);
}
