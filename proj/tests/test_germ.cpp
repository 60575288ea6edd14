#include "doctest.h"

#include <complex>
#include <random>

#include "iterindex/germ.hpp"
#include "oracles.hpp"

using namespace iterindex;
using germ::Elliptic2D;
using germ::NondegenerateLinear;

namespace {

germ::GermModel linear(std::vector<Rational> reals, std::vector<germ::UnitRotation> rots = {},
                       std::int64_t irrational = 0) {
    germ::EigenData e;
    e.real_eigenvalues = std::move(reals);
    e.unit_rotations = std::move(rots);
    e.irrational_rotation_count = irrational;
    return NondegenerateLinear{e};
}

}  // namespace

TEST_CASE("index of a non-degenerate point counts eigenvalues above one") {
    germ::EigenData e;
    e.real_eigenvalues = {Rational(2), Rational(1, 2)};
    CHECK(germ::index_nondegenerate(e) == -1);
    e.real_eigenvalues = {Rational(-2), Rational(-1, 2)};
    CHECK(germ::index_nondegenerate(e) == 1);
    CHECK(germ::parity(e) == germ::Parity::odd);
    e.real_eigenvalues = {Rational(3), Rational(2)};
    CHECK(germ::index_nondegenerate(e) == 1);
    e.real_eigenvalues = {Rational(-3), Rational(-2)};
    CHECK(germ::parity(e) == germ::Parity::even);
}

TEST_CASE("good and bad iterates") {
    CHECK(germ::classify_iterate(1, 2, germ::Parity::odd) == germ::OrbitKind::bad);
    CHECK(germ::classify_iterate(1, 3, germ::Parity::odd) == germ::OrbitKind::good);
    CHECK(germ::classify_iterate(2, 4, germ::Parity::odd) == germ::OrbitKind::bad);
    CHECK(germ::classify_iterate(2, 6, germ::Parity::odd) == germ::OrbitKind::good);
    CHECK(germ::classify_iterate(1, 2, germ::Parity::even) == germ::OrbitKind::good);
    CHECK_THROWS_AS(germ::classify_iterate(3, 4, germ::Parity::even), std::invalid_argument);
}

TEST_CASE("odd hyperbolic germ: alternating index, vanishing iterated index at even k") {
    const auto g = linear({Rational(-2), Rational(-1, 2)});
    for (std::int64_t k = 1; k <= 12; ++k) {
        CHECK(germ::index_of_iterate(g, k) == (k % 2 ? 1 : -1));
        CHECK(germ::iterated_index_germ(g, k) == (k % 2 ? 1 : 0));
    }
    CHECK(germ::subordinating_set(g).elements() == std::vector<std::int64_t>{1, 2});
    CHECK(germ::sigma(g) == Rational(1, 2));
}

TEST_CASE("even hyperbolic germ has sigma -1") {
    const auto g = linear({Rational(2), Rational(1, 2)});
    CHECK(germ::sigma(g) == -1);
    CHECK(germ::subordinating_set(g).elements() == std::vector<std::int64_t>{1});
}

TEST_CASE("irrational elliptic germ has sigma 1") {
    CHECK(germ::sigma(linear({}, {}, 1)) == 1);
}

TEST_CASE("elliptic closed form and sigma") {
    for (std::int64_t q = 2; q <= 12; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            for (std::int64_t r = 0; r <= 12; ++r) {
                const germ::GermModel g = Elliptic2D{p, q, r};
                for (std::int64_t k = 1; k <= 2 * q; ++k) {
                    CHECK(germ::index_of_iterate(g, k) == (k % q == 0 ? 1 - r * q : 1));
                    CHECK(germ::iterated_index_germ(g, k) == (k % q == 0 ? 1 - r : 1));
                }
                CHECK(germ::sigma(g) == Rational(q - r, q));
                // Same germ written as a twisted unit rotation.
                const auto twisted = linear({}, {{Rational(p, q), r}});
                CHECK(germ::sigma(twisted) == Rational(q - r, q));
                CHECK(germ::iterated_index_sequence(twisted) == germ::iterated_index_sequence(g));
            }
        }
    }
}

TEST_CASE("germ validation") {
    CHECK_THROWS_AS(germ::validate(Elliptic2D{1, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(germ::validate(Elliptic2D{2, 4, 0}), std::invalid_argument);
    CHECK_THROWS_AS(germ::validate(Elliptic2D{0, 3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(germ::validate(Elliptic2D{1, 3, -1}), std::invalid_argument);
    CHECK_THROWS_AS(germ::validate(linear({Rational(1)})), std::invalid_argument);
    CHECK_THROWS_AS(germ::validate(linear({Rational(-1)})), std::invalid_argument);
    CHECK_THROWS_AS(germ::validate(linear({}, {{Rational(3, 2), 0}})), std::invalid_argument);
    CHECK_THROWS_AS(germ::parity(germ::GermModel{germ::Numeric{}}), std::invalid_argument);
    CHECK(germ::parse_branch("Trivial") == germ::Branch::trivial);
    CHECK(germ::parse_branch("SDMin") == germ::Branch::sdmin);
    CHECK_THROWS_AS(germ::parse_branch("max"), std::invalid_argument);
}

TEST_CASE("winding numbers of maps with known degree") {
    using C = std::complex<double>;
    auto degree = [](germ::PlanarMap f) { return germ::planar_degree(f); };
    auto r1 = degree([](C z) { return 2.0 * z; });  // z - F = -z
    REQUIRE(r1.certified());
    CHECK(*r1.value == 1);
    auto r2 = degree([](C z) { return z - z * z * z; });  // z^3
    REQUIRE(r2.certified());
    CHECK(*r2.value == 3);
    auto r3 = degree([](C z) { return z + std::conj(z) * std::conj(z); });  // -conj(z)^2
    REQUIRE(r3.certified());
    CHECK(*r3.value == -2);
    auto r4 = degree([](C z) { return z; });
    CHECK_FALSE(r4.certified());
    CHECK(r4.status == germ::DegreeStatus::near_fixed_point);
}

TEST_CASE("radius instability is reported rather than a number") {
    using C = std::complex<double>;
    // A second fixed point at 0.007 sits between the first two radii.
    auto f = [](C z) { return z + z * (z - C(0.007, 0.0)); };
    auto r = germ::planar_degree(f);
    CHECK_FALSE(r.certified());
    CHECK(r.status == germ::DegreeStatus::unstable_radius);
    CHECK(germ::winding_index(f, 0.01).status == germ::DegreeStatus::unstable_radius);
    CHECK(germ::winding_index(f, 0.005).certified());
}

TEST_CASE("non-finite map values are reported as divergence") {
    using C = std::complex<double>;
    auto blowup = [](C z) { return std::abs(z) > 0.003 ? C(INFINITY, 0.0) : 2.0 * z; };
    CHECK(germ::planar_degree(blowup).status == germ::DegreeStatus::diverged);
    germ::WindingOptions small;
    small.radii = {2e-3, 1e-3};
    CHECK(*germ::planar_degree(blowup, small).value == 1);
}

TEST_CASE("winding index agrees with the linear index on random planar maps") {
    using C = std::complex<double>;
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> mag(0.2, 4.0);
    std::bernoulli_distribution flip(0.5);
    int tested = 0;
    while (tested < 20) {
        double a = mag(rng), b = mag(rng);
        if (flip(rng)) a = -a;
        if (flip(rng)) b = -b;
        if (std::abs(std::abs(a) - 1) < 0.05 || std::abs(std::abs(b) - 1) < 0.05) continue;
        // Diagonal in a rotated basis, plus a cubic term.
        const double t = 0.3 * tested;
        const C u(std::cos(t), std::sin(t));
        auto f = [=](C z) {
            const C w = z * std::conj(u);
            const C image(a * w.real() + w.real() * w.real() * w.real(), b * w.imag());
            return image * u;
        };
        germ::EigenData e;
        e.real_eigenvalues = {Rational(static_cast<std::int64_t>(std::lround(a * 1000)), 1000),
                              Rational(static_cast<std::int64_t>(std::lround(b * 1000)), 1000)};
        const auto r = germ::planar_degree(f);
        REQUIRE(r.certified());
        CHECK(*r.value == germ::index_nondegenerate(e));
        ++tested;
    }
}

TEST_CASE("winding index of the elliptic model map matches the closed form") {
    for (auto [q, r] : {std::pair<std::int64_t, std::int64_t>{2, 1}, {3, 1}, {2, 2}}) {
        const auto base = germ::elliptic_model_map(1, q, r);
        for (std::int64_t k = 1; k <= 2 * q; ++k) {
            const auto d = germ::planar_degree(germ::iterate(base, k));
            REQUIRE_MESSAGE(d.certified(), d.detail);
            CHECK(*d.value == (k % q == 0 ? 1 - r * q : 1));
        }
    }
}

TEST_CASE("one-dimensional index") {
    CHECK(germ::index_1d([](double x) { return 2 * x; }, 0.1) == -1);
    CHECK(germ::index_1d([](double x) { return x / 2; }, 0.1) == 1);
    CHECK(germ::index_1d([](double x) { return x + x * x; }, 0.1) == 0);
    CHECK_THROWS_AS(germ::index_1d([](double x) { return x; }, 0.1), germ::OracleFailure);
}

TEST_CASE("numeric germ index of the elliptic model, q=2 r=1") {
    germ::Numeric n;
    n.dimension = 2;
    n.planar = germ::elliptic_model_map(1, 2, 1);
    const std::vector<std::int64_t> gens{2};
    n.declared_set = seq::DivisorClosedSet::generated_by(gens);
    const germ::GermModel g = n;
    CHECK(germ::index_of_iterate(g, 1) == 1);
    CHECK(germ::index_of_iterate(g, 2) == -1);
    CHECK(germ::iterated_index_germ(g, 2) == 0);
}

TEST_CASE("numeric 1-D germ") {
    germ::Numeric n;
    n.dimension = 1;
    n.interval = [](double x) { return -1.5 * x + x * x * x; };
    n.declared_set = seq::DivisorClosedSet::generated_by(std::vector<std::int64_t>{2});
    const germ::GermModel g = n;
    CHECK(germ::index_of_iterate(g, 1) == 1);
    CHECK(germ::index_of_iterate(g, 2) == -1);
    CHECK(germ::sigma(g) == Rational(1, 2));
}

TEST_CASE("property: random analytic germs give integral, subordinated index sequences") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::int64_t> qd(2, 12), rd(0, 12), kind(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        germ::GermModel g;
        switch (kind(rng)) {
            case 0: {
                const std::int64_t q = qd(rng);
                std::int64_t p = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q - 1));
                while (std::gcd(p, q) != 1) p = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q - 1));
                g = Elliptic2D{p, q, rd(rng)};
                break;
            }
            case 1:
                g = linear({Rational(-3), Rational(-1, 3)});
                break;
            case 2:
                g = linear({Rational(5), Rational(1, 5)});
                break;
            default: {
                // Block sum: odd hyperbolic block plus two twisted rotations.
                const std::int64_t q1 = qd(rng), q2 = qd(rng);
                g = linear({Rational(-2), Rational(-1, 2)},
                           {{Rational(1, q1), rd(rng)}, {Rational(q2 - 1, q2), rd(rng)}});
            }
        }
        const auto set = germ::subordinating_set(g);
        const auto iota = germ::index_sequence(g, 2 * set.q_max());
        const auto rep = seq::integrality_check(iota);
        CHECK(rep.integral);
        CHECK(rep.mean_is_integer);
        const auto I = germ::iterated_index_sequence(g);
        const auto setv = set.elements();
        for (std::int64_t k = 1; k <= 2 * set.q_max(); ++k) {
            const std::int64_t raw = germ::index_of_iterate(g, k);
            CHECK(raw == germ::index_of_iterate(g, oracle::largest_divisor_in(setv, k)));
            CHECK(I(k) == oracle::phi_transform_at(
                              [&](std::int64_t d) { return Rational(germ::index_of_iterate(g, d)); }, k));
            CHECK(is_integer(I(k)));
        }
    }
}
