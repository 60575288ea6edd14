#include "doctest.h"

#include <algorithm>

#include "iterindex/mec.hpp"

using namespace iterindex;
using mec::HomologyProfile;
using mec::ReebOrbitRecord;
using mec::Sign;

namespace {

ReebOrbitRecord elliptic(std::int64_t m, std::int64_t p, std::int64_t q, std::int64_t r) {
    ReebOrbitRecord rec;
    rec.germ = germ::Elliptic2D{p, q, r};
    rec.mean_index = 2 * m + Rational(2 * p, q);
    rec.delta_integer_part = m;
    return rec;
}

ReebOrbitRecord hyperbolic(bool odd, std::int64_t delta) {
    germ::EigenData e;
    e.real_eigenvalues = odd ? std::vector<Rational>{Rational(-2), Rational(-1, 2)}
                             : std::vector<Rational>{Rational(2), Rational(1, 2)};
    ReebOrbitRecord rec;
    rec.germ = germ::NondegenerateLinear{e};
    rec.mean_index = delta;
    return rec;
}

ReebOrbitRecord degenerate(std::int64_t index, germ::Branch b, std::int64_t delta) {
    ReebOrbitRecord rec;
    rec.germ = germ::TotallyDegenerate2D{index, b};
    rec.mean_index = delta;
    return rec;
}

ReebOrbitRecord irrational(Rational delta, std::string label) {
    germ::EigenData e;
    e.irrational_rotation_count = 1;
    ReebOrbitRecord rec;
    rec.label = std::move(label);
    rec.germ = germ::NondegenerateLinear{e};
    rec.mean_index = delta;
    return rec;
}

// (1/N) sum_{l=1}^{N} (-1)^l dim HC_{+-l}, summed directly.
Rational cesaro(const HomologyProfile& h, Sign s, std::int64_t N, bool alternate) {
    Rational sum = 0;
    for (std::int64_t l = 1; l <= N; ++l) {
        const std::int64_t deg = s == Sign::positive ? l : -l;
        const std::int64_t d = h.dim(deg);
        sum += alternate && deg % 2 != 0 ? -d : d;
    }
    return sum / N;
}

Rational abs_r(const Rational& x) { return x < 0 ? -x : x; }

}  // namespace

TEST_CASE("sphere profile") {
    const auto h = HomologyProfile::standard_sphere(2);
    CHECK(h.dim(0) == 0);
    CHECK(h.dim(1) == 0);
    CHECK(h.dim(2) == 1);
    CHECK(h.dim(3) == 0);
    CHECK(h.dim(40) == 1);
    CHECK(h.dim(-5) == 0);
    CHECK(mec::chi_from_profile(h, Sign::positive) == Rational(1, 2));
    CHECK(mec::chi_from_profile(h, Sign::negative) == 0);
    CHECK(mec::beta_from_profile(h, Sign::positive) == Rational(1, 2));
    const auto h3 = HomologyProfile::standard_sphere(3);
    CHECK(h3.dim(2) == 0);
    CHECK(h3.dim(4) == 1);
    CHECK(mec::chi_from_profile(h3, Sign::positive) == Rational(1, 2));
    CHECK(mec::chi_from_profile(HomologyProfile::zero(), Sign::positive) == 0);
}

TEST_CASE("profile means agree with direct Cesaro sums") {
    const std::int64_t N = 10000;
    const std::vector<HomologyProfile> profiles{
        HomologyProfile::standard_sphere(2),
        HomologyProfile({{0, 3}, {1, 2}}, {2, {1, 0, 2}}, {1, {0, 1}}, 2, 1),
        HomologyProfile({}, {0, {1, 0, 1, 0}}, {1, {0}}, 0, 1),
        HomologyProfile({{5, 7}}, {6, {2, 1, 1}}, {3, {1}}, 6, 3),
    };
    for (const auto& h : profiles) {
        for (auto s : {Sign::positive, Sign::negative}) {
            CHECK(abs_r(mec::chi_from_profile(h, s) - cesaro(h, s, N, true)) <= Rational(50, N));
            CHECK(abs_r(mec::beta_from_profile(h, s) - cesaro(h, s, N, false)) <= Rational(50, N));
        }
    }
}

TEST_CASE("alternating tail matches the direct average within 1/N") {
    const std::int64_t N = 10000;
    const HomologyProfile h({}, {0, {1, 0, 1, 0}}, {1, {0}}, 0, 1);
    CHECK(mec::chi_from_profile(h, Sign::positive) == Rational(1, 2));
    CHECK(abs_r(mec::chi_from_profile(h, Sign::positive) - cesaro(h, Sign::positive, N, true)) <= Rational(1, N));
    CHECK(abs_r(mec::chi_from_profile(h, Sign::positive) - cesaro(h, Sign::positive, N + 1, true)) <=
          Rational(1, N + 1));
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(HomologyProfile({}, {0, {}}, {0, {0}}, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(HomologyProfile({}, {0, {-1}}, {0, {0}}, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(HomologyProfile({{4, 1}}, {2, {1}}, {0, {0}}, 2, 0), std::invalid_argument);
}

TEST_CASE("closed-form examples") {
    CHECK(mec::ustilovsky_chi(1, 3) == Rational(1, 2));
    CHECK(mec::ustilovsky_chi(7, 3) == Rational(5, 6));
    const std::int64_t ps[] = {1, 7, 9, 15, 17};
    for (std::int64_t n : {3, 5, 7}) {
        for (int i = 0; i + 1 < 5; ++i) CHECK(mec::ustilovsky_chi(ps[i], n) < mec::ustilovsky_chi(ps[i + 1], n));
    }
    CHECK_THROWS_AS(mec::ustilovsky_chi(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(mec::ustilovsky_chi(7, 4), std::invalid_argument);

    CHECK(mec::unit_cotangent_chi(3) == 1);
    CHECK(mec::unit_cotangent_chi(4) == Rational(2, 3));
    CHECK(mec::unit_cotangent_chi(2) == Rational(1, 2));
    CHECK(mec::unit_cotangent_chi(2, mec::FundamentalClassMode::full) == 1);
    // Base is an oriented Grassmannian: chi(B) = 2 floor((n+1)/2), N = n - 1.
    for (std::int64_t n = 3; n <= 20; ++n) {
        CHECK(mec::unit_cotangent_chi(n) == mec::prequantization_chi(2 * ((n + 1) / 2), n - 1));
    }
    // S^3 over CP^1 agrees with the sphere profile.
    CHECK(mec::prequantization_chi(2, 2) ==
          mec::chi_from_profile(HomologyProfile::standard_sphere(2), Sign::positive));
    CHECK(mec::prequantization_chi(2, 2, 3) == Rational(3, 2));
}

TEST_CASE("orbit side of the resonance relation") {
    const std::vector<ReebOrbitRecord> pair{irrational(3, "a"), irrational(6, "b")};
    CHECK(mec::chi_from_orbits(pair, Sign::positive) == Rational(1, 2));
    CHECK(mec::chi_from_orbits(pair, Sign::negative) == 0);
    CHECK(mec::resonance_check(pair, HomologyProfile::standard_sphere(2)).pass());

    const std::vector<ReebOrbitRecord> sdm{degenerate(1, germ::Branch::sdm, 2)};
    CHECK(mec::chi_from_orbits(sdm, Sign::positive) == Rational(1, 2));

    auto neg = hyperbolic(false, -4);
    CHECK(mec::chi_from_orbits({neg}, Sign::negative) == Rational(-1, 4));
    CHECK(mec::chi_from_orbits({neg}, Sign::positive) == 0);

    const auto even = hyperbolic(false, 2);
    const auto res = mec::resonance_check({even}, HomologyProfile::standard_sphere(2));
    CHECK_FALSE(res.pass());
    CHECK(res.orbits_plus == Rational(-1, 2));

    auto zero = hyperbolic(false, 0);
    CHECK_THROWS_AS(mec::chi_from_orbits({zero}, Sign::positive), std::invalid_argument);
}

TEST_CASE("record validation") {
    CHECK_NOTHROW(mec::validate(elliptic(1, 1, 3, 2)));
    auto bad = elliptic(1, 1, 3, 2);
    bad.mean_index = Rational(7, 3);
    CHECK_THROWS_AS(mec::validate(bad), germ::ModelInconsistency);
    CHECK_THROWS_AS(mec::validate(hyperbolic(true, 2)), germ::ModelInconsistency);
    CHECK_NOTHROW(mec::validate(hyperbolic(true, 3)));
    auto frac = degenerate(1, germ::Branch::sdm, 0);
    frac.mean_index = Rational(1, 2);
    CHECK_THROWS_AS(mec::validate(frac), germ::ModelInconsistency);
}

TEST_CASE("local homology of non-degenerate iterates") {
    const auto x = elliptic(0, 1, 3, 0);
    auto lh = mec::local_homology_3d(x, 2);
    REQUIRE_FALSE(lh.degenerate);
    REQUIRE(lh.options.size() == 1);
    CHECK(*lh.options[0].degree == 0);
    CHECK(lh.options[0].dimension == 1);
    CHECK(*mec::local_homology_3d(elliptic(1, 1, 3, 0), 1).options[0].degree == 2);
    CHECK(*mec::local_homology_3d(elliptic(1, 1, 3, 0), 5).options[0].degree == 12);

    const auto h = hyperbolic(true, 1);
    CHECK(*mec::local_homology_3d(h, 1).options[0].degree == 0);
    const auto bad = mec::local_homology_3d(h, 2);
    CHECK(bad.options[0].dimension == 0);
    CHECK_FALSE(bad.options[0].degree.has_value());
    CHECK(*mec::local_homology_3d(h, 3).options[0].degree == 2);
    CHECK(mec::local_total_dimension(h, 4) == 0);

    CHECK(*mec::local_homology_3d(hyperbolic(false, 2), 3).options[0].degree == 5);
}

TEST_CASE("support degrees for m = 0, p = 1") {
    for (std::int64_t q = 2; q <= 6; ++q) {
        const auto x = elliptic(0, 1, q, 0);
        std::vector<std::int64_t> got, expected;
        for (std::int64_t k = 1; k < 2 * q; ++k) {
            if (k == q) continue;
            got.push_back(*mec::local_homology_3d(x, k).options.at(0).degree);
            expected.push_back(k < q ? 0 : 2);
        }
        CHECK(got == expected);
    }
}

TEST_CASE("local homology of degenerate iterates") {
    const auto x = elliptic(0, 1, 3, 2);
    const auto lh = mec::local_homology_3d(x, 3);
    REQUIRE(lh.degenerate);
    REQUIRE(lh.options.size() == 1);
    CHECK(*lh.options[0].branch == germ::Branch::saddle);
    CHECK(*lh.options[0].degree == 1);
    CHECK(lh.options[0].dimension == 1);

    // I = 1 admits both SDM and SDMin; index 0 only the trivial branch.
    const auto r0 = mec::local_homology_3d(elliptic(0, 1, 3, 0), 3);
    std::vector<germ::Branch> branches;
    for (const auto& o : r0.options) branches.push_back(*o.branch);
    CHECK(std::find(branches.begin(), branches.end(), germ::Branch::sdm) != branches.end());
    CHECK(std::find(branches.begin(), branches.end(), germ::Branch::sdmin) != branches.end());
    CHECK(std::find(branches.begin(), branches.end(), germ::Branch::saddle) == branches.end());

    const auto r1 = mec::local_homology_3d(elliptic(0, 1, 2, 1), 2);
    REQUIRE(r1.options.size() == 1);
    CHECK(*r1.options[0].branch == germ::Branch::trivial);
    CHECK(r1.options[0].dimension == 0);

    const auto sdm = degenerate(1, germ::Branch::sdm, 2);
    const auto first = mec::local_homology_3d(sdm, 1);
    REQUIRE(first.options.size() == 1);
    CHECK(*first.options[0].branch == germ::Branch::sdm);
    CHECK(*first.options[0].degree == 2);
    CHECK(mec::local_homology_3d(sdm, 2).options.size() == 2);
    CHECK(mec::local_total_dimension(x, 3) == 1);
}

TEST_CASE("Morse consistency on the sphere") {
    const auto sphere = HomologyProfile::standard_sphere(2);
    const auto ok = mec::morse_consistency({degenerate(1, germ::Branch::sdm, 2)}, sphere);
    CHECK(ok.verdict == mec::Verdict::consistent);
    CHECK(ok.violations.empty());
    CHECK(ok.window_lo < 0);
    CHECK(ok.window_hi > 60);

    const auto odd = mec::morse_consistency({hyperbolic(true, 1)}, sphere);
    CHECK(odd.verdict == mec::Verdict::excluded);
    REQUIRE_FALSE(odd.violations.empty());
    CHECK(odd.violations[0].constraint == "C2");
    CHECK(*odd.violations[0].degree == 0);

    const auto even = mec::morse_consistency({hyperbolic(false, 2)}, sphere);
    CHECK(even.verdict == mec::Verdict::excluded);
    CHECK(even.violations[0].constraint == "C3");

    // m = 0, p = 1: degree-0 excess q - 1 against neighbours r - 1.
    const auto ell = mec::morse_consistency({elliptic(0, 1, 3, 2)}, sphere);
    CHECK(ell.verdict == mec::Verdict::excluded);
    bool degree_zero = false;
    for (const auto& v : ell.violations) degree_zero |= v.degree && *v.degree == 0;
    CHECK(degree_zero);

    CHECK(mec::to_string(mec::Verdict::consistent) == "consistent");
}

TEST_CASE("non-planar records need supplied tables") {
    auto x = degenerate(1, germ::Branch::sdm, 2);
    x.n = 3;
    CHECK_THROWS(mec::morse_consistency({x}, HomologyProfile::standard_sphere(3)));
}

TEST_CASE("asymptotic Morse bound") {
    const auto sphere = HomologyProfile::standard_sphere(2);
    const auto sdm = degenerate(1, germ::Branch::sdm, 2);
    CHECK(mec::beta_of_orbit(sdm) == 1);
    const auto rep = mec::beta_bound_check({sdm}, sphere);
    CHECK(rep.profile_plus == Rational(1, 2));
    CHECK(rep.orbits_plus == Rational(1, 2));
    CHECK(rep.pass());
    const auto empty = mec::beta_bound_check({}, sphere);
    CHECK_FALSE(empty.pass_plus);
    CHECK(empty.pass_minus);
    CHECK(mec::beta_of_orbit(hyperbolic(true, 1)) == Rational(1, 2));
}

TEST_CASE("subordination experiment") {
    const auto e = mec::subordination_experiment(elliptic(0, 1, 3, 2), 12);
    CHECK(e.dims == std::vector<std::int64_t>(12, 1));
    CHECK(e.subordinated);
    const auto h = mec::subordination_experiment(hyperbolic(true, 1), 8);
    CHECK(h.dims == std::vector<std::int64_t>{1, 0, 1, 0, 1, 0, 1, 0});
    CHECK(h.subordinated);
    CHECK_FALSE(h.first_mismatch.has_value());
    const auto z = mec::subordination_experiment(elliptic(0, 1, 4, 0), 8);
    CHECK(z.dims == std::vector<std::int64_t>(8, 1));
}

TEST_CASE("single-orbit exclusion on the 3-sphere, small bounds") {
    mec::S3Bounds b;
    b.q_max = 4;
    b.r_max = 3;
    b.m_max = 2;
    b.n_max = 30;
    const auto rep = mec::exclude_single_orbit_s3(b);
    REQUIRE(rep.survivors.size() == 1);
    const auto& s = rep.cases[rep.survivors[0]];
    CHECK(s.family == "totally-degenerate");
    CHECK(s.parameters.at("branch") == "SDM");
    CHECK(s.parameters.at("delta") == "2/1");
    CHECK(s.stage == "survived");
}
