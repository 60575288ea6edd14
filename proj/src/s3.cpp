#include <numeric>
#include <stdexcept>

#include "iterindex/mec.hpp"

namespace iterindex::mec {

namespace {

germ::GermModel hyperbolic_germ(bool odd) {
    germ::EigenData e;
    e.real_eigenvalues = odd ? std::vector<Rational>{Rational(-2), Rational(-1, 2)}
                             : std::vector<Rational>{Rational(2), Rational(1, 2)};
    return germ::NondegenerateLinear{e};
}

germ::GermModel irrational_germ() {
    germ::EigenData e;
    e.irrational_rotation_count = 1;
    return germ::NondegenerateLinear{e};
}

std::vector<ReebOrbitRecord> copies_of(const ReebOrbitRecord& rec, std::int64_t copies) {
    std::vector<ReebOrbitRecord> out;
    for (std::int64_t i = 0; i < copies; ++i) {
        ReebOrbitRecord c = rec;
        c.label = copies == 1 ? "x" : "x" + std::to_string(i + 1);
        out.push_back(std::move(c));
    }
    return out;
}

// With only positive-index orbits of equal sigma, the relation
// copies * sigma / Delta = chi^+ fixes Delta; no solution when sigma <= 0.
std::optional<Rational> forced_mean_index(const Rational& sigma, std::int64_t copies,
                                          const Rational& chi_plus) {
    if (sigma <= 0) return std::nullopt;
    return copies * sigma / chi_plus;
}

ConsistencyReport excluded(std::string constraint, std::string message,
                           std::optional<std::int64_t> degree = std::nullopt) {
    ConsistencyReport r;
    r.verdict = Verdict::excluded;
    Violation v;
    v.constraint = std::move(constraint);
    v.degree = degree;
    v.message = std::move(message);
    r.violations.push_back(std::move(v));
    return r;
}

class Runner {
public:
    Runner(const S3Bounds& bounds, std::int64_t copies)
        : bounds_(bounds), copies_(copies), sphere_(HomologyProfile::standard_sphere(2)) {
        if (bounds.q_max < 2 || bounds.m_max < 1 || bounds.r_max < 0 || bounds.n_max < 1) {
            throw std::invalid_argument("bounds need q_max >= 2, m_max >= 1, r_max >= 0, n_max >= 1");
        }
        report_.copies = copies;
        chi_plus_ = chi_from_profile(sphere_, Sign::positive);
    }

    S3Report run() {
        hyperbolic(false);
        hyperbolic(true);
        elliptic_irrational();
        for (std::int64_t m = 0; m <= bounds_.m_max; ++m)
            for (std::int64_t q = 2; q <= bounds_.q_max; ++q)
                for (std::int64_t p = 1; p < q; ++p) {
                    if (std::gcd(p, q) != 1) continue;
                    for (std::int64_t r = 0; r <= bounds_.r_max; ++r) elliptic_rational(m, p, q, r);
                }
        for (std::int64_t m = 0; m <= bounds_.m_max; ++m)
            for (std::int64_t r = 0; r <= bounds_.r_max; ++r)
                for (auto b : {germ::Branch::sdm, germ::Branch::sdmin, germ::Branch::saddle,
                               germ::Branch::trivial})
                    degenerate(m, r, b);
        for (std::size_t i = 0; i < report_.cases.size(); ++i) {
            if (report_.cases[i].report.verdict == Verdict::consistent) report_.survivors.push_back(i);
        }
        return std::move(report_);
    }

private:
    void add(std::string family, std::string stage, std::map<std::string, std::string> params,
             ConsistencyReport rep) {
        rep.label = family;
        report_.cases.push_back({std::move(family), std::move(stage), std::move(params), std::move(rep)});
    }

    // Resonance, then local admissibility of x itself, then the Morse search.
    void full_check(std::string family, std::map<std::string, std::string> params,
                    const ReebOrbitRecord& rec) {
        const auto orbits = copies_of(rec, copies_);
        if (rec.mean_index == 0) {
            add(std::move(family), "resonance", std::move(params),
                excluded("C3", "mean index 0: the orbit enters neither sum, so the orbit side is 0 "
                               "but chi+ = " + format_rational(chi_plus_)));
            return;
        }
        const ResonanceReport res = resonance_check(orbits, sphere_);
        if (!res.pass()) {
            add(std::move(family), "resonance", std::move(params),
                excluded("C3", "orbit side " + format_rational(res.orbits_plus) +
                                   " differs from chi+ = " + format_rational(res.profile_plus)));
            return;
        }
        try {
            local_homology_3d(rec, 1);
        } catch (const germ::ModelInconsistency& e) {
            add(std::move(family), "local", std::move(params), excluded("local", e.what()));
            return;
        }
        MorseOptions opts;
        opts.max_iterate = bounds_.n_max;
        ConsistencyReport rep;
        try {
            rep = morse_consistency(orbits, sphere_, opts);
        } catch (const std::runtime_error& e) {
            rep = excluded("search", e.what());
            rep.verdict = Verdict::consistent;
            rep.warnings.push_back("inconclusive: " + std::string(e.what()));
        }
        const bool ok = rep.verdict == Verdict::consistent;
        add(std::move(family), ok ? "survived" : "morse", std::move(params), std::move(rep));
    }

    void hyperbolic(bool odd) {
        const std::string family = odd ? "hyperbolic-odd" : "hyperbolic-even";
        const germ::GermModel g = hyperbolic_germ(odd);
        const Rational s = germ::sigma(g);
        std::map<std::string, std::string> params{{"sigma", format_rational(s)}};
        const auto delta = forced_mean_index(s, copies_, chi_plus_);
        if (!delta) {
            add(family, "resonance", params,
                excluded("C3", "sigma = " + format_rational(s) +
                                   " is not positive, so no mean index gives chi+ = " +
                                   format_rational(chi_plus_)));
            return;
        }
        params["delta"] = format_rational(*delta);
        const bool odd_integer = is_integer(*delta) && to_int64(*delta) % 2 != 0;
        if (!is_integer(*delta) || odd_integer != odd) {
            add(family, "resonance", params,
                excluded("C3", "resonance forces mean index " + format_rational(*delta) +
                                   ", incompatible with an " + (odd ? "odd" : "even") +
                                   " hyperbolic orbit"));
            return;
        }
        ReebOrbitRecord rec;
        rec.mean_index = *delta;
        rec.germ = g;
        full_check(family, params, rec);
    }

    void elliptic_irrational() {
        const std::string family = "elliptic-irrational";
        const Rational s = germ::sigma(irrational_germ());
        std::map<std::string, std::string> params{{"sigma", format_rational(s)}};
        const auto delta = forced_mean_index(s, copies_, chi_plus_);
        if (!delta) {
            add(family, "resonance", params,
                excluded("C3", "sigma = " + format_rational(s) + " is not positive"));
            return;
        }
        params["delta"] = format_rational(*delta);
        add(family, "resonance", params,
            excluded("C3", "resonance forces the rational mean index " + format_rational(*delta) +
                               ", but 2m + 2*alpha is irrational"));
    }

    void elliptic_rational(std::int64_t m, std::int64_t p, std::int64_t q, std::int64_t r) {
        ReebOrbitRecord rec;
        rec.germ = germ::Elliptic2D{p, q, r};
        rec.mean_index = 2 * m + Rational(2 * p, q);
        rec.delta_integer_part = m;
        full_check("elliptic-rational",
                   {{"m", std::to_string(m)},
                    {"p", std::to_string(p)},
                    {"q", std::to_string(q)},
                    {"r", std::to_string(r)},
                    {"delta", format_rational(rec.mean_index)}},
                   rec);
    }

    void degenerate(std::int64_t m, std::int64_t r, germ::Branch b) {
        ReebOrbitRecord rec;
        rec.germ = germ::TotallyDegenerate2D{1 - r, b};
        rec.mean_index = 2 * m;
        full_check("totally-degenerate",
                   {{"m", std::to_string(m)},
                    {"r", std::to_string(r)},
                    {"index", std::to_string(1 - r)},
                    {"branch", germ::to_string(b)},
                    {"delta", format_rational(rec.mean_index)}},
                   rec);
    }

    S3Bounds bounds_;
    std::int64_t copies_;
    HomologyProfile sphere_;
    Rational chi_plus_;
    S3Report report_;
};

}  // namespace

S3Report exclude_single_orbit_s3(const S3Bounds& bounds) { return Runner(bounds, 1).run(); }

S3Report explore_symmetric_pair_s3(const S3Bounds& bounds) { return Runner(bounds, 2).run(); }

}  // namespace iterindex::mec
