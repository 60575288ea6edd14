#include "iterindex/germ.hpp"

#include <numeric>

#include "iterindex/arith.hpp"

namespace iterindex::germ {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_elliptic(const Elliptic2D& e) {
    if (e.q < 2) throw std::invalid_argument("elliptic germ needs q >= 2");
    if (e.p <= 0 || e.p >= e.q) throw std::invalid_argument("elliptic germ needs 0 < p < q");
    if (std::gcd(e.p, e.q) != 1) throw std::invalid_argument("elliptic germ needs gcd(p, q) = 1");
    if (e.r < 0) throw std::invalid_argument("elliptic germ needs r >= 0");
}

}  // namespace

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }
std::string to_string(OrbitKind k) { return k == OrbitKind::good ? "good" : "bad"; }

std::string to_string(Branch b) {
    switch (b) {
        case Branch::sdm: return "SDM";
        case Branch::sdmin: return "SDMin";
        case Branch::saddle: return "Saddle";
        case Branch::trivial: return "HomologicallyTrivial";
    }
    return "?";
}

Branch parse_branch(std::string_view text) {
    if (text == "SDM") return Branch::sdm;
    if (text == "SDMin") return Branch::sdmin;
    if (text == "Saddle") return Branch::saddle;
    if (text == "HomologicallyTrivial" || text == "Trivial") return Branch::trivial;
    throw std::invalid_argument("unknown branch '" + std::string(text) + "'");
}

std::int64_t UnitRotation::period() const {
    return static_cast<std::int64_t>(denominator_of(angle));
}

std::int64_t EigenData::dimension() const {
    return static_cast<std::int64_t>(real_eigenvalues.size()) +
           2 * (static_cast<std::int64_t>(unit_rotations.size()) + irrational_rotation_count +
                offcircle_complex_pair_count);
}

void EigenData::validate() const {
    for (const auto& lambda : real_eigenvalues) {
        if (lambda == 1) {
            throw std::invalid_argument("eigenvalue exactly 1: fixed point is degenerate");
        }
        if (lambda == -1) {
            throw std::invalid_argument(
                "eigenvalue -1 is a root of unity; declare it as the rotation 1/2");
        }
    }
    for (const auto& rot : unit_rotations) {
        if (rot.angle <= 0 || rot.angle >= 1) {
            throw std::invalid_argument("rotation angle must lie in (0,1), got " +
                                        format_rational(rot.angle));
        }
        if (rot.twist_order < 0) throw std::invalid_argument("twist order must be >= 0");
    }
    if (irrational_rotation_count < 0 || offcircle_complex_pair_count < 0) {
        throw std::invalid_argument("eigenvalue counts must be non-negative");
    }
    if (dimension() == 0) throw std::invalid_argument("germ must have positive dimension");
}

void validate(const GermModel& g) {
    std::visit(overloaded{
                   [](const NondegenerateLinear& n) { n.eigen.validate(); },
                   [](const Elliptic2D& e) { validate_elliptic(e); },
                   [](const TotallyDegenerate2D&) {},
                   [](const Numeric& n) {
                       if (n.dimension == 2 && !n.planar)
                           throw std::invalid_argument("planar numeric germ needs a map");
                       if (n.dimension == 1 && !n.interval)
                           throw std::invalid_argument("1-D numeric germ needs a map");
                       if (n.dimension != 1 && n.dimension != 2)
                           throw std::invalid_argument("numeric germs must be 1-D or 2-D");
                   },
               },
               g);
}

int index_nondegenerate(const EigenData& e) {
    int m = 0;
    for (const auto& lambda : e.real_eigenvalues) {
        if (lambda == 1) throw std::invalid_argument("eigenvalue exactly 1");
        if (lambda > 1) ++m;
    }
    return m % 2 == 0 ? 1 : -1;
}

Parity parity(const EigenData& e) {
    int below = 0;
    for (const auto& lambda : e.real_eigenvalues) {
        if (lambda < -1) ++below;
    }
    return below % 2 == 0 ? Parity::even : Parity::odd;
}

Parity parity(const GermModel& g) {
    return std::visit(overloaded{
                          [](const NondegenerateLinear& n) { return parity(n.eigen); },
                          [](const Elliptic2D&) { return Parity::even; },
                          [](const TotallyDegenerate2D&) { return Parity::even; },
                          [](const Numeric&) -> Parity {
                              throw std::invalid_argument(
                                  "parity of a numeric germ is not determined");
                          },
                      },
                      g);
}

OrbitKind classify_iterate(std::int64_t tau, std::int64_t k, Parity p) {
    if (tau < 1 || k < 1 || k % tau != 0) {
        throw std::invalid_argument("minimal period " + std::to_string(tau) +
                                    " does not divide " + std::to_string(k));
    }
    return (p == Parity::odd && (k / tau) % 2 == 0) ? OrbitKind::bad : OrbitKind::good;
}

std::int64_t index_of_iterate(const GermModel& g, std::int64_t k, const WindingOptions& options) {
    if (k < 1) throw std::invalid_argument("iterate must be >= 1");
    return std::visit(
        overloaded{
            [k](const NondegenerateLinear& n) -> std::int64_t {
                n.eigen.validate();
                // lambda^k > 1 iff lambda > 1, or lambda < -1 with k even.
                int m = 0;
                for (const auto& lambda : n.eigen.real_eigenvalues) {
                    if (lambda > 1 || (lambda < -1 && k % 2 == 0)) ++m;
                }
                std::int64_t index = (m % 2 == 0) ? 1 : -1;
                for (const auto& rot : n.eigen.unit_rotations) {
                    const std::int64_t q = rot.period();
                    if (k % q == 0) index *= 1 - rot.twist_order * q;
                }
                return index;
            },
            [k](const Elliptic2D& e) -> std::int64_t {
                validate_elliptic(e);
                return k % e.q == 0 ? 1 - e.r * e.q : 1;
            },
            [](const TotallyDegenerate2D& t) -> std::int64_t { return t.index; },
            [k, &options](const Numeric& n) -> std::int64_t {
                DegreeResult result = n.dimension == 1
                                          ? interval_degree(iterate(n.interval, k), options)
                                          : planar_degree(iterate(n.planar, k), options);
                if (!result.certified()) {
                    throw OracleFailure("index of iterate " + std::to_string(k) +
                                        " not certified (" + to_string(result.status) +
                                        "): " + result.detail);
                }
                return *result.value;
            },
        },
        g);
}

seq::DivisorClosedSet subordinating_set(const GermModel& g) {
    validate(g);
    std::vector<std::int64_t> generators;
    std::visit(overloaded{
                   [&](const NondegenerateLinear& n) {
                       for (const auto& rot : n.eigen.unit_rotations)
                           generators.push_back(rot.period());
                       if (parity(n.eigen) == Parity::odd) generators.push_back(2);
                   },
                   [&](const Elliptic2D& e) { generators.push_back(e.q); },
                   [](const TotallyDegenerate2D&) {},
                   [](const Numeric&) {
                       throw std::invalid_argument(
                           "the subordinating set of a numeric germ must be declared");
                   },
               },
               g);
    return seq::DivisorClosedSet::generated_by(generators);
}

seq::SubordinatedSequence index_sequence(const GermModel& g, std::int64_t count,
                                         const WindingOptions& options) {
    validate(g);
    const seq::DivisorClosedSet set = std::holds_alternative<Numeric>(g)
                                          ? std::get<Numeric>(g).declared_set
                                          : subordinating_set(g);
    std::vector<std::int64_t> computed;
    auto value = [&](std::int64_t k) {
        while (static_cast<std::int64_t>(computed.size()) < k) {
            computed.push_back(
                index_of_iterate(g, static_cast<std::int64_t>(computed.size()) + 1, options));
        }
        return computed[static_cast<std::size_t>(k - 1)];
    };
    auto packaged = seq::SubordinatedSequence::sample(
        set, [&](std::int64_t q) { return Rational(value(q)); });
    for (std::int64_t k = 1; k <= count; ++k) {
        if (packaged(k) != value(k)) {
            throw ModelInconsistency("index of iterate " + std::to_string(k) + " is " +
                                     std::to_string(value(k)) + " but the sequence over q_max=" +
                                     std::to_string(set.q_max()) + " predicts " +
                                     format_rational(packaged(k)));
        }
    }
    return packaged;
}

std::int64_t iterated_index_germ(const GermModel& g, std::int64_t k,
                                 const WindingOptions& options) {
    Rational value = seq::divisor_sum_transform(
        [&](std::int64_t d) { return Rational(index_of_iterate(g, d, options)); }, k);
    if (!is_integer(value)) {
        throw ModelInconsistency("iterated index at " + std::to_string(k) +
                                 " is not an integer: " + format_rational(value));
    }
    return to_int64(value);
}

seq::SubordinatedSequence iterated_index_sequence(const GermModel& g,
                                                  const WindingOptions& options) {
    validate(g);
    const std::int64_t period = std::holds_alternative<Numeric>(g)
                                    ? std::get<Numeric>(g).declared_set.q_max()
                                    : subordinating_set(g).q_max();
    return seq::phi_transform(index_sequence(g, period, options));
}

Rational sigma(const GermModel& g, const WindingOptions& options) {
    return seq::mean_value(iterated_index_sequence(g, options));
}

}  // namespace iterindex::germ
