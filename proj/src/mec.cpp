#include "iterindex/mec.hpp"

#include <numeric>
#include <stdexcept>

namespace iterindex::mec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_tail(const PeriodicTail& t, const char* which) {
    if (t.pattern.empty()) {
        throw std::invalid_argument(std::string(which) + " tail has no periodic pattern");
    }
    for (auto d : t.pattern) {
        if (d < 0) throw std::invalid_argument(std::string(which) + " tail has a negative dimension");
    }
}

std::int64_t tail_dim(const PeriodicTail& t, std::int64_t distance) {
    const auto period = static_cast<std::int64_t>(t.pattern.size());
    return t.pattern[static_cast<std::size_t>((distance - t.start) % period)];
}

// Mean of (alternating ? (-1)^l : 1) * dim over one lcm(period, 2) block of
// the tail; degrees are +-l for l >= start.
Rational tail_mean(const PeriodicTail& t, bool alternating) {
    const auto period = static_cast<std::int64_t>(t.pattern.size());
    const std::int64_t block = std::lcm(period, std::int64_t{2});
    Rational sum = 0;
    for (std::int64_t l = t.start; l < t.start + block; ++l) {
        const std::int64_t d = tail_dim(t, l);
        sum += (alternating && (l % 2 != 0)) ? -d : d;
    }
    return sum / block;
}

bool even(std::int64_t l) { return l % 2 == 0; }

std::int64_t sign_power(std::int64_t l) { return even(l) ? 1 : -1; }

// The three-dimensional local shapes a record can take.
struct EllipticShape {
    Rational rotation;  // p/q or a placeholder for irrational rotation
    std::int64_t q = 0;  // 0 for irrational rotation
};
struct HyperbolicShape {
    germ::Parity parity;
};
struct DegenerateShape {
    germ::Branch branch;
};
using Shape = std::variant<EllipticShape, HyperbolicShape, DegenerateShape>;

Shape shape_of(const ReebOrbitRecord& rec) {
    return std::visit(
        overloaded{
            [](const germ::Elliptic2D& e) -> Shape {
                return EllipticShape{Rational(e.p) / e.q, e.q};
            },
            [](const germ::TotallyDegenerate2D& t) -> Shape { return DegenerateShape{t.branch}; },
            [](const germ::NondegenerateLinear& n) -> Shape {
                const auto& e = n.eigen;
                if (e.dimension() != 2) {
                    throw std::invalid_argument("orbit germ must be two-dimensional for n = 2");
                }
                if (e.unit_rotations.size() == 1) {
                    const auto& rot = e.unit_rotations.front();
                    return EllipticShape{rot.angle, rot.period()};
                }
                if (e.irrational_rotation_count == 1) return EllipticShape{Rational(0), 0};
                if (e.real_eigenvalues.size() == 2) return HyperbolicShape{germ::parity(e)};
                throw std::invalid_argument(
                    "complex eigenvalues off the unit circle have no three-dimensional grading");
            },
            [](const germ::Numeric&) -> Shape {
                throw std::invalid_argument("numeric germs carry no grading information");
            },
        },
        rec.germ);
}

std::string iterate_name(const ReebOrbitRecord& rec, std::int64_t k) {
    return rec.label + "^" + std::to_string(k);
}

Rational integral_mean_index(const ReebOrbitRecord& rec, std::int64_t k) {
    return rec.mean_index * k;
}

}  // namespace

// --- profiles ---------------------------------------------------------------

HomologyProfile::HomologyProfile(std::map<std::int64_t, std::int64_t> explicit_dims,
                                 PeriodicTail positive, PeriodicTail negative, std::int64_t l_plus,
                                 std::int64_t l_minus)
    : explicit_(std::move(explicit_dims)),
      positive_(std::move(positive)),
      negative_(std::move(negative)),
      l_plus_(l_plus),
      l_minus_(l_minus) {
    validate_tail(positive_, "positive");
    validate_tail(negative_, "negative");
    if (-negative_.start >= positive_.start) {
        throw std::invalid_argument("positive and negative tails overlap");
    }
    for (const auto& [degree, d] : explicit_) {
        if (d < 0) throw std::invalid_argument("negative dimension at degree " + std::to_string(degree));
        if (degree >= positive_.start || degree <= -negative_.start) {
            throw std::invalid_argument("explicit degree " + std::to_string(degree) +
                                        " lies inside a periodic tail");
        }
    }
}

HomologyProfile HomologyProfile::standard_sphere(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("sphere needs n >= 2");
    return HomologyProfile({}, PeriodicTail{2 * n - 2, {1, 0}}, PeriodicTail{1, {0}}, 2 * n - 3,
                           -(2 * n - 3));
}

HomologyProfile HomologyProfile::zero() {
    return HomologyProfile({}, PeriodicTail{0, {0}}, PeriodicTail{1, {0}}, 0, 0);
}

std::int64_t HomologyProfile::dim(std::int64_t degree) const {
    if (degree >= positive_.start) return tail_dim(positive_, degree);
    if (degree <= -negative_.start) return tail_dim(negative_, -degree);
    auto it = explicit_.find(degree);
    return it == explicit_.end() ? 0 : it->second;
}

Rational chi_from_profile(const HomologyProfile& h, Sign sign) {
    // The explicit window is finite and washes out of the Cesaro mean; the
    // periodic tail makes the mean converge, so the limsup/liminf average
    // coincides with the limit.
    return tail_mean(sign == Sign::positive ? h.positive_tail() : h.negative_tail(), true);
}

Rational beta_from_profile(const HomologyProfile& h, Sign sign) {
    return tail_mean(sign == Sign::positive ? h.positive_tail() : h.negative_tail(), false);
}

// --- closed forms -------------------------------------------------------------

Rational ustilovsky_chi(std::int64_t p, std::int64_t n) {
    if (p <= 0) throw std::invalid_argument("p must be positive");
    if (p % 8 != 1 && p % 8 != 7) throw std::invalid_argument("p must be +-1 mod 8");
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("n must be odd and >= 3");
    return Rational(p * (n - 1) + 1) / (2 * (p * (n - 2) + 2));
}

Rational prequantization_chi(std::int64_t euler_char_base, std::int64_t minimal_chern,
                             std::int64_t r) {
    if (minimal_chern < 1) throw std::invalid_argument("minimal Chern number must be >= 1");
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    return Rational(r * euler_char_base) / (2 * minimal_chern);
}

Rational unit_cotangent_chi(std::int64_t n, FundamentalClassMode mode) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    if (n == 2) return mode == FundamentalClassMode::full ? Rational(1) : Rational(1, 2);
    if (n % 2 == 1) return Rational(1, 2) + Rational(1, n - 1);
    return Rational(1, 2) + Rational(1, 2 * (n - 1));
}

// --- records ------------------------------------------------------------------

void validate(const ReebOrbitRecord& rec) {
    if (rec.n < 2) throw std::invalid_argument(rec.label + ": n must be >= 2");
    germ::validate(rec.germ);
    if (rec.action && *rec.action <= 0) {
        throw std::invalid_argument(rec.label + ": action must be positive");
    }
    if (rec.n != 2) return;
    const Shape shape = shape_of(rec);
    std::visit(overloaded{
                   [&](const EllipticShape& e) {
                       if (e.q == 0) return;
                       const Rational twice_m = rec.mean_index - 2 * e.rotation;
                       if (!is_integer(twice_m) || !is_integer(twice_m / 2)) {
                           throw germ::ModelInconsistency(
                               rec.label + ": mean index " + format_rational(rec.mean_index) +
                               " is not 2m + 2p/q for rotation " + format_rational(e.rotation));
                       }
                       if (rec.delta_integer_part &&
                           Rational(2 * *rec.delta_integer_part) != twice_m) {
                           throw germ::ModelInconsistency(
                               rec.label + ": mean index differs from 2m + 2p/q with m = " +
                               std::to_string(*rec.delta_integer_part));
                       }
                   },
                   [&](const HyperbolicShape& h) {
                       if (!is_integer(rec.mean_index)) {
                           throw germ::ModelInconsistency(rec.label +
                                                          ": hyperbolic mean index must be an integer");
                       }
                       const bool odd_index = to_int64(rec.mean_index) % 2 != 0;
                       if (odd_index != (h.parity == germ::Parity::odd)) {
                           throw germ::ModelInconsistency(
                               rec.label + ": hyperbolic orbit of parity " + germ::to_string(h.parity) +
                               " cannot have mean index " + format_rational(rec.mean_index));
                       }
                   },
                   [&](const DegenerateShape&) {
                       if (!is_integer(rec.mean_index)) {
                           throw germ::ModelInconsistency(
                               rec.label + ": a totally degenerate orbit has integer mean index");
                       }
                   },
               },
               shape);
}

Rational sigma(const ReebOrbitRecord& rec) { return germ::sigma(rec.germ); }

Rational chi_from_orbits(const std::vector<ReebOrbitRecord>& orbits, Sign sign) {
    Rational total = 0;
    for (const auto& rec : orbits) {
        if (rec.mean_index == 0) {
            throw std::invalid_argument(rec.label + ": orbit with zero mean index");
        }
        const bool positive = rec.mean_index > 0;
        if (positive != (sign == Sign::positive)) continue;
        total += sigma(rec) / abs(rec.mean_index);
    }
    return total;
}

ResonanceReport resonance_check(const std::vector<ReebOrbitRecord>& orbits,
                                const HomologyProfile& h) {
    ResonanceReport r;
    r.orbits_plus = chi_from_orbits(orbits, Sign::positive);
    r.orbits_minus = chi_from_orbits(orbits, Sign::negative);
    r.profile_plus = chi_from_profile(h, Sign::positive);
    r.profile_minus = chi_from_profile(h, Sign::negative);
    r.pass_plus = r.orbits_plus == r.profile_plus;
    r.pass_minus = r.orbits_minus == r.profile_minus;
    return r;
}

// --- local homology -----------------------------------------------------------

std::int64_t local_total_dimension(const ReebOrbitRecord& rec, std::int64_t k) {
    if (rec.n != 2) throw std::invalid_argument(rec.label + ": local dimensions need n = 2");
    const std::int64_t value = germ::iterated_index_germ(rec.germ, k);
    return value < 0 ? -value : value;
}

LocalHomology local_homology_3d(const ReebOrbitRecord& rec, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("iterate must be >= 1");
    if (rec.n != 2) {
        throw std::invalid_argument(rec.label + ": branch classification requires n = 2");
    }
    validate(rec);
    const std::int64_t I = germ::iterated_index_germ(rec.germ, k);
    const Rational delta_k = integral_mean_index(rec, k);
    const std::string label = rec.label;

    auto nondegenerate = [&](std::optional<std::int64_t> degree) {
        LocalHomologyEntry e{label, k, degree, degree ? 1 : 0, std::nullopt};
        const std::int64_t signed_dim = degree ? sign_power(*degree) : 0;
        if (signed_dim != I) {
            throw germ::ModelInconsistency(iterate_name(rec, k) + ": (-1)^l dim = " +
                                           std::to_string(signed_dim) + " but I = " +
                                           std::to_string(I));
        }
        if (degree && (Rational(*degree) < delta_k - 2 || Rational(*degree) > delta_k)) {
            throw germ::ModelInconsistency(iterate_name(rec, k) + ": degree " +
                                           std::to_string(*degree) + " outside [" +
                                           format_rational(delta_k - 2) + ", " +
                                           format_rational(delta_k) + "]");
        }
        return LocalHomology{false, {e}};
    };

    auto branch_set = [&](std::optional<germ::Branch> only) {
        if (!is_integer(delta_k)) {
            throw germ::ModelInconsistency(iterate_name(rec, k) +
                                           ": degenerate iterate with non-integer mean index");
        }
        const std::int64_t d = to_int64(delta_k);
        const std::int64_t dim = I < 0 ? -I : I;
        LocalHomology out{true, {}};
        const std::pair<germ::Branch, std::int64_t> placed[] = {
            {germ::Branch::sdmin, d - 2}, {germ::Branch::saddle, d - 1}, {germ::Branch::sdm, d}};
        for (const auto& [b, l] : placed) {
            if (only && *only != b) continue;
            if (I != 0 && sign_power(l) * dim == I) out.options.push_back({label, k, l, dim, b});
        }
        if (I == 0 && (!only || *only == germ::Branch::trivial)) {
            out.options.push_back({label, k, std::nullopt, 0, germ::Branch::trivial});
        }
        if (out.options.empty()) {
            throw germ::ModelInconsistency(
                iterate_name(rec, k) + ": no admissible branch" +
                (only ? " (declared " + germ::to_string(*only) + ")" : std::string()) +
                " with I = " + std::to_string(I) + " at mean index " + format_rational(delta_k));
        }
        return out;
    };

    return std::visit(
        overloaded{
            [&](const EllipticShape& e) -> LocalHomology {
                if (e.q != 0 && k % e.q == 0) return branch_set(std::nullopt);
                const Rational half = delta_k / 2;
                if (is_integer(half)) {
                    throw germ::ModelInconsistency(
                        iterate_name(rec, k) +
                        ": irrational rotation cannot have an integer half mean index");
                }
                return nondegenerate(static_cast<std::int64_t>(2 * floor_of(half)));
            },
            [&](const HyperbolicShape& h) -> LocalHomology {
                if (germ::classify_iterate(1, k, h.parity) == germ::OrbitKind::bad) {
                    return nondegenerate(std::nullopt);
                }
                return nondegenerate(to_int64(delta_k) - 1);
            },
            [&](const DegenerateShape& d) -> LocalHomology {
                return branch_set(k == 1 ? std::optional<germ::Branch>(d.branch) : std::nullopt);
            },
        },
        shape_of(rec));
}

std::string to_string(Verdict v) { return v == Verdict::consistent ? "consistent" : "excluded"; }

// --- beta ---------------------------------------------------------------------

Rational beta_of_orbit(const ReebOrbitRecord& rec) {
    const std::int64_t period = germ::subordinating_set(rec.germ).q_max();
    Rational sum = 0;
    for (std::int64_t k = 1; k <= period; ++k) sum += local_total_dimension(rec, k);
    return sum / period;
}

BetaReport beta_bound_check(const std::vector<ReebOrbitRecord>& orbits, const HomologyProfile& h) {
    BetaReport r;
    r.profile_plus = beta_from_profile(h, Sign::positive);
    r.profile_minus = beta_from_profile(h, Sign::negative);
    for (const auto& rec : orbits) {
        if (rec.mean_index == 0) {
            throw std::invalid_argument(rec.label + ": orbit with zero mean index");
        }
        const Rational term = beta_of_orbit(rec) / abs(rec.mean_index);
        (rec.mean_index > 0 ? r.orbits_plus : r.orbits_minus) += term;
    }
    r.pass_plus = r.profile_plus <= r.orbits_plus;
    r.pass_minus = r.profile_minus <= r.orbits_minus;
    return r;
}

// --- experiment ---------------------------------------------------------------

SubordinationExperiment subordination_experiment(const ReebOrbitRecord& rec, std::int64_t max_k) {
    if (max_k < 1) throw std::invalid_argument("K must be >= 1");
    SubordinationExperiment out;
    out.label = rec.label;
    out.set = germ::subordinating_set(rec.germ);
    for (std::int64_t k = 1; k <= max_k; ++k) out.dims.push_back(local_total_dimension(rec, k));
    out.subordinated = true;
    for (std::int64_t k = 1; k <= max_k; ++k) {
        const std::int64_t q = out.set.largest_divisor_of(k);
        const std::int64_t at_q = q <= max_k ? out.dims[static_cast<std::size_t>(q - 1)]
                                             : local_total_dimension(rec, q);
        if (out.dims[static_cast<std::size_t>(k - 1)] != at_q) {
            out.subordinated = false;
            out.first_mismatch = k;
            break;
        }
    }
    return out;
}

}  // namespace iterindex::mec
