#include <cmath>
#include <numbers>
#include <vector>

#include "iterindex/germ.hpp"

namespace iterindex::germ {

namespace {

struct Sample {
    double angle;
    std::complex<double> displacement;
};

// Winding of z - F(z) on one circle, refined until every consecutive
// angular step is below pi/2.
DegreeResult winding_on_circle(const PlanarMap& map, double rho, double tolerance,
                               int initial_samples, int max_samples) {
    int evaluations = 0;
    bool diverged = false;
    auto sample = [&](double theta) -> std::optional<Sample> {
        ++evaluations;
        const std::complex<double> z = std::polar(rho, theta);
        const std::complex<double> g = z - map(z);
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
            diverged = true;
            return std::nullopt;
        }
        if (std::abs(g) < tolerance) return std::nullopt;
        return Sample{theta, g};
    };
    auto failure = [&]() -> DegreeResult {
        if (diverged) {
            return {DegreeStatus::diverged, std::nullopt,
                    "F(z) is not finite at radius " + std::to_string(rho)};
        }
        return {DegreeStatus::near_fixed_point, std::nullopt,
                "|z - F(z)| below tolerance at radius " + std::to_string(rho)};
    };

    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Sample> ring;
    ring.reserve(static_cast<std::size_t>(initial_samples));
    for (int i = 0; i < initial_samples; ++i) {
        auto s = sample(two_pi * i / initial_samples);
        if (!s) return failure();
        ring.push_back(*s);
    }

    double total = 0.0;
    std::vector<std::pair<Sample, Sample>> pending;
    for (int i = 0; i < initial_samples; ++i) {
        Sample b = ring[static_cast<std::size_t>((i + 1) % initial_samples)];
        if (i + 1 == initial_samples) b.angle += two_pi;
        pending.emplace_back(ring[static_cast<std::size_t>(i)], b);
    }
    while (!pending.empty()) {
        auto [a, b] = pending.back();
        pending.pop_back();
        const double step = std::arg(b.displacement / a.displacement);
        if (std::abs(step) < std::numbers::pi / 2) {
            total += step;
            continue;
        }
        if (evaluations >= max_samples) {
            return {DegreeStatus::budget_exceeded, std::nullopt,
                    "angular refinement budget exhausted at radius " + std::to_string(rho)};
        }
        auto mid = sample(0.5 * (a.angle + b.angle));
        if (!mid) return failure();
        pending.emplace_back(*mid, b);
        pending.emplace_back(a, *mid);
    }
    return {DegreeStatus::certified, static_cast<int>(std::lround(total / two_pi)), ""};
}

int sign_of(double x) { return x > 0 ? 1 : -1; }

}  // namespace

std::string to_string(DegreeStatus s) {
    switch (s) {
        case DegreeStatus::certified: return "certified";
        case DegreeStatus::unstable_radius: return "unstable under radius halving";
        case DegreeStatus::near_fixed_point: return "displacement below tolerance";
        case DegreeStatus::budget_exceeded: return "refinement budget exceeded";
        case DegreeStatus::diverged: return "map value not finite";
    }
    return "?";
}

DegreeResult winding_index(const PlanarMap& map, double rho, double tolerance, int max_samples) {
    if (!(rho > 0)) throw std::invalid_argument("radius must be positive");
    DegreeResult outer = winding_on_circle(map, rho, tolerance, 64, max_samples);
    if (!outer.certified()) return outer;
    DegreeResult inner = winding_on_circle(map, rho / 2, tolerance, 64, max_samples);
    if (!inner.certified()) return inner;
    if (*inner.value != *outer.value) {
        return {DegreeStatus::unstable_radius, std::nullopt,
                "winding " + std::to_string(*outer.value) + " at radius " + std::to_string(rho) +
                    " but " + std::to_string(*inner.value) + " at half radius"};
    }
    return outer;
}

DegreeResult planar_degree(const PlanarMap& map, const WindingOptions& options) {
    if (options.radii.empty()) throw std::invalid_argument("radius sweep is empty");
    std::optional<int> agreed;
    for (double rho : options.radii) {
        DegreeResult r =
            winding_on_circle(map, rho, options.tolerance, options.initial_samples,
                              options.max_samples);
        if (!r.certified()) return r;
        if (agreed && *agreed != *r.value) {
            return {DegreeStatus::unstable_radius, std::nullopt,
                    "winding changes from " + std::to_string(*agreed) + " to " +
                        std::to_string(*r.value) + " at radius " + std::to_string(rho)};
        }
        agreed = r.value;
    }
    return {DegreeStatus::certified, agreed, ""};
}

int index_1d(const IntervalMap& map, double rho, double tolerance) {
    if (!(rho > 0)) throw std::invalid_argument("radius must be positive");
    const double right = rho - map(rho);
    const double left = -rho - map(-rho);
    if (!std::isfinite(right) || !std::isfinite(left)) {
        throw OracleFailure("F is not finite at the boundary of [-" + std::to_string(rho) + ", " +
                            std::to_string(rho) + "]");
    }
    if (std::abs(right) <= tolerance || std::abs(left) <= tolerance) {
        throw OracleFailure("x - F(x) vanishes at the boundary of [-" + std::to_string(rho) +
                            ", " + std::to_string(rho) + "]");
    }
    return (sign_of(right) - sign_of(left)) / 2;
}

DegreeResult interval_degree(const IntervalMap& map, const WindingOptions& options) {
    if (options.radii.empty()) throw std::invalid_argument("radius sweep is empty");
    std::optional<int> agreed;
    for (double rho : options.radii) {
        int value = 0;
        try {
            value = index_1d(map, rho, options.tolerance);
        } catch (const OracleFailure& e) {
            return {DegreeStatus::near_fixed_point, std::nullopt, e.what()};
        }
        if (agreed && *agreed != value) {
            return {DegreeStatus::unstable_radius, std::nullopt,
                    "index changes at radius " + std::to_string(rho)};
        }
        agreed = value;
    }
    return {DegreeStatus::certified, agreed, ""};
}

PlanarMap elliptic_model_map(std::int64_t p, std::int64_t q, std::int64_t r, double step) {
    if (q < 2 || r < 0) throw std::invalid_argument("elliptic model needs q >= 2, r >= 0");
    if (!(step > 0)) throw std::invalid_argument("step must be positive");
    const auto order = static_cast<int>(q * r);
    const auto steps = static_cast<int>(std::lround(1.0 / step));
    const double h = 1.0 / steps;
    const std::complex<double> rotation =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(q));

    // Hamiltonian vector field of Re(z^k): z' = -i k conj(z)^(k-1).
    auto field = [order](std::complex<double> z) {
        if (order == 0) return std::complex<double>(0.0, 0.0);
        std::complex<double> power(1.0, 0.0);
        const std::complex<double> zc = std::conj(z);
        for (int i = 1; i < order; ++i) power *= zc;
        return std::complex<double>(0.0, -static_cast<double>(order)) * power;
    };

    return [=](std::complex<double> z) {
        for (int i = 0; i < steps; ++i) {
            const auto k1 = field(z);
            const auto k2 = field(z + 0.5 * h * k1);
            const auto k3 = field(z + 0.5 * h * k2);
            const auto k4 = field(z + h * k3);
            z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return rotation * z;
    };
}

PlanarMap iterate(const PlanarMap& map, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("iterate must be >= 1");
    return [map, k](std::complex<double> z) {
        for (std::int64_t i = 0; i < k; ++i) z = map(z);
        return z;
    };
}

IntervalMap iterate(const IntervalMap& map, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("iterate must be >= 1");
    return [map, k](double x) {
        for (std::int64_t i = 0; i < k; ++i) x = map(x);
        return x;
    };
}

}  // namespace iterindex::germ
