#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "iterindex/germ.hpp"
#include "iterindex/rational.hpp"

// Global maps whose periodic points can be enumerated exactly, and a
// seeded numeric model on an interval. Used as a brute-force harness for
// the totient formula relating iterated indices and Lefschetz numbers.

namespace iterindex::orbits {

/// z -> z^d on the unit circle, d >= 2. Points are angles in [0, 1).
struct CircleEndo {
    std::int64_t degree = 2;
};

/// Linear endomorphism of R^2/Z^2 with no root of unity as an eigenvalue.
struct TorusLinear {
    std::array<std::array<std::int64_t, 2>, 2> matrix{};
};

/// Smooth map of an interval. Fixed points of F^k are located by a grid
/// scan for sign changes of x - F^k(x) refined by bisection; every one of
/// them must lie on the orbit of a root found from a user seed.
struct Numeric1D {
    germ::IntervalMap map;
    double lo = -1.0;
    double hi = 1.0;
    std::vector<double> seeds;
    int grid_cells = 20000;
    double bisection_tolerance = 1e-12;
    double separation = 1e-8;
};

using MapModel = std::variant<CircleEndo, TorusLinear, Numeric1D>;

/// Throws std::invalid_argument; for tori, rejects matrices with a root of
/// unity among the eigenvalues.
void validate(const MapModel& m);

/// Human-readable model name, e.g. "circle:d=2".
std::string describe(const MapModel& m);

/// Seeds fail to account for every sign change on the grid.
class SeedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PeriodicOrbit {
    /// Exact coordinates of the canonical (smallest) representative: one
    /// angle for circle maps, a pair for tori. Empty for numeric models.
    std::vector<Rational> point;
    std::optional<double> numeric_point;
    std::int64_t minimal_period = 1;
    std::int64_t iterate = 1;
    int index = 0;  // I(F^k, orbit)
    germ::Parity parity = germ::Parity::even;
    germ::OrbitKind kind = germ::OrbitKind::good;
    /// Numeric only: another orbit passes within the separation threshold.
    bool unresolved = false;
};

/// Sum of fixed-point indices over Fix(F^k), by enumeration of points.
std::int64_t lefschetz(const MapModel& m, std::int64_t k);

/// All k-periodic orbits, ordered by canonical representative.
std::vector<PeriodicOrbit> enumerate_periodic_orbits(const MapModel& m, std::int64_t k);

/// Sum of I(F^k, O) over good k-periodic orbits.
std::int64_t iterated_index_map(const MapModel& m, std::int64_t k);

struct VerificationRow {
    std::int64_t k = 1;
    std::int64_t direct = 0;     // good-orbit sum
    Rational formula;            // (1/k) sum_{d|k} phi(k/d) L(F^d)
    std::int64_t lefschetz = 0;  // L(F^k)
    bool equal = false;
};

std::vector<VerificationRow> verify_theorem_index_maps(const MapModel& m, std::int64_t max_k);

}  // namespace iterindex::orbits
