#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "iterindex/rational.hpp"
#include "iterindex/seq.hpp"

namespace iterindex::germ {

enum class Parity { even, odd };
enum class OrbitKind { good, bad };

/// Local contact homology type of a degenerate orbit in dimension three.
enum class Branch { sdm, sdmin, saddle, trivial };

std::string to_string(Parity p);
std::string to_string(OrbitKind k);
std::string to_string(Branch b);
Branch parse_branch(std::string_view text);

/// Eigenvalue pair exp(+-2 pi i p/q). The fixed point of F^k is degenerate
/// exactly when q | k; the index there is taken from the twist order r of
/// the block, 1 - r*q, as for the elliptic planar family.
struct UnitRotation {
    Rational angle;  // p/q in (0, 1), lowest terms, q >= 2
    std::int64_t twist_order = 0;

    std::int64_t period() const;
};

/// Spectrum of the linearization at the fixed point.
struct EigenData {
    std::vector<Rational> real_eigenvalues;
    std::vector<UnitRotation> unit_rotations;
    std::int64_t irrational_rotation_count = 0;
    std::int64_t offcircle_complex_pair_count = 0;

    std::int64_t dimension() const;
    /// Throws std::invalid_argument for an eigenvalue 1 or -1 among the real
    /// eigenvalues, a rotation angle outside (0,1), or negative counts.
    void validate() const;
};

struct NondegenerateLinear {
    EigenData eigen;
};

/// Planar elliptic germ with rotation p/q and twist order r:
/// I(F^k) = 1 - r*q when q | k, else 1.
struct Elliptic2D {
    std::int64_t p = 1;
    std::int64_t q = 2;
    std::int64_t r = 0;
};

/// Planar germ with DF = identity. The index sequence is the constant
/// `index`; `branch` records where its local homology sits.
struct TotallyDegenerate2D {
    std::int64_t index = 1;
    Branch branch = Branch::sdm;
};

using PlanarMap = std::function<std::complex<double>(std::complex<double>)>;
using IntervalMap = std::function<double(double)>;

/// Germ given by a callable with a fixed point at the origin. The
/// subordinating set cannot be inferred and must be declared.
struct Numeric {
    int dimension = 2;
    PlanarMap planar;        // used when dimension == 2
    IntervalMap interval;    // used when dimension == 1
    seq::DivisorClosedSet declared_set;
};

using GermModel = std::variant<NondegenerateLinear, Elliptic2D, TotallyDegenerate2D, Numeric>;

void validate(const GermModel& g);

class ModelInconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a numeric degree cannot be certified.
class OracleFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- non-degenerate linear algebra -----------------------------------------

/// (-1)^m with m the number of real eigenvalues in (1, inf).
int index_nondegenerate(const EigenData& e);

/// Parity of the number of real eigenvalues in (-inf, -1).
Parity parity(const EigenData& e);
Parity parity(const GermModel& g);

/// Bad iff the point is odd and k / tau is even. Throws when tau does not
/// divide k.
OrbitKind classify_iterate(std::int64_t tau, std::int64_t k, Parity p);

// --- numeric degree oracle -------------------------------------------------

/// diverged: the map returned a non-finite value (the sampled circle left
/// the domain where the germ is defined).
enum class DegreeStatus { certified, unstable_radius, near_fixed_point, budget_exceeded, diverged };
std::string to_string(DegreeStatus s);

struct DegreeResult {
    DegreeStatus status = DegreeStatus::certified;
    std::optional<int> value;
    std::string detail;

    bool certified() const { return status == DegreeStatus::certified; }
};

struct WindingOptions {
    std::vector<double> radii{1e-2, 5e-3, 2.5e-3};
    double tolerance = 1e-12;
    int initial_samples = 64;
    int max_samples = 1 << 20;
};

/// Winding number of z -> z - F(z) around 0 on the circle of radius rho.
/// Sampling is refined until every consecutive angular step is below pi/2;
/// the value is certified only if it also agrees at radius rho/2.
DegreeResult winding_index(const PlanarMap& map, double rho, double tolerance = 1e-12,
                           int max_samples = 1 << 20);

/// (sign g(rho) - sign g(-rho)) / 2 with g(x) = x - F(x). Throws
/// OracleFailure when |g| <= tolerance at either endpoint.
int index_1d(const IntervalMap& map, double rho, double tolerance = 1e-12);

/// Degree of the germ of `map` at the origin over the whole radius sweep;
/// certified only when every radius agrees.
DegreeResult planar_degree(const PlanarMap& map, const WindingOptions& options = {});
DegreeResult interval_degree(const IntervalMap& map, const WindingOptions& options = {});

/// The planar elliptic model: rotation by 2 pi p/q composed with the
/// time-one flow of H = Re(z^{q r}), integrated with fixed-step RK4.
PlanarMap elliptic_model_map(std::int64_t p, std::int64_t q, std::int64_t r,
                             double step = 1e-3);

/// F^k for a callable.
PlanarMap iterate(const PlanarMap& map, std::int64_t k);
IntervalMap iterate(const IntervalMap& map, std::int64_t k);

// --- index sequences -------------------------------------------------------

/// Index of F^k at the fixed point, exact for analytic variants and through
/// the certified degree oracle for Numeric germs.
std::int64_t index_of_iterate(const GermModel& g, std::int64_t k,
                              const WindingOptions& options = {});

/// N(F): lcm-closure of 1, the rotation periods, and 2 for odd points.
/// Throws std::invalid_argument for Numeric germs.
seq::DivisorClosedSet subordinating_set(const GermModel& g);

/// iota_k = I(F^k), packaged over the subordinating set (the declared set
/// for Numeric germs). Values for k <= count are computed and checked
/// against the packaging; a mismatch raises ModelInconsistency.
seq::SubordinatedSequence index_sequence(const GermModel& g, std::int64_t count,
                                         const WindingOptions& options = {});

/// I_k(F) = (1/k) sum_{d|k} phi(k/d) I(F^d), computed pointwise. Raises
/// ModelInconsistency when the result is not an integer.
std::int64_t iterated_index_germ(const GermModel& g, std::int64_t k,
                                 const WindingOptions& options = {});

/// The iterated-index sequence I_k(F) as a subordinated sequence.
seq::SubordinatedSequence iterated_index_sequence(const GermModel& g,
                                                  const WindingOptions& options = {});

/// Mean iterated index: the average of I_k(F) over one period q_max.
Rational sigma(const GermModel& g, const WindingOptions& options = {});

}  // namespace iterindex::germ
