#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iterindex/germ.hpp"
#include "iterindex/rational.hpp"
#include "iterindex/seq.hpp"

// Mean Euler characteristic bookkeeping for Reeb flows with finitely many
// simple closed orbits: the homology side (profiles), the orbit side
// (sigma / mean index), local contact homology of iterates in dimension
// three, and necessary-condition consistency checks between the two.

namespace iterindex::mec {

enum class Sign { positive, negative };

// --- homology profiles ---------------------------------------------------

/// Degrees l >= start (positive tail) or l <= -start (negative tail) have
/// dimension pattern[(|l| - start) mod pattern.size()].
struct PeriodicTail {
    std::int64_t start = 0;
    std::vector<std::int64_t> pattern{0};
};

/// dim HC_l for all integer degrees: explicit values between the tails,
/// periodic tails outside.
class HomologyProfile {
public:
    /// Throws std::invalid_argument for an empty pattern, negative dims,
    /// overlapping tails, or explicit degrees inside a tail.
    HomologyProfile(std::map<std::int64_t, std::int64_t> explicit_dims, PeriodicTail positive,
                    PeriodicTail negative, std::int64_t l_plus, std::int64_t l_minus);

    /// (S^{2n-1}, xi_0): dimension one in every even degree >= 2n - 2.
    static HomologyProfile standard_sphere(std::int64_t n);
    static HomologyProfile zero();

    std::int64_t dim(std::int64_t degree) const;

    const std::map<std::int64_t, std::int64_t>& explicit_dims() const { return explicit_; }
    const PeriodicTail& positive_tail() const { return positive_; }
    const PeriodicTail& negative_tail() const { return negative_; }
    std::int64_t l_plus() const { return l_plus_; }
    std::int64_t l_minus() const { return l_minus_; }

private:
    std::map<std::int64_t, std::int64_t> explicit_;
    PeriodicTail positive_;
    PeriodicTail negative_;
    std::int64_t l_plus_;
    std::int64_t l_minus_;
};

/// Positive/negative mean Euler characteristic: the Cesaro mean of
/// (-1)^l dim HC_{+-l}. With a periodic tail the limit exists and equals
/// the alternating mean over one lcm(period, 2) block.
Rational chi_from_profile(const HomologyProfile& h, Sign sign);

/// Cesaro mean of dim HC_{+-l} (the homology side of the Morse bound).
Rational beta_from_profile(const HomologyProfile& h, Sign sign);

// --- closed-form examples ------------------------------------------------

/// (1/2) (p(n-1)+1) / (p(n-2)+2) for p = +-1 mod 8, odd n >= 3.
Rational ustilovsky_chi(std::int64_t p, std::int64_t n);

/// r chi(B) / (2N) for a prequantization bundle over a monotone base with
/// minimal Chern number N.
Rational prequantization_chi(std::int64_t euler_char_base, std::int64_t minimal_chern,
                             std::int64_t r = 1);

enum class FundamentalClassMode { trivial, full };

/// chi^+ of the unit cotangent bundle of S^n.
Rational unit_cotangent_chi(std::int64_t n, FundamentalClassMode mode = FundamentalClassMode::trivial);

// --- orbit records -------------------------------------------------------

struct ReebOrbitRecord {
    std::string label = "x";
    std::int64_t n = 2;       // contact dimension 2n - 1
    Rational mean_index;      // Delta(x); Delta(x^k) = k Delta(x)
    germ::GermModel germ = germ::Elliptic2D{};
    /// Elliptic records: Delta = 2m + 2p/q. Inferred when absent.
    std::optional<std::int64_t> delta_integer_part;
    std::optional<Rational> action;
};

/// Throws germ::ModelInconsistency when the germ disagrees with the mean
/// index (elliptic: Delta = 2m + 2p/q; hyperbolic in dimension three:
/// Delta integer with the parity of the point).
void validate(const ReebOrbitRecord& rec);

Rational sigma(const ReebOrbitRecord& rec);

/// Sum over orbits with mean index of the requested sign of
/// sigma / |Delta|. Throws std::invalid_argument for a record with
/// Delta = 0.
Rational chi_from_orbits(const std::vector<ReebOrbitRecord>& orbits, Sign sign);

struct ResonanceReport {
    Rational orbits_plus, profile_plus;
    Rational orbits_minus, profile_minus;
    bool pass_plus = false;
    bool pass_minus = false;
    bool pass() const { return pass_plus && pass_minus; }
};

ResonanceReport resonance_check(const std::vector<ReebOrbitRecord>& orbits,
                                const HomologyProfile& h);

// --- local contact homology in dimension three --------------------------

struct LocalHomologyEntry {
    std::string label;
    std::int64_t iterate = 1;
    std::optional<std::int64_t> degree;  // empty when the homology vanishes
    std::int64_t dimension = 0;
    std::optional<germ::Branch> branch;  // set for degenerate iterates
};

struct LocalHomology {
    bool degenerate = false;
    /// One entry for non-degenerate iterates; the admissible branches
    /// otherwise.
    std::vector<LocalHomologyEntry> options;
};

/// HC_*(x^k) for n = 2: the support degree of a non-degenerate iterate, or
/// the set of (degree, dim) branches of a degenerate one that satisfy
/// (-1)^l dim = I_k and lie in [Delta(x^k) - 2, Delta(x^k)].
LocalHomology local_homology_3d(const ReebOrbitRecord& rec, std::int64_t k);

/// dim HC_*(x^k) in dimension three, |I_k(F)|.
std::int64_t local_total_dimension(const ReebOrbitRecord& rec, std::int64_t k);

// --- consistency ---------------------------------------------------------

enum class Verdict { consistent, excluded };
std::string to_string(Verdict v);

struct Violation {
    std::string constraint;  // "C1", "C2", "C3", "local"
    std::optional<std::int64_t> degree;
    std::string message;
    // C1/C2 numbers at the degree.
    std::int64_t local = 0;
    std::int64_t profile = 0;
    std::int64_t neighbours = 0;
};

struct ConsistencyReport {
    std::string label;
    Verdict verdict = Verdict::excluded;
    std::vector<Violation> violations;
    std::vector<LocalHomologyEntry> assignment;
    std::vector<std::string> case_log;
    std::vector<std::string> warnings;
    std::int64_t window_lo = 0;
    std::int64_t window_hi = 0;
};

struct MorseOptions {
    std::int64_t max_iterate = 60;
    /// Local homology tables for records with n != 2, keyed by label; every
    /// iterate 1..max_iterate must be listed.
    std::map<std::string, std::vector<LocalHomologyEntry>> supplied_tables;
    std::int64_t search_budget = 2'000'000;
};

/// Searches branch assignments of degenerate iterates for one satisfying
///   C1: sum of local dims >= dim HC_l in every window degree,
///   C2: local_l - profile_l <= local_{l-1} + local_{l+1},
///   C3: the resonance relation for both signs.
/// Consistent means no contradiction was found.
ConsistencyReport morse_consistency(const std::vector<ReebOrbitRecord>& orbits,
                                    const HomologyProfile& h, const MorseOptions& options = {});

// --- single-orbit exclusion on the standard 3-sphere --------------------

struct S3Bounds {
    std::int64_t q_max = 12;
    std::int64_t r_max = 12;
    std::int64_t m_max = 12;
    std::int64_t n_max = 60;
};

struct S3Case {
    std::string family;  // hyperbolic-even, hyperbolic-odd, elliptic-irrational,
                         // elliptic-rational, totally-degenerate
    std::string stage;   // resonance, local, morse, survived
    std::map<std::string, std::string> parameters;
    ConsistencyReport report;
};

struct S3Report {
    std::int64_t copies = 1;
    std::vector<S3Case> cases;
    std::vector<std::size_t> survivors;  // indices into cases
};

/// Enumerates every single-orbit hypothesis on (S^3, xi_0) within the
/// bounds and records why each one is excluded.
S3Report exclude_single_orbit_s3(const S3Bounds& bounds);

/// Exploration only: the same enumeration for two orbits with identical
/// local invariants.
S3Report explore_symmetric_pair_s3(const S3Bounds& bounds);

// --- asymptotic Morse bound ------------------------------------------------

struct BetaReport {
    Rational profile_plus, orbits_plus;
    Rational profile_minus, orbits_minus;
    bool pass_plus = false;
    bool pass_minus = false;
    bool pass() const { return pass_plus && pass_minus; }
};

/// Mean Betti number of an orbit: the average of dim HC_*(x^k) over one
/// period of the subordinating set (n = 2).
Rational beta_of_orbit(const ReebOrbitRecord& rec);

BetaReport beta_bound_check(const std::vector<ReebOrbitRecord>& orbits, const HomologyProfile& h);

// --- experiment ------------------------------------------------------------

struct SubordinationExperiment {
    std::string label;
    std::vector<std::int64_t> dims;  // dim HC_*(x^k), k = 1..K
    seq::DivisorClosedSet set;
    bool subordinated = false;
    std::optional<std::int64_t> first_mismatch;
};

/// Reports whether k -> dim HC_*(x^k) is subordinated to N(F) for k <= K.
SubordinationExperiment subordination_experiment(const ReebOrbitRecord& rec, std::int64_t max_k);

}  // namespace iterindex::mec
