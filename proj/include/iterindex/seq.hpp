#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "iterindex/rational.hpp"

// Periodic sequences subordinated to a finite lcm-closed set N of positive
// integers: a(k) = a(q(k)), where q(k) is the largest element of N dividing
// k. Such a sequence is stored as one value per element of N.

namespace iterindex::seq {

class SetValidationError : public std::invalid_argument {
public:
    enum class Kind { empty, non_positive, missing_one, not_lcm_closed };

    SetValidationError(Kind kind, const std::string& what, std::int64_t a = 0,
                       std::int64_t b = 0)
        : std::invalid_argument(what), kind_(kind), pair_(a, b) {}

    Kind kind() const { return kind_; }
    /// For not_lcm_closed: the pair whose lcm is missing.
    std::pair<std::int64_t, std::int64_t> offending_pair() const { return pair_; }

private:
    Kind kind_;
    std::pair<std::int64_t, std::int64_t> pair_;
};

/// Finite set containing 1 and closed under lcm. Elements kept ascending.
class DivisorClosedSet {
public:
    /// The trivial set {1}.
    DivisorClosedSet();

    /// Checks conditions (1 in set, lcm-closed) and throws
    /// SetValidationError naming the violation.
    static DivisorClosedSet validate(std::vector<std::int64_t> candidate);

    /// Smallest valid set containing the generators (and 1).
    static DivisorClosedSet generated_by(std::span<const std::int64_t> generators);

    const std::vector<std::int64_t>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    std::int64_t q_max() const { return elements_.back(); }
    bool contains(std::int64_t q) const;
    std::size_t position(std::int64_t q) const;

    /// q(k): the largest element dividing k.
    std::int64_t largest_divisor_of(std::int64_t k) const;

    friend bool operator==(const DivisorClosedSet&, const DivisorClosedSet&) = default;

private:
    explicit DivisorClosedSet(std::vector<std::int64_t> sorted) : elements_(std::move(sorted)) {}
    std::vector<std::int64_t> elements_;
};

class SubordinatedSequence {
public:
    /// values[i] is the value at set.elements()[i].
    SubordinatedSequence(DivisorClosedSet set, std::vector<Rational> values);

    static SubordinatedSequence delta(const DivisorClosedSet& set, std::int64_t q);
    static SubordinatedSequence constant(const DivisorClosedSet& set, const Rational& c);
    /// Samples f at each element of the set.
    static SubordinatedSequence sample(const DivisorClosedSet& set,
                                       const std::function<Rational(std::int64_t)>& f);

    const DivisorClosedSet& set() const { return set_; }
    const std::vector<Rational>& values() const { return values_; }
    const Rational& at_element(std::int64_t q) const;

    /// a(k) for any k >= 1.
    const Rational& operator()(std::int64_t k) const;

    /// a(1), ..., a(count).
    std::vector<Rational> prefix(std::int64_t count) const;

    SubordinatedSequence& operator+=(const SubordinatedSequence& other);
    SubordinatedSequence& operator-=(const SubordinatedSequence& other);
    SubordinatedSequence& operator*=(const Rational& factor);

    friend SubordinatedSequence operator+(SubordinatedSequence a, const SubordinatedSequence& b) {
        return a += b;
    }
    friend SubordinatedSequence operator-(SubordinatedSequence a, const SubordinatedSequence& b) {
        return a -= b;
    }
    friend SubordinatedSequence operator*(const Rational& c, SubordinatedSequence a) {
        return a *= c;
    }
    friend bool operator==(const SubordinatedSequence&, const SubordinatedSequence&) = default;

private:
    void require_same_set(const SubordinatedSequence& other) const;

    DivisorClosedSet set_;
    std::vector<Rational> values_;
};

/// Coefficients c_q with seq = sum_q c_q * delta(q).
struct BasisDecomposition {
    DivisorClosedSet set;
    std::vector<Rational> coefficients;  // aligned with set.elements()

    const Rational& coefficient(std::int64_t q) const;
    SubordinatedSequence recompose() const;
};

BasisDecomposition decompose_basis(const SubordinatedSequence& seq);

/// b(k) = (1/k) sum_{d|k} phi(k/d) a(d), represented over the same set.
/// Computed through the delta basis, where the transform is diagonal with
/// entries 1/q.
SubordinatedSequence phi_transform(const SubordinatedSequence& a);

/// Solves phi_transform(a) = b by forward substitution over the set in
/// ascending order; the divisor system is unit-triangular since phi(1) = 1.
SubordinatedSequence inverse_phi_transform(const SubordinatedSequence& b);

/// (1/q_max) * sum_{k=1}^{q_max} seq(k).
Rational mean_value(const SubordinatedSequence& seq);

/// The divisor-sum transform evaluated at a single k for an arbitrary
/// sequence given pointwise.
Rational divisor_sum_transform(const std::function<Rational(std::int64_t)>& a, std::int64_t k);

struct IntegralityReport {
    /// Coefficient of q*delta(q) for each q, i.e. c_q / q.
    std::vector<std::pair<std::int64_t, Rational>> coefficients;
    bool integral = false;
    Rational mean;
    bool mean_is_integer = false;
};

/// Decomposes an integer-valued sequence over {q*delta(q)}. Sign constraints
/// for odd points are not checked. Throws std::invalid_argument on a
/// non-integer value.
IntegralityReport integrality_check(const SubordinatedSequence& iota);

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fits raw values a(1..L) of an L-periodic sequence to the smallest
/// divisor-closed set built greedily from divisors of the detected minimal
/// period. Throws FitError when no such set reproduces the data.
SubordinatedSequence fit_periodic(std::span<const Rational> one_period);

}  // namespace iterindex::seq
