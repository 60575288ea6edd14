#include "iterindex/seq.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "iterindex/arith.hpp"

namespace iterindex::seq {

namespace {

// Averages longer than this are taken from the delta-basis form instead of
// summing one full period.
constexpr std::int64_t kDirectMeanLimit = 1'000'000;

std::vector<std::int64_t> lcm_closure(std::vector<std::int64_t> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t n = elements.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                std::int64_t l = std::lcm(elements[i], elements[j]);
                if (!std::binary_search(elements.begin(), elements.end(), l)) {
                    elements.insert(std::lower_bound(elements.begin(), elements.end(), l), l);
                    grew = true;
                }
            }
            if (grew) break;
        }
    }
    return elements;
}

}  // namespace

DivisorClosedSet::DivisorClosedSet() : elements_{1} {}

DivisorClosedSet DivisorClosedSet::validate(std::vector<std::int64_t> candidate) {
    using Kind = SetValidationError::Kind;
    if (candidate.empty()) {
        throw SetValidationError(Kind::empty, "divisor-closed set must be non-empty");
    }
    for (std::int64_t q : candidate) {
        if (q < 1) {
            throw SetValidationError(Kind::non_positive,
                                     "set element must be positive, got " + std::to_string(q));
        }
    }
    std::sort(candidate.begin(), candidate.end());
    candidate.erase(std::unique(candidate.begin(), candidate.end()), candidate.end());
    if (candidate.front() != 1) {
        throw SetValidationError(Kind::missing_one, "set must contain 1");
    }
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        for (std::size_t j = i + 1; j < candidate.size(); ++j) {
            std::int64_t l = std::lcm(candidate[i], candidate[j]);
            if (!std::binary_search(candidate.begin(), candidate.end(), l)) {
                throw SetValidationError(Kind::not_lcm_closed,
                                         "set is not lcm-closed: lcm(" +
                                             std::to_string(candidate[i]) + "," +
                                             std::to_string(candidate[j]) + ")=" +
                                             std::to_string(l) + " missing",
                                         candidate[i], candidate[j]);
            }
        }
    }
    return DivisorClosedSet(std::move(candidate));
}

DivisorClosedSet DivisorClosedSet::generated_by(std::span<const std::int64_t> generators) {
    std::vector<std::int64_t> elements{1};
    for (std::int64_t g : generators) {
        if (g < 1) {
            throw SetValidationError(SetValidationError::Kind::non_positive,
                                     "generator must be positive, got " + std::to_string(g));
        }
        elements.push_back(g);
    }
    return DivisorClosedSet(lcm_closure(std::move(elements)));
}

bool DivisorClosedSet::contains(std::int64_t q) const {
    return std::binary_search(elements_.begin(), elements_.end(), q);
}

std::size_t DivisorClosedSet::position(std::int64_t q) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), q);
    if (it == elements_.end() || *it != q) {
        throw std::out_of_range(std::to_string(q) + " is not an element of the set");
    }
    return static_cast<std::size_t>(it - elements_.begin());
}

std::int64_t DivisorClosedSet::largest_divisor_of(std::int64_t k) const {
    if (k < 1) throw std::invalid_argument("index must be >= 1");
    for (auto it = elements_.rbegin(); it != elements_.rend(); ++it) {
        if (k % *it == 0) return *it;
    }
    return 1;  // unreachable: 1 is always present
}

SubordinatedSequence::SubordinatedSequence(DivisorClosedSet set, std::vector<Rational> values)
    : set_(std::move(set)), values_(std::move(values)) {
    if (values_.size() != set_.size()) {
        throw std::invalid_argument("need exactly one value per set element");
    }
}

SubordinatedSequence SubordinatedSequence::delta(const DivisorClosedSet& set, std::int64_t q) {
    if (!set.contains(q)) {
        throw std::invalid_argument("delta(" + std::to_string(q) + "): not a set element");
    }
    std::vector<Rational> values;
    values.reserve(set.size());
    for (std::int64_t e : set.elements()) values.emplace_back(e % q == 0 ? 1 : 0);
    return {set, std::move(values)};
}

SubordinatedSequence SubordinatedSequence::constant(const DivisorClosedSet& set,
                                                    const Rational& c) {
    return {set, std::vector<Rational>(set.size(), c)};
}

SubordinatedSequence SubordinatedSequence::sample(
    const DivisorClosedSet& set, const std::function<Rational(std::int64_t)>& f) {
    std::vector<Rational> values;
    values.reserve(set.size());
    for (std::int64_t e : set.elements()) values.push_back(f(e));
    return {set, std::move(values)};
}

const Rational& SubordinatedSequence::at_element(std::int64_t q) const {
    return values_[set_.position(q)];
}

const Rational& SubordinatedSequence::operator()(std::int64_t k) const {
    return values_[set_.position(set_.largest_divisor_of(k))];
}

std::vector<Rational> SubordinatedSequence::prefix(std::int64_t count) const {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
    for (std::int64_t k = 1; k <= count; ++k) out.push_back((*this)(k));
    return out;
}

void SubordinatedSequence::require_same_set(const SubordinatedSequence& other) const {
    if (!(set_ == other.set_)) {
        throw std::invalid_argument("sequences are subordinated to different sets");
    }
}

SubordinatedSequence& SubordinatedSequence::operator+=(const SubordinatedSequence& other) {
    require_same_set(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

SubordinatedSequence& SubordinatedSequence::operator-=(const SubordinatedSequence& other) {
    require_same_set(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

SubordinatedSequence& SubordinatedSequence::operator*=(const Rational& factor) {
    for (auto& v : values_) v *= factor;
    return *this;
}

const Rational& BasisDecomposition::coefficient(std::int64_t q) const {
    return coefficients[set.position(q)];
}

SubordinatedSequence BasisDecomposition::recompose() const {
    const auto& elems = set.elements();
    std::vector<Rational> values(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (elems[i] % elems[j] == 0) values[i] += coefficients[j];
        }
    }
    return {set, std::move(values)};
}

BasisDecomposition decompose_basis(const SubordinatedSequence& seq) {
    // Inclusion-exclusion along divisibility: a(q) = sum_{q' | q} c_{q'}.
    const auto& elems = seq.set().elements();
    std::vector<Rational> c(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        Rational rest = seq.values()[i];
        for (std::size_t j = 0; j < i; ++j) {
            if (elems[i] % elems[j] == 0) rest -= c[j];
        }
        c[i] = std::move(rest);
    }
    return {seq.set(), std::move(c)};
}

SubordinatedSequence phi_transform(const SubordinatedSequence& a) {
    BasisDecomposition basis = decompose_basis(a);
    const auto& elems = basis.set.elements();
    for (std::size_t i = 0; i < elems.size(); ++i) basis.coefficients[i] /= elems[i];
    return basis.recompose();
}

SubordinatedSequence inverse_phi_transform(const SubordinatedSequence& b) {
    const DivisorClosedSet& set = b.set();
    const auto& elems = set.elements();
    std::vector<Rational> a(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const std::int64_t k = elems[i];
        Rational acc = Rational(k) * b.values()[i];
        for (std::int64_t d : arith::divisors(k)) {
            if (d == k) break;
            // q(d) < k is an earlier element, already solved.
            acc -= Rational(arith::totient(k / d)) * a[set.position(set.largest_divisor_of(d))];
        }
        a[i] = std::move(acc);
    }
    return {set, std::move(a)};
}

Rational mean_value(const SubordinatedSequence& seq) {
    const std::int64_t period = seq.set().q_max();
    if (period > kDirectMeanLimit) {
        const auto basis = decompose_basis(seq);
        Rational mean;
        for (std::size_t i = 0; i < basis.coefficients.size(); ++i) {
            mean += basis.coefficients[i] / basis.set.elements()[i];
        }
        return mean;
    }
    Rational sum;
    for (std::int64_t k = 1; k <= period; ++k) sum += seq(k);
    return sum / period;
}

Rational divisor_sum_transform(const std::function<Rational(std::int64_t)>& a, std::int64_t k) {
    Rational sum;
    for (std::int64_t d : arith::divisors(k)) {
        sum += Rational(arith::totient(k / d)) * a(d);
    }
    return sum / k;
}

IntegralityReport integrality_check(const SubordinatedSequence& iota) {
    for (const auto& v : iota.values()) {
        if (!is_integer(v)) {
            throw std::invalid_argument("integrality check needs integer values, got " +
                                        format_rational(v));
        }
    }
    const auto basis = decompose_basis(iota);
    IntegralityReport report;
    report.integral = true;
    for (std::size_t i = 0; i < basis.coefficients.size(); ++i) {
        const std::int64_t q = basis.set.elements()[i];
        Rational scaled = basis.coefficients[i] / q;
        report.integral = report.integral && is_integer(scaled);
        report.mean += scaled;
        report.coefficients.emplace_back(q, std::move(scaled));
    }
    report.mean_is_integer = is_integer(report.mean);
    return report;
}

SubordinatedSequence fit_periodic(std::span<const Rational> one_period) {
    const auto length = static_cast<std::int64_t>(one_period.size());
    if (length == 0) throw FitError("cannot fit an empty sequence");

    auto raw = [&](std::int64_t k) -> const Rational& {
        return one_period[static_cast<std::size_t>((k - 1) % length)];
    };

    std::int64_t period = length;
    for (std::int64_t p : arith::divisors(length)) {
        bool periodic = true;
        for (std::int64_t k = p + 1; k <= length && periodic; ++k) {
            periodic = raw(k) == raw(k - p);
        }
        if (periodic) {
            period = p;
            break;
        }
    }

    std::vector<std::int64_t> generators;
    DivisorClosedSet set;
    for (std::int64_t k = 2; k <= period; ++k) {
        if (raw(k) == raw(set.largest_divisor_of(k))) continue;
        if (period % k != 0) {
            throw FitError("sequence is not subordinated to any divisor-closed set: value at " +
                           std::to_string(k) + " differs from value at q(" + std::to_string(k) +
                           ") and " + std::to_string(k) + " does not divide the period " +
                           std::to_string(period));
        }
        generators.push_back(k);
        set = DivisorClosedSet::generated_by(generators);
    }

    auto fitted = SubordinatedSequence::sample(set, raw);
    for (std::int64_t k = 1; k <= period; ++k) {
        if (fitted(k) != raw(k)) {
            throw FitError("fitted set {q_max=" + std::to_string(set.q_max()) +
                           "} does not reproduce the value at " + std::to_string(k));
        }
    }
    return fitted;
}

}  // namespace iterindex::seq
