#include "iterindex/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace iterindex::arith {

namespace {

void require_positive(std::int64_t n, const char* what) {
    if (n < 1) {
        throw std::invalid_argument(std::string(what) + ": argument must be >= 1, got " +
                                    std::to_string(n));
    }
}

}  // namespace

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    require_positive(n, "factorize");
    std::vector<std::pair<std::int64_t, int>> factors;
    for (std::int64_t p = 2; p <= n / p; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        factors.emplace_back(p, e);
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

std::int64_t totient(std::int64_t n) {
    require_positive(n, "totient");
    std::int64_t result = n;
    for (auto [p, e] : factorize(n)) {
        result = result / p * (p - 1);
    }
    return result;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    require_positive(n, "divisors");
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d <= n / d; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

int mobius(std::int64_t n) {
    require_positive(n, "mobius");
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::int64_t euler_divisor_sum(std::int64_t r) {
    require_positive(r, "euler_divisor_sum");
    std::int64_t sum = 0;
    for (std::int64_t l : divisors(r)) sum += totient(l);
    return sum;
}

std::int64_t alternating_totient_sum(std::int64_t r) {
    require_positive(r, "alternating_totient_sum");
    std::int64_t sum = 0;
    for (std::int64_t l : divisors(r)) {
        std::int64_t term = totient(r / l);
        sum += (l % 2 == 0) ? term : -term;
    }
    return sum;
}

}  // namespace iterindex::arith
