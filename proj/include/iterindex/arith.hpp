#pragma once

#include <cstdint>
#include <utility>
#include <vector>

// Exact number-theory kernel. Everything here is integer arithmetic on
// positive 64-bit inputs; zero and negative arguments throw
// std::invalid_argument.

namespace iterindex::arith {

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// ascending prime order.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// Euler's function: the count of 1 <= k <= n coprime to n; totient(1) == 1.
std::int64_t totient(std::int64_t n);

/// All positive divisors of n, ascending.
std::vector<std::int64_t> divisors(std::int64_t n);

/// Möbius function.
int mobius(std::int64_t n);

/// sum over l | r of totient(l). Equals r.
std::int64_t euler_divisor_sum(std::int64_t r);

/// sum over l | r of (-1)^l totient(r / l). Zero for even r, -r for odd r.
std::int64_t alternating_totient_sum(std::int64_t r);

}  // namespace iterindex::arith
