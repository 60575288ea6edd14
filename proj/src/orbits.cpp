#include "iterindex/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "iterindex/seq.hpp"

namespace iterindex::orbits {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Matrix = std::array<std::array<std::int64_t, 2>, 2>;

// Enumeration refuses sets larger than this.
constexpr std::int64_t kMaxPoints = std::int64_t{1} << 32;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow");
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow");
    return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    Matrix c{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            c[i][j] = checked_add(checked_mul(a[i][0], b[0][j]), checked_mul(a[i][1], b[1][j]));
        }
    }
    return c;
}

Matrix power(const Matrix& a, std::int64_t k) {
    Matrix result{{{1, 0}, {0, 1}}};
    for (std::int64_t i = 0; i < k; ++i) result = multiply(result, a);
    return result;
}

std::int64_t trace(const Matrix& a) { return checked_add(a[0][0], a[1][1]); }

std::int64_t det(const Matrix& a) {
    return checked_add(checked_mul(a[0][0], a[1][1]), -checked_mul(a[0][1], a[1][0]));
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

// Parity of the number of roots of x^2 - t x + d in (1, inf) is odd iff the
// polynomial is negative at 1; likewise for (-inf, -1) at -1.
bool odd_count_above_one(std::int64_t t, std::int64_t d) { return 1 - t + d < 0; }
bool odd_count_below_minus_one(std::int64_t t, std::int64_t d) { return 1 + t + d < 0; }

// --- circle ------------------------------------------------------------

std::int64_t circle_modulus(const CircleEndo& c, std::int64_t k) {
    std::int64_t n = 1;
    for (std::int64_t i = 0; i < k; ++i) n = checked_mul(n, c.degree);
    if (n - 1 > kMaxPoints) throw std::overflow_error("too many periodic points to enumerate");
    return n - 1;
}

std::int64_t circle_lefschetz(const CircleEndo& c, std::int64_t k) {
    const std::int64_t n = circle_modulus(c, k);
    const std::int64_t dk = n + 1;
    std::int64_t sum = 0;
    for (std::int64_t j = 0; j < n; ++j) {
        if (mulmod(dk % n, j, n) != j) throw std::logic_error("circle enumeration: not a fixed point");
        sum += -1;  // derivative d^k > 1
    }
    return sum;
}

std::vector<PeriodicOrbit> circle_orbits(const CircleEndo& c, std::int64_t k) {
    const std::int64_t n = circle_modulus(c, k);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<PeriodicOrbit> out;
    for (std::int64_t j = 0; j < n; ++j) {
        if (seen[static_cast<std::size_t>(j)]) continue;
        std::int64_t tau = 0;
        std::int64_t x = j;
        do {
            seen[static_cast<std::size_t>(x)] = 1;
            x = mulmod(x, c.degree, n);
            ++tau;
        } while (x != j);
        PeriodicOrbit orbit;
        orbit.point = {Rational(j, n)};
        orbit.minimal_period = tau;
        orbit.iterate = k;
        orbit.index = -1;
        orbit.parity = germ::Parity::even;
        orbit.kind = germ::classify_iterate(tau, k, orbit.parity);
        out.push_back(std::move(orbit));
    }
    return out;
}

// --- torus -------------------------------------------------------------

struct TorusFixedSet {
    std::int64_t modulus = 1;           // |det(A^k - I)|
    std::vector<std::int64_t> keys;     // x * modulus + y, ascending
    int index = 0;                      // common index of all points
};

TorusFixedSet torus_fixed_points(const TorusLinear& t, std::int64_t k) {
    const Matrix ak = power(t.matrix, k);
    Matrix b = ak;
    b[0][0] -= 1;
    b[1][1] -= 1;
    const std::int64_t d = det(b);
    if (d == 0) throw std::invalid_argument("A^k - I is singular");
    const std::int64_t m = d < 0 ? -d : d;
    if (m > (std::int64_t{1} << 26)) throw std::overflow_error("too many periodic points to enumerate");

    // Fix(A^k) = adj(B) Z^2 / |det B| mod Z^2, the subgroup of (Z_m)^2
    // generated by the columns of adj(B).
    const std::array<std::int64_t, 2> g1{mod(b[1][1], m), mod(-b[1][0], m)};
    const std::array<std::int64_t, 2> g2{mod(-b[0][1], m), mod(b[0][0], m)};
    auto key = [m](std::int64_t x, std::int64_t y) { return x * m + y; };

    std::vector<std::array<std::int64_t, 2>> cyclic;
    std::unordered_set<std::int64_t> members;
    {
        std::array<std::int64_t, 2> p{0, 0};
        do {
            cyclic.push_back(p);
            members.insert(key(p[0], p[1]));
            p = {(p[0] + g1[0]) % m, (p[1] + g1[1]) % m};
        } while (p[0] != 0 || p[1] != 0);
    }
    std::vector<std::int64_t> keys(members.begin(), members.end());
    std::array<std::int64_t, 2> shift{g2};
    while (!members.count(key(shift[0], shift[1]))) {
        for (const auto& c : cyclic) {
            keys.push_back(key((c[0] + shift[0]) % m, (c[1] + shift[1]) % m));
        }
        shift = {(shift[0] + g2[0]) % m, (shift[1] + g2[1]) % m};
    }
    std::sort(keys.begin(), keys.end());
    if (static_cast<std::int64_t>(keys.size()) != m) {
        throw std::logic_error("torus enumeration found " + std::to_string(keys.size()) +
                               " points, expected " + std::to_string(m));
    }
    for (std::int64_t kv : keys) {
        const std::int64_t x = kv / m, y = kv % m;
        const bool fixed = mod(static_cast<std::int64_t>((static_cast<__int128>(b[0][0]) * x +
                                                          static_cast<__int128>(b[0][1]) * y) % m),
                               m) == 0 &&
                           mod(static_cast<std::int64_t>((static_cast<__int128>(b[1][0]) * x +
                                                          static_cast<__int128>(b[1][1]) * y) % m),
                               m) == 0;
        if (!fixed) throw std::logic_error("torus enumeration produced a non-fixed point");
    }
    const int index = odd_count_above_one(trace(ak), det(ak)) ? -1 : 1;
    return {m, std::move(keys), index};
}

std::int64_t torus_lefschetz(const TorusLinear& t, std::int64_t k) {
    const TorusFixedSet fixed = torus_fixed_points(t, k);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < fixed.keys.size(); ++i) sum += fixed.index;
    return sum;
}

std::vector<PeriodicOrbit> torus_orbits(const TorusLinear& t, std::int64_t k) {
    const TorusFixedSet fixed = torus_fixed_points(t, k);
    const std::int64_t m = fixed.modulus;
    const Matrix& a = t.matrix;
    std::vector<char> seen(fixed.keys.size(), 0);
    auto slot = [&](std::int64_t kv) {
        auto it = std::lower_bound(fixed.keys.begin(), fixed.keys.end(), kv);
        if (it == fixed.keys.end() || *it != kv) throw std::logic_error("torus orbit left Fix(A^k)");
        return static_cast<std::size_t>(it - fixed.keys.begin());
    };
    std::vector<PeriodicOrbit> out;
    for (std::size_t i = 0; i < fixed.keys.size(); ++i) {
        if (seen[i]) continue;
        std::int64_t x = fixed.keys[i] / m, y = fixed.keys[i] % m;
        std::int64_t tau = 0;
        std::size_t s = i;
        do {
            seen[s] = 1;
            const std::int64_t nx = mod((mulmod(mod(a[0][0], m), x, m) + mulmod(mod(a[0][1], m), y, m)) % m, m);
            const std::int64_t ny = mod((mulmod(mod(a[1][0], m), x, m) + mulmod(mod(a[1][1], m), y, m)) % m, m);
            x = nx;
            y = ny;
            ++tau;
            s = slot(x * m + y);
        } while (s != i);
        const Matrix at = power(a, tau);
        PeriodicOrbit orbit;
        orbit.point = {Rational(fixed.keys[i] / m, m), Rational(fixed.keys[i] % m, m)};
        orbit.minimal_period = tau;
        orbit.iterate = k;
        orbit.index = fixed.index;
        orbit.parity = odd_count_below_minus_one(trace(at), det(at)) ? germ::Parity::odd
                                                                     : germ::Parity::even;
        orbit.kind = germ::classify_iterate(tau, k, orbit.parity);
        out.push_back(std::move(orbit));
    }
    return out;
}

// --- numeric interval maps -------------------------------------------

double bisect(const germ::IntervalMap& g, double a, double b, double tolerance) {
    double ga = g(a);
    while (b - a > tolerance) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0) == (ga < 0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> grid_roots(const Numeric1D& n, const germ::IntervalMap& g) {
    std::vector<double> roots;
    const double width = (n.hi - n.lo) / n.grid_cells;
    double prev_x = n.lo;
    double prev_g = g(prev_x);
    if (prev_g == 0.0) roots.push_back(prev_x);
    for (int i = 1; i <= n.grid_cells; ++i) {
        const double x = (i == n.grid_cells) ? n.hi : n.lo + width * i;
        const double gx = g(x);
        if (gx == 0.0) {
            roots.push_back(x);
        } else if (prev_g != 0.0 && (gx < 0) != (prev_g < 0)) {
            roots.push_back(bisect(g, prev_x, x, n.bisection_tolerance));
        }
        prev_x = x;
        prev_g = gx;
    }
    return roots;
}

double seed_root(const Numeric1D& n, const germ::IntervalMap& g, double seed) {
    if (g(seed) == 0.0) return seed;
    for (double w = 1e-4; w <= n.hi - n.lo; w *= 2) {
        const double a = std::max(n.lo, seed - w), b = std::min(n.hi, seed + w);
        const double ga = g(a), gb = g(b);
        if (ga == 0.0) return a;
        if (gb == 0.0) return b;
        if ((ga < 0) != (gb < 0)) return bisect(g, a, b, n.bisection_tolerance);
    }
    throw SeedError("no sign change of x - F^k(x) near seed " + std::to_string(seed));
}

double derivative(const germ::IntervalMap& f, double x) {
    const double h = 1e-6;
    return (f(x + h) - f(x - h)) / (2 * h);
}

struct NumericFixedSet {
    std::vector<double> roots;
    std::vector<int> indices;
};

NumericFixedSet numeric_fixed_points(const Numeric1D& n, std::int64_t k) {
    const germ::IntervalMap fk = germ::iterate(n.map, k);
    const germ::IntervalMap g = [&fk](double x) { return x - fk(x); };
    NumericFixedSet out;
    out.roots = grid_roots(n, g);

    // Points reachable from the seeds.
    std::vector<double> accounted;
    for (double seed : n.seeds) {
        double x = seed_root(n, g, seed);
        for (std::int64_t i = 0; i < k; ++i) {
            accounted.push_back(x);
            x = n.map(x);
        }
    }
    const double match = 1e-6;
    for (double r : out.roots) {
        const bool found = std::any_of(accounted.begin(), accounted.end(),
                                       [&](double a) { return std::abs(a - r) < match; });
        if (!found) {
            throw SeedError("sign change of x - F^" + std::to_string(k) + "(x) at " +
                            std::to_string(r) + " is not accounted for by the seeds");
        }
    }
    for (double r : out.roots) {
        // Index of an isolated 1-D fixed point: +1 if (F^k)' < 1, -1 if > 1.
        const double slope = derivative(fk, r);
        if (std::abs(slope - 1.0) < 1e-9) {
            throw germ::OracleFailure("degenerate fixed point of F^" + std::to_string(k) +
                                      " at " + std::to_string(r));
        }
        out.indices.push_back(slope > 1.0 ? -1 : 1);
    }
    return out;
}

std::int64_t numeric_lefschetz(const Numeric1D& n, std::int64_t k) {
    const NumericFixedSet fixed = numeric_fixed_points(n, k);
    std::int64_t sum = 0;
    for (int i : fixed.indices) sum += i;
    return sum;
}

std::vector<PeriodicOrbit> numeric_orbits(const Numeric1D& n, std::int64_t k) {
    const NumericFixedSet fixed = numeric_fixed_points(n, k);
    const auto& roots = fixed.roots;
    auto nearest = [&](double x) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < roots.size(); ++i) {
            if (std::abs(roots[i] - x) < std::abs(roots[best] - x)) best = i;
        }
        return best;
    };
    std::vector<char> crowded(roots.size(), 0);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        if (roots[i + 1] - roots[i] < n.separation) crowded[i] = crowded[i + 1] = 1;
    }

    std::vector<int> orbit_of(roots.size(), -1);
    std::vector<PeriodicOrbit> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (orbit_of[i] >= 0) continue;
        std::int64_t tau = k;
        double x = roots[i];
        bool unresolved = crowded[i] != 0;
        std::vector<std::size_t> members{i};
        for (std::int64_t t = 1; t <= k; ++t) {
            x = n.map(x);
            if (std::abs(x - roots[i]) < 1e-9) {
                tau = t;
                break;
            }
            const std::size_t j = nearest(x);
            if (std::abs(roots[j] - x) > 1e-6) unresolved = true;
            members.push_back(j);
        }
        if (k % tau != 0) unresolved = true;
        const int id = static_cast<int>(out.size());
        for (std::size_t j : members) {
            if (orbit_of[j] >= 0 && orbit_of[j] != id) unresolved = true;
            orbit_of[j] = id;
            unresolved = unresolved || crowded[j] != 0;
        }

        PeriodicOrbit orbit;
        orbit.numeric_point = roots[i];
        orbit.minimal_period = tau;
        orbit.iterate = k;
        orbit.index = fixed.indices[i];
        orbit.parity = derivative(germ::iterate(n.map, tau), roots[i]) < -1.0 ? germ::Parity::odd
                                                                              : germ::Parity::even;
        orbit.kind = (k % tau == 0) ? germ::classify_iterate(tau, k, orbit.parity)
                                    : germ::OrbitKind::good;
        orbit.unresolved = unresolved;
        out.push_back(std::move(orbit));
    }
    return out;
}

}  // namespace

void validate(const MapModel& m) {
    std::visit(overloaded{
                   [](const CircleEndo& c) {
                       if (c.degree < 2) throw std::invalid_argument("circle map needs d >= 2");
                   },
                   [](const TorusLinear& t) {
                       const std::int64_t tr = trace(t.matrix), d = det(t.matrix);
                       if (1 - tr + d == 0) throw std::invalid_argument("matrix has eigenvalue 1");
                       if (1 + tr + d == 0) throw std::invalid_argument("matrix has eigenvalue -1");
                       if (d == 1 && tr >= -1 && tr <= 1) {
                           throw std::invalid_argument(
                               "matrix has eigenvalues that are roots of unity");
                       }
                   },
                   [](const Numeric1D& n) {
                       if (!n.map) throw std::invalid_argument("numeric model needs a map");
                       if (!(n.lo < n.hi)) throw std::invalid_argument("interval must be non-empty");
                       if (n.grid_cells < 2) throw std::invalid_argument("grid too coarse");
                       for (double s : n.seeds) {
                           if (s < n.lo || s > n.hi)
                               throw std::invalid_argument("seed outside the interval");
                       }
                   },
               },
               m);
}

std::string describe(const MapModel& m) {
    return std::visit(overloaded{
                          [](const CircleEndo& c) { return "circle:d=" + std::to_string(c.degree); },
                          [](const TorusLinear& t) {
                              return "torus:" + std::to_string(t.matrix[0][0]) + "," +
                                     std::to_string(t.matrix[0][1]) + "," +
                                     std::to_string(t.matrix[1][0]) + "," +
                                     std::to_string(t.matrix[1][1]);
                          },
                          [](const Numeric1D& n) {
                              return "numeric1d:[" + std::to_string(n.lo) + "," +
                                     std::to_string(n.hi) + "]";
                          },
                      },
                      m);
}

std::int64_t lefschetz(const MapModel& m, std::int64_t k) {
    validate(m);
    if (k < 1) throw std::invalid_argument("iterate must be >= 1");
    return std::visit(overloaded{
                          [k](const CircleEndo& c) { return circle_lefschetz(c, k); },
                          [k](const TorusLinear& t) { return torus_lefschetz(t, k); },
                          [k](const Numeric1D& n) { return numeric_lefschetz(n, k); },
                      },
                      m);
}

std::vector<PeriodicOrbit> enumerate_periodic_orbits(const MapModel& m, std::int64_t k) {
    validate(m);
    if (k < 1) throw std::invalid_argument("iterate must be >= 1");
    return std::visit(overloaded{
                          [k](const CircleEndo& c) { return circle_orbits(c, k); },
                          [k](const TorusLinear& t) { return torus_orbits(t, k); },
                          [k](const Numeric1D& n) { return numeric_orbits(n, k); },
                      },
                      m);
}

std::int64_t iterated_index_map(const MapModel& m, std::int64_t k) {
    std::int64_t sum = 0;
    for (const auto& orbit : enumerate_periodic_orbits(m, k)) {
        if (orbit.kind == germ::OrbitKind::good) sum += orbit.index;
    }
    return sum;
}

std::vector<VerificationRow> verify_theorem_index_maps(const MapModel& m, std::int64_t max_k) {
    if (max_k < 1) throw std::invalid_argument("max k must be >= 1");
    std::map<std::int64_t, std::int64_t> lefschetz_cache;
    auto cached = [&](std::int64_t d) {
        auto it = lefschetz_cache.find(d);
        if (it == lefschetz_cache.end()) it = lefschetz_cache.emplace(d, lefschetz(m, d)).first;
        return it->second;
    };
    std::vector<VerificationRow> rows;
    for (std::int64_t k = 1; k <= max_k; ++k) {
        VerificationRow row;
        row.k = k;
        row.direct = iterated_index_map(m, k);
        row.formula =
            seq::divisor_sum_transform([&](std::int64_t d) { return Rational(cached(d)); }, k);
        row.lefschetz = cached(k);
        row.equal = row.formula == row.direct;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace iterindex::orbits
