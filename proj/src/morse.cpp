#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "iterindex/mec.hpp"

namespace iterindex::mec {

namespace {

std::int64_t ceil_of(const Rational& x) { return -static_cast<std::int64_t>(floor_of(-x)); }

std::int64_t sign_power(std::int64_t l) { return l % 2 == 0 ? 1 : -1; }

std::int64_t block_of(const PeriodicTail& t) {
    return std::lcm(static_cast<std::int64_t>(t.pattern.size()), std::int64_t{2});
}

struct Choice {
    std::vector<LocalHomologyEntry> options;
    std::int64_t top = 0;  // highest degree any option touches
};

std::vector<LocalHomologyEntry> table_entries(const ReebOrbitRecord& rec, std::int64_t k,
                                              const MorseOptions& options) {
    auto it = options.supplied_tables.find(rec.label);
    if (it == options.supplied_tables.end()) {
        throw std::invalid_argument(rec.label + ": n = " + std::to_string(rec.n) +
                                    " requires a supplied local homology table");
    }
    std::vector<LocalHomologyEntry> out;
    std::int64_t signed_total = 0;
    for (const auto& e : it->second) {
        if (e.iterate != k) continue;
        if (e.dimension < 0) throw std::invalid_argument(rec.label + ": negative dimension in table");
        if (e.degree) {
            const Rational d = rec.mean_index * k;
            if (Rational(*e.degree) < d - 2 || Rational(*e.degree) > d + 2 * rec.n - 4) {
                throw germ::ModelInconsistency(rec.label + "^" + std::to_string(k) + ": degree " +
                                               std::to_string(*e.degree) +
                                               " outside the local support window");
            }
            signed_total += sign_power(*e.degree) * e.dimension;
        } else if (e.dimension != 0) {
            throw std::invalid_argument(rec.label + ": table entry with dimension but no degree");
        }
        out.push_back(e);
    }
    if (out.empty()) {
        throw std::invalid_argument(rec.label + ": table has no entry for iterate " +
                                    std::to_string(k));
    }
    if (!std::holds_alternative<germ::Numeric>(rec.germ)) {
        const std::int64_t I = germ::iterated_index_germ(rec.germ, k);
        if (I != signed_total) {
            throw germ::ModelInconsistency(rec.label + "^" + std::to_string(k) +
                                           ": table Euler characteristic " +
                                           std::to_string(signed_total) + " differs from I = " +
                                           std::to_string(I));
        }
    }
    return out;
}

}  // namespace

ConsistencyReport morse_consistency(const std::vector<ReebOrbitRecord>& orbits,
                                    const HomologyProfile& h, const MorseOptions& options) {
    const std::int64_t N = options.max_iterate;
    if (N < 1) throw std::invalid_argument("max iterate must be >= 1");

    ConsistencyReport rep;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        rep.label += (i ? "," : "") + orbits[i].label;
        validate(orbits[i]);
    }
    if (orbits.empty()) rep.label = "(none)";

    const ResonanceReport res = resonance_check(orbits, h);
    rep.case_log.push_back("resonance +: orbits " + format_rational(res.orbits_plus) +
                           ", homology " + format_rational(res.profile_plus));
    rep.case_log.push_back("resonance -: orbits " + format_rational(res.orbits_minus) +
                           ", homology " + format_rational(res.profile_minus));
    if (!res.pass()) {
        Violation v;
        v.constraint = "C3";
        v.message = !res.pass_plus
                        ? "mean Euler characteristic +: orbit side " + format_rational(res.orbits_plus) +
                              " differs from homology side " + format_rational(res.profile_plus)
                        : "mean Euler characteristic -: orbit side " +
                              format_rational(res.orbits_minus) + " differs from homology side " +
                              format_rational(res.profile_minus);
        rep.violations.push_back(v);
        rep.verdict = Verdict::excluded;
        return rep;
    }

    // Local contributions of x^k, k <= N.
    std::vector<LocalHomologyEntry> fixed;
    std::vector<Choice> choices;
    std::int64_t support_lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t support_hi = std::numeric_limits<std::int64_t>::min();
    auto note_support = [&](const LocalHomologyEntry& e) {
        if (!e.degree || e.dimension == 0) return;
        support_lo = std::min(support_lo, *e.degree);
        support_hi = std::max(support_hi, *e.degree);
    };
    for (const auto& rec : orbits) {
        for (std::int64_t k = 1; k <= N; ++k) {
            if (rec.n == 2) {
                LocalHomology lh = local_homology_3d(rec, k);
                for (const auto& e : lh.options) note_support(e);
                if (lh.options.size() == 1) {
                    fixed.push_back(lh.options.front());
                } else {
                    Choice c{lh.options, std::numeric_limits<std::int64_t>::min()};
                    for (const auto& e : c.options) {
                        if (e.degree) c.top = std::max(c.top, *e.degree);
                    }
                    choices.push_back(std::move(c));
                }
            } else {
                for (auto& e : table_entries(rec, k, options)) {
                    note_support(e);
                    fixed.push_back(std::move(e));
                }
            }
        }
    }

    // Degree window in which every contribution is enumerated.
    bool has_pos = false;
    bool has_neg = false;
    std::int64_t hi = std::numeric_limits<std::int64_t>::max();
    std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    for (const auto& rec : orbits) {
        if (rec.mean_index > 0) {
            has_pos = true;
            hi = std::min(hi, ceil_of(rec.mean_index * (N + 1) - 2) - 1);
        } else {
            has_neg = true;
            lo = std::max(lo, static_cast<std::int64_t>(
                                  floor_of(rec.mean_index * (N + 1) + 2 * rec.n - 4)) +
                                  1);
        }
    }
    const PeriodicTail& ptail = h.positive_tail();
    const PeriodicTail& ntail = h.negative_tail();
    const std::int64_t explicit_lo = h.explicit_dims().empty() ? 0 : h.explicit_dims().begin()->first;
    const std::int64_t explicit_hi = h.explicit_dims().empty() ? 0 : h.explicit_dims().rbegin()->first;
    if (!has_pos) {
        hi = std::max({ptail.start + 2 * block_of(ptail), explicit_hi,
                       support_hi == std::numeric_limits<std::int64_t>::min() ? 0 : support_hi}) +
             2;
    }
    if (!has_neg) {
        lo = std::min({-ntail.start - 2 * block_of(ntail), explicit_lo,
                       support_lo == std::numeric_limits<std::int64_t>::max() ? 0 : support_lo}) -
             2;
    }
    rep.window_lo = lo;
    rep.window_hi = hi;
    if (has_pos && hi < ptail.start + 2 * block_of(ptail)) {
        rep.warnings.push_back("window truncation: complete degrees end at " + std::to_string(hi) +
                               ", before two periods of the positive tail; raise the iterate bound");
    }
    if (has_neg && lo > -ntail.start - 2 * block_of(ntail)) {
        rep.warnings.push_back("window truncation: complete degrees start at " +
                               std::to_string(lo) +
                               ", after two periods of the negative tail; raise the iterate bound");
    }
    rep.case_log.push_back("window [" + std::to_string(lo) + ", " + std::to_string(hi) + "], " +
                           std::to_string(fixed.size()) + " fixed iterates, " +
                           std::to_string(choices.size()) + " branch points");
    if (lo > hi) {
        rep.warnings.push_back("empty degree window; only the resonance relation was checked");
        rep.verdict = Verdict::consistent;
        rep.assignment = fixed;
        return rep;
    }

    // Dense local totals over [lo, hi].
    const std::int64_t width = hi - lo + 1;
    std::vector<std::int64_t> local(static_cast<std::size_t>(width), 0);
    auto slot = [&](std::int64_t l) -> std::int64_t* {
        if (l < lo || l > hi) return nullptr;
        return &local[static_cast<std::size_t>(l - lo)];
    };
    for (const auto& e : fixed) {
        if (e.degree) {
            if (auto* s = slot(*e.degree)) *s += e.dimension;
        }
    }

    std::stable_sort(choices.begin(), choices.end(),
                     [](const Choice& a, const Choice& b) { return a.top < b.top; });

    // A check becomes decidable once every branch point touching its
    // degrees has been assigned.
    std::vector<int> last_touch(static_cast<std::size_t>(width), -1);
    for (std::size_t i = 0; i < choices.size(); ++i) {
        for (const auto& e : choices[i].options) {
            if (e.degree && e.degree >= lo && e.degree <= hi) {
                last_touch[static_cast<std::size_t>(*e.degree - lo)] = static_cast<int>(i);
            }
        }
    }
    struct Check {
        int kind;  // 1: C1, 2: C2
        std::int64_t degree;
    };
    std::vector<std::vector<Check>> ready(choices.size() + 1);
    for (std::int64_t l = lo; l <= hi; ++l) {
        const auto idx = static_cast<std::size_t>(l - lo);
        ready[static_cast<std::size_t>(last_touch[idx] + 1)].push_back({1, l});
        if (l > lo && l < hi) {
            const int r = std::max({last_touch[idx - 1], last_touch[idx], last_touch[idx + 1]});
            ready[static_cast<std::size_t>(r + 1)].push_back({2, l});
        }
    }
    for (auto& group : ready) {
        std::stable_sort(group.begin(), group.end(), [](const Check& a, const Check& b) {
            return a.degree != b.degree ? a.degree < b.degree : a.kind < b.kind;
        });
    }

    auto evaluate = [&](const Check& c) -> std::optional<Violation> {
        const std::int64_t have = *slot(c.degree);
        const std::int64_t need = h.dim(c.degree);
        if (c.kind == 1) {
            if (have >= need) return std::nullopt;
            Violation v{"C1", c.degree, "", have, need, 0};
            v.message = "degree " + std::to_string(c.degree) + ": local homology total " +
                        std::to_string(have) + " is below dim HC = " + std::to_string(need);
            return v;
        }
        const std::int64_t around = *slot(c.degree - 1) + *slot(c.degree + 1);
        if (have - need <= around) return std::nullopt;
        Violation v{"C2", c.degree, "", have, need, around};
        v.message = "degree " + std::to_string(c.degree) + ": excess " + std::to_string(have) +
                    " - " + std::to_string(need) + " = " + std::to_string(have - need) +
                    " exceeds neighbouring local homology " + std::to_string(around);
        return v;
    };

    std::vector<const LocalHomologyEntry*> chosen(choices.size(), nullptr);
    std::int64_t nodes = 0;
    auto record = [&](const Violation& v) {
        for (const auto& seen : rep.violations) {
            if (seen.constraint == v.constraint && seen.degree == v.degree) return;
        }
        if (rep.violations.size() < 64) rep.violations.push_back(v);
    };
    std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
        if (++nodes > options.search_budget) {
            throw std::runtime_error("branch search budget of " +
                                     std::to_string(options.search_budget) + " nodes exceeded");
        }
        for (const auto& c : ready[depth]) {
            if (auto v = evaluate(c)) {
                record(*v);
                return false;
            }
        }
        if (depth == choices.size()) return true;
        for (const auto& opt : choices[depth].options) {
            std::int64_t* s = opt.degree ? slot(*opt.degree) : nullptr;
            if (s) *s += opt.dimension;
            chosen[depth] = &opt;
            const bool ok = search(depth + 1);
            if (s) *s -= opt.dimension;
            if (ok) return true;
        }
        return false;
    };

    const bool found = search(0);
    std::sort(rep.violations.begin(), rep.violations.end(), [](const Violation& a, const Violation& b) {
        return a.degree.value_or(0) < b.degree.value_or(0);
    });
    rep.case_log.push_back("branch search visited " + std::to_string(nodes) + " nodes");
    if (!found) {
        rep.verdict = Verdict::excluded;
        return rep;
    }

    rep.verdict = Verdict::consistent;
    rep.violations.clear();
    rep.assignment = fixed;
    for (const auto* e : chosen) rep.assignment.push_back(*e);
    std::sort(rep.assignment.begin(), rep.assignment.end(),
              [](const LocalHomologyEntry& a, const LocalHomologyEntry& b) {
                  return a.label != b.label ? a.label < b.label : a.iterate < b.iterate;
              });
    // Re-apply the assignment to log the per-degree totals.
    for (const auto* e : chosen) {
        if (e->degree) {
            if (auto* s = slot(*e->degree)) *s += e->dimension;
        }
    }
    for (std::int64_t l = lo; l <= hi; ++l) {
        const std::int64_t have = *slot(l);
        const std::int64_t need = h.dim(l);
        if (have == 0 && need == 0) continue;
        std::ostringstream line;
        line << "degree " << l << ": local " << have << ", homology " << need;
        rep.case_log.push_back(line.str());
    }
    return rep;
}

}  // namespace iterindex::mec
