#pragma once

// Slow, literal re-derivations used to cross-check the library. None of them
// call the routine they check.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "segmarket/segmarket.hpp"

namespace oracle {

using namespace segmarket;

/// Profit from charging grid[q] to the buyers in column p of sigma.
inline Rational profit(const TypeGrid& g, const RationalMatrix& sigma, std::size_t p, std::size_t q) {
    Rational buyers = 0;
    for (std::size_t t = 0; t < g.size(); ++t)
        if (g[t] >= g[q]) buyers += sigma(t, p);
    return g[q] * buyers;
}

inline bool obedient(const TypeGrid& g, const RationalMatrix& sigma) {
    for (std::size_t p = 0; p < g.size(); ++p)
        for (std::size_t q = 0; q < g.size(); ++q)
            if (profit(g, sigma, p, q) > profit(g, sigma, p, p)) return false;
    return true;
}

/// Is grid[p] among the profit maximizers of column p?
inline bool price_optimal(const TypeGrid& g, const RationalMatrix& sigma, std::size_t p) {
    for (std::size_t q = 0; q < g.size(); ++q)
        if (profit(g, sigma, p, q) > profit(g, sigma, p, p)) return false;
    return true;
}

/// Greedy placement written as a search: the placed amount is the largest
/// candidate breakpoint (or the whole remainder) that keeps the open price
/// optimal, checked by direct profit evaluation.
inline RationalMatrix greedy(const Market& m) {
    const auto& g = m.grid();
    const std::size_t k = m.size();
    RationalMatrix sigma(k, k);
    std::size_t open = 0;
    for (std::size_t t = 0; t < k; ++t) {
        std::vector<Rational> candidates{m.mass(t), Rational(0)};
        for (std::size_t q = open + 1; q <= t; ++q) {
            // open·(D_open + x) = g[q]·(D_q + x)
            Rational d_open = 0, d_q = 0;
            for (std::size_t s = open; s < k; ++s) d_open += sigma(s, open);
            for (std::size_t s = q; s < k; ++s) d_q += sigma(s, open);
            Rational x = (g[open] * d_open - g[q] * d_q) / (g[q] - g[open]);
            if (x >= 0 && x <= m.mass(t)) candidates.push_back(x);
        }
        std::sort(candidates.begin(), candidates.end());
        Rational placed = 0;
        for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
            RationalMatrix trial = sigma;
            trial(t, open) = *it;
            if (price_optimal(g, trial, open)) {
                placed = *it;
                break;
            }
        }
        sigma(t, open) = placed;
        if (placed < m.mass(t)) {
            open = t;
            sigma(t, open) = m.mass(t) - placed;
        }
    }
    return sigma;
}

/// Definition of saturation, spelled out with explicit profit comparisons.
inline bool saturated(const Segmentation& seg) {
    const auto& g = seg.grid();
    const auto& s = seg.sigma();
    const std::size_t k = g.size();
    std::vector<std::size_t> support;
    for (std::size_t p = 0; p < k; ++p) {
        Rational total = 0;
        for (std::size_t t = 0; t < k; ++t) total += s(t, p);
        if (total > 0) support.push_back(p);
    }
    auto tied = [&](std::size_t p, std::size_t q) { return profit(g, s, p, q) == profit(g, s, p, p); };
    for (std::size_t p : support) {
        if (p == support.back()) continue;
        bool any = false;
        for (std::size_t q = p + 1; q < k; ++q) any = any || tied(p, q);
        if (!any) return false;
    }
    for (std::size_t p : support)
        for (std::size_t t = 0; t < k; ++t)
            if (s(t, p) > 0)
                for (std::size_t pp : support)
                    if (p < pp && pp <= t && !tied(pp, t)) return false;
    return true;
}

inline bool strongly_monotone(const Segmentation& seg) {
    const auto& s = seg.sigma();
    const std::size_t k = seg.size();
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t t = 0; t < k; ++t) {
            if (s(t, p) == 0) continue;
            for (std::size_t pp = p + 1; pp < k; ++pp) {
                Rational total = 0;
                for (std::size_t u = 0; u < k; ++u) total += s(u, pp);
                if (total > 0 && t > pp) return false;
            }
        }
    return true;
}

// ---------------------------------------------------------------------------
// Brute-force LP: the best feasible basic solution over every choice of n
// tight constraints among the rows and the bounds x ≥ 0. Tiny problems only.

namespace detail {

inline std::optional<std::vector<Rational>> unique_solution(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = c;
        while (r < n && a[r][c] == 0) ++r;
        if (r == n) return std::nullopt;
        std::swap(a[r], a[c]);
        std::swap(b[r], b[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const Rational f = a[i][c] / a[c][c];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

inline bool satisfies(const LpProblem& lp, const std::vector<Rational>& x) {
    for (const auto& v : x)
        if (v < 0) return false;
    for (const auto& c : lp.constraints) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coefficients[j] * x[j];
        if (c.sense == Sense::LessEqual && lhs > c.rhs) return false;
        if (c.sense == Sense::GreaterEqual && lhs < c.rhs) return false;
        if (c.sense == Sense::Equal && lhs != c.rhs) return false;
    }
    return true;
}

}  // namespace detail

/// Optimal value of a bounded LP, or nullopt if infeasible.
inline std::optional<Rational> vertex_enumeration(const LpProblem& lp) {
    const std::size_t n = lp.objective.size();
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (const auto& c : lp.constraints) {
        rows.push_back(c.coefficients);
        rhs.push_back(c.rhs);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> e(n, Rational(0));
        e[j] = 1;
        rows.push_back(e);
        rhs.push_back(0);
    }
    const std::size_t total = rows.size();
    std::optional<Rational> best;
    std::vector<bool> pick(total, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(n, total)), true);
    do {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (std::size_t i = 0; i < total; ++i)
            if (pick[i]) {
                a.push_back(rows[i]);
                b.push_back(rhs[i]);
            }
        auto x = detail::unique_solution(a, b);
        if (!x || !detail::satisfies(lp, *x)) continue;
        Rational v = 0;
        for (std::size_t j = 0; j < n; ++j) v += lp.objective[j] * (*x)[j];
        if (!best || v > *best) best = v;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

/// Membership in the cone generated by all unit downward and redistributive
/// transfers, decided as an LP feasibility problem.
inline bool in_generated_cone(const Transfer& t, const TypeGrid& g) {
    const auto gens = unit_directions(g);
    const std::size_t k = g.size();
    LpProblem lp;
    lp.objective.assign(gens.size(), Rational(0));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c <= r; ++c) {
            LpConstraint row{std::vector<Rational>(gens.size(), Rational(0)), Sense::Equal, t(r, c)};
            for (std::size_t j = 0; j < gens.size(); ++j) row.coefficients[j] = gens[j](r, c);
            lp.constraints.push_back(std::move(row));
        }
    return simplex_solve(lp).status == LpStatus::Optimal;
}

inline Rational inner(const WelfareTable& w, const Transfer& t) {
    Rational s = 0;
    for (std::size_t r = 0; r < t.size(); ++r)
        for (std::size_t c = 0; c < t.size(); ++c) s += w(r, c) * t(r, c);
    return s;
}

}  // namespace oracle
