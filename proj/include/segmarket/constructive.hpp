#pragma once

// Closed-form constructions: the greedy redistributive segmentation, the
// two-segment candidate σ*_μ and the rent dichotomy built on them.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>

#include "segmarket/matrix.hpp"
#include "segmarket/model.hpp"
#include "segmarket/rational.hpp"

namespace segmarket {

/// Places types in increasing order into the open segment while its price
/// stays optimal; overflow opens a new segment at the current type.
inline Segmentation greedy_segmentation(const Market& m) {
    const std::size_t k = m.size();
    const auto& g = m.grid();
    RationalMatrix sigma(k, k);
    std::size_t open = 0;
    auto demand = [&](std::size_t q) {
        Rational d = 0;
        for (std::size_t t = q; t < k; ++t) d += sigma(t, open);
        return d;
    };
    for (std::size_t t = 0; t < k; ++t) {
        std::optional<Rational> cap;
        const Rational own = g[open] * demand(open);
        for (std::size_t q = open + 1; q <= t; ++q) {
            Rational r = (own - g[q] * demand(q)) / (g[q] - g[open]);
            if (!cap || r < *cap) cap = r;
        }
        const Rational& remaining = m.mass(t);
        if (!cap || remaining <= *cap) {
            sigma(t, open) = remaining;
            continue;
        }
        sigma(t, open) = *cap;
        open = t;
        sigma(t, open) = remaining - *cap;
    }
    return Segmentation(m, std::move(sigma));
}

struct SigmaStar {
    Segmentation candidate;
    bool feasible;
};

/// Discount segment at θ_1 holding every type below p*_μ and as much of p*_μ
/// as keeps θ_1 optimal there; the residual sits at p*_μ.
inline SigmaStar sigma_star(const Market& m) {
    const std::size_t s = uniform_price_index(m);
    if (s == 0) return {no_segmentation(m), true};
    const std::size_t k = m.size();
    const auto& g = m.grid();
    RationalMatrix sigma(k, k);
    Rational below = 0;
    for (std::size_t t = 0; t < s; ++t) {
        sigma(t, 0) = m.mass(t);
        below += m.mass(t);
    }
    const Rational x = std::min(m.mass(s), g[0] / (g[s] - g[0]) * below);
    sigma(s, 0) = x;
    sigma(s, s) = m.mass(s) - x;
    for (std::size_t t = s + 1; t < k; ++t) sigma(t, s) = m.mass(t);
    Segmentation seg(m, std::move(sigma));
    const bool ok = seg.obedient();
    return {std::move(seg), ok};
}

struct RentAnalysis {
    Segmentation optimal;
    Rational rent;
    bool sigma_star_feasible;
};

inline RentAnalysis rent_analysis(const Market& m) {
    auto star = sigma_star(m);
    if (star.feasible) {
        Rational r = rent(star.candidate);
        return {std::move(star.candidate), std::move(r), true};
    }
    auto greedy = greedy_segmentation(m);
    Rational r = rent(greedy);
    return {std::move(greedy), std::move(r), false};
}

}  // namespace segmarket
