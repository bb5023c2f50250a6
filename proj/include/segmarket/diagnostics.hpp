#pragma once

// Structural certificates on segmentations.

#include <cstddef>
#include <string>
#include <vector>

#include "segmarket/error.hpp"
#include "segmarket/model.hpp"
#include "segmarket/transfers.hpp"
#include "segmarket/verdict.hpp"

namespace segmarket {

inline bool is_efficient(const Segmentation& seg) { return seg.efficient(); }

namespace detail {

inline void require_efficient(const Segmentation& seg) {
    if (!seg.efficient()) throw Error(ErrorCode::NotEfficient, "segmentation places buyers above their type");
}

inline void require_obedient(const Segmentation& seg) {
    if (!seg.obedient()) throw Error(ErrorCode::NotObedient, "segmentation violates obedience");
}

}  // namespace detail

/// For nonempty segments p < p′, the top type of p is at most the top type of p′.
inline Verdict is_weakly_monotone(const Segmentation& seg) {
    detail::require_efficient(seg);
    const auto& g = seg.grid();
    const auto support = seg.price_support();
    for (std::size_t a = 0; a < support.size(); ++a)
        for (std::size_t b = a + 1; b < support.size(); ++b) {
            const std::size_t top_a = *seg.max_support(support[a]);
            const std::size_t top_b = *seg.max_support(support[b]);
            if (top_a > top_b)
                return Verdict::fail("segment " + to_string(g[support[a]]) + " reaches type " + to_string(g[top_a]) +
                                     " but segment " + to_string(g[support[b]]) + " only reaches " +
                                     to_string(g[top_b]));
        }
    return {};
}

/// For nonempty segments p < p′, the top type of p is at most p′.
inline Verdict is_strongly_monotone(const Segmentation& seg) {
    detail::require_efficient(seg);
    const auto& g = seg.grid();
    const auto support = seg.price_support();
    for (std::size_t a = 0; a < support.size(); ++a)
        for (std::size_t b = a + 1; b < support.size(); ++b) {
            const std::size_t top_a = *seg.max_support(support[a]);
            if (top_a > support[b])
                return Verdict::fail("segment " + to_string(g[support[a]]) + " holds type " + to_string(g[top_a]) +
                                     " above the higher price " + to_string(g[support[b]]));
        }
    return {};
}

/// (a) every nonempty segment below the highest has a binding price above its
/// own; (b) a type θ found in segment p is a binding price of every nonempty
/// segment p′ with p < p′ ≤ θ.
inline Verdict is_saturated(const Segmentation& seg) {
    detail::require_efficient(seg);
    detail::require_obedient(seg);
    const auto& g = seg.grid();
    const auto support = seg.price_support();
    if (support.empty()) return {};
    const std::size_t highest = support.back();
    std::vector<std::vector<bool>> binds(seg.size(), std::vector<bool>(seg.size(), false));
    for (std::size_t p : support)
        for (std::size_t q : binding_indices(seg, p)) binds[p][q] = true;

    for (std::size_t p : support) {
        if (p == highest) continue;
        bool found = false;
        for (std::size_t q = p + 1; q < seg.size() && !found; ++q) found = binds[p][q];
        if (!found)
            return Verdict::fail("(a): segment " + to_string(g[p]) + " has no binding price above " + to_string(g[p]));
    }
    for (std::size_t p : support)
        for (std::size_t t = p; t < seg.size(); ++t) {
            if (seg.mass(t, p) == 0) continue;
            for (std::size_t pp : support) {
                if (pp <= p || pp > t) continue;
                if (!binds[pp][t])
                    return Verdict::fail("(b): type " + to_string(g[t]) + " sits in segment " + to_string(g[p]) +
                                         " but " + to_string(g[t]) + " is not binding in segment " + to_string(g[pp]));
            }
        }
    return {};
}

/// True when no unit downward or redistributive direction admits a positive step.
inline bool no_feasible_elementary_transfer(const Segmentation& seg) {
    detail::require_efficient(seg);
    detail::require_obedient(seg);
    for (const auto& d : unit_directions(seg.grid()))
        if (max_feasible_mass(seg, d) > 0) return false;
    return true;
}

}  // namespace segmarket
