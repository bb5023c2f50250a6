#pragma once

// Markets, segmentations and everything the seller computes on them:
// demand, segment profits, optimal prices, obedience, binding sets, surplus
// and rent. Prices always live on the type grid.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "segmarket/error.hpp"
#include "segmarket/matrix.hpp"
#include "segmarket/rational.hpp"

namespace segmarket {

/// Strictly increasing, positive willingness-to-pay values. Doubles as the
/// price grid.
class TypeGrid {
public:
    TypeGrid() = default;
    explicit TypeGrid(std::vector<Rational> values) : values_(std::move(values)) {
        if (values_.empty()) throw Error(ErrorCode::EmptyGrid, "type grid must hold at least one value");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] <= 0)
                throw Error(ErrorCode::NonPositiveType, "type " + to_string(values_[i]) + " is not positive");
            if (i > 0 && values_[i] <= values_[i - 1])
                throw Error(ErrorCode::NonIncreasingGrid, "grid is not strictly increasing at position " +
                                                              std::to_string(i));
        }
    }

    std::size_t size() const noexcept { return values_.size(); }
    const Rational& operator[](std::size_t i) const { return values_[i]; }
    const std::vector<Rational>& values() const noexcept { return values_; }

    std::optional<std::size_t> find(const Rational& value) const {
        auto it = std::lower_bound(values_.begin(), values_.end(), value);
        if (it == values_.end() || *it != value) return std::nullopt;
        return static_cast<std::size_t>(it - values_.begin());
    }

    std::size_t index_of(const Rational& price) const {
        if (auto i = find(price)) return *i;
        throw Error(ErrorCode::PriceNotOnGrid, "price " + to_string(price) + " is not on the grid");
    }

    friend bool operator==(const TypeGrid&, const TypeGrid&) = default;

private:
    std::vector<Rational> values_;
};

class Market {
public:
    Market() = default;
    Market(TypeGrid grid, std::vector<Rational> mu) : grid_(std::move(grid)), mu_(std::move(mu)) {
        if (mu_.size() != grid_.size())
            throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(grid_.size()) +
                                                          " masses, got " + std::to_string(mu_.size()));
        Rational total = 0;
        for (std::size_t i = 0; i < mu_.size(); ++i) {
            if (mu_[i] <= 0)
                throw Error(ErrorCode::ZeroOrNegativeMass,
                            "type " + to_string(grid_[i]) + " has mass " + to_string(mu_[i]));
            total += mu_[i];
        }
        if (total != 1)
            throw Error(ErrorCode::MassesNotSummingToOne, "masses sum to " + to_string(total));
    }

    const TypeGrid& grid() const noexcept { return grid_; }
    const std::vector<Rational>& mu() const noexcept { return mu_; }
    const Rational& mass(std::size_t i) const { return mu_[i]; }
    const Rational& type(std::size_t i) const { return grid_[i]; }
    std::size_t size() const noexcept { return grid_.size(); }

    friend bool operator==(const Market&, const Market&) = default;

private:
    TypeGrid grid_;
    std::vector<Rational> mu_;
};

inline Market validate_market(std::vector<Rational> raw_grid, std::vector<Rational> raw_masses) {
    return Market(TypeGrid(std::move(raw_grid)), std::move(raw_masses));
}

/// One column of a segmentation: the buyers recommended a given price.
struct SegmentView {
    std::size_t index;
    Rational price;
    std::vector<Rational> masses;
    Rational total;
};

struct ObedienceViolation {
    Rational price;      // recommended price p
    Rational deviation;  // strictly more profitable q
    Rational deficit;    // q·D(q) − p·D(p) > 0

    friend bool operator==(const ObedienceViolation&, const ObedienceViolation&) = default;
};

/// sigma(θ, p): rows are types, columns recommended prices. Construction
/// enforces nonnegativity and market consistency; obedience and efficiency
/// are recorded as flags.
class Segmentation {
public:
    Segmentation(Market market, RationalMatrix sigma) : market_(std::move(market)), sigma_(std::move(sigma)) {
        const std::size_t k = market_.size();
        if (sigma_.rows() != k || sigma_.cols() != k)
            throw Error(ErrorCode::DimensionMismatch, "segmentation must be " + std::to_string(k) + "x" +
                                                          std::to_string(k));
        for (std::size_t t = 0; t < k; ++t) {
            Rational row = 0;
            for (std::size_t p = 0; p < k; ++p) {
                if (sigma_(t, p) < 0)
                    throw Error(ErrorCode::NegativeMass, "negative mass at (" + to_string(market_.type(t)) +
                                                             ", " + to_string(market_.type(p)) + ")");
                row += sigma_(t, p);
            }
            if (row != market_.mass(t))
                throw Error(ErrorCode::RowSumMismatch, "type " + to_string(market_.type(t)) + " sums to " +
                                                           to_string(row) + ", market mass is " +
                                                           to_string(market_.mass(t)));
        }
        efficient_ = true;
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t p = t + 1; p < k; ++p)
                if (sigma_(t, p) != 0) efficient_ = false;
        obedient_ = true;
        for (std::size_t p = 0; p < k && obedient_; ++p)
            for (std::size_t q = 0; q < k; ++q)
                if (profit(p, q) > profit(p, p)) {
                    obedient_ = false;
                    break;
                }
    }

    const Market& market() const noexcept { return market_; }
    const TypeGrid& grid() const noexcept { return market_.grid(); }
    const RationalMatrix& sigma() const noexcept { return sigma_; }
    std::size_t size() const noexcept { return market_.size(); }
    const Rational& mass(std::size_t type, std::size_t price) const { return sigma_(type, price); }

    bool obedient() const noexcept { return obedient_; }
    bool efficient() const noexcept { return efficient_; }

    /// Σ_{θ ≥ q} sigma(θ, p): buyers in segment p who purchase at price q.
    Rational demand(std::size_t p, std::size_t q) const {
        Rational d = 0;
        for (std::size_t t = q; t < size(); ++t) d += sigma_(t, p);
        return d;
    }

    /// Profit in segment p from charging q.
    Rational profit(std::size_t p, std::size_t q) const { return grid()[q] * demand(p, q); }

    Rational column_total(std::size_t p) const { return demand(p, 0); }
    bool segment_empty(std::size_t p) const { return column_total(p) == 0; }

    /// Highest type index present in segment p; nullopt for empty segments.
    std::optional<std::size_t> max_support(std::size_t p) const {
        for (std::size_t t = size(); t-- > 0;)
            if (sigma_(t, p) > 0) return t;
        return std::nullopt;
    }

    /// Indices of nonempty segments, ascending.
    std::vector<std::size_t> price_support() const {
        std::vector<std::size_t> s;
        for (std::size_t p = 0; p < size(); ++p)
            if (!segment_empty(p)) s.push_back(p);
        return s;
    }

    SegmentView segment(std::size_t p) const {
        SegmentView v{p, grid()[p], {}, 0};
        v.masses.reserve(size());
        for (std::size_t t = 0; t < size(); ++t) {
            v.masses.push_back(sigma_(t, p));
            v.total += sigma_(t, p);
        }
        return v;
    }

    friend bool operator==(const Segmentation& a, const Segmentation& b) {
        return a.market_ == b.market_ && a.sigma_ == b.sigma_;
    }

private:
    Market market_;
    RationalMatrix sigma_;
    bool obedient_ = false;
    bool efficient_ = false;
};

// ---------------------------------------------------------------------------
// Seller-side computations.

/// Lowest maximizer of p·Σ_{θ≥p} μ(θ).
inline Rational uniform_price(const Market& m) {
    std::size_t best = 0;
    Rational best_profit = -1;
    Rational tail = 1;  // Σ_{θ ≥ θ_i} μ(θ)
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Rational value = m.type(i) * tail;
        if (value > best_profit) {
            best_profit = value;
            best = i;
        }
        tail -= m.mass(i);
    }
    return m.type(best);
}

inline std::size_t uniform_price_index(const Market& m) { return m.grid().index_of(uniform_price(m)); }

inline Rational uniform_profit(const Market& m) {
    const std::size_t s = uniform_price_index(m);
    Rational tail = 0;
    for (std::size_t i = s; i < m.size(); ++i) tail += m.mass(i);
    return m.type(s) * tail;
}

/// The unsegmented market: every buyer in the segment of the uniform price.
inline Segmentation no_segmentation(const Market& m) {
    RationalMatrix sigma(m.size(), m.size());
    const std::size_t s = uniform_price_index(m);
    for (std::size_t t = 0; t < m.size(); ++t) sigma(t, s) = m.mass(t);
    return Segmentation(m, std::move(sigma));
}

inline std::vector<Rational> price_marginal(const Segmentation& seg) {
    std::vector<Rational> marginal;
    marginal.reserve(seg.size());
    for (std::size_t p = 0; p < seg.size(); ++p) marginal.push_back(seg.column_total(p));
    return marginal;
}

inline Rational segment_profit(const Segmentation& seg, const Rational& p, const Rational& q) {
    return seg.profit(seg.grid().index_of(p), seg.grid().index_of(q));
}

/// Full argmax set over q of the profit in segment p, ascending.
inline std::vector<Rational> optimal_prices(const Segmentation& seg, const Rational& p) {
    const std::size_t pi = seg.grid().index_of(p);
    if (seg.segment_empty(pi)) throw Error(ErrorCode::EmptySegment, "segment " + to_string(p) + " is empty");
    Rational best = 0;
    for (std::size_t q = 0; q < seg.size(); ++q) best = std::max(best, seg.profit(pi, q));
    std::vector<Rational> out;
    for (std::size_t q = 0; q < seg.size(); ++q)
        if (seg.profit(pi, q) == best) out.push_back(seg.grid()[q]);
    return out;
}

inline std::vector<ObedienceViolation> check_obedience(const Segmentation& seg) {
    std::vector<ObedienceViolation> out;
    for (std::size_t p = 0; p < seg.size(); ++p) {
        const Rational own = seg.profit(p, p);
        for (std::size_t q = 0; q < seg.size(); ++q) {
            const Rational other = seg.profit(p, q);
            if (other > own) out.push_back({seg.grid()[p], seg.grid()[q], other - own});
        }
    }
    return out;
}

/// Indices q with Π_{p,q}(σ) = 0.
inline std::vector<std::size_t> binding_indices(const Segmentation& seg, std::size_t p) {
    std::vector<std::size_t> out;
    const Rational own = seg.profit(p, p);
    for (std::size_t q = 0; q < seg.size(); ++q)
        if (seg.profit(p, q) == own) out.push_back(q);
    return out;
}

/// Prices tied with p in segment p.
inline std::vector<Rational> binding_set(const Segmentation& seg, const Rational& p) {
    const std::size_t pi = seg.grid().index_of(p);
    if (seg.segment_empty(pi)) throw Error(ErrorCode::EmptySegment, "segment " + to_string(p) + " is empty");
    std::vector<Rational> out;
    for (std::size_t q : binding_indices(seg, pi)) out.push_back(seg.grid()[q]);
    return out;
}

inline Rational total_profit(const Segmentation& seg) {
    Rational total = 0;
    for (std::size_t p = 0; p < seg.size(); ++p) total += seg.profit(p, p);
    return total;
}

/// Σ (θ − p)·sigma(θ, p) over buyers who purchase (θ ≥ p).
inline Rational consumer_surplus(const Segmentation& seg) {
    Rational cs = 0;
    for (std::size_t t = 0; t < seg.size(); ++t)
        for (std::size_t p = 0; p <= t; ++p) cs += (seg.grid()[t] - seg.grid()[p]) * seg.mass(t, p);
    return cs;
}

/// Seller profit in excess of the uniform-pricing profit.
inline Rational rent(const Segmentation& seg) { return total_profit(seg) - uniform_profit(seg.market()); }

/// Σ θ·μ(θ): the surplus available when every buyer trades.
inline Rational total_surplus(const Market& m) {
    Rational s = 0;
    for (std::size_t t = 0; t < m.size(); ++t) s += m.type(t) * m.mass(t);
    return s;
}

}  // namespace segmarket
