#pragma once

// Welfare tables w(θ, p), the declarative families that generate them, and
// the classifiers for the redistributive / strictly / strongly
// redistributive classes.

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "segmarket/error.hpp"
#include "segmarket/matrix.hpp"
#include "segmarket/model.hpp"
#include "segmarket/rational.hpp"
#include "segmarket/verdict.hpp"

namespace segmarket {

/// Nondecreasing piecewise-linear u with u(0) = 0. Beyond the last
/// breakpoint the final slope is continued.
class PiecewiseLinear {
public:
    struct Breakpoint {
        Rational x;
        Rational y;
        friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
    };

    PiecewiseLinear() : points_{{0, 0}} {}
    explicit PiecewiseLinear(std::vector<Breakpoint> points) : points_(std::move(points)) {
        if (points_.empty() || points_.front().x != 0 || points_.front().y != 0)
            throw Error(ErrorCode::InvalidTransform, "first breakpoint must be (0, 0)");
        for (std::size_t i = 1; i < points_.size(); ++i) {
            if (points_[i].x <= points_[i - 1].x)
                throw Error(ErrorCode::InvalidTransform, "breakpoints must be strictly increasing in surplus");
            if (points_[i].y < points_[i - 1].y)
                throw Error(ErrorCode::InvalidTransform, "transform must be nondecreasing");
        }
    }

    static PiecewiseLinear identity() { return PiecewiseLinear({{0, 0}, {1, 1}}); }

    const std::vector<Breakpoint>& breakpoints() const noexcept { return points_; }

    Rational operator()(const Rational& x) const {
        if (x < 0) throw Error(ErrorCode::InvalidTransform, "transform evaluated at negative surplus");
        if (points_.size() == 1) return 0;
        std::size_t seg = 1;
        while (seg + 1 < points_.size() && x > points_[seg].x) ++seg;
        const auto& a = points_[seg - 1];
        const auto& b = points_[seg];
        return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
    }

    std::vector<Rational> slopes() const {
        std::vector<Rational> s;
        for (std::size_t i = 1; i < points_.size(); ++i)
            s.push_back((points_[i].y - points_[i - 1].y) / (points_[i].x - points_[i - 1].x));
        return s;
    }

    bool concave() const {
        auto s = slopes();
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i] > s[i - 1]) return false;
        return true;
    }

    /// At least two pieces, slopes strictly decreasing and positive.
    bool strictly_concave() const {
        auto s = slopes();
        if (s.size() < 2 || s.back() <= 0) return false;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i] >= s[i - 1]) return false;
        return true;
    }

    friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;

private:
    std::vector<Breakpoint> points_;
};

struct ParetoWeights {
    std::vector<Rational> lambda;
};
struct ConcaveTransform {
    PiecewiseLinear u;
};
struct Product {
    std::vector<Rational> lambda;
    PiecewiseLinear u;
};
struct ExplicitTable {
    RationalMatrix values;
};

using WelfareSpec = std::variant<ParetoWeights, ConcaveTransform, Product, ExplicitTable>;

class WelfareTable;
Verdict check_redistributive(const RationalMatrix& w, const TypeGrid& grid, bool strict);
Verdict check_strong_inequality(const RationalMatrix& w, const TypeGrid& grid);

class WelfareTable {
public:
    WelfareTable(TypeGrid grid, RationalMatrix values) : grid_(std::move(grid)), values_(std::move(values)) {
        const std::size_t k = grid_.size();
        if (values_.rows() != k || values_.cols() != k)
            throw Error(ErrorCode::DimensionMismatch, "welfare table must be " + std::to_string(k) + "x" +
                                                          std::to_string(k));
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t p = 0; p < k; ++p) {
                if (p > t && values_(t, p) != 0)
                    throw Error(ErrorCode::InvalidTable, "w(" + to_string(grid_[t]) + ", " + to_string(grid_[p]) +
                                                             ") must be zero above the diagonal");
                if (values_(t, p) < 0)
                    throw Error(ErrorCode::InvalidTable, "w(" + to_string(grid_[t]) + ", " + to_string(grid_[p]) +
                                                             ") is negative");
            }
        redistributive_ = check_redistributive(values_, grid_, false).holds;
        strictly_ = check_redistributive(values_, grid_, true).holds;
        strongly_ = strictly_ && check_strong_inequality(values_, grid_).holds;
    }

    const TypeGrid& grid() const noexcept { return grid_; }
    const RationalMatrix& values() const noexcept { return values_; }
    const Rational& operator()(std::size_t t, std::size_t p) const { return values_(t, p); }
    std::size_t size() const noexcept { return grid_.size(); }

    bool redistributive() const noexcept { return redistributive_; }
    bool strictly_redistributive() const noexcept { return strictly_; }
    bool strongly_redistributive() const noexcept { return strongly_; }

private:
    TypeGrid grid_;
    RationalMatrix values_;
    bool redistributive_ = false;
    bool strictly_ = false;
    bool strongly_ = false;
};

namespace detail {

inline std::string cell(const TypeGrid& g, std::size_t t, std::size_t p) {
    return "w(" + to_string(g[t]) + "," + to_string(g[p]) + ")";
}

inline void check_weights(const std::vector<Rational>& lambda, const TypeGrid& grid) {
    if (lambda.size() != grid.size())
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(grid.size()) + " weights, got " +
                                                      std::to_string(lambda.size()));
    for (const auto& l : lambda)
        if (l < 0) throw Error(ErrorCode::NegativeWeight, "Pareto weight " + to_string(l) + " is negative");
}

}  // namespace detail

/// Monotonicity in p plus supermodularity (R) on Ω; strict variants when
/// `strict` is set.
inline Verdict check_redistributive(const RationalMatrix& w, const TypeGrid& grid, bool strict) {
    const std::size_t k = grid.size();
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t p = t + 1; p < k; ++p)
            if (w(t, p) != 0) return {false, detail::cell(grid, t, p) + " is nonzero above the diagonal"};
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t p = 0; p <= t; ++p)
            if (w(t, p) < 0) return {false, detail::cell(grid, t, p) + " is negative"};
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t p = 0; p < t; ++p) {
            const bool ok = strict ? w(t, p) > w(t, p + 1) : w(t, p) >= w(t, p + 1);
            if (!ok)
                return {false, detail::cell(grid, t, p) + (strict ? " <= " : " < ") + detail::cell(grid, t, p + 1)};
        }
    // θ' > θ ≥ p' > p  (indices hi > lo >= pj > pi)
    for (std::size_t lo = 0; lo < k; ++lo)
        for (std::size_t hi = lo + 1; hi < k; ++hi)
            for (std::size_t pj = 1; pj <= lo; ++pj)
                for (std::size_t pi = 0; pi < pj; ++pi) {
                    const Rational low_gain = w(lo, pi) - w(lo, pj);
                    const Rational high_gain = w(hi, pi) - w(hi, pj);
                    const bool ok = strict ? low_gain > high_gain : low_gain >= high_gain;
                    if (!ok)
                        return {false, detail::cell(grid, lo, pi) + "-" + detail::cell(grid, lo, pj) + " = " +
                                           to_string(low_gain) + (strict ? " <= " : " < ") +
                                           detail::cell(grid, hi, pi) + "-" + detail::cell(grid, hi, pj) + " = " +
                                           to_string(high_gain)};
                }
    return {};
}

/// The (SR) inequality over all p < θ_k < θ_ℓ, strict.
inline Verdict check_strong_inequality(const RationalMatrix& w, const TypeGrid& grid) {
    const std::size_t k_max = grid.size();
    for (std::size_t k = 1; k + 1 < k_max; ++k) {
        const Rational factor = grid[k + 1] / (grid[k + 1] - grid[k]);
        for (std::size_t p = 0; p < k; ++p) {
            const Rational gain = (w(k, p) - w(k, k)) - (w(k + 1, p) - w(k + 1, k));
            for (std::size_t l = k + 1; l < k_max; ++l) {
                const Rational loss = factor * (w(l, k) - w(l, l));
                if (!(gain > loss))
                    return {false, "(p, θ_k, θ_l) = (" + to_string(grid[p]) + ", " + to_string(grid[k]) + ", " +
                                       to_string(grid[l]) + "): gain " + to_string(gain) + " <= weighted loss " +
                                       to_string(loss)};
            }
        }
    }
    return {};
}

inline Verdict is_redistributive(const WelfareTable& t) {
    return check_redistributive(t.values(), t.grid(), false);
}

inline Verdict is_strictly_redistributive(const WelfareTable& t) {
    return check_redistributive(t.values(), t.grid(), true);
}

inline Verdict is_strongly_redistributive(const WelfareTable& t) {
    if (auto strict = is_strictly_redistributive(t); !strict)
        throw Error(ErrorCode::NotStrictlyRedistributive, strict.witness);
    return check_strong_inequality(t.values(), t.grid());
}

inline WelfareTable evaluate(const WelfareSpec& spec, const TypeGrid& grid) {
    const std::size_t k = grid.size();
    RationalMatrix w(k, k);
    auto fill = [&](auto&& f) {
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t p = 0; p <= t; ++p) w(t, p) = f(t, p);
    };
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ParetoWeights>) {
                detail::check_weights(s.lambda, grid);
                fill([&](std::size_t t, std::size_t p) { return s.lambda[t] * (grid[t] - grid[p]); });
            } else if constexpr (std::is_same_v<S, ConcaveTransform>) {
                fill([&](std::size_t t, std::size_t p) { return s.u(grid[t] - grid[p]); });
            } else if constexpr (std::is_same_v<S, Product>) {
                detail::check_weights(s.lambda, grid);
                fill([&](std::size_t t, std::size_t p) { return s.lambda[t] * s.u(grid[t] - grid[p]); });
            } else {
                if (s.values.rows() != k || s.values.cols() != k)
                    throw Error(ErrorCode::DimensionMismatch, "explicit table does not match the grid");
                w = s.values;
            }
        },
        spec);
    return WelfareTable(grid, std::move(w));
}

inline WelfareTable utilitarian(const TypeGrid& grid) {
    return evaluate(ParetoWeights{std::vector<Rational>(grid.size(), Rational(1))}, grid);
}

/// Pareto weights decreasing fast enough for the (SR) inequality to hold
/// strictly: λ(θ_K) = 1, then backwards
/// λ_k = λ_{k+1} + 1 + max_{ℓ>k} λ_ℓ · θ_{k+1}/(θ_{k+1}−θ_k) · (θ_ℓ−θ_k)/(θ_k−θ_{k−1}).
inline WelfareSpec sr_witness(const TypeGrid& grid) {
    const std::size_t k_max = grid.size();
    std::vector<Rational> lambda(k_max, Rational(1));
    for (std::size_t k = k_max - 1; k-- > 0;) {
        Rational bump = 0;
        if (k >= 1) {
            const Rational factor = grid[k + 1] / (grid[k + 1] - grid[k]);
            for (std::size_t l = k + 1; l < k_max; ++l)
                bump = std::max(bump, lambda[l] * factor * (grid[l] - grid[k]) / (grid[k] - grid[k - 1]));
        }
        lambda[k] = lambda[k + 1] + 1 + bump;
    }
    return ParetoWeights{std::move(lambda)};
}

/// Σ w(θ, p)·sigma(θ, p).
inline Rational aggregate_welfare(const Segmentation& seg, const WelfareTable& w) {
    if (seg.size() != w.size()) throw Error(ErrorCode::DimensionMismatch, "welfare table and segmentation differ in size");
    Rational total = 0;
    for (std::size_t t = 0; t < seg.size(); ++t)
        for (std::size_t p = 0; p < seg.size(); ++p) total += w(t, p) * seg.mass(t, p);
    return total;
}

/// One support point of a conditional income distribution.
struct IncomeAtom {
    Rational income;
    Rational probability;
};

/// w(θ, p) = E[u(y − p) − u(y − θ) | θ]·1{θ ≥ p} for discrete conditional
/// incomes and concave u.
inline WelfareTable microfounded_welfare(const TypeGrid& grid, const std::vector<std::vector<IncomeAtom>>& incomes,
                                         const PiecewiseLinear& u) {
    const std::size_t k = grid.size();
    if (incomes.size() != k)
        throw Error(ErrorCode::DimensionMismatch, "need one income distribution per type");
    if (!u.concave()) throw Error(ErrorCode::InvalidTransform, "utility for money must be concave");
    for (std::size_t t = 0; t < k; ++t) {
        if (incomes[t].empty()) throw Error(ErrorCode::InvalidDistribution, "empty income distribution");
        Rational total = 0;
        for (const auto& atom : incomes[t]) {
            if (atom.probability <= 0)
                throw Error(ErrorCode::InvalidDistribution, "income probabilities must be positive");
            if (atom.income < grid[t])
                throw Error(ErrorCode::IncomeBelowType, "income " + to_string(atom.income) + " below type " +
                                                            to_string(grid[t]));
            total += atom.probability;
        }
        if (total != 1) throw Error(ErrorCode::InvalidDistribution, "income probabilities sum to " + to_string(total));
    }
    RationalMatrix w(k, k);
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t p = 0; p <= t; ++p) {
            Rational e = 0;
            for (const auto& atom : incomes[t])
                e += atom.probability * (u(atom.income - grid[p]) - u(atom.income - grid[t]));
            w(t, p) = e;
        }
    return WelfareTable(grid, std::move(w));
}

}  // namespace segmarket
