#pragma once

// Buyer-mass transfers on efficient segmentations: the elementary basis,
// exact decomposition, cone membership, the redistributive order and
// feasibility ratio tests.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "segmarket/error.hpp"
#include "segmarket/matrix.hpp"
#include "segmarket/model.hpp"
#include "segmarket/rational.hpp"

namespace segmarket {

/// A K×K perturbation supported on θ ≥ p with zero row sums.
class Transfer {
public:
    explicit Transfer(std::size_t k) : delta_(k, k) {}
    explicit Transfer(RationalMatrix delta) : delta_(std::move(delta)) {
        if (!delta_.square()) throw Error(ErrorCode::DimensionMismatch, "transfer must be square");
        const std::size_t k = delta_.rows();
        for (std::size_t t = 0; t < k; ++t) {
            Rational row = 0;
            for (std::size_t p = 0; p < k; ++p) {
                if (p > t && delta_(t, p) != 0)
                    throw Error(ErrorCode::SupportOutsideOmega, "transfer has mass at row " + std::to_string(t + 1) +
                                                                    ", column " + std::to_string(p + 1));
                row += delta_(t, p);
            }
            if (row != 0)
                throw Error(ErrorCode::NotATransfer, "row " + std::to_string(t + 1) + " sums to " + to_string(row));
        }
    }

    std::size_t size() const noexcept { return delta_.rows(); }
    const RationalMatrix& delta() const noexcept { return delta_; }
    const Rational& operator()(std::size_t t, std::size_t p) const { return delta_(t, p); }
    bool zero() const { return is_zero(delta_); }

    friend Transfer operator+(const Transfer& a, const Transfer& b) { return Transfer(a.delta_ + b.delta_); }
    friend Transfer operator-(const Transfer& a, const Transfer& b) { return Transfer(a.delta_ - b.delta_); }
    friend Transfer operator*(const Rational& s, const Transfer& t) { return Transfer(s * t.delta_); }
    friend Transfer operator-(const Transfer& t) { return Transfer(Rational(-1) * t.delta_); }
    friend bool operator==(const Transfer&, const Transfer&) = default;

private:
    RationalMatrix delta_;
};

/// Coefficients over the elementary basis. beta(k, i) uses 1-based indices
/// with 1 ≤ i < k ≤ K−1.
struct ConeDecomposition {
    std::vector<Rational> alpha;
    RationalMatrix beta;

    const Rational& beta_at(std::size_t k, std::size_t i) const { return beta(k - 1, i - 1); }

    bool nonnegative() const {
        for (const auto& a : alpha)
            if (a < 0) return false;
        for (const auto& b : beta.data())
            if (b < 0) return false;
        return true;
    }
};

/// d_i (1-based): unit mass of θ_K from p_{i+1} to p_i.
inline Transfer elementary_downward(std::size_t k, std::size_t i) {
    RationalMatrix d(k, k);
    d(k - 1, i - 1) = 1;
    d(k - 1, i) = -1;
    return Transfer(std::move(d));
}

/// r_{k,i} (1-based): θ_k to p_i and θ_{k+1} to p_{i+1}, from the opposite cells.
inline Transfer elementary_redistributive(std::size_t size, std::size_t k, std::size_t i) {
    RationalMatrix r(size, size);
    r(k - 1, i - 1) = 1;
    r(k, i) = 1;
    r(k - 1, i) = -1;
    r(k, i - 1) = -1;
    return Transfer(std::move(r));
}

/// d_1, …, d_{K−1}, then r_{k,i} for k = 2…K−1 and i = 1…k−1.
inline std::vector<Transfer> elementary_basis(std::size_t k) {
    if (k < 2) throw Error(ErrorCode::DimensionMismatch, "elementary basis needs at least two types");
    std::vector<Transfer> basis;
    for (std::size_t i = 1; i < k; ++i) basis.push_back(elementary_downward(k, i));
    for (std::size_t kk = 2; kk < k; ++kk)
        for (std::size_t i = 1; i < kk; ++i) basis.push_back(elementary_redistributive(k, kk, i));
    return basis;
}

inline Transfer reconstruct(const ConeDecomposition& c, std::size_t k) {
    auto basis = elementary_basis(k);
    RationalMatrix sum(k, k);
    std::size_t n = 0;
    for (std::size_t i = 1; i < k; ++i) sum = sum + c.alpha[i - 1] * basis[n++].delta();
    for (std::size_t kk = 2; kk < k; ++kk)
        for (std::size_t i = 1; i < kk; ++i) sum = sum + c.beta_at(kk, i) * basis[n++].delta();
    return Transfer(std::move(sum));
}

inline ConeDecomposition decompose(const Transfer& t) {
    const std::size_t k = t.size();
    ConeDecomposition out{std::vector<Rational>(k > 0 ? k - 1 : 0), RationalMatrix(k > 1 ? k - 1 : 0, k > 1 ? k - 1 : 0)};
    if (k < 2) return out;
    auto basis = elementary_basis(k);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c <= r; ++c) cells.emplace_back(r, c);
    RationalMatrix a(cells.size(), basis.size());
    std::vector<Rational> b(cells.size());
    for (std::size_t e = 0; e < cells.size(); ++e) {
        for (std::size_t j = 0; j < basis.size(); ++j) a(e, j) = basis[j](cells[e].first, cells[e].second);
        b[e] = t(cells[e].first, cells[e].second);
    }
    auto x = solve_linear_system(std::move(a), std::move(b));
    if (!x) throw Error(ErrorCode::SolverFailure, "transfer is not spanned by the elementary basis");
    std::size_t n = 0;
    for (std::size_t i = 1; i < k; ++i) out.alpha[i - 1] = (*x)[n++];
    for (std::size_t kk = 2; kk < k; ++kk)
        for (std::size_t i = 1; i < kk; ++i) out.beta(kk - 1, i - 1) = (*x)[n++];
    return out;
}

inline bool cone_membership(const Transfer& t) { return decompose(t).nonnegative(); }

enum class Order { Equal, MoreRedistributive, LessRedistributive, Incomparable };

inline std::string_view to_string(Order o) {
    switch (o) {
    case Order::Equal: return "Equal";
    case Order::MoreRedistributive: return "MoreRedistributive";
    case Order::LessRedistributive: return "LessRedistributive";
    case Order::Incomparable: return "Incomparable";
    }
    return "Unknown";
}

namespace detail {

inline void require_same_efficient(const Segmentation& a, const Segmentation& b) {
    if (!(a.market() == b.market())) throw Error(ErrorCode::DifferentMarkets, "segmentations differ in their market");
    if (!a.efficient() || !b.efficient())
        throw Error(ErrorCode::NotEfficient, "the redistributive order compares efficient segmentations");
}

}  // namespace detail

/// The transfer taking b to a.
inline Transfer difference(const Segmentation& a, const Segmentation& b) {
    detail::require_same_efficient(a, b);
    return Transfer(a.sigma() - b.sigma());
}

inline Order compare_redistributive(const Segmentation& a, const Segmentation& b) {
    detail::require_same_efficient(a, b);
    if (a.sigma() == b.sigma()) return Order::Equal;
    const Transfer t(a.sigma() - b.sigma());
    const auto c = decompose(t);
    if (c.nonnegative()) return Order::MoreRedistributive;
    if (decompose(-t).nonnegative()) return Order::LessRedistributive;
    return Order::Incomparable;
}

namespace detail {

inline void require_nonnegative(const Rational& amount) {
    if (amount < 0) throw Error(ErrorCode::NegativeAmount, "transfer amount " + to_string(amount) + " is negative");
}

}  // namespace detail

/// Mass δ of type θ̃ from segment p_from to the lower segment p_to.
inline Transfer make_downward(const TypeGrid& grid, const Rational& type, const Rational& p_from, const Rational& p_to,
                              const Rational& delta) {
    const std::size_t t = grid.index_of(type), from = grid.index_of(p_from), to = grid.index_of(p_to);
    detail::require_nonnegative(delta);
    if (!(to < from)) throw Error(ErrorCode::BadOrdering, "downward transfer needs p_to < p_from");
    if (from > t) throw Error(ErrorCode::PatternViolatesOmega, "origin price exceeds the moved type");
    RationalMatrix d(grid.size(), grid.size());
    d(t, to) = delta;
    d(t, from) = -delta;
    return Transfer(std::move(d));
}

/// Swaps ε of θ' (into p_low) against ε of θ'' (into p_high).
inline Transfer make_redistributive(const TypeGrid& grid, const Rational& low_type, const Rational& high_type,
                                    const Rational& p_low, const Rational& p_high, const Rational& epsilon) {
    const std::size_t lo = grid.index_of(low_type), hi = grid.index_of(high_type);
    const std::size_t pl = grid.index_of(p_low), ph = grid.index_of(p_high);
    detail::require_nonnegative(epsilon);
    if (!(lo < hi)) throw Error(ErrorCode::BadOrdering, "redistributive transfer needs θ' < θ''");
    if (!(pl < ph)) throw Error(ErrorCode::BadOrdering, "redistributive transfer needs p_low < p_high");
    if (ph > lo) throw Error(ErrorCode::PatternViolatesOmega, "p_high exceeds the low type");
    RationalMatrix r(grid.size(), grid.size());
    r(lo, pl) = epsilon;
    r(hi, ph) = epsilon;
    r(lo, ph) = -epsilon;
    r(hi, pl) = -epsilon;
    return Transfer(std::move(r));
}

/// θ_{k+1}/(θ_{k+1} − θ_k): upward mass per unit of swap.
inline Rational compensation_factor(const TypeGrid& grid, std::size_t k) {
    return grid[k + 1] / (grid[k + 1] - grid[k]);
}

/// Redistributive swap of ε between θ_k (into segment p) and θ_{k+1} (into
/// segment θ_k), plus an upward move of the compensating mass of the top
/// type θ_ℓ of segment θ_k to its own price.
inline Transfer make_compensated(const Segmentation& seg, const Rational& theta_k, const Rational& p,
                                 const Rational& theta_l, const Rational& epsilon) {
    const auto& grid = seg.grid();
    const std::size_t k = grid.index_of(theta_k), pi = grid.index_of(p), l = grid.index_of(theta_l);
    detail::require_nonnegative(epsilon);
    if (!(pi < k)) throw Error(ErrorCode::BadOrdering, "compensated transfer needs p < θ_k");
    if (k + 1 >= grid.size()) throw Error(ErrorCode::BadOrdering, "θ_k must not be the highest type");
    if (seg.segment_empty(pi)) throw Error(ErrorCode::EmptySegment, "segment " + to_string(p) + " is empty");
    if (seg.segment_empty(k)) throw Error(ErrorCode::EmptySegment, "segment " + to_string(theta_k) + " is empty");
    const auto top = seg.max_support(k);
    if (!top || *top != l || l <= k)
        throw Error(ErrorCode::NotTopType, to_string(theta_l) + " is not the top type above " + to_string(theta_k) +
                                               " in segment " + to_string(theta_k));
    const Rational up = compensation_factor(grid, k) * epsilon;
    RationalMatrix d(grid.size(), grid.size());
    d(k, pi) += epsilon;
    d(k, k) -= epsilon;
    d(k + 1, pi) -= epsilon;
    d(k + 1, k) += epsilon;
    d(l, k) -= up;
    d(l, l) += up;
    for (std::size_t t = 0; t < grid.size(); ++t)
        for (std::size_t c = 0; c < grid.size(); ++c)
            if (seg.mass(t, c) + d(t, c) < 0)
                throw Error(ErrorCode::InsufficientMass, "not enough mass of type " + to_string(grid[t]) +
                                                             " in segment " + to_string(grid[c]));
    return Transfer(std::move(d));
}

inline Segmentation apply(const Segmentation& seg, const Transfer& t) {
    if (t.size() != seg.size()) throw Error(ErrorCode::DimensionMismatch, "transfer and segmentation differ in size");
    return Segmentation(seg.market(), seg.sigma() + t.delta());
}

namespace detail {

/// Π_{p,q} as a linear functional of a mass matrix.
inline Rational obedience_slack(const TypeGrid& grid, const RationalMatrix& m, std::size_t p, std::size_t q) {
    Rational dp = 0, dq = 0;
    for (std::size_t t = p; t < grid.size(); ++t) dp += m(t, p);
    for (std::size_t t = q; t < grid.size(); ++t) dq += m(t, p);
    return grid[p] * dp - grid[q] * dq;
}

}  // namespace detail

/// sup{ε ≥ 0 : seg + ε·direction is obedient and nonnegative}. Returns
/// nullopt when no constraint ever binds.
inline std::optional<Rational> max_feasible_mass_unbounded(const Segmentation& seg, const Transfer& direction) {
    if (direction.size() != seg.size())
        throw Error(ErrorCode::DimensionMismatch, "direction and segmentation differ in size");
    if (direction.zero()) throw Error(ErrorCode::InvalidDirection, "direction is zero");
    if (!seg.efficient()) throw Error(ErrorCode::NotEfficient, "ratio test needs an efficient segmentation");
    if (!seg.obedient()) throw Error(ErrorCode::NotObedient, "ratio test needs an obedient segmentation");
    std::optional<Rational> best;
    auto bound = [&](const Rational& level, const Rational& rate) {
        if (rate >= 0) return;
        Rational r = level / -rate;
        if (!best || r < *best) best = r;
    };
    const std::size_t k = seg.size();
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t p = 0; p < k; ++p) bound(seg.mass(t, p), direction(t, p));
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q)
            bound(detail::obedience_slack(seg.grid(), seg.sigma(), p, q),
                  detail::obedience_slack(seg.grid(), direction.delta(), p, q));
    return best;
}

/// Bounded variant: every nonzero transfer removes mass somewhere, so the
/// nonnegativity constraints always bind.
inline Rational max_feasible_mass(const Segmentation& seg, const Transfer& direction) {
    auto r = max_feasible_mass_unbounded(seg, direction);
    if (!r) throw Error(ErrorCode::InvalidDirection, "direction never binds");
    return *r;
}

/// Several unit directions moved together by the same ε.
inline Rational max_feasible_mass_lockstep(const Segmentation& seg, const std::vector<Transfer>& directions) {
    if (directions.empty()) throw Error(ErrorCode::InvalidDirection, "no directions given");
    Transfer sum(seg.size());
    for (const auto& d : directions) sum = sum + d;
    return max_feasible_mass(seg, sum);
}

/// Every unit downward and redistributive direction on the grid.
inline std::vector<Transfer> unit_directions(const TypeGrid& grid) {
    std::vector<Transfer> out;
    const std::size_t k = grid.size();
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t from = 1; from <= t; ++from)
            for (std::size_t to = 0; to < from; ++to) out.push_back(make_downward(grid, grid[t], grid[from], grid[to], 1));
    for (std::size_t lo = 0; lo < k; ++lo)
        for (std::size_t hi = lo + 1; hi < k; ++hi)
            for (std::size_t ph = 1; ph <= lo; ++ph)
                for (std::size_t pl = 0; pl < ph; ++pl)
                    out.push_back(make_redistributive(grid, grid[lo], grid[hi], grid[pl], grid[ph], 1));
    return out;
}

}  // namespace segmarket
