#pragma once

// Exact two-phase simplex over rationals (Bland's rule) and the LPs built on
// it: the designer problem, consumer-surplus maximization and profit
// maximization under a fixed price marginal.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "segmarket/error.hpp"
#include "segmarket/matrix.hpp"
#include "segmarket/model.hpp"
#include "segmarket/rational.hpp"
#include "segmarket/welfare.hpp"

namespace segmarket {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct LpConstraint {
    std::vector<Rational> coefficients;
    Sense sense;
    Rational rhs;
};

/// maximize objective·x subject to the constraints and x ≥ 0.
struct LpProblem {
    std::vector<Rational> objective;
    std::vector<LpConstraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline std::string_view to_string(LpStatus s) {
    switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    }
    return "Unknown";
}

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> point;
    Rational value;
    std::vector<std::size_t> basis;  // basic structural variables, ascending
};

namespace detail {

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : t_(rows, cols + 1), basis_(rows), active_(cols, true) {}

    Rational& at(std::size_t r, std::size_t c) { return t_(r, c); }
    const Rational& at(std::size_t r, std::size_t c) const { return t_(r, c); }
    Rational& rhs(std::size_t r) { return t_(r, cols()); }
    std::size_t rows() const { return basis_.size(); }
    std::size_t cols() const { return active_.size(); }
    std::vector<std::size_t>& basis() { return basis_; }
    void deactivate(std::size_t c) { active_[c] = false; }

    void pivot(std::size_t r, std::size_t c) {
        const std::size_t width = cols() + 1;
        const Rational inv = 1 / at(r, c);
        for (std::size_t j = 0; j < width; ++j)
            if (at(r, j) != 0) at(r, j) *= inv;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r || at(i, c) == 0) continue;
            const Rational f = at(i, c);
            for (std::size_t j = 0; j < width; ++j)
                if (at(r, j) != 0) at(i, j) -= f * at(r, j);
        }
        basis_[r] = c;
    }

    void drop_row(std::size_t r) {
        RationalMatrix next(rows() - 1, cols() + 1);
        for (std::size_t i = 0, o = 0; i < rows(); ++i) {
            if (i == r) continue;
            for (std::size_t j = 0; j <= cols(); ++j) next(o, j) = at(i, j);
            ++o;
        }
        t_ = std::move(next);
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }

    /// Maximizes cost·x from the current basis. Returns false if unbounded.
    bool optimize(const std::vector<Rational>& cost) {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < cols() && !enter; ++j) {
                if (!active_[j]) continue;
                Rational reduced = cost[j];
                for (std::size_t i = 0; i < rows(); ++i)
                    if (at(i, j) != 0) reduced -= cost[basis_[i]] * at(i, j);
                if (reduced > 0) enter = j;
            }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (at(i, *enter) <= 0) continue;
                Rational ratio = rhs(i) / at(i, *enter);
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
        }
    }

    Rational value(const std::vector<Rational>& cost) {
        Rational v = 0;
        for (std::size_t i = 0; i < rows(); ++i) v += cost[basis_[i]] * rhs(i);
        return v;
    }

private:
    RationalMatrix t_;
    std::vector<std::size_t> basis_;
    std::vector<bool> active_;
};

}  // namespace detail

inline LpSolution simplex_solve(const LpProblem& problem) {
    const std::size_t n = problem.objective.size();
    const std::size_t m = problem.constraints.size();
    for (const auto& c : problem.constraints)
        if (c.coefficients.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "constraint width differs from the objective");

    // Normalize to rhs ≥ 0, preferring ≤ for zero right-hand sides.
    std::vector<LpConstraint> rows = problem.constraints;
    for (auto& r : rows) {
        const bool flip = r.rhs < 0 || (r.rhs == 0 && r.sense == Sense::GreaterEqual);
        if (!flip) continue;
        for (auto& a : r.coefficients) a = -a;
        r.rhs = -r.rhs;
        if (r.sense == Sense::LessEqual) r.sense = Sense::GreaterEqual;
        else if (r.sense == Sense::GreaterEqual) r.sense = Sense::LessEqual;
    }
    std::size_t slacks = 0, artificials = 0;
    for (const auto& r : rows) {
        if (r.sense != Sense::Equal) ++slacks;
        if (r.sense != Sense::LessEqual) ++artificials;
    }
    const std::size_t first_art = n + slacks;
    detail::Tableau tab(m, first_art + artificials);
    std::size_t next_slack = n, next_art = first_art;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = rows[i].coefficients[j];
        tab.rhs(i) = rows[i].rhs;
        switch (rows[i].sense) {
        case Sense::LessEqual:
            tab.at(i, next_slack) = 1;
            tab.basis()[i] = next_slack++;
            break;
        case Sense::GreaterEqual:
            tab.at(i, next_slack++) = -1;
            tab.at(i, next_art) = 1;
            tab.basis()[i] = next_art++;
            break;
        case Sense::Equal:
            tab.at(i, next_art) = 1;
            tab.basis()[i] = next_art++;
            break;
        }
    }

    LpSolution out;
    if (artificials > 0) {
        std::vector<Rational> phase1(tab.cols(), Rational(0));
        for (std::size_t j = first_art; j < tab.cols(); ++j) phase1[j] = -1;
        tab.optimize(phase1);
        if (tab.value(phase1) < 0) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        for (std::size_t i = tab.rows(); i-- > 0;) {
            if (tab.basis()[i] < first_art) continue;
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < first_art && !col; ++j)
                if (tab.at(i, j) != 0) col = j;
            if (col) tab.pivot(i, *col);
            else tab.drop_row(i);
        }
        for (std::size_t j = first_art; j < tab.cols(); ++j) tab.deactivate(j);
    }

    std::vector<Rational> cost(tab.cols(), Rational(0));
    for (std::size_t j = 0; j < n; ++j) cost[j] = problem.objective[j];
    if (!tab.optimize(cost)) {
        out.status = LpStatus::Unbounded;
        return out;
    }
    out.status = LpStatus::Optimal;
    out.point.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.rows(); ++i)
        if (tab.basis()[i] < n) {
            out.point[tab.basis()[i]] = tab.rhs(i);
            out.basis.push_back(tab.basis()[i]);
        }
    std::sort(out.basis.begin(), out.basis.end());
    out.value = 0;
    for (std::size_t j = 0; j < n; ++j) out.value += problem.objective[j] * out.point[j];
    return out;
}

// ---------------------------------------------------------------------------
// Segmentation LPs. Variables are cells (θ, p) in row-major order; the
// restricted form keeps only θ ≥ p.

namespace detail {

struct CellIndex {
    std::size_t k;
    bool restricted;
    std::vector<std::pair<std::size_t, std::size_t>> cells;

    CellIndex(std::size_t size, bool omega_only) : k(size), restricted(omega_only) {
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t p = 0; p < k; ++p)
                if (!omega_only || p <= t) cells.emplace_back(t, p);
    }
    std::size_t size() const { return cells.size(); }
};

inline void add_market_rows(LpProblem& lp, const CellIndex& idx, const Market& m) {
    for (std::size_t t = 0; t < m.size(); ++t) {
        LpConstraint c{std::vector<Rational>(idx.size(), Rational(0)), Sense::Equal, m.mass(t)};
        for (std::size_t v = 0; v < idx.size(); ++v)
            if (idx.cells[v].first == t) c.coefficients[v] = 1;
        lp.constraints.push_back(std::move(c));
    }
}

/// Π_{p,q} ≥ 0 for all K² ordered pairs.
inline void add_obedience_rows(LpProblem& lp, const CellIndex& idx, const TypeGrid& g) {
    for (std::size_t p = 0; p < g.size(); ++p)
        for (std::size_t q = 0; q < g.size(); ++q) {
            LpConstraint c{std::vector<Rational>(idx.size(), Rational(0)), Sense::GreaterEqual, 0};
            for (std::size_t v = 0; v < idx.size(); ++v) {
                const auto [t, col] = idx.cells[v];
                if (col != p) continue;
                Rational a = 0;
                if (t >= p) a += g[p];
                if (t >= q) a -= g[q];
                c.coefficients[v] = a;
            }
            lp.constraints.push_back(std::move(c));
        }
}

inline Segmentation to_segmentation(const Market& m, const CellIndex& idx, const std::vector<Rational>& x) {
    RationalMatrix sigma(m.size(), m.size());
    for (std::size_t v = 0; v < idx.size(); ++v) sigma(idx.cells[v].first, idx.cells[v].second) = x[v];
    return Segmentation(m, std::move(sigma));
}

inline void require_table_matches(const Market& m, const WelfareTable& w) {
    if (!(w.grid() == m.grid())) throw Error(ErrorCode::DimensionMismatch, "welfare table is defined on another grid");
}

inline LpProblem designer_problem(const Market& m, const WelfareTable& w, const CellIndex& idx) {
    LpProblem lp;
    lp.objective.assign(idx.size(), Rational(0));
    for (std::size_t v = 0; v < idx.size(); ++v) lp.objective[v] = w(idx.cells[v].first, idx.cells[v].second);
    add_market_rows(lp, idx, m);
    add_obedience_rows(lp, idx, m.grid());
    return lp;
}

inline LpSolution solve_or_throw(const LpProblem& lp, std::string_view what) {
    auto sol = simplex_solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw Error(ErrorCode::SolverFailure, std::string(what) + " returned " + std::string(to_string(sol.status)));
    return sol;
}

}  // namespace detail

struct DesignerSolution {
    Segmentation segmentation;
    Rational value;
};

/// max Σ w·σ over efficient obedient segmentations of m.
inline DesignerSolution solve_designer(const Market& m, const WelfareTable& w) {
    detail::require_table_matches(m, w);
    const detail::CellIndex idx(m.size(), true);
    auto sol = detail::solve_or_throw(detail::designer_problem(m, w, idx), "designer LP");
    return {detail::to_segmentation(m, idx, sol.point), std::move(sol.value)};
}

/// Same objective over every obedient segmentation, efficient or not.
inline Rational solve_designer_unrestricted(const Market& m, const WelfareTable& w) {
    detail::require_table_matches(m, w);
    const detail::CellIndex idx(m.size(), false);
    return detail::solve_or_throw(detail::designer_problem(m, w, idx), "unrestricted designer LP").value;
}

struct CsMax {
    Segmentation segmentation;
    Rational surplus;
};

inline CsMax cs_max(const Market& m) {
    auto sol = solve_designer(m, utilitarian(m.grid()));
    return {std::move(sol.segmentation), std::move(sol.value)};
}

struct MarginalProfit {
    LpStatus status;
    Rational value;
    std::optional<Segmentation> deviation;
};

/// Highest seller profit over obedient segmentations with price marginal rho.
inline MarginalProfit max_profit_with_marginal(const Market& m, const std::vector<Rational>& rho) {
    if (rho.size() != m.size())
        throw Error(ErrorCode::DimensionMismatch, "price distribution has the wrong length");
    Rational total = 0;
    for (const auto& r : rho) {
        if (r < 0) throw Error(ErrorCode::InvalidDistribution, "price distribution has a negative entry");
        total += r;
    }
    if (total != 1) throw Error(ErrorCode::InvalidDistribution, "price distribution sums to " + to_string(total));

    const detail::CellIndex idx(m.size(), false);
    LpProblem lp;
    lp.objective.assign(idx.size(), Rational(0));
    for (std::size_t v = 0; v < idx.size(); ++v) {
        const auto [t, p] = idx.cells[v];
        if (t >= p) lp.objective[v] = m.type(p);
    }
    detail::add_market_rows(lp, idx, m);
    for (std::size_t p = 0; p < m.size(); ++p) {
        LpConstraint c{std::vector<Rational>(idx.size(), Rational(0)), Sense::Equal, rho[p]};
        for (std::size_t v = 0; v < idx.size(); ++v)
            if (idx.cells[v].second == p) c.coefficients[v] = 1;
        lp.constraints.push_back(std::move(c));
    }
    detail::add_obedience_rows(lp, idx, m.grid());
    auto sol = simplex_solve(lp);
    if (sol.status != LpStatus::Optimal) return {sol.status, 0, std::nullopt};
    return {LpStatus::Optimal, sol.value, detail::to_segmentation(m, idx, sol.point)};
}

struct Implementability {
    bool implementable;
    Rational profit;            // seller profit under seg
    Rational deviation_profit;  // best obedient profit with the same marginal
    Rational gap;               // deviation_profit − profit, never negative
    std::optional<Segmentation> deviation;
};

inline Implementability is_price_implementable(const Segmentation& seg) {
    if (!seg.obedient()) throw Error(ErrorCode::NotObedient, "implementability is defined for obedient segmentations");
    auto best = max_profit_with_marginal(seg.market(), price_marginal(seg));
    if (best.status != LpStatus::Optimal)
        throw Error(ErrorCode::SolverFailure, "marginal-constrained LP returned " + std::string(to_string(best.status)));
    Rational profit = total_profit(seg);
    Rational gap = best.value - profit;
    return {gap <= 0, std::move(profit), std::move(best.value), std::move(gap), std::move(best.deviation)};
}

}  // namespace segmarket
