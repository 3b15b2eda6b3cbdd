#pragma once

// Exact phase-one simplex for linear feasibility over the rationals.
// Bland's rule keeps it finite and deterministic.

#include "equiprob/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace eqp {

struct LinearRow {
    RationalVec coeffs;
    Rational rhs;
};

struct FeasibilityProblem {
    std::size_t variables = 0;
    std::vector<bool> nonnegative;      // per variable; false means free
    std::vector<LinearRow> equalities;  // coeffs . x == rhs
    std::vector<LinearRow> inequalities;  // coeffs . x >= rhs
};

// Farkas witness: u (free) on equality rows, v >= 0 on inequality rows with
//   r = u E + v G,  r_j <= 0 for nonnegative x_j,  r_j == 0 for free x_j,
//   u . e + v . g > 0.
struct DualCertificate {
    RationalVec eq_multipliers;
    RationalVec ineq_multipliers;
};

struct FeasibilityResult {
    bool feasible = false;
    RationalVec assignment;   // present iff feasible
    DualCertificate certificate;  // present iff infeasible
    std::size_t pivots = 0;
};

inline void check_problem(const FeasibilityProblem& p) {
    if (p.nonnegative.size() != p.variables)
        throw std::invalid_argument("nonnegativity flags do not match variable count");
    for (const auto* rows : {&p.equalities, &p.inequalities})
        for (const auto& r : *rows)
            if (r.coeffs.size() != p.variables)
                throw std::invalid_argument("constraint row length does not match variable count");
}

inline FeasibilityResult solve_feasibility(const FeasibilityProblem& p) {
    check_problem(p);
    const std::size_t n_eq = p.equalities.size();
    const std::size_t n_ge = p.inequalities.size();
    const std::size_t m = n_eq + n_ge;

    // Column layout: structural columns (free vars split in two), surplus
    // columns for >= rows, then one artificial per row.
    std::vector<std::size_t> pos_col(p.variables), neg_col(p.variables, SIZE_MAX);
    std::size_t ncol = 0;
    for (std::size_t j = 0; j < p.variables; ++j) {
        pos_col[j] = ncol++;
        if (!p.nonnegative[j]) neg_col[j] = ncol++;
    }
    const std::size_t surplus0 = ncol;
    ncol += n_ge;
    const std::size_t art0 = ncol;
    ncol += m;

    std::vector<RationalVec> T(m, RationalVec(ncol + 1, Rational(0)));
    std::vector<int> sign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        const LinearRow& row = i < n_eq ? p.equalities[i] : p.inequalities[i - n_eq];
        RationalVec& t = T[i];
        for (std::size_t j = 0; j < p.variables; ++j) {
            t[pos_col[j]] = row.coeffs[j];
            if (neg_col[j] != SIZE_MAX) t[neg_col[j]] = -row.coeffs[j];
        }
        if (i >= n_eq) t[surplus0 + (i - n_eq)] = -1;
        t[ncol] = row.rhs;
        if (row.rhs < 0) {
            sign[i] = -1;
            for (auto& x : t) x = -x;
        }
        t[art0 + i] = 1;
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = art0 + i;

    // Reduced costs of the phase-one objective (sum of artificials); the last
    // entry holds minus the objective value.
    RationalVec d(ncol + 1, Rational(0));
    for (std::size_t j = 0; j <= ncol; ++j) {
        if (j >= art0 && j < ncol) continue;
        for (std::size_t i = 0; i < m; ++i) d[j] -= T[i][j];
    }

    FeasibilityResult res;
    for (;;) {
        std::size_t enter = SIZE_MAX;
        for (std::size_t j = 0; j < ncol; ++j)
            if (d[j] < 0) { enter = j; break; }
        if (enter == SIZE_MAX) break;
        std::size_t leave = SIZE_MAX;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rational ratio = T[i][ncol] / T[i][enter];
            if (leave == SIZE_MAX || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        // Phase one is bounded below by zero, so some row must qualify.
        if (leave == SIZE_MAX) throw std::logic_error("phase one reported unbounded");
        Rational piv = T[leave][enter];
        for (auto& x : T[leave]) x /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j <= ncol; ++j)
                if (T[leave][j] != 0) T[i][j] -= f * T[leave][j];
        }
        if (d[enter] != 0) {
            Rational f = d[enter];
            for (std::size_t j = 0; j <= ncol; ++j)
                if (T[leave][j] != 0) d[j] -= f * T[leave][j];
        }
        basis[leave] = enter;
        ++res.pivots;
    }

    const Rational objective = -d[ncol];
    if (objective == 0) {
        RationalVec col_val(ncol, Rational(0));
        for (std::size_t i = 0; i < m; ++i) col_val[basis[i]] = T[i][ncol];
        res.feasible = true;
        res.assignment.assign(p.variables, Rational(0));
        for (std::size_t j = 0; j < p.variables; ++j) {
            res.assignment[j] = col_val[pos_col[j]];
            if (neg_col[j] != SIZE_MAX) res.assignment[j] -= col_val[neg_col[j]];
        }
        return res;
    }

    // Simplex multipliers y_i = c_art - reduced cost = 1 - d[art_i], undone
    // through the row sign flips.
    res.feasible = false;
    res.certificate.eq_multipliers.resize(n_eq);
    res.certificate.ineq_multipliers.resize(n_ge);
    for (std::size_t i = 0; i < m; ++i) {
        Rational y = Rational(1) - d[art0 + i];
        if (sign[i] < 0) y = -y;
        if (i < n_eq) res.certificate.eq_multipliers[i] = y;
        else res.certificate.ineq_multipliers[i - n_eq] = y;
    }
    return res;
}

// Exact re-check of a feasible assignment.
inline bool satisfies(const FeasibilityProblem& p, const RationalVec& x) {
    if (x.size() != p.variables) return false;
    for (std::size_t j = 0; j < p.variables; ++j)
        if (p.nonnegative[j] && x[j] < 0) return false;
    for (const auto& r : p.equalities)
        if (dot(r.coeffs, x) != r.rhs) return false;
    for (const auto& r : p.inequalities)
        if (dot(r.coeffs, x) < r.rhs) return false;
    return true;
}

// Exact re-check of a Farkas witness.
inline bool refutes(const FeasibilityProblem& p, const DualCertificate& c) {
    if (c.eq_multipliers.size() != p.equalities.size() ||
        c.ineq_multipliers.size() != p.inequalities.size())
        return false;
    for (const auto& v : c.ineq_multipliers)
        if (v < 0) return false;
    Rational value = 0;
    RationalVec r(p.variables, Rational(0));
    for (std::size_t i = 0; i < p.equalities.size(); ++i) {
        value += c.eq_multipliers[i] * p.equalities[i].rhs;
        for (std::size_t j = 0; j < p.variables; ++j)
            r[j] += c.eq_multipliers[i] * p.equalities[i].coeffs[j];
    }
    for (std::size_t i = 0; i < p.inequalities.size(); ++i) {
        value += c.ineq_multipliers[i] * p.inequalities[i].rhs;
        for (std::size_t j = 0; j < p.variables; ++j)
            r[j] += c.ineq_multipliers[i] * p.inequalities[i].coeffs[j];
    }
    if (value <= 0) return false;
    for (std::size_t j = 0; j < p.variables; ++j) {
        if (p.nonnegative[j] ? r[j] > 0 : r[j] != 0) return false;
    }
    return true;
}

}  // namespace eqp
