#include "sigdesign/lp.hpp"

#include "sigdesign/errors.hpp"

#include <algorithm>
#include <utility>

namespace sigdesign {

namespace {

// Internal standard form: maximize c.y with rows A.y = b, y >= 0, b >= 0.
// Original variables are mapped onto nonnegative ones: a finite lower
// bound shifts, an upper-bounded-only variable flips sign, a free
// variable splits into a difference of two nonnegative parts. Finite
// upper bounds (after shifting) become extra rows.
struct VarMap {
    int primary = -1;    // column of the (shifted/flipped) variable
    int negative = -1;   // second column of a free split, or -1
    Rational offset = 0; // x = sign * y[primary] (+ y-part) + offset
    int sign = 1;
};

struct Tableau {
    // rows x cols, last column is the rhs.
    std::vector<std::vector<Rational>> a;
    std::vector<int> basis;  // basic column per row
    int cols = 0;

    void pivot(int row, int col) {
        auto& prow = a[row];
        Rational inv = 1 / prow[col];
        if (inv != 1)
            for (auto& v : prow) v *= inv;
        for (size_t r = 0; r < a.size(); ++r) {
            if (static_cast<int>(r) == row) continue;
            Rational f = a[r][col];
            if (f == 0) continue;
            auto& target = a[r];
            for (int c = 0; c < cols; ++c)
                if (prow[c] != 0) target[c] -= f * prow[c];
            target[col] = 0;  // guard against residual round-off-free drift
        }
        basis[row] = col;
    }
};

// Bland's rule simplex on the tableau with an extra objective row kept at
// the back: row index = #rows-1 holds reduced costs (for maximization,
// entering column needs a positive entry). Returns false when unbounded.
bool run_simplex(Tableau& t, int allowed_cols) {
    const int obj = static_cast<int>(t.a.size()) - 1;
    const int rhs = t.cols - 1;
    for (;;) {
        int enter = -1;
        for (int c = 0; c < allowed_cols; ++c)
            if (t.a[obj][c] > 0) {
                enter = c;
                break;
            }
        if (enter < 0) return true;  // optimal

        int leave = -1;
        Rational best_ratio;
        for (int r = 0; r < obj; ++r) {
            if (t.a[r][enter] <= 0) continue;
            Rational ratio = t.a[r][rhs] / t.a[r][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[r] < t.basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return false;  // unbounded
        t.pivot(leave, enter);
    }
}

}  // namespace

LPResult solve_lp(const LinearProgram& lp) {
    const int nvars = static_cast<int>(lp.objective.size());
    if (!lp.bounds.empty() && static_cast<int>(lp.bounds.size()) != nvars)
        fail(Err::DimensionMismatch, "bounds/objective size mismatch");
    for (const auto& c : lp.constraints)
        if (static_cast<int>(c.coeffs.size()) != nvars)
            fail(Err::DimensionMismatch, "constraint dimension mismatch: " + c.name);

    // Map original variables to nonnegative internal ones.
    std::vector<VarMap> vmap(nvars);
    std::vector<std::pair<int, Rational>> upper_rows;  // internal col, cap
    int ncols = 0;
    for (int v = 0; v < nvars; ++v) {
        VariableBounds b = lp.bounds.empty() ? VariableBounds{Rational(0), std::nullopt}
                                             : lp.bounds[v];
        VarMap m;
        if (b.lower) {
            m.primary = ncols++;
            m.sign = 1;
            m.offset = *b.lower;
            if (b.upper) {
                if (*b.upper < *b.lower) return {LPStatus::Infeasible, 0, {}, {}};
                upper_rows.push_back({m.primary, *b.upper - *b.lower});
            }
        } else if (b.upper) {
            // x = upper - y, y >= 0
            m.primary = ncols++;
            m.sign = -1;
            m.offset = *b.upper;
        } else {
            m.primary = ncols++;
            m.negative = ncols++;
            m.sign = 1;
        }
        vmap[v] = m;
    }

    // Row-major data: coefficients over internal columns, relation, rhs.
    struct Row {
        std::vector<Rational> a;
        Relation rel;
        Rational b;
    };
    std::vector<Row> rows;
    rows.reserve(lp.constraints.size() + upper_rows.size());
    for (const auto& c : lp.constraints) {
        Row row{std::vector<Rational>(ncols, Rational(0)), c.rel, c.rhs};
        for (int v = 0; v < nvars; ++v) {
            if (c.coeffs[v] == 0) continue;
            const VarMap& m = vmap[v];
            row.a[m.primary] += c.coeffs[v] * m.sign;
            if (m.negative >= 0) row.a[m.negative] -= c.coeffs[v];
            row.b -= c.coeffs[v] * m.offset;
        }
        rows.push_back(std::move(row));
    }
    for (const auto& [col, cap] : upper_rows) {
        Row row{std::vector<Rational>(ncols, Rational(0)), Relation::LessEq, cap};
        row.a[col] = 1;
        rows.push_back(std::move(row));
    }

    // Internal objective over internal columns (constant offset recovered
    // later by re-evaluating the original objective at the solution).
    std::vector<Rational> obj(ncols, Rational(0));
    for (int v = 0; v < nvars; ++v) {
        if (lp.objective[v] == 0) continue;
        const VarMap& m = vmap[v];
        obj[m.primary] += lp.objective[v] * m.sign;
        if (m.negative >= 0) obj[m.negative] -= lp.objective[v];
    }

    // Ensure nonnegative rhs, then attach slack/artificial columns.
    const int nrows = static_cast<int>(rows.size());
    for (auto& row : rows) {
        if (row.b < 0) {
            for (auto& v : row.a) v = -v;
            row.b = -row.b;
            if (row.rel == Relation::LessEq)
                row.rel = Relation::GreaterEq;
            else if (row.rel == Relation::GreaterEq)
                row.rel = Relation::LessEq;
        }
    }
    int nslack = 0;
    for (const auto& row : rows)
        if (row.rel != Relation::Equal) ++nslack;

    const int slack_base = ncols;
    const int art_base = ncols + nslack;
    // One artificial per row keeps the initial basis trivial.
    const int total_cols = art_base + nrows + 1;  // + rhs
    const int rhs_col = total_cols - 1;

    Tableau t;
    t.cols = total_cols;
    t.a.assign(nrows + 1, std::vector<Rational>(total_cols, Rational(0)));
    t.basis.assign(nrows, -1);

    int slack_at = slack_base;
    std::vector<int> artificial_of(nrows, -1);
    for (int r = 0; r < nrows; ++r) {
        for (int c = 0; c < ncols; ++c) t.a[r][c] = rows[r].a[c];
        t.a[r][rhs_col] = rows[r].b;
        if (rows[r].rel == Relation::LessEq)
            t.a[r][slack_at++] = 1;
        else if (rows[r].rel == Relation::GreaterEq)
            t.a[r][slack_at++] = -1;
        // Start from the all-artificial basis; slack-only starts would
        // also work for <= rows but this keeps the setup uniform.
        artificial_of[r] = art_base + r;
        t.a[r][art_base + r] = 1;
        t.basis[r] = art_base + r;
    }

    // Phase 1: maximize -sum(artificials).
    auto& objrow = t.a[nrows];
    for (int r = 0; r < nrows; ++r)
        for (int c = 0; c < total_cols; ++c) objrow[c] += t.a[r][c];
    for (int r = 0; r < nrows; ++r) objrow[artificial_of[r]] = 0;

    if (!run_simplex(t, art_base))
        fail(Err::DimensionMismatch, "phase-1 objective unbounded (internal)");
    if (t.a[nrows][rhs_col] != 0) return {LPStatus::Infeasible, 0, {}, {}};

    // Drive leftover artificial variables out of the basis.
    for (int r = 0; r < nrows; ++r) {
        if (t.basis[r] < art_base) continue;
        int col = -1;
        for (int c = 0; c < art_base; ++c)
            if (t.a[r][c] != 0) {
                col = c;
                break;
            }
        if (col >= 0) t.pivot(r, col);
        // An all-zero row is redundant; its artificial stays basic at zero
        // and never re-enters because phase 2 excludes artificial columns.
    }

    // Phase 2: restore the real objective row, reduced by the basis.
    for (int c = 0; c < total_cols; ++c) objrow[c] = 0;
    for (int c = 0; c < ncols; ++c) objrow[c] = obj[c];
    for (int r = 0; r < nrows; ++r) {
        if (t.basis[r] >= art_base) continue;
        Rational f = objrow[t.basis[r]];
        if (f == 0) continue;
        for (int c = 0; c < total_cols; ++c)
            if (t.a[r][c] != 0) objrow[c] -= f * t.a[r][c];
        objrow[t.basis[r]] = 0;
    }

    if (!run_simplex(t, art_base)) return {LPStatus::Unbounded, 0, {}, {}};

    // Recover the point in original variable space.
    std::vector<Rational> internal(ncols, Rational(0));
    for (int r = 0; r < nrows; ++r)
        if (t.basis[r] < ncols) internal[t.basis[r]] = t.a[r][rhs_col];
    std::vector<Rational> x(nvars);
    for (int v = 0; v < nvars; ++v) {
        const VarMap& m = vmap[v];
        Rational y = internal[m.primary];
        if (m.negative >= 0) y -= internal[m.negative];
        x[v] = m.offset + m.sign * y;
    }

    LPResult result;
    result.status = LPStatus::Optimal;
    result.solution = x;
    result.optimal_value = 0;
    for (int v = 0; v < nvars; ++v) result.optimal_value += lp.objective[v] * x[v];
    for (int i = 0; i < static_cast<int>(lp.constraints.size()); ++i) {
        Rational lhs = 0;
        for (int v = 0; v < nvars; ++v) lhs += lp.constraints[i].coeffs[v] * x[v];
        if (lhs == lp.constraints[i].rhs) result.binding_constraints.push_back(i);
    }
    return result;
}

FeasibilityCheck check_feasible(const LinearProgram& lp, const std::vector<Rational>& point) {
    const int nvars = static_cast<int>(lp.objective.size());
    if (static_cast<int>(point.size()) != nvars)
        fail(Err::DimensionMismatch, "point dimension mismatch");

    FeasibilityCheck result;
    for (int i = 0; i < static_cast<int>(lp.constraints.size()); ++i) {
        const auto& c = lp.constraints[i];
        if (static_cast<int>(c.coeffs.size()) != nvars)
            fail(Err::DimensionMismatch, "constraint dimension mismatch: " + c.name);
        Rational lhs = 0;
        for (int v = 0; v < nvars; ++v) lhs += c.coeffs[v] * point[v];
        bool ok = c.rel == Relation::LessEq      ? lhs <= c.rhs
                  : c.rel == Relation::GreaterEq ? lhs >= c.rhs
                                                 : lhs == c.rhs;
        if (!ok) result.violated_constraints.push_back(i);
    }
    for (int v = 0; v < nvars; ++v) {
        VariableBounds b = lp.bounds.empty() ? VariableBounds{Rational(0), std::nullopt}
                                             : lp.bounds[v];
        if ((b.lower && point[v] < *b.lower) || (b.upper && point[v] > *b.upper))
            result.violated_bounds.push_back(v);
    }
    result.feasible = result.violated_constraints.empty() && result.violated_bounds.empty();
    return result;
}

}  // namespace sigdesign
