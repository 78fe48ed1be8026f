#pragma once

#include "sigdesign/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigdesign {

enum class Relation { LessEq, GreaterEq, Equal };

struct LinearConstraint {
    std::vector<Rational> coeffs;
    Relation rel = Relation::LessEq;
    Rational rhs = 0;
    std::string name;
};

struct VariableBounds {
    std::optional<Rational> lower;  // nullopt = unbounded below
    std::optional<Rational> upper;  // nullopt = unbounded above
};

// Maximization problem: max c.x subject to the listed constraints and
// per-variable bounds. Bounds default to x >= 0 when left empty.
struct LinearProgram {
    std::vector<Rational> objective;
    std::vector<LinearConstraint> constraints;
    std::vector<VariableBounds> bounds;  // empty, or one entry per variable
    std::vector<std::string> variable_names;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rational optimal_value;         // valid when Optimal
    std::vector<Rational> solution; // valid when Optimal
    std::vector<int> binding_constraints;  // constraints holding with equality
};

// Exact two-phase primal simplex with Bland's anti-cycling rule. Returns
// a vertex optimum; degenerate optima resolve to the first vertex found.
LPResult solve_lp(const LinearProgram& lp);

struct FeasibilityCheck {
    bool feasible = false;
    std::vector<int> violated_constraints;
    std::vector<int> violated_bounds;
};

// Exact satisfaction check of every constraint and bound at the point.
FeasibilityCheck check_feasible(const LinearProgram& lp, const std::vector<Rational>& point);

}  // namespace sigdesign
