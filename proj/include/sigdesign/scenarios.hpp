#pragma once

#include "sigdesign/game.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sigdesign {

// Built-in finite game with its default prior and the exact values the
// solvers are expected to reproduce (keyed by solver/diagnostic name).
struct FiniteFixture {
    std::string name;
    GameSpec game;
    Belief prior;
    std::map<std::string, Rational> expected;
};

enum class ScenarioKind { Investor, RegimeChange, EmailFilter };

// Application with a continuous component; solved in floating point
// because the optima are irrational.
struct ParametricScenario {
    ScenarioKind kind = ScenarioKind::Investor;
    std::map<std::string, double> params;
    // Email filter: type distribution F and interview value x(theta).
    // Uniform cdf and identity value are the closed-form defaults.
    std::function<double(double)> cdf;
    bool uniform_cdf = true;
    std::function<double(double)> interview_value;
    bool identity_value = true;
};

using LoadedScenario = std::variant<FiniteFixture, ParametricScenario>;

const std::vector<std::string>& scenario_names();
LoadedScenario load_scenario(const std::string& name);

struct ScenarioSolution {
    std::map<std::string, double> variables;
    double value = 0;
    std::map<std::string, double> residuals;
    std::vector<std::string> notes;
};

struct InvestorGrid {
    double step = 1e-3;                       // coarse outer grid over r
    std::optional<std::vector<double>> points;  // explicit grid, no refinement
};

// Outer search over the middle type's investment with an exact inner LP
// in the disclosure probabilities (k, l, m).
ScenarioSolution solve_investor(const ParametricScenario& scenario, const InvestorGrid& grid = {});

ScenarioSolution solve_regime_change(const ParametricScenario& scenario);

enum class FilterFamily { Eq4, Eq5, Both };

ScenarioSolution solve_email_filter(const ParametricScenario& scenario, FilterFamily family);

}  // namespace sigdesign
