#pragma once

#include "sigdesign/game.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace sigdesign {

// Ex-ante public experiment: per-state likelihoods over outcomes.
struct Experiment {
    std::vector<std::string> outcomes;
    std::vector<std::vector<Rational>> likelihoods;  // [state][outcome]
};

enum class SolverTag { Commitment, TransparencyPure, FullTransparencyPure };

std::string solver_tag_name(SolverTag tag);

struct ValueCurve {
    std::vector<Rational> lambdas;  // strictly increasing, endpoints included
    std::vector<Rational> values;
    SolverTag tag = SolverTag::Commitment;
};

// Receiver value of the tagged solver along the prior segment
// (1-lambda) mu_a + lambda mu_b on an exact grid of `steps` intervals.
ValueCurve value_curve(const GameSpec& game, const Belief& mu_a, const Belief& mu_b, int steps,
                       SolverTag tag);

struct ConvexityResult {
    bool convex = false;
    Rational worst_violation;      // largest positive midpoint excess, 0 if convex
    std::array<int, 3> witness{};  // grid indices of the worst triple
};

// Midpoint test over every equally spaced index triple of the curve.
ConvexityResult convexity_check(const ValueCurve& curve);

struct ExperimentEvaluation {
    std::vector<std::pair<Belief, Rational>> posteriors;  // (posterior, outcome weight)
    Rational expected_value;
    Rational value_at_prior;
    bool information_helps = false;  // expected >= value at prior
};

// Bayes posteriors, outcome weights and the value comparison for the
// tagged solver; zero-probability outcomes are dropped.
ExperimentEvaluation evaluate_experiment(const GameSpec& game, const Belief& prior,
                                         const Experiment& experiment, SolverTag tag);

Rational solve_value(const GameSpec& game, const Belief& prior, SolverTag tag);

}  // namespace sigdesign
