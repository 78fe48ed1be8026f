#include "sigdesign/value.hpp"

#include "sigdesign/design.hpp"
#include "sigdesign/equilibrium.hpp"
#include "sigdesign/errors.hpp"

namespace sigdesign {

std::string solver_tag_name(SolverTag tag) {
    switch (tag) {
        case SolverTag::Commitment: return "commitment";
        case SolverTag::TransparencyPure: return "transparency";
        case SolverTag::FullTransparencyPure: return "full";
    }
    return "?";
}

Rational solve_value(const GameSpec& game, const Belief& prior, SolverTag tag) {
    switch (tag) {
        case SolverTag::Commitment: return solve_commitment(game, prior).value;
        case SolverTag::TransparencyPure: return solve_transparency_pure(game, prior).value;
        case SolverTag::FullTransparencyPure:
            return solve_full_transparency_pure(game, prior).value;
    }
    throw std::logic_error("unknown solver tag");
}

ValueCurve value_curve(const GameSpec& game, const Belief& mu_a, const Belief& mu_b, int steps,
                       SolverTag tag) {
    if (steps < 1) fail(Err::BadBelief, "value_curve needs steps >= 1");
    if (mu_a.size() != game.num_states() || mu_b.size() != game.num_states())
        fail(Err::BadBelief, "segment endpoints do not match the game's states");

    ValueCurve curve;
    curve.tag = tag;
    for (int s = 0; s <= steps; ++s) {
        Rational lambda(s, steps);
        std::vector<Rational> w(game.num_states());
        for (int i = 0; i < game.num_states(); ++i)
            w[i] = (1 - lambda) * mu_a[i] + lambda * mu_b[i];
        curve.lambdas.push_back(lambda);
        curve.values.push_back(solve_value(game, Belief(std::move(w)), tag));
    }
    return curve;
}

ConvexityResult convexity_check(const ValueCurve& curve) {
    const int n = static_cast<int>(curve.values.size());
    if (n < 3) fail(Err::BadBelief, "convexity check needs at least three grid points");

    ConvexityResult result;
    result.convex = true;
    result.worst_violation = 0;
    for (int a = 0; a < n; ++a)
        for (int step = 1; a + 2 * step < n; ++step) {
            const int mid = a + step;
            const int c = a + 2 * step;
            Rational excess =
                curve.values[mid] - (curve.values[a] + curve.values[c]) / 2;
            if (excess > result.worst_violation) {
                result.convex = false;
                result.worst_violation = excess;
                result.witness = {a, mid, c};
            }
        }
    return result;
}

ExperimentEvaluation evaluate_experiment(const GameSpec& game, const Belief& prior,
                                         const Experiment& experiment, SolverTag tag) {
    const int outcomes = static_cast<int>(experiment.outcomes.size());
    if (outcomes == 0) fail(Err::DegenerateExperiment, "experiment has no outcomes");
    if (experiment.likelihoods.size() != static_cast<size_t>(game.num_states()))
        fail(Err::DimensionMismatch, "experiment needs one likelihood row per state");
    for (const auto& row : experiment.likelihoods) {
        if (row.size() != static_cast<size_t>(outcomes))
            fail(Err::DimensionMismatch, "likelihood row width mismatch");
        Rational sum = 0;
        for (const auto& p : row) {
            if (p < 0) fail(Err::DegenerateExperiment, "negative likelihood");
            sum += p;
        }
        if (sum != 1) fail(Err::DegenerateExperiment, "likelihood row does not sum to 1");
    }

    ExperimentEvaluation eval;
    eval.value_at_prior = solve_value(game, prior, tag);
    eval.expected_value = 0;

    std::vector<Rational> check_prior(game.num_states(), Rational(0));
    bool any = false;
    for (int y = 0; y < outcomes; ++y) {
        Rational weight = 0;
        std::vector<Rational> posterior(game.num_states(), Rational(0));
        for (int i = 0; i < game.num_states(); ++i) {
            posterior[i] = prior[i] * experiment.likelihoods[i][y];
            weight += posterior[i];
        }
        if (weight == 0) continue;  // Bayes' law undefined; outcome dropped
        any = true;
        for (int i = 0; i < game.num_states(); ++i) {
            check_prior[i] += posterior[i];
            posterior[i] /= weight;
        }
        Belief belief(std::move(posterior));
        eval.expected_value += weight * solve_value(game, belief, tag);
        eval.posteriors.push_back({std::move(belief), weight});
    }
    if (!any) fail(Err::DegenerateExperiment, "all outcomes have zero probability");

    // Martingale identity: retained posteriors average back to the prior.
    for (int i = 0; i < game.num_states(); ++i)
        if (check_prior[i] != prior[i])
            throw std::logic_error("posterior mixture does not reproduce the prior");

    eval.information_helps = eval.expected_value >= eval.value_at_prior;
    return eval;
}

}  // namespace sigdesign
