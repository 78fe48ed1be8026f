#include "sigdesign/design.hpp"

#include "sigdesign/errors.hpp"

#include <algorithm>

namespace sigdesign {

namespace {

constexpr long kProfileLimit = 1000000;

std::vector<int> decode_profile(long index, int num_states, int num_messages) {
    std::vector<int> msg(num_states);
    for (int i = 0; i < num_states; ++i) {
        msg[i] = static_cast<int>(index % num_messages);
        index /= num_messages;
    }
    return msg;
}

// Action weakly optimal in every state regardless of the message, which
// collapses the design problem to acting on the prior.
std::optional<int> dominant_action(const GameSpec& game) {
    for (int a = 0; a < game.num_actions(); ++a) {
        bool dominant = true;
        for (int i = 0; i < game.num_states() && dominant; ++i)
            for (int j = 0; j < game.num_messages() && dominant; ++j)
                for (int l = 0; l < game.num_actions() && dominant; ++l)
                    if (game.receiver_utility(i, j, a) < game.receiver_utility(i, j, l))
                        dominant = false;
        if (dominant) return a;
    }
    return std::nullopt;
}

// Is the action weakly optimal under some degenerate (state, message)
// belief? Used both for off-path recommendations and deviation threats.
bool pure_pair_supportable(const GameSpec& game, int action) {
    for (int i = 0; i < game.num_states(); ++i)
        for (int j = 0; j < game.num_messages(); ++j) {
            bool best = true;
            for (int l = 0; l < game.num_actions() && best; ++l)
                if (game.receiver_utility(i, j, action) < game.receiver_utility(i, j, l))
                    best = false;
            if (best) return true;
        }
    return false;
}

Signal signal_from_lp_solution(const GameSpec& game, const std::vector<Rational>& x) {
    Signal signal = Signal::direct(game);
    const int k = game.num_actions();
    for (int j = 0; j < game.num_messages(); ++j)
        for (int l = 0; l < k; ++l) signal.kernel[j][l] = x[j * k + l];
    return signal;
}

std::vector<std::pair<int, int>> binding_ic_rows(const GameSpec& game,
                                                 const std::vector<int>& binding,
                                                 int first_ic_row, int num_ic_rows,
                                                 const std::vector<std::pair<int, int>>& ic_index) {
    std::vector<std::pair<int, int>> out;
    for (int row : binding)
        if (row >= first_ic_row && row < first_ic_row + num_ic_rows)
            out.push_back(ic_index[row - first_ic_row]);
    return out;
}

DesignSolution pooling_solution(const GameSpec& game, const Belief& prior, SolveMode mode,
                                int action) {
    DesignSolution solution;
    solution.profile = SenderProfile::pure(std::vector<int>(game.num_states(), 0),
                                           game.num_messages());
    solution.signal = Signal::constant(game, action);
    solution.mode = mode;
    solution.value = design_value(game, prior, solution.profile, solution.signal);
    for (int i = 0; i < game.num_states(); ++i)
        for (int j = 1; j < game.num_messages(); ++j) solution.binding_ic.push_back({i, j});
    solution.obedience = check_obedience(game, prior, solution.profile, solution.signal);
    solution.optima_count = 1;
    return solution;
}

// Obedience deviation rows for a fixed pure profile, linear in the signal
// entries: following recommendation a must beat switching to a' given the
// on-path mixture that produced a.
void append_obedience_rows(const GameSpec& game, const Belief& prior,
                           const std::vector<int>& message_of_state, LinearProgram& lp) {
    const int t = game.num_messages();
    const int k = game.num_actions();
    for (int a = 0; a < k; ++a)
        for (int dev = 0; dev < k; ++dev) {
            if (dev == a) continue;
            LinearConstraint row;
            row.coeffs.assign(static_cast<size_t>(t) * k, Rational(0));
            row.rel = Relation::GreaterEq;
            row.rhs = 0;
            row.name = "obedience(" + game.actions()[a] + " vs " + game.actions()[dev] + ")";
            for (int i = 0; i < game.num_states(); ++i) {
                const int j = message_of_state[i];
                row.coeffs[j * k + a] += prior[i] * (game.receiver_utility(i, j, a) -
                                                     game.receiver_utility(i, j, dev));
            }
            lp.constraints.push_back(std::move(row));
        }
}

struct ProfileSearchOutcome {
    bool found = false;
    Rational best_value;
    long best_index = -1;
    LPResult best_result;
    long optima_count = 0;
};

template <typename BuildLP, typename Accept>
ProfileSearchOutcome search_profiles(const GameSpec& game, long total, BuildLP&& build,
                                     Accept&& accept) {
    ProfileSearchOutcome out;
    for (long index = 0; index < total; ++index) {
        std::vector<int> assignment = decode_profile(index, game.num_states(), game.num_messages());
        LinearProgram lp = build(assignment);
        LPResult result = solve_lp(lp);
        if (result.status != LPStatus::Optimal) continue;
        if (!accept(assignment, result)) continue;
        if (!out.found || result.optimal_value > out.best_value) {
            out.found = true;
            out.best_value = result.optimal_value;
            out.best_index = index;
            out.best_result = std::move(result);
            out.optima_count = 1;
        } else if (result.optimal_value == out.best_value) {
            ++out.optima_count;
        }
    }
    return out;
}

}  // namespace

SenderProfile SenderProfile::pure(const std::vector<int>& message_of_state, int num_messages) {
    SenderProfile profile;
    profile.strategy.reserve(message_of_state.size());
    for (int m : message_of_state) {
        std::vector<Rational> row(num_messages, Rational(0));
        row[m] = 1;
        profile.strategy.push_back(std::move(row));
    }
    return profile;
}

bool SenderProfile::is_pure() const {
    for (const auto& row : strategy)
        for (const auto& p : row)
            if (p != 0 && p != 1) return false;
    return true;
}

int SenderProfile::assigned_message(int state) const {
    const auto& row = strategy[state];
    for (int j = 0; j < static_cast<int>(row.size()); ++j)
        if (row[j] == 1) return j;
    fail(Err::NonPureProfile, "profile row is not degenerate");
}

Signal Signal::direct(const GameSpec& game) {
    Signal signal;
    signal.realizations = game.actions();
    signal.kernel.assign(game.num_messages(),
                         std::vector<Rational>(game.num_actions(), Rational(0)));
    return signal;
}

Signal Signal::constant(const GameSpec& game, int action) {
    Signal signal = direct(game);
    for (auto& row : signal.kernel) row[action] = 1;
    return signal;
}

Signal Signal::identity(const GameSpec& game) {
    Signal signal;
    signal.realizations = game.messages();
    signal.kernel.assign(game.num_messages(),
                         std::vector<Rational>(game.num_messages(), Rational(0)));
    for (int j = 0; j < game.num_messages(); ++j) signal.kernel[j][j] = 1;
    return signal;
}

bool Signal::is_direct(const GameSpec& game) const { return realizations == game.actions(); }

LinearProgram build_commitment_lp(const GameSpec& game, const Belief& prior,
                                  const SenderProfile& profile) {
    if (!profile.is_pure()) fail(Err::NonPureProfile, "commitment LP needs a pure profile");
    const int t = game.num_messages();
    const int k = game.num_actions();

    LinearProgram lp;
    lp.objective.assign(static_cast<size_t>(t) * k, Rational(0));
    lp.bounds.assign(static_cast<size_t>(t) * k, VariableBounds{Rational(0), std::nullopt});
    for (int j = 0; j < t; ++j)
        for (int l = 0; l < k; ++l)
            lp.variable_names.push_back("pi(" + game.actions()[l] + "|" + game.messages()[j] + ")");

    std::vector<int> assigned(game.num_states());
    for (int i = 0; i < game.num_states(); ++i) {
        assigned[i] = profile.assigned_message(i);
        for (int l = 0; l < k; ++l)
            lp.objective[assigned[i] * k + l] += prior[i] * game.receiver_utility(i, assigned[i], l);
    }

    for (int j = 0; j < t; ++j) {
        LinearConstraint row;
        row.coeffs.assign(static_cast<size_t>(t) * k, Rational(0));
        for (int l = 0; l < k; ++l) row.coeffs[j * k + l] = 1;
        row.rel = Relation::Equal;
        row.rhs = 1;
        row.name = "stochastic(" + game.messages()[j] + ")";
        lp.constraints.push_back(std::move(row));
    }

    for (int i = 0; i < game.num_states(); ++i)
        for (int dev = 0; dev < t; ++dev) {
            if (dev == assigned[i]) continue;
            LinearConstraint row;
            row.coeffs.assign(static_cast<size_t>(t) * k, Rational(0));
            row.rel = Relation::GreaterEq;
            row.rhs = 0;
            row.name = "ic(" + game.states()[i] + " vs " + game.messages()[dev] + ")";
            for (int l = 0; l < k; ++l) {
                row.coeffs[assigned[i] * k + l] += game.sender_utility(i, assigned[i], l);
                row.coeffs[dev * k + l] -= game.sender_utility(i, dev, l);
            }
            lp.constraints.push_back(std::move(row));
        }

    return lp;
}

Rational design_value(const GameSpec& game, const Belief& prior, const SenderProfile& profile,
                      const Signal& signal) {
    if (!signal.is_direct(game)) fail(Err::NonDirectSignal, "design_value needs a direct signal");
    Rational value = 0;
    for (int i = 0; i < game.num_states(); ++i)
        for (int j = 0; j < game.num_messages(); ++j) {
            if (profile.strategy[i][j] == 0) continue;
            for (int l = 0; l < game.num_actions(); ++l)
                value += prior[i] * profile.strategy[i][j] * signal.kernel[j][l] *
                         game.receiver_utility(i, j, l);
        }
    return value;
}

long pure_profile_count_checked(const GameSpec& game) {
    long total = 1;
    for (int i = 0; i < game.num_states(); ++i) {
        total *= game.num_messages();
        if (total > kProfileLimit)
            fail(Err::ProfileLimitExceeded,
                 "pure profile enumeration exceeds " + std::to_string(kProfileLimit));
    }
    return total;
}

ObedienceReport check_obedience(const GameSpec& game, const Belief& prior,
                                const SenderProfile& profile, const Signal& signal) {
    if (!signal.is_direct(game))
        fail(Err::NonDirectSignal, "obedience is defined for direct signals");
    const int k = game.num_actions();
    ObedienceReport report;
    report.status.resize(k);
    report.slack.assign(k, Rational(0));
    report.posterior.resize(k);
    report.overall = true;

    for (int a = 0; a < k; ++a) {
        // On-path mass and state-marginal weights of recommendation a.
        std::vector<Rational> weight(game.num_states(), Rational(0));
        Rational mass = 0;
        for (int i = 0; i < game.num_states(); ++i) {
            for (int j = 0; j < game.num_messages(); ++j)
                weight[i] += prior[i] * profile.strategy[i][j] * signal.kernel[j][a];
            mass += weight[i];
        }
        bool reachable = false;
        for (int j = 0; j < game.num_messages(); ++j)
            if (signal.kernel[j][a] != 0) reachable = true;

        if (!reachable) {
            // No message ever triggers the recommendation, so sequential
            // rationality is vacuous for it.
            report.status[a] = ObedienceStatus::OffPathSupportable;
            report.slack[a] = 0;
            continue;
        }
        if (mass > 0) {
            Rational worst;
            bool first = true;
            for (int dev = 0; dev < k; ++dev) {
                if (dev == a) continue;
                Rational margin = 0;
                for (int i = 0; i < game.num_states(); ++i)
                    for (int j = 0; j < game.num_messages(); ++j)
                        margin += prior[i] * profile.strategy[i][j] * signal.kernel[j][a] *
                                  (game.receiver_utility(i, j, a) -
                                   game.receiver_utility(i, j, dev));
                if (first || margin < worst) {
                    worst = margin;
                    first = false;
                }
            }
            report.slack[a] = first ? Rational(0) : worst;
            report.status[a] = report.slack[a] >= 0 ? ObedienceStatus::OnPathSatisfied
                                                    : ObedienceStatus::OnPathViolated;
            std::vector<Rational> posterior(game.num_states());
            for (int i = 0; i < game.num_states(); ++i) posterior[i] = weight[i] / mass;
            report.posterior[a] = Belief(std::move(posterior));
        } else {
            // Best margin achievable under a degenerate (state, message)
            // belief; nonnegative iff the recommendation is supportable.
            Rational best;
            bool first = true;
            for (int i = 0; i < game.num_states(); ++i)
                for (int j = 0; j < game.num_messages(); ++j) {
                    Rational margin;
                    bool inner_first = true;
                    for (int dev = 0; dev < k; ++dev) {
                        if (dev == a) continue;
                        Rational gap = game.receiver_utility(i, j, a) -
                                       game.receiver_utility(i, j, dev);
                        if (inner_first || gap < margin) {
                            margin = gap;
                            inner_first = false;
                        }
                    }
                    if (inner_first) margin = 0;  // single-action game
                    if (first || margin > best) {
                        best = margin;
                        first = false;
                    }
                }
            report.slack[a] = best;
            report.status[a] = best >= 0 ? ObedienceStatus::OffPathSupportable
                                         : ObedienceStatus::OffPathUnsupportable;
        }
        if (report.status[a] == ObedienceStatus::OnPathViolated ||
            report.status[a] == ObedienceStatus::OffPathUnsupportable)
            report.overall = false;
    }
    return report;
}

DesignSolution solve_commitment(const GameSpec& game, const Belief& prior) {
    const long total = pure_profile_count_checked(game);
    if (is_simple(game)) {
        if (auto action = dominant_action(game))
            return pooling_solution(game, prior, SolveMode::Commitment, *action);
    }

    auto outcome = search_profiles(
        game, total,
        [&](const std::vector<int>& assignment) {
            return build_commitment_lp(
                game, prior, SenderProfile::pure(assignment, game.num_messages()));
        },
        [](const std::vector<int>&, const LPResult&) { return true; });
    // A constant signal makes the per-state argmax assignment incentive
    // compatible, so some profile is always feasible.
    if (!outcome.found) throw std::logic_error("no feasible pure profile");

    std::vector<int> assignment =
        decode_profile(outcome.best_index, game.num_states(), game.num_messages());
    DesignSolution solution;
    solution.profile = SenderProfile::pure(assignment, game.num_messages());
    solution.signal = signal_from_lp_solution(game, outcome.best_result.solution);
    solution.value = outcome.best_value;
    solution.mode = SolveMode::Commitment;
    solution.optima_count = outcome.optima_count;

    std::vector<std::pair<int, int>> ic_index;
    for (int i = 0; i < game.num_states(); ++i)
        for (int dev = 0; dev < game.num_messages(); ++dev)
            if (dev != assignment[i]) ic_index.push_back({i, dev});
    solution.binding_ic =
        binding_ic_rows(game, outcome.best_result.binding_constraints, game.num_messages(),
                        static_cast<int>(ic_index.size()), ic_index);
    solution.obedience = check_obedience(game, prior, solution.profile, solution.signal);

    if (solution.value != design_value(game, prior, solution.profile, solution.signal))
        throw std::logic_error("commitment value does not re-evaluate");
    return solution;
}

DesignSolution solve_transparency_pure(const GameSpec& game, const Belief& prior) {
    const long total = pure_profile_count_checked(game);
    if (is_simple(game)) {
        if (auto action = dominant_action(game))
            return pooling_solution(game, prior, SolveMode::TransparencyPure, *action);
    }

    const int k = game.num_actions();
    std::vector<bool> supportable(k);
    for (int a = 0; a < k; ++a) supportable[a] = pure_pair_supportable(game, a);

    auto outcome = search_profiles(
        game, total,
        [&](const std::vector<int>& assignment) {
            LinearProgram lp = build_commitment_lp(
                game, prior, SenderProfile::pure(assignment, game.num_messages()));
            append_obedience_rows(game, prior, assignment, lp);
            return lp;
        },
        [&](const std::vector<int>& assignment, const LPResult& result) {
            // Off-path recommendations that some column still emits must be
            // supportable by a degenerate belief, or the receiver would not
            // honor the threat.
            for (int a = 0; a < k; ++a) {
                if (supportable[a]) continue;
                Rational on_path = 0;
                bool used = false;
                for (int j = 0; j < game.num_messages(); ++j)
                    if (result.solution[j * k + a] != 0) used = true;
                for (int i = 0; i < game.num_states(); ++i)
                    on_path += prior[i] * result.solution[assignment[i] * k + a];
                if (used && on_path == 0) return false;
            }
            return true;
        });

    DesignSolution fallback;  // constant-signal pooling always verifies
    {
        std::vector<int> all_first(game.num_states(), 0);
        Rational best;
        int best_action = 0;
        for (int a = 0; a < k; ++a) {
            Rational v = 0;
            for (int i = 0; i < game.num_states(); ++i)
                v += prior[i] * game.receiver_utility(i, 0, a);
            if (a == 0 || v > best) {
                best = v;
                best_action = a;
            }
        }
        fallback = pooling_solution(game, prior, SolveMode::TransparencyPure, best_action);
    }
    if (!outcome.found || outcome.best_value < fallback.value) return fallback;

    std::vector<int> assignment =
        decode_profile(outcome.best_index, game.num_states(), game.num_messages());
    DesignSolution solution;
    solution.profile = SenderProfile::pure(assignment, game.num_messages());
    solution.signal = signal_from_lp_solution(game, outcome.best_result.solution);
    solution.value = outcome.best_value;
    solution.mode = SolveMode::TransparencyPure;
    solution.optima_count = outcome.optima_count;

    std::vector<std::pair<int, int>> ic_index;
    for (int i = 0; i < game.num_states(); ++i)
        for (int dev = 0; dev < game.num_messages(); ++dev)
            if (dev != assignment[i]) ic_index.push_back({i, dev});
    solution.binding_ic =
        binding_ic_rows(game, outcome.best_result.binding_constraints, game.num_messages(),
                        static_cast<int>(ic_index.size()), ic_index);
    solution.obedience = check_obedience(game, prior, solution.profile, solution.signal);

    if (solution.value != design_value(game, prior, solution.profile, solution.signal))
        throw std::logic_error("transparency value does not re-evaluate");
    return solution;
}

OpacityGap opacity_gap(const GameSpec& game, const Belief& prior) {
    OpacityGap gap;
    gap.commitment = solve_commitment(game, prior).value;
    gap.transparency_pure = solve_transparency_pure(game, prior).value;
    gap.equal = gap.commitment == gap.transparency_pure;
    gap.theorem_applies = game.num_actions() == 2 && is_simple(game);
    return gap;
}

}  // namespace sigdesign
