#include "sigdesign/equilibrium.hpp"

#include "sigdesign/errors.hpp"

#include <algorithm>

namespace sigdesign {

namespace {

// Expected sender payoff for a type sending a message, given signal and
// receiver response.
Rational message_value(const GameSpec& game, const EquilibriumTriple& triple, int state,
                       int message) {
    Rational v = 0;
    const int realizations = static_cast<int>(triple.signal.realizations.size());
    for (int e = 0; e < realizations; ++e) {
        if (triple.signal.kernel[message][e] == 0) continue;
        for (int l = 0; l < game.num_actions(); ++l)
            v += triple.signal.kernel[message][e] * triple.response.response[e][l] *
                 game.sender_utility(state, message, l);
    }
    return v;
}

// Every action used by the response must be weakly optimal under one
// common degenerate (state, message) belief.
bool off_path_response_supportable(const GameSpec& game, const EquilibriumTriple& triple,
                                   int realization) {
    std::vector<int> used;
    for (int l = 0; l < game.num_actions(); ++l)
        if (triple.response.response[realization][l] != 0) used.push_back(l);
    for (int i = 0; i < game.num_states(); ++i)
        for (int j = 0; j < game.num_messages(); ++j) {
            bool all_best = true;
            for (int a : used) {
                for (int l = 0; l < game.num_actions() && all_best; ++l)
                    if (game.receiver_utility(i, j, a) < game.receiver_utility(i, j, l))
                        all_best = false;
                if (!all_best) break;
            }
            if (all_best) return true;
        }
    return false;
}

void check_shapes(const GameSpec& game, const EquilibriumTriple& triple) {
    const size_t realizations = triple.signal.realizations.size();
    if (triple.signal.kernel.size() != static_cast<size_t>(game.num_messages()))
        fail(Err::DimensionMismatch, "signal kernel needs one row per message");
    for (const auto& row : triple.signal.kernel)
        if (row.size() != realizations)
            fail(Err::DimensionMismatch, "signal kernel row width mismatch");
    if (triple.response.response.size() != realizations)
        fail(Err::DimensionMismatch, "response needs one row per realization");
    for (const auto& row : triple.response.response)
        if (row.size() != static_cast<size_t>(game.num_actions()))
            fail(Err::DimensionMismatch, "response row width mismatch");
    if (triple.profile.strategy.size() != static_cast<size_t>(game.num_states()))
        fail(Err::DimensionMismatch, "profile needs one row per state");
    for (const auto& row : triple.profile.strategy)
        if (row.size() != static_cast<size_t>(game.num_messages()))
            fail(Err::DimensionMismatch, "profile row width mismatch");
}

}  // namespace

ReceiverStrategy ReceiverStrategy::identity(const GameSpec& game) {
    ReceiverStrategy strategy;
    strategy.response.assign(game.num_actions(),
                             std::vector<Rational>(game.num_actions(), Rational(0)));
    for (int l = 0; l < game.num_actions(); ++l) strategy.response[l][l] = 1;
    return strategy;
}

VerificationReport verify_equilibrium(const GameSpec& game, const Belief& prior,
                                      const EquilibriumTriple& triple) {
    check_shapes(game, triple);
    const int realizations = static_cast<int>(triple.signal.realizations.size());

    VerificationReport report;
    report.ic_ok = true;
    report.sequential_ok = true;
    report.sender_values.assign(game.num_states(), Rational(0));

    // Sender side: every supported message must attain the type's maximum.
    for (int i = 0; i < game.num_states(); ++i) {
        std::vector<Rational> values(game.num_messages());
        for (int j = 0; j < game.num_messages(); ++j)
            values[j] = message_value(game, triple, i, j);
        Rational best = *std::max_element(values.begin(), values.end());
        for (int j = 0; j < game.num_messages(); ++j) {
            report.sender_values[i] += triple.profile.strategy[i][j] * values[j];
            if (triple.profile.strategy[i][j] == 0) continue;
            Rational gap = best - values[j];
            if (gap > 0) {
                report.ic_ok = false;
                if (!report.worst_ic || gap > report.worst_ic->gap)
                    report.worst_ic = IcViolation{i, j, gap};
            }
        }
    }

    // Receiver side: responses supported on best replies at the induced
    // joint (state, message) posterior of each on-path realization.
    for (int e = 0; e < realizations; ++e) {
        Rational mass = 0;
        std::vector<Rational> action_value(game.num_actions(), Rational(0));
        for (int i = 0; i < game.num_states(); ++i)
            for (int j = 0; j < game.num_messages(); ++j) {
                Rational w = prior[i] * triple.profile.strategy[i][j] *
                             triple.signal.kernel[j][e];
                if (w == 0) continue;
                mass += w;
                for (int l = 0; l < game.num_actions(); ++l)
                    action_value[l] += w * game.receiver_utility(i, j, l);
            }
        if (mass > 0) {
            Rational best = *std::max_element(action_value.begin(), action_value.end());
            for (int l = 0; l < game.num_actions(); ++l) {
                if (triple.response.response[e][l] == 0) continue;
                Rational gap = best - action_value[l];  // scaled by mass; sign is what matters
                if (gap > 0) {
                    report.sequential_ok = false;
                    if (!report.worst_sequential || gap > report.worst_sequential->gap)
                        report.worst_sequential = SequentialViolation{e, gap};
                }
            }
        } else {
            bool reachable = false;
            for (int j = 0; j < game.num_messages(); ++j)
                if (triple.signal.kernel[j][e] != 0) reachable = true;
            if (reachable && !off_path_response_supportable(game, triple, e)) {
                report.sequential_ok = false;
                if (!report.worst_sequential)
                    report.worst_sequential = SequentialViolation{e, Rational(0)};
            }
        }
    }

    Rational value = 0;
    for (int i = 0; i < game.num_states(); ++i)
        for (int j = 0; j < game.num_messages(); ++j) {
            if (triple.profile.strategy[i][j] == 0) continue;
            for (int e = 0; e < realizations; ++e) {
                if (triple.signal.kernel[j][e] == 0) continue;
                for (int l = 0; l < game.num_actions(); ++l)
                    value += prior[i] * triple.profile.strategy[i][j] *
                             triple.signal.kernel[j][e] * triple.response.response[e][l] *
                             game.receiver_utility(i, j, l);
            }
        }
    report.receiver_value = value;
    return report;
}

EquilibriumTriple to_direct_signal(const GameSpec& game, const Belief& prior,
                                   const EquilibriumTriple& triple) {
    VerificationReport input = verify_equilibrium(game, prior, triple);
    if (!input.ic_ok || !input.sequential_ok)
        fail(Err::InputNotEquilibrium, "to_direct_signal input does not verify");

    EquilibriumTriple direct;
    direct.signal = Signal::direct(game);
    const int realizations = static_cast<int>(triple.signal.realizations.size());
    for (int j = 0; j < game.num_messages(); ++j)
        for (int e = 0; e < realizations; ++e) {
            if (triple.signal.kernel[j][e] == 0) continue;
            for (int l = 0; l < game.num_actions(); ++l)
                direct.signal.kernel[j][l] +=
                    triple.signal.kernel[j][e] * triple.response.response[e][l];
        }
    direct.profile = triple.profile;
    direct.response = ReceiverStrategy::identity(game);
    return direct;
}

std::pair<Signal, SenderProfile> to_separating(const GameSpec& game, const Belief& /*prior*/,
                                               const Signal& signal,
                                               const SenderProfile& profile) {
    if (!is_cheap_talk(game))
        fail(Err::NotCheapTalk, "separation transform needs a cheap-talk game");
    if (game.num_messages() < game.num_states())
        fail(Err::TooFewMessages, "separation needs at least as many messages as states");
    if (!signal.is_direct(game))
        fail(Err::NonDirectSignal, "separation transform needs a direct signal");

    // IC of the input pair under an obedient receiver.
    const int k = game.num_actions();
    std::vector<std::vector<Rational>> value(game.num_states(),
                                             std::vector<Rational>(game.num_messages(), 0));
    for (int i = 0; i < game.num_states(); ++i)
        for (int j = 0; j < game.num_messages(); ++j)
            for (int l = 0; l < k; ++l)
                value[i][j] += signal.kernel[j][l] * game.sender_utility(i, j, l);
    for (int i = 0; i < game.num_states(); ++i) {
        Rational best = *std::max_element(value[i].begin(), value[i].end());
        for (int j = 0; j < game.num_messages(); ++j)
            if (profile.strategy[i][j] != 0 && value[i][j] != best)
                fail(Err::InputNotIC, "input profile is not incentive compatible");
    }

    Signal separated = Signal::direct(game);
    for (int i = 0; i < game.num_states(); ++i)
        for (int j = 0; j < game.num_messages(); ++j) {
            if (profile.strategy[i][j] == 0) continue;
            for (int l = 0; l < k; ++l)
                separated.kernel[i][l] += profile.strategy[i][j] * signal.kernel[j][l];
        }
    // Columns beyond the assigned block keep their original threats.
    for (int j = game.num_states(); j < game.num_messages(); ++j)
        separated.kernel[j] = signal.kernel[j];

    std::vector<int> assignment(game.num_states());
    for (int i = 0; i < game.num_states(); ++i) assignment[i] = i;
    SenderProfile separating = SenderProfile::pure(assignment, game.num_messages());

    // The construction preserves each type's maximum, so IC must survive.
    for (int i = 0; i < game.num_states(); ++i) {
        std::vector<Rational> post(game.num_messages(), Rational(0));
        for (int j = 0; j < game.num_messages(); ++j)
            for (int l = 0; l < k; ++l)
                post[j] += separated.kernel[j][l] * game.sender_utility(i, j, l);
        Rational best = *std::max_element(post.begin(), post.end());
        if (post[i] != best) throw std::logic_error("separation broke incentive compatibility");
    }
    return {std::move(separated), std::move(separating)};
}

FullTransparencyResult solve_full_transparency_pure(const GameSpec& game, const Belief& prior) {
    const long total = pure_profile_count_checked(game);
    const int t = game.num_messages();
    const int k = game.num_actions();

    // Candidate responses per message when it is off path: pure best
    // replies under some degenerate state belief.
    std::vector<std::vector<int>> off_path_candidates(t);
    for (int j = 0; j < t; ++j) {
        std::vector<bool> seen(k, false);
        for (int i = 0; i < game.num_states(); ++i)
            for (int a : best_actions(game, Belief::degenerate(i, game.num_states()), j))
                seen[a] = true;
        for (int a = 0; a < k; ++a)
            if (seen[a]) off_path_candidates[j].push_back(a);
    }

    bool found = false;
    Rational best_value;
    std::vector<int> best_assignment;
    std::vector<int> best_response;

    for (long index = 0; index < total; ++index) {
        std::vector<int> assignment(game.num_states());
        {
            long rem = index;
            for (int i = 0; i < game.num_states(); ++i) {
                assignment[i] = static_cast<int>(rem % t);
                rem /= t;
            }
        }

        // Response candidates per message: tied best replies at the
        // induced posterior when on path, degenerate-belief replies when
        // off path.
        std::vector<std::vector<int>> candidates(t);
        bool viable = true;
        for (int j = 0; j < t && viable; ++j) {
            Rational mass = 0;
            std::vector<Rational> weight(game.num_states(), Rational(0));
            for (int i = 0; i < game.num_states(); ++i)
                if (assignment[i] == j) {
                    weight[i] = prior[i];
                    mass += prior[i];
                }
            if (mass > 0) {
                for (auto& w : weight) w /= mass;
                candidates[j] = best_actions(game, Belief(weight), j);
            } else {
                candidates[j] = off_path_candidates[j];
                if (candidates[j].empty()) viable = false;
            }
        }
        if (!viable) continue;

        // Walk the response product lexicographically.
        std::vector<int> pick(t, 0);
        for (;;) {
            std::vector<int> response(t);
            for (int j = 0; j < t; ++j) response[j] = candidates[j][pick[j]];

            bool ic = true;
            for (int i = 0; i < game.num_states() && ic; ++i) {
                Rational own = game.sender_utility(i, assignment[i], response[assignment[i]]);
                for (int j = 0; j < t && ic; ++j)
                    if (game.sender_utility(i, j, response[j]) > own) ic = false;
            }
            if (ic) {
                Rational value = 0;
                for (int i = 0; i < game.num_states(); ++i)
                    value += prior[i] *
                             game.receiver_utility(i, assignment[i], response[assignment[i]]);
                if (!found || value > best_value) {
                    found = true;
                    best_value = value;
                    best_assignment = assignment;
                    best_response = response;
                }
            }

            int j = 0;
            while (j < t && ++pick[j] == static_cast<int>(candidates[j].size())) pick[j++] = 0;
            if (j == t) break;
        }
    }

    if (!found)
        fail(Err::NoEquilibriumFound,
             "no pure-profile equilibrium is sustainable under degenerate off-path beliefs");

    FullTransparencyResult result;
    result.value = best_value;
    result.triple.signal = Signal::identity(game);
    result.triple.profile = SenderProfile::pure(best_assignment, t);
    result.triple.response.response.assign(t, std::vector<Rational>(k, Rational(0)));
    for (int j = 0; j < t; ++j) result.triple.response.response[j][best_response[j]] = 1;
    return result;
}

}  // namespace sigdesign
