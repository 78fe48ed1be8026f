#pragma once

#include "sigdesign/game.hpp"
#include "sigdesign/lp.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sigdesign {

// Behavioral sender strategy: one distribution over messages per state.
struct SenderProfile {
    std::vector<std::vector<Rational>> strategy;  // [state][message]

    static SenderProfile pure(const std::vector<int>& message_of_state, int num_messages);
    bool is_pure() const;
    // Message carrying all mass for the state; requires a pure row.
    int assigned_message(int state) const;
};

// Stochastic map from messages to signal realizations. A direct signal's
// realizations are exactly the game's actions, in order.
struct Signal {
    std::vector<std::string> realizations;
    std::vector<std::vector<Rational>> kernel;  // [message][realization]

    static Signal direct(const GameSpec& game);  // kernel zero-initialized
    static Signal constant(const GameSpec& game, int action);
    static Signal identity(const GameSpec& game);  // realizations = messages
    bool is_direct(const GameSpec& game) const;
};

enum class SolveMode { Commitment, TransparencyPure };

enum class ObedienceStatus {
    OnPathSatisfied,
    OnPathViolated,
    OffPathSupportable,
    OffPathUnsupportable,
};

struct ObedienceReport {
    std::vector<ObedienceStatus> status;  // per recommendation (action index)
    std::vector<Rational> slack;          // worst deviation margin per recommendation
    // State-marginal posterior given each on-path recommendation.
    std::vector<std::optional<Belief>> posterior;
    bool overall = false;
};

struct DesignSolution {
    SenderProfile profile;
    Signal signal;  // direct
    Rational value;
    SolveMode mode = SolveMode::Commitment;
    std::vector<std::pair<int, int>> binding_ic;  // (state, deviation message)
    ObedienceReport obedience;
    // Number of pure profiles attaining the optimal value (1 when the
    // dominant-action shortcut skipped enumeration).
    long optima_count = 0;
};

// LP over the direct-signal entries pi(action|message) for a fixed pure
// profile: objective is the receiver's expected utility, constraints are
// row stochasticity plus one IC row per (state, deviation message).
LinearProgram build_commitment_lp(const GameSpec& game, const Belief& prior,
                                  const SenderProfile& profile);

// Exact maximum over all pure sender profiles of the commitment LP.
DesignSolution solve_commitment(const GameSpec& game, const Belief& prior);

// On-path obedience margins for every recommendation of a direct signal,
// with pure state/message supportability screening for off-path ones.
ObedienceReport check_obedience(const GameSpec& game, const Belief& prior,
                                const SenderProfile& profile, const Signal& signal);

// Commitment enumeration with the on-path obedience rows added to every
// LP and off-path recommendations screened for supportability. Exact for
// two-action simple games and for cheap-talk games with enough messages;
// otherwise a lower bound on the receiver-optimal transparency value.
DesignSolution solve_transparency_pure(const GameSpec& game, const Belief& prior);

struct OpacityGap {
    Rational commitment;
    Rational transparency_pure;
    bool equal = false;
    bool theorem_applies = false;  // two actions and simple
};

OpacityGap opacity_gap(const GameSpec& game, const Belief& prior);

// Receiver value of (profile, direct signal) under an obedient receiver.
Rational design_value(const GameSpec& game, const Belief& prior, const SenderProfile& profile,
                      const Signal& signal);

// Enumeration guard shared by the profile-search solvers.
long pure_profile_count_checked(const GameSpec& game);

}  // namespace sigdesign
