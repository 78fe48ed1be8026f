#pragma once

#include "sigdesign/design.hpp"
#include "sigdesign/game.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sigdesign {

// Receiver behavioral strategy over signal realizations.
struct ReceiverStrategy {
    std::vector<std::vector<Rational>> response;  // [realization][action]

    static ReceiverStrategy identity(const GameSpec& game);  // follow recommendations
};

struct EquilibriumTriple {
    Signal signal;
    SenderProfile profile;
    ReceiverStrategy response;
};

struct IcViolation {
    int state;
    int message;  // supported message that fails to attain the type's maximum
    Rational gap;
};

struct SequentialViolation {
    int realization;
    Rational gap;
};

struct VerificationReport {
    bool ic_ok = false;
    std::optional<IcViolation> worst_ic;
    bool sequential_ok = false;
    std::optional<SequentialViolation> worst_sequential;
    Rational receiver_value;
    std::vector<Rational> sender_values;  // per state
};

// Exact incentive-compatibility and sequential-rationality audit of an
// arbitrary triple. Off-path realizations that some message can still
// trigger are screened against degenerate (state, message) beliefs.
VerificationReport verify_equilibrium(const GameSpec& game, const Belief& prior,
                                      const EquilibriumTriple& triple);

// Collapses realizations into action recommendations: the direct kernel
// composes the signal with the response, the receiver then obeys.
// Payoffs and equilibrium status are preserved.
EquilibriumTriple to_direct_signal(const GameSpec& game, const Belief& prior,
                                   const EquilibriumTriple& triple);

// Cheap-talk separation: type i moves to message i, garbling its old
// mixture into the signal column. Receiver and per-type values survive.
std::pair<Signal, SenderProfile> to_separating(const GameSpec& game, const Belief& prior,
                                               const Signal& signal, const SenderProfile& profile);

struct FullTransparencyResult {
    Rational value;
    EquilibriumTriple triple;
};

// Best pure-profile equilibrium of the ungarbled game: the receiver sees
// the message itself, on-path responses run over tied best replies and
// off-path responses over degenerate-belief best replies. A lower bound
// on the receiver-optimal equilibrium value (sender mixing excluded).
FullTransparencyResult solve_full_transparency_pure(const GameSpec& game, const Belief& prior);

}  // namespace sigdesign
