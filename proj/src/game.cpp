#include "sigdesign/game.hpp"

#include "sigdesign/errors.hpp"

#include <algorithm>
#include <set>

namespace sigdesign {

namespace {

int find_label(const std::vector<std::string>& labels, const std::string& label,
               const char* axis) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) fail(Err::UnknownLabel, std::string("unknown ") + axis + ": " + label);
    return static_cast<int>(it - labels.begin());
}

void check_axis(const std::vector<std::string>& labels, const char* axis) {
    if (labels.empty()) fail(Err::EmptyAxis, std::string("empty axis: ") + axis);
    std::set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            fail(Err::DuplicateLabel, std::string("duplicate ") + axis + " label: " + l);
}

}  // namespace

GameSpec::GameSpec(std::vector<std::string> states, std::vector<std::string> messages,
                   std::vector<std::string> actions, std::vector<Rational> receiver_utility,
                   std::vector<Rational> sender_utility)
    : states_(std::move(states)),
      messages_(std::move(messages)),
      actions_(std::move(actions)),
      receiver_utility_(std::move(receiver_utility)),
      sender_utility_(std::move(sender_utility)) {
    check_axis(states_, "state");
    check_axis(messages_, "message");
    check_axis(actions_, "action");
    const size_t cells = states_.size() * messages_.size() * actions_.size();
    if (receiver_utility_.size() != cells || sender_utility_.size() != cells)
        fail(Err::MissingUtilityEntry, "utility tables must cover all state/message/action cells");
}

int GameSpec::state_index(const std::string& label) const {
    return find_label(states_, label, "state");
}
int GameSpec::message_index(const std::string& label) const {
    return find_label(messages_, label, "message");
}
int GameSpec::action_index(const std::string& label) const {
    return find_label(actions_, label, "action");
}

GameSpec validate_game(const RawGame& raw) {
    check_axis(raw.states, "state");
    check_axis(raw.messages, "message");
    check_axis(raw.actions, "action");

    const int n = static_cast<int>(raw.states.size());
    const int t = static_cast<int>(raw.messages.size());
    const int k = static_cast<int>(raw.actions.size());
    std::vector<Rational> ur(static_cast<size_t>(n) * t * k);
    std::vector<Rational> us(static_cast<size_t>(n) * t * k);

    auto lookup = [&](const std::map<std::tuple<std::string, std::string, std::string>, Rational>&
                          entries,
                      const std::string& table, const std::string& state,
                      const std::string& message, const std::string& action) {
        auto it = entries.find({state, message, action});
        if (it == entries.end())
            fail(Err::MissingUtilityEntry,
                 table + " entry missing for (" + state + ", " + message + ", " + action + ")");
        return it->second;
    };

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < t; ++j)
            for (int l = 0; l < k; ++l) {
                const size_t cell = (static_cast<size_t>(i) * t + j) * k + l;
                const std::string& msg_key = raw.simple_receiver ? std::string() : raw.messages[j];
                ur[cell] = lookup(raw.receiver_entries, "receiver_utility", raw.states[i], msg_key,
                                  raw.actions[l]);
                us[cell] = lookup(raw.sender_entries, "sender_utility", raw.states[i],
                                  raw.messages[j], raw.actions[l]);
            }

    return GameSpec(raw.states, raw.messages, raw.actions, std::move(ur), std::move(us));
}

Belief::Belief(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) fail(Err::BadBelief, "belief has no states");
    Rational sum = 0;
    for (const auto& w : weights_) {
        if (w < 0) fail(Err::BadBelief, "belief weight is negative");
        sum += w;
    }
    if (sum != 1) fail(Err::BadBelief, "belief weights sum to " + format_rational(sum));
}

Belief Belief::degenerate(int state, int num_states) {
    std::vector<Rational> w(num_states, Rational(0));
    w[state] = 1;
    return Belief(std::move(w));
}

bool is_simple(const GameSpec& game) {
    for (int i = 0; i < game.num_states(); ++i)
        for (int l = 0; l < game.num_actions(); ++l)
            for (int j = 1; j < game.num_messages(); ++j)
                if (game.receiver_utility(i, j, l) != game.receiver_utility(i, 0, l)) return false;
    return true;
}

bool is_cheap_talk(const GameSpec& game) {
    for (int i = 0; i < game.num_states(); ++i)
        for (int l = 0; l < game.num_actions(); ++l)
            for (int j = 1; j < game.num_messages(); ++j)
                if (game.sender_utility(i, j, l) != game.sender_utility(i, 0, l)) return false;
    return true;
}

PoolingResult pooling_value(const GameSpec& game, const Belief& belief,
                            std::optional<int> reference_message) {
    if (belief.size() != game.num_states()) fail(Err::BadBelief, "belief/state count mismatch");
    int message = 0;
    if (reference_message)
        message = *reference_message;
    else if (!is_simple(game))
        fail(Err::NotSimpleWithoutReferenceMessage,
             "pooling_value on a non-simple game needs a reference message");

    PoolingResult best{Rational(0), -1};
    for (int l = 0; l < game.num_actions(); ++l) {
        Rational v = 0;
        for (int i = 0; i < game.num_states(); ++i)
            v += belief[i] * game.receiver_utility(i, message, l);
        if (best.action < 0 || v > best.value) best = {v, l};
    }
    return best;
}

std::vector<int> best_actions(const GameSpec& game, const Belief& belief,
                              std::optional<int> message) {
    if (belief.size() != game.num_states()) fail(Err::BadBelief, "belief/state count mismatch");
    int j = 0;
    if (message)
        j = *message;
    else if (!is_simple(game))
        fail(Err::NotSimpleWithoutReferenceMessage,
             "best_actions on a non-simple game needs a message");

    std::vector<Rational> values(game.num_actions(), Rational(0));
    for (int l = 0; l < game.num_actions(); ++l)
        for (int i = 0; i < game.num_states(); ++i)
            values[l] += belief[i] * game.receiver_utility(i, j, l);
    Rational top = *std::max_element(values.begin(), values.end());
    std::vector<int> result;
    for (int l = 0; l < game.num_actions(); ++l)
        if (values[l] == top) result.push_back(l);
    return result;
}

ConditionReport classify_game(const GameSpec& game) {
    ConditionReport report;
    report.is_simple = is_simple(game);
    report.is_cheap_talk = is_cheap_talk(game);

    // m weakly dominates m' when the receiver prefers it in every state
    // for every action.
    auto dominates = [&](int m, int m_prime) {
        for (int i = 0; i < game.num_states(); ++i)
            for (int l = 0; l < game.num_actions(); ++l)
                if (game.receiver_utility(i, m, l) < game.receiver_utility(i, m_prime, l))
                    return false;
        return true;
    };

    for (int m = 0; m < game.num_messages(); ++m) {
        bool favorite = true;
        for (int other = 0; other < game.num_messages() && favorite; ++other)
            if (!dominates(m, other)) favorite = false;
        if (favorite) {
            report.condition1 = true;
            report.favorite_message = game.messages()[m];
            break;
        }
    }

    // Strong form: the dominance relation totally orders the messages.
    report.strong_condition = true;
    for (int a = 0; a < game.num_messages() && report.strong_condition; ++a)
        for (int b = a + 1; b < game.num_messages() && report.strong_condition; ++b)
            if (!dominates(a, b) && !dominates(b, a)) report.strong_condition = false;

    return report;
}

}  // namespace sigdesign
