#pragma once

#include "sigdesign/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace sigdesign {

// Finite signaling game: states Theta, messages M, actions A, and both
// players' utility tables on Theta x M x A. Immutable after validation.
class GameSpec {
  public:
    GameSpec(std::vector<std::string> states, std::vector<std::string> messages,
             std::vector<std::string> actions, std::vector<Rational> receiver_utility,
             std::vector<Rational> sender_utility);

    int num_states() const { return static_cast<int>(states_.size()); }
    int num_messages() const { return static_cast<int>(messages_.size()); }
    int num_actions() const { return static_cast<int>(actions_.size()); }

    const std::vector<std::string>& states() const { return states_; }
    const std::vector<std::string>& messages() const { return messages_; }
    const std::vector<std::string>& actions() const { return actions_; }

    const Rational& receiver_utility(int state, int message, int action) const {
        return receiver_utility_[index(state, message, action)];
    }
    const Rational& sender_utility(int state, int message, int action) const {
        return sender_utility_[index(state, message, action)];
    }

    int state_index(const std::string& label) const;
    int message_index(const std::string& label) const;
    int action_index(const std::string& label) const;

    bool operator==(const GameSpec& other) const = default;

  private:
    int index(int state, int message, int action) const {
        return (state * static_cast<int>(messages_.size()) + message) *
                   static_cast<int>(actions_.size()) +
               action;
    }

    std::vector<std::string> states_, messages_, actions_;
    std::vector<Rational> receiver_utility_, sender_utility_;
};

// Unvalidated game description, as produced by the file parser. Utility
// entries are keyed by labels; for a simple receiver table the message
// key is the empty string.
struct RawGame {
    std::vector<std::string> states, messages, actions;
    bool simple_receiver = false;
    std::map<std::tuple<std::string, std::string, std::string>, Rational> receiver_entries;
    std::map<std::tuple<std::string, std::string, std::string>, Rational> sender_entries;
};

// Checks label uniqueness, non-empty axes and table totality, then
// produces the dense validated spec.
GameSpec validate_game(const RawGame& raw);

// Probability vector over the game's states, exact and summing to one.
class Belief {
  public:
    explicit Belief(std::vector<Rational> weights);
    static Belief degenerate(int state, int num_states);

    int size() const { return static_cast<int>(weights_.size()); }
    const Rational& operator[](int i) const { return weights_[i]; }
    const std::vector<Rational>& weights() const { return weights_; }

    bool operator==(const Belief& other) const = default;

  private:
    std::vector<Rational> weights_;
};

struct ConditionReport {
    bool is_simple = false;
    bool is_cheap_talk = false;
    bool condition1 = false;
    bool strong_condition = false;
    std::optional<std::string> favorite_message;
};

struct PoolingResult {
    Rational value;
    int action;
};

// Best payoff from acting on the belief alone; ties broken by action order.
// Non-simple games must name the message the utilities are read at.
PoolingResult pooling_value(const GameSpec& game, const Belief& belief,
                            std::optional<int> reference_message = std::nullopt);

// All actions attaining the maximal expected receiver utility at the
// belief. The message argument is required when the game is not simple.
std::vector<int> best_actions(const GameSpec& game, const Belief& belief,
                              std::optional<int> message = std::nullopt);

ConditionReport classify_game(const GameSpec& game);

bool is_simple(const GameSpec& game);
bool is_cheap_talk(const GameSpec& game);

}  // namespace sigdesign
