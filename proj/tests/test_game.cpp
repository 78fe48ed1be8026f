#include "sigdesign/game.hpp"

#include "sigdesign/errors.hpp"
#include "sigdesign/scenarios.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace sigdesign;

namespace {

RawGame intra_firm_raw() {
    RawGame raw;
    raw.states = {"thetaG", "thetaB"};
    raw.messages = {"I", "N"};
    raw.actions = {"O", "C"};
    raw.simple_receiver = true;
    raw.receiver_entries = {
        {{"thetaG", "", "O"}, 1}, {{"thetaG", "", "C"}, 0},
        {{"thetaB", "", "O"}, 0}, {{"thetaB", "", "C"}, 1},
    };
    raw.sender_entries = {
        {{"thetaG", "I", "O"}, 3}, {{"thetaG", "I", "C"}, 1},
        {{"thetaG", "N", "O"}, 2}, {{"thetaG", "N", "C"}, 0},
        {{"thetaB", "I", "O"}, 2}, {{"thetaB", "I", "C"}, 0},
        {{"thetaB", "N", "O"}, 3}, {{"thetaB", "N", "C"}, 1},
    };
    return raw;
}

GameSpec fixture_game(const char* name) {
    return std::get<FiniteFixture>(load_scenario(name)).game;
}

}  // namespace

TEST_CASE("rationals parse and stay canonical") {
    CHECK(parse_rational("2/3") == Rational(2, 3));
    CHECK(parse_rational("-4/6") == Rational(-2, 3));
    CHECK(parse_rational("0.75") == Rational(3, 4));
    CHECK(parse_rational(" 13 ") == Rational(13));
    CHECK(parse_rational("0.6") == Rational(3, 5));
    CHECK(format_rational(Rational(6, 8)) == "3/4");
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("a/b"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
}

TEST_CASE("validate_game accepts the intra-firm table") {
    GameSpec game = validate_game(intra_firm_raw());
    CHECK(game.num_states() == 2);
    CHECK(game.receiver_utility(0, 0, 0) == 1);
    CHECK(game.receiver_utility(0, 1, 0) == 1);  // simple table replicated over messages
    CHECK(game.sender_utility(1, 1, 1) == 1);    // (thetaB, N, C)
    CHECK(game == fixture_game("intra-firm"));
}

TEST_CASE("validate_game rejects broken inputs") {
    SUBCASE("missing sender cell") {
        RawGame raw = intra_firm_raw();
        raw.sender_entries.erase({"thetaB", "I", "C"});
        CHECK_THROWS_WITH_AS(validate_game(raw),
                             doctest::Contains("sender_utility entry missing"), DomainError);
    }
    SUBCASE("duplicate label") {
        RawGame raw = intra_firm_raw();
        raw.messages = {"I", "I"};
        try {
            validate_game(raw);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(e.code() == Err::DuplicateLabel);
        }
    }
    SUBCASE("empty axis") {
        RawGame raw = intra_firm_raw();
        raw.actions.clear();
        try {
            validate_game(raw);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(e.code() == Err::EmptyAxis);
        }
    }
}

TEST_CASE("degenerate one-by-one game validates") {
    RawGame raw;
    raw.states = {"s"};
    raw.messages = {"m"};
    raw.actions = {"a"};
    raw.receiver_entries[{"s", "m", "a"}] = Rational(1, 2);
    raw.sender_entries[{"s", "m", "a"}] = 0;
    GameSpec game = validate_game(raw);
    CHECK(game.num_messages() == 1);
    CHECK(pooling_value(game, Belief({Rational(1)})).value == Rational(1, 2));
}

TEST_CASE("belief invariants") {
    CHECK_THROWS_AS(Belief({Rational(1, 2), Rational(1, 3)}), DomainError);
    CHECK_THROWS_AS(Belief({Rational(3, 2), Rational(-1, 2)}), DomainError);
    Belief b({Rational(2, 3), Rational(1, 3)});
    CHECK(b[0] == Rational(2, 3));
}

TEST_CASE("pooling value on paper fixtures") {
    GameSpec intra = fixture_game("intra-firm");
    auto [value, action] = pooling_value(intra, Belief({Rational(2, 3), Rational(1, 3)}));
    CHECK(value == Rational(2, 3));
    CHECK(intra.actions()[action] == "O");

    GameSpec prop = fixture_game("prop22");
    auto pool = pooling_value(prop, Belief({Rational(1, 4), Rational(1, 4), Rational(1, 2)}));
    CHECK(pool.value == Rational(5, 4));
    CHECK(prop.actions()[pool.action] == "l");
}

TEST_CASE("pooling on a degenerate prior maximizes the single state") {
    GameSpec game = fixture_game("beer-quiche-h");
    auto pool = pooling_value(game, Belief::degenerate(1, 2));  // the wimp state
    CHECK(pool.value == Rational(1));
    CHECK(game.actions()[pool.action] == "f");
}

TEST_CASE("pooling on a non-simple game needs a reference message") {
    GameSpec four = fixture_game("four-state");
    // Make a non-simple variant by perturbing one receiver cell.
    std::vector<Rational> ur, us;
    for (int i = 0; i < four.num_states(); ++i)
        for (int j = 0; j < four.num_messages(); ++j)
            for (int l = 0; l < four.num_actions(); ++l) {
                ur.push_back(four.receiver_utility(i, j, l) + (j == 2 ? Rational(1, 7) : 0));
                us.push_back(four.sender_utility(i, j, l));
            }
    GameSpec bent(four.states(), four.messages(), four.actions(), ur, us);
    Belief prior({Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
    CHECK_THROWS_AS(pooling_value(bent, prior), DomainError);
    CHECK(pooling_value(bent, prior, 2).value ==
          pooling_value(four, prior).value + Rational(1, 7));
}

TEST_CASE("best actions at paper beliefs") {
    GameSpec intra = fixture_game("intra-firm");
    CHECK(best_actions(intra, Belief({Rational(4, 5), Rational(1, 5)})) == std::vector<int>{0});
    CHECK(best_actions(intra, Belief({Rational(0), Rational(1)})) == std::vector<int>{1});
    CHECK(best_actions(intra, Belief({Rational(1, 2), Rational(1, 2)})) ==
          std::vector<int>{0, 1});
}

TEST_CASE("classification of the fixtures") {
    ConditionReport intra = classify_game(fixture_game("intra-firm"));
    CHECK(intra.is_simple);
    CHECK_FALSE(intra.is_cheap_talk);
    CHECK(intra.condition1);
    CHECK(intra.strong_condition);
    CHECK(intra.favorite_message == "I");  // any message qualifies; first by order

    ConditionReport prop = classify_game(fixture_game("prop22"));
    CHECK(prop.is_simple);
    CHECK(prop.is_cheap_talk);

    ConditionReport bq = classify_game(fixture_game("beer-quiche-h"));
    CHECK(bq.is_simple);
    CHECK_FALSE(bq.is_cheap_talk);
}

TEST_CASE("discretized regime-change game satisfies the strong condition") {
    // Two frictions levels by two news realizations; receiver utility
    // depends on the action, the state and the friction level r.
    std::vector<std::string> states{"xb", "xg"};
    std::vector<std::string> messages{"r0.6+G", "r0.6+B", "r0.7+G", "r0.7+B"};
    std::vector<std::string> actions{"attack", "wait"};
    const Rational r[4] = {Rational(3, 5), Rational(3, 5), Rational(7, 10), Rational(7, 10)};
    std::vector<Rational> ur, us;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j)
            for (int l = 0; l < 2; ++l) {
                // Successful attacks pay 1 - r against the bad type, fail
                // at -r against the good type; waiting pays zero.
                ur.push_back(l == 1 ? Rational(0) : (i == 0 ? 1 - r[j] : -r[j]));
                us.push_back(i == 0 ? (l == 0 ? -r[j] : 1 - r[j]) : (2 - r[j]));
            }
    GameSpec game(states, messages, actions, std::move(ur), std::move(us));
    ConditionReport report = classify_game(game);
    CHECK_FALSE(report.is_simple);
    CHECK(report.condition1);
    CHECK(report.strong_condition);
    CHECK(report.favorite_message == "r0.6+G");  // lowest frictions come first
}

TEST_CASE("classification invariants on random games") {
    std::mt19937_64 rng(20240517);
    for (int trial = 0; trial < 60; ++trial) {
        GameSpec game = testgen::random_simple_game(rng, testgen::random_shape(rng, 3, 3, 3));
        ConditionReport report = classify_game(game);
        CHECK(report.is_simple);
        CHECK(report.condition1);  // simple implies condition 1
        CHECK(report.strong_condition);

        // Simple games answer best_actions identically under every message.
        Belief prior = testgen::random_prior(rng, game.num_states());
        auto base = best_actions(game, prior, 0);
        for (int j = 1; j < game.num_messages(); ++j) CHECK(best_actions(game, prior, j) == base);

        // Pooling agrees with the per-action evaluations done directly.
        auto pool = pooling_value(game, prior);
        Rational best;
        bool first = true;
        for (int l = 0; l < game.num_actions(); ++l) {
            Rational v = 0;
            for (int i = 0; i < game.num_states(); ++i)
                v += prior[i] * game.receiver_utility(i, 0, l);
            if (first || v > best) {
                best = v;
                first = false;
            }
        }
        CHECK(pool.value == best);
        CHECK_FALSE(best_actions(game, prior).empty());
    }
}

TEST_CASE("strong condition implies condition1 on random non-simple games") {
    std::mt19937_64 rng(886);
    int strong_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        GameSpec game = testgen::random_game(rng, testgen::random_shape(rng, 3, 3, 3));
        ConditionReport report = classify_game(game);
        if (report.strong_condition) {
            ++strong_seen;
            CHECK(report.condition1);
        }
        if (report.condition1) CHECK(report.favorite_message.has_value());
    }
    CHECK(strong_seen > 0);  // the generator hits the case
}
