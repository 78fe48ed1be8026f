#include "sigdesign/design.hpp"

#include "sigdesign/errors.hpp"
#include "sigdesign/scenarios.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace sigdesign;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

FiniteFixture fixture(const char* name) { return std::get<FiniteFixture>(load_scenario(name)); }

// Kernel entry by labels, for readable assertions.
Rational kernel_at(const GameSpec& game, const Signal& s, const char* message,
                   const char* action) {
    return s.kernel[game.message_index(message)][game.action_index(action)];
}

}  // namespace

TEST_CASE("commitment LP for the intra-firm separating profile") {
    FiniteFixture f = fixture("intra-firm");
    SenderProfile profile = SenderProfile::pure({0, 1}, 2);  // thetaG -> I, thetaB -> N
    LinearProgram lp = build_commitment_lp(f.game, f.prior, profile);
    // 4 signal variables, 2 stochasticity rows, 2 IC rows.
    CHECK(lp.objective.size() == 4);
    REQUIRE(lp.constraints.size() == 4);
    CHECK(lp.constraints[2].name == "ic(thetaG vs N)");
    CHECK(lp.constraints[3].name == "ic(thetaB vs I)");

    LPResult r = solve_lp(lp);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.optimal_value == q(5, 6));
    // Variables are ordered (O|I), (C|I), (O|N), (C|N): p = 0, q = 1/2.
    CHECK(r.solution == std::vector<Rational>{q(1), q(0), q(1, 2), q(1, 2)});

    // The paper's S2 inequality: the point p = 0, q = 1 breaks only it.
    auto bad = check_feasible(lp, {q(1), q(0), q(0), q(1)});
    CHECK_FALSE(bad.feasible);
    CHECK(bad.violated_constraints == std::vector<int>{3});
}

TEST_CASE("commitment LP for a single-type game has no deviation rows") {
    RawGame raw;
    raw.states = {"s"};
    raw.messages = {"m"};
    raw.actions = {"a", "b"};
    raw.receiver_entries = {{{"s", "m", "a"}, 1}, {{"s", "m", "b"}, 0}};
    raw.sender_entries = {{{"s", "m", "a"}, 0}, {{"s", "m", "b"}, 1}};
    GameSpec game = validate_game(raw);
    LinearProgram lp =
        build_commitment_lp(game, Belief({q(1)}), SenderProfile::pure({0}, 1));
    CHECK(lp.constraints.size() == 1);  // stochasticity only
    CHECK(solve_lp(lp).optimal_value == 1);
}

TEST_CASE("commitment LP encodes the modified beer-quiche constraints") {
    FiniteFixture f = fixture("beer-quiche-h");
    // Strong type drinks beer, wimp eats quiche.
    SenderProfile profile = SenderProfile::pure({0, 1}, 2);
    LinearProgram lp = build_commitment_lp(f.game, f.prior, profile);
    // Variables: (f|B), (nf|B), (h|B), (f|Q), (nf|Q), (h|Q).
    // S1 for the strong type: 5r + 1 >= 4s, violated at r = 0, s = 1.
    auto s1_violation = check_feasible(lp, {q(0), q(0), q(1), q(0), q(1), q(0)});
    CHECK_FALSE(s1_violation.feasible);
    CHECK(s1_violation.violated_constraints == std::vector<int>{2});
    // S2 for the wimp: 4p + 2 >= 5q, violated at p = 0, q = 1.
    auto s2_violation = check_feasible(lp, {q(0), q(1), q(0), q(1), q(0), q(0)});
    CHECK_FALSE(s2_violation.feasible);
    CHECK(s2_violation.violated_constraints == std::vector<int>{3});
    // The optimal point satisfies both: p=0, r=1, q=2/5, s=0.
    CHECK(check_feasible(lp, {q(0), q(1), q(0), q(2, 5), q(0), q(3, 5)}).feasible);
}

TEST_CASE("build_commitment_lp rejects mixed profiles") {
    FiniteFixture f = fixture("intra-firm");
    SenderProfile mixed;
    mixed.strategy = {{q(1, 2), q(1, 2)}, {q(0), q(1)}};
    CHECK_THROWS_AS(build_commitment_lp(f.game, f.prior, mixed), DomainError);
}

TEST_CASE("intra-firm commitment across the prior regimes") {
    FiniteFixture f = fixture("intra-firm");

    DesignSolution high = solve_commitment(f.game, f.prior);  // mu0 = 2/3
    CHECK(high.value == q(5, 6));
    CHECK(high.profile.assigned_message(0) == f.game.message_index("I"));
    CHECK(high.profile.assigned_message(1) == f.game.message_index("N"));
    CHECK(kernel_at(f.game, high.signal, "I", "C") == q(0));
    CHECK(kernel_at(f.game, high.signal, "N", "C") == q(1, 2));
    CHECK(high.obedience.overall);
    CHECK(high.optima_count == 1);
    // The wimp-state constraint binds: (thetaB vs I).
    REQUIRE(high.binding_ic.size() == 1);
    CHECK(high.binding_ic[0] == std::pair<int, int>{1, 0});

    DesignSolution low = solve_commitment(f.game, Belief({q(1, 4), q(3, 4)}));
    CHECK(low.value == q(7, 8));
    CHECK(kernel_at(f.game, low.signal, "I", "C") == q(1, 2));
    CHECK(kernel_at(f.game, low.signal, "N", "C") == q(1));
    CHECK(low.obedience.overall);
}

TEST_CASE("modified beer-quiche commitment and its disobedient hedge") {
    FiniteFixture f = fixture("beer-quiche-h");
    for (auto [num, den] : {std::pair<long, long>{3, 5}, {3, 4}, {9, 10}}) {
        Belief prior({q(num, den), q(den - num, den)});
        DesignSolution solution = solve_commitment(f.game, prior);
        CHECK(solution.value == (q(7, 5) + q(3, 5) * q(num, den)) / 2);
        CHECK(kernel_at(f.game, solution.signal, "B", "f") == q(0));
        CHECK(kernel_at(f.game, solution.signal, "B", "nf") == q(1));
        CHECK(kernel_at(f.game, solution.signal, "Q", "f") == q(2, 5));
        CHECK(kernel_at(f.game, solution.signal, "Q", "nf") == q(0));
        CHECK(kernel_at(f.game, solution.signal, "Q", "h") == q(3, 5));

        // Obedience fails exactly at the hedge recommendation.
        int h = f.game.action_index("h");
        CHECK_FALSE(solution.obedience.overall);
        CHECK(solution.obedience.status[h] == ObedienceStatus::OnPathViolated);
        CHECK(solution.obedience.status[f.game.action_index("nf")] ==
              ObedienceStatus::OnPathSatisfied);
        // After the hedge the receiver is sure she faces the wimp.
        REQUIRE(solution.obedience.posterior[h].has_value());
        CHECK((*solution.obedience.posterior[h])[f.game.state_index("thetaW")] == 1);
    }
}

TEST_CASE("prop43 commitment value at the three beliefs") {
    FiniteFixture f = fixture("prop43");
    CHECK(solve_commitment(f.game, f.prior).value == q(133, 96));
    CHECK(solve_commitment(f.game, Belief({q(1, 12), q(1, 4), q(2, 3)})).value == q(469, 288));
    CHECK(solve_commitment(f.game, Belief({q(5, 12), q(1, 4), q(1, 3)})).value == q(329, 288));
}

TEST_CASE("check_obedience on the intra-firm optimum: slacks and posterior") {
    FiniteFixture f = fixture("intra-firm");
    DesignSolution solution = solve_commitment(f.game, f.prior);
    ObedienceReport report =
        check_obedience(f.game, f.prior, solution.profile, solution.signal);
    CHECK(report.overall);
    int open = f.game.action_index("O"), close = f.game.action_index("C");
    CHECK(report.slack[open] == q(1, 2));
    CHECK(report.slack[close] == q(1, 6));
    REQUIRE(report.posterior[open].has_value());
    CHECK((*report.posterior[open])[0] == q(4, 5));
    CHECK((*report.posterior[open])[1] == q(1, 5));
}

TEST_CASE("constant signal passes obedience with a supportable off-path action") {
    FiniteFixture f = fixture("intra-firm");
    SenderProfile pooling = SenderProfile::pure({0, 0}, 2);
    Signal constant = Signal::constant(f.game, f.game.action_index("O"));
    ObedienceReport report = check_obedience(f.game, f.prior, pooling, constant);
    CHECK(report.overall);
    CHECK(report.status[f.game.action_index("O")] == ObedienceStatus::OnPathSatisfied);
    // Closing is optimal in the bad state, so the unused recommendation
    // is supportable by a degenerate belief.
    CHECK(report.status[f.game.action_index("C")] == ObedienceStatus::OffPathSupportable);
    CHECK_FALSE(report.posterior[f.game.action_index("C")].has_value());
}

TEST_CASE("check_obedience requires a direct signal") {
    FiniteFixture f = fixture("intra-firm");
    Signal identity = Signal::identity(f.game);
    CHECK_THROWS_AS(
        check_obedience(f.game, f.prior, SenderProfile::pure({0, 1}, 2), identity),
        DomainError);
}

TEST_CASE("transparency solver reproduces the paper's linear programs") {
    FiniteFixture prop43 = fixture("prop43");
    CHECK(solve_transparency_pure(prop43.game, prop43.prior).value == q(67, 52));
    CHECK(solve_transparency_pure(prop43.game, Belief({q(1, 12), q(1, 4), q(2, 3)})).value ==
          q(83, 52));
    CHECK(solve_transparency_pure(prop43.game, Belief({q(5, 12), q(1, 4), q(1, 3)})).value ==
          q(127, 132));

    FiniteFixture intra = fixture("intra-firm");
    DesignSolution t = solve_transparency_pure(intra.game, intra.prior);
    CHECK(t.value == q(5, 6));
    CHECK(t.obedience.overall);
    CHECK(t.mode == SolveMode::TransparencyPure);
}

TEST_CASE("prop22 with two messages: partial pooling beats full pooling") {
    // The source text asserts the pure-profile optimum with two messages
    // is the pooling payoff 5/4. The profile sending L and M to one
    // message with the receiver playing s after it, and H to the other
    // with l after it, is incentive compatible (every message pays 1),
    // obeys both on-path recommendations, and is worth
    //   1/4*13/24 + 1/4*13/24 + 1/2*2 = 61/48 > 5/4.
    // See the matching equilibrium-verification test; the solver agrees.
    FiniteFixture f = fixture("prop22");
    DesignSolution t = solve_transparency_pure(f.game, f.prior);
    CHECK(t.value == q(61, 48));
    CHECK(t.value > q(5, 4));
    CHECK(t.obedience.overall);
    CHECK(pooling_value(f.game, f.prior).value == q(5, 4));
}

TEST_CASE("opacity gaps on the three flagship fixtures") {
    FiniteFixture intra = fixture("intra-firm");
    OpacityGap gap = opacity_gap(intra.game, intra.prior);
    CHECK(gap.commitment == q(5, 6));
    CHECK(gap.transparency_pure == q(5, 6));
    CHECK(gap.equal);
    CHECK(gap.theorem_applies);

    FiniteFixture bq = fixture("beer-quiche-h");
    OpacityGap bq_gap = opacity_gap(bq.game, bq.prior);
    CHECK(bq_gap.commitment == q(37, 40));
    CHECK(bq_gap.transparency_pure < bq_gap.commitment);
    CHECK_FALSE(bq_gap.equal);
    CHECK_FALSE(bq_gap.theorem_applies);  // three actions
    CHECK(bq_gap.transparency_pure >= q(3, 4));  // at least pooling

    FiniteFixture prop43 = fixture("prop43");
    OpacityGap prop_gap = opacity_gap(prop43.game, prop43.prior);
    CHECK(prop_gap.commitment == q(133, 96));
    CHECK(prop_gap.transparency_pure == q(67, 52));
    CHECK_FALSE(prop_gap.equal);
    CHECK_FALSE(prop_gap.theorem_applies);
}

TEST_CASE("profile enumeration limit trips at ten-to-the-seventh") {
    const int n = 7, t = 10;
    std::vector<Rational> ur, us;
    for (int i = 0; i < n * t * 2; ++i) {
        ur.push_back(q(i % 3));
        us.push_back(q((i * 7) % 5));
    }
    GameSpec game(testgen::labels("s", n), testgen::labels("m", t), testgen::labels("a", 2),
                  std::move(ur), std::move(us));
    std::vector<Rational> w(n, q(1, n));
    try {
        solve_commitment(game, Belief(std::move(w)));
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.code() == Err::ProfileLimitExceeded);
    }
}

TEST_CASE("theorem 3.3 as a property: obedience holds at two-action simple optima") {
    std::mt19937_64 rng(73001);
    for (int trial = 0; trial < 80; ++trial) {
        GameSpec game =
            testgen::random_simple_game(rng, testgen::random_shape(rng, 4, 4, 2, 1, 1, 2));
        Belief prior = testgen::random_prior(rng, game.num_states());
        DesignSolution solution = solve_commitment(game, prior);
        CHECK(solution.obedience.overall);

        // Pooling is always feasible, so the optimum dominates it.
        CHECK(solution.value >= pooling_value(game, prior).value);

        // Transparency equals commitment here, and never exceeds it anywhere.
        DesignSolution transparency = solve_transparency_pure(game, prior);
        CHECK(transparency.value == solution.value);
        CHECK(transparency.obedience.overall);
    }
}

TEST_CASE("two-action slack identity: margin equals value minus the other pool") {
    std::mt19937_64 rng(5150);
    int informative = 0;
    for (int trial = 0; trial < 60; ++trial) {
        GameSpec game =
            testgen::random_simple_game(rng, testgen::random_shape(rng, 3, 3, 2, 2, 2, 2));
        Belief prior = testgen::random_prior(rng, game.num_states());
        DesignSolution solution = solve_commitment(game, prior);

        Rational pool_a0 = 0, pool_a1 = 0;
        for (int i = 0; i < game.num_states(); ++i) {
            pool_a0 += prior[i] * game.receiver_utility(i, 0, 0);
            pool_a1 += prior[i] * game.receiver_utility(i, 0, 1);
        }
        if (solution.obedience.posterior[0] && solution.obedience.posterior[1]) {
            CHECK(solution.obedience.slack[0] == solution.value - pool_a1);
            CHECK(solution.obedience.slack[1] == solution.value - pool_a0);
        }
        // Strictly informative optima have strictly positive slacks.
        if (solution.value > pool_a0 && solution.value > pool_a1) {
            ++informative;
            CHECK(solution.obedience.slack[0] > 0);
            CHECK(solution.obedience.slack[1] > 0);
        }
    }
    CHECK(informative > 5);
}

TEST_CASE("condition 1 with aligned favorites keeps obedience at the optimum") {
    std::mt19937_64 rng(99120);
    std::uniform_int_distribution<int> drop(0, 3);
    for (int trial = 0; trial < 60; ++trial) {
        // Two-action non-simple game: message m0 is best for the receiver
        // everywhere, every sender type likes m0 best action by action,
        // and each action is strictly optimal in some state.
        auto shape = testgen::random_shape(rng, 3, 3, 2, 2, 2, 2);
        std::vector<Rational> rbase(static_cast<size_t>(shape.states) * 2);
        for (auto& v : rbase) v = testgen::small_rational(rng);
        rbase[0] = rbase[1] + 1;                                        // state 0 wants a0
        rbase[(shape.states - 1) * 2 + 1] = rbase[(shape.states - 1) * 2] + 1;  // last wants a1

        std::vector<Rational> ur(static_cast<size_t>(shape.states) * shape.messages * 2);
        std::vector<Rational> us(ur.size());
        for (int i = 0; i < shape.states; ++i) {
            std::vector<Rational> sbase{testgen::small_rational(rng),
                                        testgen::small_rational(rng)};
            for (int j = 0; j < shape.messages; ++j) {
                // The receiver's drop is shared by both actions so the
                // per-state action preference is message-independent.
                Rational rdrop = j == 0 ? Rational(0) : Rational(drop(rng), 2);
                for (int l = 0; l < 2; ++l) {
                    Rational sdrop = j == 0 ? Rational(0) : Rational(drop(rng), 2);
                    size_t cell = (static_cast<size_t>(i) * shape.messages + j) * 2 + l;
                    ur[cell] = rbase[i * 2 + l] - rdrop;
                    us[cell] = sbase[l] - sdrop;
                }
            }
        }
        GameSpec game(testgen::labels("s", shape.states), testgen::labels("m", shape.messages),
                      testgen::labels("a", 2), std::move(ur), std::move(us));

        ConditionReport report = classify_game(game);
        REQUIRE(report.condition1);
        CHECK(report.favorite_message == "m0");

        Belief prior = testgen::random_prior(rng, game.num_states());
        DesignSolution solution = solve_commitment(game, prior);
        CHECK(solution.obedience.overall);
    }
}

TEST_CASE("solutions re-validate: IC exactly holds at returned optima") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
        GameSpec game =
            testgen::random_simple_game(rng, testgen::random_shape(rng, 3, 3, 3, 1, 1, 2));
        Belief prior = testgen::random_prior(rng, game.num_states());
        for (bool transparency : {false, true}) {
            DesignSolution solution = transparency ? solve_transparency_pure(game, prior)
                                                   : solve_commitment(game, prior);
            CHECK(design_value(game, prior, solution.profile, solution.signal) == solution.value);
            // Sender IC at the returned signal.
            for (int i = 0; i < game.num_states(); ++i) {
                int mine = solution.profile.assigned_message(i);
                Rational own = 0;
                for (int l = 0; l < game.num_actions(); ++l)
                    own += solution.signal.kernel[mine][l] * game.sender_utility(i, mine, l);
                for (int j = 0; j < game.num_messages(); ++j) {
                    Rational alt = 0;
                    for (int l = 0; l < game.num_actions(); ++l)
                        alt += solution.signal.kernel[j][l] * game.sender_utility(i, j, l);
                    CHECK(own >= alt);
                }
            }
            if (transparency) CHECK(solution.obedience.overall);
            CHECK(solve_commitment(game, prior).value >= solution.value);
        }
    }
}
