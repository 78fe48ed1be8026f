#include "sigdesign/scenarios.hpp"

#include "sigdesign/errors.hpp"
#include "sigdesign/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sigdesign {

namespace {

using Table = std::vector<Rational>;

// Dense state-by-message-by-action table from per-cell callbacks.
template <typename F>
Table make_table(int n, int t, int k, F&& cell) {
    Table table;
    table.reserve(static_cast<size_t>(n) * t * k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < t; ++j)
            for (int l = 0; l < k; ++l) table.push_back(cell(i, j, l));
    return table;
}

Rational q(long num, long den = 1) { return Rational(num, den); }

FiniteFixture make_intra_firm() {
    std::vector<std::string> states{"thetaG", "thetaB"};
    std::vector<std::string> messages{"I", "N"};
    std::vector<std::string> actions{"O", "C"};
    // Receiver matches the state: keep open when viable, close when not.
    Table ur = make_table(2, 2, 2, [](int i, int, int l) {
        return (i == 0) == (l == 0) ? q(1) : q(0);
    });
    // Manager's (message, action) payoffs per state, §-table rows
    // (I,O) (I,C) (N,O) (N,C):  good 3 1 2 0,  bad 2 0 3 1.
    const long us_good[2][2] = {{3, 1}, {2, 0}};
    const long us_bad[2][2] = {{2, 0}, {3, 1}};
    Table us = make_table(2, 2, 2, [&](int i, int j, int l) {
        return q(i == 0 ? us_good[j][l] : us_bad[j][l]);
    });
    GameSpec game(states, messages, actions, std::move(ur), std::move(us));
    return {"intra-firm",
            game,
            Belief({q(2, 3), q(1, 3)}),
            {{"commitment", q(5, 6)},
             {"transparency", q(5, 6)},
             {"full", q(2, 3)},
             {"pooling", q(2, 3)}}};
}

FiniteFixture make_beer_quiche_h() {
    std::vector<std::string> states{"thetaS", "thetaW"};
    std::vector<std::string> messages{"B", "Q"};
    std::vector<std::string> actions{"f", "nf", "h"};
    // Simple: fight pays against the wimp, not-fight against the strong,
    // hedging pays 1/2 either way.
    Table ur = make_table(2, 2, 3, [](int i, int, int l) {
        if (l == 2) return q(1, 2);
        if (l == 0) return i == 1 ? q(1) : q(0);
        return i == 0 ? q(1) : q(0);
    });
    // (f, nf, h) by message: strong B (1,6,1) Q (0,4,0); wimp B (0,4,4) Q (1,6,6).
    const long strong[2][3] = {{1, 6, 1}, {0, 4, 0}};
    const long wimp[2][3] = {{0, 4, 4}, {1, 6, 6}};
    Table us = make_table(2, 2, 3, [&](int i, int j, int l) {
        return q(i == 0 ? strong[j][l] : wimp[j][l]);
    });
    GameSpec game(states, messages, actions, std::move(ur), std::move(us));
    return {"beer-quiche-h",
            game,
            Belief({q(3, 4), q(1, 4)}),
            {{"commitment", q(37, 40)}, {"pooling", q(3, 4)}, {"full", q(3, 4)}}};
}

GameSpec make_prop_game(bool three_messages) {
    std::vector<std::string> states{"thetaL", "thetaM", "thetaH"};
    std::vector<std::string> messages =
        three_messages ? std::vector<std::string>{"g", "m", "b"}
                       : std::vector<std::string>{"g", "b"};
    std::vector<std::string> actions{"l", "s", "x"};
    const int t = static_cast<int>(messages.size());
    const Rational ur_rows[3][3] = {{q(0), q(1), q(2)},
                                    {q(13, 24), q(13, 24), q(1)},
                                    {q(1), q(0), q(1)}};
    Table ur = make_table(3, t, 3, [&](int i, int, int l) { return ur_rows[l][i]; });
    // Transparent motives: 1 whenever the receiver picks l or s.
    Table us = make_table(3, t, 3, [](int, int, int l) { return l == 2 ? q(0) : q(1); });
    return GameSpec(states, messages, actions, std::move(ur), std::move(us));
}

FiniteFixture make_prop22() {
    return {"prop22",
            make_prop_game(false),
            Belief({q(1, 4), q(1, 4), q(1, 2)}),
            // The partial pool {L,M}->g with s after g and l after b beats
            // pooling here; see the equilibrium suite for the construction.
            {{"pooling", q(5, 4)}, {"commitment", q(133, 96)}, {"transparency", q(61, 48)}}};
}

FiniteFixture make_prop43() {
    return {"prop43",
            make_prop_game(true),
            Belief({q(1, 4), q(1, 4), q(1, 2)}),
            {{"pooling", q(5, 4)},
             {"commitment", q(133, 96)},
             {"transparency", q(67, 52)}}};
}

FiniteFixture make_four_state() {
    std::vector<std::string> states{"theta1", "theta2", "theta3", "theta4"};
    std::vector<std::string> messages{"m1", "m2", "m3"};
    std::vector<std::string> actions{"a1", "a2"};
    const Rational ur_rows[2][4] = {{q(0), q(0), q(1), q(2)}, {q(1), q(1), q(0), q(0)}};
    Table ur = make_table(4, 3, 2, [&](int i, int, int l) { return ur_rows[l][i]; });
    // Sender rows per state: [message][action].
    const Rational us1[3][2] = {{q(1), q(1)}, {q(0), q(0)}, {q(0), q(0)}};
    const Rational us2[3][2] = {{q(0), q(0)}, {q(1), q(1)}, {q(0), q(0)}};
    const Rational us3[3][2] = {{q(0), q(2)}, {q(1), q(4)}, {q(3), q(0)}};
    const Rational us4[3][2] = {{q(-1), q(5, 4)}, {q(2), q(0)}, {q(-2), q(-1)}};
    Table us = make_table(4, 3, 2, [&](int i, int j, int l) {
        switch (i) {
            case 0: return us1[j][l];
            case 1: return us2[j][l];
            case 2: return us3[j][l];
            default: return us4[j][l];
        }
    });
    GameSpec game(states, messages, actions, std::move(ur), std::move(us));
    return {"four-state",
            game,
            Belief({q(1, 3), q(13, 36), q(1, 8), q(13, 72)}),
            {{"commitment", q(59, 72)}}};
}

ParametricScenario make_investor() {
    ParametricScenario s;
    s.kind = ScenarioKind::Investor;
    s.params = {{"gamma1", 0.3}, {"gamma2", 0.6}, {"gamma3", 0.9},
                {"delta", 0.9},  {"price", 7.0},  {"bonus", 0.6}};
    return s;
}

ParametricScenario make_regime_change() {
    ParametricScenario s;
    s.kind = ScenarioKind::RegimeChange;
    s.params = {{"mu0", 0.5}, {"b", 0.5},    {"g", 0.0},  {"x_b", 0.5},
                {"x_g", 2.0}, {"r_lo", 0.6}, {"r_hi", 0.7}};
    return s;
}

ParametricScenario make_email_filter() {
    ParametricScenario s;
    s.kind = ScenarioKind::EmailFilter;
    s.params = {{"d", 2.0 / 3.0}, {"k", 1.0 / 3.0}};
    s.cdf = [](double th) { return th; };
    s.uniform_cdf = true;
    s.interview_value = [](double th) { return th; };
    s.identity_value = true;
    return s;
}

double param(const ParametricScenario& s, const std::string& name) {
    auto it = s.params.find(name);
    if (it == s.params.end()) fail(Err::ParameterConditionViolated, "missing parameter: " + name);
    return it->second;
}

// Maximizer of f over [lo, hi] by golden-section, seeded with the best of
// the endpoints; assumes unimodality on the bracket.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double best_x = lo, best_v = f(lo);
    double vhi = f(hi);
    if (vhi > best_v) {
        best_v = vhi;
        best_x = hi;
    }
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
        if (f1 > best_v) {
            best_v = f1;
            best_x = x1;
        }
        if (f2 > best_v) {
            best_v = f2;
            best_x = x2;
        }
    }
    return {best_x, best_v};
}

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fb,
               double fm, double eps, int depth) {
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * eps) return left + right;
    return simpson(f, a, m, fa, fm, flm, eps / 2, depth - 1) +
           simpson(f, m, b, fm, fb, frm, eps / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    if (a >= b) return 0.0;
    double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    return simpson(f, a, b, fa, fb, fm, 1e-13, 40);
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {"intra-firm", "beer-quiche-h", "prop22",
                                                   "prop43",     "four-state",    "investor",
                                                   "regime-change", "email-filter"};
    return names;
}

LoadedScenario load_scenario(const std::string& name) {
    if (name == "intra-firm") return make_intra_firm();
    if (name == "beer-quiche-h") return make_beer_quiche_h();
    if (name == "prop22") return make_prop22();
    if (name == "prop43") return make_prop43();
    if (name == "four-state") return make_four_state();
    if (name == "investor") return make_investor();
    if (name == "regime-change") return make_regime_change();
    if (name == "email-filter") return make_email_filter();
    fail(Err::UnknownScenario, "unknown scenario: " + name);
}

ScenarioSolution solve_investor(const ParametricScenario& scenario, const InvestorGrid& grid) {
    if (scenario.kind != ScenarioKind::Investor)
        fail(Err::ParameterConditionViolated, "scenario is not the investor kind");
    const double g1 = param(scenario, "gamma1");
    const double g2 = param(scenario, "gamma2");
    const double g3 = param(scenario, "gamma3");
    const double delta = param(scenario, "delta");
    const double price = param(scenario, "price");
    const double bonus = param(scenario, "bonus");
    const double phat = price * (1 - delta);  // value threshold per unit of type

    auto wealth = [](double gamma, double r) {
        return gamma * std::sqrt(1 + r) + (1 - gamma) * std::sqrt(1 - r);
    };

    // Inner problem at a fixed middle investment r: exact LP over the
    // disclosure probabilities k, l, m with the low type at 0 and the
    // high type at 1.
    struct Inner {
        bool feasible = false;
        double value = -std::numeric_limits<double>::infinity();
        double k = 0, l = 0, m = 0;
    };
    auto inner = [&](double r) {
        LinearProgram lp;
        lp.objective = {Rational(g1 - phat) / 3, Rational(g2 - phat) / 3,
                        Rational(g3 - phat) / 3};
        lp.bounds.assign(3, VariableBounds{Rational(0), Rational(1)});
        lp.variable_names = {"k", "l", "m"};
        const Rational rb(bonus);
        auto add = [&](Rational ck, Rational cl, Rational cm, double rhs, const char* tag) {
            lp.constraints.push_back({{ck, cl, cm}, Relation::GreaterEq, Rational(rhs), tag});
        };
        add(rb, -rb, 0, wealth(g1, r) - 1.0, "ic(low vs middle)");
        add(rb, 0, -rb, wealth(g1, 1.0) - 1.0, "ic(low vs high)");
        add(0, rb, -rb, wealth(g2, 1.0) - wealth(g2, r), "ic(middle vs high)");

        Inner result;
        LPResult lr = solve_lp(lp);
        if (lr.status != LPStatus::Optimal) return result;
        result.feasible = true;
        result.value = to_double(lr.optimal_value);
        result.k = to_double(lr.solution[0]);
        result.l = to_double(lr.solution[1]);
        result.m = to_double(lr.solution[2]);
        return result;
    };

    double best_r = 0;
    Inner best;
    bool any = false;
    auto consider = [&](double r) {
        Inner in = inner(r);
        if (in.feasible && (!any || in.value > best.value)) {
            any = true;
            best = in;
            best_r = r;
        }
        return in.feasible ? in.value : -std::numeric_limits<double>::infinity();
    };

    if (grid.points) {
        for (double r : *grid.points) consider(r);
    } else {
        for (double r = 0.0; r < 1.0 + grid.step / 2; r += grid.step)
            consider(std::min(r, 1.0));
        if (any) {
            double lo = std::max(0.0, best_r - grid.step);
            double hi = std::min(1.0, best_r + grid.step);
            auto [r_star, v] = golden_max([&](double r) { return inner(r).value; }, lo, hi);
            (void)v;
            consider(r_star);
        }
    }
    if (!any) fail(Err::InfeasibleAtAllGridPoints, "investor inner LP infeasible on every grid point");

    const double pooling = std::max(0.0, ((g1 - phat) + (g2 - phat) + (g3 - phat)) / 3);

    ScenarioSolution solution;
    solution.variables = {{"r", best_r}, {"k", best.k}, {"l", best.l}, {"m", best.m}};
    solution.value = std::max(best.value, pooling);
    solution.residuals = {
        {"ic(low vs middle)",
         1.0 + bonus * best.k - wealth(g1, best_r) - bonus * best.l},
        {"ic(low vs high)", 1.0 + bonus * best.k - wealth(g1, 1.0) - bonus * best.m},
        {"ic(middle vs high)",
         wealth(g2, best_r) + bonus * best.l - wealth(g2, 1.0) - bonus * best.m},
    };
    solution.notes.push_back(best.value >= pooling ? "separating solution beats pooling"
                                                   : "pooling beats every separating grid point");
    if (best.value < pooling) solution.variables = {{"k", 0}, {"l", 0}, {"m", 0}, {"r", 0}};
    return solution;
}

ScenarioSolution solve_regime_change(const ParametricScenario& scenario) {
    if (scenario.kind != ScenarioKind::RegimeChange)
        fail(Err::ParameterConditionViolated, "scenario is not the regime-change kind");
    const double mu0 = param(scenario, "mu0");
    const double b = param(scenario, "b");
    const double g = param(scenario, "g");
    const double x_b = param(scenario, "x_b");
    const double x_g = param(scenario, "x_g");
    const double r_lo = param(scenario, "r_lo");
    const double r_hi = param(scenario, "r_hi");

    auto require = [](bool ok, const std::string& condition) {
        if (!ok) fail(Err::ParameterConditionViolated, "condition failed: " + condition);
    };
    require(x_g > 1.0 && 1.0 > x_b && x_b > 0.0, "x_g > 1 > x_b > 0");
    require(1.0 > b && b > 0.0 && g == 0.0, "1 > b > g = 0");
    require(0.0 < r_lo && r_lo <= r_hi && r_hi < 1.0, "0 < r_lo <= r_hi < 1");
    require(x_b > r_hi - r_lo, "x_b > r_hi - r_lo");
    require(b < (x_b - (r_hi - r_lo)) / x_b, "b < (x_b - (r_hi - r_lo)) / x_b");
    require(mu0 > 0.0 && mu0 < 1.0, "0 < mu0 < 1");
    require(mu0 * (1 - b) * (1 - r_lo) + (1 - mu0) * (-r_lo) < 0.0,
            "mu0 (1-b)(1-r_lo) - (1-mu0) r_lo < 0");

    const double q = (r_hi - r_lo) / (x_b * (1 - b));
    const double value = mu0 * (1 - r_lo) * (b + (r_hi - r_lo) / x_b);
    const double attack_benchmark = mu0 * b * (1 - r_lo);

    ScenarioSolution solution;
    solution.variables = {{"p", 1.0}, {"q", q},      {"x", 1.0},
                          {"y", 0.0}, {"r", r_lo},   {"r_prime", r_hi}};
    solution.value = value;
    // Bad type's constraint binds by construction; the good type's
    // reduces to a product of nonnegative factors.
    solution.residuals = {
        {"ic(bad)", x_b * (1 - b) * (0.0 - q) + x_b * b * (1.0 - 1.0) + (r_hi - r_lo)},
        {"ic(good reduced)", (r_hi - r_lo) * (1 - x_b * (1 - b))},
    };
    solution.notes.push_back("attack-on-bad-news pooling benchmark (direct evaluation): " +
                             std::to_string(attack_benchmark));
    solution.notes.push_back(
        "source text quotes the pooling payoff un-scaled by mu0 as b(1-r_lo) = " +
        std::to_string(b * (1 - r_lo)) + "; the direct evaluation above is reported instead");
    solution.variables["pooling_benchmark"] = attack_benchmark;
    return solution;
}

ScenarioSolution solve_email_filter(const ParametricScenario& scenario, FilterFamily family) {
    if (scenario.kind != ScenarioKind::EmailFilter)
        fail(Err::ParameterConditionViolated, "scenario is not the email-filter kind");
    const double d = param(scenario, "d");
    const double k = param(scenario, "k");
    std::function<double(double)> cdf = scenario.cdf;
    if (!cdf) cdf = [](double th) { return th; };
    std::function<double(double)> xval = scenario.interview_value;
    if (!xval) xval = [](double th) { return th; };
    const bool uniform = scenario.uniform_cdf || !scenario.cdf;

    // pay(a, b) = integral over [a, b] of (theta - d) dF.
    auto pay = [&](double a, double b) {
        if (a >= b) return 0.0;
        if (uniform) return (b * b - a * a) / 2 - d * (b - a);
        return (b - d) * cdf(b) - (a - d) * cdf(a) - integrate(cdf, a, b);
    };
    const double mean_type = uniform ? 0.5 : 1.0 - integrate(cdf, 0.0, 1.0);
    const double pooling = std::max(mean_type, d);

    ScenarioSolution solution;
    if (xval(1.0) < k) {
        // Waving can never repay its cost; only the prior action remains.
        solution.value = pooling;
        solution.variables = {{"p", mean_type >= d ? 1.0 : 0.0},
                              {"q", mean_type >= d ? 1.0 : 0.0}};
        solution.notes.push_back("waving cost exceeds every type's interview value; pooling");
        return solution;
    }

    // Smallest threshold where the indifferent type exists.
    double th_min;
    if (scenario.identity_value) {
        th_min = k;
    } else {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 200; ++i) {
            double mid = (lo + hi) / 2;
            (xval(mid) >= k ? hi : lo) = mid;
        }
        th_min = hi;
    }

    auto value4 = [&](double th) { return (1 - k / xval(th)) * pay(0, th) + pay(th, 1) + d; };
    auto value5 = [&](double th) { return (k / xval(th)) * pay(th, 1) + d; };

    auto optimize = [&](const std::function<double(double)>& f) {
        // Coarse scan guards against multimodality before refinement.
        const int cells = 1024;
        double best_x = th_min, best_v = f(th_min);
        for (int i = 1; i <= cells; ++i) {
            double x = th_min + (1.0 - th_min) * i / cells;
            double v = f(x);
            if (v > best_v) {
                best_v = v;
                best_x = x;
            }
        }
        double width = (1.0 - th_min) / cells;
        auto [x, v] = golden_max(f, std::max(th_min, best_x - width),
                                 std::min(1.0, best_x + width));
        if (v > best_v) return std::pair<double, double>{x, v};
        return std::pair<double, double>{best_x, best_v};
    };

    struct Candidate {
        double th, p, q, value;
        const char* name;
    };
    std::vector<Candidate> candidates;
    if (family == FilterFamily::Eq4 || family == FilterFamily::Both) {
        auto [th, v] = optimize(value4);
        candidates.push_back({th, 1.0, 1.0 - k / xval(th), v, "eq4"});
    }
    if (family == FilterFamily::Eq5 || family == FilterFamily::Both) {
        auto [th, v] = optimize(value5);
        candidates.push_back({th, k / xval(th), 0.0, v, "eq5"});
    }
    const Candidate* best = &candidates.front();
    for (const auto& c : candidates)
        if (c.value > best->value) best = &c;

    if (pooling > best->value) {
        solution.value = pooling;
        solution.variables = {{"p", mean_type >= d ? 1.0 : 0.0},
                              {"q", mean_type >= d ? 1.0 : 0.0}};
        solution.notes.push_back("pooling beats both threshold families");
        return solution;
    }
    solution.value = best->value;
    solution.variables = {{"theta_hat", best->th}, {"p", best->p}, {"q", best->q}};
    solution.notes.push_back(std::string("family ") + best->name + " optimal; pooling payoff " +
                             std::to_string(pooling));
    solution.residuals = {{"threshold ic", (best->p - best->q) * xval(best->th) - k}};
    return solution;
}

}  // namespace sigdesign
