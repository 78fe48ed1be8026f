#include "sigdesign/design.hpp"
#include "sigdesign/equilibrium.hpp"
#include "sigdesign/errors.hpp"
#include "sigdesign/io.hpp"
#include "sigdesign/scenarios.hpp"
#include "sigdesign/value.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace sigdesign;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;

int exit_code_for(const DomainError& e) {
    switch (e.code()) {
        case Err::ProfileLimitExceeded: return kExitResourceLimit;
        case Err::NoEquilibriumFound: return kExitVerificationFailed;
        default: return kExitInputError;
    }
}

std::string rational_line(const Rational& value) {
    std::ostringstream os;
    os << format_rational(value) << " (" << to_double(value) << ")";
    return os.str();
}

Belief parse_prior_flag(const std::string& text, int num_states) {
    std::vector<Rational> weights;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, ',')) weights.push_back(parse_rational(part));
    if (static_cast<int>(weights.size()) != num_states)
        fail(Err::ParseError, "prior needs one weight per state");
    try {
        return Belief(std::move(weights));
    } catch (const DomainError& e) {
        fail(Err::ParseError, std::string("bad prior: ") + e.what());
    }
}

Belief effective_prior(const GameFile& file, const std::string& prior_flag) {
    if (!prior_flag.empty()) return parse_prior_flag(prior_flag, file.game.num_states());
    if (file.prior) return *file.prior;
    fail(Err::ParseError, "no prior: the game file has none and --prior was not given");
}

SolverTag parse_tag(const std::string& name) {
    if (name == "commitment") return SolverTag::Commitment;
    if (name == "transparency") return SolverTag::TransparencyPure;
    if (name == "full") return SolverTag::FullTransparencyPure;
    fail(Err::ParseError, "unknown solver tag: " + name);
}

void emit(const std::string& output_path, const std::string& text) {
    if (output_path.empty())
        std::cout << text;
    else
        write_text_file(output_path, text);
}

const char* obedience_status_name(ObedienceStatus s) {
    switch (s) {
        case ObedienceStatus::OnPathSatisfied: return "on-path satisfied";
        case ObedienceStatus::OnPathViolated: return "on-path VIOLATED";
        case ObedienceStatus::OffPathSupportable: return "off-path supportable";
        case ObedienceStatus::OffPathUnsupportable: return "off-path UNSUPPORTABLE";
    }
    return "?";
}

void print_design_solution(std::ostream& os, const GameSpec& game,
                           const DesignSolution& solution) {
    os << "value: " << rational_line(solution.value) << "\n";
    os << "profile:\n";
    for (int i = 0; i < game.num_states(); ++i) {
        os << "  " << game.states()[i] << " ->";
        for (int j = 0; j < game.num_messages(); ++j)
            if (solution.profile.strategy[i][j] != 0)
                os << " " << game.messages()[j] << ":"
                   << format_rational(solution.profile.strategy[i][j]);
        os << "\n";
    }
    os << "signal kernel (message -> action recommendation):\n";
    for (int j = 0; j < game.num_messages(); ++j) {
        os << "  " << game.messages()[j] << " ->";
        for (int l = 0; l < game.num_actions(); ++l)
            os << " " << game.actions()[l] << ":" << format_rational(solution.signal.kernel[j][l]);
        os << "\n";
    }
    os << "obedience: " << (solution.obedience.overall ? "pass" : "FAIL") << "\n";
    for (int l = 0; l < game.num_actions(); ++l) {
        os << "  recommend " << game.actions()[l] << ": "
           << obedience_status_name(solution.obedience.status[l])
           << ", slack " << format_rational(solution.obedience.slack[l]);
        if (solution.obedience.posterior[l]) {
            os << ", posterior (";
            for (int i = 0; i < game.num_states(); ++i)
                os << (i ? ", " : "") << format_rational((*solution.obedience.posterior[l])[i]);
            os << ")";
        }
        os << "\n";
    }
    if (!solution.binding_ic.empty()) {
        os << "binding ic:";
        for (auto [state, dev] : solution.binding_ic)
            os << " (" << game.states()[state] << " vs " << game.messages()[dev] << ")";
        os << "\n";
    }
    os << "profiles attaining the optimum: " << solution.optima_count << "\n";
}

int run_solve(const std::string& mode, const std::string& game_path, const std::string& prior_flag,
              const std::string& output_path) {
    GameFile file = load_game_file(game_path);
    Belief prior = effective_prior(file, prior_flag);
    std::ostringstream os;
    if (mode == "full") {
        FullTransparencyResult result = solve_full_transparency_pure(file.game, prior);
        os << "value: " << rational_line(result.value) << "\n";
        os << "profile:\n";
        for (int i = 0; i < file.game.num_states(); ++i)
            os << "  " << file.game.states()[i] << " -> "
               << file.game.messages()[result.triple.profile.assigned_message(i)] << "\n";
        os << "response (message -> action):\n";
        for (int j = 0; j < file.game.num_messages(); ++j)
            for (int l = 0; l < file.game.num_actions(); ++l)
                if (result.triple.response.response[j][l] != 0)
                    os << "  " << file.game.messages()[j] << " -> " << file.game.actions()[l]
                       << "\n";
    } else {
        DesignSolution solution = mode == "commitment"
                                      ? solve_commitment(file.game, prior)
                                      : solve_transparency_pure(file.game, prior);
        print_design_solution(os, file.game, solution);
    }
    emit(output_path, os.str());
    return kExitOk;
}

int run_verify(const std::string& game_path, const std::string& eq_path,
               const std::string& prior_flag, const std::string& output_path) {
    GameFile file = load_game_file(game_path);
    Belief prior = effective_prior(file, prior_flag);
    EquilibriumTriple triple = load_equilibrium_file(eq_path, file.game);
    VerificationReport report = verify_equilibrium(file.game, prior, triple);
    std::ostringstream os;
    os << "ic_ok: " << (report.ic_ok ? "true" : "false") << "\n";
    if (report.worst_ic)
        os << "  worst ic violation: state " << file.game.states()[report.worst_ic->state]
           << " message " << file.game.messages()[report.worst_ic->message] << " gap "
           << format_rational(report.worst_ic->gap) << "\n";
    os << "sequential_ok: " << (report.sequential_ok ? "true" : "false") << "\n";
    if (report.worst_sequential)
        os << "  worst sequential violation: realization "
           << triple.signal.realizations[report.worst_sequential->realization] << " gap "
           << format_rational(report.worst_sequential->gap) << "\n";
    os << "receiver value: " << rational_line(report.receiver_value) << "\n";
    for (int i = 0; i < file.game.num_states(); ++i)
        os << "sender value " << file.game.states()[i] << ": "
           << rational_line(report.sender_values[i]) << "\n";
    emit(output_path, os.str());
    return report.ic_ok && report.sequential_ok ? kExitOk : kExitVerificationFailed;
}

int run_sweep(const std::string& game_path, const std::string& from_flag,
              const std::string& to_flag, int steps, const std::string& tag_name,
              const std::string& format, const std::string& output_path) {
    GameFile file = load_game_file(game_path);
    Belief from = parse_prior_flag(from_flag, file.game.num_states());
    Belief to = parse_prior_flag(to_flag, file.game.num_states());
    ValueCurve curve = value_curve(file.game, from, to, steps, parse_tag(tag_name));
    std::ostringstream os;
    if (format == "text") {
        for (size_t i = 0; i < curve.lambdas.size(); ++i)
            os << "lambda " << format_rational(curve.lambdas[i]) << ": "
               << rational_line(curve.values[i]) << "\n";
    } else {
        os << curve_to_csv(curve);
    }
    if (curve.values.size() >= 3) {
        ConvexityResult convexity = convexity_check(curve);
        os << "# convex: " << (convexity.convex ? "true" : "false");
        if (!convexity.convex)
            os << " worst_violation=" << format_rational(convexity.worst_violation)
               << " witness=(" << convexity.witness[0] << "," << convexity.witness[1] << ","
               << convexity.witness[2] << ")";
        os << "\n";
    }
    emit(output_path, os.str());
    return kExitOk;
}

int run_learn(const std::string& game_path, const std::string& experiment_path,
              const std::string& prior_flag, const std::string& tag_name,
              const std::string& output_path) {
    GameFile file = load_game_file(game_path);
    Belief prior = effective_prior(file, prior_flag);
    Experiment experiment = load_experiment_file(experiment_path, file.game);
    ExperimentEvaluation eval =
        evaluate_experiment(file.game, prior, experiment, parse_tag(tag_name));
    std::ostringstream os;
    for (size_t y = 0; y < eval.posteriors.size(); ++y) {
        os << "posterior " << y << " weight " << format_rational(eval.posteriors[y].second)
           << ": (";
        for (int i = 0; i < file.game.num_states(); ++i)
            os << (i ? ", " : "") << format_rational(eval.posteriors[y].first[i]);
        os << ")\n";
    }
    os << "expected value: " << rational_line(eval.expected_value) << "\n";
    os << "value at prior: " << rational_line(eval.value_at_prior) << "\n";
    os << "information helps: " << (eval.information_helps ? "true" : "false") << "\n";
    emit(output_path, os.str());
    return kExitOk;
}

int run_scenario(const std::string& name, const std::vector<std::string>& params,
                 const std::string& output_path) {
    LoadedScenario loaded = load_scenario(name);
    std::ostringstream os;

    if (auto* fixture = std::get_if<FiniteFixture>(&loaded)) {
        os << "scenario " << fixture->name << " (finite game, prior";
        for (int i = 0; i < fixture->game.num_states(); ++i)
            os << " " << format_rational(fixture->prior[i]);
        os << ")\n";
        os << "expected vs computed:\n";
        for (const auto& [key, expected] : fixture->expected) {
            Rational computed;
            if (key == "commitment")
                computed = solve_commitment(fixture->game, fixture->prior).value;
            else if (key == "transparency")
                computed = solve_transparency_pure(fixture->game, fixture->prior).value;
            else if (key == "full")
                computed = solve_full_transparency_pure(fixture->game, fixture->prior).value;
            else if (key == "pooling")
                computed = pooling_value(fixture->game, fixture->prior).value;
            else
                continue;
            os << "  " << key << ": expected " << format_rational(expected) << ", computed "
               << format_rational(computed) << (expected == computed ? " [match]" : " [MISMATCH]")
               << "\n";
        }
        emit(output_path, os.str());
        return kExitOk;
    }

    ParametricScenario scenario = std::get<ParametricScenario>(loaded);
    FilterFamily family = FilterFamily::Both;
    double grid_step = 1e-3;
    for (const auto& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) fail(Err::ParseError, "parameter must be name=value: " + p);
        std::string key = p.substr(0, eq), value = p.substr(eq + 1);
        if (key == "family") {
            if (value == "eq4")
                family = FilterFamily::Eq4;
            else if (value == "eq5")
                family = FilterFamily::Eq5;
            else if (value == "both")
                family = FilterFamily::Both;
            else
                fail(Err::ParseError, "unknown family: " + value);
        } else if (key == "grid_step") {
            try {
                grid_step = std::stod(value);
            } catch (const std::exception&) {
                fail(Err::ParseError, "bad numeric value for grid_step: " + value);
            }
        } else {
            try {
                scenario.params[key] = std::stod(value);
            } catch (const std::exception&) {
                fail(Err::ParseError, "bad numeric value for " + key + ": " + value);
            }
        }
    }

    ScenarioSolution solution;
    switch (scenario.kind) {
        case ScenarioKind::Investor: {
            InvestorGrid grid;
            grid.step = grid_step;
            solution = solve_investor(scenario, grid);
            break;
        }
        case ScenarioKind::RegimeChange: solution = solve_regime_change(scenario); break;
        case ScenarioKind::EmailFilter: solution = solve_email_filter(scenario, family); break;
    }
    os << "scenario " << name << "\n";
    os.precision(12);
    os << "value: " << solution.value << "\n";
    for (const auto& [key, v] : solution.variables) os << "  " << key << " = " << v << "\n";
    for (const auto& [key, v] : solution.residuals)
        os << "  residual " << key << " = " << v << "\n";
    for (const auto& note : solution.notes) os << "note: " << note << "\n";
    emit(output_path, os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solvers for receiver-optimal information design in finite signaling games"};
    app.require_subcommand(1);

    std::string prior_flag, output_path, format = "csv";

    auto* solve = app.add_subcommand("solve", "Solve a design problem for a game file");
    std::string solve_mode, solve_game;
    solve->add_option("mode", solve_mode, "commitment|transparency|full")->required();
    solve->add_option("game", solve_game, "game file")->required();
    solve->add_option("--prior", prior_flag, "comma-separated rational prior override");
    solve->add_option("--output", output_path, "write the report here instead of stdout");

    auto* verify = app.add_subcommand("verify", "Verify an equilibrium file against a game");
    std::string verify_game, verify_eq;
    verify->add_option("game", verify_game, "game file")->required();
    verify->add_option("equilibrium", verify_eq, "equilibrium file")->required();
    verify->add_option("--prior", prior_flag, "comma-separated rational prior override");
    verify->add_option("--output", output_path, "write the report here instead of stdout");

    auto* sweep = app.add_subcommand("sweep", "Value curve along a prior segment, as CSV");
    std::string sweep_game, sweep_from, sweep_to, sweep_solver = "commitment";
    int sweep_steps = 64;
    sweep->add_option("game", sweep_game, "game file")->required();
    sweep->add_option("--from", sweep_from, "segment start prior")->required();
    sweep->add_option("--to", sweep_to, "segment end prior")->required();
    sweep->add_option("--steps", sweep_steps, "grid intervals (default 64)");
    sweep->add_option("--solver", sweep_solver, "commitment|transparency|full");
    sweep->add_option("--output", output_path, "write the CSV here instead of stdout");

    auto* scenario = app.add_subcommand("scenario", "Run a built-in scenario");
    std::string scenario_name;
    std::vector<std::string> scenario_params;
    scenario->add_option("name", scenario_name, "scenario name")->required();
    scenario->add_option("--param", scenario_params, "name=value parameter overrides");
    scenario->add_option("--output", output_path, "write the report here instead of stdout");

    auto* learn = app.add_subcommand("learn", "Evaluate an ex-ante experiment for a game");
    std::string learn_game, learn_experiment, learn_solver = "commitment";
    learn->add_option("game", learn_game, "game file")->required();
    learn->add_option("experiment", learn_experiment, "experiment file")->required();
    learn->add_option("--prior", prior_flag, "comma-separated rational prior override");
    learn->add_option("--solver", learn_solver, "commitment|transparency|full");
    learn->add_option("--output", output_path, "write the report here instead of stdout");

    sweep->add_option("--format", format, "csv (default) or text");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            if (solve_mode != "commitment" && solve_mode != "transparency" &&
                solve_mode != "full")
                fail(Err::ParseError, "solve mode must be commitment, transparency or full");
            return run_solve(solve_mode, solve_game, prior_flag, output_path);
        }
        if (verify->parsed()) return run_verify(verify_game, verify_eq, prior_flag, output_path);
        if (sweep->parsed()) {
            if (format != "text" && format != "csv")
                fail(Err::ParseError, "format must be text or csv");
            return run_sweep(sweep_game, sweep_from, sweep_to, sweep_steps, sweep_solver, format,
                             output_path);
        }
        if (scenario->parsed()) return run_scenario(scenario_name, scenario_params, output_path);
        if (learn->parsed())
            return run_learn(learn_game, learn_experiment, prior_flag, learn_solver, output_path);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
