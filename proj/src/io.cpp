#include "sigdesign/io.hpp"

#include "sigdesign/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sigdesign {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(Err::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

std::vector<std::string> string_array(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_array())
        fail(Err::ParseError, "missing array field: " + field);
    std::vector<std::string> out;
    for (const auto& v : j[field]) {
        if (!v.is_string()) fail(Err::ParseError, field + " entries must be strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

Rational rational_field(const json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    fail(Err::ParseError, "expected a rational string at " + where);
}

// Distribution row keyed by labels; missing keys mean zero probability.
std::vector<Rational> distribution_row(const json& row, const std::vector<std::string>& labels,
                                       const std::string& where) {
    if (!row.is_object()) fail(Err::ParseError, where + " must be an object");
    std::vector<Rational> out(labels.size(), Rational(0));
    for (const auto& [key, value] : row.items()) {
        auto it = std::find(labels.begin(), labels.end(), key);
        if (it == labels.end()) fail(Err::ParseError, where + ": unknown label " + key);
        out[it - labels.begin()] = rational_field(value, where + "." + key);
    }
    Rational sum = 0;
    for (const auto& p : out) {
        if (p < 0) fail(Err::ParseError, where + ": negative probability");
        sum += p;
    }
    if (sum != 1) fail(Err::ParseError, where + ": probabilities sum to " + format_rational(sum));
    return out;
}

}  // namespace

GameFile parse_game_file(const std::string& text) {
    json j = parse_json(text);
    RawGame raw;
    raw.states = string_array(j, "states");
    raw.messages = string_array(j, "messages");
    raw.actions = string_array(j, "actions");
    if (j.contains("simple")) {
        if (!j["simple"].is_boolean()) fail(Err::ParseError, "simple must be a boolean");
        raw.simple_receiver = j["simple"].get<bool>();
    }

    auto read_table = [&](const std::string& field, bool simple,
                          std::map<std::tuple<std::string, std::string, std::string>, Rational>&
                              entries) {
        if (!j.contains(field) || !j[field].is_object())
            fail(Err::ParseError, "missing table field: " + field);
        for (const auto& [state, per_state] : j[field].items()) {
            if (!per_state.is_object())
                fail(Err::ParseError, field + "." + state + " must be an object");
            if (simple) {
                for (const auto& [action, value] : per_state.items())
                    entries[{state, "", action}] =
                        rational_field(value, field + "." + state + "." + action);
            } else {
                for (const auto& [message, per_message] : per_state.items()) {
                    if (!per_message.is_object())
                        fail(Err::ParseError,
                             field + "." + state + "." + message + " must be an object");
                    for (const auto& [action, value] : per_message.items())
                        entries[{state, message, action}] = rational_field(
                            value, field + "." + state + "." + message + "." + action);
                }
            }
        }
    };
    read_table("receiver_utility", raw.simple_receiver, raw.receiver_entries);
    read_table("sender_utility", false, raw.sender_entries);

    GameFile file{validate_game(raw), std::nullopt};
    if (j.contains("prior")) {
        const auto& p = j["prior"];
        if (!p.is_array() || p.size() != raw.states.size())
            fail(Err::ParseError, "prior must list one rational per state");
        std::vector<Rational> weights;
        for (size_t i = 0; i < p.size(); ++i)
            weights.push_back(rational_field(p[i], "prior[" + std::to_string(i) + "]"));
        try {
            file.prior = Belief(std::move(weights));
        } catch (const DomainError& e) {
            fail(Err::ParseError, std::string("bad prior: ") + e.what());
        }
    }
    return file;
}

std::string serialize_game(const GameSpec& game, const std::optional<Belief>& prior) {
    json j;
    j["states"] = game.states();
    j["messages"] = game.messages();
    j["actions"] = game.actions();
    const bool simple = is_simple(game);
    j["simple"] = simple;
    if (prior) {
        json p = json::array();
        for (int i = 0; i < game.num_states(); ++i) p.push_back(format_rational((*prior)[i]));
        j["prior"] = p;
    }
    json receiver = json::object();
    for (int i = 0; i < game.num_states(); ++i) {
        json per_state = json::object();
        if (simple) {
            for (int l = 0; l < game.num_actions(); ++l)
                per_state[game.actions()[l]] = format_rational(game.receiver_utility(i, 0, l));
        } else {
            for (int jm = 0; jm < game.num_messages(); ++jm) {
                json per_message = json::object();
                for (int l = 0; l < game.num_actions(); ++l)
                    per_message[game.actions()[l]] =
                        format_rational(game.receiver_utility(i, jm, l));
                per_state[game.messages()[jm]] = per_message;
            }
        }
        receiver[game.states()[i]] = per_state;
    }
    j["receiver_utility"] = receiver;
    json sender = json::object();
    for (int i = 0; i < game.num_states(); ++i) {
        json per_state = json::object();
        for (int jm = 0; jm < game.num_messages(); ++jm) {
            json per_message = json::object();
            for (int l = 0; l < game.num_actions(); ++l)
                per_message[game.actions()[l]] = format_rational(game.sender_utility(i, jm, l));
            per_state[game.messages()[jm]] = per_message;
        }
        sender[game.states()[i]] = per_state;
    }
    j["sender_utility"] = sender;
    return j.dump(2) + "\n";
}

EquilibriumTriple parse_equilibrium_file(const std::string& text, const GameSpec& game) {
    json j = parse_json(text);
    if (!j.contains("signal") || !j.contains("profile") || !j.contains("response"))
        fail(Err::ParseError, "equilibrium file needs signal, profile and response");

    EquilibriumTriple triple;
    const json& sig = j["signal"];
    triple.signal.realizations = string_array(sig, "realizations");
    if (!sig.contains("kernel") || !sig["kernel"].is_object())
        fail(Err::ParseError, "signal.kernel must map messages to distributions");
    triple.signal.kernel.assign(game.num_messages(),
                                std::vector<Rational>(triple.signal.realizations.size(),
                                                      Rational(0)));
    for (const auto& [message, row] : sig["kernel"].items()) {
        int jm = game.message_index(message);
        triple.signal.kernel[jm] =
            distribution_row(row, triple.signal.realizations, "signal.kernel." + message);
    }
    for (int jm = 0; jm < game.num_messages(); ++jm) {
        Rational sum = 0;
        for (const auto& p : triple.signal.kernel[jm]) sum += p;
        if (sum != 1)
            fail(Err::ParseError, "signal.kernel." + game.messages()[jm] + " missing or invalid");
    }

    triple.profile.strategy.assign(game.num_states(),
                                   std::vector<Rational>(game.num_messages(), Rational(0)));
    for (const auto& [state, row] : j["profile"].items()) {
        int i = game.state_index(state);
        triple.profile.strategy[i] = distribution_row(row, game.messages(), "profile." + state);
    }
    for (int i = 0; i < game.num_states(); ++i) {
        Rational sum = 0;
        for (const auto& p : triple.profile.strategy[i]) sum += p;
        if (sum != 1)
            fail(Err::ParseError, "profile." + game.states()[i] + " missing or invalid");
    }

    triple.response.response.assign(triple.signal.realizations.size(),
                                    std::vector<Rational>(game.num_actions(), Rational(0)));
    for (const auto& [realization, row] : j["response"].items()) {
        auto it = std::find(triple.signal.realizations.begin(), triple.signal.realizations.end(),
                            realization);
        if (it == triple.signal.realizations.end())
            fail(Err::ParseError, "response: unknown realization " + realization);
        triple.response.response[it - triple.signal.realizations.begin()] =
            distribution_row(row, game.actions(), "response." + realization);
    }
    for (size_t e = 0; e < triple.signal.realizations.size(); ++e) {
        Rational sum = 0;
        for (const auto& p : triple.response.response[e]) sum += p;
        if (sum != 1)
            fail(Err::ParseError,
                 "response." + triple.signal.realizations[e] + " missing or invalid");
    }
    return triple;
}

std::string serialize_equilibrium(const GameSpec& game, const EquilibriumTriple& triple) {
    json j;
    json sig;
    sig["realizations"] = triple.signal.realizations;
    json kernel = json::object();
    for (int jm = 0; jm < game.num_messages(); ++jm) {
        json row = json::object();
        for (size_t e = 0; e < triple.signal.realizations.size(); ++e)
            if (triple.signal.kernel[jm][e] != 0)
                row[triple.signal.realizations[e]] = format_rational(triple.signal.kernel[jm][e]);
        kernel[game.messages()[jm]] = row;
    }
    sig["kernel"] = kernel;
    j["signal"] = sig;
    json profile = json::object();
    for (int i = 0; i < game.num_states(); ++i) {
        json row = json::object();
        for (int jm = 0; jm < game.num_messages(); ++jm)
            if (triple.profile.strategy[i][jm] != 0)
                row[game.messages()[jm]] = format_rational(triple.profile.strategy[i][jm]);
        profile[game.states()[i]] = row;
    }
    j["profile"] = profile;
    json response = json::object();
    for (size_t e = 0; e < triple.signal.realizations.size(); ++e) {
        json row = json::object();
        for (int l = 0; l < game.num_actions(); ++l)
            if (triple.response.response[e][l] != 0)
                row[game.actions()[l]] = format_rational(triple.response.response[e][l]);
        response[triple.signal.realizations[e]] = row;
    }
    j["response"] = response;
    return j.dump(2) + "\n";
}

Experiment parse_experiment_file(const std::string& text, const GameSpec& game) {
    json j = parse_json(text);
    Experiment experiment;
    experiment.outcomes = string_array(j, "outcomes");
    if (!j.contains("likelihoods") || !j["likelihoods"].is_object())
        fail(Err::ParseError, "experiment needs a likelihoods table");
    experiment.likelihoods.assign(game.num_states(),
                                  std::vector<Rational>(experiment.outcomes.size(), Rational(0)));
    for (const auto& [state, row] : j["likelihoods"].items()) {
        int i = game.state_index(state);
        experiment.likelihoods[i] =
            distribution_row(row, experiment.outcomes, "likelihoods." + state);
    }
    for (int i = 0; i < game.num_states(); ++i) {
        Rational sum = 0;
        for (const auto& p : experiment.likelihoods[i]) sum += p;
        if (sum != 1)
            fail(Err::ParseError, "likelihoods." + game.states()[i] + " missing or invalid");
    }
    return experiment;
}

std::string curve_to_csv(const ValueCurve& curve) {
    std::ostringstream os;
    os << "lambda,value_numerator,value_denominator,value_decimal\n";
    for (size_t i = 0; i < curve.lambdas.size(); ++i) {
        os << format_rational(curve.lambdas[i]) << "," << numerator(curve.values[i]) << ","
           << denominator(curve.values[i]) << "," << to_double(curve.values[i]) << "\n";
    }
    return os.str();
}

ValueCurve curve_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) fail(Err::ParseError, "empty CSV");
    ValueCurve curve;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string lambda, num, den, rest;
        if (!std::getline(row, lambda, ',') || !std::getline(row, num, ',') ||
            !std::getline(row, den, ','))
            fail(Err::ParseError, "bad CSV row: " + line);
        std::getline(row, rest);
        curve.lambdas.push_back(parse_rational(lambda));
        Integer n, d;
        try {
            n = Integer(num);
            d = Integer(den);
        } catch (const std::runtime_error&) {
            fail(Err::ParseError, "bad CSV value in row: " + line);
        }
        if (d == 0) fail(Err::ParseError, "zero denominator in CSV row: " + line);
        curve.values.push_back(Rational(n, d));
    }
    return curve;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Err::ParseError, "cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Err::ParseError, "cannot write file: " + path);
    out << content;
}

GameFile load_game_file(const std::string& path) { return parse_game_file(read_text_file(path)); }

EquilibriumTriple load_equilibrium_file(const std::string& path, const GameSpec& game) {
    return parse_equilibrium_file(read_text_file(path), game);
}

Experiment load_experiment_file(const std::string& path, const GameSpec& game) {
    return parse_experiment_file(read_text_file(path), game);
}

}  // namespace sigdesign
