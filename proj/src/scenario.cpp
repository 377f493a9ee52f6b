#include "gausskin/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gausskin {

using json = nlohmann::ordered_json;

const char* series_name(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::mean: return "mean";
        case SeriesKind::iwasawa: return "iwasawa";
        case SeriesKind::thermo: return "thermo";
        case SeriesKind::wigner: return "wigner";
    }
    return "?";
}

SeriesKind series_from_name(const std::string& name) {
    if (name == "mean") return SeriesKind::mean;
    if (name == "iwasawa") return SeriesKind::iwasawa;
    if (name == "thermo") return SeriesKind::thermo;
    if (name == "wigner") return SeriesKind::wigner;
    throw ValidationError("unknown series '" + name +
                          "' (expected mean|iwasawa|thermo|wigner)");
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) throw ValidationError(where + ": unknown key '" + item.key() + "'");
    }
}

double require_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ValidationError(where + ": missing '" + key + "'");
    if (!obj[key].is_number()) throw ValidationError(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

CoefficientFunction parse_coefficient(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ValidationError(where + ": expected a coefficient object");
    reject_unknown_keys(obj, {"const", "harmonics"}, where);
    CoefficientFunction fn;
    fn.constant = require_number(obj, "const", where);
    if (obj.contains("harmonics")) {
        if (!obj["harmonics"].is_array()) {
            throw ValidationError(where + ".harmonics: expected an array");
        }
        for (std::size_t k = 0; k < obj["harmonics"].size(); ++k) {
            const json& h = obj["harmonics"][k];
            if (!h.is_array() || h.size() != 3 || !h[0].is_number() || !h[1].is_number() ||
                !h[2].is_number()) {
                throw ValidationError(where + ".harmonics[" + std::to_string(k) +
                                      "]: expected [amplitude, angular_frequency, phase]");
            }
            fn.harmonics.push_back({h[0].get<double>(), h[1].get<double>(), h[2].get<double>()});
        }
    }
    return fn;
}

CoefficientMatrix parse_matrix(const json& obj, int n, const std::string& where) {
    if (!obj.is_array() || static_cast<int>(obj.size()) != n) {
        throw ValidationError(where + ": expected " + std::to_string(n) + " rows");
    }
    CoefficientMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = obj[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ValidationError(where + "[" + std::to_string(i) + "]: expected " +
                                  std::to_string(n) + " entries");
        }
        for (int j = 0; j < n; ++j) {
            m.at(i, j) = parse_coefficient(
                row[j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
    }
    return m;
}

Eigen::VectorXd parse_vector(const json& obj, int n, const std::string& where) {
    if (!obj.is_array() || static_cast<int>(obj.size()) != n) {
        throw ValidationError(where + ": expected " + std::to_string(n) + " numbers");
    }
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        if (!obj[i].is_number()) {
            throw ValidationError(where + "[" + std::to_string(i) + "]: expected a number");
        }
        v(i) = obj[i].get<double>();
    }
    return v;
}

json coefficient_to_json(const CoefficientFunction& fn) {
    json obj;
    obj["const"] = fn.constant;
    if (!fn.harmonics.empty()) {
        json harmonics = json::array();
        for (const auto& h : fn.harmonics) {
            harmonics.push_back({h.amplitude, h.angular_frequency, h.phase});
        }
        obj["harmonics"] = std::move(harmonics);
    }
    return obj;
}

json matrix_to_json(const CoefficientMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(coefficient_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text, const std::string& origin,
                        double default_tol) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ValidationError(origin + ": " + err.what());
    }
    if (!root.is_object()) throw ValidationError(origin + ": scenario must be a JSON object");
    reject_unknown_keys(root,
                        {"name", "constants", "n", "a", "b", "c", "initial", "t_end", "steps",
                         "outputs"},
                        origin);

    Constants constants;
    constants.tol = default_tol;
    if (root.contains("constants")) {
        const json& c = root["constants"];
        if (!c.is_object()) throw ValidationError(origin + ".constants: expected an object");
        reject_unknown_keys(c, {"hbar", "kb", "tol"}, origin + ".constants");
        if (c.contains("hbar")) constants.hbar = require_number(c, "hbar", origin + ".constants");
        if (c.contains("kb")) constants.kb = require_number(c, "kb", origin + ".constants");
        if (c.contains("tol")) constants.tol = require_number(c, "tol", origin + ".constants");
    }
    if (constants.hbar <= 0.0) throw ValidationError(origin + ".constants.hbar: must be positive");
    if (constants.kb <= 0.0) throw ValidationError(origin + ".constants.kb: must be positive");
    if (constants.tol <= 0.0) throw ValidationError(origin + ".constants.tol: must be positive");

    const double n_value = require_number(root, "n", origin);
    const int n = static_cast<int>(n_value);
    if (n < 1 || n != n_value) throw ValidationError(origin + ".n: must be a positive integer");

    if (!root.contains("a") || !root.contains("b") || !root.contains("c")) {
        throw ValidationError(origin + ": missing coefficient block a, b, or c");
    }
    CoefficientMatrix a = parse_matrix(root["a"], n, origin + ".a");
    CoefficientMatrix b = parse_matrix(root["b"], n, origin + ".b");
    CoefficientMatrix c = parse_matrix(root["c"], n, origin + ".c");

    if (!root.contains("initial")) throw ValidationError(origin + ": missing 'initial'");
    const json& initial = root["initial"];
    if (!initial.is_object()) throw ValidationError(origin + ".initial: expected an object");
    reject_unknown_keys(initial, {"mean_q", "mean_p"}, origin + ".initial");
    if (!initial.contains("mean_q") || !initial.contains("mean_p")) {
        throw ValidationError(origin + ".initial: missing mean_q or mean_p");
    }

    const double t_end = require_number(root, "t_end", origin);
    if (t_end <= 0.0) throw ValidationError(origin + ".t_end: must be positive");
    const double steps_value = require_number(root, "steps", origin);
    const int steps = static_cast<int>(steps_value);
    if (steps < 1 || steps != steps_value) {
        throw ValidationError(origin + ".steps: must be a positive integer");
    }

    std::vector<OutputSpec> outputs;
    if (root.contains("outputs")) {
        if (!root["outputs"].is_array()) {
            throw ValidationError(origin + ".outputs: expected an array");
        }
        for (std::size_t k = 0; k < root["outputs"].size(); ++k) {
            const json& out = root["outputs"][k];
            const std::string where = origin + ".outputs[" + std::to_string(k) + "]";
            if (!out.is_object()) throw ValidationError(where + ": expected an object");
            reject_unknown_keys(out, {"series", "path"}, where);
            if (!out.contains("series") || !out["series"].is_string()) {
                throw ValidationError(where + ".series: expected a string");
            }
            if (!out.contains("path") || !out["path"].is_string() ||
                out["path"].get<std::string>().empty()) {
                throw ValidationError(where + ".path: expected a nonempty string");
            }
            outputs.push_back(
                {series_from_name(out["series"].get<std::string>()), out["path"]});
        }
    }

    std::string name = "scenario";
    if (root.contains("name")) {
        if (!root["name"].is_string()) throw ValidationError(origin + ".name: expected a string");
        name = root["name"].get<std::string>();
    }

    HamiltonianSpec spec = [&]() {
        try {
            return HamiltonianSpec(n, std::move(a), std::move(b), std::move(c), constants.tol);
        } catch (const ValidationError& err) {
            throw ValidationError(origin + ": " + err.what());
        }
    }();

    return Scenario{std::move(name),
                    constants,
                    std::move(spec),
                    parse_vector(initial["mean_q"], n, origin + ".initial.mean_q"),
                    parse_vector(initial["mean_p"], n, origin + ".initial.mean_p"),
                    t_end,
                    steps,
                    std::move(outputs)};
}

Scenario load_scenario(const std::string& path, double default_tol) {
    std::ifstream file(path);
    if (!file) throw ValidationError(path + ": cannot open scenario file");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_scenario(buffer.str(), path, default_tol);
}

std::string serialize_scenario(const Scenario& scenario) {
    json root;
    root["name"] = scenario.name;
    root["constants"] = {{"hbar", scenario.constants.hbar},
                         {"kb", scenario.constants.kb},
                         {"tol", scenario.constants.tol}};
    root["n"] = scenario.hamiltonian.dim();
    root["a"] = matrix_to_json(scenario.hamiltonian.a_fn());
    root["b"] = matrix_to_json(scenario.hamiltonian.b_fn());
    root["c"] = matrix_to_json(scenario.hamiltonian.c_fn());
    json mean_q = json::array();
    json mean_p = json::array();
    for (int i = 0; i < scenario.mean_q.size(); ++i) mean_q.push_back(scenario.mean_q(i));
    for (int i = 0; i < scenario.mean_p.size(); ++i) mean_p.push_back(scenario.mean_p(i));
    root["initial"] = {{"mean_q", std::move(mean_q)}, {"mean_p", std::move(mean_p)}};
    root["t_end"] = scenario.t_end;
    root["steps"] = scenario.steps;
    json outputs = json::array();
    for (const auto& out : scenario.outputs) {
        outputs.push_back({{"series", series_name(out.series)}, {"path", out.path}});
    }
    root["outputs"] = std::move(outputs);
    return root.dump(2) + "\n";
}

namespace {

constexpr const char* kHarmonicOscillator = R"json({
  "name": "harmonic_oscillator",
  "constants": {"hbar": 1.0, "kb": 1.0},
  "n": 1,
  "a": [[{"const": 1.0}]],
  "b": [[{"const": 0.0}]],
  "c": [[{"const": 1.0}]],
  "initial": {"mean_q": [0.0], "mean_p": [0.0]},
  "t_end": 6.283185307179586,
  "steps": 1000,
  "outputs": [{"series": "thermo", "path": "harmonic_oscillator_thermo.csv"}]
})json";

constexpr const char* kFreeParticle = R"json({
  "name": "free_particle",
  "constants": {"hbar": 1.0, "kb": 1.0},
  "n": 1,
  "a": [[{"const": 0.0}]],
  "b": [[{"const": 0.0}]],
  "c": [[{"const": 1.0}]],
  "initial": {"mean_q": [0.0], "mean_p": [1.0]},
  "t_end": 1.0,
  "steps": 500,
  "outputs": [
    {"series": "iwasawa", "path": "free_particle_iwasawa.csv"},
    {"series": "mean", "path": "free_particle_mean.csv"}
  ]
})json";

constexpr const char* kParametricOscillator = R"json({
  "name": "parametric_oscillator",
  "constants": {"hbar": 1.0, "kb": 1.0},
  "n": 1,
  "a": [[{"const": 1.0, "harmonics": [[0.5, 1.0, 0.0]]}]],
  "b": [[{"const": 0.0}]],
  "c": [[{"const": 1.0}]],
  "initial": {"mean_q": [1.0], "mean_p": [0.0]},
  "t_end": 20.0,
  "steps": 10000,
  "outputs": [{"series": "thermo", "path": "parametric_oscillator_thermo.csv"}]
})json";

constexpr const char* kCoupled2d = R"json({
  "name": "coupled_2d",
  "constants": {"hbar": 1.0, "kb": 1.0},
  "n": 2,
  "a": [
    [{"const": 1.0}, {"const": 0.2}],
    [{"const": 0.2}, {"const": 1.5}]
  ],
  "b": [
    [{"const": 0.3}, {"const": 0.1}],
    [{"const": 0.1}, {"const": 0.2}]
  ],
  "c": [
    [{"const": 1.0}, {"const": 0.0}],
    [{"const": 0.0}, {"const": 1.0}]
  ],
  "initial": {"mean_q": [1.0, 0.0], "mean_p": [0.0, 1.0]},
  "t_end": 5.0,
  "steps": 2000,
  "outputs": [
    {"series": "mean", "path": "coupled_2d_mean.csv"},
    {"series": "wigner", "path": "coupled_2d_wigner.csv"}
  ]
})json";

}  // namespace

std::vector<std::string> preset_names() {
    return {"harmonic_oscillator", "free_particle", "parametric_oscillator", "coupled_2d"};
}

std::string preset_json(const std::string& name) {
    if (name == "harmonic_oscillator") return kHarmonicOscillator;
    if (name == "free_particle") return kFreeParticle;
    if (name == "parametric_oscillator") return kParametricOscillator;
    if (name == "coupled_2d") return kCoupled2d;
    throw ValidationError("unknown preset '" + name + "'");
}

Scenario load_preset(const std::string& name) {
    return parse_scenario(preset_json(name), "preset:" + name);
}

}  // namespace gausskin
