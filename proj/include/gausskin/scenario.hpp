#pragma once

#include <string>
#include <vector>

#include "gausskin/constants.hpp"
#include "gausskin/hamiltonian.hpp"

namespace gausskin {

enum class SeriesKind { mean, iwasawa, thermo, wigner };

const char* series_name(SeriesKind kind);
SeriesKind series_from_name(const std::string& name);  // throws ValidationError

struct OutputSpec {
    SeriesKind series = SeriesKind::thermo;
    std::string path;
};

struct Scenario {
    std::string name;
    Constants constants;
    HamiltonianSpec hamiltonian;
    Eigen::VectorXd mean_q;
    Eigen::VectorXd mean_p;
    double t_end = 1.0;
    int steps = 1;
    std::vector<OutputSpec> outputs;
};

/// Parse and validate scenario JSON. Unknown keys are rejected; matrix blocks
/// are symmetrized per the HamiltonianSpec rules. Parse failures throw
/// ValidationError carrying the position, validation failures carry the
/// offending field name. `default_tol` seeds constants.tol when the file does
/// not set it (the GAUSSKIN_TOL hook); an explicit file value wins.
Scenario parse_scenario(const std::string& json_text, const std::string& origin = "<string>",
                        double default_tol = 1e-9);
Scenario load_scenario(const std::string& path, double default_tol = 1e-9);

/// Canonical JSON; load(serialize(s)) is a fixed point.
std::string serialize_scenario(const Scenario& scenario);

std::vector<std::string> preset_names();
std::string preset_json(const std::string& name);  // throws ValidationError for unknown names
Scenario load_preset(const std::string& name);

}  // namespace gausskin
