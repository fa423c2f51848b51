#pragma once

// Run configuration: a strict TOML subset (sections, scalars, single-line
// arrays, comments) mapped onto ModelConfig.

#include "btforms/coupling.hpp"
#include "btforms/irrep_basis.hpp"
#include "btforms/mass_operator.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace btforms {

/// Parse or schema failure; the message names the line and/or key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using TomlValue = std::variant<bool, double, std::string, std::vector<double>, std::vector<std::string>>;

struct TomlEntry {
    TomlValue value;
    int line = 0;
};

/// "section.key" -> value, in file order of sections and keys.
using TomlTable = std::map<std::string, TomlEntry>;

TomlTable parse_toml(const std::string& text, const std::string& origin = "<string>");

struct ChannelSpec {
    int two_j = 0;
    DegeneracyScheme scheme = DegeneracyScheme::Spinless;
};

struct Tolerances {
    double spectrum = 1e-10;
    double phase = 1e-10;
    double unitarity = 1e-8;
    double oracle = 1e-8;
    double born = 0.05;
    double born_window = 0.05;   // only |delta| below this is compared with Born
    double kinematic = 1e-6;
    double sharpness = 1e-3;     // lower bound
    double intertwining = 1e-6;
    double wigner = 1e-8;
    double free_phase = 1e-12;
};

struct VerificationToggles {
    bool spectrum = true;
    bool smatrix = true;
    bool oracle = true;
    bool kinematic = true;
    bool intertwining = true;
    bool wigner = true;
};

struct ModelConfig {
    std::string title = "untitled";
    double m1 = 0.0;
    double m2 = 0.0;
    PotentialModel potential;
    std::vector<ChannelSpec> channels{ChannelSpec{}};
    int grid_n = 64;
    double grid_scale = 300.0;
    std::vector<DynamicsForm> forms{DynamicsForm::Instant, DynamicsForm::Point, DynamicsForm::Front};
    std::vector<double> k0;
    Vec3 packet_momentum = Vec3::Zero();
    double packet_width = 80.0;
    double plus_margin = 1.0;
    VerificationToggles verify;
    Tolerances tol;
    int samples = 5;
    int intertwining_samples = 10;
    std::uint64_t seed = 20240601;

    /// Canonical TOML text with every default filled in. Parsing the echo
    /// gives back an equal config.
    std::string echo() const;
    /// Multiplies every tolerance except the sharpness lower bound.
    void scale_tolerances(double factor);
};

ModelConfig parse_config(const std::string& text, const std::string& origin = "<string>");
ModelConfig load_config(const std::string& path);

/// Validation shared by the parser and programmatic construction.
void validate(const ModelConfig& config);

}  // namespace btforms
