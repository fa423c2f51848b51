#pragma once

// Orchestration of the per-form solvers and cross-form verifications, and
// the on-disk result set (spectrum.csv, phaseshifts.csv, verifications.csv,
// report.json).

#include "btforms/config.hpp"

#include <string>
#include <vector>

namespace btforms {

enum class RunMode { Solve, Scatter, Verify, All };
std::string_view to_string(RunMode mode);
RunMode parse_mode(std::string_view name);

struct SpectrumRecord {
    std::string form;
    int j = 0;
    double threshold = 0.0;
    double lowest_eigenvalue = 0.0;
    std::vector<double> bound_masses;
    bool operator==(const SpectrumRecord&) const = default;
};

struct PhaseShiftRecord {
    std::string form;
    int j = 0;
    double k0 = 0.0;
    double mass = 0.0;
    std::vector<double> phases;   // eigenphases, radians
    double unitarity = 0.0;       // max |S^dagger S - 1|
    bool operator==(const PhaseShiftRecord&) const = default;
};

struct VerificationRecord {
    std::string name;
    std::string forms;            // e.g. "instant" or "instant,front"
    int j = 0;
    double residual = 0.0;        // NaN when the check could not be evaluated
    double tolerance = 0.0;
    std::string comparison = "<=";  // "<=" upper bound, ">" lower bound
    bool passed = false;
    std::string note;
    bool operator==(const VerificationRecord& o) const;
};

struct IssueRecord {
    std::string kind;             // "solver_rejection", "chart_exit", "numerical_error"
    std::string form;
    int j = 0;
    std::string message;
    bool operator==(const IssueRecord&) const = default;
};

struct Provenance {
    std::string config_hash;
    std::string version;
    std::string eigen_version;
    std::string timestamp;
    bool operator==(const Provenance&) const = default;
};

struct RunReport {
    std::string mode;
    std::string config;           // canonical echo of the validated config
    Provenance provenance;
    std::vector<SpectrumRecord> spectra;
    std::vector<PhaseShiftRecord> phase_shifts;
    std::vector<VerificationRecord> verifications;
    std::vector<IssueRecord> issues;

    bool all_passed() const;
    bool has_rejection() const;
    /// 0 iff every verification passed and no solver rejected the model.
    int exit_code() const;
    bool operator==(const RunReport&) const = default;
};

/// Worker count: BTFORMS_THREADS if set and positive, else the hardware
/// concurrency.
int worker_threads();

RunReport run(const ModelConfig& config, RunMode mode = RunMode::All);

/// Writes the four result files into `dir` (created if needed).
void export_report(const RunReport& report, const std::string& dir);
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);
RunReport load_report(const std::string& path);

std::string spectrum_csv(const RunReport& report);
std::string phaseshifts_csv(const RunReport& report);
std::string verifications_csv(const RunReport& report);

/// printf("%.17g") with NaN/inf spelled "nan"/"inf".
std::string format_double(double x);

}  // namespace btforms
