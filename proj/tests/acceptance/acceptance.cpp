// Acceptance driver: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Needs BTFORMS_CONFIG_DIR (bundled configs) and BTFORMS_CLI (the btforms
// executable) in the environment.

#include "btforms/config.hpp"
#include "btforms/coupling.hpp"
#include "btforms/dynamics.hpp"
#include "btforms/irrep_basis.hpp"
#include "btforms/kinematics.hpp"
#include "btforms/mass_operator.hpp"
#include "btforms/report.hpp"
#include "btforms/sampling.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <unistd.h>

using namespace btforms;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
        }
    }
    void info(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string env_or_empty(const char* name)
{
    const char* v = std::getenv(name);
    return v ? v : "";
}

std::string config_path(const std::string& name) { return env_or_empty("BTFORMS_CONFIG_DIR") + "/" + name; }

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

VerificationToggles only(std::initializer_list<bool VerificationToggles::*> on)
{
    VerificationToggles t{false, false, false, false, false, false};
    for (auto f : on) t.*f = true;
    return t;
}

struct Timed {
    RunReport report;
    double seconds;
};

Timed run_with(const std::string& file, VerificationToggles toggles)
{
    ModelConfig c = load_config(config_path(file));
    c.verify = toggles;
    const auto t0 = std::chrono::steady_clock::now();
    RunReport r = run(c, RunMode::All);
    return {std::move(r), seconds_since(t0)};
}

// Every record with this name must pass; there must be `expected` of them.
void require_records(Outcome& o, const RunReport& r, const std::string& tag, const std::string& name, std::size_t expected)
{
    std::size_t n = 0;
    double worst = 0.0;
    bool lower = false;
    double least = INFINITY;
    for (const auto& v : r.verifications) {
        if (v.name != name) continue;
        ++n;
        o.require(v.passed, tag + " " + name + "[" + v.forms + "] residual " + sci(v.residual) + " " + v.note);
        lower = v.comparison == ">";
        if (lower)
            least = std::min(least, v.residual);
        else
            worst = std::max(worst, v.residual);
    }
    o.require(n == expected, tag + " " + name + ": " + std::to_string(n) + " record(s), expected " + std::to_string(expected));
    if (n) o.info(tag + " " + name + (lower ? " min " + sci(least) : " max " + sci(worst)));
}

void require_clean(Outcome& o, const RunReport& r, const std::string& tag)
{
    for (const auto& i : r.issues) o.require(false, tag + " " + i.kind + " (" + i.form + "): " + i.message);
}

// -- criteria -----------------------------------------------------------------

Outcome spectrum_equality()
{
    Outcome o;
    double total = 0.0;
    for (const char* file : {"gaussian_bound.toml", "yamaguchi.toml"}) {
        const ModelConfig c = load_config(config_path(file));
        o.require(c.grid_n == 64, std::string(file) + " grid is not N = 64");
        const Timed t = run_with(file, only({&VerificationToggles::spectrum}));
        total += t.seconds;
        require_clean(o, t.report, file);
        require_records(o, t.report, file, "spectrum_equality", 3);
        for (const auto& s : t.report.spectra) o.require(!s.bound_masses.empty(), std::string(file) + " has no bound state in " + s.form);
    }
    o.require(total < 5.0, "took " + sci(total) + " s");
    o.info("time " + sci(total) + " s");
    return o;
}

Outcome smatrix_equivalence()
{
    Outcome o;
    double worst_time = 0.0;
    for (const char* file : {"gaussian.toml", "yamaguchi.toml"}) {
        const Timed t = run_with(file, only({&VerificationToggles::smatrix}));
        worst_time = std::max(worst_time, t.seconds);
        require_clean(o, t.report, file);
        o.require(t.report.phase_shifts.size() == 3 * 20, std::string(file) + " does not have 20 energies per form");
        require_records(o, t.report, file, "smatrix_equivalence", 3);
        require_records(o, t.report, file, "smatrix_unitarity", 3);
        o.require(t.seconds < 10.0, std::string(file) + " took " + sci(t.seconds) + " s");
    }
    o.info("slowest " + sci(worst_time) + " s");
    return o;
}

Outcome oracle_agreement()
{
    Outcome o;
    const Timed y = run_with("yamaguchi.toml", only({&VerificationToggles::oracle}));
    require_clean(o, y.report, "yamaguchi");
    require_records(o, y.report, "yamaguchi", "yamaguchi_bound_mass", 3);
    require_records(o, y.report, "yamaguchi", "yamaguchi_phase_shift", 3);
    const Timed g = run_with("gaussian.toml", only({&VerificationToggles::oracle}));
    require_clean(o, g.report, "gaussian");
    require_records(o, g.report, "gaussian", "born_phase_shift", 3);
    // The Born comparison must not be vacuous.
    std::size_t inside = 0;
    for (const auto& p : g.report.phase_shifts)
        for (double d : p.phases) inside += std::abs(d) < 0.05;
    o.require(inside > 0, "no Gaussian phase inside |delta| < 0.05");
    o.info(std::to_string(inside) + " Born comparisons");
    return o;
}

// Criteria 4-6 share one run per bound model.
struct DynamicsRuns {
    std::vector<std::pair<std::string, RunReport>> runs;
};

const DynamicsRuns& dynamics_runs()
{
    static const DynamicsRuns r = [] {
        DynamicsRuns out;
        for (const char* file : {"yamaguchi.toml", "gaussian_bound.toml"}) {
            const ModelConfig c = load_config(config_path(file));
            if (c.samples != 5 || c.intertwining_samples != 10) std::fprintf(stderr, "%s: unexpected sample counts\n", file);
            out.runs.emplace_back(file, run_with(file, only({&VerificationToggles::kinematic, &VerificationToggles::intertwining,
                                                              &VerificationToggles::wigner}))
                                            .report);
        }
        return out;
    }();
    return r;
}

Outcome dynamics_criterion(const std::vector<std::string>& names, int samples_expected, bool intertwining)
{
    Outcome o;
    for (const auto& [file, report] : dynamics_runs().runs) {
        const ModelConfig c = load_config(config_path(file));
        o.require((intertwining ? c.intertwining_samples : c.samples) == samples_expected,
                  file + " sample count differs from " + std::to_string(samples_expected));
        require_clean(o, report, file);
        for (const auto& n : names) require_records(o, report, file, n, 3);
    }
    return o;
}

Outcome structural_suite()
{
    Outcome o;
    Rng rng(20240601);
    const double m = 938.91897;

    double metric = 0.0, group = 0.0;
    for (int i = 0; i < 20; ++i) {
        const PoincareElement g1 = random_poincare_element(rng, 1.0), g2 = random_poincare_element(rng, 1.0);
        metric = std::max(metric, g1.lambda.metric_residual());
        const FourVector p = FourVector::on_shell(400.0 * random_unit_vector(rng), m);
        for (BoostKind kind : {BoostKind::Canonical, BoostKind::Front}) {
            const FourVector q = FourVector::on_shell((g1.lambda * p).spatial(), m);
            const Mat3 lhs = wigner_rotation(g2.lambda * g1.lambda, p, m, kind);
            const Mat3 rhs = wigner_rotation(g2.lambda, q, m, kind) * wigner_rotation(g1.lambda, p, m, kind);
            group = std::max(group, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    o.require(metric < 1e-12, "metric preservation " + sci(metric));
    o.require(group < 1e-10, "Wigner group law " + sci(group));
    o.info("metric " + sci(metric) + ", group law " + sci(group));

    double melosh = 0.0;
    for (double pz : {-500.0, 0.0, 300.0, 2000.0}) {
        const FourVector p = FourVector::on_shell(Vec3(0, 0, pz), m);
        melosh = std::max(melosh, (melosh_matrix(p, m) - Mat3::Identity()).cwiseAbs().maxCoeff());
    }
    o.require(melosh < 1e-12, "Melosh identity at zero transverse momentum " + sci(melosh));

    double unit = 0.0;
    for (int two_j = 0; two_j <= 6; two_j += 2) unit = std::max(unit, ls_helicity_recoupling(two_j, 2000.0).unitarity_residual(2000.0));
    o.require(unit < 1e-12, "recoupling unitarity " + sci(unit));

    {
        const QuadratureGrid grid(48, 300.0, m, m);
        const InteractionKernel v = build_kernel(PotentialModel::gaussian(1e-5, 400.0), grid, 2, DegeneracyScheme::LS);
        const InteractionKernel h = recouple_kernel(v, ls_helicity_recoupling(2, 2000.0));
        const Eigen::VectorXd a = solve_bound_states(v).eigenvalues, b = solve_bound_states(h).eigenvalues;
        const double d = (a - b).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff();
        o.require(d < 1e-12, "recoupled spectrum " + sci(d));
        o.info("recoupled spectrum " + sci(d));
    }

    {
        CoupledPacket pk{m, m, Vec3(50, -30, 80), 150.0, 250.0, 60.0, 0, 0};
        IntertwiningOptions opt;
        opt.n_total = 5;
        opt.n_theta = 8;
        opt.n_phi = 16;
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            const auto r = verify_intertwining(random_poincare_element(rng, 1.0), m, m, pk.wave_function(), 1, opt);
            worst = std::max(worst, r.residual);
        }
        o.require(worst < 1e-6, "Clebsch-Gordan intertwining " + sci(worst));
        o.info("CG intertwining " + sci(worst));
    }

    {
        double worst = 0.0;
        for (int two_j : {0, 1, 2}) {
            const IrrepLabel irrep(1877.0, two_j);
            const CVector spin = random_unit_cvector(rng, two_j + 1);
            for (DynamicsForm b : kAllForms) {
                const GaussianPacket pk = packet_around(b, Vec3(60, -30, 90), 70.0, irrep.mass);
                for (DynamicsForm a : kAllForms) {
                    if (a == b) continue;
                    const FormMapCoefficient map(a, b, irrep);
                    // Image box from the packet support, then quadrature in chart a.
                    const ChartBox src = pk.support();
                    Vec3 lo = Vec3::Constant(INFINITY), hi = -lo;
                    for (int i = 0; i <= 8; ++i)
                        for (int j = 0; j <= 8; ++j)
                            for (int k = 0; k <= 8; ++k) {
                                const Vec3 w = map.map(src.lo + (src.hi - src.lo).cwiseProduct(Vec3(i, j, k) / 8.0));
                                lo = lo.cwiseMin(w);
                                hi = hi.cwiseMax(w);
                            }
                    const BoxQuadrature q = BoxQuadrature::make(lo - 0.05 * (hi - lo), hi + 0.05 * (hi - lo), 40);
                    double sum = 0.0;
                    for (std::size_t i = 0; i < q.size(); ++i) {
                        const Vec3 vb = map.inverse_map(q.points[i]);
                        const CVector psi = map.spin_rotation(vb).matrix() * (pk(vb) * spin) / map.weight(vb);
                        sum += q.weights[i] * psi.squaredNorm();
                    }
                    worst = std::max(worst, std::abs(sum - 1.0));
                }
            }
        }
        o.require(worst < 1e-8, "form-map norm preservation " + sci(worst));
        o.info("form-map norms " + sci(worst));
    }
    return o;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int shell(const std::string& cmd)
{
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_contract()
{
    Outcome o;
    const std::string cli = env_or_empty("BTFORMS_CLI");
    if (cli.empty() || env_or_empty("BTFORMS_CONFIG_DIR").empty()) {
        o.require(false, "BTFORMS_CLI and BTFORMS_CONFIG_DIR must be set");
        return o;
    }
    const fs::path root = fs::temp_directory_path() / ("btforms_acceptance_" + std::to_string(getpid()));
    fs::remove_all(root);
    const char* files[] = {"spectrum.csv", "phaseshifts.csv", "verifications.csv", "report.json"};
    for (const char* name : {"yamaguchi", "gaussian", "free"}) {
        const std::string cfg = config_path(std::string(name) + ".toml");
        const fs::path a = root / (std::string(name) + "_a"), b = root / (std::string(name) + "_b"), e = root / (std::string(name) + "_e");
        const int ca = shell("'" + cli + "' run --config '" + cfg + "' --out '" + a.string() + "'");
        const int cb = shell("BTFORMS_THREADS=1 '" + cli + "' run --config '" + cfg + "' --out '" + b.string() + "'");
        const int ce = shell("'" + cli + "' export --in '" + a.string() + "' --out '" + e.string() + "'");
        o.require(ca == 0 && cb == 0, std::string(name) + " exit codes " + std::to_string(ca) + "," + std::to_string(cb));
        o.require(ce == 0, std::string(name) + " export exit code " + std::to_string(ce));
        for (const char* f : files) {
            o.require(fs::exists(a / f), std::string(name) + " missing " + f);
            o.require(slurp(a / f) == slurp(b / f), std::string(name) + " " + f + " differs between runs");
            o.require(slurp(a / f) == slurp(e / f), std::string(name) + " " + f + " differs after re-export");
        }
    }
    const int exit_fixture = shell("'" + cli + "' run --config '" + config_path("front_chart_exit.toml") + "' --out '" + (root / "x").string() + "'");
    o.require(exit_fixture == 1, "chart-exit fixture exit code " + std::to_string(exit_fixture));
    const fs::path bad = root / "bad.toml";
    std::ofstream(bad) << "[grid]\nn = 0\n";
    const int exit_bad = shell("'" + cli + "' run --config '" + bad.string() + "' --out '" + (root / "y").string() + "'");
    o.require(exit_bad == 2, "invalid config exit code " + std::to_string(exit_bad));
    o.info("3 configs deterministic, failing fixture exits 1, invalid config exits 2");
    fs::remove_all(root);
    return o;
}

}  // namespace

int main()
{
    struct Entry {
        int id;
        const char* title;
        std::function<Outcome()> body;
    };
    const std::vector<Entry> criteria = {
        {1, "cross-form spectrum equality", spectrum_equality},
        {2, "S-matrix equivalence and unitarity", smatrix_equivalence},
        {3, "oracle agreement", oracle_agreement},
        {4, "kinematic shortcut and subgroup sharpness",
         [] { return dynamics_criterion({"kinematic_shortcut", "kinematic_sharpness"}, 5, false); }},
        {5, "equivalence-unitary intertwining", [] { return dynamics_criterion({"intertwining"}, 10, true); }},
        {6, "Wigner-function relation", [] { return dynamics_criterion({"wigner_relation"}, 5, false); }},
        {7, "structural suite", structural_suite},
        {8, "CLI determinism and exit codes", cli_contract},
    };
    bool all = true;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        all = all && o.pass;
        std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
