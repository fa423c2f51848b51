#include "btforms/report.hpp"

#include "btforms/dynamics.hpp"
#include "btforms/errors.hpp"
#include "btforms/oracles.hpp"
#include "btforms/sampling.hpp"

#include <Eigen/Core>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <thread>

#ifndef BTFORMS_VERSION
#define BTFORMS_VERSION "0.0.0"
#endif

namespace btforms {

std::string_view to_string(RunMode mode)
{
    switch (mode) {
    case RunMode::Solve: return "solve";
    case RunMode::Scatter: return "scatter";
    case RunMode::Verify: return "verify";
    case RunMode::All: return "run";
    }
    return "run";
}

RunMode parse_mode(std::string_view name)
{
    if (name == "solve") return RunMode::Solve;
    if (name == "scatter") return RunMode::Scatter;
    if (name == "verify") return RunMode::Verify;
    if (name == "run") return RunMode::All;
    throw InvalidArgument("unknown run mode '" + std::string(name) + "'");
}

int worker_threads()
{
    if (const char* env = std::getenv("BTFORMS_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min<long>(n, 256));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void run_tasks(std::vector<std::function<void()>>& tasks, int threads)
{
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) tasks[i]();
    };
    const int n = std::min<int>(threads, static_cast<int>(tasks.size()));
    if (n <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
}

std::string fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Build timestamps would break byte-identical reruns; honour SOURCE_DATE_EPOCH only.
std::string timestamp()
{
    const char* env = std::getenv("SOURCE_DATE_EPOCH");
    if (!env) return "unrecorded";
    char* end = nullptr;
    const long long t = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0') return "unrecorded";
    const std::time_t tt = static_cast<std::time_t>(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Per (channel, form) solver output.
struct FormRun {
    DynamicsForm form;
    std::optional<GaussianPacket> probe;
    std::shared_ptr<const SpectrumSolution> spectrum;
    std::optional<FormSMatrix> smatrix;
    std::vector<IssueRecord> issues;
};

struct ChannelRun {
    ChannelSpec spec;
    std::optional<InteractionKernel> kernel;
    std::vector<FormRun> forms;
    std::vector<IssueRecord> issues;

    const FormRun& get(DynamicsForm f) const
    {
        for (const auto& r : forms)
            if (r.form == f) return r;
        throw InvalidArgument("form not requested");
    }
};

std::string form_name(DynamicsForm f) { return std::string(to_string(f)); }

IssueRecord issue(std::string kind, const std::string& form, int j, std::string message)
{
    return {std::move(kind), form, j, std::move(message)};
}

// Exceptions mapped to report issue kinds.
template <class F>
void guarded(std::vector<IssueRecord>& issues, const std::string& form, int j, F&& body)
{
    try {
        body();
    } catch (const ChartExit& e) {
        issues.push_back(issue("chart_exit", form, j, e.what()));
    } catch (const ModelRejected& e) {
        issues.push_back(issue("solver_rejection", form, j, e.what()));
    } catch (const std::exception& e) {
        issues.push_back(issue("numerical_error", form, j, e.what()));
    }
}

class Skip : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const SpectrumSolution& need_spectrum(const FormRun& r)
{
    if (!r.spectrum) throw Skip(form_name(r.form) + " spectrum unavailable");
    return *r.spectrum;
}

const FormSMatrix& need_smatrix(const FormRun& r)
{
    if (!r.smatrix) throw Skip(form_name(r.form) + " S-matrix unavailable");
    return *r.smatrix;
}

const GaussianPacket& need_probe(const FormRun& r)
{
    if (!r.probe) throw Skip(form_name(r.form) + " probe packet unavailable");
    return *r.probe;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Normalized internal vector spread over a few spectral components.
CVector sample_internal(const SpectrumSolution& s, Rng& rng)
{
    const int n = s.size();
    CVector v = s.eigenvectors.col(0) * Complex(uniform(rng, 0.5, 1.0), uniform(rng, -0.5, 0.5));
    for (int t = 0; t < 2; ++t) {
        const int idx = std::uniform_int_distribution<int>(1, n - 1)(rng);
        v += s.eigenvectors.col(idx) * Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    }
    return v / v.norm();
}

std::shared_ptr<const PacketState> sample_state(const ModelConfig& cfg, const SpectrumSolution& s, DynamicsForm form,
                                                Rng& rng)
{
    Vec3 center = cfg.packet_momentum;
    for (int i = 0; i < 3; ++i) center[i] += uniform(rng, -0.5, 0.5) * cfg.packet_width;
    const GaussianPacket pk = packet_around(form, center, cfg.packet_width, s.threshold, cfg.plus_margin);
    const Eigen::VectorXd masses = internal_masses(s.grid, s.channels);
    PacketState::Term term{sample_internal(s, rng), random_unit_cvector(rng, s.two_j + 1), pk};
    return std::make_shared<PacketState>(form, s.two_j, masses, std::vector{term});
}

struct Check {
    VerificationRecord record;
    std::function<void(VerificationRecord&)> body;
};

}  // namespace

RunReport run(const ModelConfig& config, RunMode mode)
{
    validate(config);
    RunReport report;
    report.mode = std::string(to_string(mode));
    report.config = config.echo();
    report.provenance = {fnv1a(report.config), BTFORMS_VERSION,
                         std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                             std::to_string(EIGEN_MINOR_VERSION),
                         timestamp()};
    const int threads = worker_threads();

    // Kernels are built once per channel and shared by every form.
    std::vector<ChannelRun> channels;
    for (const ChannelSpec& spec : config.channels) {
        ChannelRun ch{spec, std::nullopt, {}, {}};
        const QuadratureGrid grid(config.grid_n, config.grid_scale, config.m1, config.m2);
        guarded(ch.issues, "", spec.two_j / 2, [&] { ch.kernel = build_kernel(config.potential, grid, spec.two_j, spec.scheme); });
        for (DynamicsForm f : config.forms) ch.forms.push_back(FormRun{f, std::nullopt, nullptr, std::nullopt, {}});
        channels.push_back(std::move(ch));
    }

    std::vector<std::function<void()>> solves;
    for (ChannelRun& ch : channels) {
        if (!ch.kernel) continue;
        for (FormRun& fr : ch.forms) {
            solves.push_back([&config, &ch, &fr, mode] {
                const int j = ch.spec.two_j / 2;
                const std::string fname = form_name(fr.form);
                std::optional<InteractionKernel> reduced;
                guarded(fr.issues, fname, j, [&] {
                    fr.probe = packet_around(fr.form, config.packet_momentum, config.packet_width,
                                             ch.kernel->grid.threshold(), config.plus_margin);
                    reduced = FormInteraction(fr.form, *ch.kernel).reduced_kernel(*fr.probe);
                });
                if (!reduced) return;
                if (mode != RunMode::Scatter)
                    guarded(fr.issues, fname, j, [&] {
                        fr.spectrum = std::make_shared<const SpectrumSolution>(solve_bound_states(*reduced));
                    });
                if (mode != RunMode::Solve)
                    guarded(fr.issues, fname, j, [&] {
                        fr.smatrix = FormSMatrix{fr.form, ch.spec.two_j, solve_scattering(*reduced, reduced->grid, config.k0)};
                    });
            });
        }
    }
    run_tasks(solves, threads);

    for (const ChannelRun& ch : channels) {
        const int j = ch.spec.two_j / 2;
        report.issues.insert(report.issues.end(), ch.issues.begin(), ch.issues.end());
        for (const FormRun& fr : ch.forms) {
            report.issues.insert(report.issues.end(), fr.issues.begin(), fr.issues.end());
            if (fr.spectrum && mode != RunMode::Scatter)
                report.spectra.push_back({form_name(fr.form), j, fr.spectrum->threshold, fr.spectrum->eigenvalues[0],
                                          fr.spectrum->bound_masses});
            if (fr.smatrix && mode != RunMode::Solve) {
                const ReducedSMatrix& s = fr.smatrix->reduced;
                for (std::size_t e = 0; e < s.size(); ++e) {
                    const int d = static_cast<int>(s.s[e].rows());
                    const double u = (s.s[e].adjoint() * s.s[e] - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
                    report.phase_shifts.push_back({form_name(fr.form), j, s.k0[e], s.masses[e], s.phases[e], u});
                }
            }
        }
    }
    if (mode != RunMode::Verify && mode != RunMode::All) return report;

    const Tolerances& tol = config.tol;
    std::vector<Check> checks;
    for (const ChannelRun& ch : channels) {
        const int j = ch.spec.two_j / 2;
        const auto& forms = config.forms;
        std::vector<std::pair<DynamicsForm, DynamicsForm>> pairs;
        for (std::size_t a = 0; a < forms.size(); ++a)
            for (std::size_t b = a + 1; b < forms.size(); ++b) pairs.emplace_back(forms[a], forms[b]);
        auto add = [&](std::string name, std::string fs, double tolerance, std::function<void(VerificationRecord&)> body,
                       std::string cmp = "<=") {
            VerificationRecord r;
            r.name = std::move(name);
            r.forms = std::move(fs);
            r.j = j;
            r.tolerance = tolerance;
            r.comparison = std::move(cmp);
            checks.push_back({std::move(r), std::move(body)});
        };
        auto pair_name = [](DynamicsForm a, DynamicsForm b) { return form_name(a) + "," + form_name(b); };
        const ChannelRun* c = &ch;

        if (config.verify.spectrum)
            for (auto [a, b] : pairs)
                add("spectrum_equality", pair_name(a, b), tol.spectrum, [c, a, b](VerificationRecord& r) {
                    const auto& sa = need_spectrum(c->get(a)).bound_masses;
                    const auto& sb = need_spectrum(c->get(b)).bound_masses;
                    if (sa.size() != sb.size()) {
                        r.residual = kNaN;
                        r.note = "bound-state counts differ: " + std::to_string(sa.size()) + " vs " + std::to_string(sb.size());
                        return;
                    }
                    r.residual = 0.0;
                    for (std::size_t n = 0; n < sa.size(); ++n)
                        r.residual = std::max(r.residual, std::abs(sa[n] - sb[n]) / std::abs(sa[n]));
                    r.note = std::to_string(sa.size()) + " bound state(s)";
                });

        if (config.verify.smatrix) {
            for (auto [a, b] : pairs)
                add("smatrix_equivalence", pair_name(a, b), tol.phase, [c, a, b](VerificationRecord& r) {
                    const auto& rb = c->get(b);
                    const SMatrixEquivalenceReport rep =
                        verify_smatrix_equivalence(need_smatrix(c->get(a)), need_smatrix(rb), need_probe(rb));
                    r.residual = std::max(rep.operator_residual, rep.phase_residual);
                    r.note = "operator " + format_double(rep.operator_residual) + ", phase " + format_double(rep.phase_residual);
                });
            for (DynamicsForm f : forms)
                add("smatrix_unitarity", form_name(f), tol.unitarity, [c, f](VerificationRecord& r) {
                    r.residual = need_smatrix(c->get(f)).reduced.unitarity_residual();
                });
        }

        if (config.verify.oracle) {
            const PotentialModel& pot = config.potential;
            for (DynamicsForm f : forms) {
                switch (pot.kind) {
                case PotentialModel::Kind::Yamaguchi:
                    add("yamaguchi_bound_mass", form_name(f), tol.oracle, [c, f, &config](VerificationRecord& r) {
                        const YamaguchiOracle o(config.potential.strength, config.potential.range, config.m1, config.m2);
                        const double ref = o.bound_mass();
                        const auto& bm = need_spectrum(c->get(f)).bound_masses;
                        const std::size_t expect = ref > 0.0 ? static_cast<std::size_t>(c->kernel->channels()) : 0;
                        if (bm.size() != expect) {
                            r.residual = kNaN;
                            r.note = "expected " + std::to_string(expect) + " bound state(s), found " + std::to_string(bm.size());
                            return;
                        }
                        r.residual = 0.0;
                        for (double m : bm) r.residual = std::max(r.residual, std::abs(m - ref));
                        r.note = "oracle mass " + format_double(ref) + " MeV, absolute residual";
                    });
                    add("yamaguchi_phase_shift", form_name(f), tol.oracle, [c, f, &config](VerificationRecord& r) {
                        const YamaguchiOracle o(config.potential.strength, config.potential.range, config.m1, config.m2);
                        const ReducedSMatrix& s = need_smatrix(c->get(f)).reduced;
                        r.residual = 0.0;
                        for (std::size_t e = 0; e < s.size(); ++e) {
                            const double ref = o.phase_shift(s.k0[e]);
                            for (double d : s.phases[e]) r.residual = std::max(r.residual, phase_difference(d, ref));
                        }
                    });
                    break;
                case PotentialModel::Kind::Gaussian:
                case PotentialModel::Kind::GaussianLocal:
                    add("born_phase_shift", form_name(f), tol.born, [c, f, &config](VerificationRecord& r) {
                        const ReducedSMatrix& s = need_smatrix(c->get(f)).reduced;
                        r.residual = 0.0;
                        int used = 0;
                        for (std::size_t e = 0; e < s.size(); ++e) {
                            const double born = born_phase_shift(config.potential, config.m1, config.m2, s.k0[e]);
                            for (double d : s.phases[e]) {
                                if (std::abs(d) >= config.tol.born_window) continue;
                                ++used;
                                r.residual = std::max(r.residual, std::abs(d - born) / std::abs(born));
                            }
                        }
                        r.note = used ? std::to_string(used) + " phase(s) inside |delta| < " + format_double(config.tol.born_window)
                                      : "not applicable: no phase inside |delta| < " + format_double(config.tol.born_window);
                    });
                    break;
                case PotentialModel::Kind::Free:
                    add("free_phase_shift", form_name(f), tol.free_phase, [c, f](VerificationRecord& r) {
                        const ReducedSMatrix& s = need_smatrix(c->get(f)).reduced;
                        const auto& bm = need_spectrum(c->get(f)).bound_masses;
                        r.residual = 0.0;
                        for (const auto& ph : s.phases)
                            for (double d : ph) r.residual = std::max(r.residual, std::abs(d));
                        if (!bm.empty()) {
                            r.residual = kNaN;
                            r.note = "free model produced bound states";
                        }
                    });
                    break;
                }
            }
        }

        if (config.verify.kinematic)
            for (DynamicsForm f : forms) {
                add("kinematic_shortcut", form_name(f), tol.kinematic, [c, f, &config](VerificationRecord& r) {
                    const FormRun& fr = c->get(f);
                    const auto spec = fr.spectrum;
                    need_spectrum(fr);
                    Rng rng(config.seed ^ (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(f) + 1)));
                    r.residual = 0.0;
                    for (int s = 0; s < config.samples; ++s) {
                        const StatePtr state = sample_state(config, *spec, f, rng);
                        const PoincareElement g = random_kinematic_element(f, rng);
                        const DynamicalState dyn = apply_dynamical_U(state, g, spec);
                        const StatePtr kin = apply_kinematic_U(state, g);
                        r.residual = std::max(r.residual, spectral_distance(dyn, *kin, 16));
                    }
                    r.note = std::to_string(config.samples) + " kinematic element(s)";
                });
                add(
                    "kinematic_sharpness", form_name(f), tol.sharpness,
                    [c, f, &config](VerificationRecord& r) {
                        const FormRun& fr = c->get(f);
                        const SpectrumSolution& s = need_spectrum(fr);
                        const GaussianPacket& pk = need_probe(fr);
                        const double ma = s.eigenvalues[0];
                        const double mb = ma + 100.0;
                        std::vector<Vec3> samples{pk.center};
                        for (int sx : {-1, 1})
                            for (int sy : {-1, 1})
                                samples.push_back(pk.center + 2.0 * Vec3(sx * pk.width[0], sy * pk.width[1], sx * sy * pk.width[2]));
                        r.residual = wigner_block_mass_difference(f, s.two_j, non_kinematic_element(f), ma, mb, samples);
                        r.note = "masses " + format_double(ma) + " and " + format_double(mb);
                        (void)config;
                    },
                    ">");
            }

        if (config.verify.intertwining)
            for (auto [a, b] : pairs)
                add("intertwining", pair_name(a, b), tol.intertwining, [c, a, b, &config](VerificationRecord& r) {
                    const auto spec = c->get(b).spectrum;
                    need_spectrum(c->get(b));
                    Rng rng(config.seed + 7919u * (static_cast<std::uint64_t>(a) * 3 + static_cast<std::uint64_t>(b) + 1));
                    r.residual = 0.0;
                    for (int s = 0; s < config.intertwining_samples; ++s) {
                        const StatePtr state = sample_state(config, *spec, b, rng);
                        const PoincareElement g = random_poincare_element(rng, 1.0);
                        const auto moved = std::make_shared<DynamicalState>(apply_dynamical_U(state, g, spec));
                        const DynamicalState lhs = relate_irreducible_vectors(moved, a, spec);
                        const auto related = std::make_shared<DynamicalState>(relate_irreducible_vectors(state, a, spec));
                        const DynamicalState rhs = apply_dynamical_U(related, g, spec);
                        r.residual = std::max(r.residual, spectral_distance(lhs, rhs, 16));
                    }
                    r.note = std::to_string(config.intertwining_samples) + " state(s), |rapidity| <= 1";
                });

        if (config.verify.wigner)
            for (auto [cf, bf] : pairs)
                add("wigner_relation", pair_name(cf, bf), tol.wigner, [c, cf, bf, &config](VerificationRecord& r) {
                    const SpectrumSolution& s = need_spectrum(c->get(cf));
                    Rng rng(config.seed + 104729u * (static_cast<std::uint64_t>(cf) * 3 + static_cast<std::uint64_t>(bf) + 1));
                    const IrrepLabel irrep(s.eigenvalues[0], s.two_j);
                    const GaussianPacket pk =
                        packet_around(cf, config.packet_momentum, config.packet_width, irrep.mass, config.plus_margin);
                    const CVector spin = random_unit_cvector(rng, s.two_j + 1);
                    const IrrepWaveFunction w{cf, irrep, [pk, spin](const Vec3& v) { return CVector(pk(v) * spin); },
                                              pk.support()};
                    r.residual = 0.0;
                    for (int k = 0; k < config.samples; ++k)
                        r.residual = std::max(r.residual, verify_wigner_relation(cf, bf, w, random_poincare_element(rng, 1.0), 12));
                    r.note = std::to_string(config.samples) + " transformation(s)";
                });
    }

    std::vector<std::function<void()>> tasks;
    for (Check& ck : checks)
        tasks.push_back([&ck] {
            VerificationRecord& r = ck.record;
            try {
                ck.body(r);
            } catch (const Skip& e) {
                r.residual = kNaN;
                r.note = std::string("not evaluated: ") + e.what();
            } catch (const ChartExit& e) {
                r.residual = kNaN;
                r.note = std::string("chart exit: ") + e.what();
            } catch (const std::exception& e) {
                r.residual = kNaN;
                r.note = std::string("error: ") + e.what();
            }
            if (std::isnan(r.residual))
                r.passed = false;
            else
                r.passed = r.comparison == ">" ? r.residual > r.tolerance : r.residual <= r.tolerance;
        });
    run_tasks(tasks, threads);
    for (Check& ck : checks) report.verifications.push_back(std::move(ck.record));
    return report;
}

}  // namespace btforms
