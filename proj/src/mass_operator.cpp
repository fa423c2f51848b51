#include "btforms/mass_operator.hpp"

#include "btforms/errors.hpp"
#include "btforms/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace btforms {

namespace {

std::string format_double(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

QuadratureGrid::QuadratureGrid(int n, double scale, double m1, double m2) : scale_(scale), m1_(m1), m2_(m2)
{
    if (n < 1) throw InvalidArgument("grid size must be positive");
    if (!(scale > 0.0)) throw InvalidArgument("grid scale must be positive");
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw InvalidArgument("constituent masses must be positive");
    const GaussLegendre gl = gauss_legendre(n);
    k_.resize(n);
    w_.resize(n);
    mass_.resize(n);
    dmass_.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = gl.nodes[i];
        k_[i] = scale * (1.0 + x) / (1.0 - x);
        w_[i] = gl.weights[i] * 2.0 * scale / ((1.0 - x) * (1.0 - x));
        mass_[i] = invariant_mass(k_[i]);
        dmass_[i] = dmass_dk(k_[i]);
    }
}

double QuadratureGrid::invariant_mass(double k) const
{
    return std::sqrt(k * k + m1_ * m1_) + std::sqrt(k * k + m2_ * m2_);
}

double QuadratureGrid::dmass_dk(double k) const
{
    return k / std::sqrt(k * k + m1_ * m1_) + k / std::sqrt(k * k + m2_ * m2_);
}

bool QuadratureGrid::same_as(const QuadratureGrid& other) const
{
    return scale_ == other.scale_ && m1_ == other.m1_ && m2_ == other.m2_ && k_ == other.k_;
}

PotentialModel PotentialModel::gaussian(double v0, double lambda0)
{
    if (!(lambda0 > 0.0)) throw InvalidArgument("Gaussian range must be positive");
    return {Kind::Gaussian, v0, lambda0};
}

PotentialModel PotentialModel::yamaguchi(double c, double beta)
{
    if (!(beta > 0.0)) throw InvalidArgument("Yamaguchi beta must be positive");
    return {Kind::Yamaguchi, c, beta};
}

PotentialModel PotentialModel::gaussian_local(double v0, double lambda0)
{
    if (!(lambda0 > 0.0)) throw InvalidArgument("Gaussian range must be positive");
    return {Kind::GaussianLocal, v0, lambda0};
}

double PotentialModel::operator()(double k, double kp) const
{
    switch (kind) {
    case Kind::Free: return 0.0;
    case Kind::Gaussian: return -strength * std::exp(-(k * k + kp * kp) / (range * range));
    case Kind::Yamaguchi: return -strength * yamaguchi_form_factor(k, range) * yamaguchi_form_factor(kp, range);
    case Kind::GaussianLocal: {
        const double l2 = range * range;
        const double x = 4.0 * k * kp / l2;
        // (1 - e^{-x}) / x -> 1 as x -> 0
        const double ratio = x > 1e-12 ? -std::expm1(-x) / x : 1.0 - 0.5 * x;
        return -strength * std::exp(-(k - kp) * (k - kp) / l2) * ratio;
    }
    }
    return 0.0;
}

std::string_view to_string(PotentialModel::Kind kind)
{
    switch (kind) {
    case PotentialModel::Kind::Free: return "free";
    case PotentialModel::Kind::Gaussian: return "gaussian";
    case PotentialModel::Kind::Yamaguchi: return "yamaguchi";
    case PotentialModel::Kind::GaussianLocal: return "gaussian_local";
    }
    return "unknown";
}

PotentialModel::Kind parse_potential_kind(std::string_view name)
{
    if (name == "free") return PotentialModel::Kind::Free;
    if (name == "gaussian") return PotentialModel::Kind::Gaussian;
    if (name == "yamaguchi") return PotentialModel::Kind::Yamaguchi;
    if (name == "gaussian_local") return PotentialModel::Kind::GaussianLocal;
    throw InvalidArgument("unknown potential '" + std::string(name) + "'");
}

std::string PotentialModel::name() const { return std::string(to_string(kind)); }

std::string PotentialModel::describe() const
{
    return name() + "(strength=" + format_double(strength) + ", range=" + format_double(range) + ")";
}

double InteractionKernel::hermiticity_residual() const
{
    return (values - values.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix InteractionKernel::m_chart_values() const
{
    const int n = grid.size();
    CMatrix out = values;
    for (int a = 0; a < dimension(); ++a)
        for (int b = 0; b < dimension(); ++b) {
            const int i = a % n, ip = b % n;
            out(a, b) *= grid.nodes()[i] * grid.nodes()[ip] /
                         std::sqrt(grid.mass_derivatives()[i] * grid.mass_derivatives()[ip]);
        }
    return out;
}

CMatrix InteractionKernel::weighted_interaction() const
{
    const int n = grid.size();
    // sqrt(w_m) in the m-chart, w_m = w_k dm/dk
    Eigen::VectorXd s(dimension());
    for (int a = 0; a < dimension(); ++a) {
        const int i = a % n;
        s[a] = std::sqrt(grid.weights()[i] * grid.mass_derivatives()[i]);
    }
    return s.asDiagonal() * m_chart_values() * s.asDiagonal();
}

CMatrix InteractionKernel::nystrom_matrix() const
{
    CMatrix m = weighted_interaction();
    const int n = grid.size();
    for (int a = 0; a < dimension(); ++a) m(a, a) += grid.masses()[a % n];
    return m;
}

InteractionKernel build_kernel(const PotentialModel& model, const QuadratureGrid& grid, int two_j,
                               DegeneracyScheme scheme)
{
    if (model.kind != PotentialModel::Kind::Free && !(model.range > 0.0))
        throw InvalidArgument("potential range must be positive");
    if (two_j < 0 || two_j % 2 != 0) throw InvalidArgument("two-body channel spin must be a non-negative integer");
    InteractionKernel v{two_j, channel_labels(scheme, two_j), grid, {}, {}, model.describe()};
    const int d = v.channels();
    const int n = grid.size();
    v.evaluate = [model, d](double k, double kp) -> CMatrix {
        return CMatrix::Identity(d, d) * model(k, kp);
    };
    v.values = CMatrix::Zero(d * n, d * n);
    for (int i = 0; i < n; ++i)
        for (int ip = 0; ip <= i; ++ip) {
            const double x = model(grid.nodes()[i], grid.nodes()[ip]);
            for (int c = 0; c < d; ++c) {
                v.values(c * n + i, c * n + ip) = x;
                v.values(c * n + ip, c * n + i) = x;
            }
        }
    return v;
}

CMatrix SpectrumSolution::m_chart_wavefunction(int n) const
{
    const int nk = grid.size();
    CMatrix psi(nk, channels);
    for (int c = 0; c < channels; ++c)
        for (int i = 0; i < nk; ++i)
            psi(i, c) = eigenvectors(c * nk + i, n) / std::sqrt(grid.weights()[i] * grid.mass_derivatives()[i]);
    return psi;
}

double SpectrumSolution::orthonormality_residual() const
{
    double worst = 0.0;
    for (std::size_t a = 0; a < bound_indices.size(); ++a)
        for (std::size_t b = 0; b < bound_indices.size(); ++b) {
            const Complex ip = eigenvectors.col(bound_indices[a]).dot(eigenvectors.col(bound_indices[b]));
            worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

SpectrumSolution solve_bound_states(const InteractionKernel& v, const QuadratureGrid& grid)
{
    if (!grid.same_as(v.grid)) throw InvalidArgument("kernel was built on a different grid");
    const double scale = std::max(1e-300, v.values.cwiseAbs().maxCoeff());
    if (v.hermiticity_residual() > 1e-10 * scale) throw InvalidArgument("interaction kernel is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(v.nystrom_matrix());
    if (es.info() != Eigen::Success) throw NumericalError("mass-operator eigensolver failed");
    SpectrumSolution sol{v.two_j, grid.threshold(), es.eigenvalues(), es.eigenvectors(), {}, {}, grid, v.channels()};
    if (sol.eigenvalues[0] <= 0.0)
        throw ModelRejected("mass operator m + V is not positive: lowest eigenvalue " + format_double(sol.eigenvalues[0]));
    for (int n = 0; n < sol.size(); ++n)
        if (sol.eigenvalues[n] < grid.threshold()) {
            sol.bound_masses.push_back(sol.eigenvalues[n]);
            sol.bound_indices.push_back(n);
        }
    return sol;
}

double ReducedSMatrix::unitarity_residual() const
{
    double worst = 0.0;
    for (const CMatrix& m : s)
        worst = std::max(worst, (m * m.adjoint() - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff());
    return worst;
}

double ReducedSMatrix::symmetry_residual() const
{
    double worst = 0.0;
    for (const CMatrix& m : s) worst = std::max(worst, (m - m.transpose()).cwiseAbs().maxCoeff());
    return worst;
}

CMatrix on_shell_t_matrix(const InteractionKernel& v, const QuadratureGrid& grid, double k0)
{
    if (!grid.same_as(v.grid)) throw InvalidArgument("kernel was built on a different grid");
    if (!(k0 > 0.0)) throw InvalidArgument("on-shell momentum must be positive");
    const int n = grid.size();
    const int d = v.channels();
    const auto& k = grid.nodes();
    const auto& w = grid.weights();
    for (int i = 0; i < n; ++i)
        if (std::abs(k[i] - k0) < 1e-9 * k0)
            throw NumericalError("on-shell momentum " + format_double(k0) + " coincides with a grid node");

    const double energy = grid.invariant_mass(k0);
    const double h0 = 2.0 * k0 / grid.dmass_dk(k0);
    // Propagator weights with the principal-value subtraction; index n is k0.
    CVector u(n + 1);
    double pv_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        u[i] = w[i] * k[i] * k[i] / (energy - grid.masses()[i]);
        pv_sum += w[i] / (k0 * k0 - k[i] * k[i]);
    }
    u[n] = -k0 * k0 * h0 * Complex(pv_sum, std::numbers::pi / (2.0 * k0));

    std::vector<double> kk(k.begin(), k.end());
    kk.push_back(k0);
    const int np = n + 1;
    CMatrix vmat(d * np, d * np);
    for (int i = 0; i < np; ++i)
        for (int ip = 0; ip < np; ++ip) {
            CMatrix block;
            if (i < n && ip < n) {
                block.resize(d, d);
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) block(a, b) = v.values(a * n + i, b * n + ip);
            } else {
                block = v.evaluate(kk[i], kk[ip]);
            }
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) vmat(a * np + i, b * np + ip) = block(a, b);
        }
    CVector uu(d * np);
    for (int a = 0; a < d; ++a) uu.segment(a * np, np) = u;
    CMatrix lhs = -vmat * uu.asDiagonal();
    lhs.diagonal().array() += 1.0;
    CMatrix rhs(d * np, d);
    for (int b = 0; b < d; ++b) rhs.col(b) = vmat.col(b * np + n);
    const CMatrix t = lhs.partialPivLu().solve(rhs);
    CMatrix on_shell(d, d);
    for (int a = 0; a < d; ++a) on_shell.row(a) = t.row(a * np + n);
    return on_shell;
}

ReducedSMatrix solve_scattering(const InteractionKernel& v, const QuadratureGrid& grid, const std::vector<double>& k0)
{
    ReducedSMatrix out;
    const Complex i(0.0, 1.0);
    for (double q : k0) {
        const CMatrix t = on_shell_t_matrix(v, grid, q);
        const double rho = q * q / grid.dmass_dk(q);
        CMatrix s = CMatrix::Identity(t.rows(), t.cols()) - 2.0 * std::numbers::pi * i * rho * t;
        std::vector<double> ph;
        if (s.rows() == 1) {
            ph.push_back(0.5 * std::arg(s(0, 0)));
        } else {
            Eigen::ComplexEigenSolver<CMatrix> es(s);
            for (int a = 0; a < s.rows(); ++a) ph.push_back(0.5 * std::arg(es.eigenvalues()[a]));
            std::sort(ph.begin(), ph.end());
        }
        out.k0.push_back(q);
        out.masses.push_back(grid.invariant_mass(q));
        out.s.push_back(std::move(s));
        out.phases.push_back(std::move(ph));
    }
    return out;
}

double fredholm_determinant(const InteractionKernel& v, const QuadratureGrid& grid, double energy)
{
    if (!grid.same_as(v.grid)) throw InvalidArgument("kernel was built on a different grid");
    if (!(energy < grid.threshold())) throw InvalidArgument("Fredholm scan requires E below threshold");
    const int n = grid.size();
    // det(1 - G0 V) = det(1 + S V~ S), S = diag(1/sqrt(m_i - E)); Hermitian, so real.
    Eigen::VectorXd s(v.dimension());
    for (int a = 0; a < v.dimension(); ++a) s[a] = 1.0 / std::sqrt(grid.masses()[a % n] - energy);
    CMatrix m = s.asDiagonal() * v.weighted_interaction() * s.asDiagonal();
    m.diagonal().array() += 1.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    double det = 1.0;
    for (int a = 0; a < es.eigenvalues().size(); ++a) det *= es.eigenvalues()[a];
    return det;
}

PoleConsistencyReport bound_state_pole_consistency(const InteractionKernel& v, const QuadratureGrid& grid,
                                                   int scan_points)
{
    PoleConsistencyReport report;
    const SpectrumSolution spectrum = solve_bound_states(v, grid);
    report.bound_masses = spectrum.bound_masses;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(v.weighted_interaction(), Eigen::EigenvaluesOnly);
    const double lowest = *std::min_element(grid.masses().begin(), grid.masses().end());
    // Weyl bound: no eigenvalue of m + V lies below min(m_i) + min(eig V~).
    const double lo = std::max(1e-6, lowest + std::min(0.0, es.eigenvalues()[0]) - 1.0);
    const double hi = grid.threshold();
    // Geometric in the binding energy so shallow states near threshold are resolved.
    const double span = hi - lo;
    const double ratio = std::pow(1e-12 * hi / span, 1.0 / (scan_points - 1));
    report.scan_spacing = span * (1.0 - ratio);
    double prev_e = lo;
    double prev = fredholm_determinant(v, grid, lo);
    for (int s = 1; s < scan_points; ++s) {
        const double e = hi - span * std::pow(ratio, s);
        const double d = fredholm_determinant(v, grid, e);
        if ((d > 0.0) != (prev > 0.0)) report.brackets.emplace_back(prev_e, e);
        prev = d;
        prev_e = e;
    }
    report.consistent = report.brackets.size() == report.bound_masses.size();
    for (std::size_t b = 0; report.consistent && b < report.brackets.size(); ++b) {
        const double lam = report.bound_masses[b];
        report.consistent = lam >= report.brackets[b].first && lam <= report.brackets[b].second;
    }
    return report;
}

}  // namespace btforms
