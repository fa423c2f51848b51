#pragma once

// The Bakamjian-Thomas mass operator m_d = m + V for a two-body channel:
// reduced interaction kernels on a quadrature grid, the bound-state
// eigenproblem, and Lippmann-Schwinger scattering for the reduced S-matrix.
//
// Nothing in this module refers to a form of dynamics: the reduced problem
// is the same in every form.

#include "btforms/coupling.hpp"
#include "btforms/kinematics.hpp"

#include <functional>
#include <string>
#include <vector>

namespace btforms {

/// Gauss-Legendre nodes mapped to (0, inf) by k = c (1 + x) / (1 - x),
/// with channel invariant masses m_i = m(k_i).
class QuadratureGrid {
public:
    QuadratureGrid(int n, double scale, double m1, double m2);

    int size() const { return static_cast<int>(k_.size()); }
    double scale() const { return scale_; }
    double m1() const { return m1_; }
    double m2() const { return m2_; }
    double threshold() const { return m1_ + m2_; }

    const std::vector<double>& nodes() const { return k_; }
    const std::vector<double>& weights() const { return w_; }
    const std::vector<double>& masses() const { return mass_; }
    const std::vector<double>& mass_derivatives() const { return dmass_; }

    double invariant_mass(double k) const;
    double dmass_dk(double k) const;
    bool same_as(const QuadratureGrid& other) const;

private:
    double scale_;
    double m1_;
    double m2_;
    std::vector<double> k_;
    std::vector<double> w_;
    std::vector<double> mass_;
    std::vector<double> dmass_;
};

/// Reference radial interactions V(k, k') in the k^2 dk measure (MeV^-2).
struct PotentialModel {
    enum class Kind { Free, Gaussian, Yamaguchi, GaussianLocal };

    Kind kind = Kind::Free;
    double strength = 0.0;  // Gaussian/GaussianLocal: V0 [MeV^-2]; Yamaguchi: C [MeV^2]
    double range = 1.0;     // Gaussian: Lambda0; Yamaguchi: beta; GaussianLocal: Lambda0 [MeV]

    static PotentialModel free() { return {}; }
    /// V = -V0 exp(-(k^2 + k'^2) / Lambda0^2)
    static PotentialModel gaussian(double v0, double lambda0);
    /// V = -C g(k) g(k'), g = 1 / (k^2 + beta^2)
    static PotentialModel yamaguchi(double c, double beta);
    /// s-wave projection of a local Gaussian well, normalized so V(0,0) = -V0:
    /// V = -V0 Lambda0^2 / (4 k k') [exp(-(k-k')^2/Lambda0^2) - exp(-(k+k')^2/Lambda0^2)]
    static PotentialModel gaussian_local(double v0, double lambda0);

    double operator()(double k, double kp) const;
    std::string name() const;
    std::string describe() const;
};

std::string_view to_string(PotentialModel::Kind kind);
PotentialModel::Kind parse_potential_kind(std::string_view name);

/// Yamaguchi form factor g(k) = 1 / (k^2 + beta^2).
inline double yamaguchi_form_factor(double k, double beta) { return 1.0 / (k * k + beta * beta); }

/// Reduced kernel <m_i, d || V^j || m_i', d'> on a grid, stored in the k-chart
/// (measure k^2 dk) with index d * N + i.
struct InteractionKernel {
    using Evaluator = std::function<CMatrix(double k, double kp)>;  // D x D over labels

    int two_j = 0;
    std::vector<DegeneracyLabel> labels;
    QuadratureGrid grid;
    CMatrix values;
    Evaluator evaluate;
    std::string provenance;

    int channels() const { return static_cast<int>(labels.size()); }
    int dimension() const { return channels() * grid.size(); }

    double hermiticity_residual() const;
    /// Same kernel in the invariant-mass chart (measure dm):
    /// k_i V k_i' / sqrt(m'(k_i) m'(k_i')).
    CMatrix m_chart_values() const;
    /// Symmetrized Nystrom matrix diag(m_i) + sqrt(w~_i) V sqrt(w~_i'),
    /// w~ = w_k k^2 (equal to the m-chart form with w_m = w_k dm/dk).
    CMatrix nystrom_matrix() const;
    /// sqrt(w~) V sqrt(w~) without the free mass.
    CMatrix weighted_interaction() const;
};

/// Builds the channel kernel: the radial model times the identity on the
/// degeneracy labels of (scheme, j).
InteractionKernel build_kernel(const PotentialModel& model, const QuadratureGrid& grid, int two_j,
                               DegeneracyScheme scheme = DegeneracyScheme::Spinless);

/// Eigen-decomposition of the mass operator on the grid.
struct SpectrumSolution {
    int two_j = 0;
    double threshold = 0.0;
    Eigen::VectorXd eigenvalues;   // all, ascending
    CMatrix eigenvectors;          // columns, symmetrized grid coordinates
    std::vector<double> bound_masses;
    std::vector<int> bound_indices;
    QuadratureGrid grid;
    int channels = 1;

    int size() const { return static_cast<int>(eigenvalues.size()); }
    /// psi_{lambda,j}(m_i, d) in the m-chart: eigenvector / sqrt(w_i dm/dk).
    CMatrix m_chart_wavefunction(int n) const;
    /// max |<psi_a|psi_b> - delta_ab| over bound states.
    double orthonormality_residual() const;
};

/// Throws ModelRejected if the mass operator has a non-positive eigenvalue
/// and InvalidArgument for a non-Hermitian kernel or a foreign grid.
SpectrumSolution solve_bound_states(const InteractionKernel& v, const QuadratureGrid& grid);
inline SpectrumSolution solve_bound_states(const InteractionKernel& v) { return solve_bound_states(v, v.grid); }

/// Reduced S-matrix <d || S^{mj} || d'> at on-shell momenta k0.
struct ReducedSMatrix {
    std::vector<double> k0;
    std::vector<double> masses;                 // m(k0)
    std::vector<CMatrix> s;                     // D x D per energy
    std::vector<std::vector<double>> phases;    // eigenphases (radians), ascending

    std::size_t size() const { return k0.size(); }
    double unitarity_residual() const;
    double symmetry_residual() const;
    /// Single-channel phase shift at energy index e.
    double phase_shift(std::size_t e) const { return phases.at(e).at(0); }
};

/// Partial-wave Lippmann-Schwinger equation with principal-value
/// subtraction; S = 1 - 2 pi i (k0^2 / m'(k0)) T(k0, k0).
/// Throws NumericalError if k0 sits on a grid node.
ReducedSMatrix solve_scattering(const InteractionKernel& v, const QuadratureGrid& grid,
                                const std::vector<double>& k0);

/// On-shell T(k0, k0) (D x D) for a single energy.
CMatrix on_shell_t_matrix(const InteractionKernel& v, const QuadratureGrid& grid, double k0);

struct PoleConsistencyReport {
    std::vector<std::pair<double, double>> brackets;   // sign changes of the Fredholm determinant
    std::vector<double> bound_masses;
    double scan_spacing = 0.0;                          // widest step (the scan is geometric toward threshold)
    bool consistent = false;
};

/// det(1 - G0(E) V) on the grid for E below threshold.
double fredholm_determinant(const InteractionKernel& v, const QuadratureGrid& grid, double energy);

/// Scans the Fredholm determinant below threshold (geometric steps in the
/// binding energy, down to 1e-12 of the threshold) and checks that its sign
/// changes bracket the bound-state masses one-to-one.
PoleConsistencyReport bound_state_pole_consistency(const InteractionKernel& v, const QuadratureGrid& grid,
                                                   int scan_points = 4000);

}  // namespace btforms
