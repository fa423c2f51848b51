#pragma once

// Dynamical representations of the Poincare group built from the mass
// operator spectrum, in any of the three forms, and the equivalence maps
// between them.
//
// A model state is a function of a chart point v with values in
// (internal index r) x (spin sigma), r = d * N + i running over degeneracy
// labels d and grid masses m_i. Internal coordinates are the symmetrized
// grid coordinates, so the norm is sum_r int |psi(v, r, sigma)|^2 dv.
//
// Translation phase convention: U(1, a) |p> = exp(-i a.p) |p> with
// a.p = a^0 p^0 - a.p (Minkowski).

#include "btforms/irrep_basis.hpp"
#include "btforms/kinematics.hpp"
#include "btforms/mass_operator.hpp"
#include "btforms/quadrature.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace btforms {

/// Axis-aligned region of a chart.
struct ChartBox {
    Vec3 lo;
    Vec3 hi;

    ChartBox merged(const ChartBox& o) const { return {lo.cwiseMin(o.lo), hi.cwiseMax(o.hi)}; }
    BoxQuadrature quadrature(int n) const { return BoxQuadrature::make(lo, hi, n); }
};

/// Normalized Gaussian in a chart, exp(-sum ((v - c)_i / w_i)^2 / 2).
struct GaussianPacket {
    DynamicsForm form;
    Vec3 center;
    Vec3 width;

    /// Throws ChartExit if a front-form packet reaches p^+ <= margin within
    /// its support box.
    GaussianPacket(DynamicsForm f, const Vec3& c, const Vec3& w, double plus_margin = 0.0);

    double operator()(const Vec3& v) const;
    ChartBox support(double sigmas = 7.0) const;
};

/// Result of pulling a chart point back through a one-irrep operator:
/// (O f)(v_out) = factor * spin * f(v_in).
struct Pullback {
    Vec3 v_in;
    Complex factor;
    CMatrix spin;
};

/// The Poincare Wigner function D^{lambda,j}[Lambda, a] in a form's basis,
/// realized as a point map, a phase times the invariant-measure weight, and a
/// Wigner rotation of the form's boost kind.
class WignerFunctionBlock {
public:
    WignerFunctionBlock(DynamicsForm form, IrrepLabel irrep, PoincareElement g);

    DynamicsForm form() const { return form_; }
    const IrrepLabel& irrep() const { return irrep_; }
    const PoincareElement& element() const { return g_; }

    Pullback realize(const Vec3& v_out) const;
    /// Chart image of v_in.
    Vec3 push(const Vec3& v_in) const;

private:
    DynamicsForm form_;
    IrrepLabel irrep_;
    PoincareElement g_;
    LorentzTransform inverse_;
};

WignerFunctionBlock wigner_block(DynamicsForm form, IrrepLabel irrep, const PoincareElement& g);

/// Max difference between the realizations of D^{m_a,j} and D^{m_b,j} at the
/// sample points. Every ingredient of the realization enters the difference.
double wigner_block_mass_difference(DynamicsForm form, int two_j, const PoincareElement& g, double m_a, double m_b,
                                    const std::vector<Vec3>& samples);

/// A blockwise operator applied at each mass eigenvalue: either a Wigner
/// function in one form or a form map A^{lambda j}(v_a; v_b).
class BlockOp {
public:
    static BlockOp wigner(DynamicsForm form, const PoincareElement& g);
    static BlockOp form_change(DynamicsForm target, DynamicsForm source);

    DynamicsForm input_form() const { return input_; }
    DynamicsForm output_form() const { return output_; }

    Pullback pullback(const Vec3& v_out, double mass, int two_j) const;
    Vec3 push(const Vec3& v_in, double mass) const;

private:
    enum class Kind { Wigner, FormChange };
    BlockOp(Kind k, DynamicsForm in, DynamicsForm out, PoincareElement g) : kind_(k), input_(in), output_(out), g_(g) {}

    Kind kind_;
    DynamicsForm input_;
    DynamicsForm output_;
    PoincareElement g_;
};

class State {
public:
    virtual ~State() = default;

    virtual DynamicsForm form() const = 0;
    /// Internal dimension R = channels * N.
    virtual int internal_dimension() const = 0;
    virtual int two_j() const = 0;
    int spin_dimension() const { return two_j() + 1; }
    /// Kinematic-basis masses m_r, one per internal index.
    virtual const Eigen::VectorXd& masses() const = 0;
    /// psi(v, r, sigma) as an R x S matrix.
    virtual CMatrix amplitude(const Vec3& v) const = 0;
    /// psi(v, r, .) for one internal index.
    virtual CVector row(const Vec3& v, int r) const { return amplitude(v).row(r).transpose(); }
    /// Region holding the state up to negligible norm.
    virtual ChartBox support() const = 0;
};

using StatePtr = std::shared_ptr<const State>;

/// Internal masses of the kinematic basis for a spectrum's grid and channels.
Eigen::VectorXd internal_masses(const QuadratureGrid& grid, int channels);

/// sum_t chi_t (x) spin_t * g_t(v): a finite sum of product wave packets.
class PacketState : public State {
public:
    struct Term {
        CVector internal;   // length R
        CVector spin;       // length 2j+1
        GaussianPacket packet;
    };

    PacketState(DynamicsForm form, int two_j, Eigen::VectorXd masses, std::vector<Term> terms);

    DynamicsForm form() const override { return form_; }
    int internal_dimension() const override { return static_cast<int>(masses_.size()); }
    int two_j() const override { return two_j_; }
    const Eigen::VectorXd& masses() const override { return masses_; }
    CMatrix amplitude(const Vec3& v) const override;
    CVector row(const Vec3& v, int r) const override;
    ChartBox support() const override;

    const std::vector<Term>& terms() const { return terms_; }

private:
    DynamicsForm form_;
    int two_j_;
    Eigen::VectorXd masses_;
    std::vector<Term> terms_;
};

/// A state expanded in the mass-operator eigenbasis,
///   psi(v) = sum_n phi_n (x) [O_k ... O_1 c_n](v),  c_n = phi_n^dagger psi_0,
/// where each O is a BlockOp evaluated at the eigenvalue lambda_n.
class DynamicalState : public State {
public:
    DynamicalState(std::shared_ptr<const SpectrumSolution> spectrum, StatePtr base, std::vector<BlockOp> chain = {});

    DynamicsForm form() const override;
    int internal_dimension() const override { return base_->internal_dimension(); }
    int two_j() const override { return base_->two_j(); }
    const Eigen::VectorXd& masses() const override { return base_->masses(); }
    CMatrix amplitude(const Vec3& v) const override;
    CVector row(const Vec3& v, int r) const override;
    ChartBox support() const override;

    /// Spin vector of component n at v.
    CVector component(int n, const Vec3& v) const;
    /// Eigen-components carried (those with non-negligible base weight).
    const std::vector<int>& active_components() const { return active_; }
    ChartBox component_support(int n) const;

    const SpectrumSolution& spectrum() const { return *spectrum_; }
    std::shared_ptr<const SpectrumSolution> spectrum_ptr() const { return spectrum_; }
    const StatePtr& base() const { return base_; }
    const std::vector<BlockOp>& chain() const { return chain_; }

    DynamicalState then(const BlockOp& op) const;

    /// Norm of the components dropped as negligible, bounded from the base
    /// projection weights.
    double dropped_weight() const { return dropped_weight_; }

private:
    std::shared_ptr<const SpectrumSolution> spectrum_;
    StatePtr base_;
    std::vector<BlockOp> chain_;
    std::vector<int> active_;
    // Base projections phi_n^dagger chi_t when the base is a PacketState.
    std::optional<CMatrix> packet_projection_;
    double dropped_weight_ = 0.0;
};

/// U(Lambda,a) through the spectrum. Each eigencomponent gets its own
/// D^{lambda_n, j} block before resynthesis in the kinematic basis.
DynamicalState apply_dynamical_U(const StatePtr& state, const PoincareElement& g,
                                 std::shared_ptr<const SpectrumSolution> spectrum);

/// Mass-independent shortcut for kinematic (Lambda, a): each internal index r
/// is transformed with D^{m_r, j}; no spectral data is used. Throws
/// InvalidArgument for non-kinematic elements.
StatePtr apply_kinematic_U(const StatePtr& state, const PoincareElement& g);

/// Gamma = sum_lambda A^{lambda j}(v_a; v_b) |psi_lambda><psi_lambda|.
class EquivalenceUnitary {
public:
    EquivalenceUnitary(DynamicsForm source, DynamicsForm target, std::shared_ptr<const SpectrumSolution> spectrum);

    DynamicsForm source() const { return source_; }
    DynamicsForm target() const { return target_; }
    /// The form map used for eigenvalue index n.
    FormMapCoefficient block(int n) const;

    DynamicalState apply(const StatePtr& state) const;
    EquivalenceUnitary inverse() const { return EquivalenceUnitary(target_, source_, spectrum_); }

private:
    DynamicsForm source_;
    DynamicsForm target_;
    std::shared_ptr<const SpectrumSolution> spectrum_;
};

EquivalenceUnitary equivalence_unitary(DynamicsForm b, DynamicsForm a, std::shared_ptr<const SpectrumSolution> spectrum);

/// |(lambda,j), v_b> expressed in form c, blockwise at the dynamical mass.
DynamicalState relate_irreducible_vectors(const StatePtr& state, DynamicsForm target,
                                          std::shared_ptr<const SpectrumSolution> spectrum);

/// L2 norm on a chart quadrature.
double state_norm(const State& s, const BoxQuadrature& q);
double state_distance(const State& a, const State& b, const BoxQuadrature& q);
/// Component-wise norm / distance for dynamical states sharing a spectrum,
/// each component integrated on its own image box.
double spectral_norm(const DynamicalState& s, int n_per_dim = 24);
double spectral_distance(const DynamicalState& a, const DynamicalState& b, int n_per_dim = 24);
/// Distance between a dynamical state and any state of the same form, by
/// projecting the latter onto the eigenbasis on each component box.
double spectral_distance(const DynamicalState& a, const State& b, int n_per_dim = 24);

/// One-irrep wave function used by the Wigner relation check.
struct IrrepWaveFunction {
    DynamicsForm form;
    IrrepLabel irrep;
    std::function<CVector(const Vec3&)> f;
    ChartBox support;
};

/// D^{lambda,j} in c versus A(c<-b) D^{lambda,j} in b A(b<-c), on a packet in
/// chart c; returns the L2 residual on the image box.
double verify_wigner_relation(DynamicsForm c, DynamicsForm b, const IrrepWaveFunction& packet,
                              const PoincareElement& g, int n_per_dim = 24);

/// Reduced S-matrix tagged with the chart of the form that produced it.
struct FormSMatrix {
    DynamicsForm form;
    int two_j;
    ReducedSMatrix reduced;
};

struct SMatrixEquivalenceReport {
    double operator_residual = 0.0;   // A(b<-a) S_a A(a<-b) vs S_b on packets
    double phase_residual = 0.0;      // max |delta_a - delta_b|
    double unitarity_residual = 0.0;  // max over both
};

/// Throws InvalidArgument on mismatched energy grids.
SMatrixEquivalenceReport verify_smatrix_equivalence(const FormSMatrix& sa, const FormSMatrix& sb,
                                                    const GaussianPacket& probe_in_b, int n_per_dim = 12);

/// The form's full interaction operator delta(v:v') <m,d||V^j||m',d'> on
/// model states; it acts diagonally in the chart variables.
class FormInteraction {
public:
    FormInteraction(DynamicsForm form, InteractionKernel kernel);

    DynamicsForm form() const { return form_; }
    StatePtr apply(const StatePtr& state) const;
    /// Recovers the reduced kernel by applying the operator to product probes
    /// g (x) e_r in this form's chart and projecting out g.
    InteractionKernel reduced_kernel(const GaussianPacket& probe, int n_per_dim = 8) const;

private:
    DynamicsForm form_;
    InteractionKernel kernel_;
};

/// Observables computed by one form's pipeline.
struct FormObservables {
    DynamicsForm form;
    SpectrumSolution spectrum;
    FormSMatrix smatrix;
};

FormObservables solve_in_form(DynamicsForm form, const InteractionKernel& kernel, const std::vector<double>& k0,
                              const GaussianPacket& probe);

/// A packet in a form's chart centred on a given instant-form momentum.
GaussianPacket packet_around(DynamicsForm form, const Vec3& momentum, double width, double mass,
                             double plus_margin = 0.0);

}  // namespace btforms
