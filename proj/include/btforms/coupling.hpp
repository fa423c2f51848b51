#pragma once

// Two-body coupling: SU(2) Clebsch-Gordan coefficients, degeneracy labels,
// the Poincare Clebsch-Gordan coefficients for two spinless particles, and
// recoupling between degeneracy schemes.

#include "btforms/irrep_basis.hpp"
#include "btforms/kinematics.hpp"
#include "btforms/quadrature.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace btforms {

struct InteractionKernel;

/// <j1 m1 j2 m2 | J M> with Condon-Shortley phases; all arguments doubled.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

/// Y_lm(n) with Condon-Shortley phase for a unit vector n.
Complex spherical_harmonic(int l, int m, const Vec3& n);

enum class DegeneracyScheme { Spinless, LS, Helicity };

std::string_view to_string(DegeneracyScheme scheme);
DegeneracyScheme parse_scheme(std::string_view name);

/// Spinless: l (= j). LS: (l, s) for two spin-1/2 particles. Helicity:
/// doubled helicities (2 lambda_1, 2 lambda_2).
struct DegeneracyLabel {
    DegeneracyScheme scheme = DegeneracyScheme::Spinless;
    int l = 0;
    int s = 0;
    int two_h1 = 0;
    int two_h2 = 0;

    bool operator==(const DegeneracyLabel&) const = default;
    std::string name() const;
};

/// All labels compatible with total spin j = two_j / 2 (two_j even). Spinless
/// channels have the single label l = j; LS and helicity schemes are for two
/// spin-1/2 constituents.
std::vector<DegeneracyLabel> channel_labels(DegeneracyScheme scheme, int two_j);

/// Relative-momentum chart of a two-body channel:
/// m(k) = sqrt(k^2 + m1^2) + sqrt(k^2 + m2^2).
struct TwoBodyChannel {
    double m1;
    double m2;
    int two_j;
    DegeneracyScheme scheme;

    TwoBodyChannel(double mass1, double mass2, int twice_j, DegeneracyScheme s);

    double threshold() const { return m1 + m2; }
    double invariant_mass(double k) const;
    double dmass_dk(double k) const;
    /// Inverse of invariant_mass for m >= threshold.
    double relative_momentum(double m) const;
    std::vector<DegeneracyLabel> labels() const { return channel_labels(scheme, two_j); }
};

/// Finite unitary matrix R(d_a, d_b) on degeneracy labels, possibly depending
/// on the invariant mass. It has no dependence on the vector variables v.
class RecouplingCoefficient {
public:
    using Evaluator = std::function<CMatrix(double mass)>;

    RecouplingCoefficient(std::vector<DegeneracyLabel> rows, std::vector<DegeneracyLabel> cols, Evaluator eval);

    static RecouplingCoefficient identity(const std::vector<DegeneracyLabel>& labels);

    CMatrix matrix(double mass) const { return eval_(mass); }
    const std::vector<DegeneracyLabel>& row_labels() const { return rows_; }
    const std::vector<DegeneracyLabel>& col_labels() const { return cols_; }
    double unitarity_residual(double mass) const;

private:
    std::vector<DegeneracyLabel> rows_;
    std::vector<DegeneracyLabel> cols_;
    Evaluator eval_;
};

/// <lambda_1 lambda_2 | (l s) j> = sqrt((2l+1)/(2j+1)) <l 0 s lambda|j lambda>
///   <1/2 lambda_1 1/2 -lambda_2 | s lambda>, lambda = lambda_1 - lambda_2.
/// Rows: helicity labels, columns: LS labels.
RecouplingCoefficient ls_helicity_recoupling(int two_j, double mass);

/// R V R^dagger on the grid (R evaluated at each grid mass on the left and
/// right). Throws InvalidArgument on a label-set mismatch.
InteractionKernel recouple_kernel(const InteractionKernel& v, const RecouplingCoefficient& r);

/// Irreducible variables of a spinless two-body configuration.
struct CouplingPoint {
    Vec3 total;         // total-momentum chart point in the realization's form
    double mass;        // invariant mass
    double k;           // relative momentum magnitude
    Vec3 khat;          // relative direction (canonical rest frame)
    double weight;      // <v1 v2 | (m,j) v, d> = weight * Y-factor
};

/// Realization of <v1 v2 | (m,j) v, l> for two spinless particles, as a point
/// map (v1, v2) <-> (v, m, khat) plus a weight and spherical harmonics.
class SpinlessCoupling {
public:
    SpinlessCoupling(double m1, double m2, DynamicsForm form = DynamicsForm::Instant);

    DynamicsForm form() const { return form_; }
    double m1() const { return m1_; }
    double m2() const { return m2_; }

    /// Throws NumericalError at k = 0, where khat is undefined.
    CouplingPoint decompose(const Vec3& v1, const Vec3& v2) const;
    std::pair<Vec3, Vec3> compose(const Vec3& total, double mass, const Vec3& khat) const;
    /// Coefficients for j = l over the form's spin components sigma = j..-j.
    CVector coefficients(const Vec3& v1, const Vec3& v2, int l) const;

    /// Same realization read in another form (chart maps on both sides,
    /// identical degeneracy labels).
    SpinlessCoupling in_form(DynamicsForm form) const { return SpinlessCoupling(m1_, m2_, form); }

private:
    double m1_;
    double m2_;
    DynamicsForm form_;
};

struct SpinlessCouplingValue {
    Complex value;
    CouplingPoint point;
    bool matches_target;  // total momentum and mass equal the target irrep point
};

/// <p1 p2 | (m,j) v, l = j> with the target given in the instant chart; sigma
/// indexes j..-j.
SpinlessCouplingValue clebsch_gordan_spinless(const FourVector& p1, const FourVector& p2, const IrrepLabel& irrep,
                                              const FormBasisPoint& target, int sigma_index);

SpinlessCoupling transport_clebsch_gordan(const SpinlessCoupling& cg, DynamicsForm a, DynamicsForm b);

using TwoBodyWaveFunction = std::function<Complex(const Vec3& p1, const Vec3& p2)>;

/// Two-body packet built in irreducible variables:
///   psi(p1,p2) = weight * Y_{l sigma}(khat) F(P) chi(k) / sqrt(dm/dk)
/// with F a normalized isotropic Gaussian in P and chi a normalized radial
/// Gaussian in k (measure dk). Its norm is 1 and it has a single partial wave.
struct CoupledPacket {
    double m1, m2;
    Vec3 total_center;
    double total_width;
    double k_center;
    double k_width;
    int l = 0;
    int sigma_index = 0;

    TwoBodyWaveFunction wave_function() const;
    Complex total_amplitude(const Vec3& total) const;
    Complex radial_amplitude(double k) const;
};

struct IntertwiningOptions {
    int n_total = 8;      // per dimension, total-momentum grid
    int n_k = 64;         // relative-momentum grid
    int n_theta = 12;
    int n_phi = 24;
    Vec3 total_lo = Vec3::Constant(-1000.0);
    Vec3 total_hi = Vec3::Constant(1000.0);
    double k_lo = 1.0;
    double k_hi = 1200.0;
    double residual_budget = 1e-6;
};

struct IntertwiningReport {
    double residual = 0.0;       // L2 over j <= j_max, all sigma
    double coupled_norm = 0.0;   // norm of the transformed coupled state
    double tail_norm = 0.0;      // partial waves above j_max
    bool truncation_warning = false;
};

/// Transform-then-couple vs couple-then-transform for two spinless particles
/// of masses (m1, m2), instant chart, partial waves j <= j_max.
IntertwiningReport verify_intertwining(const PoincareElement& g, double m1, double m2,
                                       const TwoBodyWaveFunction& state, int j_max,
                                       const IntertwiningOptions& options = {});

}  // namespace btforms
