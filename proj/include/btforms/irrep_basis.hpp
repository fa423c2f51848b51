#pragma once

// Form-specific labels for vectors in a Poincare irreducible subspace and
// the kinematic basis changes between them.
//
// Chart variables per form:
//   Instant  v = p              spin: canonical
//   Point    v = u = p / m      spin: canonical
//   Front    v = (p^+, p^1, p^2) spin: front form
// Every chart carries unit measure (d^3p, d^3u, dp^+ d^2p_perp) and basis
// vectors are delta-normalized in that measure.

#include "btforms/kinematics.hpp"

#include <string>
#include <string_view>

namespace btforms {

enum class DynamicsForm { Instant, Point, Front };

inline constexpr DynamicsForm kAllForms[] = {DynamicsForm::Instant, DynamicsForm::Point, DynamicsForm::Front};

std::string_view to_string(DynamicsForm form);
DynamicsForm parse_form(std::string_view name);

/// Boost convention whose spin the form uses.
inline BoostKind boost_kind(DynamicsForm form)
{
    return form == DynamicsForm::Front ? BoostKind::Front : BoostKind::Canonical;
}

struct IrrepLabel {
    double mass;  // MeV, > 0
    int two_j;    // 2j

    IrrepLabel(double m, int twice_j);
    double j() const { return 0.5 * two_j; }
    int spin_dimension() const { return two_j + 1; }
};

/// A point in a form's chart; the spin projection is carried as an index
/// into the (2j+1)-vector (0 <-> sigma = j) where needed.
struct FormBasisPoint {
    DynamicsForm form;
    Vec3 v;
};

/// Four-momentum of a chart point at mass m. Throws ChartExit for front
/// points with p^+ <= 0.
FourVector four_momentum(const FormBasisPoint& point, double m);
/// Chart coordinates of an on-shell momentum.
FormBasisPoint chart_point(DynamicsForm form, const FourVector& p, double m);

/// Density of the chart measure (always 1 in the chart-native convention).
double measure_weight(DynamicsForm form, const FormBasisPoint& v, double m);

/// Density rho of the invariant measure d^3p / p^0 with respect to the chart
/// measure: Instant 1/p^0, Point m^3/p^0, Front 1/p^+.
double invariant_density(DynamicsForm form, const FourVector& p, double m);

/// |d v_form / d p| for the map from the instant chart: Instant 1,
/// Point m^-3, Front p^+/p^0.
double chart_jacobian_from_instant(DynamicsForm form, const FourVector& p, double m);

/// Spin rotation taking the form's spin components to canonical components
/// at momentum p (identity except for Front, where it is the Melosh matrix).
Mat3 spin_to_canonical(DynamicsForm form, const FourVector& p, double m);

/// A^{mj}(v_a; v_b) realized as a point map f: v_b -> v_a, weight sqrt(J)
/// with J = |d v_a / d v_b|, and a spin rotation D^j acting on form-b spins.
/// On wave functions: psi_a(v_a) = D(v_b) psi_b(v_b) / sqrt(J(v_b)).
class FormMapCoefficient {
public:
    FormMapCoefficient(DynamicsForm target, DynamicsForm source, IrrepLabel irrep);

    DynamicsForm target() const { return target_; }
    DynamicsForm source() const { return source_; }
    const IrrepLabel& irrep() const { return irrep_; }

    /// v_a = f(v_b).
    Vec3 map(const Vec3& vb) const;
    /// v_b = f^{-1}(v_a).
    Vec3 inverse_map(const Vec3& va) const;
    double jacobian(const Vec3& vb) const;
    double weight(const Vec3& vb) const;
    /// Rows: target-form spin index, columns: source-form spin index.
    SpinRotation spin_rotation(const Vec3& vb) const;

    /// The reverse coefficient A(v_b; v_a).
    FormMapCoefficient reversed() const { return FormMapCoefficient(source_, target_, irrep_); }

private:
    DynamicsForm target_;
    DynamicsForm source_;
    IrrepLabel irrep_;
};

/// A^{mj}(v_a; v_b) for target form a, source form b.
FormMapCoefficient form_map(DynamicsForm a, DynamicsForm b, IrrepLabel irrep);

/// True iff (Lambda, a) lies in the form's kinematic subgroup:
///   Instant: Lambda fixes (1,0,0,0) and a^0 = 0
///   Point:   a = 0
///   Front:   Lambda maps the plane x^+ = 0 to itself and a^+ = 0
bool kinematic_subgroup_contains(DynamicsForm form, const LorentzTransform& lambda, const FourVector& a,
                                 double tol = 1e-10);
inline bool kinematic_subgroup_contains(DynamicsForm form, const PoincareElement& g, double tol = 1e-10)
{
    return kinematic_subgroup_contains(form, g.lambda, g.translation, tol);
}

}  // namespace btforms
