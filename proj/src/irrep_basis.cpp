#include "btforms/irrep_basis.hpp"

#include "btforms/errors.hpp"

#include <cmath>
#include <string>

namespace btforms {

std::string_view to_string(DynamicsForm form)
{
    switch (form) {
    case DynamicsForm::Instant: return "instant";
    case DynamicsForm::Point: return "point";
    case DynamicsForm::Front: return "front";
    }
    return "unknown";
}

DynamicsForm parse_form(std::string_view name)
{
    if (name == "instant") return DynamicsForm::Instant;
    if (name == "point") return DynamicsForm::Point;
    if (name == "front") return DynamicsForm::Front;
    throw InvalidArgument("unknown form of dynamics '" + std::string(name) + "'");
}

IrrepLabel::IrrepLabel(double m, int twice_j) : mass(m), two_j(twice_j)
{
    if (!(m > 0.0)) throw InvalidArgument("irrep mass must be positive, got " + std::to_string(m));
    if (twice_j < 0) throw InvalidArgument("irrep spin must be non-negative");
}

FourVector four_momentum(const FormBasisPoint& point, double m)
{
    switch (point.form) {
    case DynamicsForm::Instant: return FourVector::on_shell(point.v, m);
    case DynamicsForm::Point: return FourVector::on_shell(m * point.v, m);
    case DynamicsForm::Front: return FourVector::from_front(point.v[0], point.v[1], point.v[2], m);
    }
    throw InvalidArgument("bad form");
}

FormBasisPoint chart_point(DynamicsForm form, const FourVector& p, double m)
{
    switch (form) {
    case DynamicsForm::Instant: return {form, p.spatial()};
    case DynamicsForm::Point: return {form, p.spatial() / m};
    case DynamicsForm::Front:
        if (!(p.plus() > 0.0)) throw ChartExit("momentum outside the front-form chart");
        return {form, Vec3(p.on_shell_plus(m), p[1], p[2])};
    }
    throw InvalidArgument("bad form");
}

double measure_weight(DynamicsForm, const FormBasisPoint&, double) { return 1.0; }

double invariant_density(DynamicsForm form, const FourVector& p, double m)
{
    switch (form) {
    case DynamicsForm::Instant: return 1.0 / p.energy();
    case DynamicsForm::Point: return m * m * m / p.energy();
    case DynamicsForm::Front: return 1.0 / p.on_shell_plus(m);
    }
    throw InvalidArgument("bad form");
}

double chart_jacobian_from_instant(DynamicsForm form, const FourVector& p, double m)
{
    switch (form) {
    case DynamicsForm::Instant: return 1.0;
    case DynamicsForm::Point: return 1.0 / (m * m * m);
    case DynamicsForm::Front: return p.on_shell_plus(m) / p.energy();
    }
    throw InvalidArgument("bad form");
}

Mat3 spin_to_canonical(DynamicsForm form, const FourVector& p, double m)
{
    return form == DynamicsForm::Front ? melosh_matrix(p, m) : Mat3::Identity();
}

FormMapCoefficient::FormMapCoefficient(DynamicsForm target, DynamicsForm source, IrrepLabel irrep)
    : target_(target), source_(source), irrep_(irrep)
{
}

Vec3 FormMapCoefficient::map(const Vec3& vb) const
{
    if (target_ == source_) return vb;
    const double m = irrep_.mass;
    return chart_point(target_, four_momentum({source_, vb}, m), m).v;
}

Vec3 FormMapCoefficient::inverse_map(const Vec3& va) const
{
    if (target_ == source_) return va;
    const double m = irrep_.mass;
    return chart_point(source_, four_momentum({target_, va}, m), m).v;
}

double FormMapCoefficient::jacobian(const Vec3& vb) const
{
    if (target_ == source_) return 1.0;
    const double m = irrep_.mass;
    const FourVector p = four_momentum({source_, vb}, m);
    return chart_jacobian_from_instant(target_, p, m) / chart_jacobian_from_instant(source_, p, m);
}

double FormMapCoefficient::weight(const Vec3& vb) const { return std::sqrt(jacobian(vb)); }

SpinRotation FormMapCoefficient::spin_rotation(const Vec3& vb) const
{
    if (target_ == source_ || irrep_.two_j == 0) return SpinRotation::identity(irrep_.two_j);
    const double m = irrep_.mass;
    const FourVector p = four_momentum({source_, vb}, m);
    const Mat3 r = spin_to_canonical(target_, p, m).transpose() * spin_to_canonical(source_, p, m);
    return SpinRotation(r, irrep_.two_j);
}

FormMapCoefficient form_map(DynamicsForm a, DynamicsForm b, IrrepLabel irrep)
{
    return FormMapCoefficient(a, b, irrep);
}

bool kinematic_subgroup_contains(DynamicsForm form, const LorentzTransform& lambda, const FourVector& a, double tol)
{
    const Mat4& l = lambda.matrix();
    const double scale = std::max(1.0, l.cwiseAbs().maxCoeff());
    const double ascale = std::max(1.0, a.components().cwiseAbs().maxCoeff());
    switch (form) {
    case DynamicsForm::Instant:
        return (l.col(0) - Eigen::Vector4d::Unit(0)).cwiseAbs().maxCoeff() <= tol * scale &&
               std::abs(a[0]) <= tol * ascale;
    case DynamicsForm::Point:
        return a.components().cwiseAbs().maxCoeff() <= tol;
    case DynamicsForm::Front: {
        // x^+ of the image is (row0 + row3) . x; it must be proportional to x^0 + x^3.
        const Eigen::RowVector4d plus_row = l.row(0) + l.row(3);
        const bool plane = std::abs(plus_row[1]) <= tol * scale && std::abs(plus_row[2]) <= tol * scale &&
                           std::abs(plus_row[0] - plus_row[3]) <= tol * scale;
        return plane && std::abs(a.plus()) <= tol * ascale;
    }
    }
    return false;
}

}  // namespace btforms
