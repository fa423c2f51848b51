#include "btforms/kinematics.hpp"

#include "btforms/errors.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <string>

namespace btforms {

FourVector FourVector::on_shell(const Vec3& p, double m)
{
    return FourVector(std::sqrt(p.squaredNorm() + m * m), p.x(), p.y(), p.z());
}

FourVector FourVector::from_front(double plus, double p1, double p2, double m)
{
    if (!(plus > 0.0)) throw ChartExit("front-form chart requires p^+ > 0, got " + std::to_string(plus));
    const double minus = (p1 * p1 + p2 * p2 + m * m) / plus;
    return FourVector(0.5 * (plus + minus), p1, p2, 0.5 * (plus - minus));
}

void require_on_shell(const FourVector& p, double m)
{
    if (!(m > 0.0)) throw InvalidArgument("mass must be positive, got " + std::to_string(m));
    const double e2 = p.energy() * p.energy();
    if (p.energy() <= 0.0 || std::abs(p.square() - m * m) > 1e-9 * std::max(e2, m * m))
        throw InvalidArgument("four-momentum is off shell for mass " + std::to_string(m));
}

LorentzTransform LorentzTransform::rotation(const Mat3& r)
{
    Mat4 m = Mat4::Identity();
    m.bottomRightCorner<3, 3>() = r;
    return LorentzTransform(m);
}

LorentzTransform LorentzTransform::rotation(const Vec3& axis, double angle)
{
    return rotation(Mat3(Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix()));
}

LorentzTransform LorentzTransform::boost(const Vec3& axis, double rapidity)
{
    const Vec3 n = axis.normalized();
    const double ch = std::cosh(rapidity);
    const double sh = std::sinh(rapidity);
    Mat4 m = Mat4::Identity();
    m(0, 0) = ch;
    m.block<1, 3>(0, 1) = sh * n.transpose();
    m.block<3, 1>(1, 0) = sh * n;
    m.bottomRightCorner<3, 3>() += (ch - 1.0) * n * n.transpose();
    return LorentzTransform(m);
}

LorentzTransform LorentzTransform::front_transverse_boost(double v1, double v2)
{
    Mat4 m;
    for (int col = 0; col < 4; ++col) {
        Eigen::Vector4d e = Eigen::Vector4d::Unit(col);
        const double plus = e[0] + e[3];
        const double minus = e[0] - e[3];
        const double q1 = e[1] + v1 * plus;
        const double q2 = e[2] + v2 * plus;
        const double qminus = minus + 2.0 * (v1 * e[1] + v2 * e[2]) + (v1 * v1 + v2 * v2) * plus;
        m.col(col) << 0.5 * (plus + qminus), q1, q2, 0.5 * (plus - qminus);
    }
    return LorentzTransform(m);
}

LorentzTransform LorentzTransform::inverse() const
{
    const Mat4& g = minkowski_metric();
    return LorentzTransform(Mat4(g * m_.transpose() * g));
}

double LorentzTransform::metric_residual() const
{
    const Mat4& g = minkowski_metric();
    return (m_.transpose() * g * m_ - g).cwiseAbs().maxCoeff();
}

bool LorentzTransform::is_proper_orthochronous(double tol) const
{
    return metric_residual() <= tol * std::max(1.0, m_.cwiseAbs().maxCoeff() * m_.cwiseAbs().maxCoeff()) &&
           m_.determinant() > 0.0 && m_(0, 0) >= 1.0 - tol;
}

LorentzTransform canonical_boost(const FourVector& p, double m)
{
    require_on_shell(p, m);
    const Vec3 q = p.spatial();
    const double e = p.energy();
    Mat4 b;
    b(0, 0) = e / m;
    b.block<1, 3>(0, 1) = q.transpose() / m;
    b.block<3, 1>(1, 0) = q / m;
    b.bottomRightCorner<3, 3>() = Mat3::Identity() + q * q.transpose() / (m * (e + m));
    return LorentzTransform(b);
}

LorentzTransform front_form_boost(const FourVector& p, double m)
{
    require_on_shell(p, m);
    const double plus = p.on_shell_plus(m);
    if (!(plus > 0.0)) throw ChartExit("front-form boost requires p^+ > 0");
    const LorentzTransform longitudinal = LorentzTransform::boost(Vec3::UnitZ(), std::log(plus / m));
    return LorentzTransform::front_transverse_boost(p[1] / plus, p[2] / plus) * longitudinal;
}

LorentzTransform form_boost(BoostKind kind, const FourVector& p, double m)
{
    return kind == BoostKind::Canonical ? canonical_boost(p, m) : front_form_boost(p, m);
}

Mat3 wigner_rotation(const LorentzTransform& lambda, const FourVector& p, double m, BoostKind kind)
{
    FourVector lp = lambda * p;
    if (kind == BoostKind::Front && !(lp.plus() > 0.0))
        throw ChartExit("Wigner rotation leaves the front-form chart: (Lambda p)^+ <= 0");
    // Re-project onto the mass shell to absorb rounding in Lambda p.
    lp = FourVector::on_shell(lp.spatial(), m);
    const LorentzTransform w = form_boost(kind, lp, m).inverse() * lambda * form_boost(kind, p, m);
    return w.spatial_block();
}

Eigen::Matrix2cd su2_from_rotation(const Mat3& r)
{
    Eigen::Quaterniond q(r);
    q.normalize();
    if (q.w() < 0.0) q.coeffs() *= -1.0;
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd u;
    u(0, 0) = q.w() - i * q.z();
    u(0, 1) = -i * q.x() - q.y();
    u(1, 0) = -i * q.x() + q.y();
    u(1, 1) = q.w() + i * q.z();
    return u;
}

SpinMatrices spin_matrices(int two_j)
{
    if (two_j < 0) throw InvalidArgument("spin must be non-negative");
    const int dim = two_j + 1;
    const double j = 0.5 * two_j;
    CMatrix jplus = CMatrix::Zero(dim, dim);
    CMatrix jz = CMatrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) {
        const double mval = j - a;
        jz(a, a) = mval;
        if (a > 0) jplus(a - 1, a) = std::sqrt(j * (j + 1.0) - mval * (mval + 1.0));
    }
    const CMatrix jminus = jplus.adjoint();
    const Complex i(0.0, 1.0);
    return {0.5 * (jplus + jminus), (jplus - jminus) / (2.0 * i), jz};
}

SpinRotation::SpinRotation(const Mat3& rotation, int two_j) : rotation_(rotation), two_j_(two_j)
{
    if (two_j < 0) throw InvalidArgument("spin must be non-negative");
    Eigen::Quaterniond q(rotation);
    q.normalize();
    if (q.w() < 0.0) q.coeffs() *= -1.0;
    const double s = q.vec().norm();
    const double angle = 2.0 * std::atan2(s, q.w());
    const int dim = two_j + 1;
    if (two_j == 0 || s < 1e-300) {
        d_ = CMatrix::Identity(dim, dim);
        return;
    }
    const Vec3 n = q.vec() / s;
    const SpinMatrices sm = spin_matrices(two_j);
    const CMatrix h = n.x() * sm.jx + n.y() * sm.jy + n.z() * sm.jz;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CVector phases(dim);
    for (int k = 0; k < dim; ++k) phases[k] = std::exp(Complex(0.0, -angle * es.eigenvalues()[k]));
    d_ = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double SpinRotation::unitarity_residual() const
{
    return (d_ * d_.adjoint() - CMatrix::Identity(dimension(), dimension())).cwiseAbs().maxCoeff();
}

Mat3 melosh_matrix(const FourVector& p, double m)
{
    if (!(p.plus() > 0.0)) throw ChartExit("Melosh rotation requires p^+ > 0");
    return (canonical_boost(p, m).inverse() * front_form_boost(p, m)).spatial_block();
}

SpinRotation melosh_rotation(const FourVector& p, double m, int two_j)
{
    return SpinRotation(melosh_matrix(p, m), two_j);
}

}  // namespace btforms
