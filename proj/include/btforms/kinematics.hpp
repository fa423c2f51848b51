#pragma once

// Relativistic kinematics: four-vectors, Lorentz transformations, the
// canonical and front-form boosts, and the Wigner and Melosh rotations that
// relate spin conventions.
//
// Conventions: metric diag(+1,-1,-1,-1), matrices act on column vectors,
// natural units with energies and momenta in MeV. Front-form components are
// p^+ = p^0 + p^3, p^- = p^0 - p^3.

#include <Eigen/Dense>

#include <complex>

namespace btforms {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline const Mat4& minkowski_metric()
{
    static const Mat4 g = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
    return g;
}

class FourVector {
public:
    FourVector() : c_(Eigen::Vector4d::Zero()) {}
    FourVector(double p0, double p1, double p2, double p3) : c_(p0, p1, p2, p3) {}
    explicit FourVector(const Eigen::Vector4d& c) : c_(c) {}

    /// Positive-energy vector with spatial momentum p and mass m.
    static FourVector on_shell(const Vec3& p, double m);
    /// Positive-energy vector from front-form variables (p^+, p^1, p^2).
    static FourVector from_front(double plus, double p1, double p2, double m);

    double operator[](int mu) const { return c_[mu]; }
    double energy() const { return c_[0]; }
    Vec3 spatial() const { return c_.tail<3>(); }
    double plus() const { return c_[0] + c_[3]; }
    double minus() const { return c_[0] - c_[3]; }
    /// p^+ for an on-shell vector of mass m, free of cancellation when p^3 < 0.
    double on_shell_plus(double m) const
    {
        if (c_[3] >= 0.0) return c_[0] + c_[3];
        return (m * m + c_[1] * c_[1] + c_[2] * c_[2]) / (c_[0] - c_[3]);
    }
    const Eigen::Vector4d& components() const { return c_; }

    double dot(const FourVector& o) const
    {
        return c_[0] * o.c_[0] - c_.tail<3>().dot(o.c_.tail<3>());
    }
    double square() const { return dot(*this); }

    FourVector operator+(const FourVector& o) const { return FourVector(Eigen::Vector4d(c_ + o.c_)); }
    FourVector operator-(const FourVector& o) const { return FourVector(Eigen::Vector4d(c_ - o.c_)); }
    FourVector operator*(double s) const { return FourVector(Eigen::Vector4d(c_ * s)); }

private:
    Eigen::Vector4d c_;
};

/// Throws InvalidArgument unless m > 0 and |p.p - m^2| <= 1e-9 (p^0)^2.
void require_on_shell(const FourVector& p, double m);

class LorentzTransform {
public:
    LorentzTransform() : m_(Mat4::Identity()) {}
    explicit LorentzTransform(const Mat4& m) : m_(m) {}

    static LorentzTransform identity() { return LorentzTransform(); }
    static LorentzTransform rotation(const Mat3& r);
    /// Rotation by `angle` about the (normalized) axis.
    static LorentzTransform rotation(const Vec3& axis, double angle);
    /// Pure (rotationless) boost of rapidity `rapidity` along `axis`.
    static LorentzTransform boost(const Vec3& axis, double rapidity);
    /// Null-plane boost: p^+ fixed, p_perp -> p_perp + v p^+.
    static LorentzTransform front_transverse_boost(double v1, double v2);

    const Mat4& matrix() const { return m_; }
    double operator()(int mu, int nu) const { return m_(mu, nu); }

    FourVector operator*(const FourVector& p) const
    {
        return FourVector(Eigen::Vector4d(m_ * p.components()));
    }
    LorentzTransform operator*(const LorentzTransform& o) const { return LorentzTransform(Mat4(m_ * o.m_)); }

    /// g L^T g, exact for Lorentz matrices.
    LorentzTransform inverse() const;

    /// max |L^T g L - g|.
    double metric_residual() const;
    bool is_proper_orthochronous(double tol = 1e-12) const;
    /// Spatial 3x3 block; a rotation when L fixes (1,0,0,0).
    Mat3 spatial_block() const { return m_.bottomRightCorner<3, 3>(); }

private:
    Mat4 m_;
};

/// A Poincare group element (Lambda, a) acting as x -> Lambda x + a.
struct PoincareElement {
    LorentzTransform lambda;
    FourVector translation;

    static PoincareElement identity() { return {LorentzTransform::identity(), FourVector()}; }
    /// (L2,a2)(L1,a1) = (L2 L1, a2 + L2 a1).
    PoincareElement operator*(const PoincareElement& first) const
    {
        return {lambda * first.lambda, translation + lambda * first.translation};
    }
    PoincareElement inverse() const
    {
        LorentzTransform li = lambda.inverse();
        return {li, (li * translation) * -1.0};
    }
};

enum class BoostKind { Canonical, Front };

/// Rotationless boost B_c(p) with B_c(p)(m,0,0,0) = p.
LorentzTransform canonical_boost(const FourVector& p, double m);
/// B_f(p) = (null-plane transverse boost) * (z-boost of rapidity ln(p^+/m)).
LorentzTransform front_form_boost(const FourVector& p, double m);
LorentzTransform form_boost(BoostKind kind, const FourVector& p, double m);

/// Spatial SO(3) block of B^{-1}(Lambda p) Lambda B(p).
Mat3 wigner_rotation(const LorentzTransform& lambda, const FourVector& p, double m, BoostKind kind);

/// SU(2) lift U = cos(t/2) - i sin(t/2) n.sigma with rotation angle t in
/// [0, pi]; the sign is fixed by this choice.
Eigen::Matrix2cd su2_from_rotation(const Mat3& r);

/// The (2j+1)-dimensional rotation matrix D^j(R) = exp(-i t n.J), rows and
/// columns ordered sigma = j, j-1, ..., -j.
class SpinRotation {
public:
    SpinRotation(const Mat3& rotation, int two_j);

    static SpinRotation identity(int two_j) { return SpinRotation(Mat3::Identity(), two_j); }

    const Mat3& rotation() const { return rotation_; }
    const CMatrix& matrix() const { return d_; }
    int two_j() const { return two_j_; }
    int dimension() const { return two_j_ + 1; }

    double unitarity_residual() const;

private:
    Mat3 rotation_;
    int two_j_;
    CMatrix d_;
};

/// Angular momentum matrices (J_x, J_y, J_z) for spin j = two_j/2.
struct SpinMatrices {
    CMatrix jx, jy, jz;
};
SpinMatrices spin_matrices(int two_j);

/// D^j(B_c^{-1}(p) B_f(p)): maps front-form spin to canonical spin.
SpinRotation melosh_rotation(const FourVector& p, double m, int two_j);
/// SO(3) part of B_c^{-1}(p) B_f(p).
Mat3 melosh_matrix(const FourVector& p, double m);

}  // namespace btforms
