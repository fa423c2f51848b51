#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace btforms {

struct GaussLegendre {
    std::vector<double> nodes;    // ascending on (-1, 1)
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on (-1, 1) by Newton iteration on P_n.
GaussLegendre gauss_legendre(int n);
/// n-point rule mapped linearly to (a, b).
GaussLegendre gauss_legendre(int n, double a, double b);

/// Tensor-product Gauss-Legendre rule on an axis-aligned box in a 3D chart.
struct BoxQuadrature {
    std::vector<Eigen::Vector3d> points;
    std::vector<double> weights;

    static BoxQuadrature make(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi, std::array<int, 3> n);
    static BoxQuadrature make(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi, int n)
    {
        return make(lo, hi, {n, n, n});
    }
    std::size_t size() const { return points.size(); }
};

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta), trapezoid in phi.
struct SphereQuadrature {
    std::vector<Eigen::Vector3d> directions;
    std::vector<double> weights;

    static SphereQuadrature make(int n_theta, int n_phi);
};

}  // namespace btforms
