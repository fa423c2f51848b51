#include "btforms/quadrature.hpp"

#include "btforms/errors.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace btforms {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x)
{
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendre gauss_legendre(int n)
{
    if (n < 1) throw InvalidArgument("Gauss-Legendre order must be positive");
    GaussLegendre rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    if (n == 1) {
        rule.weights[0] = 2.0;
        return rule;
    }
    for (int i = 0; i < n / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre_with_derivative(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-17) break;
        }
        const double dp = legendre_with_derivative(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        const double dp = legendre_with_derivative(n, 0.0).second;
        rule.weights[n / 2] = 2.0 / (dp * dp);
    }
    return rule;
}

GaussLegendre gauss_legendre(int n, double a, double b)
{
    GaussLegendre rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

BoxQuadrature BoxQuadrature::make(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi, std::array<int, 3> n)
{
    const GaussLegendre gx = gauss_legendre(n[0], lo.x(), hi.x());
    const GaussLegendre gy = gauss_legendre(n[1], lo.y(), hi.y());
    const GaussLegendre gz = gauss_legendre(n[2], lo.z(), hi.z());
    BoxQuadrature q;
    q.points.reserve(static_cast<std::size_t>(n[0]) * n[1] * n[2]);
    q.weights.reserve(q.points.capacity());
    for (int i = 0; i < n[0]; ++i)
        for (int j = 0; j < n[1]; ++j)
            for (int k = 0; k < n[2]; ++k) {
                q.points.emplace_back(gx.nodes[i], gy.nodes[j], gz.nodes[k]);
                q.weights.push_back(gx.weights[i] * gy.weights[j] * gz.weights[k]);
            }
    return q;
}

SphereQuadrature SphereQuadrature::make(int n_theta, int n_phi)
{
    const GaussLegendre gt = gauss_legendre(n_theta);
    SphereQuadrature q;
    const double dphi = 2.0 * std::numbers::pi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        const double c = gt.nodes[i];
        const double s = std::sqrt(1.0 - c * c);
        for (int k = 0; k < n_phi; ++k) {
            const double phi = (k + 0.5) * dphi;
            q.directions.emplace_back(s * std::cos(phi), s * std::sin(phi), c);
            q.weights.push_back(gt.weights[i] * dphi);
        }
    }
    return q;
}

}  // namespace btforms
