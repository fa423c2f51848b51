#include "btforms/oracles.hpp"

#include "btforms/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace btforms {

namespace {

template <class F>
double integrate(F&& f, double a, double b)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-13);
}

// Adaptive quadrature on (0, inf) split at the given momentum scales.
template <class F>
double integrate_split(F&& f, std::vector<double> cuts)
{
    std::sort(cuts.begin(), cuts.end());
    double a = 0.0;
    double sum = 0.0;
    for (double c : cuts) {
        if (!(c > a)) continue;
        sum += integrate(f, a, c);
        a = c;
    }
    return sum + integrate(f, a, std::numeric_limits<double>::infinity());
}

}  // namespace

YamaguchiOracle::YamaguchiOracle(double c, double beta, double m1, double m2) : c_(c), beta_(beta), m1_(m1), m2_(m2)
{
    if (!(beta > 0.0) || !(m1 > 0.0) || !(m2 > 0.0)) throw InvalidArgument("Yamaguchi oracle needs positive parameters");
}

double YamaguchiOracle::invariant_mass(double k) const
{
    return std::sqrt(m1_ * m1_ + k * k) + std::sqrt(m2_ * m2_ + k * k);
}

double YamaguchiOracle::dmass_dk(double k) const
{
    return k / std::sqrt(m1_ * m1_ + k * k) + k / std::sqrt(m2_ * m2_ + k * k);
}

double YamaguchiOracle::bound_integral(double lambda) const
{
    auto f = [&](double k) {
        const double g = yamaguchi_form_factor(k, beta_);
        return g * g * k * k / (invariant_mass(k) - lambda);
    };
    const double kappa = std::sqrt(std::max(m1_ + m2_ - lambda, 1e-12) * std::min(m1_, m2_));
    return integrate_split(f, {0.25 * kappa, kappa, 4.0 * kappa, beta_, 4.0 * beta_});
}

double YamaguchiOracle::bound_mass() const
{
    const double th = m1_ + m2_;
    auto cond = [&](double lambda) { return 1.0 - c_ * bound_integral(lambda); };
    // cond decreases towards threshold; no root when it stays positive there.
    const double near = th * (1.0 - 1e-14);
    if (cond(near) > 0.0) return -1.0;
    double lo = 0.5 * th;
    while (cond(lo) < 0.0) {
        lo *= 0.5;
        if (lo < 1e-6 * th) throw NumericalError("Yamaguchi bound state below the search window");
    }
    boost::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(cond, lo, near, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
}

Complex YamaguchiOracle::t_matrix(double k0) const
{
    if (!(k0 > 0.0)) throw InvalidArgument("on-shell momentum must be positive");
    const double g0 = yamaguchi_form_factor(k0, beta_);
    auto f = [&](double k) {
        const double g = yamaguchi_form_factor(k, beta_);
        return g * g * k * k;
    };
    // F(k) = f(k) (k0^2 - k^2) / (E - m(k)), written without cancellation;
    // PV \int dk / (k0^2 - k^2) = 0 on (0, inf).
    const double w10 = std::sqrt(m1_ * m1_ + k0 * k0);
    const double w20 = std::sqrt(m2_ * m2_ + k0 * k0);
    auto big_f = [&](double k) {
        const double w1 = std::sqrt(m1_ * m1_ + k * k);
        const double w2 = std::sqrt(m2_ * m2_ + k * k);
        return f(k) / (1.0 / (w10 + w1) + 1.0 / (w20 + w2));
    };
    const double f0 = big_f(k0);
    auto subtracted = [&](double k) {
        const double d = (k0 - k) * (k0 + k);
        if (d == 0.0) return 0.0;
        return (big_f(k) - f0) / d;
    };
    // k0 must stay a breakpoint: the subtracted integrand is 0/0 there.
    const double pv = integrate_split(subtracted, {0.5 * k0, k0, 2.0 * k0, beta_, 4.0 * beta_});
    const Complex i_e(pv, -std::numbers::pi * f(k0) / dmass_dk(k0));
    return -c_ * g0 * g0 / (1.0 + c_ * i_e);
}

double YamaguchiOracle::phase_shift(double k0) const
{
    const Complex s = 1.0 - Complex(0.0, 2.0 * std::numbers::pi) * (k0 * k0 / dmass_dk(k0)) * t_matrix(k0);
    return 0.5 * std::arg(s);
}

double born_phase_shift(const PotentialModel& model, double m1, double m2, double k0)
{
    const double dm = k0 / std::sqrt(m1 * m1 + k0 * k0) + k0 / std::sqrt(m2 * m2 + k0 * k0);
    return -std::numbers::pi * (k0 * k0 / dm) * model(k0, k0);
}

double phase_difference(double a, double b)
{
    return std::abs(std::remainder(a - b, std::numbers::pi));
}

}  // namespace btforms
