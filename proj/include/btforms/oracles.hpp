#pragma once

// Grid-independent reference values computed with adaptive quadrature.
// Used both by the verify pipeline and by the tests.

#include "btforms/mass_operator.hpp"

#include <vector>

namespace btforms {

/// Rank-1 separable model V = -C g(k) g(k') with g = 1 / (k^2 + beta^2).
class YamaguchiOracle {
public:
    YamaguchiOracle(double c, double beta, double m1, double m2);

    /// Root of 1 = C \int g^2 k^2 / (m(k) - lambda) dk below threshold.
    /// Returns a negative value if the model has no bound state.
    double bound_mass() const;
    /// The defining integral at lambda below threshold.
    double bound_integral(double lambda) const;

    /// On-shell T(k0, k0) = -C g(k0)^2 / (1 + C I(m(k0) + i0)).
    Complex t_matrix(double k0) const;
    /// delta = arg(S) / 2 with S = 1 - 2 pi i (k0^2 / m'(k0)) T.
    double phase_shift(double k0) const;

private:
    double invariant_mass(double k) const;
    double dmass_dk(double k) const;

    double c_;
    double beta_;
    double m1_;
    double m2_;
};

/// Born approximation delta ~ -pi (k0^2 / m'(k0)) V(k0, k0).
double born_phase_shift(const PotentialModel& model, double m1, double m2, double k0);

/// Smallest |a - b| modulo pi, for comparing phase shifts.
double phase_difference(double a, double b);

}  // namespace btforms
