#pragma once

// Seeded samplers for Poincare elements and test wave packets.

#include "btforms/dynamics.hpp"

#include <random>

namespace btforms {

using Rng = std::mt19937_64;

Vec3 random_unit_vector(Rng& rng);

/// A general element with boost rapidity and rotation angle bounded by
/// `max_rapidity` and translations up to `max_translation` (MeV^-1).
PoincareElement random_poincare_element(Rng& rng, double max_rapidity = 1.0, double max_translation = 0.01);

/// A random element of the kinematic subgroup of `form`.
PoincareElement random_kinematic_element(DynamicsForm form, Rng& rng, double max_rapidity = 1.0,
                                         double max_translation = 0.01);

/// A fixed element outside the kinematic subgroup of `form`.
PoincareElement non_kinematic_element(DynamicsForm form);

/// Normalized random complex vector.
CVector random_unit_cvector(Rng& rng, int n);

}  // namespace btforms
