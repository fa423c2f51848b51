#include "btforms/sampling.hpp"

#include <cmath>
#include <numbers>

namespace btforms {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

Vec3 random_unit_vector(Rng& rng)
{
    const double z = uniform(rng, -1.0, 1.0);
    const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(1.0 - z * z);
    return {r * std::cos(phi), r * std::sin(phi), z};
}

PoincareElement random_poincare_element(Rng& rng, double max_rapidity, double max_translation)
{
    const LorentzTransform rot = LorentzTransform::rotation(random_unit_vector(rng), uniform(rng, -max_rapidity, max_rapidity));
    const LorentzTransform boost = LorentzTransform::boost(random_unit_vector(rng), uniform(rng, -max_rapidity, max_rapidity));
    Eigen::Vector4d a;
    for (int mu = 0; mu < 4; ++mu) a[mu] = uniform(rng, -max_translation, max_translation);
    return {boost * rot, FourVector(a)};
}

PoincareElement random_kinematic_element(DynamicsForm form, Rng& rng, double max_rapidity, double max_translation)
{
    switch (form) {
    case DynamicsForm::Instant: {
        const LorentzTransform rot =
            LorentzTransform::rotation(random_unit_vector(rng), uniform(rng, -max_rapidity, max_rapidity));
        Eigen::Vector4d a(0.0, 0.0, 0.0, 0.0);
        for (int i = 1; i < 4; ++i) a[i] = uniform(rng, -max_translation, max_translation);
        return {rot, FourVector(a)};
    }
    case DynamicsForm::Point: {
        const LorentzTransform rot =
            LorentzTransform::rotation(random_unit_vector(rng), uniform(rng, -max_rapidity, max_rapidity));
        const LorentzTransform boost =
            LorentzTransform::boost(random_unit_vector(rng), uniform(rng, -max_rapidity, max_rapidity));
        return {boost * rot, FourVector()};
    }
    case DynamicsForm::Front: {
        const double bound = max_rapidity / std::sqrt(3.0);
        const LorentzTransform rz = LorentzTransform::rotation(Vec3::UnitZ(), uniform(rng, -max_rapidity, max_rapidity));
        const LorentzTransform bz = LorentzTransform::boost(Vec3::UnitZ(), uniform(rng, -bound, bound));
        const LorentzTransform bt = LorentzTransform::front_transverse_boost(uniform(rng, -bound, bound),
                                                                             uniform(rng, -bound, bound));
        // Translations with a^+ = a^0 + a^3 = 0.
        const double a3 = uniform(rng, -max_translation, max_translation);
        Eigen::Vector4d a(-a3, uniform(rng, -max_translation, max_translation),
                          uniform(rng, -max_translation, max_translation), a3);
        return {bt * bz * rz, FourVector(a)};
    }
    }
    return PoincareElement::identity();
}

PoincareElement non_kinematic_element(DynamicsForm form)
{
    switch (form) {
    case DynamicsForm::Instant:
        return {LorentzTransform::boost(Vec3::UnitX(), 0.5), FourVector()};
    case DynamicsForm::Point:
        return {LorentzTransform::identity(), FourVector(Eigen::Vector4d(0.01, 0.0, 0.0, 0.0))};
    case DynamicsForm::Front:
        return {LorentzTransform::rotation(Vec3::UnitX(), 0.5), FourVector()};
    }
    return PoincareElement::identity();
}

CVector random_unit_cvector(Rng& rng, int n)
{
    CVector v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    return v / v.norm();
}

}  // namespace btforms
