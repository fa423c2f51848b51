#include "btforms/dynamics.hpp"
#include "btforms/errors.hpp"
#include "btforms/irrep_basis.hpp"
#include "btforms/quadrature.hpp"
#include "btforms/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace btforms;

namespace {

// L2 norm^2 of psi_a = A(a<-b) psi_b evaluated on a box in chart a.
double mapped_norm2(DynamicsForm a, DynamicsForm b, const IrrepLabel& irrep, const GaussianPacket& pk,
                    const CVector& spin, int n)
{
    const FormMapCoefficient map(a, b, irrep);
    // Image of the packet support, sampled on a lattice.
    const ChartBox src = pk.support();
    Vec3 lo = Vec3::Constant(1e300), hi = -lo;
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j)
            for (int k = 0; k <= 8; ++k) {
                const Vec3 t(i / 8.0, j / 8.0, k / 8.0);
                const Vec3 w = map.map(src.lo + (src.hi - src.lo).cwiseProduct(t));
                lo = lo.cwiseMin(w);
                hi = hi.cwiseMax(w);
            }
    const BoxQuadrature q = BoxQuadrature::make(lo - 0.05 * (hi - lo), hi + 0.05 * (hi - lo), n);
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const Vec3 vb = map.inverse_map(q.points[i]);
        const CVector psi = map.spin_rotation(vb).matrix() * (pk(vb) * spin) / map.weight(vb);
        sum += q.weights[i] * psi.squaredNorm();
    }
    return sum;
}

}  // namespace

TEST_CASE("form names round trip")
{
    for (DynamicsForm f : kAllForms) CHECK(parse_form(to_string(f)) == f);
    CHECK_THROWS_AS(parse_form("light-cone"), InvalidArgument);
    CHECK_THROWS_AS(IrrepLabel(-1.0, 0), InvalidArgument);
    CHECK_THROWS_AS(IrrepLabel(1.0, -2), InvalidArgument);
}

TEST_CASE("chart measure weights are unity")
{
    const double m = 1877.0;
    CHECK(measure_weight(DynamicsForm::Instant, {DynamicsForm::Instant, Vec3(1, 2, 3)}, m) == 1.0);
    CHECK(measure_weight(DynamicsForm::Point, {DynamicsForm::Point, Vec3(0.1, 0.2, 0.3)}, m) == 1.0);
    CHECK(measure_weight(DynamicsForm::Front, {DynamicsForm::Front, Vec3(2000, 2, 3)}, m) == 1.0);
}

TEST_CASE("chart round trips")
{
    const double m = 1877.0;
    Rng rng(11);
    for (int i = 0; i < 10; ++i) {
        const FourVector p = FourVector::on_shell(400.0 * random_unit_vector(rng), m);
        for (DynamicsForm f : kAllForms) {
            const FormBasisPoint v = chart_point(f, p, m);
            CHECK((four_momentum(v, m).components() - p.components()).norm() < 1e-12 * p.energy());
        }
    }
    CHECK_THROWS_AS(four_momentum({DynamicsForm::Front, Vec3(-1, 0, 0)}, m), ChartExit);
}

TEST_CASE("form map: identity and the instant<-point example")
{
    const IrrepLabel irrep(2.0, 0);
    for (DynamicsForm f : kAllForms) {
        const FormMapCoefficient a = form_map(f, f, IrrepLabel(1877.0, 2));
        const Vec3 v = f == DynamicsForm::Front ? Vec3(2000, 1, 2) : Vec3(0.1, 0.2, 0.3);
        CHECK((a.map(v) - v).norm() == 0.0);
        CHECK(a.weight(v) == 1.0);
        CHECK((a.spin_rotation(v).matrix() - CMatrix::Identity(3, 3)).norm() == 0.0);
    }
    const FormMapCoefficient ip = form_map(DynamicsForm::Instant, DynamicsForm::Point, irrep);
    CHECK((ip.map(Vec3(0, 0, 1)) - Vec3(0, 0, 2)).norm() < 1e-15);
    CHECK(ip.weight(Vec3(0, 0, 1)) == doctest::Approx(std::sqrt(8.0)));
    CHECK_THROWS_AS(form_map(DynamicsForm::Instant, DynamicsForm::Point, IrrepLabel(0.0, 0)), InvalidArgument);
}

TEST_CASE("form map: front chart Jacobian and Melosh spin")
{
    const double m = 1877.0;
    const IrrepLabel irrep(m, 1);
    const FormMapCoefficient fi = form_map(DynamicsForm::Front, DynamicsForm::Instant, irrep);
    const Vec3 p(120, -40, 250);
    const FourVector four = FourVector::on_shell(p, m);
    CHECK(fi.jacobian(p) == doctest::Approx(four.plus() / four.energy()));
    // The spin rotation takes canonical spin to front spin: inverse Melosh.
    const CMatrix d = fi.spin_rotation(p).matrix();
    CHECK((d * melosh_rotation(four, m, 1).matrix() - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    // Point <- front is the composition instant <- front, point <- instant.
    const FormMapCoefficient pf = form_map(DynamicsForm::Point, DynamicsForm::Front, irrep);
    const FormMapCoefficient pi = form_map(DynamicsForm::Point, DynamicsForm::Instant, irrep);
    const FormMapCoefficient inf = form_map(DynamicsForm::Instant, DynamicsForm::Front, irrep);
    const Vec3 vf = chart_point(DynamicsForm::Front, four, m).v;
    CHECK((pf.map(vf) - pi.map(inf.map(vf))).norm() < 1e-14);
    CHECK(pf.jacobian(vf) == doctest::Approx(pi.jacobian(inf.map(vf)) * inf.jacobian(vf)).epsilon(1e-13));
    const CMatrix composed = pi.spin_rotation(inf.map(vf)).matrix() * inf.spin_rotation(vf).matrix();
    CHECK((pf.spin_rotation(vf).matrix() - composed).cwiseAbs().maxCoeff() < 1e-12);
    // Reversal inverts the point map.
    CHECK((fi.reversed().map(fi.map(p)) - p).norm() < 1e-11);
}

TEST_CASE("form maps preserve the L2 norm")
{
    const double m = 1877.0;
    Rng rng(12);
    for (int two_j : {0, 1, 2}) {
        const IrrepLabel irrep(m, two_j);
        const CVector spin = random_unit_cvector(rng, two_j + 1);
        for (DynamicsForm b : kAllForms) {
            const GaussianPacket pk = packet_around(b, Vec3(60, -30, 90), 70.0, m);
            for (DynamicsForm a : kAllForms) {
                if (a == b) continue;
                CAPTURE(two_j);
                CAPTURE(to_string(a));
                CAPTURE(to_string(b));
                CHECK(std::abs(mapped_norm2(a, b, irrep, pk, spin, 40) - 1.0) < 1e-8);
            }
        }
    }
}

TEST_CASE("kinematic subgroup membership")
{
    using F = DynamicsForm;
    const LorentzTransform rot = LorentzTransform::rotation(Vec3(1, 2, 3), 0.8);
    const LorentzTransform zb = LorentzTransform::boost(Vec3::UnitZ(), 0.6);
    const LorentzTransform xb = LorentzTransform::boost(Vec3::UnitX(), 0.6);
    const FourVector zero;
    CHECK(kinematic_subgroup_contains(F::Instant, rot, zero));
    CHECK(kinematic_subgroup_contains(F::Instant, rot, FourVector(0, 1, 2, 3)));
    CHECK_FALSE(kinematic_subgroup_contains(F::Instant, rot, FourVector(1, 0, 0, 0)));
    CHECK_FALSE(kinematic_subgroup_contains(F::Instant, xb, zero));
    CHECK(kinematic_subgroup_contains(F::Point, xb, zero));
    CHECK(kinematic_subgroup_contains(F::Point, rot * zb, zero));
    CHECK_FALSE(kinematic_subgroup_contains(F::Point, xb, FourVector(0, 0.1, 0, 0)));
    CHECK(kinematic_subgroup_contains(F::Front, zb, zero));
    CHECK_FALSE(kinematic_subgroup_contains(F::Front, xb, zero));
    CHECK(kinematic_subgroup_contains(F::Front, LorentzTransform::front_transverse_boost(0.3, -0.1), zero));
    CHECK(kinematic_subgroup_contains(F::Front, LorentzTransform::rotation(Vec3::UnitZ(), 1.1), zero));
    CHECK_FALSE(kinematic_subgroup_contains(F::Front, LorentzTransform::rotation(Vec3::UnitX(), 0.1), zero));
    CHECK(kinematic_subgroup_contains(F::Front, zb, FourVector(-0.2, 0.1, 0.3, 0.2)));
    CHECK_FALSE(kinematic_subgroup_contains(F::Front, zb, FourVector(0.2, 0, 0, 0.2)));
    Rng rng(13);
    for (F f : kAllForms)
        for (int i = 0; i < 10; ++i) CHECK(kinematic_subgroup_contains(f, random_kinematic_element(f, rng)));
    for (F f : kAllForms) CHECK_FALSE(kinematic_subgroup_contains(f, non_kinematic_element(f)));
}
