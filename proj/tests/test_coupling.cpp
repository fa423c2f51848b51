#include "btforms/coupling.hpp"
#include "btforms/errors.hpp"
#include "btforms/mass_operator.hpp"
#include "btforms/quadrature.hpp"
#include "btforms/sampling.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace btforms;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNucleon = 938.91897;

// Independent SU(2) coupling: diagonalize J^2 in the product basis at
// M = J, fix the sign by <j1 j1; j2 J-j1|J J> > 0, then lower.
struct ProductBasis {
    int tj1, tj2;
    int dim() const { return (tj1 + 1) * (tj2 + 1); }
    int index(int tm1, int tm2) const { return ((tj1 - tm1) / 2) * (tj2 + 1) + (tj2 - tm2) / 2; }
};

Eigen::MatrixXd lowering(int tj)
{
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(tj + 1, tj + 1);
    const double j = tj / 2.0;
    for (int s = 0; s < tj; ++s) {
        const double m = j - s;
        l(s + 1, s) = std::sqrt(j * (j + 1) - m * (m - 1));
    }
    return l;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Columns: |J M> for M = J..-J in the product basis.
Eigen::MatrixXd coupled_states(int tj1, int tj2, int tJ)
{
    const ProductBasis pb{tj1, tj2};
    const Eigen::MatrixXd i1 = Eigen::MatrixXd::Identity(tj1 + 1, tj1 + 1);
    const Eigen::MatrixXd i2 = Eigen::MatrixXd::Identity(tj2 + 1, tj2 + 1);
    const Eigen::MatrixXd lm = kron(lowering(tj1), i2) + kron(i1, lowering(tj2));
    Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(pb.dim(), pb.dim());
    for (int a = 0; a <= tj1; ++a)
        for (int b = 0; b <= tj2; ++b) jz(a * (tj2 + 1) + b, a * (tj2 + 1) + b) = (tj1 - 2 * a + tj2 - 2 * b) / 2.0;
    const Eigen::MatrixXd jsq = lm * lm.transpose() + jz * jz + jz;  // J- J+ + Jz^2 + Jz
    const double J = tJ / 2.0;
    // Restrict to M = J.
    std::vector<int> idx;
    for (int a = 0; a <= tj1; ++a)
        for (int b = 0; b <= tj2; ++b)
            if (tj1 - 2 * a + tj2 - 2 * b == tJ) idx.push_back(a * (tj2 + 1) + b);
    Eigen::MatrixXd sub(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = jsq(idx[r], idx[c]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
    int pick = -1;
    for (int e = 0; e < es.eigenvalues().size(); ++e)
        if (std::abs(es.eigenvalues()[e] - J * (J + 1)) < 1e-9) pick = e;
    REQUIRE(pick >= 0);
    Eigen::VectorXd top = Eigen::VectorXd::Zero(pb.dim());
    for (std::size_t r = 0; r < idx.size(); ++r) top[idx[r]] = es.eigenvectors()(r, pick);
    if (top[pb.index(tj1, tJ - tj1)] < 0) top = -top;
    Eigen::MatrixXd out(pb.dim(), tJ + 1);
    out.col(0) = top;
    for (int s = 1; s <= tJ; ++s) {
        const double m = J - (s - 1);
        out.col(s) = lm * out.col(s - 1) / std::sqrt(J * (J + 1) - m * (m - 1));
    }
    return out;
}

// Two spinless particles at rest-frame relative momentum kvec, total chart point v.
std::pair<Vec3, Vec3> compose_k(const SpinlessCoupling& cg, const TwoBodyChannel& ch, const Vec3& v, const Vec3& kvec)
{
    return cg.compose(v, ch.invariant_mass(kvec.norm()), kvec.normalized());
}

}  // namespace

TEST_CASE("SU(2) Clebsch-Gordan coefficients against a lowering-operator construction")
{
    for (int tj1 = 0; tj1 <= 4; ++tj1)
        for (int tj2 = 0; tj2 <= 4; ++tj2)
            for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
                const Eigen::MatrixXd states = coupled_states(tj1, tj2, tJ);
                const ProductBasis pb{tj1, tj2};
                for (int s = 0; s <= tJ; ++s)
                    for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
                        for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                            const int tM = tJ - 2 * s;
                            const double want = tm1 + tm2 == tM ? states(pb.index(tm1, tm2), s) : 0.0;
                            CAPTURE(tj1);
                            CAPTURE(tj2);
                            CAPTURE(tJ);
                            CAPTURE(tm1);
                            CAPTURE(tm2);
                            CHECK(std::abs(clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tM) - want) < 1e-12);
                        }
            }
    CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(clebsch_gordan(2, 0, 2, 0, 2, 0) == 0.0);
    CHECK(clebsch_gordan(2, 2, 2, 2, 0, 0) == 0.0);
}

TEST_CASE("spherical harmonics")
{
    const double th = 0.7, ph = -1.3;
    const Vec3 n(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
    CHECK(std::abs(spherical_harmonic(0, 0, n) - 1.0 / std::sqrt(4 * kPi)) < 1e-15);
    CHECK(std::abs(spherical_harmonic(1, 0, n) - std::sqrt(3 / (4 * kPi)) * std::cos(th)) < 1e-15);
    CHECK(std::abs(spherical_harmonic(1, 1, n) + std::sqrt(3 / (8 * kPi)) * std::sin(th) * std::polar(1.0, ph)) < 1e-15);
    CHECK(std::abs(spherical_harmonic(2, -2, n) -
                   std::sqrt(15 / (32 * kPi)) * std::sin(th) * std::sin(th) * std::polar(1.0, -2 * ph)) < 1e-15);
    const SphereQuadrature sq = SphereQuadrature::make(12, 24);
    double worst = 0.0;
    for (int l = 0; l <= 3; ++l)
        for (int m = -l; m <= l; ++m)
            for (int lp = 0; lp <= 3; ++lp)
                for (int mp = -lp; mp <= lp; ++mp) {
                    Complex s = 0.0;
                    for (std::size_t i = 0; i < sq.directions.size(); ++i)
                        s += sq.weights[i] * std::conj(spherical_harmonic(l, m, sq.directions[i])) *
                             spherical_harmonic(lp, mp, sq.directions[i]);
                    worst = std::max(worst, std::abs(s - (l == lp && m == mp ? 1.0 : 0.0)));
                }
    CHECK(worst < 1e-13);
}

TEST_CASE("degeneracy labels and the relative-momentum chart")
{
    CHECK(channel_labels(DegeneracyScheme::Spinless, 4).size() == 1);
    CHECK(channel_labels(DegeneracyScheme::LS, 0).size() == 2);
    CHECK(channel_labels(DegeneracyScheme::LS, 2).size() == 4);
    CHECK(channel_labels(DegeneracyScheme::Helicity, 0).size() == 2);
    CHECK(channel_labels(DegeneracyScheme::Helicity, 2).size() == 4);
    for (const auto& d : channel_labels(DegeneracyScheme::LS, 6)) CHECK((std::abs(d.l - d.s) <= 3 && d.l + d.s >= 3));
    CHECK_THROWS_AS(channel_labels(DegeneracyScheme::LS, 1), InvalidArgument);
    CHECK(parse_scheme(to_string(DegeneracyScheme::Helicity)) == DegeneracyScheme::Helicity);

    const TwoBodyChannel ch(kNucleon, 1.5 * kNucleon, 0, DegeneracyScheme::Spinless);
    const QuadratureGrid grid(64, 300.0, ch.m1, ch.m2);
    for (int i = 0; i < grid.size(); ++i) {
        const double k = grid.nodes()[i];
        CHECK(ch.dmass_dk(k) > 0.0);
        const double h = 1e-3 * std::max(1.0, k);
        const double fd = (ch.invariant_mass(k + h) - ch.invariant_mass(k - h)) / (2 * h);
        CHECK(fd > 0.0);
        CHECK(std::abs(fd - ch.dmass_dk(k)) < 1e-6 * ch.dmass_dk(k) + 1e-9);
        // Inversion is conditioned by 1 / m'(k) near threshold.
        const double cond = ch.invariant_mass(k) / ch.dmass_dk(k);
        CHECK(std::abs(ch.relative_momentum(ch.invariant_mass(k)) - k) < 1e-13 * cond + 1e-12 * k);
    }
}

TEST_CASE("spinless Clebsch-Gordan coefficient")
{
    const double m = kNucleon;
    const IrrepLabel irrep_any(2 * m, 0);
    SUBCASE("back-to-back s-wave")
    {
        const FourVector p1 = FourVector::on_shell(Vec3(0, 0, 120), m);
        const FourVector p2 = FourVector::on_shell(Vec3(0, 0, -120), m);
        const IrrepLabel irrep(std::sqrt((p1 + p2).square()), 0);
        const auto c = clebsch_gordan_spinless(p1, p2, irrep, {DynamicsForm::Instant, Vec3::Zero()}, 0);
        CHECK(c.matches_target);
        CHECK(std::abs(c.value - c.point.weight / std::sqrt(4 * kPi)) < 1e-15);
        CHECK(c.point.k == doctest::Approx(120.0));
    }
    SUBCASE("total momentum reconstruction")
    {
        Rng rng(21);
        for (int i = 0; i < 20; ++i) {
            const FourVector p1 = FourVector::on_shell(300 * random_unit_vector(rng), m);
            const FourVector p2 = FourVector::on_shell(250 * random_unit_vector(rng), 1.2 * m);
            const FourVector tot = p1 + p2;
            const IrrepLabel irrep(std::sqrt(tot.square()), 2);
            const auto c = clebsch_gordan_spinless(p1, p2, irrep, {DynamicsForm::Instant, tot.spatial()}, 1);
            CHECK(c.matches_target);
            CHECK((c.point.total - tot.spatial()).norm() < 1e-12 * tot.energy());
            // Recompose from the irreducible variables.
            const SpinlessCoupling cg(m, 1.2 * m);
            const auto [v1, v2] = cg.compose(c.point.total, c.point.mass, c.point.khat);
            CHECK((v1 - p1.spatial()).norm() < 1e-11 * tot.energy());
            CHECK((v2 - p2.spatial()).norm() < 1e-11 * tot.energy());
            const auto off = clebsch_gordan_spinless(p1, p2, irrep, {DynamicsForm::Instant, tot.spatial() + Vec3(1, 0, 0)}, 1);
            CHECK_FALSE(off.matches_target);
        }
    }
    SUBCASE("degenerate configuration")
    {
        const Vec3 u(0.1, 0.2, -0.3);
        const FourVector p1 = FourVector::on_shell(m * u, m);
        const FourVector p2 = FourVector::on_shell(2 * m * u, 2 * m);
        CHECK_THROWS_AS(clebsch_gordan_spinless(p1, p2, IrrepLabel(3 * m, 0), {DynamicsForm::Instant, Vec3::Zero()}, 0),
                        NumericalError);
        CHECK_THROWS_AS(SpinlessCoupling(m, 2 * m).decompose(m * u, 2 * m * u), NumericalError);
    }
    CHECK_THROWS_AS(clebsch_gordan_spinless(FourVector::on_shell(Vec3(1, 0, 0), m), FourVector::on_shell(Vec3(-1, 0, 0), m),
                                            irrep_any, {DynamicsForm::Front, Vec3(2000, 0, 0)}, 0),
                    InvalidArgument);
}

TEST_CASE("coupling weight is the square root of the chart Jacobian in every form")
{
    // |d(v1, v2) / d(v, kvec)| = dm/dk / (k^2 weight^2), by finite differences.
    const double m1 = kNucleon, m2 = 1.3 * kNucleon;
    const TwoBodyChannel ch(m1, m2, 0, DegeneracyScheme::Spinless);
    Rng rng(22);
    for (DynamicsForm f : kAllForms) {
        const SpinlessCoupling cg(m1, m2, f);
        for (int trial = 0; trial < 4; ++trial) {
            const Vec3 kvec = 200.0 * random_unit_vector(rng);
            const double mass = ch.invariant_mass(kvec.norm());
            const FourVector ptot = FourVector::on_shell(150.0 * random_unit_vector(rng), mass);
            const Vec3 v = chart_point(f, ptot, mass).v;
            Eigen::Matrix<double, 6, 1> x;
            x << v, kvec;
            Eigen::Matrix<double, 6, 6> jac;
            for (int c = 0; c < 6; ++c) {
                const double h = 1e-6 * std::max(1.0, std::abs(x[c]));
                auto eval = [&](double s) {
                    Eigen::Matrix<double, 6, 1> y = x;
                    y[c] += s;
                    const auto [v1, v2] = compose_k(cg, ch, y.head<3>(), y.tail<3>());
                    Eigen::Matrix<double, 6, 1> o;
                    o << v1, v2;
                    return o;
                };
                jac.col(c) = (eval(h) - eval(-h)) / (2 * h);
            }
            const auto [v1, v2] = compose_k(cg, ch, v, kvec);
            const CouplingPoint cp = cg.decompose(v1, v2);
            CHECK((cp.total - v).norm() < 1e-9 * std::max(1.0, v.norm()));
            CHECK(cp.mass == doctest::Approx(mass).epsilon(1e-13));
            CHECK((cp.k * cp.khat - kvec).norm() < 1e-9 * kvec.norm());
            const double want = ch.dmass_dk(cp.k) / (cp.k * cp.k * cp.weight * cp.weight);
            CAPTURE(to_string(f));
            CHECK(std::abs(jac.determinant()) == doctest::Approx(want).epsilon(1e-6));
            // s-wave coefficient carries the flat harmonic in every form.
            CHECK(std::abs(cg.coefficients(v1, v2, 0)[0] - cp.weight / std::sqrt(4 * kPi)) < 1e-15 * cp.weight);
        }
    }
}

TEST_CASE("two-body packet norm in tensor-product and irreducible charts")
{
    // Rotation-invariant s-wave packet: reduce d^3p1 d^3p2 to (|p1|, |p2|, cos theta).
    const double m = kNucleon;
    CoupledPacket pk{m, m, Vec3::Zero(), 150.0, 250.0, 60.0, 0, 0};
    const auto psi = pk.wave_function();
    auto panels = [](double a, double b, int n_panel, int n) {
        GaussLegendre out;
        for (int p = 0; p < n_panel; ++p) {
            const GaussLegendre g = gauss_legendre(n, a + (b - a) * p / n_panel, a + (b - a) * (p + 1) / n_panel);
            out.nodes.insert(out.nodes.end(), g.nodes.begin(), g.nodes.end());
            out.weights.insert(out.weights.end(), g.weights.begin(), g.weights.end());
        }
        return out;
    };
    const GaussLegendre pr = panels(0.0, 1000.0, 5, 20);
    const GaussLegendre ct = panels(-1.0, 1.0, 4, 20);
    double sum = 0.0;
    for (std::size_t a = 0; a < pr.nodes.size(); ++a)
        for (std::size_t b = 0; b < pr.nodes.size(); ++b)
            for (std::size_t c = 0; c < ct.nodes.size(); ++c) {
                const double p1 = pr.nodes[a], p2 = pr.nodes[b], x = ct.nodes[c];
                const Vec3 v1(0, 0, p1), v2(p2 * std::sqrt(1 - x * x), 0, p2 * x);
                sum += pr.weights[a] * pr.weights[b] * ct.weights[c] * p1 * p1 * p2 * p2 * std::norm(psi(v1, v2));
            }
    sum *= 8 * kPi * kPi;
    CHECK(std::abs(sum - 1.0) < 1e-8);
}

TEST_CASE("LS to helicity recoupling")
{
    const RecouplingCoefficient r0 = ls_helicity_recoupling(0, 1900.0);
    const CMatrix m0 = r0.matrix(1900.0);
    REQUIRE(m0.rows() == 2);
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2d want;
    want << s, -s, -s, -s;
    CHECK((m0 - want.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(r0.unitarity_residual(1900.0) < 1e-14);
    for (int two_j = 0; two_j <= 6; two_j += 2) {
        const RecouplingCoefficient r = ls_helicity_recoupling(two_j, 2000.0);
        CHECK(r.unitarity_residual(2000.0) < 1e-14);
        CHECK((r.matrix(2000.0) - r.matrix(3000.0)).norm() == 0.0);
    }
    CHECK_THROWS_AS(ls_helicity_recoupling(0, 0.0), InvalidArgument);
}

namespace {

// LS kernel with a nontrivial Hermitian label structure: H (x) V.
InteractionKernel structured_ls_kernel(int two_j)
{
    const QuadratureGrid grid(48, 300.0, kNucleon, kNucleon);
    InteractionKernel v = build_kernel(PotentialModel::gaussian(1e-6, 400.0), grid, two_j, DegeneracyScheme::LS);
    const int d = v.channels(), n = grid.size();
    Rng rng(23);
    CMatrix h = CMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) h.col(i) = random_unit_cvector(rng, d);
    h = (0.5 * (h + h.adjoint()) / d).eval();
    CMatrix values(d * n, d * n);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) values.block(a * n, b * n, n, n) = h(a, b) * v.values.block(0, 0, n, n);
    v.values = values;
    v.evaluate = {};
    return v;
}

RecouplingCoefficient inverse(const RecouplingCoefficient& r)
{
    return RecouplingCoefficient(r.col_labels(), r.row_labels(), [r](double m) { return CMatrix(r.matrix(m).adjoint()); });
}

}  // namespace

TEST_CASE("recoupled kernels")
{
    const InteractionKernel v = structured_ls_kernel(2);
    REQUIRE(v.channels() == 4);
    SUBCASE("identity")
    {
        const InteractionKernel same = recouple_kernel(v, RecouplingCoefficient::identity(v.labels));
        CHECK((same.values - v.values).norm() == 0.0);
    }
    const RecouplingCoefficient r = ls_helicity_recoupling(2, 2000.0);
    const InteractionKernel h = recouple_kernel(v, r);
    CHECK(h.labels == r.row_labels());
    CHECK(h.hermiticity_residual() < 1e-12);
    CHECK(std::abs(h.values.norm() - v.values.norm()) < 1e-12 * v.values.norm());
    SUBCASE("spectrum invariance")
    {
        const SpectrumSolution a = solve_bound_states(v);
        const SpectrumSolution b = solve_bound_states(h);
        CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() < 1e-12 * a.eigenvalues.cwiseAbs().maxCoeff());
    }
    SUBCASE("diagonal LS kernel conjugated and back")
    {
        const QuadratureGrid grid(48, 300.0, kNucleon, kNucleon);
        const InteractionKernel diag = build_kernel(PotentialModel::yamaguchi(4e4, 286.0), grid, 2, DegeneracyScheme::LS);
        const InteractionKernel back = recouple_kernel(recouple_kernel(diag, r), inverse(r));
        CHECK((back.values - diag.values).cwiseAbs().maxCoeff() < 1e-12 * diag.values.cwiseAbs().maxCoeff());
        CHECK((back.evaluate(100.0, 250.0) - diag.evaluate(100.0, 250.0)).cwiseAbs().maxCoeff() <
              1e-12 * diag.evaluate(100.0, 250.0).cwiseAbs().maxCoeff());
    }
    CHECK_THROWS_AS(recouple_kernel(h, r), InvalidArgument);
    CHECK_THROWS_AS(recouple_kernel(v, ls_helicity_recoupling(0, 2000.0)), InvalidArgument);
}

TEST_CASE("Clebsch-Gordan intertwining")
{
    const double m = kNucleon;
    CoupledPacket pk{m, m, Vec3(50, -30, 80), 150.0, 250.0, 60.0, 0, 0};
    const auto psi = pk.wave_function();
    IntertwiningOptions opt;
    opt.n_total = 5;
    opt.n_theta = 8;
    opt.n_phi = 16;
    SUBCASE("identity")
    {
        const auto r = verify_intertwining({LorentzTransform(), FourVector()}, m, m, psi, 1, opt);
        CHECK(r.residual < 1e-12);
        CHECK(r.coupled_norm > 0.1);
    }
    SUBCASE("rotation about z")
    {
        const auto r = verify_intertwining({LorentzTransform::rotation(Vec3::UnitZ(), 0.9), FourVector()}, m, m, psi, 1, opt);
        CHECK(r.residual < 1e-10);
    }
    SUBCASE("z boost")
    {
        const auto r = verify_intertwining({LorentzTransform::boost(Vec3::UnitZ(), 0.6), FourVector(0.01, 0, 0, 0)}, m, m, psi, 0, opt);
        CHECK(r.residual < 1e-6);
        CHECK_FALSE(r.truncation_warning);
    }
    SUBCASE("p-wave packet under a generic element")
    {
        CoupledPacket p1 = pk;
        p1.l = 1;
        p1.sigma_index = 2;
        Rng rng(24);
        const auto r = verify_intertwining(random_poincare_element(rng, 1.0), m, m, p1.wave_function(), 2, opt);
        CHECK(r.residual < 1e-6);
    }
    CHECK_THROWS_AS(verify_intertwining({}, m, m, psi, -1, opt), InvalidArgument);
}

TEST_CASE("transported coefficients")
{
    const double m = kNucleon;
    const SpinlessCoupling inst(m, m);
    for (DynamicsForm f : kAllForms) {
        const SpinlessCoupling same = transport_clebsch_gordan(inst.in_form(f), f, f);
        CHECK(same.form() == f);
    }
    const SpinlessCoupling front = transport_clebsch_gordan(inst, DynamicsForm::Instant, DynamicsForm::Front);
    const SpinlessCoupling back = transport_clebsch_gordan(front, DynamicsForm::Front, DynamicsForm::Instant);
    CHECK(front.form() == DynamicsForm::Front);
    CHECK_THROWS_AS(transport_clebsch_gordan(inst, DynamicsForm::Point, DynamicsForm::Front), InvalidArgument);
    Rng rng(25);
    for (int i = 0; i < 10; ++i) {
        const FourVector p1 = FourVector::on_shell(300 * random_unit_vector(rng), m);
        const FourVector p2 = FourVector::on_shell(300 * random_unit_vector(rng), m);
        const CouplingPoint a = inst.decompose(p1.spatial(), p2.spatial());
        const CouplingPoint b = front.decompose(chart_point(DynamicsForm::Front, p1, m).v, chart_point(DynamicsForm::Front, p2, m).v);
        const CouplingPoint c = back.decompose(p1.spatial(), p2.spatial());
        // The invariant-mass chart and relative direction are shared.
        CHECK(b.mass == doctest::Approx(a.mass).epsilon(1e-14));
        CHECK((b.khat - a.khat).norm() < 1e-12);
        CHECK(std::abs(c.weight - a.weight) < 1e-10 * a.weight);
        CHECK((four_momentum({DynamicsForm::Front, b.total}, b.mass).components() - (p1 + p2).components()).norm() <
              1e-11 * (p1 + p2).energy());
        // p-wave coefficients in the front form, rotated back to canonical spin, agree up to the chart weight.
        const CVector ya = inst.coefficients(p1.spatial(), p2.spatial(), 1) / a.weight;
        const CVector yb = front.coefficients(chart_point(DynamicsForm::Front, p1, m).v, chart_point(DynamicsForm::Front, p2, m).v, 1) / b.weight;
        CHECK(std::abs(ya.norm() - yb.norm()) < 1e-12);
    }
}
