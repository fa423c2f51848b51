#include "btforms/coupling.hpp"

#include "btforms/errors.hpp"
#include "btforms/mass_operator.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace btforms {

namespace {

double factorial(int n)
{
    if (n < 0) return 0.0;
    return std::tgamma(n + 1.0);
}

bool triangle(int two_a, int two_b, int two_c)
{
    return two_c >= std::abs(two_a - two_b) && two_c <= two_a + two_b && (two_a + two_b + two_c) % 2 == 0;
}

// Associated Legendre P_l^m(x), m >= 0, including the Condon-Shortley phase.
double associated_legendre(int l, int m, double x)
{
    double pmm = 1.0;
    const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
        pmm *= -fact * s;
        fact += 2.0;
    }
    if (l == m) return pmm;
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

}  // namespace

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M)
{
    if (two_m1 + two_m2 != two_M) return 0.0;
    if (!triangle(two_j1, two_j2, two_J)) return 0.0;
    if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 || std::abs(two_M) > two_J) return 0.0;
    if ((two_j1 + two_m1) % 2 || (two_j2 + two_m2) % 2 || (two_J + two_M) % 2) return 0.0;
    // Racah's closed form with integer arguments a = j1 + j2 - J etc.
    const int a = (two_j1 + two_j2 - two_J) / 2;
    const int b = (two_j1 - two_j2 + two_J) / 2;
    const int c = (-two_j1 + two_j2 + two_J) / 2;
    const int d = (two_j1 + two_j2 + two_J) / 2 + 1;
    const int j1pm = (two_j1 + two_m1) / 2, j1mm = (two_j1 - two_m1) / 2;
    const int j2pm = (two_j2 + two_m2) / 2, j2mm = (two_j2 - two_m2) / 2;
    const int jpm = (two_J + two_M) / 2, jmm = (two_J - two_M) / 2;
    const double pre = std::sqrt((two_J + 1.0) * factorial(a) * factorial(b) * factorial(c) / factorial(d)) *
                       std::sqrt(factorial(j1pm) * factorial(j1mm) * factorial(j2pm) * factorial(j2mm) *
                                 factorial(jpm) * factorial(jmm));
    double sum = 0.0;
    for (int k = 0; k <= a; ++k) {
        const int d1 = a - k;
        const int d2 = j1mm - k;
        const int d3 = j2pm - k;
        const int d4 = (two_J - two_j2 + two_m1) / 2 + k;
        const int d5 = (two_J - two_j1 - two_m2) / 2 + k;
        if (d1 < 0 || d2 < 0 || d3 < 0 || d4 < 0 || d5 < 0) continue;
        const double term = 1.0 / (factorial(k) * factorial(d1) * factorial(d2) * factorial(d3) * factorial(d4) *
                                   factorial(d5));
        sum += (k % 2 ? -term : term);
    }
    return pre * sum;
}

Complex spherical_harmonic(int l, int m, const Vec3& n)
{
    if (l < 0 || std::abs(m) > l) return 0.0;
    const double x = std::clamp(n.z(), -1.0, 1.0);
    const double phi = std::atan2(n.y(), n.x());
    const int am = std::abs(m);
    const double norm =
        std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) * factorial(l - am) / factorial(l + am));
    const Complex y = norm * associated_legendre(l, am, x) * std::exp(Complex(0.0, am * phi));
    if (m >= 0) return y;
    return (am % 2 ? -1.0 : 1.0) * std::conj(y);
}

std::string_view to_string(DegeneracyScheme scheme)
{
    switch (scheme) {
    case DegeneracyScheme::Spinless: return "spinless";
    case DegeneracyScheme::LS: return "ls";
    case DegeneracyScheme::Helicity: return "helicity";
    }
    return "unknown";
}

DegeneracyScheme parse_scheme(std::string_view name)
{
    if (name == "spinless") return DegeneracyScheme::Spinless;
    if (name == "ls") return DegeneracyScheme::LS;
    if (name == "helicity") return DegeneracyScheme::Helicity;
    throw InvalidArgument("unknown degeneracy scheme '" + std::string(name) + "'");
}

std::string DegeneracyLabel::name() const
{
    switch (scheme) {
    case DegeneracyScheme::Spinless: return "l=" + std::to_string(l);
    case DegeneracyScheme::LS: return "l=" + std::to_string(l) + ",s=" + std::to_string(s);
    case DegeneracyScheme::Helicity: {
        auto h = [](int two_h) { return std::string(two_h > 0 ? "+" : "-"); };
        return "h=" + h(two_h1) + h(two_h2);
    }
    }
    return "?";
}

std::vector<DegeneracyLabel> channel_labels(DegeneracyScheme scheme, int two_j)
{
    if (two_j < 0 || two_j % 2 != 0) throw InvalidArgument("two-body total spin must be a non-negative integer");
    const int j = two_j / 2;
    std::vector<DegeneracyLabel> out;
    switch (scheme) {
    case DegeneracyScheme::Spinless: out.push_back({scheme, j, 0, 0, 0}); break;
    case DegeneracyScheme::LS:
        for (int s = 0; s <= 1; ++s)
            for (int l = std::abs(j - s); l <= j + s; ++l) out.push_back({scheme, l, s, 0, 0});
        break;
    case DegeneracyScheme::Helicity:
        for (int h1 : {1, -1})
            for (int h2 : {1, -1})
                if (std::abs(h1 - h2) <= two_j) out.push_back({scheme, 0, 0, h1, h2});
        break;
    }
    return out;
}

TwoBodyChannel::TwoBodyChannel(double mass1, double mass2, int twice_j, DegeneracyScheme s)
    : m1(mass1), m2(mass2), two_j(twice_j), scheme(s)
{
    if (!(mass1 > 0.0) || !(mass2 > 0.0)) throw InvalidArgument("constituent masses must be positive");
    if (twice_j < 0 || twice_j % 2) throw InvalidArgument("two-body total spin must be a non-negative integer");
}

double TwoBodyChannel::invariant_mass(double k) const
{
    return std::sqrt(k * k + m1 * m1) + std::sqrt(k * k + m2 * m2);
}

double TwoBodyChannel::dmass_dk(double k) const
{
    return k / std::sqrt(k * k + m1 * m1) + k / std::sqrt(k * k + m2 * m2);
}

double TwoBodyChannel::relative_momentum(double m) const
{
    if (m < threshold() * (1.0 - 1e-15)) throw InvalidArgument("invariant mass below threshold");
    const double a = m * m - (m1 + m2) * (m1 + m2);
    const double b = m * m - (m1 - m2) * (m1 - m2);
    return std::sqrt(std::max(0.0, a * b)) / (2.0 * m);
}

RecouplingCoefficient::RecouplingCoefficient(std::vector<DegeneracyLabel> rows, std::vector<DegeneracyLabel> cols,
                                             Evaluator eval)
    : rows_(std::move(rows)), cols_(std::move(cols)), eval_(std::move(eval))
{
}

RecouplingCoefficient RecouplingCoefficient::identity(const std::vector<DegeneracyLabel>& labels)
{
    const int d = static_cast<int>(labels.size());
    return RecouplingCoefficient(labels, labels, [d](double) { return CMatrix(CMatrix::Identity(d, d)); });
}

double RecouplingCoefficient::unitarity_residual(double mass) const
{
    const CMatrix r = matrix(mass);
    return (r * r.adjoint() - CMatrix::Identity(r.rows(), r.rows())).cwiseAbs().maxCoeff();
}

RecouplingCoefficient ls_helicity_recoupling(int two_j, double mass)
{
    if (!(mass > 0.0)) throw InvalidArgument("recoupling mass must be positive");
    auto rows = channel_labels(DegeneracyScheme::Helicity, two_j);
    auto cols = channel_labels(DegeneracyScheme::LS, two_j);
    CMatrix r = CMatrix::Zero(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b) {
            const int two_lam = rows[a].two_h1 - rows[a].two_h2;
            const int l = cols[b].l, s = cols[b].s;
            r(static_cast<int>(a), static_cast<int>(b)) =
                std::sqrt((2.0 * l + 1.0) / (two_j + 1.0)) *
                clebsch_gordan(2 * l, 0, 2 * s, two_lam, two_j, two_lam) *
                clebsch_gordan(1, rows[a].two_h1, 1, -rows[a].two_h2, 2 * s, two_lam);
        }
    // Mass independent for this instance.
    return RecouplingCoefficient(std::move(rows), std::move(cols), [r](double) { return r; });
}

InteractionKernel recouple_kernel(const InteractionKernel& v, const RecouplingCoefficient& r)
{
    if (!(r.col_labels() == v.labels))
        throw InvalidArgument("recoupling columns do not match the kernel's degeneracy labels");
    const int n = v.grid.size();
    const int db = v.channels();
    const int da = static_cast<int>(r.row_labels().size());
    std::vector<CMatrix> rm(n);
    for (int i = 0; i < n; ++i) {
        rm[i] = r.matrix(v.grid.masses()[i]);
        if (rm[i].rows() != da || rm[i].cols() != db) throw InvalidArgument("recoupling matrix has wrong dimensions");
    }
    InteractionKernel out{v.two_j, r.row_labels(), v.grid, CMatrix::Zero(da * n, da * n), {}, v.provenance + " recoupled"};
    for (int i = 0; i < n; ++i)
        for (int ip = 0; ip < n; ++ip) {
            CMatrix block(db, db);
            for (int a = 0; a < db; ++a)
                for (int b = 0; b < db; ++b) block(a, b) = v.values(a * n + i, b * n + ip);
            const CMatrix rb = rm[i] * block * rm[ip].adjoint();
            for (int a = 0; a < da; ++a)
                for (int b = 0; b < da; ++b) out.values(a * n + i, b * n + ip) = rb(a, b);
        }
    const QuadratureGrid grid = v.grid;
    out.evaluate = [inner = v.evaluate, r, grid](double k, double kp) -> CMatrix {
        return r.matrix(grid.invariant_mass(k)) * inner(k, kp) * r.matrix(grid.invariant_mass(kp)).adjoint();
    };
    return out;
}

SpinlessCoupling::SpinlessCoupling(double m1, double m2, DynamicsForm form) : m1_(m1), m2_(m2), form_(form)
{
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw InvalidArgument("constituent masses must be positive");
}

namespace {

struct InstantDecomposition {
    FourVector total;
    double mass;
    double k;
    Vec3 khat;
    double weight;
};

// Instant-chart decomposition with weight 1 / sqrt|d(p1,p2)/d(P,m,khat)|,
// |d^3p1 d^3p2 / d^3P d^3k| = w1 w2 M / (w1(k) w2(k) P^0), d^3k = k^2 dk dOmega.
InstantDecomposition decompose_instant(const FourVector& p1, const FourVector& p2, double m1, double m2)
{
    const FourVector total = p1 + p2;
    const double mass = std::sqrt(total.square());
    const FourVector rest = canonical_boost(total, mass).inverse() * p1;
    const Vec3 kvec = rest.spatial();
    const double k = kvec.norm();
    if (k < 1e-12 * mass) throw NumericalError("relative momentum vanishes: direction undefined");
    const double w1k = std::sqrt(k * k + m1 * m1);
    const double w2k = std::sqrt(k * k + m2 * m2);
    const double dmdk = k / w1k + k / w2k;
    const double jac = p1.energy() * p2.energy() * mass / (w1k * w2k * total.energy()) * k * k / dmdk;
    return {total, mass, k, kvec / k, 1.0 / std::sqrt(jac)};
}

}  // namespace

CouplingPoint SpinlessCoupling::decompose(const Vec3& v1, const Vec3& v2) const
{
    const FourVector p1 = four_momentum({form_, v1}, m1_);
    const FourVector p2 = four_momentum({form_, v2}, m2_);
    const InstantDecomposition d = decompose_instant(p1, p2, m1_, m2_);
    // Single-particle and two-body chart Jacobians |dp/dv|.
    const double j1 = 1.0 / chart_jacobian_from_instant(form_, p1, m1_);
    const double j2 = 1.0 / chart_jacobian_from_instant(form_, p2, m2_);
    const double jt = 1.0 / chart_jacobian_from_instant(form_, d.total, d.mass);
    return {chart_point(form_, d.total, d.mass).v, d.mass, d.k, d.khat, d.weight * std::sqrt(j1 * j2 / jt)};
}

std::pair<Vec3, Vec3> SpinlessCoupling::compose(const Vec3& total, double mass, const Vec3& khat) const
{
    const double tm = m1_ + m2_;
    if (mass < tm) throw InvalidArgument("invariant mass below threshold");
    const double a = mass * mass - tm * tm;
    const double b = mass * mass - (m1_ - m2_) * (m1_ - m2_);
    const double k = std::sqrt(std::max(0.0, a * b)) / (2.0 * mass);
    const FourVector ptot = four_momentum({form_, total}, mass);
    const LorentzTransform boost = canonical_boost(ptot, mass);
    const Vec3 kv = k * khat.normalized();
    const FourVector p1 = boost * FourVector::on_shell(kv, m1_);
    const FourVector p2 = boost * FourVector::on_shell(-kv, m2_);
    return {chart_point(form_, FourVector::on_shell(p1.spatial(), m1_), m1_).v,
            chart_point(form_, FourVector::on_shell(p2.spatial(), m2_), m2_).v};
}

CVector SpinlessCoupling::coefficients(const Vec3& v1, const Vec3& v2, int l) const
{
    const CouplingPoint cp = decompose(v1, v2);
    const int dim = 2 * l + 1;
    CVector y(dim);
    for (int s = 0; s < dim; ++s) y[s] = spherical_harmonic(l, l - s, cp.khat);
    // Canonical components -> this form's spin components of the pair.
    if (form_ == DynamicsForm::Front && l > 0) {
        const FourVector ptot = four_momentum({form_, cp.total}, cp.mass);
        const SpinRotation d(spin_to_canonical(form_, ptot, cp.mass), 2 * l);
        y = (y.transpose() * d.matrix()).transpose();
    }
    return cp.weight * y;
}

SpinlessCouplingValue clebsch_gordan_spinless(const FourVector& p1, const FourVector& p2, const IrrepLabel& irrep,
                                              const FormBasisPoint& target, int sigma_index)
{
    if (target.form != DynamicsForm::Instant) throw InvalidArgument("spinless coupling target must be in the instant chart");
    if (irrep.two_j % 2) throw InvalidArgument("spinless two-body spin must be an integer");
    const double m1 = std::sqrt(p1.square());
    const double m2 = std::sqrt(p2.square());
    const InstantDecomposition d = decompose_instant(p1, p2, m1, m2);
    const int l = irrep.two_j / 2;
    if (sigma_index < 0 || sigma_index > 2 * l) throw InvalidArgument("spin index out of range");
    SpinlessCouplingValue out;
    out.point = {d.total.spatial(), d.mass, d.k, d.khat, d.weight};
    out.value = d.weight * spherical_harmonic(l, l - sigma_index, d.khat);
    out.matches_target = (d.total.spatial() - target.v).norm() <= 1e-9 * std::max(1.0, target.v.norm()) &&
                         std::abs(d.mass - irrep.mass) <= 1e-9 * irrep.mass;
    return out;
}

SpinlessCoupling transport_clebsch_gordan(const SpinlessCoupling& cg, DynamicsForm a, DynamicsForm b)
{
    if (cg.form() != a) throw InvalidArgument("coupling realization is not in the source form");
    return cg.in_form(b);
}

Complex CoupledPacket::total_amplitude(const Vec3& total) const
{
    const double s = total_width;
    const double norm = std::pow(std::numbers::pi * s * s, -0.75);
    return norm * std::exp(-0.5 * (total - total_center).squaredNorm() / (s * s));
}

Complex CoupledPacket::radial_amplitude(double k) const
{
    const double s = k_width;
    const double norm = std::pow(std::numbers::pi * s * s, -0.25);
    return norm * std::exp(-0.5 * (k - k_center) * (k - k_center) / (s * s));
}

TwoBodyWaveFunction CoupledPacket::wave_function() const
{
    const CoupledPacket self = *this;
    return [self](const Vec3& p1, const Vec3& p2) -> Complex {
        const FourVector q1 = FourVector::on_shell(p1, self.m1);
        const FourVector q2 = FourVector::on_shell(p2, self.m2);
        InstantDecomposition d;
        try {
            d = decompose_instant(q1, q2, self.m1, self.m2);
        } catch (const NumericalError&) {
            return 0.0;
        }
        const double dmdk = d.k / std::sqrt(d.k * d.k + self.m1 * self.m1) + d.k / std::sqrt(d.k * d.k + self.m2 * self.m2);
        return d.weight * spherical_harmonic(self.l, self.l - self.sigma_index, d.khat) *
               self.total_amplitude(d.total.spatial()) * self.radial_amplitude(d.k) / std::sqrt(dmdk);
    };
}

IntertwiningReport verify_intertwining(const PoincareElement& g, double m1, double m2,
                                       const TwoBodyWaveFunction& state, int j_max, const IntertwiningOptions& opt)
{
    if (j_max < 0) throw InvalidArgument("j_max must be non-negative");
    const SpinlessCoupling cg(m1, m2, DynamicsForm::Instant);
    const TwoBodyChannel channel(m1, m2, 0, DegeneracyScheme::Spinless);
    const SphereQuadrature sphere = SphereQuadrature::make(opt.n_theta, opt.n_phi);
    const BoxQuadrature box = BoxQuadrature::make(opt.total_lo, opt.total_hi, opt.n_total);
    const GaussLegendre kq = gauss_legendre(opt.n_k, opt.k_lo, opt.k_hi);
    const LorentzTransform inv = g.lambda.inverse();
    const int n_waves = (j_max + 1) * (j_max + 1);

    std::vector<std::vector<Complex>> harmonics(sphere.directions.size(), std::vector<Complex>(n_waves));
    for (std::size_t s = 0; s < sphere.directions.size(); ++s) {
        int idx = 0;
        for (int l = 0; l <= j_max; ++l)
            for (int mi = 0; mi <= 2 * l; ++mi) harmonics[s][idx++] = spherical_harmonic(l, l - mi, sphere.directions[s]);
    }

    auto phase = [&](const FourVector& p) { return std::exp(Complex(0.0, -g.translation.dot(p))); };

    // Scalar single-particle representation on the instant chart.
    auto transformed = [&](const Vec3& p1, const Vec3& p2) -> Complex {
        const FourVector q1 = FourVector::on_shell(p1, m1);
        const FourVector q2 = FourVector::on_shell(p2, m2);
        const FourVector b1 = FourVector::on_shell((inv * q1).spatial(), m1);
        const FourVector b2 = FourVector::on_shell((inv * q2).spatial(), m2);
        const double factor = std::sqrt(b1.energy() * b2.energy() / (q1.energy() * q2.energy()));
        return factor * phase(q1 + q2) * state(b1.spatial(), b2.spatial());
    };

    // Partial-wave components of a two-body function at (P, m); also returns
    // the full angular norm density for the tail estimate.
    auto couple = [&](const auto& psi, const Vec3& total, double mass, double& full_density) {
        std::vector<Complex> c(n_waves, 0.0);
        full_density = 0.0;
        for (std::size_t s = 0; s < sphere.directions.size(); ++s) {
            const auto [v1, v2] = cg.compose(total, mass, sphere.directions[s]);
            const FourVector q1 = FourVector::on_shell(v1, m1);
            const FourVector q2 = FourVector::on_shell(v2, m2);
            const double w = decompose_instant(q1, q2, m1, m2).weight;
            const Complex amp = psi(v1, v2) / w;
            full_density += sphere.weights[s] * std::norm(amp);
            for (int idx = 0; idx < n_waves; ++idx) c[idx] += sphere.weights[s] * std::conj(harmonics[s][idx]) * amp;
        }
        return c;
    };

    IntertwiningReport report;
    double resid2 = 0.0, norm2 = 0.0, full2 = 0.0;
    for (int ik = 0; ik < opt.n_k; ++ik) {
        const double k = kq.nodes[ik];
        const double mass = channel.invariant_mass(k);
        const double wm = kq.weights[ik] * channel.dmass_dk(k);
        for (std::size_t ip = 0; ip < box.size(); ++ip) {
            const Vec3& total = box.points[ip];
            double full = 0.0, dummy = 0.0;
            const auto lhs = couple(transformed, total, mass, full);

            const FourVector pt = FourVector::on_shell(total, mass);
            const FourVector back = FourVector::on_shell((inv * pt).spatial(), mass);
            const auto coupled = couple(state, back.spatial(), mass, dummy);
            const Complex factor = std::sqrt(back.energy() / pt.energy()) * phase(pt);
            const Mat3 rw = wigner_rotation(g.lambda, back, mass, BoostKind::Canonical);

            const double w = box.weights[ip] * wm;
            int offset = 0;
            for (int l = 0; l <= j_max; ++l) {
                const int dim = 2 * l + 1;
                CVector in(dim);
                for (int s = 0; s < dim; ++s) in[s] = coupled[offset + s];
                const CVector out = factor * (SpinRotation(rw, 2 * l).matrix() * in);
                for (int s = 0; s < dim; ++s) {
                    resid2 += w * std::norm(lhs[offset + s] - out[s]);
                    norm2 += w * std::norm(lhs[offset + s]);
                }
                offset += dim;
            }
            full2 += w * full;
        }
    }
    report.residual = std::sqrt(resid2);
    report.coupled_norm = std::sqrt(norm2);
    report.tail_norm = std::sqrt(std::max(0.0, full2 - norm2));
    report.truncation_warning = report.tail_norm > 0.1 * opt.residual_budget;
    return report;
}

}  // namespace btforms
