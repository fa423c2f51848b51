#include "btforms/dynamics.hpp"

#include "btforms/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace btforms {

GaussianPacket::GaussianPacket(DynamicsForm f, const Vec3& c, const Vec3& w, double plus_margin)
    : form(f), center(c), width(w)
{
    if ((w.array() <= 0.0).any()) throw InvalidArgument("packet widths must be positive");
    if (f == DynamicsForm::Front) {
        const double lo = c[0] - 7.0 * w[0];
        if (!(lo > plus_margin))
            throw ChartExit("front-form packet reaches p^+ = " + std::to_string(lo) + " <= margin " +
                            std::to_string(plus_margin));
    }
}

double GaussianPacket::operator()(const Vec3& v) const
{
    const double norm = std::pow(std::numbers::pi, -0.75) / std::sqrt(width.prod());
    return norm * std::exp(-0.5 * ((v - center).cwiseQuotient(width)).squaredNorm());
}

ChartBox GaussianPacket::support(double sigmas) const
{
    return {center - sigmas * width, center + sigmas * width};
}

GaussianPacket packet_around(DynamicsForm form, const Vec3& momentum, double width, double mass, double plus_margin)
{
    const FourVector p = FourVector::on_shell(momentum, mass);
    const Vec3 c = chart_point(form, p, mass).v;
    Vec3 w = Vec3::Constant(width);
    if (form == DynamicsForm::Point) w /= mass;
    return GaussianPacket(form, c, w, plus_margin);
}

// -- Wigner functions ---------------------------------------------------------

WignerFunctionBlock::WignerFunctionBlock(DynamicsForm form, IrrepLabel irrep, PoincareElement g)
    : form_(form), irrep_(irrep), g_(g), inverse_(g.lambda.inverse())
{
}

Pullback WignerFunctionBlock::realize(const Vec3& v_out) const
{
    const double m = irrep_.mass;
    const FourVector p_out = four_momentum({form_, v_out}, m);
    const FourVector back = inverse_ * p_out;
    if (form_ == DynamicsForm::Front && !(back.plus() > 0.0))
        throw ChartExit("Wigner function leaves the front-form chart");
    const FourVector p_in = FourVector::on_shell(back.spatial(), m);
    Pullback pb;
    pb.v_in = chart_point(form_, p_in, m).v;
    const double rho_ratio = invariant_density(form_, p_out, m) / invariant_density(form_, p_in, m);
    pb.factor = std::sqrt(rho_ratio) * std::exp(Complex(0.0, -g_.translation.dot(p_out)));
    if (irrep_.two_j == 0)
        pb.spin = CMatrix::Identity(1, 1);
    else
        pb.spin = SpinRotation(wigner_rotation(g_.lambda, p_in, m, boost_kind(form_)), irrep_.two_j).matrix();
    return pb;
}

Vec3 WignerFunctionBlock::push(const Vec3& v_in) const
{
    const double m = irrep_.mass;
    const FourVector p = g_.lambda * four_momentum({form_, v_in}, m);
    return chart_point(form_, FourVector::on_shell(p.spatial(), m), m).v;
}

WignerFunctionBlock wigner_block(DynamicsForm form, IrrepLabel irrep, const PoincareElement& g)
{
    return WignerFunctionBlock(form, irrep, g);
}

double wigner_block_mass_difference(DynamicsForm form, int two_j, const PoincareElement& g, double m_a, double m_b,
                                    const std::vector<Vec3>& samples)
{
    const WignerFunctionBlock a(form, IrrepLabel(m_a, two_j), g);
    const WignerFunctionBlock b(form, IrrepLabel(m_b, two_j), g);
    double worst = 0.0;
    for (const Vec3& v : samples) {
        const Pullback pa = a.realize(v);
        const Pullback pb = b.realize(v);
        const double dv = (pa.v_in - pb.v_in).norm() / std::max(1.0, v.norm());
        const double df = std::abs(pa.factor - pb.factor);
        const double ds = (pa.spin - pb.spin).cwiseAbs().maxCoeff();
        worst = std::max(worst, dv + df + ds);
    }
    return worst;
}

BlockOp BlockOp::wigner(DynamicsForm form, const PoincareElement& g) { return BlockOp(Kind::Wigner, form, form, g); }

BlockOp BlockOp::form_change(DynamicsForm target, DynamicsForm source)
{
    return BlockOp(Kind::FormChange, source, target, PoincareElement::identity());
}

Pullback BlockOp::pullback(const Vec3& v_out, double mass, int two_j) const
{
    if (kind_ == Kind::Wigner) return WignerFunctionBlock(input_, IrrepLabel(mass, two_j), g_).realize(v_out);
    const FormMapCoefficient a(output_, input_, IrrepLabel(mass, two_j));
    Pullback pb;
    pb.v_in = a.inverse_map(v_out);
    pb.factor = 1.0 / a.weight(pb.v_in);
    pb.spin = a.spin_rotation(pb.v_in).matrix();
    return pb;
}

Vec3 BlockOp::push(const Vec3& v_in, double mass) const
{
    if (kind_ == Kind::Wigner) return WignerFunctionBlock(input_, IrrepLabel(mass, 0), g_).push(v_in);
    return FormMapCoefficient(output_, input_, IrrepLabel(mass, 0)).map(v_in);
}

namespace {

// Bounding box of the image of a box under a point map, from a 5^3 lattice.
template <class Map>
ChartBox image_box(const ChartBox& box, Map&& map)
{
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    constexpr int n = 5;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Vec3 t(i / (n - 1.0), j / (n - 1.0), k / (n - 1.0));
                const Vec3 v = box.lo + (box.hi - box.lo).cwiseProduct(t);
                const Vec3 w = map(v);
                lo = lo.cwiseMin(w);
                hi = hi.cwiseMax(w);
            }
    const Vec3 pad = 0.1 * (hi - lo);
    return {lo - pad, hi + pad};
}

ChartBox clip_front(DynamicsForm form, ChartBox box)
{
    // The padded box must stay inside the front chart.
    if (form == DynamicsForm::Front && box.lo[0] <= 0.0) box.lo[0] = 1e-3 * box.hi[0];
    return box;
}

}  // namespace

// -- States -------------------------------------------------------------------

Eigen::VectorXd internal_masses(const QuadratureGrid& grid, int channels)
{
    const int n = grid.size();
    Eigen::VectorXd m(n * channels);
    for (int c = 0; c < channels; ++c)
        for (int i = 0; i < n; ++i) m[c * n + i] = grid.masses()[i];
    return m;
}

PacketState::PacketState(DynamicsForm form, int two_j, Eigen::VectorXd masses, std::vector<Term> terms)
    : form_(form), two_j_(two_j), masses_(std::move(masses)), terms_(std::move(terms))
{
    if (terms_.empty()) throw InvalidArgument("packet state needs at least one term");
    for (const Term& t : terms_) {
        if (t.internal.size() != masses_.size()) throw InvalidArgument("internal vector has wrong dimension");
        if (t.spin.size() != two_j + 1) throw InvalidArgument("spin vector has wrong dimension");
        if (t.packet.form != form) throw InvalidArgument("packet chart does not match the state's form");
    }
}

CMatrix PacketState::amplitude(const Vec3& v) const
{
    CMatrix out = CMatrix::Zero(internal_dimension(), spin_dimension());
    for (const Term& t : terms_) out += t.packet(v) * t.internal * t.spin.transpose();
    return out;
}

CVector PacketState::row(const Vec3& v, int r) const
{
    CVector out = CVector::Zero(spin_dimension());
    for (const Term& t : terms_) out += (t.packet(v) * t.internal[r]) * t.spin;
    return out;
}

ChartBox PacketState::support() const
{
    ChartBox box = terms_.front().packet.support();
    for (const Term& t : terms_) box = box.merged(t.packet.support());
    return box;
}

DynamicalState::DynamicalState(std::shared_ptr<const SpectrumSolution> spectrum, StatePtr base,
                               std::vector<BlockOp> chain)
    : spectrum_(std::move(spectrum)), base_(std::move(base)), chain_(std::move(chain))
{
    if (!spectrum_ || !base_) throw InvalidArgument("dynamical state needs a spectrum and a base state");
    if (spectrum_->size() != base_->internal_dimension())
        throw InvalidArgument("spectrum dimension does not match the state's internal dimension");
    if (spectrum_->two_j != base_->two_j()) throw InvalidArgument("spectrum spin does not match the state's spin");
    DynamicsForm f = base_->form();
    for (const BlockOp& op : chain_) {
        if (op.input_form() != f) throw InvalidArgument("block operator chain has mismatched forms");
        f = op.output_form();
    }
    const int nspec = spectrum_->size();
    if (const auto* packet = dynamic_cast<const PacketState*>(base_.get())) {
        const auto& terms = packet->terms();
        CMatrix proj(nspec, static_cast<int>(terms.size()));
        for (std::size_t t = 0; t < terms.size(); ++t)
            proj.col(static_cast<int>(t)) = spectrum_->eigenvectors.adjoint() * terms[t].internal;
        double dropped = 0.0;
        for (int n = 0; n < nspec; ++n) {
            double bound = 0.0;
            for (std::size_t t = 0; t < terms.size(); ++t)
                bound += std::abs(proj(n, static_cast<int>(t))) * terms[t].spin.norm();
            if (bound * bound > 1e-26)
                active_.push_back(n);
            else
                dropped += bound * bound;
        }
        packet_projection_ = std::move(proj);
        dropped_weight_ = std::sqrt(dropped);
    } else {
        for (int n = 0; n < nspec; ++n) active_.push_back(n);
    }
}

DynamicsForm DynamicalState::form() const { return chain_.empty() ? base_->form() : chain_.back().output_form(); }

DynamicalState DynamicalState::then(const BlockOp& op) const
{
    std::vector<BlockOp> chain = chain_;
    chain.push_back(op);
    return DynamicalState(spectrum_, base_, std::move(chain));
}

CVector DynamicalState::component(int n, const Vec3& v) const
{
    const double lambda = spectrum_->eigenvalues[n];
    const int s = spin_dimension();
    Vec3 point = v;
    Complex factor = 1.0;
    CMatrix spin = CMatrix::Identity(s, s);
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
        const Pullback pb = it->pullback(point, lambda, two_j());
        factor *= pb.factor;
        if (s > 1) spin = spin * pb.spin;
        point = pb.v_in;
    }
    CVector base(s);
    if (packet_projection_) {
        const auto& terms = static_cast<const PacketState&>(*base_).terms();
        base.setZero();
        for (std::size_t t = 0; t < terms.size(); ++t)
            base += ((*packet_projection_)(n, static_cast<int>(t)) * terms[t].packet(point)) * terms[t].spin;
    } else {
        base = (spectrum_->eigenvectors.col(n).adjoint() * base_->amplitude(point)).transpose();
    }
    return factor * (spin * base);
}

CMatrix DynamicalState::amplitude(const Vec3& v) const
{
    CMatrix out = CMatrix::Zero(internal_dimension(), spin_dimension());
    for (int n : active_) out += spectrum_->eigenvectors.col(n) * component(n, v).transpose();
    return out;
}

CVector DynamicalState::row(const Vec3& v, int r) const
{
    CVector out = CVector::Zero(spin_dimension());
    for (int n : active_) out += spectrum_->eigenvectors(r, n) * component(n, v);
    return out;
}

ChartBox DynamicalState::component_support(int n) const
{
    const double lambda = spectrum_->eigenvalues[n];
    if (chain_.empty()) return base_->support();
    ChartBox box = image_box(base_->support(), [&](const Vec3& v) {
        Vec3 p = v;
        for (const BlockOp& op : chain_) p = op.push(p, lambda);
        return p;
    });
    return clip_front(form(), box);
}

ChartBox DynamicalState::support() const
{
    ChartBox box = component_support(active_.front());
    for (int n : active_) box = box.merged(component_support(n));
    return box;
}

namespace {

class KinematicTransformedState : public State {
public:
    KinematicTransformedState(StatePtr input, PoincareElement g) : input_(std::move(input)), g_(g) {}

    DynamicsForm form() const override { return input_->form(); }
    int internal_dimension() const override { return input_->internal_dimension(); }
    int two_j() const override { return input_->two_j(); }
    const Eigen::VectorXd& masses() const override { return input_->masses(); }

    CVector row(const Vec3& v, int r) const override
    {
        const Pullback pb = WignerFunctionBlock(form(), IrrepLabel(masses()[r], two_j()), g_).realize(v);
        return pb.factor * (pb.spin * input_->row(pb.v_in, r));
    }

    CMatrix amplitude(const Vec3& v) const override
    {
        CMatrix out(internal_dimension(), spin_dimension());
        for (int r = 0; r < internal_dimension(); ++r) out.row(r) = row(v, r).transpose();
        return out;
    }

    ChartBox support() const override
    {
        const WignerFunctionBlock w(form(), IrrepLabel(masses()[0], 0), g_);
        return clip_front(form(), image_box(input_->support(), [&](const Vec3& v) { return w.push(v); }));
    }

private:
    StatePtr input_;
    PoincareElement g_;
};

class InteractedState : public State {
public:
    InteractedState(StatePtr input, CMatrix op) : input_(std::move(input)), op_(std::move(op)) {}

    DynamicsForm form() const override { return input_->form(); }
    int internal_dimension() const override { return input_->internal_dimension(); }
    int two_j() const override { return input_->two_j(); }
    const Eigen::VectorXd& masses() const override { return input_->masses(); }
    CMatrix amplitude(const Vec3& v) const override { return op_ * input_->amplitude(v); }
    ChartBox support() const override { return input_->support(); }

private:
    StatePtr input_;
    CMatrix op_;
};

}  // namespace

DynamicalState apply_dynamical_U(const StatePtr& state, const PoincareElement& g,
                                 std::shared_ptr<const SpectrumSolution> spectrum)
{
    const BlockOp op = BlockOp::wigner(state->form(), g);
    if (const auto* dyn = dynamic_cast<const DynamicalState*>(state.get()); dyn && dyn->spectrum_ptr() == spectrum)
        return dyn->then(op);
    return DynamicalState(std::move(spectrum), state, {op});
}

StatePtr apply_kinematic_U(const StatePtr& state, const PoincareElement& g)
{
    if (!kinematic_subgroup_contains(state->form(), g))
        throw InvalidArgument(std::string("transformation is not in the ") + std::string(to_string(state->form())) +
                              "-form kinematic subgroup");
    return std::make_shared<KinematicTransformedState>(state, g);
}

// -- Equivalence --------------------------------------------------------------

EquivalenceUnitary::EquivalenceUnitary(DynamicsForm source, DynamicsForm target,
                                       std::shared_ptr<const SpectrumSolution> spectrum)
    : source_(source), target_(target), spectrum_(std::move(spectrum))
{
    if (!spectrum_) throw InvalidArgument("equivalence unitary needs a spectrum");
}

FormMapCoefficient EquivalenceUnitary::block(int n) const
{
    return form_map(target_, source_, IrrepLabel(spectrum_->eigenvalues[n], spectrum_->two_j));
}

DynamicalState EquivalenceUnitary::apply(const StatePtr& state) const
{
    if (state->form() != source_) throw InvalidArgument("state is not in the equivalence unitary's source form");
    const BlockOp op = BlockOp::form_change(target_, source_);
    if (const auto* dyn = dynamic_cast<const DynamicalState*>(state.get()); dyn && dyn->spectrum_ptr() == spectrum_)
        return dyn->then(op);
    return DynamicalState(spectrum_, state, {op});
}

EquivalenceUnitary equivalence_unitary(DynamicsForm b, DynamicsForm a, std::shared_ptr<const SpectrumSolution> spectrum)
{
    return EquivalenceUnitary(b, a, std::move(spectrum));
}

DynamicalState relate_irreducible_vectors(const StatePtr& state, DynamicsForm target,
                                          std::shared_ptr<const SpectrumSolution> spectrum)
{
    return EquivalenceUnitary(state->form(), target, std::move(spectrum)).apply(state);
}

// -- Norms --------------------------------------------------------------------

double state_norm(const State& s, const BoxQuadrature& q)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) sum += q.weights[i] * s.amplitude(q.points[i]).squaredNorm();
    return std::sqrt(sum);
}

double state_distance(const State& a, const State& b, const BoxQuadrature& q)
{
    if (a.form() != b.form()) throw InvalidArgument("states are in different forms");
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        sum += q.weights[i] * (a.amplitude(q.points[i]) - b.amplitude(q.points[i])).squaredNorm();
    return std::sqrt(sum);
}

double spectral_norm(const DynamicalState& s, int n_per_dim)
{
    double sum = 0.0;
    for (int n : s.active_components()) {
        const BoxQuadrature q = s.component_support(n).quadrature(n_per_dim);
        for (std::size_t i = 0; i < q.size(); ++i) sum += q.weights[i] * s.component(n, q.points[i]).squaredNorm();
    }
    return std::sqrt(sum);
}

double spectral_distance(const DynamicalState& a, const DynamicalState& b, int n_per_dim)
{
    if (a.form() != b.form()) throw InvalidArgument("states are in different forms");
    if (a.spectrum().eigenvalues != b.spectrum().eigenvalues)
        throw InvalidArgument("dynamical states use different spectra");
    std::vector<int> comps = a.active_components();
    for (int n : b.active_components())
        if (std::find(comps.begin(), comps.end(), n) == comps.end()) comps.push_back(n);
    const auto& aa = a.active_components();
    const auto& ba = b.active_components();
    double sum = 0.0;
    for (int n : comps) {
        const bool in_a = std::find(aa.begin(), aa.end(), n) != aa.end();
        const bool in_b = std::find(ba.begin(), ba.end(), n) != ba.end();
        ChartBox box = in_a ? a.component_support(n) : b.component_support(n);
        if (in_a && in_b) box = box.merged(b.component_support(n));
        const BoxQuadrature q = box.quadrature(n_per_dim);
        const int s = a.spin_dimension();
        for (std::size_t i = 0; i < q.size(); ++i) {
            const CVector ca = in_a ? a.component(n, q.points[i]) : CVector::Zero(s);
            const CVector cb = in_b ? b.component(n, q.points[i]) : CVector::Zero(s);
            sum += q.weights[i] * (ca - cb).squaredNorm();
        }
    }
    return std::sqrt(sum);
}

double spectral_distance(const DynamicalState& a, const State& b, int n_per_dim)
{
    return state_distance(a, b, a.support().merged(b.support()).quadrature(n_per_dim));
}

// -- Wigner relation ----------------------------------------------------------

double verify_wigner_relation(DynamicsForm c, DynamicsForm b, const IrrepWaveFunction& packet,
                              const PoincareElement& g, int n_per_dim)
{
    if (packet.form != c) throw InvalidArgument("packet must be given in form c");
    const double m = packet.irrep.mass;
    const int two_j = packet.irrep.two_j;
    const std::vector<BlockOp> direct{BlockOp::wigner(c, g)};
    const std::vector<BlockOp> via{BlockOp::form_change(b, c), BlockOp::wigner(b, g), BlockOp::form_change(c, b)};

    auto evaluate = [&](const std::vector<BlockOp>& chain, const Vec3& v) {
        Vec3 point = v;
        Complex factor = 1.0;
        CMatrix spin = CMatrix::Identity(two_j + 1, two_j + 1);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            const Pullback pb = it->pullback(point, m, two_j);
            factor *= pb.factor;
            spin = spin * pb.spin;
            point = pb.v_in;
        }
        return CVector(factor * (spin * packet.f(point)));
    };

    const WignerFunctionBlock w(c, packet.irrep, g);
    const ChartBox box = clip_front(c, image_box(packet.support, [&](const Vec3& v) { return w.push(v); }));
    const BoxQuadrature q = box.quadrature(n_per_dim);
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        sum += q.weights[i] * (evaluate(direct, q.points[i]) - evaluate(via, q.points[i])).squaredNorm();
    return std::sqrt(sum);
}

// -- S-matrix equivalence -----------------------------------------------------

SMatrixEquivalenceReport verify_smatrix_equivalence(const FormSMatrix& sa, const FormSMatrix& sb,
                                                    const GaussianPacket& probe_in_b, int n_per_dim)
{
    if (probe_in_b.form != sb.form) throw InvalidArgument("probe packet must be in form b's chart");
    if (sa.two_j != sb.two_j) throw InvalidArgument("S-matrices belong to different spins");
    const ReducedSMatrix& a = sa.reduced;
    const ReducedSMatrix& b = sb.reduced;
    if (a.size() != b.size()) throw InvalidArgument("S-matrices are on different energy grids");
    for (std::size_t e = 0; e < a.size(); ++e)
        if (std::abs(a.k0[e] - b.k0[e]) > 1e-14 * std::max(1.0, a.k0[e]))
            throw InvalidArgument("S-matrices are on different energy grids");

    SMatrixEquivalenceReport report;
    report.unitarity_residual = std::max(a.unitarity_residual(), b.unitarity_residual());
    const int s = sa.two_j + 1;
    const BoxQuadrature q = probe_in_b.support().quadrature(n_per_dim);
    for (std::size_t e = 0; e < a.size(); ++e) {
        const int d = static_cast<int>(a.s[e].rows());
        const CMatrix channel = CMatrix::Constant(d, 1, 1.0 / std::sqrt(double(d)));
        const CMatrix spin = CMatrix::Constant(1, s, 1.0 / std::sqrt(double(s)));
        const CMatrix shape = channel * spin;  // D x S, unit Frobenius norm
        const double m = a.masses[e];
        const BlockOp to_a = BlockOp::form_change(sa.form, sb.form);
        const BlockOp to_b = BlockOp::form_change(sb.form, sa.form);
        double sum = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const Vec3& vb = q.points[i];
            // A(b<-a) S_a A(a<-b) f, spins acting from the right.
            const Pullback outer = to_b.pullback(vb, m, sa.two_j);
            const Pullback inner = to_a.pullback(outer.v_in, m, sa.two_j);
            const CMatrix f_inner = probe_in_b(inner.v_in) * shape;
            const CMatrix h = a.s[e] * (inner.factor * f_inner * inner.spin.transpose());
            const CMatrix lhs = outer.factor * h * outer.spin.transpose();
            const CMatrix rhs = b.s[e] * (probe_in_b(vb) * shape);
            sum += q.weights[i] * (lhs - rhs).squaredNorm();
        }
        report.operator_residual = std::max(report.operator_residual, std::sqrt(sum));
        for (std::size_t k = 0; k < a.phases[e].size(); ++k)
            report.phase_residual = std::max(report.phase_residual, std::abs(a.phases[e][k] - b.phases[e][k]));
    }
    return report;
}

// -- Form pipelines -----------------------------------------------------------

FormInteraction::FormInteraction(DynamicsForm form, InteractionKernel kernel) : form_(form), kernel_(std::move(kernel))
{
}

StatePtr FormInteraction::apply(const StatePtr& state) const
{
    if (state->form() != form_) throw InvalidArgument("state is not in this interaction's form");
    if (state->internal_dimension() != kernel_.dimension()) throw InvalidArgument("state/kernel dimension mismatch");
    return std::make_shared<InteractedState>(state, kernel_.weighted_interaction());
}

InteractionKernel FormInteraction::reduced_kernel(const GaussianPacket& probe, int n_per_dim) const
{
    if (probe.form != form_) throw InvalidArgument("probe is not in this interaction's form");
    const int dim = kernel_.dimension();
    const Eigen::VectorXd masses = internal_masses(kernel_.grid, kernel_.channels());
    const BoxQuadrature q = probe.support().quadrature(n_per_dim);
    double gg = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) gg += q.weights[i] * probe(q.points[i]) * probe(q.points[i]);

    CMatrix weighted(dim, dim);
    for (int r = 0; r < dim; ++r) {
        PacketState::Term term{CVector::Unit(dim, r), CVector::Ones(1), probe};
        const StatePtr image = apply(std::make_shared<PacketState>(form_, 0, masses, std::vector{term}));
        CVector col = CVector::Zero(dim);
        for (std::size_t i = 0; i < q.size(); ++i) col += (q.weights[i] * probe(q.points[i])) * image->amplitude(q.points[i]).col(0);
        weighted.col(r) = col / gg;
    }
    InteractionKernel out = kernel_;
    const int n = kernel_.grid.size();
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            const int i = a % n, ip = b % n;
            const auto& g = kernel_.grid;
            out.values(a, b) = weighted(a, b) / (std::sqrt(g.weights()[i] * g.weights()[ip]) * g.nodes()[i] * g.nodes()[ip]);
        }
    out.provenance = kernel_.provenance + " reduced in the " + std::string(to_string(form_)) + " chart";
    return out;
}

FormObservables solve_in_form(DynamicsForm form, const InteractionKernel& kernel, const std::vector<double>& k0,
                              const GaussianPacket& probe)
{
    const InteractionKernel reduced = FormInteraction(form, kernel).reduced_kernel(probe);
    SpectrumSolution spectrum = solve_bound_states(reduced, reduced.grid);
    ReducedSMatrix s = solve_scattering(reduced, reduced.grid, k0);
    return {form, std::move(spectrum), {form, kernel.two_j, std::move(s)}};
}

}  // namespace btforms
