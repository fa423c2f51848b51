#include "btforms/config.hpp"
#include "btforms/coupling.hpp"
#include "btforms/errors.hpp"
#include "btforms/irrep_basis.hpp"
#include "btforms/kinematics.hpp"
#include "btforms/mass_operator.hpp"
#include "btforms/oracles.hpp"
#include "btforms/report.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace btforms;

namespace {

template <class Enum>
std::string enum_name(Enum e)
{
    return std::string(to_string(e));
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Bakamjian-Thomas two-body mass operators in instant, point and front form";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<ChartExit>(m, "ChartExit", PyExc_ArithmeticError);
    py::register_exception<ModelRejected>(m, "ModelRejected", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<DynamicsForm>(m, "DynamicsForm")
        .value("Instant", DynamicsForm::Instant)
        .value("Point", DynamicsForm::Point)
        .value("Front", DynamicsForm::Front)
        .def_property_readonly("label", [](DynamicsForm f) { return enum_name(f); });
    m.def("parse_form", [](const std::string& s) { return parse_form(s); });

    py::enum_<BoostKind>(m, "BoostKind").value("Canonical", BoostKind::Canonical).value("Front", BoostKind::Front);

    py::enum_<DegeneracyScheme>(m, "DegeneracyScheme")
        .value("Spinless", DegeneracyScheme::Spinless)
        .value("LS", DegeneracyScheme::LS)
        .value("Helicity", DegeneracyScheme::Helicity);

    // kinematics
    py::class_<FourVector>(m, "FourVector")
        .def(py::init<>())
        .def(py::init<double, double, double, double>(), py::arg("p0"), py::arg("p1"), py::arg("p2"), py::arg("p3"))
        .def_static("on_shell", &FourVector::on_shell, py::arg("p"), py::arg("m"))
        .def_static("from_front", &FourVector::from_front, py::arg("plus"), py::arg("p1"), py::arg("p2"), py::arg("m"))
        .def_property_readonly("components", [](const FourVector& p) { return Eigen::Vector4d(p.components()); })
        .def_property_readonly("energy", &FourVector::energy)
        .def_property_readonly("spatial", &FourVector::spatial)
        .def_property_readonly("plus", &FourVector::plus)
        .def("on_shell_plus", &FourVector::on_shell_plus)
        .def("dot", &FourVector::dot)
        .def("square", &FourVector::square)
        .def("__getitem__", [](const FourVector& p, int mu) {
            if (mu < 0 || mu > 3) throw py::index_error();
            return p[mu];
        })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * double())
        .def("__repr__", [](const FourVector& p) {
            return "FourVector(" + format_double(p[0]) + ", " + format_double(p[1]) + ", " + format_double(p[2]) +
                   ", " + format_double(p[3]) + ")";
        });

    py::class_<LorentzTransform>(m, "LorentzTransform")
        .def(py::init<>())
        .def(py::init<const Mat4&>())
        .def_static("identity", &LorentzTransform::identity)
        .def_static("rotation", py::overload_cast<const Vec3&, double>(&LorentzTransform::rotation), py::arg("axis"),
                    py::arg("angle"))
        .def_static("rotation_matrix", py::overload_cast<const Mat3&>(&LorentzTransform::rotation))
        .def_static("boost", &LorentzTransform::boost, py::arg("axis"), py::arg("rapidity"))
        .def_static("front_transverse_boost", &LorentzTransform::front_transverse_boost)
        .def_property_readonly("matrix", [](const LorentzTransform& l) { return Mat4(l.matrix()); })
        .def("inverse", &LorentzTransform::inverse)
        .def("metric_residual", &LorentzTransform::metric_residual)
        .def("is_proper_orthochronous", &LorentzTransform::is_proper_orthochronous, py::arg("tol") = 1e-12)
        .def("__mul__", [](const LorentzTransform& a, const LorentzTransform& b) { return a * b; })
        .def("__mul__", [](const LorentzTransform& a, const FourVector& p) { return a * p; });

    py::class_<PoincareElement>(m, "PoincareElement")
        .def(py::init([](const LorentzTransform& l, const FourVector& a) { return PoincareElement{l, a}; }),
             py::arg("lambda_") = LorentzTransform(), py::arg("translation") = FourVector())
        .def_readwrite("lambda_", &PoincareElement::lambda)
        .def_readwrite("translation", &PoincareElement::translation)
        .def_static("identity", &PoincareElement::identity)
        .def("inverse", &PoincareElement::inverse)
        .def("__mul__", [](const PoincareElement& a, const PoincareElement& b) { return a * b; });

    py::class_<SpinRotation>(m, "SpinRotation")
        .def(py::init<const Mat3&, int>(), py::arg("rotation"), py::arg("two_j"))
        .def_property_readonly("rotation", &SpinRotation::rotation)
        .def_property_readonly("matrix", &SpinRotation::matrix)
        .def_property_readonly("two_j", &SpinRotation::two_j)
        .def("unitarity_residual", &SpinRotation::unitarity_residual);

    m.def("minkowski_metric", [] { return Mat4(minkowski_metric()); });
    m.def("canonical_boost", &canonical_boost, py::arg("p"), py::arg("m"));
    m.def("front_form_boost", &front_form_boost, py::arg("p"), py::arg("m"));
    m.def("wigner_rotation", &wigner_rotation, py::arg("lambda_"), py::arg("p"), py::arg("m"),
          py::arg("kind") = BoostKind::Canonical);
    m.def("melosh_matrix", &melosh_matrix, py::arg("p"), py::arg("m"));
    m.def("melosh_rotation", &melosh_rotation, py::arg("p"), py::arg("m"), py::arg("two_j"));
    m.def("su2_from_rotation", &su2_from_rotation);

    // irrep basis
    py::class_<IrrepLabel>(m, "IrrepLabel")
        .def(py::init<double, int>(), py::arg("mass"), py::arg("two_j"))
        .def_readonly("mass", &IrrepLabel::mass)
        .def_readonly("two_j", &IrrepLabel::two_j);

    py::class_<FormMapCoefficient>(m, "FormMapCoefficient")
        .def_property_readonly("target", &FormMapCoefficient::target)
        .def_property_readonly("source", &FormMapCoefficient::source)
        .def("map", &FormMapCoefficient::map)
        .def("inverse_map", &FormMapCoefficient::inverse_map)
        .def("jacobian", &FormMapCoefficient::jacobian)
        .def("weight", &FormMapCoefficient::weight)
        .def("spin_rotation", [](const FormMapCoefficient& a, const Vec3& vb) { return a.spin_rotation(vb).matrix(); })
        .def("reversed", &FormMapCoefficient::reversed);
    m.def("form_map", &form_map, py::arg("target"), py::arg("source"), py::arg("irrep"));
    m.def(
        "kinematic_subgroup_contains",
        [](DynamicsForm f, const PoincareElement& g, double tol) { return kinematic_subgroup_contains(f, g, tol); },
        py::arg("form"), py::arg("g"), py::arg("tol") = 1e-10);

    // coupling
    m.def("clebsch_gordan", &clebsch_gordan, py::arg("two_j1"), py::arg("two_m1"), py::arg("two_j2"),
          py::arg("two_m2"), py::arg("two_J"), py::arg("two_M"));
    m.def("spherical_harmonic", &spherical_harmonic, py::arg("l"), py::arg("m"), py::arg("n"));

    // mass operator
    py::class_<QuadratureGrid>(m, "QuadratureGrid")
        .def(py::init<int, double, double, double>(), py::arg("n"), py::arg("scale"), py::arg("m1"), py::arg("m2"))
        .def_property_readonly("size", &QuadratureGrid::size)
        .def_property_readonly("threshold", &QuadratureGrid::threshold)
        .def_property_readonly("nodes", &QuadratureGrid::nodes)
        .def_property_readonly("weights", &QuadratureGrid::weights)
        .def_property_readonly("masses", &QuadratureGrid::masses)
        .def("invariant_mass", &QuadratureGrid::invariant_mass);

    py::class_<PotentialModel>(m, "PotentialModel")
        .def_static("free", &PotentialModel::free)
        .def_static("gaussian", &PotentialModel::gaussian, py::arg("v0"), py::arg("range"))
        .def_static("yamaguchi", &PotentialModel::yamaguchi, py::arg("c"), py::arg("beta"))
        .def_static("gaussian_local", &PotentialModel::gaussian_local, py::arg("v0"), py::arg("range"))
        .def_readonly("strength", &PotentialModel::strength)
        .def_readonly("range", &PotentialModel::range)
        .def_property_readonly("name", &PotentialModel::name)
        .def("__call__", &PotentialModel::operator(), py::arg("k"), py::arg("kp"))
        .def("__repr__", &PotentialModel::describe);

    py::class_<InteractionKernel>(m, "InteractionKernel")
        .def_readonly("two_j", &InteractionKernel::two_j)
        .def_readonly("values", &InteractionKernel::values)
        .def_readonly("provenance", &InteractionKernel::provenance)
        .def_readonly("grid", &InteractionKernel::grid);
    m.def("build_kernel", &build_kernel, py::arg("model"), py::arg("grid"), py::arg("two_j") = 0,
          py::arg("scheme") = DegeneracyScheme::Spinless);

    py::class_<SpectrumSolution>(m, "SpectrumSolution")
        .def_readonly("eigenvalues", &SpectrumSolution::eigenvalues)
        .def_readonly("eigenvectors", &SpectrumSolution::eigenvectors)
        .def_readonly("bound_masses", &SpectrumSolution::bound_masses)
        .def_readonly("threshold", &SpectrumSolution::threshold)
        .def("orthonormality_residual", &SpectrumSolution::orthonormality_residual);
    m.def("solve_bound_states", py::overload_cast<const InteractionKernel&>(&solve_bound_states), py::arg("kernel"));

    py::class_<ReducedSMatrix>(m, "ReducedSMatrix")
        .def_readonly("k0", &ReducedSMatrix::k0)
        .def_readonly("masses", &ReducedSMatrix::masses)
        .def_readonly("s", &ReducedSMatrix::s)
        .def_readonly("phases", &ReducedSMatrix::phases)
        .def("phase_shift", &ReducedSMatrix::phase_shift)
        .def("unitarity_residual", &ReducedSMatrix::unitarity_residual);
    m.def(
        "solve_scattering",
        [](const InteractionKernel& v, const std::vector<double>& k0) { return solve_scattering(v, v.grid, k0); },
        py::arg("kernel"), py::arg("k0"));

    // oracles
    py::class_<YamaguchiOracle>(m, "YamaguchiOracle")
        .def(py::init<double, double, double, double>(), py::arg("c"), py::arg("beta"), py::arg("m1"), py::arg("m2"))
        .def("bound_mass", &YamaguchiOracle::bound_mass)
        .def("t_matrix", &YamaguchiOracle::t_matrix)
        .def("phase_shift", &YamaguchiOracle::phase_shift);
    m.def("born_phase_shift", &born_phase_shift, py::arg("model"), py::arg("m1"), py::arg("m2"), py::arg("k0"));

    // config and runs
    py::class_<ModelConfig>(m, "ModelConfig")
        .def_readwrite("title", &ModelConfig::title)
        .def_readwrite("m1", &ModelConfig::m1)
        .def_readwrite("m2", &ModelConfig::m2)
        .def_readwrite("grid_n", &ModelConfig::grid_n)
        .def_readwrite("grid_scale", &ModelConfig::grid_scale)
        .def_readwrite("k0", &ModelConfig::k0)
        .def_readwrite("forms", &ModelConfig::forms)
        .def("echo", &ModelConfig::echo)
        .def("scale_tolerances", &ModelConfig::scale_tolerances);
    m.def("parse_config", &parse_config, py::arg("text"), py::arg("origin") = "<string>");
    m.def("load_config", &load_config, py::arg("path"));

    py::class_<VerificationRecord>(m, "VerificationRecord")
        .def_readonly("name", &VerificationRecord::name)
        .def_readonly("forms", &VerificationRecord::forms)
        .def_readonly("j", &VerificationRecord::j)
        .def_readonly("residual", &VerificationRecord::residual)
        .def_readonly("tolerance", &VerificationRecord::tolerance)
        .def_readonly("passed", &VerificationRecord::passed)
        .def_readonly("note", &VerificationRecord::note);
    py::class_<SpectrumRecord>(m, "SpectrumRecord")
        .def_readonly("form", &SpectrumRecord::form)
        .def_readonly("j", &SpectrumRecord::j)
        .def_readonly("bound_masses", &SpectrumRecord::bound_masses);
    py::class_<PhaseShiftRecord>(m, "PhaseShiftRecord")
        .def_readonly("form", &PhaseShiftRecord::form)
        .def_readonly("k0", &PhaseShiftRecord::k0)
        .def_readonly("phases", &PhaseShiftRecord::phases);
    py::class_<IssueRecord>(m, "IssueRecord")
        .def_readonly("kind", &IssueRecord::kind)
        .def_readonly("form", &IssueRecord::form)
        .def_readonly("message", &IssueRecord::message);
    py::class_<RunReport>(m, "RunReport")
        .def_readonly("mode", &RunReport::mode)
        .def_readonly("spectra", &RunReport::spectra)
        .def_readonly("phase_shifts", &RunReport::phase_shifts)
        .def_readonly("verifications", &RunReport::verifications)
        .def_readonly("issues", &RunReport::issues)
        .def("all_passed", &RunReport::all_passed)
        .def("exit_code", &RunReport::exit_code)
        .def("to_json", &report_to_json);

    m.def(
        "run",
        [](const ModelConfig& c, const std::string& mode) {
            py::gil_scoped_release release;
            return run(c, parse_mode(mode));
        },
        py::arg("config"), py::arg("mode") = "run");
    m.def("export_report", &export_report, py::arg("report"), py::arg("dir"));
    m.def("report_from_json", &report_from_json);
    m.def("format_double", &format_double);
}
