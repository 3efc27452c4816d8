#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperan/report.hpp"

namespace py = pybind11;

namespace {

using namespace hyperan;

Hypercomplex element_from_sequence(const std::vector<double>& components) {
    if (components.size() != kQuaternionDim && components.size() != kOctonionDim) {
        throw DimensionError("expected 4 or 8 components, got " +
                             std::to_string(components.size()));
    }
    return Hypercomplex::from_components(components);
}

std::vector<double> component_list(const Hypercomplex& q) {
    return {q.components().begin(), q.components().end()};
}

OperatorKind operator_kind(const std::string& name) {
    const auto op = operator_from_name(name);
    if (!op) {
        throw ConfigError("unknown operator \"" + name + "\"");
    }
    return *op;
}

}  // namespace

PYBIND11_MODULE(hyperan, m) {
    m.doc() = "numerical regularity toolkit for quaternion- and octonion-valued functions";
    m.attr("__version__") = "0.1.0";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
    py::register_exception<RealAxisError>(m, "RealAxisError", error.ptr());
    py::register_exception<SingularityError>(m, "SingularityError", error.ptr());
    py::register_exception<PlaneMembershipError>(m, "PlaneMembershipError", error.ptr());
    py::register_exception<EmptyGridError>(m, "EmptyGridError", error.ptr());

    py::class_<Hypercomplex>(m, "Hypercomplex")
        .def(py::init(&element_from_sequence), py::arg("components"))
        .def_property_readonly("dim", &Hypercomplex::dim)
        .def("components", &component_list)
        .def("conjugate", &Hypercomplex::conjugate)
        .def("norm", &Hypercomplex::norm)
        .def("norm_sq", &Hypercomplex::norm_sq)
        .def("inverse", &Hypercomplex::inverse)
        .def("real_part", &Hypercomplex::real_part)
        .def("imaginary_norm", &Hypercomplex::imaginary_norm)
        .def("__len__", &Hypercomplex::dim)
        .def("__getitem__",
             [](const Hypercomplex& q, int axis) {
                 if (axis < 0 || axis >= q.dim()) {
                     throw py::index_error("component index out of range");
                 }
                 return q[axis];
             })
        .def("__neg__", [](const Hypercomplex& q) { return -q; })
        .def("__add__", [](const Hypercomplex& a, const Hypercomplex& b) { return a + b; })
        .def("__sub__", [](const Hypercomplex& a, const Hypercomplex& b) { return a - b; })
        .def("__mul__", [](const Hypercomplex& a, const Hypercomplex& b) { return a * b; })
        .def("__mul__", [](const Hypercomplex& a, double s) { return a * s; })
        .def("__rmul__", [](const Hypercomplex& a, double s) { return s * a; })
        .def("__truediv__", [](const Hypercomplex& a, double s) { return a / s; })
        .def("__eq__", [](const Hypercomplex& a, const Hypercomplex& b) { return a == b; })
        .def("__repr__", &Hypercomplex::to_string);

    m.def(
        "unit",
        [](int dim, int axis) { return Hypercomplex::unit(dim, axis); },
        py::arg("dim"), py::arg("axis"));
    m.def("commutator", &commutator, py::arg("a"), py::arg("b"));
    m.def("associator", &associator, py::arg("a"), py::arg("b"), py::arg("c"));
    m.def(
        "unit_imaginary",
        [](const Hypercomplex& q) { return unit_imaginary(q).as_element(); },
        py::arg("q"), "Unit imaginary direction of q; raises RealAxisError near the real axis.");
    m.def(
        "basis_table",
        [](int dim) {
            const BasisTable table = basis_table(dim);
            std::vector<std::vector<std::string>> cells;
            for (int row = 0; row < dim; ++row) {
                auto& line = cells.emplace_back();
                for (int col = 0; col < dim; ++col) {
                    line.push_back(table.cell_string(row, col));
                }
            }
            return cells;
        },
        py::arg("dim"), "Signed basis product table; cell \"+3\" means e_row * e_col = +e3.");
    m.def(
        "table_json", [](int dim) { return serialize_basis_table(dim, OutputFormat::json); },
        py::arg("dim"));

    py::class_<FunctionSpec>(m, "FunctionSpec")
        .def_static("from_json", &parse_function_spec, py::arg("text"))
        .def("to_json", &serialize_function_spec)
        .def_property_readonly("dim", &FunctionSpec::dim)
        .def_property_readonly("plane_restricted", &FunctionSpec::plane_restricted)
        .def("evaluate", &FunctionSpec::evaluate, py::arg("q"))
        .def("evaluate_extended", &FunctionSpec::evaluate_extended, py::arg("q"))
        .def("__call__", &FunctionSpec::evaluate, py::arg("q"))
        .def("__repr__", [](const FunctionSpec& spec) {
            return "FunctionSpec.from_json(" + serialize_function_spec(spec) + ")";
        });

    m.def("operator_names", [] {
        std::vector<std::string> names;
        for (OperatorKind op : kAllOperators) {
            names.emplace_back(operator_name(op));
        }
        return names;
    });
    m.def(
        "apply_operator",
        [](const FunctionSpec& f, const std::string& op, const Hypercomplex& q, double h) {
            return apply_operator(f, operator_kind(op), q, h);
        },
        py::arg("f"), py::arg("op"), py::arg("q"), py::arg("h") = kDefaultStep,
        "Finite-difference operator values at q (three entries for holomorphy_trio).");
    m.def(
        "residual_norm",
        [](const std::vector<Hypercomplex>& values) { return residual_norm(values); },
        py::arg("values"));
    m.def(
        "classify_json",
        [](const std::string& spec_json, double h, std::optional<double> tolerance,
           std::uint64_t seed) {
            const FunctionSpec spec = parse_function_spec(spec_json);
            ClassifyConfig config;
            config.h = h;
            config.tolerance = tolerance;
            config.grid.dim = spec.dim();
            config.grid.seed = seed;
            return serialize_report(classify(spec, config), OutputFormat::json);
        },
        py::arg("spec_json"), py::arg("h") = kDefaultStep, py::arg("tolerance") = py::none(),
        py::arg("seed") = kDefaultGridSeed,
        "Full classification on the default grid, returned as the JSON report.");
}
