#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>

#include "selfsim/additive.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/harness.hpp"
#include "selfsim/problems.hpp"

namespace py = pybind11;
using namespace selfsim;

namespace {

std::complex<double> to_py(const Complex& z) { return {z.re.to_double(), z.im.to_double()}; }

std::optional<Strategy> strategy_of(const std::optional<std::string>& s) {
    if (!s) return std::nullopt;
    if (*s == "real") return Strategy::real_only;
    if (*s == "average") return Strategy::average_all;
    throw Error(ErrorKind::config, "strategy: expected 'real' or 'average'");
}

RunConfig make_config(const std::string& problem, const std::vector<int>& orders, std::optional<int> q,
                      const std::optional<std::string>& strategy, int digits, double tolerance,
                      const std::vector<std::string>& methods) {
    RunConfig c;
    c.problem = problem;
    c.orders = orders;
    c.q = q;
    c.strategy = strategy_of(strategy);
    c.digits = digits;
    c.tolerance = tolerance;
    for (const auto& m : methods) c.methods.push_back(parse_method(m));
    return c;
}

py::dict solve_additive(const std::vector<std::string>& a_coeffs, const std::vector<std::string>& beta_powers, int k,
                        std::optional<int> q, const std::string& strategy,
                        const std::vector<std::string>& large_amplitudes, int digits) {
    PrecisionScope scope(digits);
    std::vector<Real> a, beta, b;
    for (const auto& t : a_coeffs) a.push_back(parse_real(t));
    for (const auto& t : beta_powers) beta.push_back(parse_real(t));
    std::vector<LargeCondition> large;
    for (std::size_t i = 0; i < large_amplitudes.size(); ++i) {
        if (i >= beta.size()) throw Error(ErrorKind::config, "large_amplitudes: more entries than beta_powers");
        large.push_back({beta[i], parse_real(large_amplitudes[i])});
    }
    const PowerLadder ladder(beta);
    const auto cs = assemble_conditions(SmallSeries(a), ladder, k, q, large);
    const auto set = solve(cs, PrecisionContext::with_digits(digits));
    const auto report = strategy_amplitude(set, *strategy_of(strategy), std::nullopt, k, static_cast<int>(cs.counter_powers.size()));

    py::list solutions;
    for (const auto& s : set.solutions) {
        py::dict d;
        d["lambda"] = to_py(s.lambda);
        py::list amps, powers;
        for (const auto& t : s.all_terms()) {
            amps.append(to_py(t.amplitude));
            powers.append(t.power.to_double());
        }
        d["amplitudes"] = amps;
        d["powers"] = powers;
        d["B"] = to_py(amplitude(s));
        d["real"] = s.is_real();
        solutions.append(d);
    }
    py::dict out;
    out["B"] = report.amplitude.to_double();
    out["q"] = static_cast<int>(cs.counter_powers.size());
    out["n_solutions"] = set.size();
    out["n_real"] = set.real_count();
    out["solutions"] = solutions;
    return out;
}

}  // namespace

PYBIND11_MODULE(_selfsim, m) {
    m.doc() = "Additive self-similar approximants with arbitrary-precision solving";

    // args = (message, kind), kind as in the CLI status column
    py::register_exception<Error>(m, "SelfsimError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::object type = py::module_::import("selfsim._selfsim").attr("SelfsimError");
            const py::tuple args = py::make_tuple(py::str(e.what()), py::str(std::string(to_string(e.kind()))));
            PyErr_SetObject(type.ptr(), args.ptr());
        }
    });

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("problem", &ResultRow::problem)
        .def_readonly("method", &ResultRow::method)
        .def_readonly("k", &ResultRow::k)
        .def_readonly("q", &ResultRow::q)
        .def_readonly("strategy", &ResultRow::strategy)
        .def_readonly("B", &ResultRow::B)
        .def_readonly("paper_B", &ResultRow::paper_B)
        .def_readonly("percent_error", &ResultRow::percent_error)
        .def_readonly("paper_error", &ResultRow::paper_error)
        .def_readonly("n_solutions", &ResultRow::n_solutions)
        .def_readonly("n_real", &ResultRow::n_real)
        .def_readonly("status", &ResultRow::status)
        .def_readonly("failed", &ResultRow::failed)
        .def_readonly("message", &ResultRow::message)
        .def_readonly("lambda_", &ResultRow::lambda)
        .def_readonly("amplitudes", &ResultRow::amplitudes)
        .def("__repr__", [](const ResultRow& r) {
            return "<ResultRow " + r.problem + " " + r.method + " k=" + std::to_string(r.k) + " " + r.status + ">";
        });

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("rows", &RunResult::rows)
        .def_property_readonly("exit_code", &RunResult::exit_code)
        .def("csv", [](const RunResult& r, int significant) { return format_csv(r, significant); }, py::arg("significant") = 6)
        .def("json", [](const RunResult& r, int significant) { return format_json(r, significant); }, py::arg("significant") = 6);

    m.def(
        "reproduce",
        [](const std::string& problem, const std::vector<int>& orders, std::optional<int> q,
           const std::optional<std::string>& strategy, int digits, double tolerance) {
            const auto c = make_config(problem, orders, q, strategy, digits, tolerance, {});
            py::gil_scoped_release release;
            return run_reproduce(c);
        },
        py::arg("problem"), py::arg("orders") = std::vector<int>{}, py::arg("q") = py::none(),
        py::arg("strategy") = py::none(), py::arg("digits") = 60, py::arg("tolerance") = 1e-4,
        "Additive approximants checked against the published tables.");

    m.def(
        "compare",
        [](const std::string& problem, const std::vector<int>& orders, const std::vector<std::string>& methods,
           int digits, double tolerance) {
            const auto c = make_config(problem, orders, std::nullopt, std::nullopt, digits, tolerance, methods);
            py::gil_scoped_release release;
            return run_compare(c);
        },
        py::arg("problem"), py::arg("orders") = std::vector<int>{}, py::arg("methods") = std::vector<std::string>{},
        py::arg("digits") = 60, py::arg("tolerance") = 1e-4, "Every method per order, side by side.");

    m.def(
        "run_config",
        [](const std::string& json_text) {
            const auto c = parse_config(json_text);
            py::gil_scoped_release release;
            return run_custom(c);
        },
        py::arg("json_text"), "Runs a JSON configuration (same schema as `selfsim run --config`).");

    m.def("solve_additive", &solve_additive, py::arg("a_coeffs"), py::arg("beta_powers"), py::arg("k"),
          py::arg("q") = py::none(), py::arg("strategy") = "real",
          py::arg("large_amplitudes") = std::vector<std::string>{}, py::arg("digits") = 60,
          "Solves one additive approximant. Numbers are strings (decimal or p/q).");

    m.def(
        "partition_coeffs",
        [](int k) {
            PrecisionScope scope(30);
            std::vector<double> out;
            const auto series = partition_coeffs(k);
            for (const auto& c : series.coeffs()) out.push_back(c.to_double());
            return out;
        },
        py::arg("k"));
    m.def("partition_exact", &partition_exact, py::arg("g"));
    m.def("oscillator_coeffs_exact", &oscillator_coeffs_exact, py::arg("k"));
    m.def("benchmark_names", &benchmark_names);
    m.def("reference_tables_version", &reference_tables_version);
}
