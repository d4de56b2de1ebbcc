#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cqlab/characters.hpp"
#include "cqlab/cli.hpp"
#include "cqlab/constants.hpp"
#include "cqlab/errors.hpp"
#include "cqlab/l_engine.hpp"
#include "cqlab/lvalue_cache.hpp"
#include "cqlab/moment_lab.hpp"
#include "cqlab/residue.hpp"

namespace py = pybind11;
using namespace cqlab;

namespace {

Family family_of(const std::string& name) { return parse_family(name); }

py::object json_to_python(const nlohmann::ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

py::int_ to_pyint(const Integer& z) { return py::int_(py::str(z.get_str()).attr("__int__")()); }

Integer from_pyint(const py::int_& v) { return Integer(py::str(v).cast<std::string>()); }

RunConfig make_config(const std::string& family, u64 xmax, std::vector<double> xsweep, std::vector<double> k,
                      std::vector<u64> twist, std::vector<u64> c, const std::string& cache, unsigned threads,
                      const std::string& out, const std::string& method, double slack, std::vector<u64> ladder,
                      u64 y, std::vector<int> m, double threshold) {
    RunConfig config;
    config.family = family_of(family);
    config.xmax = xmax;
    config.xsweep = std::move(xsweep);
    if (!k.empty()) config.ks = std::move(k);
    if (!twist.empty()) config.twists = std::move(twist);
    if (!c.empty()) config.cs = std::move(c);
    config.cache = cache;
    config.threads = threads;
    config.out = out;
    config.method = method;
    config.slack = slack;
    if (!ladder.empty()) config.ladder = std::move(ladder);
    config.y = y;
    if (!m.empty()) config.ms = std::move(m);
    config.threshold = threshold;
    return config;
}

}  // namespace

PYBIND11_MODULE(_cqlab, m) {
    m.doc() = "Cubic and quartic Dirichlet characters, central L-values and moment experiments";

    static py::exception<Error> base(m, "CqlabError");
    py::register_exception<NotCoprimeToRamified>(m, "NotCoprimeToRamified", base.ptr());
    py::register_exception<NotSplitPrime>(m, "NotSplitPrime", base.ptr());
    py::register_exception<BothZero>(m, "BothZero", base.ptr());
    py::register_exception<InvalidCharacterValue>(m, "InvalidCharacterValue", base.ptr());
    py::register_exception<NonPositiveArgument>(m, "NonPositiveArgument", base.ptr());
    py::register_exception<ConductorTooLargeForOracle>(m, "ConductorTooLargeForOracle", base.ptr());
    py::register_exception<DivergentParameter>(m, "DivergentParameter", base.ptr());
    py::register_exception<QuadratureNonConvergence>(m, "QuadratureNonConvergence", base.ptr());
    py::register_exception<MissingLValues>(m, "MissingLValues", base.ptr());
    py::register_exception<MissingFamily>(m, "MissingFamily", base.ptr());
    py::register_exception<EmptyLadder>(m, "EmptyLadder", base.ptr());
    py::register_exception<InvalidLadder>(m, "InvalidLadder", base.ptr());
    py::register_exception<ZeroCentralValue>(m, "ZeroCentralValue", base.ptr());
    py::register_exception<IOFailure>(m, "IOFailure", base.ptr());
    py::register_exception<UsageError>(m, "UsageError", base.ptr());

    py::class_<PrimitiveCharacter>(m, "Character")
        .def_property_readonly("family", [](const PrimitiveCharacter& c) { return std::string(to_string(c.family())); })
        .def_property_readonly("conductor", &PrimitiveCharacter::conductor)
        .def_property_readonly("order", &PrimitiveCharacter::order)
        .def_property_readonly("parity", &PrimitiveCharacter::parity)
        .def_property_readonly("gen_a", [](const PrimitiveCharacter& c) { return to_pyint(c.gen_a()); })
        .def_property_readonly("gen_b", [](const PrimitiveCharacter& c) { return to_pyint(c.gen_b()); })
        .def("exponent", &PrimitiveCharacter::exponent, py::arg("m"),
             "j with chi(m) = zeta^j, or -1 when gcd(m, q) > 1")
        .def("__call__", [](const PrimitiveCharacter& c, i64 n) { return eval_character(c, n); })
        .def("conjugate", &PrimitiveCharacter::conjugate)
        .def("gauss_sum", [](const PrimitiveCharacter& c) { return gauss_sum(c); })
        .def("root_number", [](const PrimitiveCharacter& c) { return root_number(c); })
        .def("__repr__", [](const PrimitiveCharacter& c) {
            return "Character(" + std::string(to_string(c.family())) + ", q=" + std::to_string(c.conductor()) +
                   ", gen=(" + c.gen_a().get_str() + ", " + c.gen_b().get_str() + "))";
        });

    m.def("enumerate_family",
          [](const std::string& family, u64 X) { return enumerate_family(family_of(family), X).members; },
          py::arg("family"), py::arg("X"), "Family members of conductor <= X in canonical order");

    m.def("prime_symbol",
          [](i64 value, const std::string& family, const py::int_& a, const py::int_& b) {
              const auto s = prime_symbol(value, make_kprime(family_of(family), from_pyint(a), from_pyint(b)));
              return s.is_zero() ? -1 : s.exponent();
          },
          py::arg("m"), py::arg("family"), py::arg("a"), py::arg("b"),
          "Exponent of the residue symbol (m / a + b w) or (m / a + b i); -1 when it vanishes");

    m.def("afe_central_value",
          [](const PrimitiveCharacter& chi, double A) {
              return afe_central_value(chi, A > 0 ? A : std::sqrt(static_cast<double>(chi.conductor()))).value;
          },
          py::arg("chi"), py::arg("A") = 0.0);
    m.def("direct_central_value", [](const PrimitiveCharacter& chi) { return direct_central_value(chi).value; },
          py::arg("chi"));
    m.def("central_values",
          [](const std::string& family, u64 X, unsigned threads) {
              const auto slice = enumerate_family(family_of(family), X);
              const GaussPeriodTable table(slice, threads);
              std::vector<std::complex<double>> out;
              py::gil_scoped_release release;
              for (const auto& r : afe_central_values(slice, 0, slice.members.size(), threads, &table)) {
                  out.push_back(r.value);
              }
              return out;
          },
          py::arg("family"), py::arg("X"), py::arg("threads") = 0,
          "L(1/2, chi) for every member of conductor <= X, aligned with enumerate_family");

    m.def("euler_constants", [](const std::string& family) { return json_to_python(constants_json(family_of(family))); },
          py::arg("family"));
    m.def("g_factor", [](const std::string& family, u64 c) { return g_factor(family_of(family), c); },
          py::arg("family"), py::arg("c"));
    m.def("Z_K", [](const std::string& family, double u, u64 ell) {
        const auto z = Z_K_euler(family_of(family), u, ell);
        return py::make_tuple(z.value, z.error);
    }, py::arg("family"), py::arg("u"), py::arg("l"));
    m.def("phi_weight", &phi_weight, py::arg("x"));
    m.def("phi_hat", [](std::complex<double> s) { return phi_hat(s); }, py::arg("s"));

    m.def("decompose_twist", [](const std::string& family, u64 ell) {
        const auto t = decompose_twist(family_of(family), ell);
        py::tuple out(character_order(t.family));
        for (int i = 0; i < character_order(t.family); ++i) out[i] = t.parts[i];
        return out;
    }, py::arg("family"), py::arg("l"));
    m.def("predicted_first_moment", [](const std::string& family, double X, u64 ell) {
        const auto p = predicted_first_moment(family_of(family), X, ell);
        return py::make_tuple(p.value, p.error);
    }, py::arg("family"), py::arg("X"), py::arg("l") = 1);
    m.def("truncated_exponential", &truncated_exponential, py::arg("l"), py::arg("x"));
    m.def("lambda0", &lambda0);
    m.def("r_k", &r_k, py::arg("k"));

    m.def("lvalues",
          [](const std::string& family, u64 xmax, const std::string& cache, const std::string& method,
             unsigned threads, const std::string& out) {
              RunConfig c;
              c.family = family_of(family);
              c.xmax = xmax;
              c.cache = cache;
              c.method = method;
              c.threads = threads;
              c.out = out;
              LValuesSummary s;
              {
                  py::gil_scoped_release release;
                  s = cmd_lvalues(c);
              }
              py::dict d;
              d["members"] = s.members;
              d["computed"] = s.computed;
              d["skipped"] = s.skipped;
              d["max_abs_difference"] = s.max_abs_difference;
              d["compare_path"] = s.compare_path;
              return d;
          },
          py::arg("family"), py::arg("xmax"), py::arg("cache"), py::arg("method") = "afe", py::arg("threads") = 0,
          py::arg("out") = ".", "Populate the L-value cache for conductors <= xmax");

    m.def("run_experiment",
          [](const std::string& which, const std::string& family, u64 xmax, std::vector<double> xsweep,
             std::vector<double> k, std::vector<u64> twist, std::vector<u64> c, const std::string& cache,
             unsigned threads, double slack, std::vector<u64> ladder, u64 y, std::vector<int> m_list,
             double threshold) {
              const auto config = make_config(family, xmax, std::move(xsweep), std::move(k), std::move(twist),
                                              std::move(c), cache, threads, ".", "afe", slack, std::move(ladder), y,
                                              std::move(m_list), threshold);
              if (which == "constants") return json_to_python(constants_json(config.family));
              std::string text;
              {
                  py::gil_scoped_release release;
                  text = run_experiment(config, which).json_text();
              }
              return py::module_::import("json").attr("loads")(text);
          },
          py::arg("which"), py::arg("family") = "cubic", py::arg("xmax") = 10000,
          py::arg("xsweep") = std::vector<double>{}, py::arg("k") = std::vector<double>{},
          py::arg("twist") = std::vector<u64>{}, py::arg("c") = std::vector<u64>{}, py::arg("cache") = "lvalues.csv",
          py::arg("threads") = 0, py::arg("slack") = 2.0, py::arg("ladder") = std::vector<u64>{},
          py::arg("y") = 100, py::arg("m") = std::vector<int>{}, py::arg("threshold") = 1e-4,
          "Run one experiment against the cache and return its report as a dict");
}
