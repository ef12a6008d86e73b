#include "eggbeater/action.hpp"
#include "eggbeater/bounds.hpp"
#include "eggbeater/errors.hpp"
#include "eggbeater/orbits.hpp"
#include "eggbeater/symplectic.hpp"
#include "eggbeater/words.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace eggbeater;

namespace {

ClassRule rule_from(const std::string& name, bool break_symmetry) {
    if (name == "quarter") return ClassRule::quarter(break_symmetry);
    if (name == "midrange") return ClassRule::midrange(break_symmetry);
    throw Error(ErrorKind::InvalidArgument, "class rule must be 'quarter' or 'midrange'");
}

}  // namespace

PYBIND11_MODULE(_eggbeater, m) {
    m.doc() = "Fixed points, Conley-Zehnder indices, actions and Hofer bounds of linked twist maps";

    // Never destroyed: the handle must outlive interpreter shutdown.
    static auto* error = new py::object(py::exception<Error>(m, "EggbeaterError"));
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = (*error)(e.what());
            exc.attr("kind") = error_kind_name(e.kind());
            PyErr_SetObject(error->ptr(), exc.ptr());
        }
    });

    // words
    m.def("reduce_word", [](const std::string& text) { return parse_word(text).to_string(); },
          "Freely reduced normal form of a word literal");
    m.def("power_word", [](const std::string& text, unsigned long k) { return power_word(parse_word(text), k).to_string(); });
    m.def("inverse_word", [](const std::string& text) { return parse_word(text).inverse().to_string(); });
    m.def("to_even_form",
          [](const std::string& text) {
              auto f = to_even_form(parse_word(text));
              return py::make_tuple(f.conjugator.to_string(), even_form_word(f.form).to_string());
          },
          "(conjugator, form) with conjugator^-1 * w * conjugator == form");

    // profile
    py::class_<Profile>(m, "Profile")
        .def(py::init<double, double>(), py::arg("epsilon"), py::arg("delta"))
        .def_property_readonly("epsilon", &Profile::epsilon)
        .def_property_readonly("delta", &Profile::delta)
        .def("rho", [](const Profile& p, double r) { return p.rho(r); })
        .def("h", [](const Profile& p, double r) { return p.h(r); })
        .def("rho_smooth", [](const Profile& p, double r) { return p.rho_smooth(r); })
        .def("h_smooth", [](const Profile& p, double r) { return p.h_smooth(r); });
    m.def("default_delta", &default_delta, py::arg("epsilon"), py::arg("N"));
    m.def(
        "solve_root",
        [](double c, int sign, double epsilon, std::int64_t N, bool smoothed) {
            auto params = make_params(1, epsilon, N);
            auto r = solve_profile_root(c, branch_of_sign(sign), params, smoothed);
            return py::make_tuple(r.r, r.ill_conditioned);
        },
        py::arg("c"), py::arg("sign"), py::arg("epsilon") = 0.01, py::arg("N") = 1000, py::arg("smoothed") = true,
        "Signed root of r rho(|r|) = c on the inner (sign -1) or outer (sign +1) branch");

    // indices
    py::class_<IndexValue>(m, "IndexValue")
        .def_readonly("doubled", &IndexValue::doubled)
        .def_property_readonly("value", &IndexValue::value)
        .def_property_readonly("integral", &IndexValue::integral)
        .def("__str__", &IndexValue::to_string)
        .def("__repr__", [](const IndexValue& v) { return "IndexValue(" + v.to_string() + ")"; })
        .def("__eq__", [](const IndexValue& a, const IndexValue& b) { return a == b; });
    m.def("signature", [](const Mat& S, double tol) { return signature(S, tol); }, py::arg("S"),
          py::arg("tol") = kSignatureTol);
    m.def("is_symplectic", [](const Mat& M, double tol) { return is_symplectic(M, tol); }, py::arg("M"),
          py::arg("tol") = 1e-9);
    m.def("standard_J", &standard_J);

    // fixed points
    py::class_<FixedPointRecord>(m, "FixedPoint")
        .def_property_readonly("signs", [](const FixedPointRecord& r) { return r.signs.to_string(); })
        .def_property_readonly("pattern", [](const FixedPointRecord& r) { return r.signs.index(); })
        .def_property_readonly("N", [](const FixedPointRecord& r) { return r.params.N; })
        .def_property_readonly("homotopy_class", [](const FixedPointRecord& r) { return r.cls.to_string(); })
        .def_readonly("v", &FixedPointRecord::v)
        .def_readonly("x", &FixedPointRecord::x)
        .def_readonly("residual", &FixedPointRecord::residual)
        .def_readonly("box_margin", &FixedPointRecord::box_margin)
        .def_readonly("admissible", &FixedPointRecord::admissible)
        .def_readonly("theory_supported", &FixedPointRecord::theory_supported)
        .def("cz_index", [](const FixedPointRecord& r) { return cz_index_pipeline(r); })
        .def("cz_index_closed", [](const FixedPointRecord& r) { return cz_index_closed(r.signs, r.word, r.params.n); })
        .def("action_exact", [](const FixedPointRecord& r) { return action_exact(r).total; })
        .def("action_closed", [](const FixedPointRecord& r) { return action_closed(r).total; })
        .def("action_coupling", [](const FixedPointRecord& r) { return action_coupling(r); })
        .def("__repr__", [](const FixedPointRecord& r) {
            return "FixedPoint(N=" + std::to_string(r.params.N) + ", signs=" + r.signs.to_string() + ")";
        });

    m.def(
        "census",
        [](const std::string& word, int n, double epsilon, std::int64_t N, const std::string& rule,
           bool break_symmetry, unsigned threads) {
            auto w = parse_even_word(word);
            auto params = make_params(n, epsilon, N);
            auto cls = make_class(rule_from(rule, break_symmetry), w.m(), params);
            return census(w, params, cls, threads);
        },
        py::arg("word"), py::arg("n") = 1, py::arg("epsilon") = 0.01, py::arg("N") = 2000, py::arg("rule") = "quarter",
        py::arg("break_symmetry") = true, py::arg("threads") = 1,
        "All 2^{2m} fixed points in the class picked by the rule, ordered by sign pattern");

    m.def(
        "gap_sweep",
        [](const std::string& word, const std::vector<std::int64_t>& Ns, int n, double epsilon, unsigned threads) {
            SweepOptions opt;
            opt.threads = threads;
            auto s = gap_sweep_and_fit(parse_even_word(word), n, epsilon, DeltaRule{}, ClassRule::quarter(), Ns, opt);
            py::dict out;
            out["N"] = s.N_values;
            out["D"] = s.D_values;
            out["slope"] = s.fitted_slope;
            out["intercept"] = s.fitted_intercept;
            out["r2"] = s.fit_r2;
            return out;
        },
        py::arg("word"), py::arg("N_values"), py::arg("n") = 1, py::arg("epsilon") = 0.01, py::arg("threads") = 1);

    m.def(
        "growth_count",
        [](const std::string& base, int period, std::int64_t N, double epsilon) {
            return growth_count(parse_even_word(base), make_params(1, epsilon, N), period).count;
        },
        py::arg("base"), py::arg("period"), py::arg("N") = 2000, py::arg("epsilon") = 0.01);

    m.def("smallest_prime_factor", &smallest_prime_factor);
}
