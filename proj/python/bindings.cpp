// Python bindings for the main operations. Results cross the boundary as
// plain dicts/lists produced from the same canonical JSON the CLI emits.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deltaspec/fixtures.hpp"
#include "deltaspec/json_io.hpp"

namespace py = pybind11;
using namespace deltaspec;

namespace {

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null: return py::none();
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(json_to_py(v));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default: return py::none();
    }
}

FieldVariant field_for(const std::string& backend, std::uint64_t e) {
    return make_field(backend, e);
}

template <class Fn>
py::object with_exact_field(const FieldVariant& fv, Fn&& fn) {
    return std::visit(
        [&](const auto& field) -> py::object {
            using T = std::decay_t<decltype(field)>;
            if constexpr (T::exact) {
                return json_to_py(fn(field));
            } else {
                throw PreconditionError("operation requires an exact backend (fp or cyclo)");
            }
        },
        fv);
}

PointSetKind kind_of(const std::string& name) {
    if (name == "hypercube") return PointSetKind::hypercube;
    if (name == "pm_cube") return PointSetKind::pm_cube;
    if (name == "full") return PointSetKind::full;
    throw PreconditionError("unknown point set '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Fourier-sparse delta functions on products of cyclic groups";

    m.def(
        "bounds",
        [](const std::vector<std::uint32_t>& moduli) {
            return json_to_py(bound_report_to_json(lower_bounds(GroupSpec(moduli))));
        },
        py::arg("moduli"),
        "Linear, product and covering-recursion lower bounds plus the best "
        "constructive upper bound.");

    m.def(
        "construct_single",
        [](std::uint32_t m, std::uint32_t r, const std::string& backend) {
            GroupSpec spec(std::vector<std::uint32_t>(r, m));
            return with_exact_field(field_for(backend, spec.exponent()), [&](const auto& field) {
                auto s = single_block(field, m, r);
                Json j;
                j["spectrum"] = spectrum_to_json(field, s);
                j["sparsity"] = s.sparsity();
                j["verified"] = is_delta_on_support(
                    field, s, point_set(spec, PointSetKind::hypercube));
                return j;
            });
        },
        py::arg("m"), py::arg("r"), py::arg("backend") = "fp");

    m.def(
        "construct_partitioned",
        [](std::uint32_t m, const std::vector<std::vector<std::uint32_t>>& blocks,
           const std::string& backend) {
            std::size_t r = 0;
            for (const auto& b : blocks) r += b.size();
            GroupSpec spec(std::vector<std::uint32_t>(r, m));
            return with_exact_field(field_for(backend, spec.exponent()), [&](const auto& field) {
                auto s = partitioned(field, m, blocks);
                Json j;
                j["spectrum"] = spectrum_to_json(field, s);
                j["sparsity"] = s.sparsity();
                j["verified"] = is_delta_on_support(
                    field, s, point_set(spec, PointSetKind::hypercube));
                return j;
            });
        },
        py::arg("m"), py::arg("blocks"), py::arg("backend") = "fp");

    m.def(
        "min_sparsity",
        [](const std::vector<std::uint32_t>& moduli, const std::string& set_kind,
           const std::string& backend, std::uint64_t t_min, std::uint64_t t_max,
           std::uint64_t budget, unsigned workers) {
            GroupSpec spec(moduli);
            SearchProblem prob{.spec = spec, .B = point_set(spec, kind_of(set_kind))};
            prob.t_min = t_min;
            prob.t_max = t_max;
            prob.budget = budget;
            return with_exact_field(field_for(backend, spec.exponent()), [&](const auto& field) {
                return search_result_to_json(field, min_sparsity(field, prob, workers));
            });
        },
        py::arg("moduli"), py::arg("set") = "hypercube", py::arg("backend") = "cyclo",
        py::arg("t_min") = 1, py::arg("t_max") = 0, py::arg("budget") = 100000000,
        py::arg("workers") = 1,
        "Certificate-producing minimal Fourier sparsity of a B-delta function.");

    m.def(
        "covering_number",
        [](const std::vector<std::uint32_t>& moduli, std::uint64_t order_cap,
           std::uint64_t node_budget) {
            GroupSpec spec(moduli);
            return json_to_py(
                covering_result_to_json(spec, covering_number_exact(spec, order_cap, node_budget)));
        },
        py::arg("moduli"), py::arg("order_cap") = 4096, py::arg("node_budget") = 20000000);

    m.def(
        "translate_bound",
        [](const std::vector<std::uint32_t>& moduli, const std::string& set_kind,
           const std::vector<Coords>& D) {
            GroupSpec spec(moduli);
            return translate_bound(spec, point_set(spec, kind_of(set_kind)), D);
        },
        py::arg("moduli"), py::arg("set"), py::arg("D"));

    m.def(
        "canonical_set",
        [](std::uint64_t m) { return json_to_py(canonical_set_to_json(canonical_set(m))); },
        py::arg("m"));

    m.def(
        "trivial_decoding",
        [](std::uint64_t m, const std::string& backend) {
            return with_exact_field(field_for(backend, m), [&](const auto& field) {
                auto P = trivial_decoding(field, m);
                Json j;
                j["poly"] = polynomial_to_json(field, P);
                j["sparsity"] = P.sparsity();
                j["verified"] = verify_decoding(field, P, canonical_set(m));
                return j;
            });
        },
        py::arg("m"), py::arg("backend") = "fp");

    m.def(
        "min_decoding_sparsity",
        [](std::uint64_t m, const std::string& backend, std::uint64_t t_max,
           std::uint64_t budget, unsigned workers) {
            return with_exact_field(field_for(backend, m), [&](const auto& field) {
                return search_result_to_json(field,
                                             min_decoding_sparsity(field, m, t_max, budget,
                                                                   workers));
            });
        },
        py::arg("m"), py::arg("backend") = "cyclo", py::arg("t_max") = 0,
        py::arg("budget") = 100000000, py::arg("workers") = 1);

    m.def(
        "verify_r2_lower",
        [](std::uint32_t m1, std::uint32_t m2, std::uint64_t budget) {
            auto r = verify_r2_lower(m1, m2, budget);
            Json j;
            j["verified"] = r.verified;
            j["subsets_checked"] = r.subsets_checked;
            return json_to_py(j);
        },
        py::arg("m1"), py::arg("m2"), py::arg("budget") = 100000000);

    m.def(
        "pir_params",
        [](std::uint32_t r, double n, std::optional<std::uint32_t> t) {
            return json_to_py(pir_report_to_json(pir_params(r, n, t)));
        },
        py::arg("r"), py::arg("n"), py::arg("t") = std::nullopt);

    m.def("fixtures_run", &fixtures_run, py::arg("seed") = 0, py::arg("workers") = 1,
          "Deterministic fixture battery as a canonical JSON string.");

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<VerificationError>(m, "VerificationError", PyExc_AssertionError);
}
