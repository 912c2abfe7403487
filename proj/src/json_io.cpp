#include "deltaspec/json_io.hpp"

namespace deltaspec {

Json field_to_json(const FieldVariant& fv) {
    return std::visit(
        [](const auto& f) -> Json {
            using T = std::decay_t<decltype(f)>;
            Json j;
            if constexpr (std::is_same_v<T, PrimeField>) {
                j["backend"] = "fp";
                j["p"] = f.p();
                j["e"] = f.e();
            } else if constexpr (std::is_same_v<T, CyclotomicField>) {
                j["backend"] = "cyclo";
                j["e"] = f.e();
            } else {
                j["backend"] = "complex";
                j["e"] = f.e();
                j["tolerance"] = f.tolerance();
            }
            return j;
        },
        fv);
}

FieldVariant make_field(const std::string& backend, std::uint64_t e,
                        std::optional<std::uint64_t> p, double tolerance) {
    if (backend == "fp") {
        if (p) return PrimeField::with_prime(*p, e);
        return PrimeField::make(e);
    }
    if (backend == "cyclo") return CyclotomicField::make(e);
    if (backend == "complex") return ComplexField::make(e, tolerance);
    throw PreconditionError("unknown field backend '" + backend + "'");
}

FieldVariant field_from_json(const Json& j) {
    const std::string backend = j.at("backend").get<std::string>();
    const std::uint64_t e = j.at("e").get<std::uint64_t>();
    std::optional<std::uint64_t> p;
    if (j.contains("p")) p = j.at("p").get<std::uint64_t>();
    double tol = j.value("tolerance", 1e-9);
    return make_field(backend, e, p, tol);
}

Json element_to_json(const PrimeField&, const PrimeField::Element& v) { return v; }

Json element_to_json(const CyclotomicField&, const CyclotomicField::Element& v) {
    Json arr = Json::array();
    for (const mpq_class& q : v) arr.push_back(q.get_str());
    return arr;
}

Json element_to_json(const ComplexField&, const ComplexField::Element& v) {
    return Json::array({v.real(), v.imag()});
}

PrimeField::Element element_from_json(const PrimeField& f, const Json& j) {
    const std::uint64_t v = j.get<std::uint64_t>();
    if (v >= f.p()) throw PreconditionError("prime-field element out of range");
    return v;
}

CyclotomicField::Element element_from_json(const CyclotomicField& f, const Json& j) {
    if (!j.is_array() || j.size() != f.degree())
        throw PreconditionError("cyclotomic element must be a coefficient array of length phi(e)");
    CyclotomicField::Element v = f.zero();
    for (std::size_t i = 0; i < f.degree(); ++i) {
        v[i] = mpq_class(j[i].get<std::string>());
        v[i].canonicalize();
    }
    return v;
}

ComplexField::Element element_from_json(const ComplexField&, const Json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json group_to_json(const GroupSpec& spec) {
    Json j;
    j["moduli"] = spec.moduli();
    return j;
}

GroupSpec group_from_json(const Json& j) {
    return GroupSpec(j.at("moduli").get<std::vector<std::uint32_t>>());
}

Json coords_to_json(const Coords& c) {
    Json arr = Json::array();
    for (std::uint32_t v : c) arr.push_back(v);
    return arr;
}

Coords coords_from_json(const Json& j) { return j.get<Coords>(); }

Json point_set_to_json(const PointSet& ps) {
    Json arr = Json::array();
    for (const Coords& x : ps.elements) arr.push_back(coords_to_json(x));
    return arr;
}

Json bound_report_to_json(const BoundReport& rep) {
    Json j;
    j["moduli"] = rep.moduli;
    j["linear"] = rep.linear_bound;
    j["product"] = rep.product_bound;
    j["covering"] = rep.covering_bound;
    j["max_lower"] = rep.max_lower();
    if (rep.best_known_upper) {
        j["best_known_upper"] = *rep.best_known_upper;
        j["upper_provenance"] = rep.upper_provenance;
    }
    return j;
}

Json hyperplanes_to_json(const HyperplaneClasses& cs) {
    Json j;
    j["p"] = cs.p;
    j["r"] = cs.r;
    Json classes = Json::array();
    for (const auto& cls : cs.classes) {
        Json c;
        c["normal"] = coords_to_json(cls.normal);
        c["offsets"] = cls.offsets;
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);
    return j;
}

HyperplaneClasses hyperplanes_from_json(const Json& j) {
    HyperplaneClasses cs;
    cs.p = j.at("p").get<std::uint32_t>();
    cs.r = j.at("r").get<std::uint32_t>();
    for (const auto& c : j.at("classes")) {
        HyperplaneClasses::Class cls;
        cls.normal = coords_from_json(c.at("normal"));
        cls.offsets = c.at("offsets").get<std::vector<std::uint32_t>>();
        cs.classes.push_back(std::move(cls));
    }
    return validate_classes(std::move(cs));
}

Json covering_result_to_json(const GroupSpec& spec, const CoveringResult& res) {
    Json j;
    j["moduli"] = spec.moduli();
    j["value"] = res.value;
    Json wit = Json::array();
    for (const Coords& s : res.witness) wit.push_back(coords_to_json(s));
    j["witness"] = std::move(wit);
    return j;
}

Json canonical_set_to_json(const CanonicalSet& S) {
    Json j;
    j["m"] = S.m;
    j["primes"] = S.primes;
    j["elements"] = S.elements;
    return j;
}

Json pir_report_to_json(const PirReport& rep) {
    Json j;
    j["r"] = rep.r;
    j["n"] = rep.n;
    if (rep.t) j["t"] = *rep.t;
    j["required_servers"] = rep.required_servers;
    j["feasible"] = rep.feasible;
    j["k"] = rep.k;
    j["comm_upper"] = rep.comm_upper;
    if (rep.t) j["comm_lower"] = rep.comm_lower;
    j["shape_only"] = rep.shape_only;
    return j;
}

}  // namespace deltaspec
