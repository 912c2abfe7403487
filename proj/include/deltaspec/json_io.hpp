#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "deltaspec/constructions.hpp"
#include "deltaspec/decoding.hpp"
#include "deltaspec/field.hpp"
#include "deltaspec/fourier.hpp"
#include "deltaspec/group.hpp"
#include "deltaspec/search.hpp"

namespace deltaspec {

using Json = nlohmann::json;
using FieldVariant = std::variant<PrimeField, CyclotomicField, ComplexField>;

// Field descriptors: {"backend":"fp","p":7,"e":6}, {"backend":"cyclo","e":6},
// {"backend":"complex","e":6,"tolerance":1e-9}.
Json field_to_json(const FieldVariant& fv);
FieldVariant field_from_json(const Json& j);
FieldVariant make_field(const std::string& backend, std::uint64_t e,
                        std::optional<std::uint64_t> p = std::nullopt, double tolerance = 1e-9);

// Elements: prime-field residues as integers, cyclotomic coordinates as
// exact "num/den" strings, complex values as [re, im].
Json element_to_json(const PrimeField& f, const PrimeField::Element& v);
Json element_to_json(const CyclotomicField& f, const CyclotomicField::Element& v);
Json element_to_json(const ComplexField& f, const ComplexField::Element& v);
PrimeField::Element element_from_json(const PrimeField& f, const Json& j);
CyclotomicField::Element element_from_json(const CyclotomicField& f, const Json& j);
ComplexField::Element element_from_json(const ComplexField& f, const Json& j);

Json group_to_json(const GroupSpec& spec);
GroupSpec group_from_json(const Json& j);

Json coords_to_json(const Coords& c);
Coords coords_from_json(const Json& j);

Json point_set_to_json(const PointSet& ps);

Json bound_report_to_json(const BoundReport& rep);

Json hyperplanes_to_json(const HyperplaneClasses& cs);
HyperplaneClasses hyperplanes_from_json(const Json& j);

Json covering_result_to_json(const GroupSpec& spec, const CoveringResult& res);

Json canonical_set_to_json(const CanonicalSet& S);

Json pir_report_to_json(const PirReport& rep);

template <class F>
Json spectrum_to_json(const F& field, const Spectrum<F>& s) {
    Json j;
    j["moduli"] = s.spec.moduli();
    j["field"] = field_to_json(FieldVariant(field));
    Json coeffs = Json::array();
    for (const auto& [a, c] : s.coeffs) {
        Json entry;
        entry["a"] = coords_to_json(a);
        entry["c"] = element_to_json(field, c);
        coeffs.push_back(std::move(entry));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

template <class F>
Spectrum<F> spectrum_from_json(const F& field, const Json& j) {
    GroupSpec spec(j.at("moduli").get<std::vector<std::uint32_t>>());
    Spectrum<F> s{spec, {}};
    for (const auto& entry : j.at("coeffs")) {
        Coords a = coords_from_json(entry.at("a"));
        auto c = element_from_json(field, entry.at("c"));
        if (!field.is_zero(c)) s.coeffs.emplace(std::move(a), std::move(c));
    }
    return s;
}

template <class F>
Json polynomial_to_json(const F& field, const DecodingPolynomial<F>& P) {
    Json j;
    j["m"] = P.m;
    j["field"] = field_to_json(FieldVariant(field));
    Json terms = Json::array();
    for (const auto& [a, c] : P.terms) {
        Json entry;
        entry["e"] = a;
        entry["c"] = element_to_json(field, c);
        terms.push_back(std::move(entry));
    }
    j["terms"] = std::move(terms);
    return j;
}

template <class F>
DecodingPolynomial<F> polynomial_from_json(const F& field, const Json& j) {
    DecodingPolynomial<F> P;
    P.m = j.at("m").get<std::uint64_t>();
    for (const auto& entry : j.at("terms")) {
        auto c = element_from_json(field, entry.at("c"));
        if (!field.is_zero(c)) P.terms.emplace(entry.at("e").get<std::uint64_t>(), std::move(c));
    }
    return P;
}

// Search results keep wall-clock time out of the canonical encoding so that
// identical runs are byte-identical.
template <class F>
Json search_result_to_json(const F& field, const SearchResult<F>& res) {
    Json j;
    switch (res.status) {
        case SearchStatus::found: j["status"] = "found"; break;
        case SearchStatus::exhausted: j["status"] = "exhausted"; break;
        case SearchStatus::aborted: j["status"] = "aborted"; break;
    }
    if (res.status == SearchStatus::found) {
        j["min_t"] = res.min_t;
        j["witness"] = spectrum_to_json(field, *res.witness);
    }
    Json refuted = Json::array();
    for (const auto& [t, count] : res.refuted_per_t) {
        Json entry;
        entry["t"] = t;
        entry["count"] = count;
        refuted.push_back(std::move(entry));
    }
    j["refuted"] = std::move(refuted);
    j["tests"] = res.feasibility_tests;
    if (res.progress) {
        j["progress"] = Json{{"t", res.progress->t}, {"last_rank", res.progress->last_rank}};
    }
    return j;
}

}  // namespace deltaspec
