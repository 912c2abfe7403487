#include "deltaspec/fixtures.hpp"

#include <random>

#include "deltaspec/json_io.hpp"

namespace deltaspec {

namespace {

// All moduli multisets (entries >= 2, nondecreasing) with order <= cap.
void enumerate_multisets(std::uint64_t cap, std::uint32_t min_m, std::uint64_t order,
                         std::vector<std::uint32_t>& cur,
                         std::vector<std::vector<std::uint32_t>>& out) {
    if (!cur.empty()) out.push_back(cur);
    for (std::uint32_t m = min_m; order * m <= cap; ++m) {
        cur.push_back(m);
        enumerate_multisets(cap, m, order * m, cur, out);
        cur.pop_back();
    }
}

template <class F>
Json run_search(const F& field, const GroupSpec& spec, PointSetKind kind, unsigned workers,
                std::uint64_t t_max = 0) {
    SearchProblem prob{.spec = spec, .B = point_set(spec, kind), .t_min = 1, .t_max = t_max};
    auto res = min_sparsity(field, prob, workers);
    return search_result_to_json(field, res);
}

Json mobius_trials(std::uint32_t m1, std::uint32_t m2, std::uint64_t trials, std::mt19937_64& rng) {
    CyclotomicField field = CyclotomicField::make(std::uint64_t(m1) * m2);
    const std::uint64_t e = field.e();
    std::uniform_int_distribution<std::uint32_t> pick_a(0, m1 - 1), pick_b(0, m2 - 1);
    std::uint64_t cases[4] = {0, 0, 0, 0};
    bool all_ok = true;
    for (std::uint64_t k = 0; k < trials; ++k) {
        std::array<CyclotomicField::Element, 3> alphas, betas;
        for (int i = 0; i < 3; ++i) {
            alphas[i] = field.zeta_power(std::uint64_t(pick_a(rng)) * (e / m1));
            betas[i] = field.zeta_power(std::uint64_t(pick_b(rng)) * (e / m2));
        }
        auto P = mobius_multilinear(field, m1, m2, alphas, betas);
        ++cases[P.case_id];
        all_ok = all_ok && P.origin_nonzero && P.gcd_ok;
    }
    Json j;
    j["m1"] = m1;
    j["m2"] = m2;
    j["trials"] = trials;
    j["all_ok"] = all_ok;
    j["cases"] = Json{{"1", cases[1]}, {"2", cases[2]}, {"3", cases[3]}};
    return j;
}

}  // namespace

std::string fixtures_run(std::uint64_t seed, unsigned workers) {
    Json out;
    out["seed"] = seed;

    // Bounds across the small grid.
    {
        std::vector<std::vector<std::uint32_t>> grid;
        std::vector<std::uint32_t> cur;
        enumerate_multisets(81, 2, 1, cur, grid);
        Json arr = Json::array();
        for (const auto& moduli : grid)
            arr.push_back(bound_report_to_json(lower_bounds(GroupSpec(moduli))));
        out["bounds"] = std::move(arr);
    }

    // Explicit constructions, re-verified through the inverse transform.
    {
        Json arr = Json::array();
        for (std::uint32_t m = 3; m <= 6; ++m) {
            for (std::uint32_t r = 1; r < m && r <= 3; ++r) {
                PrimeField fp = PrimeField::make(m);
                auto s = single_block(fp, m, r);
                Json entry;
                entry["m"] = m;
                entry["r"] = r;
                entry["sparsity"] = s.sparsity();
                entry["verified"] =
                    is_delta_on(fp, inverse(fp, s),
                                point_set(s.spec, PointSetKind::hypercube));
                entry["spectrum"] = spectrum_to_json(fp, s);
                arr.push_back(std::move(entry));
            }
        }
        out["single_block"] = std::move(arr);

        Json parr = Json::array();
        const std::vector<std::tuple<std::uint32_t, std::vector<std::vector<std::uint32_t>>>>
            cases = {{3, {{0, 1}, {2, 3}}}, {3, {{0, 1}, {2}}}, {4, {{0, 1, 2}}}, {5, {{0, 1}}}};
        for (const auto& [m, blocks] : cases) {
            PrimeField fp = PrimeField::make(m);
            auto s = partitioned(fp, m, blocks);
            Json entry;
            entry["m"] = m;
            entry["blocks"] = blocks;
            entry["sparsity"] = s.sparsity();
            entry["verified"] = is_delta_on(fp, inverse(fp, s),
                                            point_set(s.spec, PointSetKind::hypercube));
            parr.push_back(std::move(entry));
        }
        out["partitioned"] = std::move(parr);
    }

    // Searches over both exact backends; these exercise the parallel path.
    {
        Json arr = Json::array();
        auto add = [&](const char* name, Json j) {
            Json entry;
            entry["name"] = name;
            entry["result"] = std::move(j);
            arr.push_back(std::move(entry));
        };
        {
            GroupSpec s22({2, 2});
            add("Z2xZ2 hypercube fp",
                run_search(PrimeField::make(2), s22, PointSetKind::hypercube, workers));
            add("Z2xZ2 hypercube cyclo",
                run_search(CyclotomicField::make(2), s22, PointSetKind::hypercube, workers));
        }
        {
            GroupSpec s33({3, 3});
            add("Z3xZ3 hypercube cyclo",
                run_search(CyclotomicField::make(3), s33, PointSetKind::hypercube, workers));
            add("Z3xZ3 pm_cube cyclo",
                run_search(CyclotomicField::make(3), s33, PointSetKind::pm_cube, workers));
        }
        {
            GroupSpec s23({2, 3});
            add("Z2xZ3 hypercube cyclo",
                run_search(CyclotomicField::make(6), s23, PointSetKind::hypercube, workers));
        }
        {
            GroupSpec s222({2, 2, 2});
            add("Z2^3 hypercube fp",
                run_search(PrimeField::make(2), s222, PointSetKind::hypercube, workers));
        }
        out["searches"] = std::move(arr);
    }

    // Exact covering numbers.
    {
        Json arr = Json::array();
        for (const auto& moduli : std::vector<std::vector<std::uint32_t>>{
                 {2}, {3}, {2, 2}, {3, 3}, {2, 3}, {3, 3, 3}}) {
            GroupSpec spec(moduli);
            arr.push_back(covering_result_to_json(spec, covering_number_exact(spec)));
        }
        out["covering"] = std::move(arr);
    }

    // Decoding fixtures.
    {
        Json dec;
        Json canon = Json::array();
        for (std::uint64_t m : {6ull, 15ull, 30ull})
            canon.push_back(canonical_set_to_json(canonical_set(m)));
        dec["canonical"] = std::move(canon);

        Json triv = Json::array();
        for (std::uint64_t m : {6ull, 15ull}) {
            PrimeField fp = PrimeField::make(m);
            auto P = trivial_decoding(fp, m);
            Json entry;
            entry["m"] = m;
            entry["sparsity"] = P.sparsity();
            entry["verified"] = verify_decoding(fp, P, canonical_set(m));
            entry["poly"] = polynomial_to_json(fp, P);
            // Round trip through the CRT spectrum.
            auto spec2 = poly_to_delta(fp, P);
            auto back = delta_to_poly(fp, spec2, m);
            entry["round_trip"] = back.terms == P.terms;
            entry["delta_verified"] =
                is_delta_on(fp, inverse(fp, spec2),
                            point_set(spec2.spec, PointSetKind::hypercube));
            triv.push_back(std::move(entry));
        }
        dec["trivial"] = std::move(triv);

        {
            CyclotomicField cf = CyclotomicField::make(6);
            auto res = min_decoding_sparsity(cf, 6, 0, 100000000, workers);
            dec["min_sparsity_m6"] = search_result_to_json(cf, res);
        }
        out["decode"] = std::move(dec);
    }

    // Coprime rank-2 checks.
    {
        std::mt19937_64 rng(seed);
        Json mob = Json::array();
        mob.push_back(mobius_trials(2, 3, 40, rng));
        mob.push_back(mobius_trials(3, 5, 40, rng));
        out["mobius"] = std::move(mob);

        auto r2 = verify_r2_lower(2, 3);
        out["r2_lower_2_3"] = Json{{"verified", r2.verified}, {"subsets", r2.subsets_checked}};
    }

    // PIR parameter shapes.
    {
        Json arr = Json::array();
        arr.push_back(pir_report_to_json(pir_params(2, 1e6, 3)));
        arr.push_back(pir_report_to_json(pir_params(3, 1.8446744073709552e19, 4)));
        out["pir"] = std::move(arr);
    }

    return out.dump();
}

}  // namespace deltaspec
