#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "deltaspec/constructions.hpp"
#include "deltaspec/fourier.hpp"

using namespace deltaspec;

namespace {

std::vector<std::vector<std::uint32_t>> grid(std::uint64_t cap) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    std::function<void(std::uint32_t, std::uint64_t)> rec = [&](std::uint32_t min_m,
                                                                std::uint64_t order) {
        if (!cur.empty()) out.push_back(cur);
        for (std::uint32_t m = min_m; m <= 5 && order * m <= cap; ++m) {
            cur.push_back(m);
            rec(m, order * m);
            cur.pop_back();
        }
    };
    rec(2, 1);
    return out;
}

template <class F>
DenseFunction<F> random_function(const F& field, const GroupSpec& spec, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> val(-3, 3);
    DenseFunction<F> f{spec, {}};
    for (std::uint64_t i = 0; i < spec.order(); ++i) f.values.push_back(field.from_int(val(rng)));
    return f;
}

template <class F>
bool dense_equal(const F& field, const DenseFunction<F>& a, const DenseFunction<F>& b) {
    if (a.values.size() != b.values.size()) return false;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (!field.eq(a.values[i], b.values[i])) return false;
    return true;
}

}  // namespace

TEST_SUITE("fourier") {

TEST_CASE("character evaluation") {
    auto f7 = PrimeField::make(6);
    GroupSpec s23({2, 3});
    // a = 0 gives the trivial character.
    for (std::uint64_t i = 0; i < s23.order(); ++i)
        CHECK(character_eval(f7, s23, s23.zero(), s23.element_of(i)) == 1);
    // omega_3 = 2 in F_7.
    CHECK(character_eval(f7, GroupSpec({3}), {1}, {1}) == 2);
    CHECK(character_eval(f7, s23, {1, 2}, {1, 1}) == 3);  // 6 * 4 = 24 = 3 mod 7
}

TEST_CASE("forward transform on basic inputs") {
    auto f7 = PrimeField::make(6);
    GroupSpec s23({2, 3});

    DenseFunction<PrimeField> ones{s23, std::vector<PrimeField::Element>(6, 1)};
    auto s = forward(f7, ones);
    CHECK(s.sparsity() == 1);
    CHECK(s.coeffs.at(s23.zero()) == 1);

    // f = psi_a has spectrum {a -> 1}.
    Coords a{1, 2};
    DenseFunction<PrimeField> chi{s23, {}};
    for (std::uint64_t i = 0; i < 6; ++i)
        chi.values.push_back(character_eval(f7, s23, a, s23.element_of(i)));
    auto sc = forward(f7, chi);
    CHECK(sc.sparsity() == 1);
    CHECK(sc.coeffs.at(a) == 1);

    // Indicator of 0 on Z_2 over F_3: both coefficients 1/2 = 2.
    auto f3 = PrimeField::with_prime(3, 2);
    GroupSpec s2({2});
    DenseFunction<PrimeField> ind{s2, {1, 0}};
    auto si = forward(f3, ind);
    CHECK(si.coeffs.at({0}) == 2);
    CHECK(si.coeffs.at({1}) == 2);
}

TEST_CASE("total delta") {
    auto f7 = PrimeField::make(6);
    GroupSpec s3({3});
    auto td = total_delta(f7, s3);
    CHECK(td.sparsity() == 3);
    for (const auto& [a, c] : td.coeffs) CHECK(c == 5);  // 1/3 = 5 mod 7

    auto f3 = PrimeField::with_prime(3, 2);
    auto td2 = total_delta(f3, GroupSpec({2}));
    for (const auto& [a, c] : td2.coeffs) CHECK(c == 2);  // 1/2 = 2 mod 3

    auto dense = inverse(f7, td);
    CHECK(dense.values[0] == 1);
    CHECK(dense.values[1] == 0);
    CHECK(dense.values[2] == 0);

    // char(F) | |G| is rejected at pairing.
    CHECK_THROWS_AS(total_delta(PrimeField::with_prime(3, 2), GroupSpec({3})),
                    PreconditionError);
}

TEST_CASE("round trip inverse(forward(f)) = f over the grid, both exact backends") {
    std::mt19937_64 rng(7);
    for (const auto& moduli : grid(120)) {
        GroupSpec spec(moduli);
        auto fp = PrimeField::make(spec.exponent());
        auto cf = CyclotomicField::make(spec.exponent());
        for (int k = 0; k < 2; ++k) {
            auto f = random_function(fp, spec, rng);
            CHECK(dense_equal(fp, inverse(fp, forward(fp, f)), f));
            auto g = random_function(cf, spec, rng);
            CHECK(dense_equal(cf, inverse(cf, forward(cf, g)), g));
        }
    }
}

TEST_CASE("forward(inverse(s)) = s on sparse spectra") {
    auto fp = PrimeField::make(12);
    GroupSpec spec({3, 4});
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> pick(0, spec.order() - 1);
    std::uniform_int_distribution<int> val(1, 6);
    for (int k = 0; k < 10; ++k) {
        Spectrum<PrimeField> s{spec, {}};
        for (int j = 0; j < 3; ++j)
            s.coeffs[spec.element_of(pick(rng))] = static_cast<std::uint64_t>(val(rng));
        auto back = forward(fp, inverse(fp, s));
        CHECK(back.coeffs == s.coeffs);
    }
}

TEST_CASE("convolution support containment and product sparsity bound") {
    auto cf = CyclotomicField::make(5);
    GroupSpec spec({5, 5});
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::uint64_t> pick(0, spec.order() - 1);
    for (int k = 0; k < 8; ++k) {
        Spectrum<CyclotomicField> sf{spec, {}}, sg{spec, {}};
        while (sf.coeffs.size() < 3) sf.coeffs[spec.element_of(pick(rng))] = cf.from_int(2);
        while (sg.coeffs.size() < 3) sg.coeffs[spec.element_of(pick(rng))] = cf.from_int(-1);
        auto f = inverse(cf, sf);
        auto g = inverse(cf, sg);
        auto h = forward(cf, pointwise_mul(cf, f, g));
        CHECK(h.sparsity() <= sf.sparsity() * sg.sparsity());
        auto allowed = sumset(spec, sf.support(), sg.support());
        std::set<std::uint64_t> allowed_idx;
        for (const auto& a : allowed) allowed_idx.insert(spec.index_of(a));
        for (const auto& [a, c] : h.coeffs) CHECK(allowed_idx.count(spec.index_of(a)) == 1);
    }
}

TEST_CASE("pointwise multiplication identities") {
    auto fp = PrimeField::make(6);
    GroupSpec spec({2, 3});
    std::mt19937_64 rng(5);
    auto f = random_function(fp, spec, rng);
    DenseFunction<PrimeField> ones{spec, std::vector<PrimeField::Element>(6, 1)};
    DenseFunction<PrimeField> zeros{spec, std::vector<PrimeField::Element>(6, 0)};
    CHECK(dense_equal(fp, pointwise_mul(fp, f, ones), f));
    CHECK(dense_equal(fp, pointwise_mul(fp, f, zeros), zeros));
    CHECK_THROWS_AS(pointwise_mul(fp, f, DenseFunction<PrimeField>{GroupSpec({6}),
                                                                   std::vector<PrimeField::Element>(
                                                                       6, 1)}),
                    PreconditionError);
}

TEST_CASE("is_delta_on") {
    auto fp = PrimeField::make(6);
    GroupSpec spec({2, 3});
    DenseFunction<PrimeField> ind{spec, {1, 0, 0, 0, 0, 0}};
    DenseFunction<PrimeField> ones{spec, std::vector<PrimeField::Element>(6, 1)};
    for (auto kind : {PointSetKind::hypercube, PointSetKind::full}) {
        CHECK(is_delta_on(fp, ind, point_set(spec, kind)));
        CHECK(!is_delta_on(fp, ones, point_set(spec, kind)));
    }
}

TEST_CASE("sparse delta evaluation agrees with the dense path") {
    auto fp = PrimeField::make(4);
    auto s = single_block(fp, 4, 2);
    auto hyp = point_set(s.spec, PointSetKind::hypercube);
    CHECK(is_delta_on_support(fp, s, hyp) == is_delta_on(fp, inverse(fp, s), hyp));
    CHECK(is_delta_on_support(fp, s, hyp));

    // A non-delta spectrum fails both ways.
    Spectrum<PrimeField> constant{s.spec, {}};
    constant.coeffs[s.spec.zero()] = 1;
    CHECK(!is_delta_on_support(fp, constant, hyp));
    CHECK(!is_delta_on(fp, inverse(fp, constant), hyp));

    // Large group, small B: only the sparse path is practical.
    auto f9 = PrimeField::make(9);
    auto big = single_block(f9, 9, 6);
    CHECK(is_delta_on_support(f9, big,
                              point_set(big.spec, PointSetKind::hypercube)));
}

TEST_CASE("aux_g product with a hypercube delta has full spectrum") {
    auto fp = PrimeField::make(4);
    auto s = single_block(fp, 4, 2);
    auto f = inverse(fp, s);
    auto [g, sg] = aux_g(fp, f.spec);
    auto h = forward(fp, pointwise_mul(fp, f, g));
    CHECK(h.sparsity() == f.spec.order());
    auto total = sumset(f.spec, s.support(), sg.support());
    CHECK(total.size() == f.spec.order());
}

TEST_CASE("delta identity check") {
    auto fp = PrimeField::make(4);
    auto s = single_block(fp, 4, 2);
    CHECK(delta_identity_check(fp, s, 50, 0));

    // The constant-1 function is not a delta; some random assignment fails.
    GroupSpec spec({4, 4});
    Spectrum<PrimeField> constant{spec, {}};
    constant.coeffs[spec.zero()] = 1;
    CHECK(!delta_identity_check(fp, constant, 50, 0));

    auto cf = CyclotomicField::make(3);
    auto s3 = single_block(cf, 3, 2);
    CHECK(delta_identity_check(cf, s3, 25, 1));
}

}  // TEST_SUITE
