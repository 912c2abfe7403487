#include <doctest.h>

#include <random>

#include "deltaspec/linalg.hpp"

using namespace deltaspec;

namespace {

template <class F>
void check_substitution(const F& field, const Matrix<F>& M,
                        const std::vector<typename F::Element>& rhs,
                        const std::vector<typename F::Element>& x) {
    for (std::size_t i = 0; i < M.rows; ++i) {
        auto acc = field.zero();
        for (std::size_t j = 0; j < M.cols; ++j)
            acc = field.add(acc, field.mul(M.at(i, j), x[j]));
        CHECK(field.eq(acc, rhs[i]));
    }
}

template <class F>
void random_solve_roundtrip(const F& field, std::mt19937_64& rng, int instances) {
    std::uniform_int_distribution<int> dim(1, 6), val(-4, 4);
    for (int k = 0; k < instances; ++k) {
        const std::size_t rows = dim(rng), cols = dim(rng);
        Matrix<F> M(rows, cols, field.zero());
        for (auto& v : M.a) v = field.from_int(val(rng));
        std::vector<typename F::Element> x0;
        for (std::size_t j = 0; j < cols; ++j) x0.push_back(field.from_int(val(rng)));
        std::vector<typename F::Element> rhs(rows, field.zero());
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                rhs[i] = field.add(rhs[i], field.mul(M.at(i, j), x0[j]));
        auto res = solve_linear(field, M, rhs);
        REQUIRE(res.solution.has_value());  // consistent by construction
        CHECK(res.rank == res.rank_aug);
        check_substitution(field, M, rhs, *res.solution);
    }
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("identity system returns rhs") {
    auto fp = PrimeField::make(6);
    Matrix<PrimeField> I(3, 3, fp.zero());
    for (int i = 0; i < 3; ++i) I.at(i, i) = fp.one();
    std::vector<PrimeField::Element> rhs{2, 5, 1};
    auto res = solve_linear(fp, I, rhs);
    REQUIRE(res.solution.has_value());
    CHECK(*res.solution == rhs);
    CHECK(res.rank == 3);
}

TEST_CASE("contradictory equations report rank gap") {
    auto fp = PrimeField::make(6);
    Matrix<PrimeField> M(2, 1, fp.one());
    std::vector<PrimeField::Element> rhs{1, 0};
    auto res = solve_linear(fp, M, rhs);
    CHECK(!res.solution.has_value());
    CHECK(res.rank == 1);
    CHECK(res.rank_aug == 2);
}

TEST_CASE("dimension mismatch") {
    auto fp = PrimeField::make(2);
    Matrix<PrimeField> M(2, 2, fp.zero());
    CHECK_THROWS_AS(solve_linear(fp, M, {1}), PreconditionError);
}

TEST_CASE("random consistent systems solve exactly per backend") {
    std::mt19937_64 rng(99);
    random_solve_roundtrip(PrimeField::make(6), rng, 60);
    random_solve_roundtrip(CyclotomicField::make(6), rng, 40);
    random_solve_roundtrip(CyclotomicField::make(12), rng, 20);
    random_solve_roundtrip(ComplexField::make(6), rng, 40);
}

TEST_CASE("character-value system on the Boolean square, feasible side") {
    // Columns are the characters (0,0),(1,1),(2,2) of Z_3^2 evaluated on the
    // four Boolean points; the single-block delta solves it.
    auto cf = CyclotomicField::make(3);
    auto w = cf.zeta();
    Matrix<CyclotomicField> M(4, 3, cf.zero());
    const std::array<std::pair<int, int>, 4> pts{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
            M.at(i, j) = cf.pow(w, std::uint64_t(j) * (pts[i].first + pts[i].second));
    std::vector<CyclotomicField::Element> rhs(4, cf.zero());
    rhs[0] = cf.one();
    auto res = solve_linear(cf, M, rhs);
    REQUIRE(res.solution.has_value());
    check_substitution(cf, M, rhs, *res.solution);
}

TEST_CASE("rank deficiency is detected") {
    auto cf = CyclotomicField::make(4);
    Matrix<CyclotomicField> M(3, 3, cf.zero());
    // Rows 0 and 2 identical.
    for (int j = 0; j < 3; ++j) {
        M.at(0, j) = cf.from_int(j + 1);
        M.at(1, j) = cf.from_int(2 * j + 1);
        M.at(2, j) = cf.from_int(j + 1);
    }
    std::vector<CyclotomicField::Element> rhs{cf.one(), cf.one(), cf.zero()};
    auto res = solve_linear(cf, M, rhs);
    CHECK(res.rank == 2);
    CHECK(res.rank_aug == 3);
    CHECK(!res.solution.has_value());
}

TEST_CASE("complex tolerance ranks flag near-threshold decisions") {
    auto cx = ComplexField::make(4, 1e-9);
    Matrix<ComplexField> M(2, 2, cx.zero());
    M.at(0, 0) = {1.0, 0.0};
    M.at(0, 1) = {1.0, 0.0};
    M.at(1, 0) = {1.0, 0.0};
    M.at(1, 1) = {1.0 + 3e-9, 0.0};  // within the warning band of the tolerance
    std::vector<ComplexField::Element> rhs{{1.0, 0.0}, {1.0, 0.0}};
    auto res = solve_linear(cx, M, rhs);
    CHECK(res.tolerance_warning);
}

}  // TEST_SUITE
