#include "doctest.h"
#include "iwahori/whittaker.hpp"

#include <random>

using namespace iwahori;

namespace {

Series random_exact_series(std::mt19937_64& rng, int p, int lo, int hi) {
    std::uniform_int_distribution<int> expd(lo, hi), coeffd(0, p - 1), nd(0, 3);
    std::map<int, int> c;
    int k = nd(rng);
    for (int t = 0; t < k; ++t) c[expd(rng)] = coeffd(rng);
    return Series::from_coeffs(p, c);
}

SeriesMatrix random_unipotent(std::mt19937_64& rng, int n, int p) {
    SeriesMatrix u = SeriesMatrix::identity(n, p);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) u.at(i, j) = random_exact_series(rng, p, -2, 2);
    return u;
}

SeriesMatrix random_iwahori(std::mt19937_64& rng, int n, int p) {
    std::uniform_int_distribution<int> unitd(1, p - 1);
    SeriesMatrix k(n, p);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j)
                k.at(i, j) = Series::monomial(p, 0, unitd(rng)) +
                             random_exact_series(rng, p, 1, 3);
            else if (i < j)
                k.at(i, j) = random_exact_series(rng, p, 0, 3);
            else
                k.at(i, j) = random_exact_series(rng, p, 1, 3);
        }
    return k;
}

Cell random_cell(std::mt19937_64& rng, int n, int bound = 2) {
    std::uniform_int_distribution<int> dd(-bound, bound);
    Cell c;
    for (int i = 0; i < n; ++i) c.d.push_back(dd(rng));
    for (int i = 1; i <= n; ++i) c.sigma.push_back(i);
    std::shuffle(c.sigma.begin(), c.sigma.end(), rng);
    return c;
}

}  // namespace

TEST_CASE("inversion count and sign") {
    CHECK(inv_count({1, 2, 3}) == 0);
    CHECK(inv_count({2, 1, 3}) == 1);
    CHECK(inv_count({3, 1, 2}) == 2);
    CHECK(inv_count({3, 2, 1}) == 3);
    CHECK(perm_sign({3, 2, 1}) == -1);
    CHECK(perm_sign({3, 1, 2}) == 1);
    CHECK(perm_inverse({3, 1, 2}) == std::vector<int>{2, 3, 1});
}

TEST_CASE("orbit volumes") {
    CHECK(vol_sigma({2, 1}) == QLPoly::q_pow(1));
    CHECK(vol_sigma({3, 2, 1}) == QLPoly::q_pow(3));
    CHECK(vol_dominant({2, 0}) == QLPoly::q_pow(2));
    CHECK(vol_dominant({1, 0, -1}) == QLPoly::q_pow(4));
    CHECK(vol_dominant({0, 0}) == QLPoly::constant(1));
    CHECK_THROWS_AS(vol_dominant({0, 1}), std::invalid_argument);
}

TEST_CASE("modulus character on the diagonal") {
    CHECK(delta_lambda({1, 0}) == QLPoly::term(1, -1, 1));
    CHECK(delta_lambda({0, 0, 0}) == QLPoly::constant(1));
    // Not restricted to dominant vectors.
    CHECK(delta_lambda({0, 2}) == QLPoly::term(1, 2, 2));
}

TEST_CASE("support condition") {
    CHECK(cell_in_support({{1, 0}, {1, 2}}));
    CHECK_FALSE(cell_in_support({{0, 2}, {1, 2}}));
    // The antidiagonal relaxes the wall by one step.
    CHECK(cell_in_support({{0, 1}, {2, 1}}));
    CHECK_FALSE(cell_in_support({{0, 2}, {2, 1}}));
}

TEST_CASE("closed formula on diagonal cells") {
    std::vector<int> id{1, 2};
    CHECK(whittaker_formula({{1, 0}, id}) == QLPoly::term(1, -1, 1));
    CHECK(whittaker_formula({{0, 2}, id}).is_zero());
    CHECK(whittaker_formula({{0, 0}, id}) == QLPoly::constant(1));
    // Dominant diagonal cells carry exactly the modulus character value.
    for (auto d : std::vector<std::vector<int>>{{0, 0}, {1, 0}, {2, 0}, {2, 1, 0},
                                                {1, 0, -1}, {0, 0, 0}}) {
        std::vector<int> idn;
        for (size_t i = 1; i <= d.size(); ++i) idn.push_back(static_cast<int>(i));
        CHECK(whittaker_formula({d, idn}) == delta_lambda(d));
    }
}

TEST_CASE("closed formula on antidiagonal cells carries the sign") {
    std::vector<int> tau{2, 1};
    CHECK(whittaker_formula({{0, 0}, tau}) == QLPoly::term(-1, -1, 0));
    // -q^{d2 - d1 - 1} lambda^{d1 + d2} whenever d1 >= d2 - 1.
    for (int d1 = -2; d1 <= 2; ++d1)
        for (int d2 = -2; d2 <= 2; ++d2) {
            QLPoly got = whittaker_formula({{d1, d2}, tau});
            if (d1 >= d2 - 1)
                CHECK(got == QLPoly::term(-1, d2 - d1 - 1, d1 + d2));
            else
                CHECK(got.is_zero());
        }
}

TEST_CASE("evaluation at a bare cell matrix specializes the formula") {
    std::mt19937_64 rng(41);
    RunConfig cfg;
    for (int n : {2, 3}) {
        cfg.n = n;
        for (int p : {2, 3}) {
            cfg.p = p;
            for (int it = 0; it < 20; ++it) {
                Cell c = random_cell(rng, n);
                CHECK(whittaker_eval(cell_matrix(c, p), cfg) ==
                      specialize(whittaker_formula(c), p));
            }
        }
    }
}

TEST_CASE("left unipotent translation twists by the additive character") {
    RunConfig cfg;
    int p = 3;
    // u has residue 1 in the (1,2) slot.
    SeriesMatrix u = SeriesMatrix::identity(2, p);
    u.at(1, 2) = Series::monomial(p, -1);
    Cell c{{1, 0}, {1, 2}};
    CycloScalar lhs = whittaker_eval(u * cell_matrix(c, p), cfg);
    CycloScalar rhs = psi_char(p, 1) * whittaker_eval(cell_matrix(c, p), cfg);
    CHECK(lhs == rhs);
    CHECK(lhs != whittaker_eval(cell_matrix(c, p), cfg));  // the twist is nontrivial
}

TEST_CASE("two-sided invariance with character twist") {
    std::mt19937_64 rng(42);
    RunConfig cfg;
    for (int n : {2, 3}) {
        cfg.n = n;
        for (int p : {2, 3}) {
            cfg.p = p;
            for (int it = 0; it < 20; ++it) {
                Cell c = random_cell(rng, n);
                SeriesMatrix g = cell_matrix(c, p);
                SeriesMatrix u = random_unipotent(rng, n, p);
                SeriesMatrix k = random_iwahori(rng, n, p);
                CycloScalar lhs = whittaker_eval(u * g * k, cfg);
                CycloScalar rhs =
                    psi_char(p, residue_character(u)) * whittaker_eval(g, cfg);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("precision exhaustion surfaces after the retry budget") {
    RunConfig cfg;
    cfg.retries = 2;
    SeriesMatrix g(2, 3);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) g.at(i, j) = Series::from_coeffs(3, {}, -2);
    CHECK_THROWS_AS(whittaker_eval(g, cfg), insufficient_precision);
}
