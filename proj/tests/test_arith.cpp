#include <random>

#include "doctest.h"
#include "ostq/arith.hpp"

using namespace ostq;

namespace {

/* Independent oracle: plain trial division. */
bool trial_division_prime(unsigned long n) {
    if (n < 2)
        return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

integer_matrix from_rows(std::vector<std::vector<long>> rows) {
    integer_matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[0].size(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

/* Random unimodular matrix: product of elementary operations. */
integer_matrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
    integer_matrix u = integer_matrix::identity(n);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (int k = 0; k < 20; ++k) {
        std::size_t a = idx(rng), b = idx(rng);
        if (a != b)
            u.addmul_row(a, b, coef(rng));
    }
    return u;
}

}  // namespace

TEST_CASE("primality agrees with trial division") {
    for (unsigned long n = 0; n < 3000; ++n)
        CHECK(is_prime(bigint(n)) == trial_division_prime(n));
    /* spot checks around word boundaries */
    CHECK(is_prime(bigint("18446744073709551557"))); /* largest prime < 2^64 */
    CHECK(!is_prime(bigint("18446744073709551617")));
    CHECK(is_prime(bigint("170141183460469231731687303715884105727"))); /* 2^127-1 */
    CHECK(!is_prime(bigint("170141183460469231731687303715884105725")));
}

TEST_CASE("factor: spec examples") {
    CHECK(factor(1).factors.empty());
    auto f12 = factor(12);
    REQUIRE(f12.factors.size() == 2);
    CHECK(f12.factors[0] == std::pair<bigint, unsigned>(2, 2));
    CHECK(f12.factors[1] == std::pair<bigint, unsigned>(3, 1));
    /* 4027 is prime by trial division up to sqrt(4027) = 63 */
    CHECK(trial_division_prime(4027));
    auto f = factor(4027);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == std::pair<bigint, unsigned>(4027, 1));
}

TEST_CASE("factor: reconstruction on random inputs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(1, 1000000000L);
    for (int i = 0; i < 300; ++i) {
        bigint n = dist(rng);
        auto f = factor(n);
        CHECK(f.reconstruct() == n);
        bigint prev = 0;
        for (auto& [p, e] : f.factors) {
            CHECK(p > prev);
            CHECK(is_prime(p));
            prev = p;
        }
    }
    /* a 96-bit semiprime with two large factors */
    bigint a("39614081257132168796771975177"); /* prime near 2^95 */
    CHECK(is_prime(a));
    auto f2 = factor(bigint("1099511627791") * bigint("1099511627689"));
    CHECK(f2.factors.size() == 2);
}

TEST_CASE("kronecker: spec examples and multiplicativity") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> dist(-300, 300);
    for (int i = 0; i < 50; ++i)
        CHECK(kronecker(dist(rng), 1) == 1);
    CHECK(kronecker(12, 3) == 0);
    CHECK(kronecker(-23, 2) == 1); /* -23 = 1 mod 8 */
    /* complete multiplicativity in both arguments */
    for (int i = 0; i < 200; ++i) {
        bigint a = dist(rng), b = dist(rng), n = dist(rng), m = dist(rng);
        if ((a == 0 && b == 0) || (n == 0 && m == 0))
            continue;
        if (!(a * b == 0 && n * m == 0))
            CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
        if (!(n * m == 0 && a == 0))
            CHECK(kronecker(a, n * m) == kronecker(a, n) * kronecker(a, m));
    }
}

TEST_CASE("squarefree_kernel") {
    CHECK(squarefree_kernel(12) == std::pair<bigint, bigint>(3, 2));
    CHECK(squarefree_kernel(-4027) == std::pair<bigint, bigint>(-4027, 1));
    CHECK(squarefree_kernel(1) == std::pair<bigint, bigint>(1, 1));
    CHECK(squarefree_kernel(-8) == std::pair<bigint, bigint>(-2, 2));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> dist(1, 100000);
    for (int i = 0; i < 100; ++i) {
        bigint n = dist(rng);
        auto [sf, sq] = squarefree_kernel(n);
        CHECK(sf * sq * sq == n);
        for (auto& [p, e] : factor(sf).factors)
            CHECK(e == 1);
    }
}

TEST_CASE("hermite normal form: spec examples") {
    CHECK(hermite_normal_form(integer_matrix::identity(3)) == integer_matrix::identity(3));
    auto a = from_rows({{2, 1}, {0, 1}});
    CHECK(hermite_normal_form(a) == a); /* already canonical */
    CHECK(hermite_normal_form(from_rows({{0, 1}, {1, 0}})) == integer_matrix::identity(2));
    CHECK_THROWS_AS(hermite_normal_form(from_rows({{1, 1}, {2, 2}})), error);
}

TEST_CASE("hnf is a complete lattice invariant") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> ent(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + trial % 4;
        integer_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = ent(rng);
        if (determinant(m) == 0)
            continue;
        auto h = hermite_normal_form(m);
        CHECK(hermite_normal_form(h) == h); /* idempotent */
        /* same column span after a unimodular change of generators */
        auto u = random_unimodular(n, rng);
        CHECK(hermite_normal_form(m * u) == h);
        /* upper triangular, positive pivots, reduced rows */
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(h(i, i) > 0);
            for (std::size_t j = 0; j < i; ++j)
                CHECK(h(i, j) == 0);
            for (std::size_t j = i + 1; j < n; ++j) {
                CHECK(h(i, j) >= 0);
                CHECK(h(i, j) < h(i, i));
            }
        }
        CHECK(abs(determinant(m)) == determinant(h));
    }
}

TEST_CASE("smith normal form: spec examples") {
    auto s1 = smith_normal_form(integer_matrix::identity(2));
    CHECK(s1.invariant_factors == std::vector<bigint>{1, 1});
    auto s2 = smith_normal_form(from_rows({{2, 0}, {0, 3}}));
    CHECK(s2.invariant_factors == std::vector<bigint>{1, 6});
    auto s3 = smith_normal_form(integer_matrix(3, 2));
    CHECK(s3.invariant_factors.empty());
}

TEST_CASE("smith normal form: transforms and unimodular invariance") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ent(-12, 12);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t m = 2 + trial % 3, n = 2 + (trial / 3) % 3;
        integer_matrix a(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = ent(rng);
        auto s = smith_normal_form(a);
        CHECK(s.U * a * s.V == s.D);
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i) {
            CHECK(s.invariant_factors[i] > 0);
            CHECK(mpz_divisible_p(s.invariant_factors[i + 1].get_mpz_t(),
                                  s.invariant_factors[i].get_mpz_t()));
        }
        /* invariant under unimodular pre/post multiplication */
        auto p = random_unimodular(m, rng), q = random_unimodular(n, rng);
        CHECK(smith_normal_form(p * a * q).invariant_factors == s.invariant_factors);
    }
}

TEST_CASE("integer kernel and solver") {
    auto m = from_rows({{1, 2, 3}, {2, 4, 6}});
    auto k = integer_kernel(m);
    CHECK(k.cols() == 2);
    for (std::size_t j = 0; j < k.cols(); ++j) {
        bigint r0 = 0;
        for (std::size_t i = 0; i < 3; ++i)
            r0 += m(0, i) * k(i, j);
        CHECK(r0 == 0);
    }
    std::vector<bigint> x;
    CHECK(solve_integer(from_rows({{2, 0}, {0, 3}}), {4, 9}, x));
    CHECK(x == std::vector<bigint>{2, 3});
    CHECK(!solve_integer(from_rows({{2, 0}, {0, 3}}), {3, 9}, x));
}

TEST_CASE("abelian group presentation") {
    auto g = make_abelian_group({1, 1, 3, 9});
    CHECK(g.invariant_factors == std::vector<bigint>{3, 9});
    CHECK(g.order() == 27);
    CHECK(g.to_string() == "Z/3 x Z/9");
    CHECK(make_abelian_group({}).trivial());
    CHECK(make_abelian_group({1}).order() == 1);
    CHECK_THROWS_AS(make_abelian_group({4, 6}), error);
}
