#include "doctest.h"
#include "fakeplane/intlat.hpp"

#include <random>

using namespace fakeplane;

namespace {

BigInt cofactor_det(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a(0, 0);
    BigInt total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j) == 0) continue;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) cols.push_back(k);
        BigInt minor = cofactor_det(a.select_rows(rows).select_columns(cols));
        total += (j % 2 == 0 ? 1 : -1) * a(0, j) * minor;
    }
    return total;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

bool is_diagonal(const IntMatrix& d) {
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (i != j && d(i, j) != 0) return false;
    return true;
}

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

}  // namespace

TEST_CASE("smith normal form of the Y333 matrix has invariant factors 1, 1, 9") {
    IntMatrix a{{2, 1, 0}, {0, 2, 1}, {1, 0, 2}};
    auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.diagonal() == std::vector<BigInt>{1, 1, 9});
}

TEST_CASE("smith normal form of the identity is the identity") {
    auto s = smith_normal_form(IntMatrix::identity(4));
    CHECK(s.D == IntMatrix::identity(4));
}

TEST_CASE("smith normal form of diag(2,2) is unchanged") {
    auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 2}});
    CHECK(s.diagonal() == std::vector<BigInt>{2, 2});
}

TEST_CASE("smith normal form fixes divisibility of diag(2,3)") {
    auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
    CHECK(s.diagonal() == std::vector<BigInt>{1, 6});
}

TEST_CASE("cokernel of the Y244 matrix is Z/8") {
    IntMatrix a{{1, 0, -1, -1}, {0, 1, -1, -1}, {0, 1, 2, 0}, {1, 0, 0, 2}};
    auto c = cokernel_invariants(a);
    CHECK(c.free_rank == 0);
    CHECK(c.torsion == std::vector<BigInt>{8});
    CHECK(determinant(a) == 8);
}

TEST_CASE("cokernel of the 1x1 zero matrix is free of rank one") {
    auto c = cokernel_invariants(IntMatrix{{0}});
    CHECK(c.free_rank == 1);
    CHECK(c.torsion.empty());
}

TEST_CASE("cokernel of [[3]] is Z/3") {
    auto c = cokernel_invariants(IntMatrix{{3}});
    CHECK(c.free_rank == 0);
    CHECK(c.torsion == std::vector<BigInt>{3});
}

TEST_CASE("kernel of the degree row of four lines contains the differences of lines") {
    IntMatrix deg{{1, 1, 1, 1}};
    IntMatrix k = kernel_basis(deg);
    REQUIRE(k.rows() == 4);
    CHECK(k.cols() == 3);
    CHECK((deg * k).is_zero());
    for (int i = 1; i <= 3; ++i) {
        IntMatrix v(4, 1);
        v(0, 0) = -1;
        v(static_cast<std::size_t>(i), 0) = 1;
        CHECK(solve_exact(k, v).has_value());
    }
}

TEST_CASE("kernel of the identity is empty") {
    CHECK(kernel_basis(IntMatrix::identity(3)).cols() == 0);
}

TEST_CASE("kernel of [[2,-1]] is spanned by (1,2) and is saturated") {
    IntMatrix a{{2, -1}};
    IntMatrix k = kernel_basis(a);
    REQUIRE(k.cols() == 1);
    CHECK(k.column(0) == make_vector({1, 2}));
    for (int x = -6; x <= 6; ++x)
        for (int y = -6; y <= 6; ++y) {
            if (2 * x - y != 0) continue;
            // every integer kernel vector is an integer multiple of the basis vector
            CHECK(y == 2 * x);
        }
}

TEST_CASE("determinant agrees with cofactor expansion and handles huge entries") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
        IntMatrix a = random_matrix(rng, n, n, -5, 5);
        CHECK(determinant(a) == cofactor_det(a));
    }
    BigInt big = BigInt(1) << 200;
    IntMatrix h(2, 2, {big, BigInt(1), BigInt(1), big});
    CHECK(determinant(h) == big * big - 1);
}

TEST_CASE("smith normal form property suite on random matrices") {
    std::mt19937 rng(20240501);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = static_cast<std::size_t>(dim(rng));
        std::size_t c = static_cast<std::size_t>(dim(rng));
        IntMatrix a = random_matrix(rng, r, c, -5, 5);
        auto s = smith_normal_form(a);
        REQUIRE(s.U * a * s.V == s.D);
        CHECK(abs_big(cofactor_det(s.U)) == 1);
        CHECK(abs_big(cofactor_det(s.V)) == 1);
        CHECK(is_diagonal(s.D));
        auto d = s.diagonal();
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(d[i] >= 0);
            if (i + 1 < d.size()) {
                if (d[i] == 0) CHECK(d[i + 1] == 0);
                else CHECK(d[i + 1] % d[i] == 0);
            }
        }
        if (r == c) {
            BigInt det = cofactor_det(a);
            if (det != 0) {
                BigInt prod = 1;
                for (const auto& t : cokernel_invariants(a).torsion) prod *= t;
                CHECK(prod == abs_big(det));
            }
        }
    }
}

TEST_CASE("kernel basis property suite: annihilated and saturated") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t r = static_cast<std::size_t>(dim(rng));
        std::size_t c = static_cast<std::size_t>(dim(rng)) + 1;
        IntMatrix a = random_matrix(rng, r, c, -3, 3);
        IntMatrix k = kernel_basis(a);
        CHECK((a * k).is_zero());
        CHECK(k.cols() + rank(a) == c);
        if (k.cols() == 0) continue;
        for (const auto& d : smith_normal_form(k).diagonal()) CHECK(d == 1);
        // random kernel vectors, scaled down when possible, stay inside the spanned lattice
        for (int s = 0; s < 5; ++s) {
            IntVector combo(k.cols());
            for (auto& x : combo) x = coef(rng);
            IntVector v = k * combo;
            IntMatrix aug = k.hstack(IntMatrix::from_columns({v}));
            CHECK(rank(aug) == k.cols());
            for (const auto& d : smith_normal_form(aug).diagonal())
                if (d != 0) CHECK(d == 1);
        }
    }
}

TEST_CASE("kernel of a small matrix contains every brute-force kernel vector") {
    IntMatrix a{{2, 4, -2}, {1, 2, 3}};
    IntMatrix k = kernel_basis(a);
    for (int x = -4; x <= 4; ++x)
        for (int y = -4; y <= 4; ++y)
            for (int z = -4; z <= 4; ++z) {
                IntVector v = make_vector({x, y, z});
                if (!is_zero(a * v)) continue;
                CHECK(solve_exact(k, IntMatrix::from_columns({v})).has_value());
            }
}

TEST_CASE("solve_exact, left inverse and unimodular inverse") {
    IntMatrix a{{2, 1}, {1, 1}};
    IntMatrix inv = unimodular_inverse(a);
    CHECK(a * inv == IntMatrix::identity(2));
    IntMatrix k{{1, 0}, {2, 1}, {3, 1}};
    IntMatrix l = left_inverse(k);
    CHECK(l * k == IntMatrix::identity(2));
    CHECK_FALSE(solve_exact(IntMatrix{{2}}, IntMatrix{{3}}).has_value());
    CHECK(solve_exact(IntMatrix{{2}}, IntMatrix{{4}})->operator()(0, 0) == 2);
}

TEST_CASE("hermite normal form and mod-2 rank") {
    IntMatrix h = hermite_normal_form(IntMatrix{{4, 6}, {2, 2}});
    CHECK(h == IntMatrix{{2, 0}, {0, 2}});
    CHECK(rank_mod2(IntMatrix{{1, 0, -1, -1}, {0, 1, -1, -1}, {0, 1, 2, 0}, {1, 0, 0, 2}}) < 4);
    CHECK(rank_mod2(IntMatrix{{2, 1, 0}, {0, 2, 1}, {1, 0, 2}}) == 3);
}
