#include "doctest.h"
#include "fakeplane/error.hpp"
#include "fakeplane/galois.hpp"

#include <functional>
#include <random>
#include <set>

using namespace fakeplane;

namespace {

IntMatrix swap2() { return IntMatrix{{0, 1}, {1, 0}}; }

// All involutive signed permutation matrices of rank n.
std::vector<IntMatrix> signed_involutions(std::size_t n) {
    std::vector<IntMatrix> out;
    std::vector<int> image(n, -1);
    std::vector<int> sign(n, 1);
    std::function<void()> rec = [&]() {
        std::size_t i = 0;
        while (i < n && image[i] != -1) ++i;
        if (i == n) {
            IntMatrix s(n, n);
            for (std::size_t k = 0; k < n; ++k) s(static_cast<std::size_t>(image[k]), k) = sign[k];
            out.push_back(s);
            return;
        }
        for (int sg : {1, -1}) {
            image[i] = static_cast<int>(i);
            sign[i] = sg;
            rec();
            image[i] = -1;
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (image[j] != -1) continue;
            for (int sg : {1, -1}) {
                image[i] = static_cast<int>(j);
                image[j] = static_cast<int>(i);
                sign[i] = sign[j] = sg;
                rec();
                image[i] = image[j] = -1;
            }
        }
    };
    rec();
    return out;
}

std::vector<long long> to_small(const IntVector& v) {
    std::vector<long long> out;
    for (const auto& x : v) out.push_back(static_cast<long long>(x));
    return out;
}

void box_vectors(std::size_t n, int lo, int hi, const std::function<void(const IntVector&)>& f) {
    IntVector v(n, BigInt(lo));
    for (;;) {
        f(v);
        std::size_t i = 0;
        while (i < n && v[i] == hi) v[i++] = lo;
        if (i == n) return;
        v[i] += 1;
    }
}

// Order of Ker(id - s) / Im(id + s) by exhaustive coset enumeration over small boxes.
std::size_t coset_count(const IntMatrix& s) {
    const std::size_t n = s.rows();
    IntMatrix id = IntMatrix::identity(n);
    IntMatrix plus = id + s, minus = id - s;
    std::set<std::vector<long long>> image;
    box_vectors(n, -2, 2, [&](const IntVector& x) { image.insert(to_small(plus * x)); });
    std::vector<IntVector> cocycles;
    box_vectors(n, -1, 1, [&](const IntVector& v) {
        if (is_zero(minus * v)) cocycles.push_back(v);
    });
    std::vector<IntVector> reps;
    for (const auto& v : cocycles) {
        bool known = false;
        for (const auto& r : reps)
            if (image.count(to_small(sub(v, r)))) {
                known = true;
                break;
            }
        if (!known) reps.push_back(v);
    }
    return reps.size();
}

}  // namespace

TEST_CASE("h_even examples") {
    CHECK(h_even(GModule::trivial(1)).dim == 1);
    CHECK(h_even(GModule{swap2()}).dim == 0);
    IntMatrix s{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
    HEven h = h_even(GModule{s});
    CHECK(h.dim == 1);
    REQUIRE(h.representatives.size() == 1);
    CHECK(is_zero((IntMatrix::identity(3) - s) * h.representatives[0]));
    CHECK(coset_count(s) == 2);
}

TEST_CASE("h_odd examples") {
    CHECK(h_odd(GModule::trivial(1)) == 0);
    CHECK(h_odd(GModule{swap2()}) == 0);
    CHECK(h_odd(GModule{IntMatrix{{-1}}}) == 1);
}

TEST_CASE("cohomology of permutation and signed permutation modules, exhaustively") {
    for (std::size_t n = 1; n <= 5; ++n) {
        for (const IntMatrix& s : signed_involutions(n)) {
            std::size_t fixed = 0, flipped = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (s(i, i) == 1) ++fixed;
                if (s(i, i) == -1) ++flipped;
            }
            HEven h = h_even(GModule{s});
            CHECK(h.dim == fixed);
            CHECK(h_odd(GModule{s}) == flipped);
            CHECK((std::size_t{1} << h.dim) == coset_count(s));
        }
    }
}

TEST_CASE("permutation modules of rank six: h_even counts fixed vectors, h_odd vanishes") {
    for (const IntMatrix& s : signed_involutions(6)) {
        bool unsigned_perm = true;
        for (const auto& x : s.entries())
            if (x < 0) unsigned_perm = false;
        if (!unsigned_perm) continue;
        std::size_t fixed = 0;
        for (std::size_t i = 0; i < 6; ++i)
            if (s(i, i) == 1) ++fixed;
        CHECK(h_even(GModule{s}).dim == fixed);
        CHECK(h_odd(GModule{s}) == 0);
    }
}

TEST_CASE("cohomology of the regular representation in a non-permutation basis vanishes") {
    GModule m{IntMatrix{{1, 1}, {0, -1}}};
    CHECK(h_even(m).dim == 0);
    CHECK(h_odd(m) == 0);
}

TEST_CASE("h_even is additive over direct sums") {
    auto r2 = signed_involutions(2);
    auto r3 = signed_involutions(3);
    GModule odd_basis{IntMatrix{{1, 1}, {0, -1}}};
    for (const auto& a : r2)
        for (const auto& b : r3) {
            GModule ma{a}, mb{b};
            CHECK(h_even(direct_sum(ma, mb)).dim == h_even(ma).dim + h_even(mb).dim);
            CHECK(h_odd(direct_sum(ma, mb)) == h_odd(ma) + h_odd(mb));
            CHECK(h_even(direct_sum(odd_basis, mb)).dim == h_even(mb).dim);
        }
}

TEST_CASE("induced map with trivial involutions is reduction mod 2") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t r = 1 + static_cast<std::size_t>(trial % 4);
        std::size_t c = 1 + static_cast<std::size_t>((trial / 4) % 4);
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = coef(rng);
        InducedMap h = induced_h_even(GMap{GModule::trivial(c), GModule::trivial(r), m});
        CHECK(h.matrix == m.mod(2));
        CHECK(h.is_surjective == (rank_mod2(m) == r));
    }
}

TEST_CASE("Y244 real form: H2 of the arrangement map is not an isomorphism") {
    IntMatrix a{{1, 0, -1, -1}, {0, 1, -1, -1}, {0, 1, 2, 0}, {1, 0, 0, 2}};
    InducedMap h = induced_h_even(GMap{GModule::trivial(4), GModule::trivial(4), a});
    CHECK_FALSE(h.is_iso);
}

TEST_CASE("zero map between swap modules induces an isomorphism of trivial groups") {
    InducedMap h = induced_h_even(GMap{GModule{swap2()}, GModule{swap2()}, IntMatrix(2, 2)});
    CHECK(h.matrix.rows() == 0);
    CHECK(h.matrix.cols() == 0);
    CHECK(h.is_iso);
}

TEST_CASE("a matrix with conjugate pairs of columns can induce an H2 isomorphism without being unimodular") {
    IntMatrix n{{-1, -1, -1, -1, -1}, {1, 2, 0, 0, 0}, {1, 0, 3, 0, 0}, {1, 0, 0, 2, 0}, {1, 0, 0, 0, 2}};
    IntMatrix s = IntMatrix::identity(5);
    s(3, 3) = 0;
    s(4, 4) = 0;
    s(3, 4) = 1;
    s(4, 3) = 1;
    InducedMap h = induced_h_even(GMap{GModule{s}, GModule{s}, n});
    CHECK(h.is_iso);
    BigInt det = determinant(n);
    CHECK(det != 1);
    CHECK(det != -1);
    CHECK(det != 0);
}

TEST_CASE("non-equivariant maps are rejected") {
    try {
        induced_h_even(GMap{GModule{swap2()}, GModule::trivial(2), IntMatrix::identity(2)});
        FAIL("expected NonEquivariant");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonEquivariant);
    }
}

TEST_CASE("restriction to a stable sublattice") {
    GModule m{IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}};
    IntMatrix k = kernel_basis(IntMatrix{{1, 1, 1}});
    GModule r = restrict_module(m, k);
    CHECK(r.rank() == 2);
    CHECK(r.sigma * r.sigma == IntMatrix::identity(2));
    CHECK(m.sigma * k == k * r.sigma);
}
