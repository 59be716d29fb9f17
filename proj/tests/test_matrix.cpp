#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icrypt/matrix.hpp"

using namespace icrypt;

namespace {

Matrix make2(RingPtr r, long a, long b, long c, long d) {
    Matrix m(r, 2);
    m.at(0, 0) = r->from_int(a);
    m.at(0, 1) = r->from_int(b);
    m.at(1, 0) = r->from_int(c);
    m.at(1, 1) = r->from_int(d);
    return m;
}

}  // namespace

TEST_CASE("mat_inv examples") {
    auto z = std::make_shared<QuadRingCtx>(0);
    Matrix m = make2(z, 1, 1, 0, 1);
    Matrix mi = mat_inv(m);
    CHECK(mi == make2(z, 1, -1, 0, 1));
    CHECK(mat_mul(m, mi).is_identity());

    Matrix id = Matrix::identity(z, 3);
    CHECK(mat_inv(id) == id);

    CHECK_THROWS_AS(mat_inv(make2(z, 2, 4, 1, 2)), SingularMatrixError);
}

TEST_CASE("char_poly examples") {
    auto f = std::make_shared<PrimeFieldCtx>(31);
    {
        auto c = char_poly(make2(f, 2, 2, 0, 4));  // x^2 - 6x + 8
        CHECK(c.size() == 3);
        CHECK(c[0] == f->from_int(8));
        CHECK(c[1] == f->from_int(-6));
        CHECK(f->is_one(c[2]));
    }
    {
        auto c = char_poly(Matrix::identity(f, 2));  // (x-1)^2
        CHECK(c[0] == f->from_int(1));
        CHECK(c[1] == f->from_int(-2));
        CHECK(f->is_one(c[2]));
    }
    {
        auto c = char_poly(make2(f, 2, 0, 0, 8));  // x^2 - 10x + 16
        CHECK(c[0] == f->from_int(16));
        CHECK(c[1] == f->from_int(-10));
    }
}

TEST_CASE("mat_inv roundtrip on random unimodular matrices") {
    std::vector<RingPtr> rings = {
        std::make_shared<PrimeFieldCtx>(31),
        std::make_shared<QuadRingCtx>(-5),
        std::make_shared<ResidueRingCtx>(0, 15),
        std::make_shared<ResidueRingCtx>(-1, 9),
    };
    Rng rng(101);
    for (const auto& r : rings) {
        for (int t = 0; t < 100; ++t) {
            int n = rng.range(1, 4);
            Matrix p = random_unimodular(r, n, rng);
            CHECK(mat_mul(p, mat_inv(p)).is_identity());
        }
    }
}

TEST_CASE("char_poly conjugation invariance") {
    auto f = std::make_shared<PrimeFieldCtx>(31);
    Rng rng(55);
    for (int t = 0; t < 30; ++t) {
        int n = rng.range(2, 4);
        Matrix m(f, n);
        for (auto& e : m.a) e = f->random_elem(rng);
        Matrix p = random_unimodular(f, n, rng);
        CHECK(char_poly(conjugate(p, m)) == char_poly(m));
    }
}

TEST_CASE("char_poly verifies cayley hamilton") {
    auto f = std::make_shared<PrimeFieldCtx>(13);
    Rng rng(77);
    for (int t = 0; t < 20; ++t) {
        int n = rng.range(1, 4);
        Matrix m(f, n);
        for (auto& e : m.a) e = f->random_elem(rng);
        auto c = char_poly(m);
        Matrix acc(f, n);  // zero
        Matrix pw = Matrix::identity(f, n);
        for (int k = 0; k <= n; ++k) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    acc.at(i, j) = f->add(acc.at(i, j), f->mul(c[k], pw.at(i, j)));
            if (k < n) pw = mat_mul(pw, m);
        }
        CHECK(acc == Matrix(f, n));
    }
}

TEST_CASE("matrix json roundtrip") {
    auto r = std::make_shared<ResidueRingCtx>(-1, 7);
    Rng rng(3);
    Matrix m(r, 3);
    for (auto& e : m.a) e = r->random_elem(rng);
    CHECK(Matrix::from_json(r, m.to_json()) == m);
}

TEST_CASE("mat_pow and apply") {
    auto f = std::make_shared<PrimeFieldCtx>(31);
    Matrix g = make2(f, 2, 0, 0, 8);
    Matrix g2 = mat_pow(g, 2);
    CHECK(g2.at(0, 0) == f->from_int(4));
    CHECK(g2.at(1, 1) == f->from_int(2));
    auto u = mat_apply(g2, {f->from_int(1), f->from_int(4)});
    CHECK(u[0] == f->from_int(4));
    CHECK(u[1] == f->from_int(8));
    CHECK(mat_pow(g, -1) == mat_inv(g));
}
