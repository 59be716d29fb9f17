#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icrypt/poly.hpp"

using namespace icrypt;

TEST_CASE("monomial evaluation") {
    auto f = std::make_shared<PrimeFieldCtx>(31);
    MPoly p = MPoly::monomial(f, {2, 1}, f->one());
    CHECK(p.eval({f->from_int(4), f->from_int(8)}) == f->from_int(4));  // 16*8 = 128 = 4
    CHECK(eval_monomial(*f, {-1, 1}, {f->from_int(2), f->from_int(8)}) == f->from_int(4));
    CHECK_THROWS_AS(eval_monomial(*f, {-1, 0}, {f->zero(), f->one()}), EvalError);
}

TEST_CASE("arithmetic and zero normalization") {
    auto f = std::make_shared<PrimeFieldCtx>(7);
    MPoly a = MPoly::monomial(f, {1, 0}, f->from_int(3));
    MPoly b = MPoly::monomial(f, {1, 0}, f->from_int(4));
    CHECK(a.add(b).is_zero());
    MPoly c = a.mul(b);  // 12 x^2 = 5 x^2
    CHECK(c.terms.size() == 1);
    CHECK(c.terms.at({2, 0}) == f->from_int(5));
    CHECK(a.add(a.neg()).is_zero());
    CHECK(c.total_degree() == 2);
}

TEST_CASE("linear substitution matches evaluation") {
    auto f = std::make_shared<PrimeFieldCtx>(31);
    Rng rng(41);
    for (int t = 0; t < 30; ++t) {
        int n = rng.range(2, 3);
        MPoly p(f, n);
        for (int k = 0; k < 4; ++k) {
            Exponents e(n);
            for (auto& x : e) x = rng.range(0, 3);
            p.add_term(e, f->random_elem(rng));
        }
        Matrix m(f, n);
        for (auto& e : m.a) e = f->random_elem(rng);
        MPoly q = p.substitute_linear(m);
        for (int s = 0; s < 5; ++s) {
            std::vector<Elem> x(n);
            for (auto& e : x) e = f->random_elem(rng);
            CHECK(q.eval(x) == p.eval(mat_apply(m, x)));
        }
    }
}

TEST_CASE("json roundtrip and printing") {
    auto f = std::make_shared<PrimeFieldCtx>(31);
    MPoly p(f, 2);
    p.add_term({3, 1}, f->one());
    p.add_term({0, 0}, f->from_int(5));
    CHECK(MPoly::from_json(f, p.to_json()).terms == p.terms);
    CHECK(p.str() == "x1^3*x2 + 5");
}
