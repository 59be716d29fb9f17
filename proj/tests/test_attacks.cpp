#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "icrypt/attacks.hpp"

using namespace icrypt;

namespace {

std::vector<Elem> elems(const RingPtr& r, std::initializer_list<long> xs) {
    std::vector<Elem> out;
    for (long x : xs) out.push_back(r->from_int(x));
    return out;
}

PublicKey upper_triangular_key() {
    // diag(2, 4) conjugated by [[1,1],[0,1]] over GF(31)
    auto f = std::make_shared<PrimeFieldCtx>(31);
    PublicKey pk;
    pk.scheme = "ff-cyclic";
    pk.ctx = f;
    pk.n = 2;
    Matrix g(f, 2);
    g.at(0, 0) = f->from_int(2);
    g.at(0, 1) = f->from_int(2);
    g.at(1, 1) = f->from_int(4);
    pk.generators = {g};
    for (int i = 0; i < 5; ++i)
        pk.s.vecs.push_back(elems(f, {1 + (1 << i), 1 << i}));  // P * (1, 2^i)
    pk.validate();
    return pk;
}

}  // namespace

TEST_CASE("baby step giant step") {
    PrimeFieldCtx f(31);
    CHECK(dlog_bsgs(f, f.from_int(3), f.from_int(2)) == 24);
    CHECK(dlog_bsgs(f, f.from_int(3), f.from_int(1)) == 0);
    CHECK(dlog_bsgs(f, f.from_int(2), f.from_int(8)) == 3);
    CHECK_THROWS_AS(dlog_bsgs(f, f.from_int(2), f.from_int(3)), NoSolutionError);
    CHECK_THROWS_AS(dlog_bsgs(f, f.from_int(2), f.from_int(0)), NoSolutionError);
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        Int x = rng.below(30);
        CHECK(dlog_bsgs(f, f.from_int(3), f.pow(f.from_int(3), x)) == x);
    }
}

TEST_CASE("dlog attack on a cyclic key") {
    Rng rng(7);
    KeyPair kp = keygen_ff_cyclic(31, 1, 5, 3, 5, std::nullopt, rng);
    std::vector<Ciphertext> cts;
    for (int i = 0; i < 5; ++i) cts.push_back(encrypt(kp.pub, i, rng));
    AttackReport rep = attack_dlog_cyclic(kp.pub, cts);
    CHECK(rep.success);
    CHECK(*rep.recovered_b == 3);
    for (int i = 0; i < 5; ++i) {
        REQUIRE(rep.decrypted[i].has_value());
        CHECK(*rep.decrypted[i] == i);
    }

    // b = 1: the symmetric invariant x1 x2^{s-1}
    KeyPair kp1 = keygen_ff_cyclic(31, 1, 5, 1, 5, std::nullopt, rng);
    AttackReport rep1 = attack_dlog_cyclic(kp1.pub, {encrypt(kp1.pub, 3, rng)});
    CHECK(rep1.success);
    CHECK(*rep1.recovered_b == 1);
    CHECK(*rep1.decrypted[0] == 3);
}

TEST_CASE("dlog attack on a malformed key fails cleanly") {
    auto f = std::make_shared<PrimeFieldCtx>(31);
    PublicKey pk;
    pk.scheme = "ff-cyclic";
    pk.ctx = f;
    pk.n = 2;
    pk.generators = {Matrix::diagonal(f, elems(f, {2, 3}))};  // 3 outside <2>
    pk.s.vecs = {elems(f, {1, 1}), elems(f, {1, 2})};
    AttackReport rep = attack_dlog_cyclic(pk, {});
    CHECK_FALSE(rep.success);
    CHECK_FALSE(rep.recovered_b.has_value());

    PublicKey bad = upper_triangular_key();
    CHECK_THROWS_AS(attack_dlog_cyclic(bad, {}), UnsupportedRingError);
}

TEST_CASE("dlog and lattice separations agree on the secret exponent") {
    Rng rng(11);
    for (long s : {5L, 7L}) {
        long q = s == 5 ? 31 : 211;
        for (long b = 1; b < s; ++b) {
            KeyPair kp = keygen_ff_cyclic(q, 1, s, b, static_cast<int>(s), std::nullopt, rng);
            AttackReport rep = attack_dlog_cyclic(kp.pub, {});
            CHECK(rep.success);
            CHECK(*rep.recovered_b == b);
            DiagGroup g{kp.pub.ctx, 2,
                        {{kp.pub.generators[0].at(0, 0), kp.pub.generators[0].at(1, 1)}}};
            MonomialLattice lat = monomial_lattice_field(g);
            Exponents d = find_separating_invariant(lat.lattice, kp.pub.ctx, kp.pub.s, 3);
            // d1 + b d2 = 0 (mod s) with d2 a unit mod s
            Int d1 = d[0], d2 = d[1];
            CHECK(mod_floor(d1 + b * d2, s) == 0);
            CHECK(gcd(d2, Int(s)) == 1);
        }
    }
}

TEST_CASE("linear algebra attack at calibrated degree") {
    Rng rng(13);
    PublicKey pk = upper_triangular_key();
    std::vector<Ciphertext> cts;
    for (int i = 0; i < 5; ++i) cts.push_back(encrypt(pk, i, rng));
    AttackReport rep = attack_linear_algebra(pk, 5, cts);
    CHECK(rep.success);
    REQUIRE(rep.invariant_poly.has_value());
    CHECK(rep.invariant_poly->total_degree() == 3);
    for (int i = 0; i < 5; ++i) {
        REQUIRE(rep.decrypted[i].has_value());
        CHECK(*rep.decrypted[i] == i);
    }
    // the basis element itself is (x1 - x2) x2^2
    InvariantSpace sp = invariant_space_degree(pk.generators, 3);
    REQUIRE(sp.dim() == 1);
    MPoly expect(pk.ctx, 2);
    expect.add_term({1, 2}, pk.ctx->one());
    expect.add_term({0, 3}, pk.ctx->from_int(-1));
    CHECK(sp.basis[0].terms == expect.terms);
}

TEST_CASE("linear algebra attack trivially wins on the identity group") {
    auto f = std::make_shared<PrimeFieldCtx>(31);
    PublicKey pk;
    pk.scheme = "ff-cyclic";
    pk.ctx = f;
    pk.n = 2;
    pk.generators = {Matrix::identity(f, 2)};
    pk.s.vecs = {elems(f, {1, 1}), elems(f, {1, 2})};
    AttackReport rep = attack_linear_algebra(pk, 3, {});
    CHECK(rep.success);
    CHECK(rep.invariant_poly->total_degree() == 1);
}

TEST_CASE("linear algebra attack stalls on a high degree invariant") {
    Rng rng(17);
    auto q = std::make_shared<QuadRingCtx>(0);
    std::vector<Elem> seeds = {q->from_int(2), q->from_int(3)};
    // planted invariant of total degree 12
    KeyPair kp = keygen_number_ring(0, seeds, {0, 1, 2}, 3, {6, 5, 1}, 2, 3,
                                    std::nullopt, rng);
    AttackReport rep = attack_linear_algebra(kp.pub, 6, {});
    CHECK_FALSE(rep.success);
}

TEST_CASE("diagonalization") {
    PublicKey pk = upper_triangular_key();
    Diagonalization d = attack_diagonalize(pk);
    REQUIRE(d.group.gens.size() == 1);
    auto f = pk.ctx;
    std::vector<Elem> eig = d.group.gens[0];
    std::vector<std::string> names = {f->str(eig[0]), f->str(eig[1])};
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"2", "4"});
    CHECK(mat_mul(d.q, d.q_inv).is_identity());
    CHECK(conjugate(d.q_inv, pk.generators[0]) ==
          Matrix::diagonal(f, d.group.gens[0]));

    // already diagonal: identity eigenbasis
    PublicKey diag_pk;
    diag_pk.scheme = "ff-cyclic";
    diag_pk.ctx = f;
    diag_pk.n = 2;
    diag_pk.generators = {Matrix::diagonal(f, elems(f, {2, 8}))};
    diag_pk.s.vecs = {elems(f, {1, 1}), elems(f, {1, 2})};
    Diagonalization d2 = attack_diagonalize(diag_pk);
    CHECK(d2.q.is_identity());

    // non-commuting generators are rejected
    PublicKey bad = diag_pk;
    Matrix m1(f, 2), m2(f, 2);
    m1.at(0, 0) = f->one(); m1.at(0, 1) = f->one(); m1.at(1, 1) = f->one();
    m2.at(0, 0) = f->one(); m2.at(1, 0) = f->one(); m2.at(1, 1) = f->one();
    bad.generators = {m1, m2};
    CHECK_THROWS_AS(attack_diagonalize(bad), NoSolutionError);
}

TEST_CASE("diagonalization of generated keys is exact") {
    Rng rng(19);
    for (int t = 0; t < 10; ++t) {
        Matrix p = random_unimodular(std::make_shared<PrimeFieldCtx>(31), 2, rng);
        KeyPair kp = keygen_ff_cyclic(31, 1, 5, 1 + t % 4, 4, p, rng);
        Diagonalization d = attack_diagonalize(kp.pub);
        for (std::size_t i = 0; i < kp.pub.generators.size(); ++i) {
            Matrix dg = conjugate(d.q_inv, kp.pub.generators[i]);
            CHECK(dg == Matrix::diagonal(kp.pub.ctx, d.group.gens[i]));
        }
    }
}

TEST_CASE("atom refinement over Z") {
    QuadRingCtx z(0);
    AtomSet a = atom_refine(z, {z.from_int(12), z.from_int(18), z.from_int(5)});
    REQUIRE(a.atoms.size() == 3);
    CHECK(a.atoms[0] == z.from_int(2));
    CHECK(a.atoms[1] == z.from_int(3));
    CHECK(a.atoms[2] == z.from_int(5));
    CHECK(a.unit_order == 2);
    CHECK(a.exponents[0] == IntVec{2, 1, 0});  // 12 = 2^2 3
    CHECK(a.exponents[1] == IntVec{1, 2, 0});  // 18 = 2 3^2
    CHECK(a.exponents[2] == IntVec{0, 0, 1});
    CHECK(a.unit_exponents == IntVec{0, 0, 0});

    AtomSet b = atom_refine(z, {z.from_int(7)});
    REQUIRE(b.atoms.size() == 1);
    CHECK(b.atoms[0] == z.from_int(7));

    AtomSet c = atom_refine(z, {z.from_int(-6), z.from_int(4)});
    REQUIRE(c.atoms.size() == 2);
    CHECK(c.exponents[0] == IntVec{1, 1});
    CHECK(c.unit_exponents[0] == 1);  // the sign
}

TEST_CASE("atom refinement over Z[i]") {
    QuadRingCtx zi(-1);
    AtomSet a = atom_refine(zi, {zi.from_int(2), zi.make(1, 1), zi.from_int(3)});
    REQUIRE(a.atoms.size() == 2);
    CHECK(a.atoms[0] == zi.make(1, 1));  // norm 2 before norm 9
    CHECK(a.atoms[1] == zi.from_int(3));
    CHECK(a.unit_order == 4);
    CHECK(a.exponents[0] == IntVec{2, 0});  // 2 = -i (1+i)^2
    CHECK(a.unit_exponents[0] == 3);
    CHECK(a.exponents[1] == IntVec{1, 0});
    CHECK(a.exponents[2] == IntVec{0, 1});

    QuadRingCtx z5(-5);
    CHECK_THROWS_AS(atom_refine(z5, {z5.from_int(6)}), UnsupportedRingError);
}

TEST_CASE("atom attack on a rational key") {
    auto q = std::make_shared<QuadRingCtx>(0);
    Rng rng(23);
    // T = < diag(6, 1/6), diag(4, 1/4) > conjugated by [[1,1],[0,1]]
    Matrix p(q, 2);
    p.at(0, 0) = q->one(); p.at(0, 1) = q->one(); p.at(1, 1) = q->one();
    PublicKey pk;
    pk.scheme = "number-ring";
    pk.ctx = q;
    pk.n = 2;
    Matrix g1 = Matrix::diagonal(q, {q->from_int(6), q->make(1, 0, 6)});
    Matrix g2 = Matrix::diagonal(q, {q->from_int(4), q->make(1, 0, 4)});
    pk.generators = {conjugate(p, g1), conjugate(p, g2)};
    // messages P*w, invariant y1 y2 takes values 1, 2, 6
    for (auto w : {std::pair{1, 1}, {1, 2}, {2, 3}})
        pk.s.vecs.push_back(mat_apply(p, elems(q, {w.first, w.second})));
    pk.validate();

    std::vector<Ciphertext> cts;
    for (int i = 0; i < 3; ++i) cts.push_back(encrypt(pk, i, rng));
    AttackReport rep = attack_atoms(pk, cts);
    CHECK(rep.success);
    REQUIRE(rep.invariant_exponents.has_value());
    Exponents y = *rep.invariant_exponents;
    CHECK(y[0] == y[1]);  // kernel is the line y1 = y2
    CHECK(y[0] != 0);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(rep.decrypted[i].has_value());
        CHECK(*rep.decrypted[i] == i);
    }

    // a ciphertext with a zero diagonalized component is skipped, not fatal
    Ciphertext zero_ct{mat_apply(p, elems(q, {0, 1})), ""};
    AttackReport rep2 = attack_atoms(pk, {zero_ct});
    CHECK(rep2.success);
    CHECK_FALSE(rep2.decrypted[0].has_value());
}

TEST_CASE("atom attack on generated keys") {
    auto q = std::make_shared<QuadRingCtx>(0);
    Rng rng(29);
    std::vector<Elem> seeds = {q->from_int(2), q->from_int(3), q->from_int(5)};
    for (int t = 0; t < 5; ++t) {
        KeyPair kp = keygen_number_ring(0, seeds, {0, 1, 2}, 2 + t % 2,
                                        t % 2 ? Exponents{2, 1, 1} : Exponents{3, 1},
                                        2, 3, std::nullopt, rng);
        std::vector<Ciphertext> cts;
        for (int i = 0; i < 3; ++i) cts.push_back(encrypt(kp.pub, i, rng));
        AttackReport rep = attack_atoms(kp.pub, cts);
        CHECK(rep.success);
        for (int i = 0; i < 3; ++i) {
            REQUIRE(rep.decrypted[i].has_value());
            CHECK(*rep.decrypted[i] == i);
        }
    }
}

TEST_CASE("atom attack refuses non Euclidean rings") {
    Rng rng(31);
    auto q5 = std::make_shared<QuadRingCtx>(-5);
    std::vector<Elem> seeds = {q5->from_int(2), q5->make(1, 1)};
    KeyPair kp = keygen_number_ring(-5, seeds, {0, 1}, 2, {2, 1}, 2, 3,
                                    std::nullopt, rng);
    CHECK_THROWS_AS(attack_atoms(kp.pub, {}), UnsupportedRingError);
}

TEST_CASE("root finding in rings") {
    auto f = std::make_shared<PrimeFieldCtx>(31);
    // (x - 2)(x - 4) = x^2 - 6x + 8
    std::vector<Elem> roots =
        poly_roots_in_ring(f, elems(f, {8, -6, 1}));
    REQUIRE(roots.size() == 2);
    CHECK(f->str(roots[0]) == "2");
    CHECK(f->str(roots[1]) == "4");

    auto q = std::make_shared<QuadRingCtx>(0);
    // (x - 1/2)(x - 3): 2x^2 - 7x + 3 made monic
    std::vector<Elem> coeffs = {q->make(3, 0, 2), q->make(-7, 0, 2), q->one()};
    std::vector<Elem> qroots = poly_roots_in_ring(q, coeffs);
    REQUIRE(qroots.size() == 2);
    CHECK((qroots[0] == q->make(1, 0, 2) || qroots[1] == q->make(1, 0, 2)));
    CHECK((qroots[0] == q->from_int(3) || qroots[1] == q->from_int(3)));
}
