#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icrypt/cryptosystem.hpp"

using namespace icrypt;

namespace {

std::vector<Elem> elems(const RingPtr& r, std::initializer_list<long> xs) {
    std::vector<Elem> out;
    for (long x : xs) out.push_back(r->from_int(x));
    return out;
}

// ord(alpha)=5, b=3, P=I, S={(1,2^i)}, f = x1^2 x2
KeyPair handmade_cyclic() {
    auto f = std::make_shared<PrimeFieldCtx>(31);
    KeyPair kp;
    kp.pub.scheme = "ff-cyclic";
    kp.pub.ctx = f;
    kp.pub.n = 2;
    kp.pub.generators = {Matrix::diagonal(f, elems(f, {2, 8}))};
    for (int i = 0; i < 5; ++i) kp.pub.s.vecs.push_back(elems(f, {1, 1 << i}));
    kp.priv.ctx = f;
    kp.priv.p = Matrix::identity(f, 2);
    kp.priv.p_inv = kp.priv.p;
    kp.priv.exponents = {2, 1};
    for (int i = 0; i < 5; ++i) kp.priv.table.push_back(f->from_int(1 << i));
    kp.pub.validate();
    return kp;
}

}  // namespace

TEST_CASE("cyclic keygen") {
    Rng rng(5);
    KeyPair kp = keygen_ff_cyclic(31, 1, 5, 3, 5, std::nullopt, rng);
    CHECK(kp.pub.scheme == "ff-cyclic");
    REQUIRE(kp.pub.generators.size() == 1);
    const Matrix& g = kp.pub.generators[0];
    Elem alpha = g.at(0, 0);
    CHECK(ff_order(*kp.pub.ctx, alpha) == 5);
    CHECK(g.at(1, 1) == kp.pub.ctx->pow(alpha, 3));
    CHECK(kp.pub.ctx->is_zero(g.at(0, 1)));
    CHECK(kp.pub.s.r() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(kp.pub.s.vecs[i][0] == kp.pub.ctx->one());
        CHECK(kp.pub.s.vecs[i][1] == kp.pub.ctx->pow(alpha, i));
    }
    CHECK(kp.priv.exponents == Exponents{2, 1});  // (-3 mod 5, 1)

    CHECK_THROWS_AS(keygen_ff_cyclic(31, 1, 5, 10, 5, std::nullopt, rng), ParamError);
    CHECK_THROWS_AS(keygen_ff_cyclic(31, 1, 6, 1, 5, std::nullopt, rng), ParamError);
    CHECK_THROWS_AS(keygen_ff_cyclic(31, 1, 7, 1, 5, std::nullopt, rng), ParamError);
    CHECK_THROWS_AS(keygen_ff_cyclic(31, 1, 5, 3, 6, std::nullopt, rng), ParamError);
    CHECK_THROWS_AS(keygen_ff_cyclic(31, 1, 5, 3, 1, std::nullopt, rng), ParamError);
}

TEST_CASE("decrypt on a fixed instance") {
    KeyPair kp = handmade_cyclic();
    auto f = kp.pub.ctx;
    Ciphertext ct{elems(f, {4, 8}), ""};  // g^2 * v_2
    CHECK(decrypt(kp.priv, ct) == 2);
    CHECK(decrypt(kp.priv, Ciphertext{elems(f, {1, 1}), ""}) == 0);
    CHECK_THROWS_AS(decrypt(kp.priv, Ciphertext{elems(f, {0, 0}), ""}),
                    InvalidCiphertextError);
    // value outside the table
    CHECK_THROWS_AS(decrypt(kp.priv, Ciphertext{elems(f, {1, 3}), ""}),
                    InvalidCiphertextError);
}

TEST_CASE("encryption applies a group word") {
    KeyPair kp = handmade_cyclic();
    Rng rng(11);
    const Matrix& g = kp.pub.generators[0];
    for (int t = 0; t < 20; ++t) {
        int msg = t % 5;
        Ciphertext ct = encrypt(kp.pub, msg, 1 + t % 4, rng);
        // u must be alpha^k * v_msg for some k
        bool hit = false;
        std::vector<Elem> v = kp.pub.s.vecs[msg];
        for (int k = 0; k < 5 && !hit; ++k) {
            if (ct.u == v) hit = true;
            v = mat_apply(g, v);
        }
        CHECK(hit);
        CHECK(decrypt(kp.priv, ct) == msg);
        CHECK(ct.key_fingerprint == kp.pub.fingerprint());
    }
    CHECK_THROWS_AS(encrypt(kp.pub, 5, 2, rng), ParamError);
    CHECK_THROWS_AS(encrypt(kp.pub, 0, 0, rng), ParamError);
}

TEST_CASE("cyclic roundtrip with conjugation") {
    Rng rng(13);
    auto f = std::make_shared<PrimeFieldCtx>(31);
    Matrix p = random_unimodular(f, 2, rng);
    KeyPair kp = keygen_ff_cyclic(31, 1, 5, 2, 4, p, rng);
    CHECK_FALSE(kp.pub.generators[0].is_identity());
    for (int t = 0; t < 40; ++t) {
        int msg = rng.range(0, 3);
        Ciphertext ct = encrypt(kp.pub, msg, rng);
        CHECK(decrypt(kp.priv, ct) == msg);
    }
}

TEST_CASE("cyclic over an extension field") {
    Rng rng(17);
    KeyPair kp = keygen_ff_cyclic(5, 2, 3, 2, 3, std::nullopt, rng);  // GF(25), s=3|24
    CHECK(ff_order(*kp.pub.ctx, kp.pub.generators[0].at(0, 0)) == 3);
    for (int t = 0; t < 10; ++t) {
        int msg = rng.range(0, 2);
        CHECK(decrypt(kp.priv, encrypt(kp.pub, msg, rng)) == msg);
    }
}

TEST_CASE("noncyclic keygen and roundtrip") {
    Rng rng(19);
    KeyPair kp = keygen_ff_noncyclic(31, 1, 3, 5, 2, 3, 6, std::nullopt, rng);
    CHECK(kp.pub.scheme == "ff-noncyclic");
    REQUIRE(kp.pub.generators.size() == 2);
    kp.pub.validate();  // commuting, invertible
    for (int t = 0; t < 30; ++t) {
        int msg = rng.range(0, 5);
        CHECK(decrypt(kp.priv, encrypt(kp.pub, msg, rng)) == msg);
    }
    // equal orders rejected, coprimality is required
    CHECK_THROWS_AS(keygen_ff_noncyclic(31, 1, 5, 5, 2, 3, 4, std::nullopt, rng),
                    ParamError);
}

TEST_CASE("number ring keygen and roundtrip") {
    Rng rng(23);
    auto q = std::make_shared<QuadRingCtx>(0);
    std::vector<Elem> seeds = {q->from_int(2), q->from_int(3)};
    KeyPair kp = keygen_number_ring(0, seeds, {0, 1, 2}, 3, {2, 1, 1}, 2, 3,
                                    std::nullopt, rng);
    CHECK(kp.pub.scheme == "number-ring");
    CHECK(kp.pub.n == 3);
    CHECK_FALSE(kp.priv.p.is_identity());  // conjugation is mandatory
    kp.pub.validate();
    for (int t = 0; t < 20; ++t) {
        int msg = rng.range(0, 2);
        CHECK(decrypt(kp.priv, encrypt(kp.pub, msg, rng)) == msg);
    }

    // last invariant exponent must be 1, all positive, total at least n
    CHECK_THROWS_AS(keygen_number_ring(0, seeds, {0, 1}, 3, {2, 1, 2}, 2, 3,
                                       std::nullopt, rng), ParamError);
    CHECK_THROWS_AS(keygen_number_ring(0, seeds, {0, 1}, 3, {1, 0, 1}, 2, 3,
                                       std::nullopt, rng), ParamError);
    CHECK_THROWS_AS(keygen_number_ring(0, seeds, {0, 1}, 3, {1, 1}, 2, 3,
                                       std::nullopt, rng), ParamError);
    // seeds must be non-unit integers of the ring
    std::vector<Elem> bad = {q->from_int(1), q->from_int(3)};
    CHECK_THROWS_AS(keygen_number_ring(0, bad, {0, 1}, 3, {2, 1, 1}, 2, 3,
                                       std::nullopt, rng), ParamError);
}

TEST_CASE("number ring over a quadratic field") {
    Rng rng(29);
    auto q = std::make_shared<QuadRingCtx>(-5);
    std::vector<Elem> seeds = {q->from_int(2), q->make(1, 1)};  // 2, 1+sqrt(-5)
    KeyPair kp = keygen_number_ring(-5, seeds, {0, 1}, 2, {2, 1}, 2, 3,
                                    std::nullopt, rng);
    for (int t = 0; t < 10; ++t) {
        int msg = rng.range(0, 2);
        CHECK(decrypt(kp.priv, encrypt(kp.pub, msg, rng)) == msg);
    }
}

TEST_CASE("finite ring keygen and roundtrip") {
    Rng rng(31);
    KeyPair kp = keygen_finite_ring(0, 15, 2, {1, 1}, 1, 3, std::nullopt, rng);
    CHECK(kp.pub.scheme == "finite-ring");
    kp.pub.validate();
    for (int t = 0; t < 20; ++t) {
        int msg = rng.range(0, 2);
        CHECK(decrypt(kp.priv, encrypt(kp.pub, msg, rng)) == msg);
    }
    KeyPair kp2 = keygen_finite_ring(-1, 13, 2, {2, 1}, 2, 4, std::nullopt, rng);
    for (int t = 0; t < 20; ++t) {
        int msg = rng.range(0, 3);
        CHECK(decrypt(kp2.priv, encrypt(kp2.pub, msg, rng)) == msg);
    }
}

TEST_CASE("serialization roundtrips") {
    Rng rng(37);
    KeyPair kps[3] = {
        keygen_ff_cyclic(31, 1, 5, 3, 5, std::nullopt, rng),
        keygen_number_ring(0, {QuadRingCtx(0).from_int(2), QuadRingCtx(0).from_int(3)},
                           {0, 1}, 2, {3, 1}, 1, 3, std::nullopt, rng),
        keygen_finite_ring(0, 15, 2, {1, 1}, 1, 3, std::nullopt, rng),
    };
    for (const KeyPair& kp : kps) {
        nlohmann::json j = kp.to_json();
        KeyPair back = KeyPair::from_json(j);
        CHECK(back.to_json() == j);
        CHECK(back.pub.fingerprint() == kp.pub.fingerprint());

        nlohmann::json jp = kp.pub.to_json();
        CHECK(PublicKey::from_json(jp).to_json() == jp);

        Ciphertext ct = encrypt(kp.pub, 1, rng);
        nlohmann::json jc = ct.to_json(*kp.pub.ctx);
        Ciphertext ct2 = Ciphertext::from_json(kp.pub.ctx, jc);
        CHECK(ct2.u == ct.u);
        CHECK(ct2.key_fingerprint == ct.key_fingerprint);
        CHECK(decrypt(kp.priv, ct2) == 1);
    }
    CHECK(kps[0].pub.fingerprint().size() == 16);
    CHECK(kps[0].pub.fingerprint() != kps[2].pub.fingerprint());
}

TEST_CASE("expansion ratio") {
    Rng rng(41);
    KeyPair kp = keygen_ff_cyclic(31, 1, 5, 3, 5, std::nullopt, rng);
    CHECK(expansion_ratio(kp.pub) == Rat(5));  // 2*5 bits / 2 bits
    KeyPair kp2 = keygen_ff_cyclic(31, 1, 5, 3, 2, std::nullopt, rng);
    CHECK(expansion_ratio(kp2.pub) == Rat(10));  // r=2: one bit per block
}

TEST_CASE("block encoding") {
    std::vector<unsigned char> bytes = {0xB3};
    std::vector<int> blocks = encode_blocks(bytes, 5);  // 2-bit blocks
    CHECK(blocks == std::vector<int>{2, 3, 0, 3});
    CHECK(decode_blocks(blocks, 5, 1) == bytes);

    Rng rng(43);
    for (int r : {2, 3, 5, 9, 200}) {
        std::vector<unsigned char> data;
        for (int i = 0; i < 17; ++i) data.push_back(static_cast<unsigned char>(rng.below(256).get_ui()));
        std::vector<int> enc = encode_blocks(data, r);
        int k = 1;
        while ((1 << (k + 1)) <= r) ++k;
        for (int b : enc) {
            CHECK(b >= 0);
            CHECK(b < (1 << k));
        }
        CHECK(decode_blocks(enc, r, data.size()) == data);
    }
    CHECK_THROWS_AS(encode_blocks(bytes, 1), ParamError);
}
