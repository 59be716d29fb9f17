#pragma once

#include "icrypt/invariants.hpp"

namespace icrypt {

struct PublicKey {
    std::string scheme;  // ff-cyclic | ff-noncyclic | number-ring | finite-ring
    RingPtr ctx;
    int n = 0;
    std::vector<Matrix> generators;
    MessageSet s;

    void validate() const;  // generators invertible and commuting, S distinct
    nlohmann::json to_json() const;
    static PublicKey from_json(const nlohmann::json& j);
    std::string fingerprint() const;
};

struct PrivateKey {
    RingPtr ctx;
    Matrix p, p_inv;
    Exponents exponents;        // the secret monomial invariant
    std::vector<Elem> table;    // invariant values at the diagonalized messages

    nlohmann::json to_json() const;
    static PrivateKey from_json(const RingPtr& ctx, const nlohmann::json& j);
};

struct KeyPair {
    PublicKey pub;
    PrivateKey priv;

    nlohmann::json to_json() const;
    static KeyPair from_json(const nlohmann::json& j);
};

struct Ciphertext {
    std::vector<Elem> u;
    std::string key_fingerprint;

    nlohmann::json to_json(const Ring& ctx) const;
    static Ciphertext from_json(const RingPtr& ctx, const nlohmann::json& j);
};

// Cyclic scheme over GF(p^extDeg): one generator diag(alpha, alpha^b) with
// ord(alpha) = s, messages (1, alpha^i). Conjugation applied when P is given.
KeyPair keygen_ff_cyclic(const Int& p, int ext_deg, const Int& s, const Int& b,
                         int message_count, const std::optional<Matrix>& P, Rng& rng);

// Two generators with coprime orders s1, s2 and secret exponents b1, b2;
// the private invariant comes from the two-row congruence kernel.
KeyPair keygen_ff_noncyclic(const Int& p, int ext_deg, const Int& s1, const Int& s2,
                            const Int& b1, const Int& b2, int message_count,
                            const std::optional<Matrix>& P, Rng& rng);

// Diagonal generators over the fraction field of Z[sqrt(d)]: first n-1 entries
// are products of the seed set to exponents from Q, the last entry closes the
// planted invariant x^e. Mandatory conjugation (random P when absent).
KeyPair keygen_number_ring(long d, const std::vector<Elem>& seed_set,
                           const std::vector<long>& q_set, int n, const Exponents& e,
                           int gen_count, int message_count, const std::optional<Matrix>& P,
                           Rng& rng);

// Same construction over Z[sqrt(d)]/(m) with unit entries (norm coprime to m).
KeyPair keygen_finite_ring(long d, const Int& m, int n, const Exponents& e, int gen_count,
                           int message_count, const std::optional<Matrix>& P, Rng& rng);

// u = h * v_i for a random word h over the generators; every generator
// appears at least once, so word_length >= generator count.
Ciphertext encrypt(const PublicKey& pk, int msg_index, int word_length, Rng& rng);
Ciphertext encrypt(const PublicKey& pk, int msg_index, Rng& rng);  // default 2m

// Evaluates the secret invariant at P^{-1} u and matches the table.
int decrypt(const PrivateKey& sk, const Ciphertext& ct);

// Ciphertext bits per plaintext bit under block encoding, exact.
Rat expansion_ratio(const PublicKey& pk);

// Block encoding: the byte stream split into floor(log2 r)-bit message indices.
std::vector<int> encode_blocks(const std::vector<unsigned char>& bytes, int r);
std::vector<unsigned char> decode_blocks(const std::vector<int>& indices, int r,
                                         std::size_t byte_count);

}  // namespace icrypt
