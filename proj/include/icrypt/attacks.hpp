#pragma once

#include "icrypt/cryptosystem.hpp"

namespace icrypt {

struct AttackReport {
    std::string attack;
    bool success = false;
    std::optional<Exponents> invariant_exponents;  // over diagonalized coordinates
    std::optional<MPoly> invariant_poly;           // recovered by the degree sweep
    std::optional<Int> recovered_b;
    std::vector<std::optional<int>> decrypted;     // one slot per supplied ciphertext
    long group_ops = 0;
    long system_rows = 0;
    long system_cols = 0;
    std::string detail;

    nlohmann::json to_json() const;
};

// Baby-step giant-step in <base>; least x >= 0 with base^x = target.
Int dlog_bsgs(const Ring& field, const Elem& base, const Elem& target);

// Recovers the secret exponent b of a one-generator diag(alpha, alpha^b) key
// and decrypts by a_i = w2 / w1^b.
AttackReport attack_dlog_cyclic(const PublicKey& pk, const std::vector<Ciphertext>& cts);

// Degree sweep of invariant_space_degree over the public generators.
AttackReport attack_linear_algebra(const PublicKey& pk, int d_max,
                                   const std::vector<Ciphertext>& cts, const Caps& caps = {});

struct Diagonalization {
    Matrix q, q_inv;
    DiagGroup group;
};

// Common eigenbasis of the commuting public generators; throws
// NoSolutionError when the eigenvalue search is out of reach.
Diagonalization attack_diagonalize(const PublicKey& pk, const Caps& caps = {});

struct AtomSet {
    std::vector<Elem> atoms;  // pairwise coprime non-units, canonical associates
    Elem unit_root;           // -1 over Z, i over Z[i]
    Int unit_order;           // 2 or 4
    IntMat exponents;         // per input, one exponent per atom
    IntVec unit_exponents;    // per input, exponent of the unit root
};

// Iterated-gcd coprime refinement of a set of nonzero elements of Z or Z[i].
AtomSet atom_refine(const QuadRingCtx& ctx, const std::vector<Elem>& xs);

// Full pipeline: diagonalize, refine eigenvalue atoms, solve the exponent
// kernel, recover a rational invariant, decrypt.
AttackReport attack_atoms(const PublicKey& pk, const std::vector<Ciphertext>& cts,
                          const Caps& caps = {});

// Roots of a monic polynomial (ascending coefficients) inside the ring, with
// multiplicity; finite fields by full scan, quadratic fraction fields by
// divisor-candidate search.
std::vector<Elem> poly_roots_in_ring(const RingPtr& ctx, const std::vector<Elem>& coeffs,
                                     const Caps& caps = {});

}  // namespace icrypt
