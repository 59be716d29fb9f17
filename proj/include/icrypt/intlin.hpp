#pragma once

#include <map>
#include <optional>
#include <vector>

#include "icrypt/common.hpp"

namespace icrypt {

// g = gcd(a, b) > 0 together with Bezout coefficients a*x + b*y = g.
struct ExtGcd {
    Int g, x, y;
};
ExtGcd ext_gcd(const Int& a, const Int& b);

bool is_prime(const Int& n);

// Prime factorization of n >= 1, ascending with multiplicity. Trial division
// below 10^6, Pollard rho (Brent) above.
std::vector<Int> factorize(const Int& n);

// Factorization as prime -> multiplicity.
std::map<Int, int> factor_map(const Int& n);

// All positive divisors of |n|, ascending. Guarded by `cap`.
std::vector<Int> divisors(const Int& n, std::size_t cap = 100000);

// x mod (m1*m2*...) from residues, moduli pairwise coprime.
Int crt(const std::vector<Int>& residues, const std::vector<Int>& moduli);

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row major

// U*A*V = D with U, V unimodular and D diagonal, d1 | d2 | ...
struct Snf {
    IntMat u, d, v;
};
Snf smith_normal_form(const IntMat& a);

IntMat mat_identity_z(int n);
IntMat mat_mul_z(const IntMat& a, const IntMat& b);
Int det_z(const IntMat& a);

// Row-style Hermite normal form of the lattice spanned by `rows`; zero rows
// dropped, pivots positive, entries above each pivot reduced into [0, pivot).
IntMat hnf_rows(const IntMat& rows, int n);

// t x n system L*d = 0 (mod moduli[i] per row). A modulus of 0 marks an exact
// integer equation for that row.
struct CongruenceSystem {
    IntMat l;
    IntVec moduli;

    int rows() const { return static_cast<int>(l.size()); }
    int cols() const { return l.empty() ? 0 : static_cast<int>(l[0].size()); }
    void validate() const;
    bool satisfied_by(const IntVec& d) const;
};

struct KernelLattice {
    IntMat basis;            // HNF rows, each satisfies the source system
    IntVec ambient_moduli;   // per-coordinate normalization moduli (may be empty)
};

// Basis of {d in Z^n : L*d == 0 (mod moduli)} via the slack-variable kernel
// of [L | diag(moduli)] computed with SNF.
KernelLattice solve_congruence_kernel(const CongruenceSystem& sys);

// Streams nonzero integer combinations of the basis with coefficients of L1
// norm ascending; within a shell, representatives in descending lexicographic
// order, each followed by its negation. Coordinates are reduced into
// [0, modulus) where a positive per-coordinate modulus is supplied.
class KernelEnumerator {
  public:
    KernelEnumerator(const KernelLattice& lat, long coeff_bound, IntVec reduce_moduli = {});
    std::optional<IntVec> next();

  private:
    void fill_shell();

    IntMat basis_;
    long bound_;
    IntVec moduli_;
    long shell_ = 0;
    std::vector<std::vector<long>> shell_reps_;
    std::size_t rep_idx_ = 0;
    bool emit_negation_ = false;
    std::vector<long> current_;
};

// Membership test: does the integer span of basis contain v?
bool lattice_contains(const IntMat& hnf_basis, const IntVec& v);

inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace icrypt
