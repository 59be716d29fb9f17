#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace icrypt {

using Int = mpz_class;
using Rat = mpq_class;

// Error hierarchy. Every module throws these; the CLI maps them to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};
struct ParamError : Error {
    using Error::Error;
};
struct NotFoundError : Error {
    using Error::Error;
};
struct NoSolutionError : Error {
    using Error::Error;
};
struct UnsupportedRingError : Error {
    using Error::Error;
};
struct ResourceError : Error {
    using Error::Error;
};
struct SingularMatrixError : Error {
    using Error::Error;
};
struct InvalidCiphertextError : Error {
    using Error::Error;
};
struct EvalError : Error {
    using Error::Error;
};

// Deterministic seeded generator. Caller-owned; no global RNG state anywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, bound), bound > 0.
    Int below(const Int& bound) {
        if (bound <= 0) throw DomainError("Rng::below: bound must be positive");
        const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        while (true) {
            Int r = 0;
            std::size_t got = 0;
            while (got < bits) {
                r <<= 32;
                r += static_cast<unsigned long>(next_u64() & 0xffffffffUL);
                got += 32;
            }
            r >>= (got - bits);
            if (r < bound) return r;
        }
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(Int(hi - lo + 1)).get_si());
    }

  private:
    std::mt19937_64 eng_;
};

// Resource caps for scans and sweeps, overridable from the CLI.
struct Caps {
    long q_scan_max = 1L << 20;      // largest field enumerated for root scans / dlogs
    int degree_sweep_max = 12;       // minimal-degree sweep ceiling
    long dim_cap = 20000;            // C(n+d-1, d) ceiling for invariant spaces
    long coeff_bound = 3;            // kernel enumeration coefficient bound
    long unit_enum_max = 1000000;    // largest residue ring enumerated for its unit group
};

inline long bit_length(const Int& v) {
    if (v == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

}  // namespace icrypt
