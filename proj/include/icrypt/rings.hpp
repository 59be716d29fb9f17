#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "icrypt/common.hpp"
#include "icrypt/intlin.hpp"

namespace icrypt {

enum class RingKind { PrimeField, ExtField, QuadRing, ResidueRing };

// One element of any ring context. The owning context interprets the
// coordinates; all contexts keep elements in a canonical normalized form so
// operator== is structural equality.
struct Elem {
    std::vector<Int> c;
    Int den{1};

    bool operator==(const Elem&) const = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
  public:
    virtual ~Ring() = default;

    virtual RingKind kind() const = 0;
    virtual Elem from_int(const Int& v) const = 0;
    virtual Elem add(const Elem& a, const Elem& b) const = 0;
    virtual Elem neg(const Elem& a) const = 0;
    virtual Elem mul(const Elem& a, const Elem& b) const = 0;
    virtual std::optional<Elem> inv(const Elem& a) const = 0;
    virtual bool is_field() const = 0;
    virtual std::optional<Int> cardinality() const = 0;
    virtual std::string str(const Elem& a) const = 0;
    virtual nlohmann::json elem_to_json(const Elem& a) const = 0;
    virtual Elem elem_from_json(const nlohmann::json& j) const = 0;
    virtual nlohmann::json describe() const = 0;
    virtual bool same_as(const Ring& other) const = 0;

    Elem zero() const { return from_int(0); }
    Elem one() const { return from_int(1); }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool is_zero(const Elem& a) const { return eq(a, zero()); }
    bool is_one(const Elem& a) const { return eq(a, one()); }
    bool is_unit(const Elem& a) const { return inv(a).has_value(); }

    // Square-and-multiply; negative exponents go through inv().
    Elem pow(const Elem& a, const Int& e) const;

    // All elements, finite rings only; throws ResourceError above cap.
    std::vector<Elem> enumerate(long cap) const;

    // Random element (uniform over a finite ring; bounded integers otherwise).
    virtual Elem random_elem(Rng& rng) const = 0;

    static RingPtr from_json(const nlohmann::json& j);
};

// GF(p), p prime (checked probabilistically at construction).
class PrimeFieldCtx final : public Ring {
  public:
    explicit PrimeFieldCtx(Int p);

    RingKind kind() const override { return RingKind::PrimeField; }
    Elem from_int(const Int& v) const override;
    Elem add(const Elem& a, const Elem& b) const override;
    Elem neg(const Elem& a) const override;
    Elem mul(const Elem& a, const Elem& b) const override;
    std::optional<Elem> inv(const Elem& a) const override;
    bool is_field() const override { return true; }
    std::optional<Int> cardinality() const override { return p_; }
    std::string str(const Elem& a) const override;
    nlohmann::json elem_to_json(const Elem& a) const override;
    Elem elem_from_json(const nlohmann::json& j) const override;
    nlohmann::json describe() const override;
    bool same_as(const Ring& o) const override;
    Elem random_elem(Rng& rng) const override;

    const Int& p() const { return p_; }

  private:
    Int p_;
};

// GF(p^r) = GF(p)[x]/(modulus), modulus monic irreducible of degree r.
class ExtFieldCtx final : public Ring {
  public:
    ExtFieldCtx(Int p, int r, std::vector<Int> modulus);
    static std::shared_ptr<const ExtFieldCtx> random(const Int& p, int r, Rng& rng);

    RingKind kind() const override { return RingKind::ExtField; }
    Elem from_int(const Int& v) const override;
    Elem add(const Elem& a, const Elem& b) const override;
    Elem neg(const Elem& a) const override;
    Elem mul(const Elem& a, const Elem& b) const override;
    std::optional<Elem> inv(const Elem& a) const override;
    bool is_field() const override { return true; }
    std::optional<Int> cardinality() const override;
    std::string str(const Elem& a) const override;
    nlohmann::json elem_to_json(const Elem& a) const override;
    Elem elem_from_json(const nlohmann::json& j) const override;
    nlohmann::json describe() const override;
    bool same_as(const Ring& o) const override;
    Elem random_elem(Rng& rng) const override;

    const Int& p() const { return p_; }
    int r() const { return r_; }
    const std::vector<Int>& modulus() const { return modulus_; }

  private:
    Int p_;
    int r_;
    std::vector<Int> modulus_;  // size r+1, monic
};

// Fraction field of Z[theta], theta = sqrt(d), d square-free, d != 1.
// d == 0 designates the plain integers Z (elements with theta coordinate 0),
// so the same context serves Q and Q(sqrt(d)).
class QuadRingCtx final : public Ring {
  public:
    explicit QuadRingCtx(long d);

    RingKind kind() const override { return RingKind::QuadRing; }
    Elem from_int(const Int& v) const override;
    Elem add(const Elem& a, const Elem& b) const override;
    Elem neg(const Elem& a) const override;
    Elem mul(const Elem& a, const Elem& b) const override;
    std::optional<Elem> inv(const Elem& a) const override;
    bool is_field() const override { return true; }  // fractions carried
    std::optional<Int> cardinality() const override { return std::nullopt; }
    std::string str(const Elem& a) const override;
    nlohmann::json elem_to_json(const Elem& a) const override;
    Elem elem_from_json(const nlohmann::json& j) const override;
    nlohmann::json describe() const override;
    bool same_as(const Ring& o) const override;
    Elem random_elem(Rng& rng) const override;

    long d() const { return d_; }
    bool is_plain_integers() const { return d_ == 0; }
    bool is_euclidean() const { return d_ == 0 || d_ == -1; }

    Elem make(Int a, Int b, Int den = 1) const;
    bool is_integral(const Elem& e) const { return e.den == 1; }
    // Norm a^2 - d b^2 of an integral element (a^2 when d == 0).
    Int norm(const Elem& e) const;
    Elem conj(const Elem& e) const;
    // True ring units of Z[theta]: +-1 (d == 0 or d < -1), plus +-i for d == -1.
    bool is_ring_unit(const Elem& e) const;
    // Canonical associate: positive for Z, first-quadrant for Z[i].
    Elem canonical_associate(const Elem& e) const;
    // Exact division of integral elements; nullopt if remainder nonzero.
    std::optional<Elem> divide_exact(const Elem& a, const Elem& b) const;

  private:
    long d_;
};

// Z/(m) (d == 0) or Z[theta]/(m), coordinates normalized into [0, m-1].
class ResidueRingCtx final : public Ring {
  public:
    ResidueRingCtx(long d, Int m);

    RingKind kind() const override { return RingKind::ResidueRing; }
    Elem from_int(const Int& v) const override;
    Elem add(const Elem& a, const Elem& b) const override;
    Elem neg(const Elem& a) const override;
    Elem mul(const Elem& a, const Elem& b) const override;
    std::optional<Elem> inv(const Elem& a) const override;
    bool is_field() const override { return false; }
    std::optional<Int> cardinality() const override;
    std::string str(const Elem& a) const override;
    nlohmann::json elem_to_json(const Elem& a) const override;
    Elem elem_from_json(const nlohmann::json& j) const override;
    nlohmann::json describe() const override;
    bool same_as(const Ring& o) const override;
    Elem random_elem(Rng& rng) const override;

    long d() const { return d_; }
    const Int& m() const { return m_; }
    Elem make(Int a, Int b = 0) const;
    // gcd(norm(lift), m) == 1, the unit criterion of the residue construction.
    bool is_unit_by_norm(const Elem& e) const;

  private:
    long d_;
    Int m_;
};

// Multiplicative order of a nonzero element of a finite field; divides q-1.
Int ff_order(const Ring& field, const Elem& a);

// Random element of exact multiplicative order s (s must divide q-1).
Elem ff_element_of_order(const Ring& field, const Int& s, Rng& rng);

// Smallest primitive element in enumeration order (deterministic).
Elem ff_primitive_element(const Ring& field, long scan_cap);

// Euclidean gcd over Z (d == 0) or Z[i] (d == -1); canonical associate.
Elem quad_gcd(const QuadRingCtx& ctx, const Elem& z1, const Elem& z2);

// Unit test for residue rings: norm of the lift coprime to the modulus.
bool residue_is_unit(const ResidueRingCtx& ctx, const Elem& z);

}  // namespace icrypt
