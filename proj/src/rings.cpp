#include "icrypt/rings.hpp"

#include <algorithm>
#include <sstream>

using nlohmann::json;

namespace icrypt {

Elem Ring::pow(const Elem& a, const Int& e) const {
    if (e < 0) {
        auto ai = inv(a);
        if (!ai) throw EvalError("pow: negative exponent of a non-unit");
        return pow(*ai, -e);
    }
    Elem result = one();
    Elem base = a;
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

std::vector<Elem> Ring::enumerate(long cap) const {
    auto card = cardinality();
    if (!card) throw UnsupportedRingError("enumerate: ring is infinite");
    if (*card > cap) throw ResourceError("enumerate: ring larger than cap");
    std::vector<Elem> out;
    out.reserve(card->get_ui());
    switch (kind()) {
        case RingKind::PrimeField: {
            auto& pf = static_cast<const PrimeFieldCtx&>(*this);
            for (Int v = 0; v < pf.p(); ++v) out.push_back(from_int(v));
            break;
        }
        case RingKind::ExtField: {
            auto& ef = static_cast<const ExtFieldCtx&>(*this);
            int r = ef.r();
            Elem e;
            e.c.assign(r, 0);
            while (true) {
                out.push_back(e);
                int i = 0;
                while (i < r) {
                    e.c[i] += 1;
                    if (e.c[i] < ef.p()) break;
                    e.c[i] = 0;
                    ++i;
                }
                if (i == r) break;
            }
            break;
        }
        case RingKind::ResidueRing: {
            auto& rr = static_cast<const ResidueRingCtx&>(*this);
            if (rr.d() == 0) {
                for (Int v = 0; v < rr.m(); ++v) out.push_back(rr.make(v));
            } else {
                for (Int a = 0; a < rr.m(); ++a)
                    for (Int b = 0; b < rr.m(); ++b) out.push_back(rr.make(a, b));
            }
            break;
        }
        default:
            throw UnsupportedRingError("enumerate: unsupported ring kind");
    }
    return out;
}

// ---------------------------------------------------------------------------
// PrimeFieldCtx

PrimeFieldCtx::PrimeFieldCtx(Int p) : p_(std::move(p)) {
    if (!is_prime(p_)) throw ParamError("PrimeFieldCtx: modulus is not prime");
}

Elem PrimeFieldCtx::from_int(const Int& v) const { return {{mod_floor(v, p_)}, 1}; }
Elem PrimeFieldCtx::add(const Elem& a, const Elem& b) const {
    return {{mod_floor(a.c[0] + b.c[0], p_)}, 1};
}
Elem PrimeFieldCtx::neg(const Elem& a) const { return {{mod_floor(-a.c[0], p_)}, 1}; }
Elem PrimeFieldCtx::mul(const Elem& a, const Elem& b) const {
    return {{mod_floor(a.c[0] * b.c[0], p_)}, 1};
}
std::optional<Elem> PrimeFieldCtx::inv(const Elem& a) const {
    if (a.c[0] == 0) return std::nullopt;
    auto [g, x, y] = ext_gcd(a.c[0], p_);
    return Elem{{mod_floor(x, p_)}, 1};
}
std::string PrimeFieldCtx::str(const Elem& a) const { return a.c[0].get_str(); }
json PrimeFieldCtx::elem_to_json(const Elem& a) const { return a.c[0].get_str(); }
Elem PrimeFieldCtx::elem_from_json(const json& j) const {
    return from_int(Int(j.get<std::string>()));
}
json PrimeFieldCtx::describe() const { return {{"kind", "prime-field"}, {"p", p_.get_str()}}; }
bool PrimeFieldCtx::same_as(const Ring& o) const {
    auto* q = dynamic_cast<const PrimeFieldCtx*>(&o);
    return q && q->p_ == p_;
}
Elem PrimeFieldCtx::random_elem(Rng& rng) const { return {{rng.below(p_)}, 1}; }

// ---------------------------------------------------------------------------
// ExtFieldCtx

namespace {

using Poly = std::vector<Int>;  // coefficients, low degree first

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

Poly poly_mod_p(Poly p, const Int& prime) {
    for (auto& c : p) c = mod_floor(c, prime);
    return poly_trim(std::move(p));
}

Poly poly_mul(const Poly& a, const Poly& b, const Int& prime) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return poly_mod_p(std::move(out), prime);
}

Poly poly_rem(Poly a, const Poly& m, const Int& prime) {
    // m monic after scaling by lead inverse
    Poly mm = m;
    Int lead_inv = ext_gcd(mm.back(), prime).x;
    a = poly_mod_p(std::move(a), prime);
    while (a.size() >= mm.size() && !a.empty()) {
        Int f = mod_floor(a.back() * lead_inv, prime);
        std::size_t shift = a.size() - mm.size();
        for (std::size_t i = 0; i < mm.size(); ++i)
            a[i + shift] = mod_floor(a[i + shift] - f * mm[i], prime);
        a = poly_trim(std::move(a));
    }
    return a;
}

// Extended Euclid in GF(p)[x]: returns (g, s) with s*a == g (mod m).
std::pair<Poly, Poly> poly_half_gcd(Poly a, Poly m, const Int& prime) {
    Poly r0 = std::move(m), r1 = std::move(a);
    Poly s0 = {}, s1 = {Int(1)};
    while (!r1.empty()) {
        // division r0 = q*r1 + r
        Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
        Poly rem = r0;
        Int lead_inv = ext_gcd(r1.back(), prime).x;
        while (rem.size() >= r1.size() && !rem.empty()) {
            Int f = mod_floor(rem.back() * lead_inv, prime);
            std::size_t shift = rem.size() - r1.size();
            q[shift] = f;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[i + shift] = mod_floor(rem[i + shift] - f * r1[i], prime);
            rem = poly_trim(std::move(rem));
        }
        q = poly_trim(std::move(q));
        Poly s2 = s0;  // s2 = s0 - q*s1
        Poly qs = poly_mul(q, s1, prime);
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = mod_floor(s2[i] - qs[i], prime);
        s2 = poly_trim(std::move(s2));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return {r0, s0};
}

Poly poly_powmod_x(const Int& exponent_base, int times, const Poly& modulus, const Int& prime) {
    // x^(prime^times) mod modulus, by iterated Frobenius power
    Poly x = {Int(0), Int(1)};
    Poly acc = x;
    for (int t = 0; t < times; ++t) {
        // acc = acc^prime mod modulus
        Poly result = {Int(1)};
        Poly base = acc;
        Int k = exponent_base;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) result = poly_rem(poly_mul(result, base, prime), modulus, prime);
            base = poly_rem(poly_mul(base, base, prime), modulus, prime);
            k >>= 1;
        }
        acc = result;
    }
    return acc;
}

bool poly_is_irreducible(const Poly& f, const Int& prime) {
    int r = static_cast<int>(f.size()) - 1;
    if (r < 1) return false;
    // x^(p^r) == x mod f
    Poly xr = poly_powmod_x(prime, r, f, prime);
    Poly x = {Int(0), Int(1)};
    if (poly_trim(xr) != x) {
        // subtract x and compare to zero
        Poly diff = xr;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = mod_floor(diff[1] - 1, prime);
        if (!poly_trim(std::move(diff)).empty()) return false;
    }
    for (const auto& [t, e] : factor_map(Int(r))) {
        int sub = r / static_cast<int>(t.get_si());
        Poly xs = poly_powmod_x(prime, sub, f, prime);
        // gcd(x^(p^(r/t)) - x, f) must be constant
        Poly diff = xs;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = mod_floor(diff[1] - 1, prime);
        diff = poly_trim(std::move(diff));
        auto [g, s] = poly_half_gcd(diff, f, prime);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace

ExtFieldCtx::ExtFieldCtx(Int p, int r, std::vector<Int> modulus)
    : p_(std::move(p)), r_(r), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw ParamError("ExtFieldCtx: p is not prime");
    if (r_ < 1 || static_cast<int>(modulus_.size()) != r_ + 1)
        throw ParamError("ExtFieldCtx: modulus degree mismatch");
    for (auto& c : modulus_) c = mod_floor(c, p_);
    if (modulus_.back() != 1) throw ParamError("ExtFieldCtx: modulus must be monic");
    if (!poly_is_irreducible(modulus_, p_))
        throw ParamError("ExtFieldCtx: modulus is reducible");
}

std::shared_ptr<const ExtFieldCtx> ExtFieldCtx::random(const Int& p, int r, Rng& rng) {
    if (r < 1 || r > 8) throw ParamError("extension degree out of configured range");
    while (true) {
        std::vector<Int> f(r + 1);
        f[r] = 1;
        for (int i = 0; i < r; ++i) f[i] = rng.below(p);
        if (poly_is_irreducible(f, p)) return std::make_shared<ExtFieldCtx>(p, r, f);
    }
}

Elem ExtFieldCtx::from_int(const Int& v) const {
    Elem e;
    e.c.assign(r_, 0);
    e.c[0] = mod_floor(v, p_);
    return e;
}
Elem ExtFieldCtx::add(const Elem& a, const Elem& b) const {
    Elem e;
    e.c.resize(r_);
    for (int i = 0; i < r_; ++i) e.c[i] = mod_floor(a.c[i] + b.c[i], p_);
    return e;
}
Elem ExtFieldCtx::neg(const Elem& a) const {
    Elem e;
    e.c.resize(r_);
    for (int i = 0; i < r_; ++i) e.c[i] = mod_floor(-a.c[i], p_);
    return e;
}
Elem ExtFieldCtx::mul(const Elem& a, const Elem& b) const {
    Poly prod = poly_rem(poly_mul(a.c, b.c, p_), modulus_, p_);
    Elem e;
    e.c = std::move(prod);
    e.c.resize(r_, 0);
    return e;
}
std::optional<Elem> ExtFieldCtx::inv(const Elem& a) const {
    Poly at = poly_trim(a.c);
    if (at.empty()) return std::nullopt;
    auto [g, s] = poly_half_gcd(at, modulus_, p_);
    if (g.size() != 1) return std::nullopt;  // cannot happen with irreducible modulus
    Int ginv = ext_gcd(g[0], p_).x;
    Poly out = s;
    for (auto& c : out) c = mod_floor(c * ginv, p_);
    out = poly_rem(std::move(out), modulus_, p_);
    Elem e;
    e.c = std::move(out);
    e.c.resize(r_, 0);
    return e;
}
std::optional<Int> ExtFieldCtx::cardinality() const {
    Int q;
    mpz_pow_ui(q.get_mpz_t(), p_.get_mpz_t(), r_);
    return q;
}
std::string ExtFieldCtx::str(const Elem& a) const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) os << (i ? "," : "") << a.c[i].get_str();
    os << "]";
    return os.str();
}
json ExtFieldCtx::elem_to_json(const Elem& a) const {
    json arr = json::array();
    for (const auto& c : a.c) arr.push_back(c.get_str());
    return arr;
}
Elem ExtFieldCtx::elem_from_json(const json& j) const {
    Elem e;
    for (const auto& c : j) e.c.emplace_back(c.get<std::string>());
    if (static_cast<int>(e.c.size()) != r_) throw ParamError("element arity mismatch");
    for (auto& c : e.c) c = mod_floor(c, p_);
    return e;
}
json ExtFieldCtx::describe() const {
    json mod = json::array();
    for (const auto& c : modulus_) mod.push_back(c.get_str());
    return {{"kind", "ext-field"}, {"p", p_.get_str()}, {"r", r_}, {"modulusPoly", mod}};
}
bool ExtFieldCtx::same_as(const Ring& o) const {
    auto* q = dynamic_cast<const ExtFieldCtx*>(&o);
    return q && q->p_ == p_ && q->r_ == r_ && q->modulus_ == modulus_;
}
Elem ExtFieldCtx::random_elem(Rng& rng) const {
    Elem e;
    e.c.resize(r_);
    for (int i = 0; i < r_; ++i) e.c[i] = rng.below(p_);
    return e;
}

// ---------------------------------------------------------------------------
// QuadRingCtx

QuadRingCtx::QuadRingCtx(long d) : d_(d) {
    if (d_ == 1) throw ParamError("QuadRingCtx: d must not be 1");
    if (d_ != 0) {
        for (const auto& [p, e] : factor_map(Int(std::abs(d_))))
            if (e > 1) throw ParamError("QuadRingCtx: d must be square-free");
    }
}

Elem QuadRingCtx::make(Int a, Int b, Int den) const {
    if (den == 0) throw DomainError("zero denominator");
    if (d_ == 0 && b != 0) throw DomainError("theta coordinate in plain integer ring");
    if (den < 0) {
        a = -a;
        b = -b;
        den = -den;
    }
    Int g = gcd(gcd(a, b), den);
    if (g > 1) {
        a /= g;
        b /= g;
        den /= g;
    }
    return {{a, b}, den};
}

Elem QuadRingCtx::from_int(const Int& v) const { return make(v, 0); }
Elem QuadRingCtx::add(const Elem& x, const Elem& y) const {
    return make(x.c[0] * y.den + y.c[0] * x.den, x.c[1] * y.den + y.c[1] * x.den, x.den * y.den);
}
Elem QuadRingCtx::neg(const Elem& x) const { return {{-x.c[0], -x.c[1]}, x.den}; }
Elem QuadRingCtx::mul(const Elem& x, const Elem& y) const {
    return make(x.c[0] * y.c[0] + Int(d_) * x.c[1] * y.c[1], x.c[0] * y.c[1] + x.c[1] * y.c[0],
                x.den * y.den);
}
std::optional<Elem> QuadRingCtx::inv(const Elem& x) const {
    Int nrm = x.c[0] * x.c[0] - Int(d_) * x.c[1] * x.c[1];
    if (nrm == 0) {
        if (x.c[0] == 0 && x.c[1] == 0) return std::nullopt;
        // d > 0 allows nonzero elements of zero norm only when d is a square,
        // which the square-free check excludes.
        return std::nullopt;
    }
    return make(x.c[0] * x.den, -x.c[1] * x.den, nrm);
}
Int QuadRingCtx::norm(const Elem& e) const {
    if (e.den != 1) throw DomainError("norm of a non-integral element");
    return e.c[0] * e.c[0] - Int(d_) * e.c[1] * e.c[1];
}
Elem QuadRingCtx::conj(const Elem& e) const { return {{e.c[0], -e.c[1]}, e.den}; }
bool QuadRingCtx::is_ring_unit(const Elem& e) const {
    if (e.den != 1) return false;
    Int n = norm(e);
    return n == 1 || n == -1;
}
Elem QuadRingCtx::canonical_associate(const Elem& e) const {
    if (e.den != 1) throw DomainError("canonical_associate of a non-integral element");
    if (e.c[0] == 0 && e.c[1] == 0) return e;
    if (d_ == -1) {
        Elem cur = e;
        Elem i_unit = make(0, 1);
        for (int k = 0; k < 4; ++k) {
            if (cur.c[0] > 0 && cur.c[1] >= 0) return cur;
            cur = mul(cur, i_unit);
        }
        throw DomainError("no canonical associate found");  // unreachable
    }
    // +-1 are the only units otherwise.
    Elem cur = e;
    if (cur.c[0] < 0 || (cur.c[0] == 0 && cur.c[1] < 0)) cur = neg(cur);
    return cur;
}
std::optional<Elem> QuadRingCtx::divide_exact(const Elem& a, const Elem& b) const {
    if (a.den != 1 || b.den != 1) throw DomainError("divide_exact needs integral elements");
    if (b.c[0] == 0 && b.c[1] == 0) throw DomainError("division by zero");
    auto q = mul(a, *inv(b));
    if (q.den != 1) return std::nullopt;
    return q;
}
std::string QuadRingCtx::str(const Elem& a) const {
    std::ostringstream os;
    os << a.c[0].get_str();
    if (a.c[1] != 0) os << (a.c[1] > 0 ? "+" : "") << a.c[1].get_str() << "t";
    if (a.den != 1) os << "/" << a.den.get_str();
    return os.str();
}
json QuadRingCtx::elem_to_json(const Elem& a) const {
    return {{"a", a.c[0].get_str()}, {"b", a.c[1].get_str()}, {"den", a.den.get_str()}};
}
Elem QuadRingCtx::elem_from_json(const json& j) const {
    return make(Int(j.at("a").get<std::string>()), Int(j.at("b").get<std::string>()),
                Int(j.at("den").get<std::string>()));
}
json QuadRingCtx::describe() const { return {{"kind", "quad-ring"}, {"d", d_}}; }
bool QuadRingCtx::same_as(const Ring& o) const {
    auto* q = dynamic_cast<const QuadRingCtx*>(&o);
    return q && q->d_ == d_;
}
Elem QuadRingCtx::random_elem(Rng& rng) const {
    Int a = rng.below(41) - 20;
    Int b = d_ == 0 ? Int(0) : Int(rng.below(41) - 20);
    return make(a, b);
}

// ---------------------------------------------------------------------------
// ResidueRingCtx

ResidueRingCtx::ResidueRingCtx(long d, Int m) : d_(d), m_(std::move(m)) {
    if (m_ <= 1) throw ParamError("ResidueRingCtx: modulus must be > 1");
    if (d_ == 1) throw ParamError("ResidueRingCtx: d must not be 1");
}

Elem ResidueRingCtx::make(Int a, Int b) const {
    if (d_ == 0) return {{mod_floor(a, m_)}, 1};
    return {{mod_floor(a, m_), mod_floor(b, m_)}, 1};
}
Elem ResidueRingCtx::from_int(const Int& v) const { return make(v); }
Elem ResidueRingCtx::add(const Elem& x, const Elem& y) const {
    if (d_ == 0) return make(x.c[0] + y.c[0]);
    return make(x.c[0] + y.c[0], x.c[1] + y.c[1]);
}
Elem ResidueRingCtx::neg(const Elem& x) const {
    if (d_ == 0) return make(-x.c[0]);
    return make(-x.c[0], -x.c[1]);
}
Elem ResidueRingCtx::mul(const Elem& x, const Elem& y) const {
    if (d_ == 0) return make(x.c[0] * y.c[0]);
    return make(x.c[0] * y.c[0] + Int(d_) * x.c[1] * y.c[1], x.c[0] * y.c[1] + x.c[1] * y.c[0]);
}
bool ResidueRingCtx::is_unit_by_norm(const Elem& e) const {
    Int nrm = d_ == 0 ? e.c[0] : e.c[0] * e.c[0] - Int(d_) * e.c[1] * e.c[1];
    return gcd(mod_floor(nrm, m_), m_) == 1;
}
std::optional<Elem> ResidueRingCtx::inv(const Elem& x) const {
    Int nrm = d_ == 0 ? x.c[0] : x.c[0] * x.c[0] - Int(d_) * x.c[1] * x.c[1];
    nrm = mod_floor(nrm, m_);
    auto [g, s, t] = nrm == 0 ? ExtGcd{m_, 0, 1} : ext_gcd(nrm, m_);
    if (g != 1) return std::nullopt;
    if (d_ == 0) return make(s);
    // (a + b theta)(a - b theta) = norm, so inverse = conj * norm^{-1}.
    return make(x.c[0] * s, -x.c[1] * s);
}
std::optional<Int> ResidueRingCtx::cardinality() const { return d_ == 0 ? m_ : m_ * m_; }
std::string ResidueRingCtx::str(const Elem& a) const {
    if (d_ == 0) return a.c[0].get_str();
    std::ostringstream os;
    os << a.c[0].get_str();
    if (a.c[1] != 0) os << "+" << a.c[1].get_str() << "t";
    return os.str();
}
json ResidueRingCtx::elem_to_json(const Elem& a) const {
    if (d_ == 0) return a.c[0].get_str();
    return {{"a", a.c[0].get_str()}, {"b", a.c[1].get_str()}, {"den", "1"}};
}
Elem ResidueRingCtx::elem_from_json(const json& j) const {
    if (d_ == 0) return make(Int(j.get<std::string>()));
    return make(Int(j.at("a").get<std::string>()), Int(j.at("b").get<std::string>()));
}
json ResidueRingCtx::describe() const {
    return {{"kind", "residue-ring"}, {"d", d_}, {"m", m_.get_str()}};
}
bool ResidueRingCtx::same_as(const Ring& o) const {
    auto* q = dynamic_cast<const ResidueRingCtx*>(&o);
    return q && q->d_ == d_ && q->m_ == m_;
}
Elem ResidueRingCtx::random_elem(Rng& rng) const {
    if (d_ == 0) return make(rng.below(m_));
    return make(rng.below(m_), rng.below(m_));
}

// ---------------------------------------------------------------------------
// Ring::from_json

RingPtr Ring::from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "prime-field") return std::make_shared<PrimeFieldCtx>(Int(j.at("p").get<std::string>()));
    if (kind == "ext-field") {
        std::vector<Int> mod;
        for (const auto& c : j.at("modulusPoly")) mod.emplace_back(c.get<std::string>());
        return std::make_shared<ExtFieldCtx>(Int(j.at("p").get<std::string>()), j.at("r").get<int>(),
                                             mod);
    }
    if (kind == "quad-ring") return std::make_shared<QuadRingCtx>(j.at("d").get<long>());
    if (kind == "residue-ring")
        return std::make_shared<ResidueRingCtx>(j.at("d").get<long>(),
                                                Int(j.at("m").get<std::string>()));
    throw ParamError("unknown ring kind: " + kind);
}

// ---------------------------------------------------------------------------
// Field order helpers

Int ff_order(const Ring& field, const Elem& a) {
    if (!field.is_field()) throw UnsupportedRingError("ff_order: not a field context");
    if (field.is_zero(a)) throw DomainError("ff_order: zero element");
    auto qopt = field.cardinality();
    if (!qopt) throw UnsupportedRingError("ff_order: infinite field");
    Int k = *qopt - 1;
    for (const auto& [p, e] : factor_map(k)) {
        for (int i = 0; i < e; ++i) {
            if (field.is_one(field.pow(a, k / p)))
                k /= p;
            else
                break;
        }
    }
    return k;
}

Elem ff_element_of_order(const Ring& field, const Int& s, Rng& rng) {
    auto qopt = field.cardinality();
    if (!qopt) throw UnsupportedRingError("ff_element_of_order: infinite field");
    Int group = *qopt - 1;
    if (s < 1 || group % s != 0) throw ParamError("ff_element_of_order: s does not divide q-1");
    if (s == 1) return field.one();
    while (true) {
        Elem a = field.random_elem(rng);
        if (field.is_zero(a)) continue;
        Elem cand = field.pow(a, group / s);
        if (ff_order(field, cand) == s) return cand;
    }
}

Elem ff_primitive_element(const Ring& field, long scan_cap) {
    auto qopt = field.cardinality();
    if (!qopt) throw UnsupportedRingError("primitive element: infinite field");
    if (*qopt > scan_cap) throw ResourceError("primitive element scan over cap");
    Int group = *qopt - 1;
    for (const Elem& e : field.enumerate(scan_cap)) {
        if (field.is_zero(e)) continue;
        if (ff_order(field, e) == group) return e;
    }
    throw NotFoundError("no primitive element found");  // unreachable for true fields
}

// ---------------------------------------------------------------------------
// Euclidean gcd over Z and Z[i]

Elem quad_gcd(const QuadRingCtx& ctx, const Elem& z1, const Elem& z2) {
    if (!ctx.is_euclidean())
        throw UnsupportedRingError("quad_gcd: ring is not Euclidean (d not in {0, -1})");
    if (z1.den != 1 || z2.den != 1) throw DomainError("quad_gcd: non-integral inputs");
    Elem a = z1, b = z2;
    if (ctx.is_zero(a) && ctx.is_zero(b)) throw DomainError("quad_gcd(0, 0)");
    while (!ctx.is_zero(b)) {
        // Nearest-integer quotient keeps the remainder norm strictly shrinking.
        Elem q_exact = ctx.mul(a, *ctx.inv(b));  // element of the fraction field
        auto round_div = [](const Int& num, const Int& den) {
            Int two_num = 2 * num + den;  // floor((num/den) + 1/2)
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), two_num.get_mpz_t(), Int(2 * den).get_mpz_t());
            return q;
        };
        Elem q = ctx.make(round_div(q_exact.c[0], q_exact.den), round_div(q_exact.c[1], q_exact.den));
        Elem r = ctx.sub(a, ctx.mul(q, b));
        a = b;
        b = r;
    }
    return ctx.canonical_associate(a);
}

bool residue_is_unit(const ResidueRingCtx& ctx, const Elem& z) { return ctx.is_unit_by_norm(z); }

}  // namespace icrypt
