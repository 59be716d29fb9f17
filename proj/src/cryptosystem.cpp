#include "icrypt/cryptosystem.hpp"

#include <algorithm>

using nlohmann::json;

namespace icrypt {

void PublicKey::validate() const {
    if (n < 1 || generators.empty()) throw ParamError("PublicKey: empty");
    s.validate();
    for (const auto& g : generators) {
        if (g.n != n) throw ParamError("PublicKey: generator size mismatch");
        mat_inv(g);  // throws on non-unit determinant
    }
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (!(mat_mul(generators[i], generators[j]) == mat_mul(generators[j], generators[i])))
                throw ParamError("PublicKey: generators do not commute");
    for (const auto& v : s.vecs)
        if (static_cast<int>(v.size()) != n) throw ParamError("PublicKey: message length mismatch");
}

json PublicKey::to_json() const {
    json gens = json::array();
    for (const auto& g : generators) gens.push_back(g.to_json());
    json msgs = json::array();
    for (const auto& v : s.vecs) {
        json row = json::array();
        for (const auto& e : v) row.push_back(ctx->elem_to_json(e));
        msgs.push_back(row);
    }
    return {{"scheme", scheme}, {"ring", ctx->describe()}, {"n", n}, {"generators", gens},
            {"S", msgs}};
}

PublicKey PublicKey::from_json(const json& j) {
    PublicKey pk;
    pk.scheme = j.at("scheme").get<std::string>();
    pk.ctx = Ring::from_json(j.at("ring"));
    pk.n = j.at("n").get<int>();
    for (const auto& g : j.at("generators")) pk.generators.push_back(Matrix::from_json(pk.ctx, g));
    for (const auto& row : j.at("S")) {
        std::vector<Elem> v;
        for (const auto& e : row) v.push_back(pk.ctx->elem_from_json(e));
        pk.s.vecs.push_back(std::move(v));
    }
    return pk;
}

std::string PublicKey::fingerprint() const {
    const std::string dump = to_json().dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json PrivateKey::to_json() const {
    json tab = json::array();
    for (const auto& e : table) tab.push_back(ctx->elem_to_json(e));
    return {{"P", p.to_json()}, {"Pinv", p_inv.to_json()}, {"exponents", exponents},
            {"table", tab}};
}

PrivateKey PrivateKey::from_json(const RingPtr& ctx, const json& j) {
    PrivateKey sk;
    sk.ctx = ctx;
    sk.p = Matrix::from_json(ctx, j.at("P"));
    sk.p_inv = Matrix::from_json(ctx, j.at("Pinv"));
    sk.exponents = j.at("exponents").get<Exponents>();
    for (const auto& e : j.at("table")) sk.table.push_back(ctx->elem_from_json(e));
    return sk;
}

json KeyPair::to_json() const {
    json j = pub.to_json();
    j["private"] = priv.to_json();
    return j;
}

KeyPair KeyPair::from_json(const json& j) {
    KeyPair kp;
    kp.pub = PublicKey::from_json(j);
    kp.priv = PrivateKey::from_json(kp.pub.ctx, j.at("private"));
    return kp;
}

json Ciphertext::to_json(const Ring& ctx) const {
    json arr = json::array();
    for (const auto& e : u) arr.push_back(ctx.elem_to_json(e));
    return {{"u", arr}, {"keyFingerprint", key_fingerprint}};
}

Ciphertext Ciphertext::from_json(const RingPtr& ctx, const json& j) {
    Ciphertext ct;
    for (const auto& e : j.at("u")) ct.u.push_back(ctx->elem_from_json(e));
    ct.key_fingerprint = j.value("keyFingerprint", "");
    return ct;
}

namespace {

// conjugates diagonal generators and messages, fills the private key
KeyPair assemble(const std::string& scheme, const RingPtr& ctx, int n,
                 const std::vector<std::vector<Elem>>& diag_gens,
                 const std::vector<std::vector<Elem>>& messages, const Exponents& exponents,
                 const Matrix& p) {
    DiagGroup g{ctx, n, diag_gens};
    g.validate();
    if (!monomial_is_invariant(g, exponents))
        throw DomainError("keygen: planted exponents are not invariant");

    KeyPair kp;
    kp.pub.scheme = scheme;
    kp.pub.ctx = ctx;
    kp.pub.n = n;
    kp.priv.ctx = ctx;
    kp.priv.p = p;
    kp.priv.p_inv = mat_inv(p);
    kp.priv.exponents = exponents;
    for (const auto& dg : diag_gens)
        kp.pub.generators.push_back(conjugate(p, Matrix::diagonal(ctx, dg)));
    for (const auto& w : messages) {
        kp.pub.s.vecs.push_back(mat_apply(p, w));
        kp.priv.table.push_back(eval_monomial(*ctx, exponents, w));
    }
    for (std::size_t i = 0; i < kp.priv.table.size(); ++i)
        for (std::size_t j = i + 1; j < kp.priv.table.size(); ++j)
            if (kp.priv.table[i] == kp.priv.table[j])
                throw DomainError("keygen: invariant does not separate the message set");
    kp.pub.validate();
    return kp;
}

RingPtr make_field(const Int& p, int ext_deg, Rng& rng) {
    if (ext_deg <= 1) return std::make_shared<PrimeFieldCtx>(p);
    return ExtFieldCtx::random(p, ext_deg, rng);
}

}  // namespace

KeyPair keygen_ff_cyclic(const Int& p, int ext_deg, const Int& s, const Int& b,
                         int message_count, const std::optional<Matrix>& P, Rng& rng) {
    RingPtr f = make_field(p, ext_deg, rng);
    Int q = *f->cardinality();
    if (!is_prime(s)) throw ParamError("s must be prime");
    if ((q - 1) % s != 0) throw ParamError("s does not divide q-1");
    if (b % s == 0) throw ParamError("b divisible by s");
    if (message_count < 2 || Int(message_count) > s)
        throw ParamError("message count must be in [2, s]");

    Elem alpha = ff_element_of_order(*f, s, rng);
    Elem beta = f->pow(alpha, b);
    std::vector<std::vector<Elem>> messages;
    for (int i = 0; i < message_count; ++i) messages.push_back({f->one(), f->pow(alpha, i)});
    Int d1 = mod_floor(-b, s);
    Exponents d = {d1.get_si(), 1};
    Matrix pm = P ? *P : Matrix::identity(f, 2);
    return assemble("ff-cyclic", f, 2, {{alpha, beta}}, messages, d, pm);
}

KeyPair keygen_ff_noncyclic(const Int& p, int ext_deg, const Int& s1, const Int& s2,
                            const Int& b1, const Int& b2, int message_count,
                            const std::optional<Matrix>& P, Rng& rng) {
    RingPtr f = make_field(p, ext_deg, rng);
    Int q = *f->cardinality();
    if (s1 == s2) throw ParamError("orders must differ");
    for (const Int& s : {s1, s2}) {
        if (!is_prime(s)) throw ParamError("orders must be prime");
        if ((q - 1) % s != 0) throw ParamError("order does not divide q-1");
    }
    if (b1 % s1 == 0 || b2 % s2 == 0) throw ParamError("secret exponent divisible by order");
    if (message_count < 2 || Int(message_count) > s1 * s2)
        throw ParamError("message count out of range");

    Elem a1 = ff_element_of_order(*f, s1, rng);
    Elem a2 = ff_element_of_order(*f, s2, rng);
    std::vector<std::vector<Elem>> gens = {{a1, f->pow(a1, b1)}, {a2, f->pow(a2, b2)}};
    Elem step = f->mul(a1, a2);  // order s1*s2
    std::vector<std::vector<Elem>> messages;
    for (int i = 0; i < message_count; ++i) messages.push_back({f->one(), f->pow(step, i)});

    CongruenceSystem sys{{{1, mod_floor(b1, s1)}, {1, mod_floor(b2, s2)}}, {s1, s2}};
    KernelLattice lat = solve_congruence_kernel(sys);
    lat.ambient_moduli.assign(2, q - 1);
    MessageSet ms{messages};
    Exponents d = find_separating_invariant(lat, f, ms, 3);
    Matrix pm = P ? *P : Matrix::identity(f, 2);
    return assemble("ff-noncyclic", f, 2, gens, messages, d, pm);
}

KeyPair keygen_number_ring(long d, const std::vector<Elem>& seed_set,
                           const std::vector<long>& q_set, int n, const Exponents& e,
                           int gen_count, int message_count, const std::optional<Matrix>& P,
                           Rng& rng) {
    auto ctx = std::make_shared<QuadRingCtx>(d);
    if (static_cast<int>(e.size()) != n) throw ParamError("exponent arity mismatch");
    if (e.back() != 1) throw ParamError("last exponent must be 1");
    long esum = 0;
    for (long x : e) {
        if (x < 1) throw ParamError("zero or negative exponent component");
        esum += x;
    }
    if (esum < n) throw ParamError("exponent sum below dimension");
    if (seed_set.empty() || q_set.empty()) throw ParamError("empty seed or exponent set");
    for (const auto& s : seed_set)
        if (!ctx->is_integral(s) || ctx->is_zero(s) || ctx->is_ring_unit(s))
            throw ParamError("seeds must be integral non-units");
    if (gen_count < 1 || message_count < 2) throw ParamError("bad counts");

    std::vector<std::vector<Elem>> diag_gens;
    for (int i = 0; i < gen_count; ++i) {
        std::vector<Elem> entries;
        for (int j = 0; j < n - 1; ++j) {
            Elem a = ctx->one();
            for (const auto& seed : seed_set) {
                long b = q_set[static_cast<std::size_t>(rng.range(0, static_cast<long>(q_set.size()) - 1))];
                if (b != 0) a = ctx->mul(a, ctx->pow(seed, Int(b)));
            }
            entries.push_back(a);
        }
        Elem last = ctx->one();
        for (int j = 0; j < n - 1; ++j) last = ctx->mul(last, ctx->pow(entries[j], Int(-e[j])));
        entries.push_back(last);
        diag_gens.push_back(std::move(entries));
    }

    Matrix pm = P ? *P : random_unimodular(ctx, n, rng);

    std::vector<std::vector<Elem>> messages;
    std::vector<Elem> values;
    for (int attempts = 0; static_cast<int>(messages.size()) < message_count; ++attempts) {
        if (attempts > 1000) throw NoSolutionError("message sampling exhausted");
        std::vector<Elem> w(n);
        for (auto& x : w) x = ctx->from_int(rng.range(1, 9));
        Elem val = eval_monomial(*ctx, e, w);
        if (std::find(values.begin(), values.end(), val) != values.end()) continue;
        values.push_back(val);
        messages.push_back(std::move(w));
    }
    return assemble("number-ring", ctx, n, diag_gens, messages, e, pm);
}

KeyPair keygen_finite_ring(long d, const Int& m, int n, const Exponents& e, int gen_count,
                           int message_count, const std::optional<Matrix>& P, Rng& rng) {
    auto ctx = std::make_shared<ResidueRingCtx>(d, m);
    if (static_cast<int>(e.size()) != n) throw ParamError("exponent arity mismatch");
    if (e.back() != 1) throw ParamError("last exponent must be 1");
    long esum = 0;
    for (long x : e) {
        if (x < 1) throw ParamError("zero or negative exponent component");
        esum += x;
    }
    if (esum < n) throw ParamError("exponent sum below dimension");
    if (gen_count < 1 || message_count < 2) throw ParamError("bad counts");

    auto random_unit = [&]() {
        for (int t = 0; t < 10000; ++t) {
            Elem x = ctx->random_elem(rng);
            if (ctx->is_unit_by_norm(x) && !ctx->is_one(x)) return x;
        }
        throw NoSolutionError("no unit found in the residue ring");
    };

    std::vector<std::vector<Elem>> diag_gens;
    for (int i = 0; i < gen_count; ++i) {
        std::vector<Elem> entries;
        for (int j = 0; j < n - 1; ++j) entries.push_back(random_unit());
        Elem prod = ctx->one();
        for (int j = 0; j < n - 1; ++j) prod = ctx->mul(prod, ctx->pow(entries[j], Int(e[j])));
        entries.push_back(*ctx->inv(prod));
        diag_gens.push_back(std::move(entries));
    }

    Matrix pm = P ? *P : random_unimodular(ctx, n, rng);

    std::vector<std::vector<Elem>> messages;
    std::vector<Elem> values;
    for (int attempts = 0; static_cast<int>(messages.size()) < message_count; ++attempts) {
        if (attempts > 10000) throw NoSolutionError("message sampling exhausted");
        std::vector<Elem> w(n);
        for (auto& x : w) x = ctx->random_elem(rng);
        Elem val = eval_monomial(*ctx, e, w);
        if (std::find(values.begin(), values.end(), val) != values.end()) continue;
        values.push_back(val);
        messages.push_back(std::move(w));
    }
    return assemble("finite-ring", ctx, n, diag_gens, messages, e, pm);
}

Ciphertext encrypt(const PublicKey& pk, int msg_index, int word_length, Rng& rng) {
    const int m = static_cast<int>(pk.generators.size());
    if (msg_index < 0 || msg_index >= pk.s.r()) throw ParamError("message index out of range");
    if (word_length < m) throw ParamError("word length below generator count");
    // every generator at least once, the rest uniform
    std::vector<int> word;
    for (int i = 0; i < m; ++i) word.push_back(i);
    for (int i = m; i < word_length; ++i) word.push_back(static_cast<int>(rng.range(0, m - 1)));
    for (int i = static_cast<int>(word.size()) - 1; i > 0; --i)
        std::swap(word[i], word[rng.range(0, i)]);
    Matrix h = Matrix::identity(pk.ctx, pk.n);
    for (int i : word) h = mat_mul(h, pk.generators[i]);
    Ciphertext ct;
    ct.u = mat_apply(h, pk.s.vecs[msg_index]);
    ct.key_fingerprint = pk.fingerprint();
    return ct;
}

Ciphertext encrypt(const PublicKey& pk, int msg_index, Rng& rng) {
    return encrypt(pk, msg_index, 2 * static_cast<int>(pk.generators.size()), rng);
}

int decrypt(const PrivateKey& sk, const Ciphertext& ct) {
    if (ct.u.size() != static_cast<std::size_t>(sk.p_inv.n))
        throw InvalidCiphertextError("ciphertext dimension mismatch");
    std::vector<Elem> w = mat_apply(sk.p_inv, ct.u);
    Elem val;
    try {
        val = eval_monomial(*sk.ctx, sk.exponents, w);
    } catch (const EvalError&) {
        throw InvalidCiphertextError("invariant undefined on this ciphertext");
    }
    int found = -1;
    for (std::size_t i = 0; i < sk.table.size(); ++i) {
        if (sk.table[i] == val) {
            if (found >= 0) throw InvalidCiphertextError("ambiguous ciphertext");
            found = static_cast<int>(i);
        }
    }
    if (found < 0) throw InvalidCiphertextError("no matching message value");
    return found;
}

Rat expansion_ratio(const PublicKey& pk) {
    if (pk.s.r() < 2) throw ParamError("need at least 2 messages");
    auto card = pk.ctx->cardinality();
    if (!card) throw UnsupportedRingError("expansion ratio needs a finite ring");
    long num = pk.n * bit_length(*card - 1);
    long den = bit_length(Int(pk.s.r())) - 1;
    Rat ratio(num, den);
    ratio.canonicalize();
    return ratio;
}

std::vector<int> encode_blocks(const std::vector<unsigned char>& bytes, int r) {
    if (r < 2) throw ParamError("need at least 2 messages");
    const int k = static_cast<int>(bit_length(Int(r)) - 1);  // bits per block
    std::vector<int> out;
    int acc = 0, bits = 0;
    for (unsigned char byte : bytes) {
        for (int i = 7; i >= 0; --i) {
            acc = (acc << 1) | ((byte >> i) & 1);
            if (++bits == k) {
                out.push_back(acc);
                acc = 0;
                bits = 0;
            }
        }
    }
    if (bits > 0) out.push_back(acc << (k - bits));
    return out;
}

std::vector<unsigned char> decode_blocks(const std::vector<int>& indices, int r,
                                         std::size_t byte_count) {
    const int k = static_cast<int>(bit_length(Int(r)) - 1);
    std::vector<unsigned char> out;
    int acc = 0, bits = 0;
    for (int idx : indices) {
        for (int i = k - 1; i >= 0; --i) {
            acc = (acc << 1) | ((idx >> i) & 1);
            if (++bits == 8) {
                out.push_back(static_cast<unsigned char>(acc));
                acc = 0;
                bits = 0;
                if (out.size() == byte_count) return out;
            }
        }
    }
    return out;
}

}  // namespace icrypt
