#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "icrypt/attacks.hpp"

using namespace icrypt;
using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidCiphertextError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidCiphertextError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return j;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

std::vector<long> parse_longs(const std::string& csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
    return out;
}

// "a", "a+bt" or "a-bt" with t = sqrt(d)
Elem parse_quad(const QuadRingCtx& ctx, const std::string& s) {
    auto tpos = s.find('t');
    if (tpos == std::string::npos) return ctx.from_int(Int(s));
    std::string rest = s.substr(0, tpos);
    long sign = 1;
    std::size_t split = rest.find_last_of("+-");
    std::string a = "0", b = rest;
    if (split != std::string::npos && split > 0) {
        a = rest.substr(0, split);
        sign = rest[split] == '-' ? -1 : 1;
        b = rest.substr(split + 1);
    }
    if (b.empty()) b = "1";
    return ctx.make(Int(a), sign * Int(b));
}

int attack_exit(const AttackReport& rep) {
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.success ? 0 : 2;
}

std::vector<Ciphertext> load_cts(const RingPtr& ctx, const std::vector<std::string>& paths) {
    std::vector<Ciphertext> cts;
    for (const auto& p : paths) {
        json j = read_json(p);
        if (j.is_array())
            for (const auto& one : j) cts.push_back(Ciphertext::from_json(ctx, one));
        else
            cts.push_back(Ciphertext::from_json(ctx, j));
    }
    return cts;
}

int run(int argc, char** argv) {
    CLI::App app{"invariant-based public-key cryptosystem workbench"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    bool have_seed = false;
    app.add_option("--seed", seed, "deterministic RNG seed")->each([&](const std::string&) {
        have_seed = true;
    });
    Caps caps;
    app.add_option("--q-scan-max", caps.q_scan_max);
    app.add_option("--degree-sweep-max", caps.degree_sweep_max);
    app.add_option("--coeff-bound", caps.coeff_bound);
    app.add_option("--unit-enum-max", caps.unit_enum_max);

    // keygen
    auto* kg = app.add_subcommand("keygen", "generate a key pair");
    std::string scheme, out_path = "key.json";
    std::string p_str = "31", s_str = "5", b_str = "3", s1_str = "3", s2_str = "5",
                b1_str = "2", b2_str = "3", m_str = "15";
    std::string e_csv = "1,1", seeds_csv = "2,3", q_csv = "-1,0,1";
    long d_param = 0;
    int ext_deg = 1, messages = 4, gen_count = 2, dim = 2;
    bool conjugate_flag = false, no_conjugate = false;
    kg->add_option("--scheme", scheme)->required();
    kg->add_option("--out", out_path);
    kg->add_option("--p", p_str);
    kg->add_option("--r", ext_deg);
    kg->add_option("--s", s_str);
    kg->add_option("--b", b_str);
    kg->add_option("--s1", s1_str);
    kg->add_option("--s2", s2_str);
    kg->add_option("--b1", b1_str);
    kg->add_option("--b2", b2_str);
    kg->add_option("--d", d_param);
    kg->add_option("--m", m_str);
    kg->add_option("--n", dim);
    kg->add_option("--e", e_csv);
    kg->add_option("--seeds", seeds_csv);
    kg->add_option("--q-set", q_csv);
    kg->add_option("--gens", gen_count);
    kg->add_option("--messages", messages);
    kg->add_flag("--conjugate", conjugate_flag, "conjugate field schemes by a random P");
    kg->add_flag("--no-conjugate", no_conjugate, "publish the diagonal group unconjugated");

    // encrypt
    auto* enc = app.add_subcommand("encrypt", "encrypt a message index or a byte file");
    std::string pub_path, ct_out = "ct.json", in_path;
    int msg_index = -1, word_length = 0;
    enc->add_option("--pub", pub_path)->required();
    enc->add_option("--msg", msg_index);
    enc->add_option("--in", in_path);
    enc->add_option("--word-length", word_length);
    enc->add_option("--out", ct_out);

    // decrypt
    auto* dec = app.add_subcommand("decrypt", "decrypt a ciphertext file");
    std::string priv_path, ct_path;
    dec->add_option("--priv", priv_path)->required();
    dec->add_option("--ct", ct_path)->required();

    // attack
    auto* att = app.add_subcommand("attack", "run a cryptanalysis procedure");
    std::string attack_kind;
    std::vector<std::string> att_cts;
    int max_degree = 6;
    att->add_option("kind", attack_kind)->required();
    att->add_option("--pub", pub_path)->required();
    att->add_option("--ct", att_cts);
    att->add_option("--max-degree", max_degree);

    // inspect
    auto* ins = app.add_subcommand("inspect", "invariant data of a public key");
    ins->add_option("--pub", pub_path)->required();

    // bench
    auto* ben = app.add_subcommand("bench", "CSV experiments");
    std::string bench_kind, params_path;
    ben->add_option("kind", bench_kind)->required();
    ben->add_option("--params", params_path)->required();

    CLI11_PARSE(app, argc, argv);
    Rng rng(have_seed ? seed : std::random_device{}());

    if (kg->parsed()) {
        KeyPair kp;
        if (scheme == "ff-cyclic" || scheme == "ff-noncyclic") {
            std::optional<Matrix> P;
            if (conjugate_flag) {
                if (ext_deg > 1)
                    throw ParamError("--conjugate is only supported for prime fields here");
                P = random_unimodular(std::make_shared<PrimeFieldCtx>(Int(p_str)), 2, rng);
            }
            kp = scheme == "ff-cyclic"
                     ? keygen_ff_cyclic(Int(p_str), ext_deg, Int(s_str), Int(b_str), messages, P,
                                        rng)
                     : keygen_ff_noncyclic(Int(p_str), ext_deg, Int(s1_str), Int(s2_str),
                                           Int(b1_str), Int(b2_str), messages, P, rng);
        } else if (scheme == "number-ring") {
            QuadRingCtx ctx(d_param);
            std::vector<Elem> seeds;
            std::stringstream ss(seeds_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) seeds.push_back(parse_quad(ctx, tok));
            std::optional<Matrix> P;
            if (no_conjugate) {
                std::cerr << "warning: identity transition matrix publishes the diagonal group\n";
                P = Matrix::identity(std::make_shared<QuadRingCtx>(d_param), dim);
            }
            kp = keygen_number_ring(d_param, seeds, parse_longs(q_csv), dim,
                                    parse_longs(e_csv), gen_count, messages, P, rng);
        } else if (scheme == "finite-ring") {
            std::optional<Matrix> P;
            if (no_conjugate)
                P = Matrix::identity(std::make_shared<ResidueRingCtx>(d_param, Int(m_str)), dim);
            kp = keygen_finite_ring(d_param, Int(m_str), dim, parse_longs(e_csv), gen_count,
                                    messages, P, rng);
        } else {
            throw ParamError("unknown scheme: " + scheme);
        }
        write_json(out_path, kp.to_json());
        std::cout << "fingerprint " << kp.pub.fingerprint() << "\n";
        return 0;
    }

    if (enc->parsed()) {
        PublicKey pk = PublicKey::from_json(read_json(pub_path));
        std::cout << "fingerprint " << pk.fingerprint() << "\n";
        int wl = word_length > 0 ? word_length : 2 * static_cast<int>(pk.generators.size());
        if (!in_path.empty()) {
            std::ifstream in(in_path, std::ios::binary);
            if (!in) throw InvalidCiphertextError("cannot open " + in_path);
            std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                             std::istreambuf_iterator<char>());
            json arr = json::array();
            for (int idx : encode_blocks(bytes, pk.s.r()))
                arr.push_back(encrypt(pk, idx, wl, rng).to_json(*pk.ctx));
            write_json(ct_out, json{{"blocks", arr}, {"byteCount", bytes.size()}});
        } else {
            if (msg_index < 0) throw ParamError("need --msg or --in");
            write_json(ct_out, encrypt(pk, msg_index, wl, rng).to_json(*pk.ctx));
        }
        return 0;
    }

    if (dec->parsed()) {
        KeyPair kp = KeyPair::from_json(read_json(priv_path));
        std::string fp = kp.pub.fingerprint();
        std::cout << "fingerprint " << fp << "\n";
        json j = read_json(ct_path);
        auto check_fp = [&](const Ciphertext& ct) {
            if (!ct.key_fingerprint.empty() && ct.key_fingerprint != fp)
                throw InvalidCiphertextError("ciphertext fingerprint does not match the key");
        };
        if (j.contains("blocks")) {
            std::vector<int> indices;
            for (const auto& one : j.at("blocks")) {
                Ciphertext ct = Ciphertext::from_json(kp.pub.ctx, one);
                check_fp(ct);
                indices.push_back(decrypt(kp.priv, ct));
            }
            auto bytes = decode_blocks(indices, kp.pub.s.r(), j.at("byteCount").get<std::size_t>());
            std::cout.write(reinterpret_cast<const char*>(bytes.data()),
                            static_cast<std::streamsize>(bytes.size()));
            std::cout << "\n";
        } else {
            Ciphertext ct = Ciphertext::from_json(kp.pub.ctx, j);
            check_fp(ct);
            std::cout << decrypt(kp.priv, ct) << "\n";
        }
        return 0;
    }

    if (att->parsed()) {
        PublicKey pk = PublicKey::from_json(read_json(pub_path));
        std::cout << "fingerprint " << pk.fingerprint() << "\n";
        auto cts = load_cts(pk.ctx, att_cts);
        if (attack_kind == "dlog") return attack_exit(attack_dlog_cyclic(pk, cts));
        if (attack_kind == "linalg")
            return attack_exit(attack_linear_algebra(pk, max_degree, cts, caps));
        if (attack_kind == "diag") {
            try {
                Diagonalization d = attack_diagonalize(pk, caps);
                json gens = json::array();
                for (const auto& g : d.group.gens) {
                    json row = json::array();
                    for (const auto& e : g) row.push_back(pk.ctx->elem_to_json(e));
                    gens.push_back(row);
                }
                std::cout << json{{"Q", d.q.to_json()}, {"diagonal", gens}}.dump(2) << "\n";
                return 0;
            } catch (const NoSolutionError& e) {
                std::cout << json{{"success", false}, {"detail", e.what()}}.dump(2) << "\n";
                return 2;
            }
        }
        if (attack_kind == "atoms") return attack_exit(attack_atoms(pk, cts, caps));
        throw ParamError("unknown attack: " + attack_kind);
    }

    if (ins->parsed()) {
        PublicKey pk = PublicKey::from_json(read_json(pub_path));
        json out = {{"fingerprint", pk.fingerprint()},
                    {"scheme", pk.scheme},
                    {"ring", pk.ctx->describe()},
                    {"n", pk.n},
                    {"generators", pk.generators.size()},
                    {"messages", pk.s.r()}};
        try {
            Rat ratio = expansion_ratio(pk);
            out["expansionRatio"] = ratio.get_str();
        } catch (const Error&) {
        }
        try {
            MinDegree md = minimal_invariant_degree(pk.generators, caps);
            out["minimalInvariantDegree"] = md.degree ? json(*md.degree) : json(nullptr);
            out["sweepCap"] = md.cap;
        } catch (const Error& e) {
            out["minimalInvariantDegree"] = e.what();
        }
        bool all_diag = true;
        for (const auto& g : pk.generators)
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    if (i != j && !pk.ctx->is_zero(g.at(i, j))) all_diag = false;
        if (all_diag && pk.ctx->is_field() && pk.ctx->cardinality()) {
            DiagGroup dg{pk.ctx, pk.n, {}};
            for (const auto& g : pk.generators) {
                std::vector<Elem> row;
                for (int i = 0; i < g.n; ++i) row.push_back(g.at(i, i));
                dg.gens.push_back(std::move(row));
            }
            try {
                MonomialLattice lat = monomial_lattice_field(dg, caps);
                json basis = json::array();
                for (const auto& b : lat.lattice.basis) {
                    json row = json::array();
                    for (const auto& x : b) row.push_back(x.get_str());
                    basis.push_back(row);
                }
                out["invariantLatticeBasis"] = basis;
            } catch (const Error&) {
            }
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (ben->parsed()) {
        json params = read_json(params_path);
        if (bench_kind == "expansion") {
            std::cout << "p,s,b,messages,n,ratio\n";
            for (const auto& t : params) {
                Rng trng(t.value("seed", 1));
                KeyPair kp = keygen_ff_cyclic(Int(t.at("p").get<std::string>()), 1,
                                              t.at("s").get<long>(), t.at("b").get<long>(),
                                              t.at("messages").get<int>(), std::nullopt, trng);
                std::cout << t.at("p").get<std::string>() << "," << t.at("s").get<long>() << ","
                          << t.at("b").get<long>() << "," << t.at("messages").get<int>() << ","
                          << kp.pub.n << "," << expansion_ratio(kp.pub).get_str() << "\n";
            }
            return 0;
        }
        if (bench_kind == "mindegree") {
            std::cout << "d,n,esum,minDegree\n";
            for (const auto& t : params) {
                Rng trng(t.value("seed", 1));
                long dd = t.at("d").get<long>();
                QuadRingCtx ctx(dd);
                std::vector<Elem> seeds;
                for (const auto& s : t.at("seeds")) seeds.push_back(parse_quad(ctx, s.get<std::string>()));
                auto e = t.at("e").get<std::vector<long>>();
                KeyPair kp = keygen_number_ring(
                    dd, seeds, t.at("q").get<std::vector<long>>(), static_cast<int>(e.size()), e,
                    t.value("gens", 2), t.value("messages", 3), std::nullopt, trng);
                Diagonalization diag = attack_diagonalize(kp.pub, caps);
                MinDegree md = minimal_invariant_degree(diag.group, caps);
                long esum = 0;
                for (long x : e) esum += x;
                std::cout << dd << "," << e.size() << "," << esum << ","
                          << (md.degree ? std::to_string(*md.degree) : ">" + std::to_string(md.cap))
                          << "\n";
            }
            return 0;
        }
        if (bench_kind == "attack-sweep") {
            std::cout << "p,s,b,maxDegree,success\n";
            for (const auto& t : params) {
                Rng trng(t.value("seed", 1));
                Int p(t.at("p").get<std::string>());
                auto f = std::make_shared<PrimeFieldCtx>(p);
                Matrix P = random_unimodular(f, 2, trng);
                KeyPair kp = keygen_ff_cyclic(p, 1, t.at("s").get<long>(), t.at("b").get<long>(),
                                              t.at("messages").get<int>(), P, trng);
                int dmax = t.value("maxDegree", 6);
                AttackReport rep = attack_linear_algebra(kp.pub, dmax, {}, caps);
                std::cout << p.get_str() << "," << t.at("s").get<long>() << ","
                          << t.at("b").get<long>() << "," << dmax << "," << rep.success << "\n";
            }
            return 0;
        }
        throw ParamError("unknown bench kind: " + bench_kind);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UnsupportedRingError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const InvalidCiphertextError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 4;
    } catch (const NotFoundError& e) {
        std::cerr << "attack failed: " << e.what() << "\n";
        return 2;
    } catch (const NoSolutionError& e) {
        std::cerr << "attack failed: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
