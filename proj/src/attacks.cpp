#include "icrypt/attacks.hpp"

#include <algorithm>
#include <map>

using nlohmann::json;

namespace icrypt {

json AttackReport::to_json() const {
    json j = {{"attack", attack},
              {"success", success},
              {"groupOps", group_ops},
              {"systemRows", system_rows},
              {"systemCols", system_cols},
              {"detail", detail}};
    if (invariant_exponents) j["invariantExponents"] = *invariant_exponents;
    if (invariant_poly) j["invariantPoly"] = invariant_poly->str();
    if (recovered_b) j["recoveredB"] = recovered_b->get_str();
    json dec = json::array();
    for (const auto& d : decrypted) {
        if (d)
            dec.push_back(*d);
        else
            dec.push_back(nullptr);
    }
    j["decrypted"] = dec;
    return j;
}

Int dlog_bsgs(const Ring& field, const Elem& base, const Elem& target) {
    if (field.is_zero(target)) throw NoSolutionError("dlog: zero target");
    if (field.is_one(target)) return 0;
    Int ord = ff_order(field, base);
    Int m;
    mpz_sqrt(m.get_mpz_t(), ord.get_mpz_t());
    m += 1;
    std::map<std::string, Int> baby;
    Elem cur = field.one();
    for (Int j = 0; j < m; ++j) {
        baby.emplace(field.str(cur), j);
        cur = field.mul(cur, base);
    }
    Elem giant = field.pow(base, -m);  // base^(-m)
    cur = target;
    for (Int i = 0; i * m <= ord; ++i) {
        auto it = baby.find(field.str(cur));
        if (it != baby.end()) return i * m + it->second;
        cur = field.mul(cur, giant);
    }
    throw NoSolutionError("dlog: target outside the cyclic subgroup");
}

// ---------------------------------------------------------------------------
// polynomial helpers over a ring context

namespace {

Elem poly_eval_ring(const Ring& r, const std::vector<Elem>& c, const Elem& x) {
    Elem acc = r.zero();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = r.add(r.mul(acc, x), *it);
    return acc;
}

// divide by (x - root), assuming root is a root
std::vector<Elem> poly_deflate(const Ring& r, const std::vector<Elem>& c, const Elem& root) {
    std::vector<Elem> q(c.size() - 1, r.zero());
    Elem carry = r.zero();
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
        carry = r.add(c[k], r.mul(carry, root));
        q[k - 1] = carry;
    }
    return q;
}

// integral divisors of a nonzero integral element, canonical associates
std::vector<Elem> quad_divisors(const QuadRingCtx& ctx, const Elem& e) {
    std::vector<Elem> out;
    if (ctx.d() == 0) {
        Int a = e.c[0] < 0 ? Int(-e.c[0]) : e.c[0];
        for (const auto& t : divisors(a)) out.push_back(ctx.from_int(t));
        return out;
    }
    if (ctx.d() > 0) throw UnsupportedRingError("divisor search for real quadratic rings");
    Int n = ctx.norm(e);
    for (const auto& nd : divisors(n)) {
        for (Int a = 0; a * a <= nd; ++a) {
            Int rest = nd - a * a;
            if (rest % (-ctx.d()) != 0) continue;
            Int b2 = rest / (-ctx.d());
            Int b;
            mpz_sqrt(b.get_mpz_t(), b2.get_mpz_t());
            if (b * b != b2) continue;
            for (int sb = -1; sb <= 1; sb += 2) {
                Elem cand = ctx.make(a, sb * b);
                if (ctx.is_zero(cand)) continue;
                if (!ctx.divide_exact(e, cand)) continue;
                Elem canon = ctx.canonical_associate(cand);
                if (std::find(out.begin(), out.end(), canon) == out.end()) out.push_back(canon);
                if (b == 0) break;
            }
        }
    }
    return out;
}

std::vector<Elem> ring_units(const QuadRingCtx& ctx) {
    if (ctx.d() == -1) return {ctx.one(), ctx.make(0, 1), ctx.from_int(-1), ctx.make(0, -1)};
    return {ctx.one(), ctx.from_int(-1)};
}

// roots inside the quadratic fraction field by divisor candidates
std::vector<Elem> quad_roots(const std::shared_ptr<const QuadRingCtx>& ctx,
                             std::vector<Elem> poly) {
    std::vector<Elem> roots;
    // clear denominators
    Int lcm_den = 1;
    for (const auto& c : poly) lcm_den = lcm_den / gcd(lcm_den, c.den) * c.den;
    for (auto& c : poly) c = ctx->mul(c, ctx->from_int(lcm_den));
    auto trim = [&]() {
        while (poly.size() > 1 && ctx->is_zero(poly.back())) poly.pop_back();
    };
    trim();
    while (poly.size() > 1 && ctx->is_zero(poly.front())) {
        roots.push_back(ctx->zero());
        poly.erase(poly.begin());
    }
    bool progress = true;
    while (poly.size() > 1 && progress) {
        progress = false;
        // re-clear denominators after deflation
        lcm_den = 1;
        for (const auto& c : poly) lcm_den = lcm_den / gcd(lcm_den, c.den) * c.den;
        for (auto& c : poly) c = ctx->mul(c, ctx->from_int(lcm_den));
        auto nums = quad_divisors(*ctx, poly.front());
        auto dens = quad_divisors(*ctx, poly.back());
        for (const auto& z : nums) {
            for (const auto& w : dens) {
                for (const auto& u : ring_units(*ctx)) {
                    Elem cand = ctx->mul(u, ctx->mul(z, *ctx->inv(w)));
                    if (ctx->is_zero(poly_eval_ring(*ctx, poly, cand))) {
                        roots.push_back(cand);
                        poly = poly_deflate(*ctx, poly, cand);
                        while (poly.size() > 1 && ctx->is_zero(poly.front())) {
                            roots.push_back(ctx->zero());
                            poly.erase(poly.begin());
                        }
                        progress = true;
                        goto next_round;
                    }
                }
            }
        }
    next_round:;
    }
    if (poly.size() > 1) throw NoSolutionError("eigenvalue search out of reach");
    return roots;
}

std::vector<std::vector<Elem>> nullspace_over_field(const Ring& f,
                                                    std::vector<std::vector<Elem>> a, int cols) {
    int rows = static_cast<int>(a.size());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int sel = -1;
        for (int r = rank; r < rows; ++r)
            if (!f.is_zero(a[r][c])) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[rank], a[sel]);
        Elem inv = *f.inv(a[rank][c]);
        for (int k = c; k < cols; ++k) a[rank][k] = f.mul(a[rank][k], inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || f.is_zero(a[r][c])) continue;
            Elem factor = a[r][c];
            for (int k = c; k < cols; ++k) a[r][k] = f.sub(a[r][k], f.mul(factor, a[rank][k]));
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Elem> v(cols, f.zero());
        v[c] = f.one();
        for (int r = 0; r < rank; ++r)
            if (!f.is_zero(a[r][c])) v[pivot_col[r]] = f.neg(a[r][c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// unique solution of B x = y for an n x k matrix B of full column rank
std::vector<Elem> solve_full_rank(const Ring& f, const std::vector<std::vector<Elem>>& b_cols,
                                  std::vector<Elem> y) {
    const int n = static_cast<int>(y.size());
    const int k = static_cast<int>(b_cols.size());
    std::vector<std::vector<Elem>> aug(n, std::vector<Elem>(k + 1, f.zero()));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) aug[i][j] = b_cols[j][i];
        aug[i][k] = y[i];
    }
    int rank = 0;
    std::vector<int> pivot_of_col(k, -1);
    for (int c = 0; c < k && rank < n; ++c) {
        int sel = -1;
        for (int r = rank; r < n; ++r)
            if (!f.is_zero(aug[r][c])) {
                sel = r;
                break;
            }
        if (sel < 0) throw SingularMatrixError("rank deficient solve");
        std::swap(aug[rank], aug[sel]);
        Elem inv = *f.inv(aug[rank][c]);
        for (int t = c; t <= k; ++t) aug[rank][t] = f.mul(aug[rank][t], inv);
        for (int r = 0; r < n; ++r) {
            if (r == rank || f.is_zero(aug[r][c])) continue;
            Elem factor = aug[r][c];
            for (int t = c; t <= k; ++t) aug[r][t] = f.sub(aug[r][t], f.mul(factor, aug[rank][t]));
        }
        pivot_of_col[c] = rank;
        ++rank;
    }
    std::vector<Elem> x(k, f.zero());
    for (int c = 0; c < k; ++c) x[c] = aug[pivot_of_col[c]][k];
    // consistency rows below the rank must be zero
    for (int r = rank; r < n; ++r)
        if (!f.is_zero(aug[r][k])) throw SingularMatrixError("inconsistent solve");
    return x;
}

}  // namespace

std::vector<Elem> poly_roots_in_ring(const RingPtr& ctx, const std::vector<Elem>& coeffs,
                                     const Caps& caps) {
    if (auto q = std::dynamic_pointer_cast<const QuadRingCtx>(ctx)) return quad_roots(q, coeffs);
    auto card = ctx->cardinality();
    if (!card || !ctx->is_field())
        throw UnsupportedRingError("root scan needs a finite field or quadratic fractions");
    if (*card > caps.q_scan_max) throw NoSolutionError("field too large for eigenvalue scan");
    std::vector<Elem> roots;
    std::vector<Elem> poly = coeffs;
    for (const auto& x : ctx->enumerate(caps.q_scan_max)) {
        while (poly.size() > 1 && ctx->is_zero(poly_eval_ring(*ctx, poly, x))) {
            roots.push_back(x);
            poly = poly_deflate(*ctx, poly, x);
        }
        if (poly.size() <= 1) break;
    }
    return roots;
}

Diagonalization attack_diagonalize(const PublicKey& pk, const Caps& caps) {
    const RingPtr f = pk.ctx;
    const int n = pk.n;
    for (std::size_t i = 0; i < pk.generators.size(); ++i)
        for (std::size_t j = i + 1; j < pk.generators.size(); ++j)
            if (!(mat_mul(pk.generators[i], pk.generators[j]) ==
                  mat_mul(pk.generators[j], pk.generators[i])))
                throw NoSolutionError("generators do not commute");

    // blocks of a common eigenbasis, refined generator by generator
    std::vector<std::vector<std::vector<Elem>>> blocks;
    {
        std::vector<std::vector<Elem>> standard;
        for (int i = 0; i < n; ++i) {
            std::vector<Elem> e(n, f->zero());
            e[i] = f->one();
            standard.push_back(std::move(e));
        }
        blocks.push_back(std::move(standard));
    }
    for (const auto& g : pk.generators) {
        std::vector<std::vector<std::vector<Elem>>> refined;
        for (const auto& block : blocks) {
            const int k = static_cast<int>(block.size());
            if (k == 1) {
                refined.push_back(block);
                continue;
            }
            // restriction of g to the block
            Matrix m(f, k);
            for (int j = 0; j < k; ++j) {
                auto x = solve_full_rank(*f, block, mat_apply(g, block[j]));
                for (int i = 0; i < k; ++i) m.at(i, j) = x[i];
            }
            auto roots = poly_roots_in_ring(f, char_poly(m), caps);
            if (static_cast<int>(roots.size()) < k)
                throw NoSolutionError("diagonalization out of reach");
            std::vector<Elem> distinct;
            for (const auto& r : roots)
                if (std::find(distinct.begin(), distinct.end(), r) == distinct.end())
                    distinct.push_back(r);
            int covered = 0;
            for (const auto& lambda : distinct) {
                std::vector<std::vector<Elem>> shifted(k, std::vector<Elem>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        shifted[i][j] = i == j ? f->sub(m.at(i, j), lambda) : m.at(i, j);
                auto space = nullspace_over_field(*f, shifted, k);
                if (space.empty()) continue;
                std::vector<std::vector<Elem>> sub;
                for (const auto& c : space) {
                    std::vector<Elem> v(n, f->zero());
                    for (int j = 0; j < k; ++j)
                        for (int i = 0; i < n; ++i) v[i] = f->add(v[i], f->mul(c[j], block[j][i]));
                    sub.push_back(std::move(v));
                }
                covered += static_cast<int>(sub.size());
                refined.push_back(std::move(sub));
            }
            if (covered != k) throw NoSolutionError("generator is not diagonalizable");
        }
        blocks = std::move(refined);
    }
    Matrix q(f, n);
    int col = 0;
    for (const auto& block : blocks)
        for (const auto& v : block) {
            for (int i = 0; i < n; ++i) q.at(i, col) = v[i];
            ++col;
        }
    Matrix q_inv = mat_inv(q);
    DiagGroup group{f, n, {}};
    for (const auto& g : pk.generators) {
        Matrix d = mat_mul(mat_mul(q_inv, g), q);
        std::vector<Elem> diag;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                if (i != j && !f->is_zero(d.at(i, j)))
                    throw NoSolutionError("common eigenbasis failed");
            diag.push_back(d.at(i, i));
        }
        group.gens.push_back(std::move(diag));
    }
    return {q, q_inv, group};
}

AtomSet atom_refine(const QuadRingCtx& ctx, const std::vector<Elem>& xs) {
    if (!ctx.is_euclidean())
        throw UnsupportedRingError("atom refinement needs a Euclidean ring (d in {0, -1})");
    for (const auto& x : xs) {
        if (!ctx.is_integral(x)) throw DomainError("atom_refine: non-integral input");
        if (ctx.is_zero(x)) throw DomainError("atom_refine: zero input");
    }
    AtomSet out;
    out.unit_root = ctx.d() == -1 ? ctx.make(0, 1) : ctx.from_int(-1);
    out.unit_order = ctx.d() == -1 ? 4 : 2;

    std::vector<Elem> atoms;
    auto push = [&](const Elem& e) {
        if (ctx.is_ring_unit(e)) return;
        Elem c = ctx.canonical_associate(e);
        if (std::find(atoms.begin(), atoms.end(), c) == atoms.end()) atoms.push_back(c);
    };
    for (const auto& x : xs) push(x);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < atoms.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < atoms.size() && !changed; ++j) {
                Elem g = quad_gcd(ctx, atoms[i], atoms[j]);
                if (ctx.is_ring_unit(g)) continue;
                Elem a = atoms[i], b = atoms[j];
                atoms.erase(atoms.begin() + j);
                atoms.erase(atoms.begin() + i);
                push(g);
                push(*ctx.divide_exact(a, g));
                push(*ctx.divide_exact(b, g));
                changed = true;
            }
    }
    std::sort(atoms.begin(), atoms.end(), [&](const Elem& a, const Elem& b) {
        Int na = ctx.norm(a), nb = ctx.norm(b);
        if (na != nb) return na < nb;
        return a.c < b.c;
    });
    out.atoms = atoms;

    for (const auto& x : xs) {
        Elem rem = x;
        IntVec exps;
        for (const auto& a : atoms) {
            Int e = 0;
            while (auto q = ctx.divide_exact(rem, a)) {
                rem = *q;
                ++e;
            }
            exps.push_back(e);
        }
        Int ue = -1;
        Elem u = ctx.one();
        for (Int t = 0; t < out.unit_order; ++t) {
            if (rem == u) {
                ue = t;
                break;
            }
            u = ctx.mul(u, out.unit_root);
        }
        if (ue < 0) throw DomainError("atom factorization incomplete");
        // re-multiplication check
        Elem check = ctx.pow(out.unit_root, ue);
        for (std::size_t k = 0; k < atoms.size(); ++k)
            check = ctx.mul(check, ctx.pow(atoms[k], exps[k]));
        if (!(check == x)) throw DomainError("atom factorization mismatch");
        out.exponents.push_back(std::move(exps));
        out.unit_exponents.push_back(ue);
    }
    return out;
}

AttackReport attack_dlog_cyclic(const PublicKey& pk, const std::vector<Ciphertext>& cts) {
    AttackReport rep;
    rep.attack = "dlog";
    const RingPtr f = pk.ctx;
    if (!f->is_field() || !f->cardinality())
        throw UnsupportedRingError("dlog attack needs a finite field key");
    if (pk.generators.size() != 1 || pk.n != 2)
        throw UnsupportedRingError("dlog attack needs one 2x2 generator");
    const Matrix& g = pk.generators[0];
    if (!f->is_zero(g.at(0, 1)) || !f->is_zero(g.at(1, 0)))
        throw UnsupportedRingError("dlog attack needs a diagonal generator");
    for (const auto& v : pk.s.vecs)
        if (!f->is_one(v[0])) throw UnsupportedRingError("message set not of shape (1, a)");

    Elem alpha = g.at(0, 0), beta = g.at(1, 1);
    Int s = ff_order(*f, alpha);
    Int b;
    try {
        b = dlog_bsgs(*f, alpha, beta) % s;
    } catch (const NoSolutionError& e) {
        rep.detail = e.what();
        rep.decrypted.assign(cts.size(), std::nullopt);
        return rep;
    }
    rep.recovered_b = b;
    Exponents d = {mod_floor(-b, s).get_si(), 1};
    DiagGroup group{f, 2, {{alpha, beta}}};
    rep.success = monomial_is_invariant(group, d) && separates(*f, d, pk.s);
    rep.invariant_exponents = d;
    rep.group_ops = static_cast<long>(2 * mpz_sizeinbase(s.get_mpz_t(), 2));

    for (const auto& ct : cts) {
        std::optional<int> idx;
        const Elem& w1 = ct.u[0];
        const Elem& w2 = ct.u[1];
        if (!f->is_zero(w1)) {
            Elem a = f->mul(w2, *f->inv(f->pow(w1, b)));
            for (int i = 0; i < pk.s.r(); ++i)
                if (pk.s.vecs[i][1] == a) {
                    idx = i;
                    break;
                }
        }
        rep.decrypted.push_back(idx);
    }
    return rep;
}

AttackReport attack_linear_algebra(const PublicKey& pk, int d_max,
                                   const std::vector<Ciphertext>& cts, const Caps& caps) {
    AttackReport rep;
    rep.attack = "linalg";
    const RingPtr f = pk.ctx;
    Rng rng(0x5eedULL);
    for (int d = 1; d <= d_max; ++d) {
        InvariantSpace space;
        try {
            space = invariant_space_degree(pk.generators, d, caps);
        } catch (const ResourceError& e) {
            rep.detail = std::string("budget exceeded at degree ") + std::to_string(d) + ": " +
                         e.what();
            rep.decrypted.assign(cts.size(), std::nullopt);
            return rep;
        }
        Int c = monomial_count(pk.n, d);
        rep.system_rows = static_cast<long>(pk.generators.size()) * c.get_si();
        rep.system_cols = c.get_si();
        if (space.dim() == 0) continue;

        std::vector<MPoly> candidates = space.basis;
        for (int t = 0; t < 200; ++t) {
            MPoly comb(f, pk.n);
            for (const auto& b : space.basis) comb = comb.add(b.scale(f->random_elem(rng)));
            if (!comb.is_zero()) candidates.push_back(std::move(comb));
        }
        for (const auto& cand : candidates) {
            std::vector<Elem> vals;
            for (const auto& v : pk.s.vecs) vals.push_back(cand.eval(v));
            bool sep = true;
            for (std::size_t i = 0; i < vals.size() && sep; ++i)
                for (std::size_t j = i + 1; j < vals.size(); ++j)
                    if (vals[i] == vals[j]) {
                        sep = false;
                        break;
                    }
            if (!sep) continue;
            // re-verify invariance on sample points
            bool ok = true;
            for (const auto& g : pk.generators)
                for (int t = 0; t < 20 && ok; ++t) {
                    std::vector<Elem> x(pk.n);
                    for (auto& e : x) e = f->random_elem(rng);
                    ok = cand.eval(mat_apply(g, x)) == cand.eval(x);
                }
            if (!ok) continue;
            rep.success = true;
            rep.invariant_poly = cand;
            rep.detail = "separating invariant at degree " + std::to_string(d);
            for (const auto& ct : cts) {
                Elem uv = cand.eval(ct.u);
                std::optional<int> idx;
                int matches = 0;
                for (std::size_t i = 0; i < vals.size(); ++i)
                    if (vals[i] == uv) {
                        ++matches;
                        idx = static_cast<int>(i);
                    }
                rep.decrypted.push_back(matches == 1 ? idx : std::nullopt);
            }
            return rep;
        }
    }
    rep.detail = "no separating invariant up to degree " + std::to_string(d_max);
    rep.decrypted.assign(cts.size(), std::nullopt);
    return rep;
}

AttackReport attack_atoms(const PublicKey& pk, const std::vector<Ciphertext>& cts,
                          const Caps& caps) {
    auto ctx = std::dynamic_pointer_cast<const QuadRingCtx>(pk.ctx);
    if (!ctx || !ctx->is_euclidean())
        throw UnsupportedRingError("atom attack unsupported: ring is not Euclidean");
    AttackReport rep;
    rep.attack = "atoms";
    Diagonalization diag;
    try {
        diag = attack_diagonalize(pk, caps);
    } catch (const NoSolutionError& e) {
        rep.detail = e.what();
        rep.decrypted.assign(cts.size(), std::nullopt);
        return rep;
    }
    const int n = pk.n;
    const int m = static_cast<int>(diag.group.gens.size());

    // numerators and denominators of every eigenvalue
    std::vector<Elem> xs;
    for (const auto& gen : diag.group.gens)
        for (const auto& e : gen) {
            xs.push_back(ctx->make(e.c[0], e.c[1]));
            xs.push_back(ctx->from_int(e.den));
        }
    AtomSet atoms = atom_refine(*ctx, xs);
    const int na = static_cast<int>(atoms.atoms.size());

    CongruenceSystem sys;
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < na; ++k) {
            IntVec row(n);
            for (int j = 0; j < n; ++j) {
                int num = 2 * (i * n + j), den = num + 1;
                row[j] = atoms.exponents[num][k] - atoms.exponents[den][k];
            }
            sys.l.push_back(std::move(row));
            sys.moduli.push_back(0);  // exact integer equation
        }
        IntVec urow(n);
        for (int j = 0; j < n; ++j) {
            int num = 2 * (i * n + j), den = num + 1;
            urow[j] = mod_floor(atoms.unit_exponents[num] - atoms.unit_exponents[den],
                                atoms.unit_order);
        }
        sys.l.push_back(std::move(urow));
        sys.moduli.push_back(atoms.unit_order);
    }
    rep.system_rows = sys.rows();
    rep.system_cols = sys.cols();
    KernelLattice lat = solve_congruence_kernel(sys);

    std::vector<std::vector<Elem>> w;
    for (const auto& v : pk.s.vecs) w.push_back(mat_apply(diag.q_inv, v));
    MessageSet ws{w};
    Exponents y;
    try {
        y = find_separating_invariant(lat, pk.ctx, ws, caps.coeff_bound);
    } catch (const NotFoundError& e) {
        rep.detail = e.what();
        rep.decrypted.assign(cts.size(), std::nullopt);
        return rep;
    }
    if (!monomial_is_invariant(diag.group, y)) {
        rep.detail = "kernel vector failed the invariance recheck";
        rep.decrypted.assign(cts.size(), std::nullopt);
        return rep;
    }
    rep.success = true;
    rep.invariant_exponents = y;
    rep.detail = std::to_string(na) + " atoms";

    std::vector<Elem> vals;
    for (const auto& wv : w) vals.push_back(eval_monomial(*pk.ctx, y, wv));
    for (const auto& ct : cts) {
        std::optional<int> idx;
        try {
            Elem uv = eval_monomial(*pk.ctx, y, mat_apply(diag.q_inv, ct.u));
            int matches = 0;
            for (std::size_t i = 0; i < vals.size(); ++i)
                if (vals[i] == uv) {
                    ++matches;
                    idx = static_cast<int>(i);
                }
            if (matches != 1) idx = std::nullopt;
        } catch (const EvalError&) {
            idx = std::nullopt;  // zero diagonalized component
        }
        rep.decrypted.push_back(idx);
    }
    return rep;
}

}  // namespace icrypt
