#include "icrypt/invariants.hpp"

#include <algorithm>
#include <map>

#include "icrypt/attacks.hpp"

namespace icrypt {

void DiagGroup::validate() const {
    if (n < 1 || gens.empty()) throw ParamError("DiagGroup: empty");
    for (const auto& g : gens) {
        if (static_cast<int>(g.size()) != n) throw ParamError("DiagGroup: entry count mismatch");
        for (const auto& e : g)
            if (!ctx->is_unit(e)) throw DomainError("DiagGroup: non-unit generator entry");
    }
}

void MessageSet::validate() const {
    if (r() < 2) throw ParamError("MessageSet: need at least 2 vectors");
    for (int i = 0; i < r(); ++i)
        for (int j = i + 1; j < r(); ++j)
            if (vecs[i] == vecs[j]) throw ParamError("MessageSet: duplicate vectors");
}

bool monomial_is_invariant(const DiagGroup& g, const Exponents& d) {
    if (static_cast<int>(d.size()) != g.n) throw ParamError("exponent arity mismatch");
    for (const auto& gen : g.gens) {
        Elem prod = g.ctx->one();
        for (int j = 0; j < g.n; ++j) {
            if (d[j] == 0) continue;
            prod = g.ctx->mul(prod, g.ctx->pow(gen[j], Int(d[j])));
        }
        if (!g.ctx->is_one(prod)) return false;
    }
    return true;
}

MonomialLattice monomial_lattice_field(const DiagGroup& g, const Caps& caps) {
    g.validate();
    if (!g.ctx->is_field() || !g.ctx->cardinality())
        throw UnsupportedRingError("monomial_lattice_field: finite field required");
    Int q = *g.ctx->cardinality();
    if (q > caps.q_scan_max) throw ResourceError("field too large for primitive-element scan");
    Elem a = ff_primitive_element(*g.ctx, caps.q_scan_max);
    MonomialLattice out;
    for (const auto& gen : g.gens) {
        IntVec row(g.n);
        for (int j = 0; j < g.n; ++j) row[j] = dlog_bsgs(*g.ctx, a, gen[j]);
        out.system.l.push_back(std::move(row));
        out.system.moduli.push_back(q - 1);
    }
    out.lattice = solve_congruence_kernel(out.system);
    out.lattice.ambient_moduli.assign(g.n, q - 1);
    return out;
}

namespace {

std::vector<Elem> subgroup_closure(const Ring& r, const std::vector<Elem>& gens) {
    std::vector<Elem> h = {r.one()};
    std::vector<Elem> frontier = h;
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Elem y = r.mul(x, g);
                if (std::find(h.begin(), h.end(), y) == h.end()) {
                    h.push_back(y);
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    return h;
}

Int elem_order(const Ring& r, const Elem& a) {
    Elem acc = a;
    Int k = 1;
    while (!r.is_one(acc)) {
        acc = r.mul(acc, a);
        ++k;
    }
    return k;
}

}  // namespace

UnitBasis unit_group_basis(const Ring& ring, long cap) {
    auto card = ring.cardinality();
    if (!card) throw UnsupportedRingError("unit_group_basis: infinite ring");
    if (*card > cap) throw ResourceError("unit_group_basis: ring over budget");
    std::vector<Elem> units;
    for (const auto& e : ring.enumerate(cap))
        if (ring.is_unit(e)) units.push_back(e);
    Int n_big = static_cast<long>(units.size());
    UnitBasis out;
    for (const auto& [p, e] : factor_map(n_big)) {
        Int pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        // Sylow p-subgroup: image of x -> x^(N/p^e)
        std::vector<Elem> sylow;
        for (const auto& u : units) {
            Elem s = ring.pow(u, n_big / pe);
            if (std::find(sylow.begin(), sylow.end(), s) == sylow.end()) sylow.push_back(s);
        }
        std::vector<Elem> basis_gens;
        std::vector<Elem> h = {ring.one()};
        while (h.size() < sylow.size()) {
            // element of maximal order in the quotient by <basis so far>
            Elem best = ring.one();
            Int best_k = 1;
            for (const auto& u : sylow) {
                Elem acc = u;
                Int k = 1;
                while (std::find(h.begin(), h.end(), acc) == h.end()) {
                    acc = ring.mul(acc, u);
                    ++k;
                }
                if (k > best_k) {
                    best_k = k;
                    best = u;
                }
            }
            // adjust so the new generator has true order best_k
            Elem uk = ring.pow(best, best_k);
            Elem adjusted = best;
            bool found = false;
            for (const auto& v : h) {
                if (ring.mul(ring.pow(v, best_k), uk) == ring.one()) {
                    adjusted = ring.mul(best, v);
                    found = true;
                    break;
                }
            }
            if (!found) throw DomainError("unit_group_basis: adjustment failed");
            basis_gens.push_back(adjusted);
            h = subgroup_closure(ring, basis_gens);
        }
        for (const auto& b : basis_gens) {
            out.gens.push_back(b);
            out.orders.push_back(elem_order(ring, b));
        }
    }
    // ascending by order, stable
    std::vector<std::size_t> idx(out.gens.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return out.orders[a] < out.orders[b]; });
    UnitBasis sorted;
    for (auto i : idx) {
        sorted.gens.push_back(out.gens[i]);
        sorted.orders.push_back(out.orders[i]);
    }
    return sorted;
}

MonomialLattice monomial_lattice_units(const DiagGroup& g, const UnitBasis& basis) {
    g.validate();
    const Ring& r = *g.ctx;
    const int nb = static_cast<int>(basis.gens.size());
    // full product table of the basis lattice
    std::map<std::string, IntVec> table;
    IntVec l(nb, 0);
    while (true) {
        Elem prod = r.one();
        for (int k = 0; k < nb; ++k) prod = r.mul(prod, r.pow(basis.gens[k], l[k]));
        table.emplace(r.str(prod), l);
        int k = 0;
        while (k < nb) {
            l[k] += 1;
            if (l[k] < basis.orders[k]) break;
            l[k] = 0;
            ++k;
        }
        if (k == nb) break;
    }
    MonomialLattice out;
    for (const auto& gen : g.gens) {
        std::vector<IntVec> dlogs;
        for (int j = 0; j < g.n; ++j) {
            auto it = table.find(r.str(gen[j]));
            if (it == table.end()) throw DomainError("entry not in the unit-basis span");
            dlogs.push_back(it->second);
        }
        for (int k = 0; k < nb; ++k) {
            IntVec row(g.n);
            for (int j = 0; j < g.n; ++j) row[j] = dlogs[j][k] % basis.orders[k];
            out.system.l.push_back(std::move(row));
            out.system.moduli.push_back(basis.orders[k]);
        }
    }
    out.lattice = solve_congruence_kernel(out.system);
    return out;
}

bool separates(const Ring& ctx, const Exponents& d, const MessageSet& s) {
    std::vector<Elem> vals;
    for (const auto& v : s.vecs) vals.push_back(eval_monomial(ctx, d, v));
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            if (vals[i] == vals[j]) return false;
    return true;
}

Exponents find_separating_invariant(const KernelLattice& lat, const RingPtr& ctx,
                                    const MessageSet& s, long bound,
                                    const IntVec& reduce_moduli) {
    KernelEnumerator en(lat, bound, reduce_moduli);
    while (auto v = en.next()) {
        Exponents d(v->size());
        for (std::size_t i = 0; i < v->size(); ++i) d[i] = (*v)[i].get_si();
        try {
            if (separates(*ctx, d, s)) return d;
        } catch (const EvalError&) {
            // rational invariant unusable on this message set
        }
    }
    throw NotFoundError("no separating invariant within the coefficient bound");
}

TwoVarInvariant reduce_two_variables(const DiagGroup& g, const std::vector<Elem>& vk,
                                     const std::vector<Elem>& vl) {
    g.validate();
    if (g.gens.size() != 1) throw ParamError("reduce_two_variables: one generator required");
    auto card = g.ctx->cardinality();
    if (!card) throw UnsupportedRingError("reduce_two_variables: finite field required");
    if (vk == vl) throw NotFoundError("vectors are equal, nothing separates them");
    const Ring& r = *g.ctx;
    const auto& gen = g.gens[0];
    long qm1 = static_cast<long>(card->get_si() - 1);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            for (long ej = 0; ej <= qm1 - 1; ++ej)
                for (long ei = 0; ei <= qm1 - 1; ++ei) {
                    if (ei == 0 && ej == 0) continue;
                    Elem inv = r.mul(r.pow(gen[i], ei), r.pow(gen[j], ej));
                    if (!r.is_one(inv)) continue;
                    Elem a = r.mul(r.pow(vk[i], ei), r.pow(vk[j], ej));
                    Elem b = r.mul(r.pow(vl[i], ei), r.pow(vl[j], ej));
                    if (!(a == b)) return {i + 1, j + 1, {ei, ej}};
                }
    throw NotFoundError("no two-variable separating invariant");
}

Int monomial_count(int n, int d) {
    Int c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n + d - 1),
                 static_cast<unsigned long>(d));
    return c;
}

std::vector<Exponents> monomials_of_degree(int n, int d) {
    std::vector<Exponents> out;
    Exponents cur(n, 0);
    // lexicographically descending compositions of d into n parts
    auto rec = [&](auto&& self, int pos, int rest) -> void {
        if (pos == n - 1) {
            cur[pos] = rest;
            out.push_back(cur);
            return;
        }
        for (int v = rest; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, rest - v);
        }
    };
    rec(rec, 0, d);
    return out;
}

namespace {

// Reduced row echelon nullspace basis over a field.
std::vector<std::vector<Elem>> field_nullspace(const Ring& f, std::vector<std::vector<Elem>> a,
                                               int cols) {
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
            for (int k = c; k < cols; ++k)
                a[r][k] = f.sub(a[r][k], f.mul(factor, a[rank][k]));
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

}  // namespace

InvariantSpace invariant_space_degree(const std::vector<Matrix>& gens, int degree,
                                      const Caps& caps) {
    if (degree < 1) throw ParamError("invariant_space_degree: degree must be >= 1");
    if (gens.empty()) throw ParamError("invariant_space_degree: no generators");
    RingPtr f = gens[0].ring;
    if (!f->is_field()) throw UnsupportedRingError("invariant_space_degree: field required");
    const int n = gens[0].n;
    if (monomial_count(n, degree) > caps.dim_cap)
        throw ResourceError("invariant space dimension over budget");
    auto monos = monomials_of_degree(n, degree);
    const int cnt = static_cast<int>(monos.size());
    std::map<Exponents, int> idx;
    for (int k = 0; k < cnt; ++k) idx.emplace(monos[k], k);

    std::vector<std::vector<Elem>> rows;
    for (const auto& h : gens) {
        std::vector<std::vector<Elem>> block(cnt, std::vector<Elem>(cnt, f->zero()));
        for (int k = 0; k < cnt; ++k) {
            MPoly expanded = MPoly::monomial(f, monos[k], f->one()).substitute_linear(h);
            for (const auto& [e, c] : expanded.terms) block[idx.at(e)][k] = c;
            block[k][k] = f->sub(block[k][k], f->one());
        }
        for (auto& r : block) rows.push_back(std::move(r));
    }
    auto null_basis = field_nullspace(*f, std::move(rows), cnt);
    InvariantSpace out;
    out.degree = degree;
    for (auto& v : null_basis) {
        // scale so the lex-largest monomial present has coefficient 1
        for (int k = 0; k < cnt; ++k)
            if (!f->is_zero(v[k])) {
                Elem s = *f->inv(v[k]);
                for (auto& x : v) x = f->mul(x, s);
                break;
            }
        MPoly p(f, n);
        for (int k = 0; k < cnt; ++k) p.add_term(monos[k], v[k]);
        out.basis.push_back(std::move(p));
    }
    return out;
}

MinDegree minimal_invariant_degree(const std::vector<Matrix>& gens, const Caps& caps) {
    for (int d = 1; d <= caps.degree_sweep_max; ++d) {
        if (monomial_count(gens[0].n, d) > caps.dim_cap)
            return {std::nullopt, caps.degree_sweep_max};
        if (invariant_space_degree(gens, d, caps).dim() > 0) return {d, caps.degree_sweep_max};
    }
    return {std::nullopt, caps.degree_sweep_max};
}

MinDegree minimal_invariant_degree(const DiagGroup& g, const Caps& caps) {
    g.validate();
    for (int total = 1; total <= caps.degree_sweep_max; ++total) {
        bool found = false;
        Exponents cur(g.n, 0);
        auto rec = [&](auto&& self, int pos, int rest) -> void {
            if (found) return;
            if (pos == g.n - 1) {
                cur[pos] = rest;
                if (monomial_is_invariant(g, cur)) found = true;
                return;
            }
            for (int v = rest; v >= 0 && !found; --v) {
                cur[pos] = v;
                self(self, pos + 1, rest - v);
            }
        };
        rec(rec, 0, total);
        if (found) return {total, caps.degree_sweep_max};
    }
    return {std::nullopt, caps.degree_sweep_max};
}

MPoly lift_coset_product(const MPoly& f, const std::vector<Matrix>& coset_reps,
                         const std::vector<Matrix>& subgroup_gens, Rng& rng) {
    if (coset_reps.empty()) throw ParamError("lift_coset_product: no coset representatives");
    const RingPtr r = f.ring;
    for (const auto& h : subgroup_gens) {
        for (int t = 0; t < 10; ++t) {
            std::vector<Elem> x(f.nvars);
            for (auto& e : x) e = r->random_elem(rng);
            if (!(f.eval(mat_apply(h, x)) == f.eval(x)))
                throw ParamError("lift_coset_product: f is not subgroup-invariant");
        }
    }
    MPoly prod(r, f.nvars);
    prod.add_term(Exponents(f.nvars, 0), r->one());
    for (const auto& g : coset_reps) prod = prod.mul(f.substitute_linear(g));
    return prod;
}

}  // namespace icrypt
