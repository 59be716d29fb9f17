#pragma once

#include "icrypt/poly.hpp"

namespace icrypt {

// Group of diagonal matrices given by the diagonals of its generators.
struct DiagGroup {
    RingPtr ctx;
    int n = 0;
    std::vector<std::vector<Elem>> gens;

    void validate() const;  // every entry a unit
};

struct MessageSet {
    std::vector<std::vector<Elem>> vecs;

    int r() const { return static_cast<int>(vecs.size()); }
    void validate() const;  // pairwise distinct, r >= 2
};

struct MonomialLattice {
    CongruenceSystem system;
    KernelLattice lattice;
};

// Basis of the unit group of a finite ring: independent generators with their
// orders, sorted ascending by order.
struct UnitBasis {
    std::vector<Elem> gens;
    std::vector<Int> orders;
};

// prod_j gamma_ij^{d_j} == 1 for every generator i.
bool monomial_is_invariant(const DiagGroup& g, const Exponents& d);

// Exponent congruences of monomial invariants over a finite field: discrete
// logs of all generator entries to a fixed primitive element, one row per
// generator, all rows modulo q-1.
MonomialLattice monomial_lattice_field(const DiagGroup& g, const Caps& caps = {});

// Unit group of a finite ring by exhaustive enumeration.
UnitBasis unit_group_basis(const Ring& ring, long cap);

// Same congruence construction over a finite residue ring: entries expressed
// over the unit basis, one row per (generator, basis element) modulo o_k.
MonomialLattice monomial_lattice_units(const DiagGroup& g, const UnitBasis& basis);

// Values of the monomial pairwise distinct on S. Throws EvalError when a
// negative exponent hits a non-unit coordinate.
bool separates(const Ring& ctx, const Exponents& d, const MessageSet& s);

// First vector in enumeration order that separates S; candidates that are not
// evaluable on S are skipped.
Exponents find_separating_invariant(const KernelLattice& lat, const RingPtr& ctx,
                                    const MessageSet& s, long bound,
                                    const IntVec& reduce_moduli = {});

struct TwoVarInvariant {
    int i, j;      // 1-based coordinate pair
    Exponents d;   // two exponents (d_i, d_j)
};

// Two-variable separating monomial invariant of a one-generator group over a
// finite field, by exhaustive pair scan.
TwoVarInvariant reduce_two_variables(const DiagGroup& g, const std::vector<Elem>& vk,
                                     const std::vector<Elem>& vl);

struct InvariantSpace {
    int degree = 0;
    std::vector<MPoly> basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

// Homogeneous degree-d polynomials fixed by every generator, by expanding
// f(h x) - f(x) and solving the linear system over the field.
InvariantSpace invariant_space_degree(const std::vector<Matrix>& gens, int degree,
                                      const Caps& caps = {});

struct MinDegree {
    std::optional<int> degree;  // empty: no invariant found below the cap
    int cap = 0;
};

MinDegree minimal_invariant_degree(const std::vector<Matrix>& gens, const Caps& caps = {});
MinDegree minimal_invariant_degree(const DiagGroup& g, const Caps& caps = {});

// Product of f moved through the coset representatives; invariant under the
// full group when f is invariant under the subgroup (checked by sampling).
MPoly lift_coset_product(const MPoly& f, const std::vector<Matrix>& coset_reps,
                         const std::vector<Matrix>& subgroup_gens, Rng& rng);

// Number of degree-d monomials in n variables, C(n+d-1, d).
Int monomial_count(int n, int d);

// Degree-d exponent vectors in n variables, lexicographically descending.
std::vector<Exponents> monomials_of_degree(int n, int d);

}  // namespace icrypt
