#pragma once

#include <map>
#include <vector>

#include "icrypt/matrix.hpp"

namespace icrypt {

using Exponents = std::vector<long>;

// Sparse multivariate polynomial over a ring context. Zero coefficients are
// never stored; the zero polynomial has an empty term map.
struct MPoly {
    RingPtr ring;
    int nvars = 0;
    std::map<Exponents, Elem> terms;

    MPoly() = default;
    MPoly(RingPtr r, int vars) : ring(std::move(r)), nvars(vars) {}

    static MPoly monomial(RingPtr r, const Exponents& e, const Elem& coeff);

    bool is_zero() const { return terms.empty(); }
    long total_degree() const;

    void add_term(const Exponents& e, const Elem& coeff);

    MPoly add(const MPoly& o) const;
    MPoly mul(const MPoly& o) const;
    MPoly scale(const Elem& c) const;
    MPoly neg() const;

    Elem eval(const std::vector<Elem>& point) const;

    // f(M x): substitute each variable x_j by the linear form given by row j
    // of M applied to the new variables.
    MPoly substitute_linear(const Matrix& m) const;

    std::string str() const;
    nlohmann::json to_json() const;
    static MPoly from_json(RingPtr r, const nlohmann::json& j);
};

// Monomial exponent vectors may be negative; evaluation then requires the
// point coordinates to be units.
Elem eval_monomial(const Ring& ring, const Exponents& e, const std::vector<Elem>& point);

}  // namespace icrypt
