#pragma once

#include <vector>

#include "icrypt/rings.hpp"

namespace icrypt {

// Square matrix over a ring context, row major.
struct Matrix {
    RingPtr ring;
    int n = 0;
    std::vector<Elem> a;

    Matrix() = default;
    Matrix(RingPtr r, int size);

    Elem& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const Elem& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static Matrix identity(RingPtr r, int n);
    static Matrix diagonal(RingPtr r, const std::vector<Elem>& entries);

    bool is_identity() const;
    bool operator==(const Matrix& o) const { return n == o.n && a == o.a; }

    nlohmann::json to_json() const;
    static Matrix from_json(RingPtr r, const nlohmann::json& j);
};

Matrix mat_mul(const Matrix& x, const Matrix& y);
std::vector<Elem> mat_apply(const Matrix& m, const std::vector<Elem>& v);
Matrix mat_pow(const Matrix& m, const Int& e);

// Coefficients of det(xI - M), ascending, c[n] == 1. Division free, so valid
// over every commutative ring context.
std::vector<Elem> char_poly(const Matrix& m);

// Inverse through the characteristic polynomial; throws SingularMatrixError
// when det(M) is not a unit.
Matrix mat_inv(const Matrix& m);

// Product of 3n random elementary row operations (add c times one row to
// another, c in [-2, 2] nonzero), hence determinant 1.
Matrix random_unimodular(RingPtr r, int n, Rng& rng);

// p * m * p^{-1}
Matrix conjugate(const Matrix& p, const Matrix& m);

}  // namespace icrypt
