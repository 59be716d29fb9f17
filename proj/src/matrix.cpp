#include "icrypt/matrix.hpp"

using nlohmann::json;

namespace icrypt {

Matrix::Matrix(RingPtr r, int size) : ring(std::move(r)), n(size) {
    if (n < 1) throw ParamError("Matrix: size must be positive");
    a.assign(static_cast<std::size_t>(n) * n, ring->zero());
}

Matrix Matrix::identity(RingPtr r, int n) {
    Matrix m(std::move(r), n);
    for (int i = 0; i < n; ++i) m.at(i, i) = m.ring->one();
    return m;
}

Matrix Matrix::diagonal(RingPtr r, const std::vector<Elem>& entries) {
    Matrix m(std::move(r), static_cast<int>(entries.size()));
    for (int i = 0; i < m.n; ++i) m.at(i, i) = entries[i];
    return m;
}

bool Matrix::is_identity() const { return *this == identity(ring, n); }

json Matrix::to_json() const {
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) row.push_back(ring->elem_to_json(at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Matrix Matrix::from_json(RingPtr r, const json& j) {
    int n = static_cast<int>(j.size());
    Matrix m(std::move(r), n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(j[i].size()) != n) throw ParamError("matrix is not square");
        for (int k = 0; k < n; ++k) m.at(i, k) = m.ring->elem_from_json(j[i][k]);
    }
    return m;
}

Matrix mat_mul(const Matrix& x, const Matrix& y) {
    if (x.n != y.n || !x.ring->same_as(*y.ring)) throw DomainError("mat_mul: shape/ring mismatch");
    const Ring& R = *x.ring;
    Matrix out(x.ring, x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            Elem s = R.zero();
            for (int k = 0; k < x.n; ++k) s = R.add(s, R.mul(x.at(i, k), y.at(k, j)));
            out.at(i, j) = s;
        }
    return out;
}

std::vector<Elem> mat_apply(const Matrix& m, const std::vector<Elem>& v) {
    if (static_cast<int>(v.size()) != m.n) throw DomainError("mat_apply: length mismatch");
    const Ring& R = *m.ring;
    std::vector<Elem> out(m.n, R.zero());
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out[i] = R.add(out[i], R.mul(m.at(i, j), v[j]));
    return out;
}

Matrix mat_pow(const Matrix& m, const Int& e) {
    if (e < 0) return mat_pow(mat_inv(m), -e);
    Matrix result = Matrix::identity(m.ring, m.n);
    Matrix base = m;
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = mat_mul(result, base);
        base = mat_mul(base, base);
        k >>= 1;
    }
    return result;
}

// Berkowitz: per leading principal minor, build the (k+1) x k Toeplitz-style
// transfer matrix from row/column borders and chain the coefficient vectors.
std::vector<Elem> char_poly(const Matrix& m) {
    const Ring& R = *m.ring;
    const int n = m.n;
    // coefficient vector of det(xI - M_k), highest degree first
    std::vector<Elem> c = {R.one(), R.neg(m.at(0, 0))};
    for (int k = 1; k < n; ++k) {
        // borders of the (k+1)-th leading principal minor
        std::vector<Elem> row(k), col(k);
        for (int i = 0; i < k; ++i) {
            row[i] = m.at(k, i);
            col[i] = m.at(i, k);
        }
        // toeplitz entries t[0] = 1, t[1] = -a_kk, t[j] = -(row * A^{j-2} * col)
        std::vector<Elem> t(k + 2);
        t[0] = R.one();
        t[1] = R.neg(m.at(k, k));
        std::vector<Elem> acc = col;
        for (int j = 2; j <= k + 1; ++j) {
            Elem dot = R.zero();
            for (int i = 0; i < k; ++i) dot = R.add(dot, R.mul(row[i], acc[i]));
            t[j] = R.neg(dot);
            if (j <= k) {
                std::vector<Elem> nxt(k, R.zero());
                for (int i = 0; i < k; ++i)
                    for (int l = 0; l < k; ++l) nxt[i] = R.add(nxt[i], R.mul(m.at(i, l), acc[l]));
                acc = std::move(nxt);
            }
        }
        // next = T * c, T lower triangular Toeplitz with first column t
        std::vector<Elem> next(k + 2, R.zero());
        for (int i = 0; i < k + 2; ++i)
            for (int j = 0; j <= i && j < static_cast<int>(c.size()); ++j)
                next[i] = R.add(next[i], R.mul(t[i - j], c[j]));
        c = std::move(next);
    }
    std::vector<Elem> ascending(c.rbegin(), c.rend());
    return ascending;
}

Matrix mat_inv(const Matrix& m) {
    const Ring& R = *m.ring;
    const int n = m.n;
    std::vector<Elem> c = char_poly(m);  // c[0..n], c[n] == 1
    // M (M^{n-1} + c_{n-1} M^{n-2} + ... + c_1 I) = -c_0 I
    auto det_unit_inv = R.inv(c[0]);
    if (!det_unit_inv) throw SingularMatrixError("matrix determinant is not a unit");
    Matrix acc = Matrix::identity(m.ring, n);
    Matrix sum(m.ring, n);
    for (int i = 0; i < n; ++i) sum.at(i, i) = c[1];
    for (int k = 2; k <= n; ++k) {
        acc = mat_mul(acc, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                sum.at(i, j) = R.add(sum.at(i, j), R.mul(c[k], acc.at(i, j)));
    }
    Elem scale = R.neg(*det_unit_inv);
    for (auto& e : sum.a) e = R.mul(e, scale);
    return sum;
}

Matrix random_unimodular(RingPtr r, int n, Rng& rng) {
    Matrix p = Matrix::identity(r, n);
    const Ring& R = *r;
    if (n == 1) return p;
    for (int step = 0; step < 3 * n; ++step) {
        int i = rng.range(0, n - 1);
        int j = rng.range(0, n - 2);
        if (j >= i) ++j;
        long c = 0;
        while (c == 0) c = rng.range(-2, 2);
        Elem ce = R.from_int(Int(c));
        for (int k = 0; k < n; ++k) p.at(i, k) = R.add(p.at(i, k), R.mul(ce, p.at(j, k)));
    }
    return p;
}

Matrix conjugate(const Matrix& p, const Matrix& m) { return mat_mul(mat_mul(p, m), mat_inv(p)); }

}  // namespace icrypt
