#include "icrypt/intlin.hpp"

#include <algorithm>
#include <numeric>

namespace icrypt {

ExtGcd ext_gcd(const Int& a, const Int& b) {
    if (a == 0 && b == 0) throw DomainError("ext_gcd(0, 0) undefined");
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {g, x, y};
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

Int pollard_brent(const Int& n, Rng& rng) {
    // Brent's cycle variant of Pollard rho; n odd composite, not a prime power handled upstream.
    while (true) {
        Int y = rng.below(n - 1) + 1;
        Int c = rng.below(n - 1) + 1;
        Int m = 128, g = 1, r = 1, q = 1, x, ys;
        auto step = [&](Int& v) { v = (v * v + c) % n; };
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) step(y);
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = m < r - k ? m : Int(r - k);
                for (Int i = 0; i < lim; ++i) {
                    step(y);
                    Int diff = x - y;
                    if (diff < 0) diff = -diff;
                    q = q * diff % n;
                }
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // Backtrack one step at a time.
            do {
                step(ys);
                Int diff = x - ys;
                if (diff < 0) diff = -diff;
                g = gcd(diff, n);
            } while (g == 1);
        }
        if (g != n) return g;
        // Cycle collapsed onto n itself; retry with a new seed.
    }
}

void factor_rec(const Int& n, std::vector<Int>& out, Rng& rng) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    if (n < 1000000) {
        Int m = n;
        for (Int p = 2; p * p <= m; ++p) {
            while (m % p == 0) {
                out.push_back(p);
                m /= p;
            }
        }
        if (m > 1) out.push_back(m);
        return;
    }
    // Perfect power check keeps rho away from p^k inputs it handles poorly.
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                std::vector<Int> sub;
                factor_rec(root, sub, rng);
                for (unsigned long i = 0; i < k; ++i) out.insert(out.end(), sub.begin(), sub.end());
                return;
            }
        }
    }
    if (n % 2 == 0) {
        out.push_back(2);
        factor_rec(n / 2, out, rng);
        return;
    }
    Int d = pollard_brent(n, rng);
    factor_rec(d, out, rng);
    factor_rec(n / d, out, rng);
}

}  // namespace

std::vector<Int> factorize(const Int& n) {
    if (n < 1) throw DomainError("factorize: n must be >= 1");
    std::vector<Int> out;
    Rng rng(0x9e3779b97f4a7c15ULL);  // internal, result is seed-independent
    factor_rec(n, out, rng);
    std::sort(out.begin(), out.end());
    return out;
}

std::map<Int, int> factor_map(const Int& n) {
    std::map<Int, int> m;
    for (const Int& p : factorize(n)) m[p]++;
    return m;
}

std::vector<Int> divisors(const Int& n, std::size_t cap) {
    Int v = abs(n);
    if (v == 0) throw DomainError("divisors of 0");
    std::vector<Int> out{1};
    for (const auto& [p, e] : factor_map(v)) {
        std::size_t base = out.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) {
                out.push_back(out[i] * pk);
                if (out.size() > cap) throw ResourceError("divisors: too many divisors");
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int crt(const std::vector<Int>& residues, const std::vector<Int>& moduli) {
    if (residues.size() != moduli.size() || residues.empty())
        throw DomainError("crt: size mismatch");
    Int x = mod_floor(residues[0], moduli[0]);
    Int m = moduli[0];
    for (std::size_t i = 1; i < residues.size(); ++i) {
        auto [g, u, v] = ext_gcd(m, moduli[i]);
        if (g != 1) throw DomainError("crt: moduli not coprime");
        // x' = x + m * u * (r_i - x) mod m*m_i
        Int mi = m * moduli[i];
        x = mod_floor(x + m * mod_floor(u * (residues[i] - x), moduli[i]), mi);
        m = mi;
    }
    return x;
}

IntMat mat_identity_z(int n) {
    IntMat m(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat mat_mul_z(const IntMat& a, const IntMat& b) {
    int r = static_cast<int>(a.size());
    int k = static_cast<int>(b.size());
    int c = b.empty() ? 0 : static_cast<int>(b[0].size());
    IntMat out(r, IntVec(c, 0));
    for (int i = 0; i < r; ++i)
        for (int t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (int j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

Int det_z(const IntMat& a) {
    // Bareiss fraction-free elimination.
    int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    IntMat m = a;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int sw = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    sw = i;
                    break;
                }
            if (sw < 0) return 0;
            std::swap(m[k], m[sw]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

struct SnfState {
    IntMat d, u, v;
    int rows, cols;

    void row_swap(int i, int j) {
        std::swap(d[i], d[j]);
        std::swap(u[i], u[j]);
    }
    void col_swap(int i, int j) {
        for (auto& r : d) std::swap(r[i], r[j]);
        for (auto& r : v) std::swap(r[i], r[j]);
    }
    void row_add(int dst, int src, const Int& f) {  // row dst += f * row src
        for (int j = 0; j < cols; ++j) d[dst][j] += f * d[src][j];
        for (int j = 0; j < rows; ++j) u[dst][j] += f * u[src][j];
    }
    void col_add(int dst, int src, const Int& f) {
        for (auto& r : d) r[dst] += f * r[src];
        for (auto& r : v) r[dst] += f * r[src];
    }
    void row_neg(int i) {
        for (auto& x : d[i]) x = -x;
        for (auto& x : u[i]) x = -x;
    }
};

}  // namespace

Snf smith_normal_form(const IntMat& a) {
    int rows = static_cast<int>(a.size());
    int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    SnfState s{a, mat_identity_z(rows), mat_identity_z(cols), rows, cols};
    int rank_limit = std::min(rows, cols);

    for (int k = 0; k < rank_limit; ++k) {
        // Locate a pivot of minimal absolute value in the trailing block.
        auto find_pivot = [&]() -> std::optional<std::pair<int, int>> {
            std::optional<std::pair<int, int>> best;
            for (int i = k; i < rows; ++i)
                for (int j = k; j < cols; ++j)
                    if (s.d[i][j] != 0 &&
                        (!best || abs(s.d[i][j]) < abs(s.d[best->first][best->second])))
                        best = {{i, j}};
            return best;
        };
        auto piv = find_pivot();
        if (!piv) break;

        bool clean = false;
        while (!clean) {
            piv = find_pivot();
            if (piv->first != k) s.row_swap(k, piv->first);
            if (piv->second != k) s.col_swap(k, piv->second);
            clean = true;
            for (int i = k + 1; i < rows; ++i) {
                if (s.d[i][k] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s.d[i][k].get_mpz_t(), s.d[k][k].get_mpz_t());
                s.row_add(i, k, -q);
                if (s.d[i][k] != 0) clean = false;  // remainder became new smaller pivot
            }
            for (int j = k + 1; j < cols; ++j) {
                if (s.d[k][j] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s.d[k][j].get_mpz_t(), s.d[k][k].get_mpz_t());
                s.col_add(j, k, -q);
                if (s.d[k][j] != 0) clean = false;
            }
        }
        if (s.d[k][k] < 0) s.row_neg(k);

        // Enforce divisibility of the trailing block by the pivot.
        for (int i = k + 1; i < rows; ++i)
            for (int j = k + 1; j < cols; ++j)
                if (s.d[i][j] % s.d[k][k] != 0) {
                    s.col_add(k, j, 1);
                    --k;  // redo this pivot
                    goto next_k;
                }
    next_k:;
    }
    return {s.u, s.d, s.v};
}

IntMat hnf_rows(const IntMat& rows_in, int n) {
    IntMat b = rows_in;
    int m = static_cast<int>(b.size());
    int pivot_row = 0;
    std::vector<int> pivot_cols;
    for (int c = 0; c < n && pivot_row < m; ++c) {
        // Combine all rows >= pivot_row into a single gcd pivot at column c.
        int nz = -1;
        for (int i = pivot_row; i < m; ++i)
            if (b[i][c] != 0) {
                nz = i;
                break;
            }
        if (nz < 0) continue;
        std::swap(b[pivot_row], b[nz]);
        for (int i = pivot_row + 1; i < m; ++i) {
            while (b[i][c] != 0) {
                Int q = b[pivot_row][c] / b[i][c];
                for (int j = 0; j < n; ++j) b[pivot_row][j] -= q * b[i][j];
                std::swap(b[pivot_row], b[i]);
            }
        }
        if (b[pivot_row][c] < 0)
            for (auto& x : b[pivot_row]) x = -x;
        // Reduce entries of earlier pivot rows at this column.
        for (std::size_t pi = 0; pi < pivot_cols.size(); ++pi) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), b[pi][c].get_mpz_t(), b[pivot_row][c].get_mpz_t());
            if (q != 0)
                for (int j = 0; j < n; ++j) b[pi][j] -= q * b[pivot_row][j];
        }
        pivot_cols.push_back(c);
        ++pivot_row;
    }
    b.resize(pivot_row);
    return b;
}

void CongruenceSystem::validate() const {
    for (const auto& row : l)
        if (static_cast<int>(row.size()) != cols()) throw DomainError("ragged congruence system");
    if (static_cast<int>(moduli.size()) != rows()) throw DomainError("moduli size mismatch");
    for (const Int& m : moduli)
        if (m < 0) throw DomainError("negative modulus");
}

bool CongruenceSystem::satisfied_by(const IntVec& d) const {
    for (int i = 0; i < rows(); ++i) {
        Int acc = 0;
        for (int j = 0; j < cols(); ++j) acc += l[i][j] * d[j];
        if (moduli[i] == 0) {
            if (acc != 0) return false;
        } else if (mod_floor(acc, moduli[i]) != 0) {
            return false;
        }
    }
    return true;
}

KernelLattice solve_congruence_kernel(const CongruenceSystem& sys) {
    sys.validate();
    int t = sys.rows(), n = sys.cols();
    if (t == 0) {
        KernelLattice full;
        full.basis = mat_identity_z(n);
        return full;
    }
    // Augmented matrix [L | slack columns], one slack per row with modulus >= 1.
    std::vector<int> slack_col(t, -1);
    int width = n;
    for (int i = 0; i < t; ++i)
        if (sys.moduli[i] >= 1) slack_col[i] = width++;
    IntMat aug(t, IntVec(width, 0));
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = sys.l[i][j];
        if (slack_col[i] >= 0) aug[i][slack_col[i]] = sys.moduli[i];
    }
    Snf snf = smith_normal_form(aug);
    // Kernel basis: columns j of V with zero image (d_j == 0 or j >= t).
    IntMat kernel_rows;
    for (int j = 0; j < width; ++j) {
        bool in_kernel = j >= t || snf.d[j][j] == 0;
        if (!in_kernel) continue;
        IntVec proj(n);
        for (int i = 0; i < n; ++i) proj[i] = snf.v[i][j];
        kernel_rows.push_back(std::move(proj));
    }
    KernelLattice lat;
    lat.basis = hnf_rows(kernel_rows, n);
    return lat;
}

KernelEnumerator::KernelEnumerator(const KernelLattice& lat, long coeff_bound, IntVec reduce_moduli)
    : basis_(lat.basis), bound_(coeff_bound), moduli_(std::move(reduce_moduli)) {
    if (coeff_bound < 1) throw DomainError("coeff bound must be >= 1");
    if (moduli_.empty()) moduli_ = lat.ambient_moduli;
}

void KernelEnumerator::fill_shell() {
    shell_reps_.clear();
    rep_idx_ = 0;
    const int k = static_cast<int>(basis_.size());
    std::vector<long> cur(k, 0);
    // All coefficient tuples with entries in [-B, B], L1 norm == shell_,
    // first nonzero entry positive.
    std::vector<std::vector<long>>& out = shell_reps_;
    auto rec = [&](auto&& self, int pos, long remaining, bool lead_fixed) -> void {
        if (pos == k) {
            if (remaining == 0 && lead_fixed) out.push_back(cur);
            return;
        }
        long lim = std::min(bound_, remaining);
        for (long c = -lim; c <= lim; ++c) {
            if (!lead_fixed && c < 0) continue;  // canonical rep: first nonzero > 0
            cur[pos] = c;
            self(self, pos + 1, remaining - std::abs(c), lead_fixed || c != 0);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, shell_, false);
    std::sort(out.begin(), out.end(), std::greater<>());
}

std::optional<IntVec> KernelEnumerator::next() {
    const int k = static_cast<int>(basis_.size());
    if (k == 0) return std::nullopt;
    const int n = static_cast<int>(basis_[0].size());
    while (true) {
        if (emit_negation_) {
            emit_negation_ = false;
            std::vector<long> negc(current_);
            for (auto& c : negc) c = -c;
            current_ = negc;
        } else {
            while (rep_idx_ >= shell_reps_.size()) {
                ++shell_;
                if (shell_ > bound_ * k) return std::nullopt;
                fill_shell();
            }
            current_ = shell_reps_[rep_idx_++];
            emit_negation_ = true;
        }
        IntVec v(n, 0);
        for (int i = 0; i < k; ++i) {
            if (current_[i] == 0) continue;
            for (int j = 0; j < n; ++j) v[j] += Int(current_[i]) * basis_[i][j];
        }
        if (!moduli_.empty())
            for (int j = 0; j < n; ++j)
                if (moduli_[j] > 0) v[j] = mod_floor(v[j], moduli_[j]);
        bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
        if (!zero) return v;
    }
}

bool lattice_contains(const IntMat& hnf_basis, const IntVec& v) {
    // Reduce v against the HNF rows; contained iff the remainder is zero.
    IntVec r = v;
    int n = static_cast<int>(v.size());
    for (const auto& row : hnf_basis) {
        int p = 0;
        while (p < n && row[p] == 0) ++p;
        if (p == n) continue;
        if (r[p] % row[p] != 0) continue;  // cannot clear exactly; fall through
        Int q = r[p] / row[p];
        for (int j = 0; j < n; ++j) r[j] -= q * row[j];
    }
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

}  // namespace icrypt
