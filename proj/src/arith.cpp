#include "ostq/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace ostq {

/* ---------------------------------------------------------------- */
/* primality                                                        */
/* ---------------------------------------------------------------- */

namespace {

bool miller_rabin_witness(const bigint& n, const bigint& a, const bigint& d, unsigned long s) {
    if (mpz_divisible_p(n.get_mpz_t(), a.get_mpz_t()))
        return n == a;
    bigint x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1)
            return true;
    }
    return false;
}

/* Strong Lucas probable-prime test with Selfridge's parameters. */
bool strong_lucas(const bigint& n) {
    /* find D = 5, -7, 9, -11, ... with (D|n) = -1 */
    bigint d = 5;
    while (true) {
        int k = mpz_jacobi(d.get_mpz_t(), n.get_mpz_t());
        if (k == -1)
            break;
        if (k == 0 && abs(d) != n)
            return false; /* proper factor found */
        d = d > 0 ? bigint(-(d + 2)) : bigint(-(d - 2));
        if (abs(d) > 1000 && is_square(n))
            return false;
    }
    const bigint q = (1 - d) / 4; /* P = 1 */

    bigint t = n + 1;
    unsigned long s = mpz_scan1(t.get_mpz_t(), 0);
    bigint m = t >> s;

    /* Lucas sequences U_m, V_m by binary ladder; track Q^k. */
    bigint u = 1, v = 1, qk = q; /* U_1, V_1 */
    long bits = (long)mpz_sizeinbase(m.get_mpz_t(), 2);
    for (long i = bits - 2; i >= 0; --i) {
        /* double: U_{2k} = U_k V_k, V_{2k} = V_k^2 - 2 Q^k */
        u = u * v % n;
        v = (v * v - 2 * qk) % n;
        qk = qk * qk % n;
        if (mpz_tstbit(m.get_mpz_t(), (mp_bitcnt_t)i)) {
            /* increment: U' = (P U + V)/2, V' = (D U + P V)/2  with P = 1 */
            bigint u2 = u + v;
            bigint v2 = d * u + v;
            if (mpz_odd_p(u2.get_mpz_t()))
                u2 += n;
            if (mpz_odd_p(v2.get_mpz_t()))
                v2 += n;
            u = (u2 >> 1) % n;
            v = (v2 >> 1) % n;
            qk = qk * q % n;
        }
    }
    u %= n;
    if (u == 0)
        return true;
    for (unsigned long r = 0; r < s; ++r) {
        if (v % n == 0)
            return true;
        v = (v * v - 2 * qk) % n;
        qk = qk * qk % n;
    }
    return false;
}

}  // namespace

bool is_prime(const bigint& n) {
    if (n < 2)
        return false;
    static const unsigned long small[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                          23, 29, 31, 37, 41, 43, 47, 53};
    for (unsigned long p : small) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    bigint d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    static const bigint two64 = bigint(1) << 64;
    if (n < two64) {
        /* deterministic base set below 2^64 */
        for (unsigned long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
            if (!miller_rabin_witness(n, a, d, s))
                return false;
        return true;
    }
    if (!miller_rabin_witness(n, 2, d, s))
        return false;
    if (is_square(n))
        return false;
    return strong_lucas(n);
}

/* ---------------------------------------------------------------- */
/* factorization                                                    */
/* ---------------------------------------------------------------- */

std::vector<unsigned long> primes_below(unsigned long bound) {
    std::vector<bool> comp(bound, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i < bound; ++i) {
        if (comp[i])
            continue;
        out.push_back(i);
        for (unsigned long j = i * i; j < bound; j += i)
            comp[j] = true;
    }
    return out;
}

namespace {

const std::vector<unsigned long>& trial_primes() {
    static const std::vector<unsigned long> ps = primes_below(1 << 16);
    return ps;
}

/* Brent's variant of Pollard rho; returns a nontrivial factor or 0. */
bigint rho_brent(const bigint& n, unsigned long c, unsigned long max_iters) {
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    bigint y = 2, r = 1, q = 1, g = 1, x, ys;
    const unsigned long batch = 128;
    unsigned long iters = 0;
    while (g == 1 && iters < max_iters) {
        x = y;
        for (bigint i = 0; i < r; ++i)
            y = (y * y + c) % n;
        bigint k = 0;
        while (k < r && g == 1) {
            ys = y;
            bigint rem = r - k;
            unsigned long lim = rem < batch ? rem.get_ui() : batch;
            for (unsigned long i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * abs(x - y) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += lim;
            iters += lim;
        }
        r *= 2;
    }
    if (g == n) {
        /* backtrack */
        do {
            ys = (ys * ys + c) % n;
            bigint diff = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n || g == 1)
        return 0;
    return g;
}

void factor_into(const bigint& n, std::map<bigint, unsigned>& acc) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        acc[n] += 1;
        return;
    }
    for (unsigned long c = 1; c < 40; ++c) {
        bigint g = rho_brent(n, c, 1ul << 27);
        if (g != 0) {
            factor_into(g, acc);
            factor_into(n / g, acc);
            return;
        }
    }
    throw computation_error("factorization incomplete: " + n.get_str());
}

}  // namespace

bigint factorization::reconstruct() const {
    bigint r = 1;
    for (auto& [p, e] : factors) {
        bigint pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        r *= pe;
    }
    return r;
}

factorization factor(const bigint& n) {
    if (n == 0)
        throw computation_error("factor: zero input");
    bigint m = abs(n);
    factorization out;
    out.value = m;
    if (m == 1)
        return out;
    std::map<bigint, unsigned> acc;
    for (unsigned long p : trial_primes()) {
        if (m == 1)
            break;
        if (bigint(p) * p > m) {
            acc[m] += 1;
            m = 1;
            break;
        }
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            acc[p] += 1;
            m /= p;
        }
    }
    if (m > 1)
        factor_into(m, acc);
    for (auto& [p, e] : acc)
        out.factors.emplace_back(p, e);
    return out;
}

int kronecker(const bigint& a, const bigint& n) {
    if (a == 0 && n == 0)
        throw computation_error("kronecker(0,0) undefined");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

std::pair<bigint, bigint> squarefree_kernel(const bigint& n) {
    if (n == 0)
        throw computation_error("squarefree_kernel: zero input");
    factorization f = factor(n);
    bigint sf = n < 0 ? -1 : 1, sq = 1;
    for (auto& [p, e] : f.factors) {
        if (e & 1)
            sf *= p;
        bigint pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), e / 2);
        sq *= pk;
    }
    return {sf, sq};
}

bigint isqrt(const bigint& n) {
    bigint r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bigint isqrt_ceil(const bigint& n) {
    bigint r = isqrt(n);
    if (r * r < n)
        ++r;
    return r;
}

bool is_square(const bigint& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

/* ---------------------------------------------------------------- */
/* integer matrices                                                 */
/* ---------------------------------------------------------------- */

integer_matrix integer_matrix::identity(std::size_t n) {
    integer_matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

integer_matrix integer_matrix::operator*(const integer_matrix& o) const {
    if (cols_ != o.rows_)
        throw computation_error("matrix product: shape mismatch");
    integer_matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const bigint& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) += a * o(k, j);
        }
    return r;
}

integer_matrix integer_matrix::transpose() const {
    integer_matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = (*this)(i, j);
    return r;
}

void integer_matrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap(e_[i * cols_ + a], e_[i * cols_ + b]);
}

void integer_matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap(e_[a * cols_ + j], e_[b * cols_ + j]);
}

void integer_matrix::addmul_col(std::size_t a, std::size_t b, const bigint& q) {
    if (q == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        e_[i * cols_ + a] += q * e_[i * cols_ + b];
}

void integer_matrix::addmul_row(std::size_t a, std::size_t b, const bigint& q) {
    if (q == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        e_[a * cols_ + j] += q * e_[b * cols_ + j];
}

void integer_matrix::negate_col(std::size_t a) {
    for (std::size_t i = 0; i < rows_; ++i)
        e_[i * cols_ + a] = -e_[i * cols_ + a];
}

void integer_matrix::negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j)
        e_[a * cols_ + j] = -e_[a * cols_ + j];
}

bool integer_matrix::is_zero() const {
    for (auto& x : e_)
        if (x != 0)
            return false;
    return true;
}

std::string integer_matrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? " " : "") << e_[i * cols_ + j].get_str();
    }
    os << "]";
    return os.str();
}

namespace {

/* Unimodular 2-column transform sending (a, b) = (H(r,p), H(r,k)) to
 * (g, 0) with g = gcd(a, b).  Applied to H and mirrored on V. */
void gcd_cols(integer_matrix& H, integer_matrix& V, std::size_t r, std::size_t p,
              std::size_t k) {
    const bigint a = H(r, p), b = H(r, k);
    if (b == 0)
        return;
    if (a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        bigint q = b / a;
        H.addmul_col(k, p, -q);
        V.addmul_col(k, p, -q);
        return;
    }
    bigint g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const bigint as = a / g, bs = b / g;
    for (std::size_t i = 0; i < H.rows(); ++i) {
        bigint hp = H(i, p), hk = H(i, k);
        H(i, p) = u * hp + v * hk;
        H(i, k) = as * hk - bs * hp;
    }
    for (std::size_t i = 0; i < V.rows(); ++i) {
        bigint vp = V(i, p), vk = V(i, k);
        V(i, p) = u * vp + v * vk;
        V(i, k) = as * vk - bs * vp;
    }
}

}  // namespace

integer_matrix hnf_of_column_span(const integer_matrix& M, integer_matrix* transform) {
    integer_matrix H = M;
    integer_matrix V = integer_matrix::identity(M.cols());
    const std::size_t m = H.rows(), n = H.cols();
    /* Pivots are established bottom-up and right-to-left, so a square
     * nonsingular input ends upper triangular with positive diagonal. */
    std::vector<std::size_t> pivot_cols; /* established, descending */
    std::size_t j = n;                   /* columns [j, n) are established */
    for (std::size_t ri = m; ri-- > 0 && j > 0;) {
        const std::size_t r = ri;
        /* gcd-eliminate row r into a single entry among columns [0, j) */
        std::size_t p = n;
        for (std::size_t k = 0; k < j; ++k)
            if (H(r, k) != 0 && (p == n || abs(H(r, k)) < abs(H(r, p))))
                p = k;
        if (p == n)
            continue; /* row is zero on the remaining columns */
        for (std::size_t k = 0; k < j; ++k)
            if (k != p)
                gcd_cols(H, V, r, p, k);
        H.swap_cols(j - 1, p);
        V.swap_cols(j - 1, p);
        --j;
        if (H(r, j) < 0) {
            H.negate_col(j);
            V.negate_col(j);
        }
        /* entries of this pivot row to the right go into [0, pivot) */
        for (std::size_t pc : pivot_cols) {
            bigint q;
            mpz_fdiv_q(q.get_mpz_t(), H(r, pc).get_mpz_t(), H(r, j).get_mpz_t());
            H.addmul_col(pc, j, -q);
            V.addmul_col(pc, j, -q);
        }
        pivot_cols.push_back(j);
    }
    const std::size_t rank = pivot_cols.size();
    integer_matrix R(m, rank);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < rank; ++k)
            R(i, k) = H(i, n - rank + k);
    if (transform)
        *transform = V;
    return R;
}

integer_matrix hermite_normal_form(const integer_matrix& M) {
    integer_matrix H = hnf_of_column_span(M);
    if (H.cols() != M.cols())
        throw computation_error("hermite_normal_form: input is rank deficient");
    return H;
}

namespace {

/* Column echelon by unimodular column ops, pivots at the top-left:
 * column j ends with its pivot at row pr[j] (strictly increasing) and the
 * pivot row is zero to the right of the pivot. */
void echelon_cols(integer_matrix& A, integer_matrix& V) {
    const std::size_t m = A.rows(), n = A.cols();
    std::size_t j = 0;
    for (std::size_t r = 0; r < m && j < n; ++r) {
        std::size_t p = n;
        for (std::size_t k = j; k < n; ++k)
            if (A(r, k) != 0 && (p == n || abs(A(r, k)) < abs(A(r, p))))
                p = k;
        if (p == n)
            continue;
        for (std::size_t k = j; k < n; ++k)
            if (k != p)
                gcd_cols(A, V, r, p, k);
        A.swap_cols(j, p);
        V.swap_cols(j, p);
        if (A(r, j) < 0) {
            A.negate_col(j);
            V.negate_col(j);
        }
        ++j;
    }
}

bool is_diagonal(const integer_matrix& A) {
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (i != j && A(i, j) != 0)
                return false;
    return true;
}

}  // namespace

snf_result smith_normal_form(const integer_matrix& M) {
    const std::size_t m = M.rows(), n = M.cols();
    integer_matrix D = M;
    integer_matrix U = integer_matrix::identity(m);
    integer_matrix V = integer_matrix::identity(n);
    /* alternate column-echelon passes on D and its transpose until the
     * matrix is diagonal; entries stay within HNF-like bounds */
    while (!is_diagonal(D)) {
        echelon_cols(D, V);
        if (is_diagonal(D))
            break;
        integer_matrix Dt = D.transpose();
        integer_matrix Ut = U.transpose();
        echelon_cols(Dt, Ut);
        D = Dt.transpose();
        U = Ut.transpose();
    }
    /* compact nonzero entries onto the leading diagonal */
    std::size_t rank = 0;
    for (std::size_t i = 0; i < std::min(m, n); ++i) {
        if (D(i, i) == 0)
            continue;
        if (i != rank) {
            D.swap_rows(i, rank);
            U.swap_rows(i, rank);
            D.swap_cols(i, rank);
            V.swap_cols(i, rank);
        }
        ++rank;
    }
    /* normalize signs and enforce the divisibility chain d1 | d2 | ... */
    for (std::size_t i = 0; i < rank; ++i)
        if (D(i, i) < 0) {
            D.negate_row(i);
            U.negate_row(i);
        }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < rank; ++i) {
            bigint a = D(i, i), b = D(i + 1, i + 1);
            if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()))
                continue;
            changed = true;
            /* diag(a,b) -> diag(gcd, lcm) via a 2x2 unimodular dance */
            D.addmul_col(i, i + 1, 1);
            V.addmul_col(i, i + 1, 1);
            bigint g, u, v;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            const bigint as = a / g, bs = b / g;
            for (std::size_t j = 0; j < n; ++j) {
                bigint di = D(i, j), dk = D(i + 1, j);
                D(i, j) = u * di + v * dk;
                D(i + 1, j) = as * dk - bs * di;
            }
            for (std::size_t j = 0; j < m; ++j) {
                bigint ui = U(i, j), uk = U(i + 1, j);
                U(i, j) = u * ui + v * uk;
                U(i + 1, j) = as * uk - bs * ui;
            }
            /* D is now [[g, v*b], [0, -as*b... ]] on the 2x2 block; clear it */
            bigint q = D(i, i + 1) / D(i, i);
            D.addmul_col(i + 1, i, -q);
            V.addmul_col(i + 1, i, -q);
            if (D(i + 1, i + 1) < 0) {
                D.negate_row(i + 1);
                U.negate_row(i + 1);
            }
        }
    }
    snf_result r;
    r.rank = rank;
    for (std::size_t i = 0; i < rank; ++i)
        r.invariant_factors.push_back(D(i, i));
    r.U = U;
    r.V = V;
    r.D = D;
    return r;
}

integer_matrix integer_kernel(const integer_matrix& M) {
    snf_result s = smith_normal_form(M);
    const std::size_t n = M.cols();
    std::size_t k = n - s.rank;
    integer_matrix K(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i)
            K(i, j) = s.V(i, s.rank + j);
    return K;
}

bool solve_integer(const integer_matrix& M, const std::vector<bigint>& b, std::vector<bigint>& x) {
    if (b.size() != M.rows())
        throw computation_error("solve_integer: shape mismatch");
    snf_result s = smith_normal_form(M);
    /* M = U^-1 D V^-1, so M x = b  <=>  D y = U b with x = V y */
    std::vector<bigint> ub(M.rows(), 0);
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.rows(); ++j)
            ub[i] += s.U(i, j) * b[j];
    std::vector<bigint> y(M.cols(), 0);
    for (std::size_t i = 0; i < M.rows(); ++i) {
        if (i < s.rank) {
            if (!mpz_divisible_p(ub[i].get_mpz_t(), s.D(i, i).get_mpz_t()))
                return false;
            y[i] = ub[i] / s.D(i, i);
        } else if (ub[i] != 0) {
            return false;
        }
    }
    x.assign(M.cols(), 0);
    for (std::size_t i = 0; i < M.cols(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            x[i] += s.V(i, j) * y[j];
    return true;
}

bigint determinant(const integer_matrix& M) {
    if (M.rows() != M.cols())
        throw computation_error("determinant: not square");
    std::size_t n = M.rows();
    if (n == 0)
        return 1;
    integer_matrix A = M;
    bigint prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            std::size_t piv = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (A(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv == n)
                return 0;
            A.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                A(i, j) = A(i, j) * A(k, k) - A(i, k) * A(k, j);
                mpz_divexact(A(i, j).get_mpz_t(), A(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = A(k, k);
    }
    return sign > 0 ? A(n - 1, n - 1) : -A(n - 1, n - 1);
}

/* ---------------------------------------------------------------- */
/* abelian groups                                                   */
/* ---------------------------------------------------------------- */

bigint abelian_group::order() const {
    bigint o = 1;
    for (auto& d : invariant_factors)
        o *= d;
    return o;
}

std::string abelian_group::to_string() const {
    if (trivial())
        return "trivial";
    std::ostringstream os;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i)
        os << (i ? " x " : "") << "Z/" << invariant_factors[i].get_str();
    return os.str();
}

abelian_group make_abelian_group(std::vector<bigint> factors, std::vector<std::string> labels) {
    abelian_group g;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < 1)
            throw computation_error("abelian group: nonpositive invariant factor");
        if (factors[i] == 1)
            continue;
        if (!g.invariant_factors.empty() &&
            !mpz_divisible_p(factors[i].get_mpz_t(), g.invariant_factors.back().get_mpz_t()))
            throw computation_error("abelian group: broken divisibility chain");
        g.invariant_factors.push_back(factors[i]);
        g.generator_labels.push_back(i < labels.size() ? labels[i] : "");
    }
    return g;
}

}  // namespace ostq
