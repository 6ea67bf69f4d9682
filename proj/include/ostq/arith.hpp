#ifndef OSTQ_ARITH_HPP
#define OSTQ_ARITH_HPP

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ostq {

using bigint = mpz_class;
using bigrat = mpq_class;

/* Error taxonomy shared by the whole library.  The kind maps onto the
 * CLI exit codes (computation = 3, verification = 2, parse = 4). */
enum class error_kind { computation, verification, parse };

struct error : std::runtime_error {
    error_kind kind;
    error(error_kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline error computation_error(const std::string& m) { return error(error_kind::computation, m); }
inline error verification_error(const std::string& m) { return error(error_kind::verification, m); }
inline error parse_error(const std::string& m) { return error(error_kind::parse, m); }

/* ---- primality and factorization ---- */

/* Deterministic Miller-Rabin (base set valid below 2^64), strong BPSW above. */
bool is_prime(const bigint& n);

struct factorization {
    bigint value;                                   /* = |input| */
    std::vector<std::pair<bigint, unsigned>> factors; /* primes strictly increasing */

    bigint reconstruct() const;
};

/* Factors |n|.  Trial division plus Brent's rho; guaranteed for |n| <= 2^96,
 * larger inputs may throw "factorization incomplete". */
factorization factor(const bigint& n);

/* Kronecker symbol (a|n). */
int kronecker(const bigint& a, const bigint& n);

/* n = squarefree * square^2, sign carried by the squarefree part. */
std::pair<bigint, bigint> squarefree_kernel(const bigint& n);

/* Primes below `bound`, ascending. */
std::vector<unsigned long> primes_below(unsigned long bound);

/* Integer square root, and the least integer whose square is >= n. */
bigint isqrt(const bigint& n);
bigint isqrt_ceil(const bigint& n);
bool is_square(const bigint& n);

/* ---- exact integer matrices ---- */

class integer_matrix {
  public:
    integer_matrix() : rows_(0), cols_(0) {}
    integer_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static integer_matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const bigint& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    bigint& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    bool operator==(const integer_matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    integer_matrix operator*(const integer_matrix& o) const;
    integer_matrix transpose() const;

    void swap_cols(std::size_t a, std::size_t b);
    void swap_rows(std::size_t a, std::size_t b);
    /* col[a] += q * col[b], row analogue below */
    void addmul_col(std::size_t a, std::size_t b, const bigint& q);
    void addmul_row(std::size_t a, std::size_t b, const bigint& q);
    void negate_col(std::size_t a);
    void negate_row(std::size_t a);

    bool is_zero() const;

    std::string to_string() const;

  private:
    std::size_t rows_, cols_;
    std::vector<bigint> e_;
};

/* Column-style Hermite normal form of the column span of M.
 *
 * Result H = M*V for unimodular V: pivot rows strictly increase by column,
 * pivots positive, entries of a pivot row to the right of its pivot reduced
 * into [0, pivot); entries below a pivot are zero.  For square nonsingular
 * input this is upper triangular.  H depends only on the lattice spanned by
 * the columns; zero columns are dropped.  `transform` (optional) receives V.
 */
integer_matrix hnf_of_column_span(const integer_matrix& M, integer_matrix* transform = nullptr);

/* Spec'd operation: requires full column rank, throws otherwise. */
integer_matrix hermite_normal_form(const integer_matrix& M);

struct snf_result {
    std::vector<bigint> invariant_factors; /* nonzero d1 | d2 | ... only */
    std::size_t rank;                      /* number of nonzero factors */
    integer_matrix U, V;                   /* U*M*V = diag(d1..dr, 0...) */
    integer_matrix D;                      /* the full diagonal matrix */
};

snf_result smith_normal_form(const integer_matrix& M);

/* Basis of the integer kernel {x : M x = 0}, as matrix columns. */
integer_matrix integer_kernel(const integer_matrix& M);

/* Solve M x = b over the integers; false if no integral solution. */
bool solve_integer(const integer_matrix& M, const std::vector<bigint>& b, std::vector<bigint>& x);

/* Determinant (Bareiss fraction-free elimination). */
bigint determinant(const integer_matrix& M);

/* ---- finitely generated finite abelian groups ---- */

/* Invariant-factor presentation: d1 | d2 | ... | dk, all >= 2.  The trivial
 * group has no factors and order 1. */
struct abelian_group {
    std::vector<bigint> invariant_factors;
    std::vector<std::string> generator_labels; /* one per factor, may be empty strings */

    bigint order() const;
    bool trivial() const { return invariant_factors.empty(); }
    bool operator==(const abelian_group& o) const {
        return invariant_factors == o.invariant_factors;
    }
    std::string to_string() const; /* e.g. "Z/3 x Z/9" or "trivial" */
};

/* Drops unit factors and checks the divisibility chain. */
abelian_group make_abelian_group(std::vector<bigint> factors,
                                 std::vector<std::string> labels = {});

}  // namespace ostq

#endif
