#pragma once

// Scalar and matrix types shared by the whole library.
//
// Every entry is an arbitrary-precision integer (GMP mpz_class); no
// operation anywhere is allowed to overflow or round.  Eigen provides the
// dense containers and exact ring arithmetic; all field-like steps
// (division, pivoting) are implemented fraction-free on top.

#include <gmpxx.h>

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    using Real = mpz_class;
    using NonInteger = mpq_class;
    using Nested = mpz_class;
    using Literal = long;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 30,
        MulCost = 50
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace torext {

using Int = mpz_class;
using Rational = mpq_class;

/// Square matrix of arbitrary-precision integers (dynamic dimension p >= 1).
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

/// Matrix over Z_2; entries are kept in {0,1} by the mod-2 helpers.
using Mod2Matrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Row vector over Z_2; entries in {0,1}.
using Mod2RowVector = Eigen::Matrix<std::uint8_t, 1, Eigen::Dynamic>;

/// Domain error: a precondition of a library operation was violated.
class domain_error : public std::runtime_error {
  public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parse error: malformed textual or JSON input.
class parse_error : public std::runtime_error {
  public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool is_square(const IntMatrix& a) { return a.rows() == a.cols() && a.rows() >= 1; }

inline int dim(const IntMatrix& a) { return static_cast<int>(a.rows()); }

inline IntMatrix identity(int p) { return IntMatrix::Identity(p, p); }

inline bool matrices_equal(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

inline bool is_odd(const Int& x) { return mpz_odd_p(x.get_mpz_t()) != 0; }
inline bool is_even(const Int& x) { return mpz_even_p(x.get_mpz_t()) != 0; }

/// Quotient of an exact division; throws std::logic_error when b does not divide a.
inline Int exact_div(const Int& a, const Int& b) {
    if (b == 0) throw std::logic_error("exact_div: division by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw std::logic_error("exact_div: inexact division");
    return q;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

}  // namespace torext
