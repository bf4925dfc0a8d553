#pragma once

// Exact spectral classification of integer matrices.
//
// A matrix is expanding when every eigenvalue has absolute value strictly
// greater than one.  The decision is fully exact: no floating point, no
// epsilon.  Unit-circle eigenvalues are detected separately and reported
// as a "boundary" verdict so downstream algorithms never run on them.

#include "torext/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace torext {

/// Monic characteristic polynomial det(tI - A).
/// coeffs[0] = 1 is the leading coefficient; coeffs[p] is the constant term.
struct CharPoly {
    int degree = 0;
    std::vector<Int> coeffs;  // descending powers, size degree + 1
};

enum class Expanding { Expanding, NotExpanding, Boundary };

const char* to_string(Expanding s);

struct ExpandingVerdict {
    Expanding status = Expanding::NotExpanding;
    std::string witness;  // empty for a clean "expanding" verdict
};

CharPoly char_poly(const IntMatrix& a);

/// Exact verdict: expanding iff all eigenvalue moduli are > 1.
///
/// Method: (1) singular matrices are not expanding; (2) the common factor of
/// the characteristic polynomial and its coefficient reversal collects all
/// reciprocal eigenvalue pairs -- a unit-circle root of that factor yields
/// "boundary", and a nonconstant factor without unit-circle roots forces an
/// eigenvalue of modulus < 1; (3) otherwise a division-free Schur-type
/// iteration on the reversed polynomial decides whether all reciprocal roots
/// lie strictly inside the unit disk.
ExpandingVerdict is_expanding(const IntMatrix& a);

/// Returns (a, false) when det(a) > 0 and (a*a, true) when det(a) < 0.
/// Throws domain_error on singular input.
std::pair<IntMatrix, bool> ensure_positive_degree(const IntMatrix& a);

namespace detail {

// Integer polynomials, ascending coefficients, no trailing zero (the zero
// polynomial is the empty vector).  Test code exercises these directly.
using IntPoly = std::vector<Int>;

IntPoly trim(IntPoly f);
int degree(const IntPoly& f);           // -1 for the zero polynomial
Int eval(const IntPoly& f, const Int& x);
IntPoly reverse_poly(const IntPoly& f); // t^deg(f) * f(1/t)
IntPoly derivative(const IntPoly& f);

/// Primitive gcd over Z, positive leading coefficient; gcd(f, 0) = primitive f.
IntPoly poly_gcd(const IntPoly& f, const IntPoly& g);

/// Exact decision: does f (f(0) != 0) have a complex root on |t| = 1?
bool has_unit_circle_root(const IntPoly& f);

/// Number of distinct real roots of f in the open interval (lo, hi);
/// requires f nonzero and f(lo), f(hi) != 0.
int count_real_roots_in(const IntPoly& f, const Int& lo, const Int& hi);

}  // namespace detail

}  // namespace torext
