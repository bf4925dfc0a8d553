#pragma once

// Exact integer matrix core: products, fraction-free determinants,
// unimodular inverses, cofactors, mod-2 reduction, and the standard
// SL(p,Z) generator matrices.
//
// All indices on the public surface are 1-based.

#include "torext/types.hpp"

#include <utility>

namespace torext {

/// Exact product; throws domain_error on dimension mismatch.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Exact determinant via fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& a);

/// Exact integer inverse of a matrix with determinant +-1.
/// Throws domain_error when the determinant is not +-1.
IntMatrix inverse_unimodular(const IntMatrix& a);

/// Signed cofactor C_ij = (-1)^(i+j) * minor(i,j); for det(a) = 1 this is
/// the (j,i) entry of a^-1.  Indices are 1-based; throws on range errors.
Int cofactor(const IntMatrix& a, int i, int j);

/// Entrywise reduction modulo 2 (entries land in {0,1}).
Mod2Matrix mod2(const IntMatrix& a);

/// Product of two mod-2 matrices, reduced back into {0,1}.
Mod2Matrix mod2_mul(const Mod2Matrix& a, const Mod2Matrix& b);

/// Row vector times matrix over Z_2.
Mod2RowVector mod2_vec_mul(const Mod2RowVector& x, const Mod2Matrix& a);

// ---------------------------------------------------------------------------
// Generators of SL(p,Z).
//
//   shear(i,j)         = I + E_ij                 (full Dehn twist)
//   quarter_turn(i,j)  = shear(i,j)^-1 * shear(j,i) * shear(i,j)^-1
//                        (trades axes i and j, order four)
//   shear_squared(i,j) = shear(i,j)^2
//   shear_pair(i,j,k)  = shear(i,k) * shear(j,k)  (simultaneous row addition)
//
// Each is built exactly from its defining formula.
// ---------------------------------------------------------------------------

IntMatrix shear(int i, int j, int p);
IntMatrix quarter_turn(int i, int j, int p);
IntMatrix shear_squared(int i, int j, int p);
IntMatrix shear_pair(int i, int j, int k, int p);

enum class GenKind { Shear, QuarterTurn, ShearSquared, ShearPair };

/// Named-generator dispatcher.  ShearPair yields shear_pair(i, j, p, p),
/// the pair twisting along the last axis.
IntMatrix generator(GenKind kind, int i, int j, int p);

}  // namespace torext
