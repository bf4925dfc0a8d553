#pragma once

// Smith normal form of a positive-determinant integer matrix with both
// transform matrices kept in SL(p,Z):
//
//     a = u * diag(deltas) * v,   det(u) = det(v) = 1,
//     deltas positive with delta_i | delta_{i+1}.

#include "torext/types.hpp"

#include <utility>
#include <vector>

namespace torext {

struct SmithDecomposition {
    IntMatrix u;
    std::vector<Int> deltas;
    IntMatrix v;
};

/// Requires det(a) > 0 (apply ensure_positive_degree first if needed).
/// The result is verified by multiply-back before it is returned.
SmithDecomposition smith_decompose(const IntMatrix& a);

/// Splits diag(deltas) into its elementary diagonal factors
/// diag(1,...,delta_i,...,1); factors with delta_i = 1 are retained.
std::vector<std::pair<int, Int>> elementary_factors(const SmithDecomposition& d);

/// diag(deltas) as a matrix.
IntMatrix diagonal_of(const SmithDecomposition& d);

}  // namespace torext
