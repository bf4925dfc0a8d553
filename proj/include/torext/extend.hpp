#pragma once

// Extendability and modular types.
//
// An automorphism u in SL(p,Z) is extendable exactly when every column sum
// of u is odd, i.e. when the all-ones row vector over Z_2 is fixed by right
// multiplication with u mod 2.  The extendable matrices form the stabilizer
// subgroup of (1,...,1); the nonzero vectors of Z_2^p index its right
// cosets, giving exactly 2^p - 1 types.  (The reverse inclusion behind the
// exactness of this predicate is an external input to this library; the
// predicate itself is the odd-column-sum characterization.)

#include "torext/types.hpp"

#include <string>
#include <vector>

namespace torext {

/// Nonzero row vector over Z_2 of length p; identifies a coset of the
/// extendable subgroup.  Serialized as a bit-string, index 1 first.
class ModularType {
  public:
    ModularType(int p, std::uint32_t bits);
    explicit ModularType(const Mod2RowVector& v);

    static ModularType standard(int p);  // (1,...,1)
    static ModularType from_bitstring(const std::string& s);

    int p() const { return p_; }
    std::uint32_t bits() const { return bits_; }
    /// Entry at 1-based index (0 or 1).
    int entry(int index) const;
    Mod2RowVector vector() const;
    std::string bitstring() const;

    bool operator==(const ModularType&) const = default;
    bool operator<(const ModularType& o) const {
        return p_ != o.p_ ? p_ < o.p_ : bits_ < o.bits_;
    }

  private:
    int p_;
    std::uint32_t bits_;  // bit (p - index) holds entry `index`
};

/// Maximum dimension for type enumeration (2^p - 1 vectors).
inline constexpr int kMaxTypeDim = 16;

/// True iff every column sum of u is odd.  Requires det(u) = 1.
bool is_extendable(const IntMatrix& u);

/// The type of the coset containing u: (1,...,1) * mod2(u).
/// Requires det(u) = 1; the result is never zero for unimodular input.
ModularType type_of(const IntMatrix& u);

/// Right action of a mod-2 matrix on a type.
ModularType act(const ModularType& t, const Mod2Matrix& m);

/// Closure of the standard type under all elementary shears mod 2;
/// returns all 2^p - 1 nonzero vectors, sorted ascending by bit pattern.
std::vector<ModularType> orbit_of_standard(int p);

/// Deterministic matrix w in SL(p,Z) with type_of(w) = t.
IntMatrix coset_representative(const ModularType& t);

/// Membership in the conjugated subgroup tau^-1 E tau: whether u extends
/// over the embedding precomposed with tau.
bool is_extendable_via(const IntMatrix& u, const IntMatrix& tau);

}  // namespace torext
