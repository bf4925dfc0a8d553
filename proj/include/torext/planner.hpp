#pragma once

// Realization planning for expanding integer matrices.
//
// The lifting of an expanding matrix factors through its Smith normal form
//
//     a = u * D_1 ... D_p * v,     D_i = diag(1, ..., delta_i, ..., 1),
//
// where each diagonal factor acts as a (delta_i, 1)-cable along axis i and
// u, v act as plain automorphisms.  Iterating the lifting walks the
// embedding type through the finite set of 2^p - 1 modular types, so two
// iterates inside the first 2^p must agree; the gap d is a power for which
// the iterated lifting extends.  Exact positions depend on fiber winding
// parities that are inputs here, not derived quantities.

#include "torext/extend.hpp"
#include "torext/smith.hpp"
#include "torext/types.hpp"
#include "torext/words.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torext {

struct Cable {
    int axis = 0;  // 1-based
    Int winding;   // delta_i >= 1
};

struct LiftingPlan {
    IntMatrix u;
    std::vector<Cable> cables;  // ascending axis order
    IntMatrix v;
    IntMatrix source;  // the original matrix, before any squaring
    bool squared = false;
};

/// Witness matrix together with its modular type.
struct TypeState {
    IntMatrix witness;
    ModularType type;
};

/// Per-cable certificate emitted by step_type.
struct StepCertificate {
    int iterate = 0;  // 1-based iterate of the lifting
    int axis = 0;
    Int winding;
    IntMatrix witness_before;  // same-type witness the step factored
    GeneratorWord k_word;      // extendable factor split off the witness
    IntMatrix j;               // coset representative with cofactor(j, axis, axis) = 1
    IntMatrix b;               // column-scaled, row-reset matrix; det(b) = 1
    IntMatrix m;               // parity matrix applied after the cable
    ModularType type_after{1, 1};
};

enum class PlanMode { Guaranteed, Parametric };

struct RealizationPlan {
    PlanMode mode = PlanMode::Guaranteed;
    int k = 0;  // iterates discarded before the repeat (bound in guaranteed mode)
    int d = 0;  // period (bound 2^p - 1 in guaranteed mode)
    LiftingPlan lifting;
    std::vector<ModularType> states;        // parametric only: states[0..k+d]
    std::vector<StepCertificate> steps;     // parametric only
    std::vector<Mod2RowVector> m_parities;  // parametric only: one vector per cable
};

/// SNF-based lifting of an expanding matrix (squares first when the
/// determinant is negative).  Throws domain_error unless is_expanding
/// returns a clean "expanding" verdict.
LiftingPlan favorite_lifting(const IntMatrix& a);

/// Copies j, multiplies column i by delta, then overwrites row i with the
/// i-th standard basis row.  Requires det(j) = 1, cofactor(j,i,i) = 1 and
/// delta >= 1; the determinant-1 postcondition is asserted at runtime.
IntMatrix build_B(const IntMatrix& j, const Int& delta, int i);

/// Applies one (delta,1)-cable along `cable.axis` to the current state:
/// splits the witness as K*J, forms B from J, applies the parity matrix M
/// built from m_parity (entry at the axis is ignored), and returns the
/// state with witness M*B.  The optional certificate records J, K, B, M.
TypeState step_type(const TypeState& state, const Cable& cable,
                    const Mod2RowVector& m_parity, StepCertificate* cert = nullptr);

/// Composes the embedding with an automorphism: witness <- witness * w.
TypeState compose_automorphism_step(const TypeState& state, const IntMatrix& w);

/// Full planner.  Guaranteed mode emits the pigeonhole bounds k = 0,
/// d = 2^p - 1 without tracking.  Parametric mode walks the type through
/// every factor of the lifting under the supplied per-cable parity vectors
/// (all even when absent) until the first repeated type, returning exact
/// (k, d) plus per-step certificates.  p = 1 short-circuits to k = 0, d = 1.
RealizationPlan realize(const IntMatrix& a, PlanMode mode,
                        const std::optional<std::vector<Mod2RowVector>>& m_parities = {});

}  // namespace torext
