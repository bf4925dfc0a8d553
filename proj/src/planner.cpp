#include "torext/planner.hpp"

#include "torext/exactmat.hpp"
#include "torext/spectra.hpp"

#include <sstream>

namespace torext {

LiftingPlan favorite_lifting(const IntMatrix& a) {
    const ExpandingVerdict verdict = is_expanding(a);
    if (verdict.status != Expanding::Expanding) {
        std::ostringstream os;
        os << "favorite_lifting: matrix is not expanding (" << to_string(verdict.status);
        if (!verdict.witness.empty()) os << ": " << verdict.witness;
        os << ")";
        throw domain_error(os.str());
    }
    auto [pos, squared] = ensure_positive_degree(a);
    SmithDecomposition snf = smith_decompose(pos);
    LiftingPlan plan;
    plan.u = snf.u;
    plan.v = snf.v;
    plan.source = a;
    plan.squared = squared;
    for (auto& [axis, delta] : elementary_factors(snf))
        plan.cables.push_back(Cable{axis, delta});
    return plan;
}

IntMatrix build_B(const IntMatrix& j, const Int& delta, int i) {
    if (!is_square(j)) throw domain_error("build_B: matrix must be square");
    const int p = dim(j);
    if (i < 1 || i > p) throw domain_error("build_B: index out of range");
    if (delta < 1) throw domain_error("build_B: winding must be >= 1");
    if (determinant(j) != 1) throw domain_error("build_B: determinant must be 1");
    if (cofactor(j, i, i) != 1)
        throw domain_error("build_B: cofactor(j, i, i) must be 1");
    IntMatrix b = j;
    for (int r = 0; r < p; ++r) b(r, i - 1) *= delta;
    for (int c = 0; c < p; ++c) b(i - 1, c) = (c == i - 1) ? 1 : 0;
    if (determinant(b) != 1)
        throw std::logic_error("build_B: determinant postcondition failed");
    return b;
}

TypeState step_type(const TypeState& state, const Cable& cable,
                    const Mod2RowVector& m_parity, StepCertificate* cert) {
    const int p = dim(state.witness);
    if (m_parity.cols() != p)
        throw domain_error("step_type: parity vector of wrong shape");
    auto [k_word, j] = factor_KJ(state.witness, cable.axis);
    IntMatrix b = build_B(j, cable.winding, cable.axis);
    IntMatrix m = identity(p);
    for (int c = 1; c <= p; ++c) {
        if (c == cable.axis) continue;
        m(cable.axis - 1, c - 1) = (m_parity(c - 1) & 1) ? 1 : 0;
    }
    TypeState next{m * b, ModularType::standard(p)};
    next.type = type_of(next.witness);
    if (cert) {
        cert->axis = cable.axis;
        cert->winding = cable.winding;
        cert->witness_before = state.witness;
        cert->k_word = std::move(k_word);
        cert->j = std::move(j);
        cert->b = std::move(b);
        cert->m = std::move(m);
        cert->type_after = next.type;
    }
    return next;
}

TypeState compose_automorphism_step(const TypeState& state, const IntMatrix& w) {
    if (!is_square(w) || w.rows() != state.witness.rows())
        throw domain_error("compose_automorphism_step: dimension mismatch");
    if (determinant(w) != 1)
        throw domain_error("compose_automorphism_step: determinant must be 1");
    TypeState next{state.witness * w, state.type};
    next.type = type_of(next.witness);
    return next;
}

RealizationPlan realize(const IntMatrix& a, PlanMode mode,
                        const std::optional<std::vector<Mod2RowVector>>& m_parities) {
    if (!is_square(a)) throw domain_error("realize: matrix must be square");
    const int p = dim(a);
    if (p > kMaxTypeDim)
        throw domain_error("realize: dimension exceeds the type-enumeration cap");

    const ExpandingVerdict verdict = is_expanding(a);
    if (verdict.status != Expanding::Expanding) {
        std::ostringstream os;
        os << "realize: matrix is not expanding (" << to_string(verdict.status);
        if (!verdict.witness.empty()) os << ": " << verdict.witness;
        os << ")";
        throw domain_error(os.str());
    }

    RealizationPlan plan;
    plan.mode = mode;
    plan.lifting = favorite_lifting(a);

    if (p == 1) {  // single type; the next iterate repeats it immediately
        plan.k = 0;
        plan.d = 1;
        if (mode == PlanMode::Parametric) {
            plan.states = {ModularType::standard(1), ModularType::standard(1)};
            plan.m_parities = {};
        }
        return plan;
    }

    if (mode == PlanMode::Guaranteed) {
        // Pigeonhole over the 2^p - 1 types: some pair of iterates with
        // 0 <= k < l <= 2^p - 1 shares a type, so the period divides into
        // these bounds.  No tracking, so k and d are the worst-case bounds.
        plan.k = 0;
        plan.d = (1 << p) - 1;
        return plan;
    }

    std::vector<Mod2RowVector> parities;
    if (m_parities) {
        if (static_cast<int>(m_parities->size()) != p)
            throw domain_error("realize: expected one parity vector per cable");
        for (const auto& v : *m_parities)
            if (v.cols() != p) throw domain_error("realize: parity vector of wrong shape");
        parities = *m_parities;
    } else {
        parities.assign(p, Mod2RowVector::Zero(p));
    }
    plan.m_parities = parities;

    TypeState state{identity(p), ModularType::standard(p)};
    plan.states.push_back(state.type);
    const int max_iterates = 1 << p;
    for (int it = 1; it <= max_iterates; ++it) {
        state = compose_automorphism_step(state, plan.lifting.u);
        for (std::size_t c = 0; c < plan.lifting.cables.size(); ++c) {
            // Work from the canonical same-type witness: each cable step is
            // free to pick its representative, and the canonical one keeps
            // entries (and hence word lengths) bounded across iterates.
            state = TypeState{coset_representative(state.type), state.type};
            StepCertificate cert;
            cert.iterate = it;
            state = step_type(state, plan.lifting.cables[c], parities[c], &cert);
            plan.steps.push_back(std::move(cert));
        }
        state = compose_automorphism_step(state, plan.lifting.v);
        // First repeat against every earlier state.
        for (int k = 0; k < static_cast<int>(plan.states.size()); ++k) {
            if (plan.states[k] == state.type) {
                plan.states.push_back(state.type);
                plan.k = k;
                plan.d = it - k;
                return plan;
            }
        }
        plan.states.push_back(state.type);
    }
    throw std::logic_error("realize: no repeated type within 2^p iterates (impossible)");
}

}  // namespace torext
