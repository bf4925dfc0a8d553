#pragma once

// Generator-word algebra over SL(p,Z).
//
// Tokens name three families of matrices:
//
//   ShearSquared(i,j)   R_ij^2 = I + 2 E_ij
//   QuarterTurn(i,j)    Q_ij  = R_ij^-1 R_ji R_ij^-1
//   ShearPair(i,j,k)    R_ik R_jk = I + E_ik + E_jk
//
// The base alphabet consists of ShearSquared(1,j), QuarterTurn(1,j) for
// 1 < j <= p and ShearPair(1,i,p) for 1 < i < p, together with inverses.
// These generate exactly the subgroup of SL(p,Z) whose matrices have odd
// column sums, and every other token rewrites into the base alphabet by
// conjugation identities that preserve the evaluated matrix.

#include "torext/types.hpp"

#include <json.hpp>

#include <utility>
#include <vector>

namespace torext {

enum class TokenKind { ShearSquared, QuarterTurn, ShearPair };

struct GenToken {
    TokenKind kind = TokenKind::ShearSquared;
    int i = 0;
    int j = 0;
    int k = 0;  // used by ShearPair only
    bool inv = false;

    static GenToken shear_squared(int i, int j, bool inv = false) {
        return {TokenKind::ShearSquared, i, j, 0, inv};
    }
    static GenToken quarter_turn(int i, int j, bool inv = false) {
        return {TokenKind::QuarterTurn, i, j, 0, inv};
    }
    static GenToken shear_pair(int i, int j, int k, bool inv = false) {
        return {TokenKind::ShearPair, i, j, k, inv};
    }

    GenToken inverse() const {
        GenToken t = *this;
        t.inv = !t.inv;
        return t;
    }

    bool is_base(int p) const;
    bool operator==(const GenToken&) const = default;
};

struct GeneratorWord {
    int p = 0;
    std::vector<GenToken> tokens;  // left-to-right matrix product
};

/// Matrix of a single token inside SL(p,Z).
IntMatrix token_matrix(const GenToken& t, int p);

/// Exact left-to-right product of the token matrices; the empty word is I.
IntMatrix eval_word(const GeneratorWord& w);

/// Reversed word with every token inverted; evaluates to eval_word(w)^-1.
GeneratorWord inverse_word(const GeneratorWord& w);

/// Rewrites every token into the base alphabet without changing eval_word.
GeneratorWord rewrite_to_base(const GeneratorWord& w);

/// Base-generator word for a matrix u in SL(p,Z) with every column sum odd
/// (p >= 2). Runs the column-by-column Euclid reduction with parity-safe
/// row operations, finishing with the signed diagonal cleanup, and verifies
/// eval_word(result) == u before returning.
/// Throws domain_error on det != 1, an even column sum (reporting the first
/// offending 1-based column), or p < 2.
GeneratorWord decompose_odd_columns(const IntMatrix& u);

/// Factors u = eval(k_word) * j where k_word uses only ShearSquared(1,*) and
/// QuarterTurn(1,*) tokens and cofactor(j, i, i) = 1.  Requires det(u) = 1,
/// p >= 2 and 1 <= i <= p.  Both postconditions are verified before return.
std::pair<GeneratorWord, IntMatrix> factor_KJ(const IntMatrix& u, int i);

/// JSON serialization of a base-only word:
///   [{"kind":"RSq"|"Q"|"RRp","i":int,"j":int,"inv":bool}, ...]
/// RSq/Q carry (i=1, j); RRp carries (i, j=p) for the pair R_1p R_ip.
nlohmann::json word_to_json(const GeneratorWord& w);

GeneratorWord word_from_json(const nlohmann::json& j, int p);

}  // namespace torext
