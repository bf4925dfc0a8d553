#include "torext/words.hpp"

#include "torext/exactmat.hpp"

#include <algorithm>
#include <sstream>

namespace torext {

namespace {

void require_dim(int p, const char* who) {
    if (p < 2) throw domain_error(std::string(who) + ": dimension must be at least 2");
}

void validate_token(const GenToken& t, int p) {
    auto in_range = [p](int x) { return x >= 1 && x <= p; };
    switch (t.kind) {
        case TokenKind::ShearSquared:
        case TokenKind::QuarterTurn:
            if (!in_range(t.i) || !in_range(t.j) || t.i == t.j)
                throw domain_error("token: invalid shear/turn indices");
            return;
        case TokenKind::ShearPair:
            if (!in_range(t.i) || !in_range(t.j) || !in_range(t.k) || t.i == t.j ||
                t.i == t.k || t.j == t.k)
                throw domain_error("token: pair indices must be mutually distinct");
            return;
    }
    throw domain_error("token: unknown kind");
}

// In-place left multiplication M <- T * M as a row operation.
void apply_left(IntMatrix& m, const GenToken& t) {
    const int i = t.i - 1, j = t.j - 1, k = t.k - 1;
    switch (t.kind) {
        case TokenKind::ShearSquared: {
            const Int f = t.inv ? Int(-2) : Int(2);
            m.row(i) += (m.row(j) * f).eval();
            return;
        }
        case TokenKind::QuarterTurn: {
            IntMatrix::RowXpr::PlainObject ri = m.row(i), rj = m.row(j);
            if (!t.inv) {  // row i <- -row j, row j <- row i
                m.row(i) = (-rj).eval();
                m.row(j) = ri;
            } else {  // row i <- row j, row j <- -row i
                m.row(i) = rj;
                m.row(j) = (-ri).eval();
            }
            return;
        }
        case TokenKind::ShearPair: {
            const Int f = t.inv ? Int(-1) : Int(1);
            m.row(i) += (m.row(k) * f).eval();
            m.row(j) += (m.row(k) * f).eval();
            return;
        }
    }
}

// In-place right multiplication M <- M * T as a column operation.
void apply_right(IntMatrix& m, const GenToken& t) {
    const int i = t.i - 1, j = t.j - 1, k = t.k - 1;
    switch (t.kind) {
        case TokenKind::ShearSquared: {
            const Int f = t.inv ? Int(-2) : Int(2);
            m.col(j) += (m.col(i) * f).eval();
            return;
        }
        case TokenKind::QuarterTurn: {
            IntMatrix::ColXpr::PlainObject ci = m.col(i), cj = m.col(j);
            if (!t.inv) {  // col i <- col j, col j <- -col i
                m.col(i) = cj;
                m.col(j) = (-ci).eval();
            } else {  // col i <- -col j, col j <- col i
                m.col(i) = (-cj).eval();
                m.col(j) = ci;
            }
            return;
        }
        case TokenKind::ShearPair: {
            const Int f = t.inv ? Int(-1) : Int(1);
            m.col(k) += (m.col(i) * f).eval();
            m.col(k) += (m.col(j) * f).eval();
            return;
        }
    }
}

// Even-multiple reduction: choose q so that t - 2*q*a lies in (-|a|, |a|].
// Returns q; the caller emits |q| squared-shear tokens.
Int even_reduction_quotient(const Int& t, const Int& a) {
    const Int two_a = 2 * abs(a);
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), t.get_mpz_t(), two_a.get_mpz_t());  // r in [0, 2|a|)
    if (r > abs(a)) r -= two_a;                                   // r in (-|a|, |a|]
    return exact_div(t - r, 2 * a);
}

void append_shear_squared_run(std::vector<GenToken>& ops, IntMatrix& m, int row_dst,
                              int row_src, const Int& q) {
    // Applies R^2(row_dst, row_src)^(-sign q) |q| times: entry change -2*q*a.
    const bool inv = q > 0;
    Int cnt = abs(q);
    for (Int c = 0; c < cnt; ++c) {
        GenToken op = GenToken::shear_squared(row_dst + 1, row_src + 1, inv);
        apply_left(m, op);
        ops.push_back(op);
    }
}

}  // namespace

bool GenToken::is_base(int p) const {
    switch (kind) {
        case TokenKind::ShearSquared:
        case TokenKind::QuarterTurn:
            return i == 1 && j >= 2 && j <= p;
        case TokenKind::ShearPair:
            return i == 1 && k == p && j >= 2 && j <= p - 1;
    }
    return false;
}

IntMatrix token_matrix(const GenToken& t, int p) {
    validate_token(t, p);
    IntMatrix m = identity(p);
    apply_left(m, t);
    return m;
}

IntMatrix eval_word(const GeneratorWord& w) {
    require_dim(w.p, "eval_word");
    IntMatrix m = identity(w.p);
    for (const GenToken& t : w.tokens) {
        validate_token(t, w.p);
        apply_right(m, t);  // left-to-right product accumulates on the right
    }
    return m;
}

GeneratorWord inverse_word(const GeneratorWord& w) {
    GeneratorWord out;
    out.p = w.p;
    out.tokens.reserve(w.tokens.size());
    for (auto it = w.tokens.rbegin(); it != w.tokens.rend(); ++it)
        out.tokens.push_back(it->inverse());
    return out;
}

namespace {

void rewrite_token(const GenToken& t, int p, std::vector<GenToken>& out);

void rewrite_all(const std::vector<GenToken>& ts, int p, std::vector<GenToken>& out) {
    for (const GenToken& t : ts) rewrite_token(t, p, out);
}

void rewrite_token(const GenToken& t, int p, std::vector<GenToken>& out) {
    validate_token(t, p);
    if (t.is_base(p)) {
        out.push_back(t);
        return;
    }
    if (t.inv) {
        std::vector<GenToken> fwd;
        rewrite_token(GenToken{t.kind, t.i, t.j, t.k, false}, p, fwd);
        for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) out.push_back(it->inverse());
        return;
    }
    const auto q = [](int a, int b, bool inv = false) {
        return GenToken::quarter_turn(a, b, inv);
    };
    switch (t.kind) {
        case TokenKind::ShearSquared: {
            if (t.j == 1) {
                // R^2(i,1) = Q(1,i)^-1 R^2(1,i)^-1 Q(1,i)
                rewrite_all({q(1, t.i, true), GenToken::shear_squared(1, t.i, true),
                             q(1, t.i)},
                            p, out);
            } else {
                // R^2(i,j) = Q(1,i) R^2(1,j) Q(1,i)^-1
                rewrite_all({q(1, t.i), GenToken::shear_squared(1, t.j), q(1, t.i, true)},
                            p, out);
            }
            return;
        }
        case TokenKind::QuarterTurn: {
            if (t.j == 1) {
                // Q(i,1) = Q(1,i)^-1
                out.push_back(q(1, t.i, true));
            } else {
                // Q(i,j) = Q(1,i) Q(1,j) Q(1,i)^-1
                rewrite_all({q(1, t.i), q(1, t.j), q(1, t.i, true)}, p, out);
            }
            return;
        }
        case TokenKind::ShearPair: {
            int i = t.i, j = t.j;
            const int k = t.k;
            if (j == 1) std::swap(i, j);  // the pair is symmetric in (i, j)
            if (i == 1) {
                if (k == p) {
                    out.push_back(GenToken::shear_pair(1, j, p));
                    return;
                }
                if (j != p) {
                    // R_1k R_jk = Q(k,p)^-1 (R_1p R_jp) Q(k,p)
                    rewrite_all({q(k, p, true), GenToken::shear_pair(1, j, p), q(k, p)},
                                p, out);
                    return;
                }
                // Pair on rows {1,p}, twisting column k != p.
                if (p >= 4) {
                    int m = 2;
                    while (m == k || m == p) ++m;
                    rewrite_all({GenToken::shear_pair(1, m, k), GenToken::shear_pair(p, m, k),
                                 GenToken::shear_squared(m, k, true)},
                                p, out);
                    return;
                }
                // p == 3, k == 2: conjugate the base pair by the signed
                // permutation W = Q(1,2)^2 Q(2,3)^-1 (sends axes 2 <-> 3).
                const std::vector<GenToken> w = {q(1, 2), q(1, 2), q(1, 2), q(1, 3, true),
                                                 q(1, 2, true)};
                rewrite_all(w, p, out);
                out.push_back(GenToken::shear_pair(1, 2, 3));
                for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
                return;
            }
            // Both row indices exceed 1.
            if (k == 1) {
                if (p >= 4) {
                    int m = 2;
                    while (m == i || m == j) ++m;
                    rewrite_all({q(1, m, true), GenToken::shear_pair(i, j, m), q(1, m)}, p,
                                out);
                    return;
                }
                // p == 3: pair on rows {2,3}, column 1; conjugate the base
                // pair by the 3-cycle V = Q(1,2) Q(2,3).
                const std::vector<GenToken> v = {q(1, 2), q(1, 2), q(1, 3), q(1, 2, true)};
                rewrite_all(v, p, out);
                out.push_back(GenToken::shear_pair(1, 2, 3));
                for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(it->inverse());
                return;
            }
            // R_ik R_jk = Q(1,i) (R_1k R_jk) Q(1,i)^-1
            rewrite_all({q(1, i), GenToken::shear_pair(1, j, k), q(1, i, true)}, p, out);
            return;
        }
    }
}

}  // namespace

GeneratorWord rewrite_to_base(const GeneratorWord& w) {
    require_dim(w.p, "rewrite_to_base");
    GeneratorWord out;
    out.p = w.p;
    for (const GenToken& t : w.tokens) rewrite_token(t, w.p, out.tokens);
    return out;
}

GeneratorWord decompose_odd_columns(const IntMatrix& u) {
    if (!is_square(u)) throw domain_error("decompose_odd_columns: matrix must be square");
    const int p = dim(u);
    require_dim(p, "decompose_odd_columns");
    if (determinant(u) != 1)
        throw domain_error("decompose_odd_columns: determinant must be 1");
    for (int c = 0; c < p; ++c) {
        Int sum(0);
        for (int r = 0; r < p; ++r) sum += u(r, c);
        if (is_even(sum)) {
            std::ostringstream os;
            os << "even column sum: column " << (c + 1);
            throw domain_error(os.str());
        }
    }

    IntMatrix m = u;
    std::vector<GenToken> ops;  // applied on the left, in order
    auto apply = [&m, &ops](const GenToken& t) {
        apply_left(m, t);
        ops.push_back(t);
    };

    for (int c = 0; c < p; ++c) {
        // Odd entries in the working window (rows c..p-1 of column c).
        auto window_odds = [&]() {
            std::vector<int> o;
            for (int r = c; r < p; ++r)
                if (is_odd(m(r, c))) o.push_back(r);
            return o;
        };
        std::vector<int> odds = window_odds();
        if (odds.empty())
            throw std::logic_error("decompose_odd_columns: window lost all odd entries");
        if (odds.size() % 2 == 0) {
            // Make the window count odd by spending one flip on row 1, which
            // sits above the window (the whole column keeps an odd sum, so
            // this situation can only arise for c >= 1).
            if (c == 0) throw std::logic_error("decompose_odd_columns: even odd-count in column 1");
            apply(GenToken::shear_pair(odds[1] + 1, 1, odds[0] + 1));
            odds = window_odds();
        }
        // Collapse to a single odd entry: add the first odd row to the rest,
        // two targets at a time.
        while (odds.size() > 1) {
            for (std::size_t t = 1; t + 1 < odds.size(); t += 2)
                apply(GenToken::shear_pair(odds[t] + 1, odds[t + 1] + 1, odds[0] + 1));
            odds = window_odds();
        }

        // Even-multiple Euclid on the window until the minimum is +-1.
        Int last_min(0);
        for (;;) {
            int rmin = -1;
            for (int r = c; r < p; ++r) {
                if (m(r, c) == 0) continue;
                if (rmin < 0 || abs(m(r, c)) < abs(m(rmin, c))) rmin = r;
            }
            if (rmin < 0) throw std::logic_error("decompose_odd_columns: zero window column");
            Int a = m(rmin, c);
            if (abs(a) == 1) break;
            if (last_min != 0 && abs(a) >= last_min)
                throw std::logic_error("decompose_odd_columns: Euclid loop variant failed");
            last_min = abs(a);
            int s = -1;
            for (int r = c; r < p; ++r)
                if (r != rmin && m(r, c) % a != 0) {
                    s = r;
                    break;
                }
            if (s < 0)
                throw std::logic_error(
                    "decompose_odd_columns: minimal entry divides the window but is not a unit");
            append_shear_squared_run(ops, m, s, rmin, even_reduction_quotient(m(s, c), a));
        }

        // The unit sits at the unique odd row; move it onto the diagonal.
        int unit = -1;
        for (int r = c; r < p; ++r)
            if (abs(m(r, c)) == 1 && is_odd(m(r, c))) {
                unit = r;
                break;
            }
        if (unit < 0) throw std::logic_error("decompose_odd_columns: lost the unit pivot");
        if (unit != c) apply(GenToken::quarter_turn(c + 1, unit + 1));

        const auto clear_row = [&](int r) {
            if (m(r, c) == 0) return;
            append_shear_squared_run(ops, m, r, c, even_reduction_quotient(m(r, c), m(c, c)));
            if (m(r, c) != 0)
                throw std::logic_error("decompose_odd_columns: clearing left a remainder");
        };
        // Window rows below the pivot are even now.
        for (int r = c + 1; r < p; ++r) clear_row(r);
        // Rows above the pivot: an even number of them are odd; fix the odd
        // ones in pairs with the pivot row, then clear the even remainders.
        std::vector<int> upper_odds;
        for (int r = 0; r < c; ++r)
            if (is_odd(m(r, c))) upper_odds.push_back(r);
        if (upper_odds.size() % 2 != 0)
            throw std::logic_error("decompose_odd_columns: odd count above the pivot");
        for (std::size_t t = 0; t + 1 < upper_odds.size(); t += 2)
            apply(GenToken::shear_pair(upper_odds[t] + 1, upper_odds[t + 1] + 1, c + 1));
        for (int r = 0; r < c; ++r) clear_row(r);
    }

    // Diagonal cleanup: the determinant forces an even number of -1 entries.
    std::vector<int> neg;
    for (int k = 0; k < p; ++k) {
        if (m(k, k) != 1 && m(k, k) != -1)
            throw std::logic_error("decompose_odd_columns: non-unit diagonal");
        if (m(k, k) == -1) neg.push_back(k);
    }
    if (neg.size() % 2 != 0)
        throw std::logic_error("decompose_odd_columns: odd count of -1 diagonal entries");
    for (std::size_t t = 0; t + 1 < neg.size(); t += 2) {
        apply(GenToken::quarter_turn(neg[t] + 1, neg[t + 1] + 1));
        apply(GenToken::quarter_turn(neg[t] + 1, neg[t + 1] + 1));
    }
    if (!matrices_equal(m, identity(p)))
        throw std::logic_error("decompose_odd_columns: reduction did not reach the identity");

    GeneratorWord raw;
    raw.p = p;
    raw.tokens.reserve(ops.size());
    for (const GenToken& op : ops) raw.tokens.push_back(op.inverse());
    GeneratorWord base = rewrite_to_base(raw);
    if (!matrices_equal(eval_word(base), u))
        throw std::logic_error("decompose_odd_columns: word verification failed");
    return base;
}

std::pair<GeneratorWord, IntMatrix> factor_KJ(const IntMatrix& u, int i) {
    if (!is_square(u)) throw domain_error("factor_KJ: matrix must be square");
    const int p = dim(u);
    require_dim(p, "factor_KJ");
    if (i < 1 || i > p) throw domain_error("factor_KJ: index out of range");
    if (determinant(u) != 1) throw domain_error("factor_KJ: determinant must be 1");

    IntMatrix w = inverse_unimodular(u);
    const int ri = i - 1;
    std::vector<GenToken> ops;  // applied on the right, in order
    auto apply = [&w, &ops](const GenToken& t) {
        apply_right(w, t);
        ops.push_back(t);
    };

    // Even-multiple column Euclid on row i of u^-1 until some entry is +-1.
    // Ties on the minimal absolute value prefer the diagonal position, so a
    // row that already satisfies the contract yields the empty word.
    Int last_min(0);
    int cmin = -1;
    for (;;) {
        cmin = -1;
        for (int c = 0; c < p; ++c) {
            if (w(ri, c) == 0) continue;
            if (cmin < 0 || abs(w(ri, c)) < abs(w(ri, cmin))) cmin = c;
        }
        if (cmin < 0) throw std::logic_error("factor_KJ: zero row in a unimodular inverse");
        if (cmin != ri && abs(w(ri, ri)) == abs(w(ri, cmin))) cmin = ri;
        Int a = w(ri, cmin);
        if (abs(a) == 1) break;
        if (last_min != 0 && abs(a) >= last_min)
            throw std::logic_error("factor_KJ: Euclid loop variant failed");
        last_min = abs(a);
        int s = -1;
        for (int c = 0; c < p; ++c)
            if (c != cmin && w(ri, c) % a != 0) {
                s = c;
                break;
            }
        if (s < 0)
            throw std::logic_error("factor_KJ: minimal entry divides the row but is not a unit");
        // Column s += 2q * column cmin.
        const Int q = even_reduction_quotient(w(ri, s), a);
        const bool inv = q > 0;
        Int cnt = abs(q);
        for (Int t = 0; t < cnt; ++t) apply(GenToken::shear_squared(cmin + 1, s + 1, inv));
    }

    if (cmin != ri) apply(GenToken::quarter_turn(ri + 1, cmin + 1));
    if (w(ri, ri) == -1) {
        const int other = (ri == 0) ? 2 : 1;
        apply(GenToken::quarter_turn(ri + 1, other));
        apply(GenToken::quarter_turn(ri + 1, other));
    }
    if (w(ri, ri) != 1) throw std::logic_error("factor_KJ: pivot normalization failed");

    GeneratorWord raw;
    raw.p = p;
    raw.tokens = ops;
    GeneratorWord k_word = rewrite_to_base(raw);
    for (const GenToken& t : k_word.tokens)
        if (t.kind == TokenKind::ShearPair)
            throw std::logic_error("factor_KJ: pair token leaked into the K word");

    const IntMatrix k = eval_word(k_word);
    const IntMatrix j = inverse_unimodular(k) * u;
    if (!matrices_equal(k * j, u)) throw std::logic_error("factor_KJ: K*J != U");
    if (cofactor(j, i, i) != 1)
        throw std::logic_error("factor_KJ: cofactor postcondition failed");
    return {k_word, j};
}

nlohmann::json word_to_json(const GeneratorWord& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (const GenToken& t : w.tokens) {
        if (!t.is_base(w.p))
            throw std::logic_error("word_to_json: word contains a non-base token");
        const char* kind = nullptr;
        int i = t.i, j = t.j;
        switch (t.kind) {
            case TokenKind::ShearSquared: kind = "RSq"; break;
            case TokenKind::QuarterTurn: kind = "Q"; break;
            case TokenKind::ShearPair:
                kind = "RRp";
                i = t.j;  // the pair R_1p R_ip is reported as (i, p)
                j = w.p;
                break;
        }
        arr.push_back({{"kind", kind}, {"i", i}, {"j", j}, {"inv", t.inv}});
    }
    return arr;
}

GeneratorWord word_from_json(const nlohmann::json& j, int p) {
    if (!j.is_array()) throw parse_error("word JSON: expected an array of tokens");
    GeneratorWord w;
    w.p = p;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("kind") || !e.contains("i") || !e.contains("j"))
            throw parse_error("word JSON: token must carry kind, i, j");
        const std::string kind = e["kind"].get<std::string>();
        const int ti = e["i"].get<int>();
        const int tj = e["j"].get<int>();
        const bool inv = e.value("inv", false);
        GenToken t;
        if (kind == "RSq")
            t = GenToken::shear_squared(ti, tj, inv);
        else if (kind == "Q")
            t = GenToken::quarter_turn(ti, tj, inv);
        else if (kind == "RRp") {
            if (tj != p) throw parse_error("word JSON: RRp token must carry j = p");
            t = GenToken::shear_pair(1, ti, p, inv);
        } else
            throw parse_error("word JSON: unknown token kind " + kind);
        validate_token(t, p);
        if (!t.is_base(p)) throw parse_error("word JSON: token is not a base generator");
        w.tokens.push_back(t);
    }
    return w;
}

}  // namespace torext
