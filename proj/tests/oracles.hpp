#pragma once

// Test-only oracles and deterministic input generators.  The oracles stay
// independent of the library code paths they check: the eigenvalue oracle
// runs floating-point linear algebra on the companion matrix, and the
// invariant-factor oracle computes gcds of k x k minors directly.

#include "torext/exactmat.hpp"
#include "torext/spectra.hpp"
#include "torext/types.hpp"
#include "torext/words.hpp"

#include <Eigen/Eigenvalues>

#include <complex>
#include <random>
#include <vector>

namespace torext::testing {

// --- numeric eigenvalue oracle ---------------------------------------------

struct EigenOracle {
    bool all_moduli_above_one = false;
    double margin = 0.0;  // min over eigenvalues of | |l| - 1 |
};

inline EigenOracle eigen_oracle(const IntMatrix& a) {
    const int p = dim(a);
    const CharPoly chi = char_poly(a);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (int r = 1; r < p; ++r) companion(r, r - 1) = 1.0;
    for (int r = 0; r < p; ++r)
        companion(r, p - 1) = -chi.coeffs[p - r].get_d();  // ascending coefficient r
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    EigenOracle out;
    out.all_moduli_above_one = true;
    out.margin = 1e300;
    for (int k = 0; k < p; ++k) {
        const double m = std::abs(solver.eigenvalues()[k]);
        out.all_moduli_above_one = out.all_moduli_above_one && (m > 1.0);
        out.margin = std::min(out.margin, std::abs(m - 1.0));
    }
    return out;
}

// --- invariant factors via minor gcds ---------------------------------------

inline std::vector<Int> minor_gcd_deltas(const IntMatrix& a) {
    const int p = dim(a);
    std::vector<Int> d(p + 1);
    d[0] = 1;
    for (int k = 1; k <= p; ++k) {
        // gcd over all k x k minors
        std::vector<int> rows(k), cols(k);
        Int g(0);
        std::vector<int> rsel, csel;
        // enumerate k-subsets of rows and columns
        std::vector<int> ridx(k), cidx(k);
        for (int t = 0; t < k; ++t) ridx[t] = t;
        for (;;) {
            for (int t = 0; t < k; ++t) cidx[t] = t;
            for (;;) {
                IntMatrix sub(k, k);
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c) sub(r, c) = a(ridx[r], cidx[c]);
                g = gcd(g, determinant(sub));
                int t = k - 1;
                while (t >= 0 && cidx[t] == p - k + t) --t;
                if (t < 0) break;
                ++cidx[t];
                for (int s = t + 1; s < k; ++s) cidx[s] = cidx[s - 1] + 1;
            }
            int t = k - 1;
            while (t >= 0 && ridx[t] == p - k + t) --t;
            if (t < 0) break;
            ++ridx[t];
            for (int s = t + 1; s < k; ++s) ridx[s] = ridx[s - 1] + 1;
        }
        d[k] = g;
    }
    std::vector<Int> deltas(p);
    for (int k = 1; k <= p; ++k) deltas[k - 1] = exact_div(d[k], d[k - 1]);
    return deltas;
}

// --- deterministic input generators -----------------------------------------

inline IntMatrix random_matrix(std::mt19937_64& rng, int p, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix a(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) a(i, j) = dist(rng);
    return a;
}

/// Random base-generator word of the given length.
inline GeneratorWord random_base_word(std::mt19937_64& rng, int p, int len) {
    GeneratorWord w;
    w.p = p;
    std::uniform_int_distribution<int> kind(0, p >= 3 ? 2 : 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int t = 0; t < len; ++t) {
        const bool inv = coin(rng) != 0;
        switch (kind(rng)) {
            case 0: {
                std::uniform_int_distribution<int> j(2, p);
                w.tokens.push_back(GenToken::shear_squared(1, j(rng), inv));
                break;
            }
            case 1: {
                std::uniform_int_distribution<int> j(2, p);
                w.tokens.push_back(GenToken::quarter_turn(1, j(rng), inv));
                break;
            }
            default: {
                std::uniform_int_distribution<int> i(2, p - 1);
                w.tokens.push_back(GenToken::shear_pair(1, i(rng), p, inv));
                break;
            }
        }
    }
    return w;
}

/// Random base word whose evaluation keeps every entry within the bound
/// (words over these generators grow exponentially, and unit tokens make
/// decomposition length proportional to the quotients involved).
inline GeneratorWord bounded_random_base_word(std::mt19937_64& rng, int p, int max_len,
                                              long bound = 10000) {
    std::uniform_int_distribution<int> len(1, max_len);
    for (;;) {
        GeneratorWord w = random_base_word(rng, p, len(rng));
        IntMatrix m = eval_word(w);
        bool ok = true;
        for (int i = 0; i < p && ok; ++i)
            for (int j = 0; j < p && ok; ++j) ok = abs(m(i, j)) <= bound;
        if (ok) return w;
    }
}

/// Random element of SL(p,Z) as a bounded product of elementary shears.
inline IntMatrix random_sl(std::mt19937_64& rng, int p, int steps = 12, long bound = 10000) {
    std::uniform_int_distribution<int> idx(1, p);
    std::uniform_int_distribution<int> coin(0, 1);
    for (;;) {
        IntMatrix m = identity(p);
        for (int t = 0; t < steps; ++t) {
            int i = idx(rng), j = idx(rng);
            if (i == j) continue;
            IntMatrix s = shear(i, j, p);
            if (coin(rng)) s = inverse_unimodular(s);
            m = m * s;
        }
        bool ok = true;
        for (int i = 0; i < p && ok; ++i)
            for (int j = 0; j < p && ok; ++j) ok = abs(m(i, j)) <= bound;
        if (ok) return m;
    }
}

}  // namespace torext::testing
