#include "torext/smith.hpp"

#include "torext/exactmat.hpp"

namespace torext {

namespace {

// Euclidean quotient: a - q*b has remainder in [0, |b|).
Int euclid_quot(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (b < 0 && r != 0) {
        // fdiv gives r in (b, 0]; shift to [0, |b|).
        q += 1;
    }
    return q;
}

struct Worker {
    IntMatrix s;
    IntMatrix uinv;  // accumulates the row operations
    IntMatrix vinv;  // accumulates the column operations
    int p;

    explicit Worker(const IntMatrix& a)
        : s(a), uinv(identity(dim(a))), vinv(identity(dim(a))), p(dim(a)) {}

    void swap_rows(int a, int b) {
        if (a == b) return;
        s.row(a).swap(s.row(b));
        uinv.row(a).swap(uinv.row(b));
    }
    void swap_cols(int a, int b) {
        if (a == b) return;
        s.col(a).swap(s.col(b));
        vinv.col(a).swap(vinv.col(b));
    }
    void add_row(int dst, int src, const Int& q) {  // row dst += q * row src
        if (q == 0) return;
        s.row(dst) += (s.row(src) * q).eval();
        uinv.row(dst) += (uinv.row(src) * q).eval();
    }
    void add_col(int dst, int src, const Int& q) {
        if (q == 0) return;
        s.col(dst) += (s.col(src) * q).eval();
        vinv.col(dst) += (vinv.col(src) * q).eval();
    }
    void negate_row(int r) {
        s.row(r) = (-s.row(r)).eval();
        uinv.row(r) = (-uinv.row(r)).eval();
    }

    // Smallest nonzero absolute value in the trailing block, ties broken by
    // the lowest (row, column) pair.  Returns false when the block is zero.
    bool pick_pivot(int k, int& pr, int& pc) const {
        pr = -1;
        pc = -1;
        Int best;
        for (int i = k; i < p; ++i)
            for (int j = k; j < p; ++j) {
                if (s(i, j) == 0) continue;
                Int v = abs(s(i, j));
                if (pr < 0 || v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        return pr >= 0;
    }
};

}  // namespace

SmithDecomposition smith_decompose(const IntMatrix& a) {
    if (!is_square(a)) throw domain_error("smith_decompose: matrix must be square");
    const Int det = determinant(a);
    if (det <= 0)
        throw domain_error("smith_decompose: determinant must be positive");

    Worker w(a);
    const int p = w.p;

    for (int k = 0; k < p; ++k) {
        for (;;) {
            int pr, pc;
            if (!w.pick_pivot(k, pr, pc))
                throw std::logic_error("smith_decompose: trailing block vanished");
            w.swap_rows(k, pr);
            w.swap_cols(k, pc);

            // Reduce column k and row k against the pivot; any nonzero
            // remainder produces a strictly smaller entry, so re-pivot.
            bool reduced = true;
            for (int i = k + 1; i < p; ++i) {
                if (w.s(i, k) == 0) continue;
                Int q = euclid_quot(w.s(i, k), w.s(k, k));
                w.add_row(i, k, -q);
                if (w.s(i, k) != 0) reduced = false;
            }
            if (!reduced) continue;
            for (int j = k + 1; j < p; ++j) {
                if (w.s(k, j) == 0) continue;
                Int q = euclid_quot(w.s(k, j), w.s(k, k));
                w.add_col(j, k, -q);
                if (w.s(k, j) != 0) reduced = false;
            }
            if (!reduced) continue;

            // Divisibility: the pivot must divide the whole trailing block.
            int bi = -1, bj = -1;
            for (int i = k + 1; i < p && bi < 0; ++i)
                for (int j = k + 1; j < p; ++j)
                    if (w.s(i, j) % w.s(k, k) != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi >= 0) {
                w.add_col(k, bj, Int(1));
                continue;
            }
            break;
        }
        if (w.s(k, k) < 0) w.negate_row(k);
    }

    SmithDecomposition out;
    out.deltas.reserve(p);
    for (int k = 0; k < p; ++k) out.deltas.push_back(w.s(k, k));
    out.u = inverse_unimodular(w.uinv);
    out.v = inverse_unimodular(w.vinv);

    // Both transform determinants are +-1 with equal sign (the diagonal is
    // positive and det(a) > 0).  Normalize to SL by flipping column 1 of u
    // and row 1 of v, which cancels in the product.
    if (determinant(out.u) < 0) {
        out.u.col(0) = (-out.u.col(0)).eval();
        out.v.row(0) = (-out.v.row(0)).eval();
    }

    if (determinant(out.u) != 1 || determinant(out.v) != 1)
        throw std::logic_error("smith_decompose: transform normalization failed");
    for (int k = 0; k + 1 < p; ++k)
        if (out.deltas[k + 1] % out.deltas[k] != 0)
            throw std::logic_error("smith_decompose: divisibility chain failed");
    IntMatrix back = out.u * diagonal_of(out) * out.v;
    if (!matrices_equal(back, a))
        throw std::logic_error("smith_decompose: multiply-back verification failed");
    return out;
}

IntMatrix diagonal_of(const SmithDecomposition& d) {
    const int p = static_cast<int>(d.deltas.size());
    IntMatrix m = IntMatrix::Zero(p, p);
    for (int k = 0; k < p; ++k) m(k, k) = d.deltas[k];
    return m;
}

std::vector<std::pair<int, Int>> elementary_factors(const SmithDecomposition& d) {
    std::vector<std::pair<int, Int>> f;
    f.reserve(d.deltas.size());
    for (int k = 0; k < static_cast<int>(d.deltas.size()); ++k)
        f.emplace_back(k + 1, d.deltas[k]);
    return f;
}

}  // namespace torext
