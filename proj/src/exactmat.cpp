#include "torext/exactmat.hpp"

#include <sstream>

namespace torext {

namespace {

void require_square(const IntMatrix& a, const char* who) {
    if (!is_square(a)) {
        std::ostringstream os;
        os << who << ": matrix must be square with p >= 1";
        throw domain_error(os.str());
    }
}

void require_index(int idx, int p, const char* who) {
    if (idx < 1 || idx > p) {
        std::ostringstream os;
        os << who << ": index " << idx << " out of range 1.." << p;
        throw domain_error(os.str());
    }
}

}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    require_square(a, "multiply");
    require_square(b, "multiply");
    if (a.rows() != b.rows()) throw domain_error("multiply: dimension mismatch");
    IntMatrix c = a * b;
    return c;
}

Int determinant(const IntMatrix& a) {
    require_square(a, "determinant");
    const int p = dim(a);
    IntMatrix m = a;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < p - 1; ++k) {
        // Pivot: smallest nonzero absolute value in column k at or below row k,
        // ties broken by the lowest row index.
        int piv = -1;
        Int best;
        for (int r = k; r < p; ++r) {
            if (m(r, k) == 0) continue;
            Int v = abs(m(r, k));
            if (piv < 0 || v < best) {
                piv = r;
                best = v;
            }
        }
        if (piv < 0) return Int(0);
        if (piv != k) {
            m.row(k).swap(m.row(piv));
            sign = -sign;
        }
        const Int pivot = m(k, k);
        for (int i = k + 1; i < p; ++i) {
            for (int j = k + 1; j < p; ++j)
                m(i, j) = exact_div(m(i, j) * pivot - m(i, k) * m(k, j), prev);
            m(i, k) = 0;
        }
        prev = pivot;
    }
    Int det = m(p - 1, p - 1);
    if (sign < 0) det = -det;
    return det;
}

Int cofactor(const IntMatrix& a, int i, int j) {
    require_square(a, "cofactor");
    const int p = dim(a);
    require_index(i, p, "cofactor");
    require_index(j, p, "cofactor");
    if (p == 1) return Int(1);
    IntMatrix minor(p - 1, p - 1);
    for (int r = 0, rr = 0; r < p; ++r) {
        if (r == i - 1) continue;
        for (int c = 0, cc = 0; c < p; ++c) {
            if (c == j - 1) continue;
            minor(rr, cc) = a(r, c);
            ++cc;
        }
        ++rr;
    }
    Int d = determinant(minor);
    if ((i + j) % 2 != 0) d = -d;
    return d;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
    require_square(a, "inverse_unimodular");
    const int p = dim(a);
    const Int det = determinant(a);
    if (det != 1 && det != -1)
        throw domain_error("inverse_unimodular: determinant is not +-1");
    IntMatrix inv(p, p);
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= p; ++j) {
            Int c = cofactor(a, j, i);
            inv(i - 1, j - 1) = (det == 1) ? c : Int(-c);
        }
    return inv;
}

Mod2Matrix mod2(const IntMatrix& a) {
    require_square(a, "mod2");
    const int p = dim(a);
    Mod2Matrix m(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) m(i, j) = is_odd(a(i, j)) ? 1 : 0;
    return m;
}

Mod2Matrix mod2_mul(const Mod2Matrix& a, const Mod2Matrix& b) {
    if (a.cols() != b.rows()) throw domain_error("mod2_mul: dimension mismatch");
    Mod2Matrix c(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            unsigned s = 0;
            for (Eigen::Index k = 0; k < a.cols(); ++k) s ^= (a(i, k) & b(k, j));
            c(i, j) = static_cast<std::uint8_t>(s & 1u);
        }
    return c;
}

Mod2RowVector mod2_vec_mul(const Mod2RowVector& x, const Mod2Matrix& a) {
    if (x.cols() != a.rows()) throw domain_error("mod2_vec_mul: dimension mismatch");
    Mod2RowVector y(a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        unsigned s = 0;
        for (Eigen::Index k = 0; k < a.rows(); ++k) s ^= (x(k) & a(k, j));
        y(j) = static_cast<std::uint8_t>(s & 1u);
    }
    return y;
}

IntMatrix shear(int i, int j, int p) {
    require_index(i, p, "shear");
    require_index(j, p, "shear");
    if (i == j) throw domain_error("shear: indices must be distinct");
    IntMatrix m = identity(p);
    m(i - 1, j - 1) = 1;
    return m;
}

IntMatrix quarter_turn(int i, int j, int p) {
    require_index(i, p, "quarter_turn");
    require_index(j, p, "quarter_turn");
    if (i == j) throw domain_error("quarter_turn: indices must be distinct");
    const IntMatrix rij_inv = inverse_unimodular(shear(i, j, p));
    const IntMatrix rji = shear(j, i, p);
    IntMatrix t = rij_inv * rji;
    IntMatrix q = t * rij_inv;
    return q;
}

IntMatrix shear_squared(int i, int j, int p) {
    const IntMatrix r = shear(i, j, p);
    IntMatrix s = r * r;
    return s;
}

IntMatrix shear_pair(int i, int j, int k, int p) {
    require_index(i, p, "shear_pair");
    require_index(j, p, "shear_pair");
    require_index(k, p, "shear_pair");
    if (i == j || i == k || j == k)
        throw domain_error("shear_pair: indices must be mutually distinct");
    IntMatrix m = shear(i, k, p) * shear(j, k, p);
    return m;
}

IntMatrix generator(GenKind kind, int i, int j, int p) {
    switch (kind) {
        case GenKind::Shear: return shear(i, j, p);
        case GenKind::QuarterTurn: return quarter_turn(i, j, p);
        case GenKind::ShearSquared: return shear_squared(i, j, p);
        case GenKind::ShearPair: return shear_pair(i, j, p, p);
    }
    throw domain_error("generator: unknown kind");
}

}  // namespace torext
