#include "torext/spectra.hpp"

#include "torext/exactmat.hpp"

#include <algorithm>
#include <sstream>

namespace torext {

namespace detail {

IntPoly trim(IntPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int degree(const IntPoly& f) { return static_cast<int>(f.size()) - 1; }

Int eval(const IntPoly& f, const Int& x) {
    Int acc(0);
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPoly reverse_poly(const IntPoly& f) {
    IntPoly r(f.rbegin(), f.rend());
    return trim(std::move(r));
}

IntPoly derivative(const IntPoly& f) {
    IntPoly d;
    for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * Int(static_cast<long>(k)));
    return trim(std::move(d));
}

namespace {

Int content(const IntPoly& f) {
    Int c(0);
    for (const Int& a : f) c = gcd(c, a);
    return c;
}

IntPoly primitive(IntPoly f) {
    f = trim(std::move(f));
    if (f.empty()) return f;
    Int c = content(f);
    if (f.back() < 0) c = -c;
    for (Int& a : f) a = exact_div(a, c);
    return f;
}

// Rational-coefficient polynomials for the Euclidean steps.
using RatPoly = std::vector<Rational>;

RatPoly to_rat(const IntPoly& f) {
    RatPoly r;
    r.reserve(f.size());
    for (const Int& a : f) r.emplace_back(a);
    return r;
}

RatPoly rat_trim(RatPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

// Remainder of f modulo g over Q; g must be nonzero.
RatPoly rat_rem(RatPoly f, const RatPoly& g) {
    f = rat_trim(std::move(f));
    while (f.size() >= g.size() && !f.empty()) {
        Rational q = f.back() / g.back();
        const std::size_t shift = f.size() - g.size();
        for (std::size_t k = 0; k < g.size(); ++k) {
            f[shift + k] -= q * g[k];
            f[shift + k].canonicalize();
        }
        f = rat_trim(std::move(f));
    }
    return f;
}

IntPoly rat_to_primitive_int(const RatPoly& f) {
    Int lcm(1);
    for (const Rational& a : f) {
        Int den = a.get_den();
        lcm = exact_div(lcm * den, gcd(lcm, den));
    }
    IntPoly g;
    g.reserve(f.size());
    for (const Rational& a : f) {
        Rational s = a * Rational(lcm);
        s.canonicalize();
        g.push_back(s.get_num());
    }
    return primitive(std::move(g));
}

}  // namespace

IntPoly poly_gcd(const IntPoly& f0, const IntPoly& g0) {
    IntPoly f = trim(f0), g = trim(g0);
    if (f.empty()) return primitive(std::move(g));
    if (g.empty()) return primitive(std::move(f));
    RatPoly a = to_rat(f), b = to_rat(g);
    while (!b.empty()) {
        RatPoly r = rat_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return rat_to_primitive_int(a);
}

int count_real_roots_in(const IntPoly& f0, const Int& lo, const Int& hi) {
    IntPoly f = trim(f0);
    if (f.empty()) throw std::logic_error("count_real_roots_in: zero polynomial");
    if (eval(f, lo) == 0 || eval(f, hi) == 0)
        throw std::logic_error("count_real_roots_in: endpoint is a root");
    // Square-free part keeps the Sturm count equal to the number of
    // distinct roots.
    IntPoly sq = poly_gcd(f, derivative(f));
    if (degree(sq) > 0) {
        RatPoly num = to_rat(f), den = to_rat(sq);
        // Exact division f / gcd(f, f').
        RatPoly q(num.size() - den.size() + 1, Rational(0));
        RatPoly rem = num;
        for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
            Rational c = rem[k + den.size() - 1] / den.back();
            c.canonicalize();
            q[k] = c;
            for (std::size_t m = 0; m < den.size(); ++m) {
                rem[k + m] -= c * den[m];
                rem[k + m].canonicalize();
            }
        }
        f = rat_to_primitive_int(q);
    }

    // Sturm chain.
    std::vector<RatPoly> chain;
    chain.push_back(to_rat(f));
    chain.push_back(to_rat(derivative(f)));
    while (!rat_trim(chain.back()).empty()) {
        RatPoly r = rat_rem(chain[chain.size() - 2], chain.back());
        for (Rational& c : r) c = -c;
        chain.push_back(rat_trim(std::move(r)));
    }
    chain.pop_back();

    auto variations = [&chain](const Int& x) {
        int count = 0, last = 0;
        Rational xr(x);
        for (const RatPoly& g : chain) {
            Rational v(0);
            for (auto it = g.rbegin(); it != g.rend(); ++it) {
                v = v * xr + *it;
                v.canonicalize();
            }
            int s = sgn(v);
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };
    return variations(lo) - variations(hi);
}

bool has_unit_circle_root(const IntPoly& f0) {
    IntPoly f = trim(f0);
    if (f.empty()) throw std::logic_error("has_unit_circle_root: zero polynomial");
    if (degree(f) == 0) return false;
    if (eval(f, Int(1)) == 0 || eval(f, Int(-1)) == 0) return true;

    // Complex unit-circle roots t satisfy t * conj(t) = 1 with conj(t) = 1/t,
    // so they are common roots of f and its reversal.
    IntPoly s = poly_gcd(f, reverse_poly(f));
    if (degree(s) <= 0) return false;
    if (eval(s, Int(1)) == 0 || eval(s, Int(-1)) == 0) return true;

    // s is palindromic of even degree 2m here: its root multiset is closed
    // under inversion and +-1 are excluded.
    const int ds = degree(s);
    if (ds % 2 != 0)
        throw std::logic_error("has_unit_circle_root: odd-degree self-reciprocal factor");
    const int m = ds / 2;
    for (int k = 0; k <= ds; ++k)
        if (s[k] != s[ds - k])
            throw std::logic_error("has_unit_circle_root: factor is not palindromic");

    // Substitute u = t + 1/t:  s(t) / t^m = s[m] + sum_k s[m+k] (t^k + t^-k),
    // and t^k + t^-k = B_k(u) with B_0 = 2, B_1 = u, B_k = u B_{k-1} - B_{k-2}.
    std::vector<IntPoly> basis(m + 1);
    basis[0] = IntPoly{Int(2)};
    if (m >= 1) basis[1] = IntPoly{Int(0), Int(1)};
    for (int k = 2; k <= m; ++k) {
        IntPoly b(basis[k - 1].size() + 1, Int(0));
        for (std::size_t t = 0; t < basis[k - 1].size(); ++t) b[t + 1] = basis[k - 1][t];
        for (std::size_t t = 0; t < basis[k - 2].size(); ++t) b[t] -= basis[k - 2][t];
        basis[k] = trim(std::move(b));
    }
    IntPoly h{s[m]};
    for (int k = 1; k <= m; ++k) {
        if (h.size() < basis[k].size()) h.resize(basis[k].size(), Int(0));
        for (std::size_t t = 0; t < basis[k].size(); ++t) h[t] += s[m + k] * basis[k][t];
    }
    h = trim(std::move(h));

    // Unit-circle roots (excluding +-1) correspond exactly to real roots of h
    // in the open interval (-2, 2).
    return count_real_roots_in(h, Int(-2), Int(2)) > 0;
}

}  // namespace detail

const char* to_string(Expanding s) {
    switch (s) {
        case Expanding::Expanding: return "expanding";
        case Expanding::NotExpanding: return "not-expanding";
        case Expanding::Boundary: return "boundary";
    }
    return "?";
}

CharPoly char_poly(const IntMatrix& a) {
    if (!is_square(a)) throw domain_error("char_poly: matrix must be square");
    const int p = dim(a);
    // Faddeev-LeVerrier: every division below is exact.
    std::vector<Int> c(p + 1);
    c[p] = 1;  // stored ascending by power for the recurrence, flipped at the end
    IntMatrix m = a;
    c[p - 1] = -m.trace();
    for (int k = 2; k <= p; ++k) {
        IntMatrix shifted = m;
        for (int d = 0; d < p; ++d) shifted(d, d) += c[p - k + 1];
        m = a * shifted;
        c[p - k] = exact_div(-m.trace(), Int(k));
    }
    CharPoly out;
    out.degree = p;
    out.coeffs.resize(p + 1);
    for (int k = 0; k <= p; ++k) out.coeffs[k] = c[p - k];
    return out;
}

std::pair<IntMatrix, bool> ensure_positive_degree(const IntMatrix& a) {
    if (!is_square(a)) throw domain_error("ensure_positive_degree: matrix must be square");
    const Int det = determinant(a);
    if (det == 0) throw domain_error("ensure_positive_degree: singular matrix");
    if (det > 0) return {a, false};
    IntMatrix sq = a * a;
    return {sq, true};
}

ExpandingVerdict is_expanding(const IntMatrix& a) {
    if (!is_square(a)) throw domain_error("is_expanding: matrix must be square");
    const int p = dim(a);
    const CharPoly chi = char_poly(a);

    // Ascending copy for the polynomial helpers.
    detail::IntPoly f(p + 1);
    for (int k = 0; k <= p; ++k) f[k] = chi.coeffs[p - k];

    if (f[0] == 0)
        return {Expanding::NotExpanding, "zero eigenvalue (singular matrix)"};
    if (detail::eval(f, Int(1)) == 0)
        return {Expanding::Boundary, "eigenvalue 1 lies on the unit circle"};
    if (detail::eval(f, Int(-1)) == 0)
        return {Expanding::Boundary, "eigenvalue -1 lies on the unit circle"};

    // Reciprocal-pair pre-check: a unit-circle eigenvalue is a common root of
    // the characteristic polynomial and its reversal, so it must show up in
    // this gcd.  A nonconstant gcd without unit-circle roots pairs some
    // eigenvalue with its inverse off the circle, which puts one of the two
    // strictly inside the unit disk.
    detail::IntPoly g = detail::poly_gcd(f, detail::reverse_poly(f));
    if (detail::degree(g) >= 1) {
        if (detail::has_unit_circle_root(g))
            return {Expanding::Boundary,
                    "reciprocal-gcd nonconstant: eigenvalue of modulus 1 detected"};
        return {Expanding::NotExpanding,
                "reciprocal eigenvalue pair off the unit circle forces a root with modulus < 1"};
    }

    // Schur-type stability iteration on the reversed polynomial q:
    // all eigenvalues of A lie outside the unit circle iff all roots of q lie
    // strictly inside.  Each stage compares |q(0)| with |lead(q)| and then
    // maps q to (lead * q - q(0) * reverse(q)) / t, which is division-free
    // over the integers and preserves the property under test.
    detail::IntPoly q = detail::reverse_poly(f);
    for (int stage = 1; detail::degree(q) >= 1; ++stage) {
        const Int c0 = q.front();
        const Int cm = q.back();
        const Int a0 = abs(c0), am = abs(cm);
        if (a0 >= am) {
            std::ostringstream os;
            os << "root with modulus <= 1 detected at stability-test stage " << stage;
            if (a0 == am)
                os << " (pivot vanished; no unit-circle eigenvalue exists, so some "
                      "eigenvalue has modulus < 1)";
            return {Expanding::NotExpanding, os.str()};
        }
        detail::IntPoly rev = detail::reverse_poly(q);
        rev.resize(q.size(), Int(0));
        detail::IntPoly next(q.size() - 1);
        for (std::size_t k = 1; k < q.size(); ++k) next[k - 1] = cm * q[k] - c0 * rev[k];
        q = detail::trim(std::move(next));
        if (q.empty()) throw std::logic_error("is_expanding: stability iterate collapsed");
    }
    return {Expanding::Expanding, ""};
}

}  // namespace torext
