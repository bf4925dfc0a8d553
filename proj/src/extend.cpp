#include "torext/extend.hpp"

#include "torext/exactmat.hpp"

#include <algorithm>
#include <vector>

namespace torext {

namespace {

void require_type_dim(int p, const char* who) {
    if (p < 1 || p > kMaxTypeDim)
        throw domain_error(std::string(who) + ": dimension must lie in 1.." +
                           std::to_string(kMaxTypeDim));
}

void require_sl(const IntMatrix& u, const char* who) {
    if (!is_square(u)) throw domain_error(std::string(who) + ": matrix must be square");
    if (determinant(u) != 1)
        throw domain_error(std::string(who) + ": determinant must be 1");
}

}  // namespace

ModularType::ModularType(int p, std::uint32_t bits) : p_(p), bits_(bits) {
    require_type_dim(p, "ModularType");
    const std::uint32_t mask = (p == 32) ? ~0u : ((1u << p) - 1u);
    if (bits_ == 0) throw domain_error("ModularType: the zero vector is not a type");
    if ((bits_ & ~mask) != 0) throw domain_error("ModularType: bits exceed the dimension");
}

ModularType::ModularType(const Mod2RowVector& v)
    : ModularType(static_cast<int>(v.cols()), [&v] {
          std::uint32_t b = 0;
          for (Eigen::Index k = 0; k < v.cols(); ++k)
              if (v(k) & 1) b |= (1u << (v.cols() - 1 - k));
          return b;
      }()) {}

ModularType ModularType::standard(int p) {
    require_type_dim(p, "ModularType::standard");
    return ModularType(p, (p == 32) ? ~0u : ((1u << p) - 1u));
}

ModularType ModularType::from_bitstring(const std::string& s) {
    if (s.empty()) throw parse_error("type bit-string must be nonempty");
    std::uint32_t b = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw parse_error("type bit-string must consist of 0/1");
        b = (b << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return ModularType(static_cast<int>(s.size()), b);
}

int ModularType::entry(int index) const {
    if (index < 1 || index > p_) throw domain_error("ModularType: index out of range");
    return (bits_ >> (p_ - index)) & 1u;
}

Mod2RowVector ModularType::vector() const {
    Mod2RowVector v(p_);
    for (int k = 1; k <= p_; ++k) v(k - 1) = static_cast<std::uint8_t>(entry(k));
    return v;
}

std::string ModularType::bitstring() const {
    std::string s(p_, '0');
    for (int k = 1; k <= p_; ++k) s[k - 1] = entry(k) ? '1' : '0';
    return s;
}

bool is_extendable(const IntMatrix& u) {
    require_sl(u, "is_extendable");
    const int p = dim(u);
    for (int c = 0; c < p; ++c) {
        Int sum(0);
        for (int r = 0; r < p; ++r) sum += u(r, c);
        if (is_even(sum)) return false;
    }
    return true;
}

ModularType type_of(const IntMatrix& u) {
    require_sl(u, "type_of");
    const int p = dim(u);
    require_type_dim(p, "type_of");
    Mod2RowVector ones(p);
    ones.setOnes();
    Mod2RowVector t = mod2_vec_mul(ones, mod2(u));
    bool nonzero = false;
    for (int k = 0; k < p; ++k) nonzero = nonzero || t(k);
    if (!nonzero)
        throw std::logic_error("type_of: zero type for unimodular input (impossible)");
    return ModularType(t);
}

ModularType act(const ModularType& t, const Mod2Matrix& m) {
    return ModularType(mod2_vec_mul(t.vector(), m));
}

std::vector<ModularType> orbit_of_standard(int p) {
    require_type_dim(p, "orbit_of_standard");
    // Right multiplication by a shear (i,j) mod 2 adds coordinate i to
    // coordinate j; on bit masks this toggles bit j when bit i is set.
    const std::uint32_t start = ModularType::standard(p).bits();
    std::vector<bool> seen(std::size_t(1) << p, false);
    std::vector<std::uint32_t> queue{start};
    seen[start] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t x = queue[head];
        for (int i = 1; i <= p; ++i) {
            if (!((x >> (p - i)) & 1u)) continue;
            for (int j = 1; j <= p; ++j) {
                if (j == i) continue;
                const std::uint32_t y = x ^ (1u << (p - j));
                if (y == 0 || seen[y]) continue;
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    std::vector<ModularType> orbit;
    orbit.reserve(queue.size());
    for (std::uint32_t b : queue) orbit.emplace_back(p, b);
    return orbit;
}

IntMatrix coset_representative(const ModularType& t) {
    const int p = t.p();
    IntMatrix w = identity(p);
    // Columns whose sum must become even get one extra off-diagonal 1.
    // Entries added in row 1 only (upper), except that column 1 itself is
    // fixed from a row whose column keeps an odd sum, so no cycle forms and
    // the determinant stays 1.
    if (t.entry(1) == 0) {
        int m = 0;
        for (int k = 1; k <= p; ++k)
            if (t.entry(k) == 1) {
                m = k;
                break;
            }
        w(m - 1, 0) = 1;
    }
    for (int j = 2; j <= p; ++j)
        if (t.entry(j) == 0) w(0, j - 1) = 1;
    if (determinant(w) != 1)
        throw std::logic_error("coset_representative: construction lost unimodularity");
    if (!(type_of(w) == t))
        throw std::logic_error("coset_representative: wrong type produced");
    return w;
}

bool is_extendable_via(const IntMatrix& u, const IntMatrix& tau) {
    require_sl(u, "is_extendable_via");
    require_sl(tau, "is_extendable_via");
    if (tau.rows() != u.rows()) throw domain_error("is_extendable_via: dimension mismatch");
    IntMatrix conj = tau * u;
    conj = conj * inverse_unimodular(tau);
    return is_extendable(conj);
}

}  // namespace torext
