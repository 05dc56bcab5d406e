#pragma once

#include <cstdint>
#include <cstring>

namespace expsum {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 gcd_u64(u64 a, u64 b) {
    while (b != 0) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Modular inverse of a mod m for gcd(a, m) = 1; extended Euclid on signed 128-bit.
inline u64 invmod_u64(u64 a, u64 m) {
    i128 t = 0, new_t = 1;
    i128 r = m, new_r = a % m;
    while (new_r != 0) {
        i128 q = r / new_r;
        i128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

// 320-bit unsigned integer, little-endian limbs. Just enough arithmetic for the
// bit-by-bit square roots used to derive 128-bit phase fractions.
struct U320 {
    u64 w[5] = {0, 0, 0, 0, 0};

    static U320 from_u64(u64 v) {
        U320 r;
        r.w[0] = v;
        return r;
    }

    bool is_zero() const { return (w[0] | w[1] | w[2] | w[3] | w[4]) == 0; }

    int compare(const U320& o) const {
        for (int i = 4; i >= 0; --i) {
            if (w[i] != o.w[i]) return w[i] < o.w[i] ? -1 : 1;
        }
        return 0;
    }
    bool operator<(const U320& o) const { return compare(o) < 0; }
    bool operator>=(const U320& o) const { return compare(o) >= 0; }
    bool operator!=(const U320& o) const { return compare(o) != 0; }

    U320& operator+=(const U320& o) {
        u128 carry = 0;
        for (int i = 0; i < 5; ++i) {
            u128 s = (u128)w[i] + o.w[i] + carry;
            w[i] = static_cast<u64>(s);
            carry = s >> 64;
        }
        return *this;
    }

    U320& operator-=(const U320& o) {
        u64 borrow = 0;
        for (int i = 0; i < 5; ++i) {
            u64 oi = o.w[i];
            u64 d = w[i] - oi;
            u64 b1 = w[i] < oi;
            u64 d2 = d - borrow;
            u64 b2 = d < borrow;
            w[i] = d2;
            borrow = b1 | b2;
        }
        return *this;
    }

    U320 shifted_left(unsigned k) const {
        U320 r;
        unsigned limb = k / 64, bits = k % 64;
        for (int i = 4; i >= 0; --i) {
            u64 v = 0;
            int src = i - static_cast<int>(limb);
            if (src >= 0) {
                v = w[src] << bits;
                if (bits != 0 && src - 1 >= 0) v |= w[src - 1] >> (64 - bits);
            }
            r.w[i] = v;
        }
        return r;
    }

    U320 shifted_right(unsigned k) const {
        U320 r;
        unsigned limb = k / 64, bits = k % 64;
        for (int i = 0; i < 5; ++i) {
            u64 v = 0;
            unsigned src = i + limb;
            if (src < 5) {
                v = w[src] >> bits;
                if (bits != 0 && src + 1 < 5) v |= w[src + 1] << (64 - bits);
            }
            r.w[i] = v;
        }
        return r;
    }

    int bit_length() const {
        for (int i = 4; i >= 0; --i) {
            if (w[i] != 0) return 64 * i + (64 - __builtin_clzll(w[i]));
        }
        return 0;
    }

    u128 low128() const { return ((u128)w[1] << 64) | w[0]; }
};

// floor(sqrt(n)) by the classic restoring binary method.
inline U320 isqrt_u320(const U320& n) {
    U320 x = n;
    U320 res;
    int top = n.bit_length();
    if (top == 0) return res;
    unsigned shift = static_cast<unsigned>((top - 1) & ~1);
    U320 bit = U320::from_u64(1).shifted_left(shift);
    while (!bit.is_zero()) {
        U320 t = res;
        t += bit;
        if (x >= t) {
            x -= t;
            res = res.shifted_right(1);
            res += bit;
        } else {
            res = res.shifted_right(1);
        }
        bit = bit.shifted_right(2);
    }
    return res;
}

} // namespace expsum
