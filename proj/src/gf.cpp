#include "mc/gf.hpp"

#include <string>

namespace mc {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (1ull << 31)) {
        throw contract_error("field modulus " + std::to_string(p) +
                             " does not fit below 2^31");
    }
    if (!is_prime(p)) {
        throw contract_error("field modulus " + std::to_string(p) +
                             " is not prime");
    }
}

std::uint64_t PrimeField::pow(std::uint64_t base, std::uint64_t exp) const {
    std::uint64_t result = 1 % p_;
    base %= p_;
    while (exp > 0) {
        if (exp & 1) result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    a %= p_;
    if (a == 0) throw contract_error("division by zero in GF(p)");
    return pow(a, p_ - 2);
}

std::uint64_t PrimeField::reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(r);
}

namespace {

void require_same_field(const Fp& a, const Fp& b) {
    if (a.p != b.p) {
        throw contract_error("mixed-modulus operands: GF(" +
                             std::to_string(a.p) + ") vs GF(" +
                             std::to_string(b.p) + ")");
    }
}

Fp raw(std::uint64_t value, std::uint64_t p) {
    Fp r;
    r.value = value;
    r.p = p;
    return r;
}

} // namespace

Fp operator+(const Fp& a, const Fp& b) {
    require_same_field(a, b);
    std::uint64_t s = a.value + b.value;
    return raw(s >= a.p ? s - a.p : s, a.p);
}

Fp operator-(const Fp& a, const Fp& b) {
    require_same_field(a, b);
    return raw(a.value >= b.value ? a.value - b.value
                                  : a.value + a.p - b.value,
               a.p);
}

Fp operator*(const Fp& a, const Fp& b) {
    require_same_field(a, b);
    auto prod = static_cast<unsigned __int128>(a.value) * b.value;
    return raw(static_cast<std::uint64_t>(prod % a.p), a.p);
}

Fp operator-(const Fp& a) {
    return raw(a.value == 0 ? 0 : a.p - a.value, a.p);
}

bool operator==(const Fp& a, const Fp& b) {
    require_same_field(a, b);
    return a.value == b.value;
}

Fp inverse(const Fp& a) {
    return raw(a.field().inv(a.value), a.p);
}

} // namespace mc
