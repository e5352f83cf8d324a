#pragma once

#include <cstdint>

#include "mc/errors.hpp"

namespace mc {

// Arithmetic in GF(p) for a runtime-chosen prime p. Keeping p a runtime
// value lets the same code serve both the fixed-domain and the
// domain-as-input problem variants. Residues are canonical in [0, p).
//
// p is capped below 2^31 so that matrix cells fit in an int32 lane with a
// negative value left over for the missing-entry marker.
class PrimeField {
public:
    // Throws contract_error unless p is a prime in [2, 2^31).
    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const { return p_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }

    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(a) * b) % p_);
    }

    std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const;

    // Multiplicative inverse via a^(p-2). Throws contract_error on a == 0.
    std::uint64_t inv(std::uint64_t a) const;

    // Canonical residue of an arbitrary signed integer.
    std::uint64_t reduce(std::int64_t v) const;

    bool operator==(const PrimeField& other) const { return p_ == other.p_; }
    bool operator!=(const PrimeField& other) const { return p_ != other.p_; }

private:
    std::uint64_t p_;
};

// A field element that carries its modulus. Operations on elements of
// different fields throw contract_error. Bulk data structures (matrices,
// equation systems) store raw residues and share one PrimeField instead.
struct Fp {
    std::uint64_t value = 0;
    std::uint64_t p = 2;

    Fp() = default;
    Fp(std::uint64_t value, const PrimeField& field)
        : value(value % field.modulus()), p(field.modulus()) {}

    PrimeField field() const { return PrimeField(p); }
};

Fp operator+(const Fp& a, const Fp& b);
Fp operator-(const Fp& a, const Fp& b);
Fp operator*(const Fp& a, const Fp& b);
Fp operator-(const Fp& a);
bool operator==(const Fp& a, const Fp& b);
Fp inverse(const Fp& a);

bool is_prime(std::uint64_t n);

} // namespace mc
