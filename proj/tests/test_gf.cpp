#include <doctest.h>

#include <random>

#include "mc/gf.hpp"

using namespace mc;

TEST_CASE("field construction rejects non-primes and oversized moduli") {
    CHECK_THROWS_AS(PrimeField(1), contract_error);
    CHECK_THROWS_AS(PrimeField(4), contract_error);
    CHECK_THROWS_AS(PrimeField(0), contract_error);
    CHECK_THROWS_AS(PrimeField(1ull << 31), contract_error);
    CHECK(PrimeField(2).modulus() == 2);
    CHECK(PrimeField(2147483647).modulus() == 2147483647); // 2^31 - 1
}

TEST_CASE("addition examples") {
    CHECK(PrimeField(2).add(1, 1) == 0);
    CHECK(PrimeField(5).add(3, 4) == 2);
    PrimeField f7(7);
    for (std::uint64_t x = 0; x < 7; ++x) {
        CHECK(f7.add(0, x) == x);
    }
}

TEST_CASE("multiplication examples") {
    CHECK(PrimeField(5).mul(2, 3) == 1);
    CHECK(PrimeField(3).mul(2, 2) == 1);
    for (std::uint64_t p : {2ull, 5ull, 11ull, 101ull}) {
        PrimeField f(p);
        for (std::uint64_t x = 0; x < p; ++x) {
            CHECK(f.mul(1, x) == x);
        }
    }
}

TEST_CASE("inverse examples and the a * inv(a) = 1 law") {
    CHECK(PrimeField(5).inv(2) == 3);
    CHECK(PrimeField(2).inv(1) == 1);
    CHECK(PrimeField(7).inv(3) == 5);
    CHECK_THROWS_AS(PrimeField(7).inv(0), contract_error);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull}) {
        PrimeField f(p);
        for (std::uint64_t a = 1; a < p; ++a) {
            CHECK(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("field axioms on randomized triples") {
    std::mt19937_64 rng(7);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull}) {
        PrimeField f(p);
        for (int trial = 0; trial < 200; ++trial) {
            std::uint64_t a = rng() % p, b = rng() % p, c = rng() % p;
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
        }
    }
}

TEST_CASE("carried-modulus elements reject mixed fields") {
    PrimeField f5(5), f7(7);
    Fp a(3, f5), b(4, f5), c(4, f7);
    CHECK((a + b).value == 2);
    CHECK((a * b).value == 2);
    CHECK((a - b).value == 4);
    CHECK(inverse(a).value == 2);
    CHECK_THROWS_AS((void)(a + c), contract_error);
    CHECK_THROWS_AS((void)(a * c), contract_error);
    CHECK_THROWS_AS((void)(a == c), contract_error);
}

TEST_CASE("reduce maps any signed integer to the canonical residue") {
    PrimeField f(7);
    CHECK(f.reduce(-1) == 6);
    CHECK(f.reduce(-7) == 0);
    CHECK(f.reduce(13) == 6);
    CHECK(f.reduce(0) == 0);
}
