#include <doctest.h>

#include <random>
#include <vector>

#include "mc/kernels.hpp"

using namespace mc;

namespace {

std::vector<std::uint32_t> random_residues(std::size_t n, std::uint32_t p,
                                           std::mt19937_64& rng) {
    std::vector<std::uint32_t> v(n);
    for (auto& x : v) x = static_cast<std::uint32_t>(rng() % p);
    return v;
}

} // namespace

TEST_CASE("backends agree on axpy and scale across moduli and lengths") {
    auto backends = kernels::all();
    REQUIRE(!backends.empty());
    std::mt19937_64 rng(42);
    // Small primes, a prime just below the 2^15 vector limit, and one
    // beyond it (falls back to the scalar path inside the kernel).
    for (std::uint32_t p : {2u, 3u, 7u, 32749u, 2147483647u}) {
        for (std::size_t n : {std::size_t{1}, std::size_t{7}, std::size_t{8},
                              std::size_t{23}, std::size_t{64}}) {
            auto x = random_residues(n, p, rng);
            auto y = random_residues(n, p, rng);
            std::uint32_t c = static_cast<std::uint32_t>(rng() % p);
            auto reference = y;
            kernels::scalar().axpy_mod(reference.data(), x.data(), c, p, n);
            for (const kernels::Kernels* k : backends) {
                auto got = y;
                k->axpy_mod(got.data(), x.data(), c, p, n);
                CHECK(got == reference);
                for (auto v : got) CHECK(v < p);
            }
            auto scale_ref = y;
            kernels::scalar().scale_mod(scale_ref.data(), c, p, n);
            for (const kernels::Kernels* k : backends) {
                auto got = y;
                k->scale_mod(got.data(), c, p, n);
                CHECK(got == scale_ref);
            }
        }
    }
}

TEST_CASE("backends agree on row compatibility") {
    auto backends = kernels::all();
    std::mt19937_64 rng(43);
    for (std::size_t n : {std::size_t{1}, std::size_t{6}, std::size_t{8},
                          std::size_t{17}}) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<std::int32_t> a(n), b(n);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = static_cast<std::int32_t>(rng() % 4) - 1; // -1..2
                b[i] = static_cast<std::int32_t>(rng() % 4) - 1;
            }
            bool reference =
                kernels::scalar().rows_compatible(a.data(), b.data(), n);
            for (const kernels::Kernels* k : backends) {
                CHECK(k->rows_compatible(a.data(), b.data(), n) == reference);
            }
        }
    }
}

TEST_CASE("compatibility semantics: equal or missing wins") {
    const auto& k = kernels::active();
    std::vector<std::int32_t> a{1, -1, 2, 0};
    std::vector<std::int32_t> b{1, 5, -1, 0};
    CHECK(k.rows_compatible(a.data(), b.data(), 4));
    std::vector<std::int32_t> c{1, 5, -1, 1};
    CHECK(!k.rows_compatible(a.data(), c.data(), 4));
}
