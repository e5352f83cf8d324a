#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mc::kernels {

// Row kernels behind the GF(p) elimination loops and the row-compatibility
// scan. The scalar table is the reference; every other backend must agree
// with it element-for-element and is selected at runtime via active().
struct Kernels {
    const char* name;

    // y[i] <- (y[i] + c * x[i]) mod p. All inputs canonical residues, c < p.
    void (*axpy_mod)(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c,
                     std::uint32_t p, std::size_t n);

    // y[i] <- (c * y[i]) mod p.
    void (*scale_mod)(std::uint32_t* y, std::uint32_t c, std::uint32_t p,
                      std::size_t n);

    // Two rows are compatible when every position agrees or at least one
    // side is missing. Missing cells are encoded as negative values.
    bool (*rows_compatible)(const std::int32_t* a, const std::int32_t* b,
                            std::size_t n);
};

const Kernels& scalar();

// AVX2 backend, or nullptr when the build or the CPU does not support it.
const Kernels* avx2();

// Best backend available. MC_KERNELS=scalar (or =avx2) in the environment
// overrides the choice; the decision is made once per process.
const Kernels& active();

// All usable backends, scalar first; for equivalence tests.
std::vector<const Kernels*> all();

} // namespace mc::kernels
