#include "mc/kernels.hpp"

namespace mc::kernels {

namespace {

void axpy_mod_scalar(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c,
                     std::uint32_t p, std::size_t n) {
    // 64-bit intermediate: c, x[i], y[i] < p < 2^31.
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t z =
            static_cast<std::uint64_t>(c) * x[i] + y[i];
        y[i] = static_cast<std::uint32_t>(z % p);
    }
}

void scale_mod_scalar(std::uint32_t* y, std::uint32_t c, std::uint32_t p,
                      std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t z = static_cast<std::uint64_t>(c) * y[i];
        y[i] = static_cast<std::uint32_t>(z % p);
    }
}

bool rows_compatible_scalar(const std::int32_t* a, const std::int32_t* b,
                            std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i] && a[i] >= 0 && b[i] >= 0) return false;
    }
    return true;
}

} // namespace

const Kernels& scalar() {
    static const Kernels table{"scalar", axpy_mod_scalar, scale_mod_scalar,
                               rows_compatible_scalar};
    return table;
}

} // namespace mc::kernels
