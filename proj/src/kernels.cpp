#include "mc/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace mc::kernels {

namespace {

const Kernels& pick_active() {
    const char* forced = std::getenv("MC_KERNELS");
    if (forced != nullptr) {
        if (std::strcmp(forced, "scalar") == 0) return scalar();
        if (std::strcmp(forced, "avx2") == 0 && avx2() != nullptr) {
            return *avx2();
        }
    }
    if (const Kernels* v = avx2()) return *v;
    return scalar();
}

} // namespace

const Kernels& active() {
    static const Kernels& chosen = pick_active();
    return chosen;
}

std::vector<const Kernels*> all() {
    std::vector<const Kernels*> backends{&scalar()};
    if (const Kernels* v = avx2()) backends.push_back(v);
    return backends;
}

} // namespace mc::kernels
