#include "mc/kernels.hpp"

#if defined(MC_HAVE_AVX2_BUILD)

#include <immintrin.h>

namespace mc::kernels {

namespace {

// Vector path requires p < 2^15: then y + c*x < 2^30 + 2^15 fits an int32
// lane and floor(z/p) computed in double precision is exact (the fractional
// part of z/p is at least 1/p > 2^-15, far above the 2^-22 rounding error).
constexpr std::uint32_t kVectorModulusLimit = 1u << 15;

inline __m256i reduce_mod(__m256i z, __m256i vp, __m256d pd) {
    __m256d zlo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(z));
    __m256d zhi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(z, 1));
    __m128i qlo = _mm256_cvttpd_epi32(_mm256_floor_pd(_mm256_div_pd(zlo, pd)));
    __m128i qhi = _mm256_cvttpd_epi32(_mm256_floor_pd(_mm256_div_pd(zhi, pd)));
    __m256i q = _mm256_set_m128i(qhi, qlo);
    __m256i r = _mm256_sub_epi32(z, _mm256_mullo_epi32(q, vp));
    // Safety clamp into [0, p).
    __m256i neg = _mm256_srai_epi32(r, 31);
    r = _mm256_add_epi32(r, _mm256_and_si256(neg, vp));
    __m256i lt = _mm256_cmpgt_epi32(vp, r);
    r = _mm256_sub_epi32(r, _mm256_andnot_si256(lt, vp));
    return r;
}

void axpy_mod_avx2(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c,
                   std::uint32_t p, std::size_t n) {
    if (p >= kVectorModulusLimit) {
        scalar().axpy_mod(y, x, c, p, n);
        return;
    }
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
        __m256i z = _mm256_add_epi32(_mm256_mullo_epi32(vx, vc), vy);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i),
                            reduce_mod(z, vp, pd));
    }
    if (i < n) scalar().axpy_mod(y + i, x + i, c, p, n - i);
}

void scale_mod_avx2(std::uint32_t* y, std::uint32_t c, std::uint32_t p,
                    std::size_t n) {
    if (p >= kVectorModulusLimit) {
        scalar().scale_mod(y, c, p, n);
        return;
    }
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
        __m256i z = _mm256_mullo_epi32(vy, vc);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i),
                            reduce_mod(z, vp, pd));
    }
    if (i < n) scalar().scale_mod(y + i, c, p, n - i);
}

bool rows_compatible_avx2(const std::int32_t* a, const std::int32_t* b,
                          std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i eq = _mm256_cmpeq_epi32(va, vb);
        __m256i missing = _mm256_or_si256(_mm256_srai_epi32(va, 31),
                                          _mm256_srai_epi32(vb, 31));
        __m256i ok = _mm256_or_si256(eq, missing);
        if (_mm256_movemask_ps(_mm256_castsi256_ps(ok)) != 0xFF) return false;
    }
    for (; i < n; ++i) {
        if (a[i] != b[i] && a[i] >= 0 && b[i] >= 0) return false;
    }
    return true;
}

} // namespace

const Kernels* avx2() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Kernels table{"avx2", axpy_mod_avx2, scale_mod_avx2,
                               rows_compatible_avx2};
    return &table;
}

} // namespace mc::kernels

#else

namespace mc::kernels {

const Kernels* avx2() { return nullptr; }

} // namespace mc::kernels

#endif
