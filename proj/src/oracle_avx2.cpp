#include <cstring>

#include "bott/oracle.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define BOTT_X86 1
#endif

namespace bott::f64 {

#ifdef BOTT_X86

bool avx2_available() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

// Same summation order per output element as matmul_scalar, so results match bitwise
// whenever FMA contraction is off in the scalar kernel.
__attribute__((target("avx2"))) void matmul_avx2(const double* a, const double* b, double* c, int n) {
    std::memset(c, 0, sizeof(double) * n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            __m256d x = _mm256_set1_pd(a[i * n + k]);
            int j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d acc = _mm256_loadu_pd(c + i * n + j);
                __m256d y = _mm256_loadu_pd(b + k * n + j);
                acc = _mm256_add_pd(acc, _mm256_mul_pd(x, y));
                _mm256_storeu_pd(c + i * n + j, acc);
            }
            for (; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
        }
}

#else

bool avx2_available() { return false; }
void matmul_avx2(const double* a, const double* b, double* c, int n) { matmul_scalar(a, b, c, n); }

#endif

}  // namespace bott::f64
