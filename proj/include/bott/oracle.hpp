#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bott/op.hpp"

namespace bott {

struct WindowMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NoInvertibleLeadingStructure : std::domain_error {
    using std::domain_error::domain_error;
};

// Largest |i - j| over the nonzero entries of A.
template <class K>
long band(const Op<K>& A) {
    long b = 0;
    for (const auto* s : {&A.neg, &A.pos})
        for (const auto& [p, x] : s->terms()) b = std::max<long>(b, std::abs(p));
    for (const auto& [ij, e] : A.fin) b = std::max<long>(b, std::abs(ij.first - ij.second));
    return b;
}

// Dense truncation of an operator to [lo, hi) x [lo, hi). Entries in the safe
// region [lo + budget, hi - budget) agree with the exact operator.
template <class K>
struct DenseWindow {
    long lo = 0, hi = 0;
    long budget = 0, exact_band = 0;
    int d = 1;
    std::vector<Entry<K>> e;

    long size() const { return hi - lo; }
    Entry<K>& at(long i, long j) { return e[(i - lo) * size() + (j - lo)]; }
    const Entry<K>& at(long i, long j) const { return e[(i - lo) * size() + (j - lo)]; }
    long safe_lo() const { return lo + budget; }
    long safe_hi() const { return hi - budget; }

    static DenseWindow truncate(const Op<K>& A, long lo, long hi) {
        DenseWindow w;
        w.lo = lo;
        w.hi = hi;
        w.d = A.d;
        w.exact_band = band(A);
        w.e.resize((hi - lo) * (hi - lo));
        for (long i = lo; i < hi; ++i)
            for (long j = lo; j < hi; ++j) w.at(i, j) = A.at(i, j);
        return w;
    }
};

template <class K>
DenseWindow<K> dense_mul(const DenseWindow<K>& A, const DenseWindow<K>& B) {
    if (A.lo != B.lo || A.hi != B.hi) throw WindowMismatch("dense_mul needs equal windows");
    DenseWindow<K> C;
    C.lo = A.lo;
    C.hi = A.hi;
    C.d = A.d;
    C.budget = A.budget + B.budget + std::max(A.exact_band, B.exact_band);
    C.exact_band = A.exact_band + B.exact_band;
    C.e.resize(A.e.size());
    for (long i = A.lo; i < A.hi; ++i)
        for (long k = A.lo; k < A.hi; ++k) {
            const Entry<K>& x = A.at(i, k);
            if (x.is_zero()) continue;
            for (long j = A.lo; j < A.hi; ++j) {
                const Entry<K>& y = B.at(k, j);
                if (!y.is_zero()) C.at(i, j) += x * y;
            }
        }
    return C;
}

// Compare the safe region of W against an exact operator.
template <class K>
bool agrees_on_safe(const DenseWindow<K>& W, const Op<K>& A, std::string* where = nullptr) {
    for (long i = W.safe_lo(); i < W.safe_hi(); ++i)
        for (long j = W.safe_lo(); j < W.safe_hi(); ++j)
            if (!(W.at(i, j) == A.at(i, j))) {
                if (where) *where = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
                return false;
            }
    return true;
}

struct TruncatedInverse {
    CyclicLoop series;       // inverse up to the stated order (relative to the lowest exponent)
    int order = 0;
    CyclicLoop residual;     // a * series - 1, supported beyond the order
    bool certified = false;  // geometric decay certificate found
    Rational ratio = 0;      // sample-norm ratio r < 1 when certified
    Rational tail_bound = 0; // bound on the max-entry size of the dropped coefficients
};

// Power-series inverse of a loop whose lowest coefficient is invertible.
TruncatedInverse truncated_loop_inverse(const CyclicLoop& a, int order);

// Max-abs entry norm.
Rational max_norm(const QMat& m);

// Floating-point dense backend used for performance studies only.
namespace f64 {

enum class Kernel { Scalar, Avx2 };

// C = A * B for row-major n x n matrices.
void matmul_scalar(const double* a, const double* b, double* c, int n);
void matmul_avx2(const double* a, const double* b, double* c, int n);
bool avx2_available();
Kernel selected_kernel();
const char* kernel_name(Kernel k);
void matmul(const double* a, const double* b, double* c, int n);  // runtime dispatch

}  // namespace f64

}  // namespace bott
