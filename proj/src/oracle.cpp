#include "bott/oracle.hpp"

#include <cstdlib>
#include <cstring>

namespace bott {

Rational max_norm(const QMat& m) {
    Rational r = 0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) r = std::max(r, Rational(abs(m(i, j))));
    return r;
}

TruncatedInverse truncated_loop_inverse(const CyclicLoop& a, int order) {
    if (a.is_zero()) throw NoInvertibleLeadingStructure("zero loop");
    int d = a.dim();
    int m = a.min_exp();
    QMat c0 = a.coeff(m), c0i;
    try {
        c0i = c0.inverse();
    } catch (const std::domain_error&) {
        throw NoInvertibleLeadingStructure("lowest coefficient is singular");
    }
    // a = z^m c0 (1 - n(z)) with n(z) = -c0^{-1} (z^{-m} a - c0), a power series without constant term
    CyclicLoop shifted(d, a.terms().shifted(-m));
    CyclicLoop n = CyclicLoop::constant(-c0i) * (shifted - CyclicLoop::constant(c0));
    // (1 - n)^{-1} = sum_k n^k, kept up to z^order
    auto cut = [&](const CyclicLoop& x) {
        Laurent<QMat> t;
        for (const auto& [k, c] : x.terms().terms())
            if (k <= order) t.add(k, c);
        return CyclicLoop(d, t);
    };
    CyclicLoop sum = CyclicLoop::one(d), term = CyclicLoop::one(d);
    for (int k = 1; k <= order; ++k) {
        term = cut(term * n);
        if (term.is_zero()) break;
        sum = sum + term;
    }
    TruncatedInverse r;
    r.order = order;
    r.series = CyclicLoop(d, (sum * CyclicLoop::constant(c0i)).terms().shifted(-m));
    r.residual = a * r.series - CyclicLoop::one(d);
    Rational rn = 0;
    for (const auto& [k, c] : n.terms().terms()) rn += max_norm(c) * d;
    r.ratio = rn;
    if (rn < 1) {
        r.certified = true;
        Rational p = 1;
        for (int k = 0; k <= order; ++k) p *= rn;
        r.tail_bound = p / (1 - rn) * max_norm(c0i) * d;
    }
    return r;
}

namespace f64 {

void matmul_scalar(const double* a, const double* b, double* c, int n) {
    std::memset(c, 0, sizeof(double) * n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double x = a[i * n + k];
            for (int j = 0; j < n; ++j) c[i * n + j] += x * b[k * n + j];
        }
}

Kernel selected_kernel() {
    static const Kernel k = [] {
        const char* force = std::getenv("BOTT_FORCE_SCALAR");
        if (force && *force && *force != '0') return Kernel::Scalar;
        return avx2_available() ? Kernel::Avx2 : Kernel::Scalar;
    }();
    return k;
}

const char* kernel_name(Kernel k) { return k == Kernel::Avx2 ? "avx2" : "scalar"; }

void matmul(const double* a, const double* b, double* c, int n) {
    if (selected_kernel() == Kernel::Avx2) matmul_avx2(a, b, c, n);
    else matmul_scalar(a, b, c, n);
}

}  // namespace f64

}  // namespace bott
