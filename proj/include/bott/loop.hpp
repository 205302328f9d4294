#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bott/entry.hpp"

namespace bott {

using QMat = Mat<Rational>;

struct NotInvertible : std::domain_error {
    using std::domain_error::domain_error;
};
struct BadInvolution : std::domain_error {
    using std::domain_error::domain_error;
};
struct NoStarStructure : std::domain_error {
    using std::domain_error::domain_error;
};

// Finite Laurent polynomial in z over d x d rational matrices.
class CyclicLoop {
public:
    explicit CyclicLoop(int d = 1) : d_(d) {}
    CyclicLoop(int d, Laurent<QMat> terms) : d_(d), a_(std::move(terms)) {}
    static CyclicLoop constant(const QMat& c) { return CyclicLoop(c.dim(), Laurent<QMat>(c)); }
    static CyclicLoop one(int d) { return constant(QMat::identity(d)); }
    static CyclicLoop monomial(int k, const QMat& c) {
        return CyclicLoop(c.dim(), Laurent<QMat>::monomial(k, c));
    }
    static CyclicLoop z(int d, int k = 1) { return monomial(k, QMat::identity(d)); }

    int dim() const { return d_; }
    const Laurent<QMat>& terms() const { return a_; }
    QMat coeff(int k) const {
        QMat c = a_.coeff(k);
        return c.dim() == 0 ? QMat::zero(d_) : c;
    }
    bool is_zero() const { return a_.is_zero(); }
    int min_exp() const { return a_.min_exp(); }
    int max_exp() const { return a_.max_exp(); }

    friend CyclicLoop operator+(const CyclicLoop& a, const CyclicLoop& b) { return {a.d_, a.a_ + b.a_}; }
    friend CyclicLoop operator-(const CyclicLoop& a, const CyclicLoop& b) { return {a.d_, a.a_ - b.a_}; }
    friend CyclicLoop operator*(const CyclicLoop& a, const CyclicLoop& b) { return {a.d_, a.a_ * b.a_}; }
    CyclicLoop operator-() const { return {d_, -a_}; }
    friend bool operator==(const CyclicLoop& a, const CyclicLoop& b) { return a.a_ == b.a_; }
    friend bool operator!=(const CyclicLoop& a, const CyclicLoop& b) { return !(a == b); }

    QMat eval(const Rational& w) const;
    CyclicLoop reversed() const { return {d_, a_.reversed()}; }  // a(z^{-1})
    CyclicLoop adjoint() const;
    CyclicLoop scaled_right(const QMat& c) const;  // a(z) c
    std::string str() const;

private:
    int d_;
    Laurent<QMat> a_;
};

CyclicLoop loop_mul(const CyclicLoop& a, const CyclicLoop& b);
QMat loop_eval(const CyclicLoop& a, int w);
CyclicLoop loop_adjoint(const CyclicLoop& a);

// 1/2 (1 + a + b - ab)
CyclicLoop lambda_mix(const CyclicLoop& a, const CyclicLoop& b);
// Lambda(z^sign, Qt)
CyclicLoop mixer(const QMat& Qt, int sign = 1);

struct Generator {
    enum Kind { Constant, Monomial, Mixer, Unipotent } kind = Constant;
    QMat c;           // Constant, Monomial coefficient; Mixer involution
    int k = 0;        // Monomial exponent; Mixer sign (+1 or -1)
    CyclicLoop n;     // Unipotent nilpotent part
    int witness = 0;  // Unipotent: n^witness == 0
    std::string describe() const;
};

struct LoopUnit {
    CyclicLoop forward, inverse;
    std::vector<std::string> provenance;
    int dim() const { return forward.dim(); }
};

LoopUnit unit_builder(int d, const std::vector<Generator>& spec);
LoopUnit unit_mul(const LoopUnit& a, const LoopUnit& b);
LoopUnit unit_inverse(const LoopUnit& a);
bool is_pointed(const LoopUnit& u);
LoopUnit pointed(const LoopUnit& u);  // a(z) a(1)^{-1}
bool is_involution(const QMat& q);

struct ClassWindow {
    int m = 0, n = 0;
    char tag = 'L';
};

struct FinitenessClass {
    std::vector<ClassWindow> windows;  // windows[j] belongs to factor a_{j+1}
    int M(int k) const;                // m_1 + ... + m_k
    int N(int k) const;
};

// a = a_s ... a_1 with factors[0] = a_1.
struct LoopDecomposition {
    std::vector<LoopUnit> factors;
    FinitenessClass cls;
    int size() const { return static_cast<int>(factors.size()); }
    int dim() const;
    LoopUnit product() const;
    // Every factor meets its window (L: forward, R: inverse reflected).
    bool windows_ok(std::string* why = nullptr) const;
};

// Window spanning the support of u and containing 0; tag L.
ClassWindow default_window(const LoopUnit& u);
LoopDecomposition make_decomposition(const std::vector<LoopUnit>& factors_a1_first);

// Deterministic sampling of desk-scale instances.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    long integer(long lo, long hi);  // inclusive
    Rational small_rational(int num_bound = 3, int den_bound = 3);
    QMat matrix(int d, int num_bound = 3);
    QMat invertible(int d);
    QMat involution(int d);            // P diag(+-1) P^{-1}, neither +1 nor -1 when d > 1
    QMat symmetric_involution(int d);  // Householder reflection
    QMat orthogonal(int d);            // product of reflections
    Generator generator(int d, bool allow_unipotent = true);
    LoopUnit unit(int d, int n_generators, bool pointed_result = false);
    LoopUnit unitary_unit(int d, int n_generators);
    LoopDecomposition decomposition(int d, int s, int max_factor_gens = 2);

private:
    std::mt19937_64 rng_;
};

}  // namespace bott
