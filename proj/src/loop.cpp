#include "bott/loop.hpp"

#include <sstream>

namespace bott {

QMat CyclicLoop::eval(const Rational& w) const {
    QMat r = QMat::zero(d_);
    for (const auto& [k, c] : a_.terms()) r = r + power(w, k) * c;
    return r;
}

CyclicLoop CyclicLoop::adjoint() const { return {d_, bott::adjoint(a_)}; }

CyclicLoop CyclicLoop::scaled_right(const QMat& c) const {
    return {d_, a_.map([&](const QMat& x) { return x * c; })};
}

std::string CyclicLoop::str() const {
    if (a_.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : a_.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "[";
        for (int i = 0; i < d_; ++i) {
            if (i) os << "; ";
            for (int j = 0; j < d_; ++j) os << (j ? " " : "") << to_string(c(i, j));
        }
        os << "]";
        if (k != 0) os << "z^" << k;
    }
    return os.str();
}

CyclicLoop loop_mul(const CyclicLoop& a, const CyclicLoop& b) { return a * b; }
QMat loop_eval(const CyclicLoop& a, int w) { return a.eval(Rational(w)); }
CyclicLoop loop_adjoint(const CyclicLoop& a) { return a.adjoint(); }

CyclicLoop lambda_mix(const CyclicLoop& a, const CyclicLoop& b) {
    int d = a.dim();
    CyclicLoop s = CyclicLoop::one(d) + a + b - a * b;
    return CyclicLoop(d, s.terms().map([](const QMat& x) { return Rational(1, 2) * x; }));
}

CyclicLoop mixer(const QMat& Qt, int sign) {
    int d = Qt.dim();
    return lambda_mix(CyclicLoop::z(d, sign), CyclicLoop::constant(Qt));
}

bool is_involution(const QMat& q) { return q * q == QMat::identity(q.dim()); }

std::string Generator::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Constant: os << "const"; break;
        case Monomial: os << "z^" << k << "*c"; break;
        case Mixer: os << "mixer(z^" << k << ")"; break;
        case Unipotent: os << "1+n (n^" << witness << "=0)"; break;
    }
    return os.str();
}

namespace {

LoopUnit generator_unit(int d, const Generator& g) {
    LoopUnit u;
    u.provenance.push_back(g.describe());
    switch (g.kind) {
        case Generator::Constant: {
            QMat ci;
            try {
                ci = g.c.inverse();
            } catch (const std::domain_error&) {
                throw NotInvertible("constant generator is singular");
            }
            u.forward = CyclicLoop::constant(g.c);
            u.inverse = CyclicLoop::constant(ci);
            break;
        }
        case Generator::Monomial: {
            QMat ci;
            try {
                ci = g.c.inverse();
            } catch (const std::domain_error&) {
                throw NotInvertible("monomial coefficient is singular");
            }
            u.forward = CyclicLoop::monomial(g.k, g.c);
            u.inverse = CyclicLoop::monomial(-g.k, ci);
            break;
        }
        case Generator::Mixer: {
            if (!is_involution(g.c)) throw BadInvolution("mixer coefficient is not an involution");
            int sign = g.k >= 0 ? 1 : -1;
            u.forward = mixer(g.c, sign);
            u.inverse = mixer(g.c, -sign);
            break;
        }
        case Generator::Unipotent: {
            if (g.witness < 1) throw NotInvertible("unipotent generator needs a nilpotency witness");
            CyclicLoop p = CyclicLoop::one(d);
            for (int i = 0; i < g.witness; ++i) p = p * g.n;
            if (!p.is_zero()) throw NotInvertible("nilpotency witness fails");
            u.forward = CyclicLoop::one(d) + g.n;
            CyclicLoop term = CyclicLoop::one(d), sum = CyclicLoop::one(d);
            for (int i = 1; i < g.witness; ++i) {
                term = term * (-g.n);
                sum = sum + term;
            }
            u.inverse = sum;
            break;
        }
    }
    return u;
}

}  // namespace

LoopUnit unit_builder(int d, const std::vector<Generator>& spec) {
    LoopUnit u{CyclicLoop::one(d), CyclicLoop::one(d), {}};
    for (const auto& g : spec) u = unit_mul(u, generator_unit(d, g));
    return u;
}

LoopUnit unit_mul(const LoopUnit& a, const LoopUnit& b) {
    LoopUnit r{a.forward * b.forward, b.inverse * a.inverse, a.provenance};
    r.provenance.insert(r.provenance.end(), b.provenance.begin(), b.provenance.end());
    return r;
}

LoopUnit unit_inverse(const LoopUnit& a) {
    LoopUnit r{a.inverse, a.forward, {"inverse"}};
    r.provenance.insert(r.provenance.end(), a.provenance.begin(), a.provenance.end());
    return r;
}

bool is_pointed(const LoopUnit& u) { return u.forward.eval(1) == QMat::identity(u.dim()); }

LoopUnit pointed(const LoopUnit& u) {
    QMat a1 = u.forward.eval(1), b1 = u.inverse.eval(1);
    LoopUnit r{u.forward.scaled_right(b1), CyclicLoop::constant(a1) * u.inverse, u.provenance};
    r.provenance.push_back("pointed");
    return r;
}

int FinitenessClass::M(int k) const {
    int s = 0;
    for (int j = 0; j < k; ++j) s += windows[j].m;
    return s;
}

int FinitenessClass::N(int k) const {
    int s = 0;
    for (int j = 0; j < k; ++j) s += windows[j].n;
    return s;
}

int LoopDecomposition::dim() const { return factors.empty() ? 1 : factors.front().dim(); }

LoopUnit LoopDecomposition::product() const {
    LoopUnit r{CyclicLoop::one(dim()), CyclicLoop::one(dim()), {}};
    for (const auto& f : factors) r = unit_mul(f, r);
    return r;
}

bool LoopDecomposition::windows_ok(std::string* why) const {
    if (cls.windows.size() != factors.size()) {
        if (why) *why = "class length differs from factor count";
        return false;
    }
    for (std::size_t j = 0; j < factors.size(); ++j) {
        const auto& w = cls.windows[j];
        if (w.m > 0 || w.n < 0) {
            if (why) *why = "window must contain 0";
            return false;
        }
        const CyclicLoop& l = w.tag == 'L' ? factors[j].forward : factors[j].inverse;
        int lo = w.tag == 'L' ? w.m : -w.n, hi = w.tag == 'L' ? w.n : -w.m;
        if (!l.is_zero() && (l.min_exp() < lo || l.max_exp() > hi)) {
            if (why) *why = "factor " + std::to_string(j + 1) + " leaves its window";
            return false;
        }
    }
    return true;
}

ClassWindow default_window(const LoopUnit& u) {
    return ClassWindow{std::min(0, u.forward.min_exp()), std::max(0, u.forward.max_exp()), 'L'};
}

LoopDecomposition make_decomposition(const std::vector<LoopUnit>& factors) {
    LoopDecomposition dec;
    dec.factors = factors;
    for (const auto& f : factors) dec.cls.windows.push_back(default_window(f));
    return dec;
}

long Sampler::integer(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng_() % span);
}

Rational Sampler::small_rational(int num_bound, int den_bound) {
    Rational r(integer(-num_bound, num_bound), integer(1, den_bound));
    r.canonicalize();
    return r;
}

QMat Sampler::matrix(int d, int num_bound) {
    QMat m = QMat::zero(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = small_rational(num_bound, 2);
    return m;
}

QMat Sampler::invertible(int d) {
    // unit lower times unit upper triangular, scaled by a nonzero diagonal
    QMat L = QMat::identity(d), U = QMat::identity(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) {
            L(i, j) = small_rational(2, 2);
            U(j, i) = small_rational(2, 2);
        }
    QMat D = QMat::identity(d);
    for (int i = 0; i < d; ++i) {
        Rational x = 0;
        while (x == 0) x = small_rational(3, 2);
        D(i, i) = x;
    }
    return L * D * U;
}

QMat Sampler::involution(int d) {
    QMat P = invertible(d);
    QMat D = QMat::identity(d);
    int flips = d == 1 ? static_cast<int>(integer(0, 1)) : static_cast<int>(integer(1, d - 1));
    for (int i = 0; i < flips; ++i) D(i, i) = -1;
    return P * D * P.inverse();
}

QMat Sampler::symmetric_involution(int d) {
    if (d == 1) return QMat::scalar(1, integer(0, 1) ? Rational(1) : Rational(-1));
    QMat u = QMat::zero(d);
    Rational nn = 0;
    while (nn == 0) {
        for (int i = 0; i < d; ++i) u(i, 0) = small_rational(2, 2);
        nn = 0;
        for (int i = 0; i < d; ++i) nn += u(i, 0) * u(i, 0);
    }
    QMat r = QMat::identity(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r(i, j) -= 2 * u(i, 0) * u(j, 0) / nn;
    return r;
}

QMat Sampler::orthogonal(int d) {
    QMat r = QMat::identity(d);
    int n = static_cast<int>(integer(0, 2));
    for (int i = 0; i < n; ++i) r = r * symmetric_involution(d);
    return r;
}

Generator Sampler::generator(int d, bool allow_unipotent) {
    Generator g;
    long pick = integer(0, allow_unipotent && d > 1 ? 4 : 3);
    switch (pick) {
        case 0:
            g.kind = Generator::Constant;
            g.c = invertible(d);
            break;
        case 1:
            g.kind = Generator::Monomial;
            g.k = static_cast<int>(integer(-1, 1));
            g.c = invertible(d);
            break;
        case 2:
        case 3:
            g.kind = Generator::Mixer;
            g.k = pick == 2 ? 1 : -1;
            g.c = involution(d);
            break;
        default: {
            // strictly upper triangular coefficients, spread over two exponents
            g.kind = Generator::Unipotent;
            QMat a = QMat::zero(d), b = QMat::zero(d);
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    a(i, j) = small_rational(2, 2);
                    b(i, j) = small_rational(2, 2);
                }
            int e = static_cast<int>(integer(-1, 1));
            g.n = CyclicLoop::monomial(e, a) + CyclicLoop::monomial(e + 1, b);
            g.witness = d;
            break;
        }
    }
    return g;
}

LoopUnit Sampler::unit(int d, int n_generators, bool pointed_result) {
    std::vector<Generator> gens;
    for (int i = 0; i < n_generators; ++i) gens.push_back(generator(d));
    LoopUnit u = unit_builder(d, gens);
    return pointed_result ? pointed(u) : u;
}

LoopUnit Sampler::unitary_unit(int d, int n_generators) {
    std::vector<Generator> gens;
    for (int i = 0; i < n_generators; ++i) {
        Generator g;
        switch (integer(0, 2)) {
            case 0:
                g.kind = Generator::Constant;
                g.c = orthogonal(d);
                break;
            case 1:
                g.kind = Generator::Monomial;
                g.k = static_cast<int>(integer(-1, 1));
                g.c = orthogonal(d);
                break;
            default:
                g.kind = Generator::Mixer;
                g.k = integer(0, 1) ? 1 : -1;
                g.c = symmetric_involution(d);
                break;
        }
        gens.push_back(g);
    }
    return unit_builder(d, gens);
}

LoopDecomposition Sampler::decomposition(int d, int s, int max_factor_gens) {
    std::vector<LoopUnit> fs;
    for (int j = 0; j < s; ++j) fs.push_back(unit(d, static_cast<int>(integer(1, max_factor_gens))));
    return make_decomposition(fs);
}

}  // namespace bott
