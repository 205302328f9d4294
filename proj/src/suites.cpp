#include "bott/suites.hpp"

#include <algorithm>
#include <cstdio>

#include "bott/contract.hpp"
#include "bott/finite.hpp"
#include "bott/homotopy.hpp"
#include "bott/oracle.hpp"

namespace bott {

namespace {

using OpQ = Op<Rational>;
using OpC = Op<CircleScalar>;
using EQ = Entry<Rational>;
using EC = Entry<CircleScalar>;
using SymQ = Sym<Rational>;

const CirclePoint T0 = CirclePoint::at(0, 1);
const CirclePoint T1 = CirclePoint::at(1, 0);
const CirclePoint TM = CirclePoint::at(-1, 0);

std::string trial_name(int k, int d) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "trial %02d d=%d", k, d);
    return buf;
}

int dim_for(const SuiteConfig& cfg, int trial) { return 1 + trial % cfg.d; }

int window_or(const SuiteConfig& cfg, int fallback) { return cfg.window > 0 ? cfg.window : fallback; }

SymQ random_sym(Sampler& S, int d, int lo, int hi) {
    SymQ a;
    for (int k = lo; k <= hi; ++k)
        if (S.integer(0, 2)) a.add(k, EQ(S.matrix(d)));
    return a;
}

OpQ random_op(Sampler& S, int d) {
    OpQ A = OpQ::quadrant(d, random_sym(S, d, -2, 2), random_sym(S, d, -2, 2));
    int n = static_cast<int>(S.integer(0, 5));
    for (int k = 0; k < n; ++k) fin_add(A.fin, {S.integer(-4, 3), S.integer(-4, 3)}, EQ(S.matrix(d)));
    return A;
}

// Toeplitz part plus finite part on N.
OpQ random_N(Sampler& S, int d) {
    OpQ A = OpQ::toeplitz(d, random_sym(S, d, -2, 2));
    int n = static_cast<int>(S.integer(0, 4));
    for (int k = 0; k < n; ++k) fin_add(A.fin, {S.integer(0, 4), S.integer(0, 4)}, EQ(S.matrix(d)));
    return A;
}

template <class K>
Op<K> shifted_in(const Op<K>& A) {
    int d = A.d;
    Op<K> Wz = Op<K>::toeplitz(d, Sym<K>::monomial(1, Op<K>::one_entry(d)));
    Op<K> Wzi = Op<K>::toeplitz(d, Sym<K>::monomial(-1, Op<K>::one_entry(d)));
    return Wz * A * Wzi;
}

// sigma(+-v) e00
OpQ sigma_corner(const OpQ& A, int sign) {
    EQ e;
    for (const auto& [n, c] : A.pos.terms()) {
        EQ x = c.shifted(n);
        e = e + (sign < 0 && (n % 2) ? EQ(-x) : x);
    }
    return OpQ::unit_at(A.d, 0, 0, e);
}

std::vector<CirclePoint> with_endpoints(const SuiteConfig& cfg, bool minus = true) {
    std::vector<CirclePoint> r{T0, T1};
    if (minus) r.push_back(TM);
    for (const auto& p : interior_points(cfg)) r.push_back(p);
    return r;
}

// Rows on a dense window: first index where the two disagree.
template <class F>
std::string first_mismatch(long lo, long hi, F same) {
    for (long i = lo; i < hi; ++i)
        for (long j = lo; j < hi; ++j)
            if (!same(i, j)) return "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
    return "";
}

QMat block_of(const QMat& M, int bi, int bj, int d, bool minus_one) {
    QMat x = QMat::zero(d);
    for (int u = 0; u < d; ++u)
        for (int w = 0; w < d; ++w) x(u, w) = M(bi * d + u, bj * d + w) - (minus_one && bi == bj && u == w ? 1 : 0);
    return x;
}

Rational entry_norm(const EQ& e) {
    Rational r = 0;
    for (const auto& [k, c] : e.terms()) r = std::max(r, max_norm(c));
    return r;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids{"artkey", "stabilize", "bott", "linearize", "toeplitz",
                                              "contract", "finite", "oracle-equiv", "all"};
    return ids;
}

void validate(const SuiteConfig& cfg) {
    const auto& ids = suite_ids();
    if (std::find(ids.begin(), ids.end(), cfg.suite) == ids.end()) throw ConfigError("unknown suite " + cfg.suite);
    if (cfg.d < 1 || cfg.d > 3) throw ConfigError("--d must be 1, 2 or 3");
    if (cfg.window < 0 || cfg.window > 64) throw ConfigError("--window must be in 1..64");
    if (cfg.points < 1 || cfg.points > 12) throw ConfigError("--points must be in 1..12");
    if (cfg.s < 1 || cfg.s > 4) throw ConfigError("--s must be in 1..4");
    if (cfg.instances < 1 || cfg.instances > 200) throw ConfigError("instances must be in 1..200");
    for (const auto& p : cfg.explicit_points)
        if (p.symbolic) throw ConfigError("explicit points must be rational");
}

json config_json(const SuiteConfig& cfg) {
    json pts = json::array();
    for (const auto& p : cfg.explicit_points) pts.push_back(p.str());
    return json{{"suite", cfg.suite},   {"seed", cfg.seed}, {"d", cfg.d},
                {"window", cfg.window}, {"points", cfg.points}, {"explicit_points", pts},
                {"s", cfg.s},           {"instances", cfg.instances}, {"variant", variant_name(cfg.variant)}};
}

std::vector<CirclePoint> interior_points(const SuiteConfig& cfg) {
    if (!cfg.explicit_points.empty()) return cfg.explicit_points;
    std::vector<CirclePoint> r;
    for (const auto& p : pythagorean_grid(cfg.points + 1))
        if (!(p == T0) && !(p == T1)) r.push_back(p);
    return r;
}

// ---- rotation identities ----

Report suite_artkey(const SuiteConfig& cfg) {
    Report R;
    int w = window_or(cfg, 8);
    bool poly = cfg.variant == RotVariant::Poly;
    R.append(key_lemma_symbolic(std::min(w, 6), cfg.variant));
    std::vector<CirclePoint> pts{T0};
    if (!poly) {
        pts.push_back(T1);
        pts.push_back(TM);
    }
    for (const auto& p : interior_points(cfg)) pts.push_back(p);
    for (const auto& p : pts) R.append(key_lemma_suite(p, w, cfg.variant));
    return R;
}

// ---- stabilizing conjugation ----

Report suite_stabilize(const SuiteConfig& cfg) {
    Report R;
    const std::string suite = "stabilize";
    const RotVariant var = cfg.variant;
    const bool poly = var == RotVariant::Poly;
    const std::string vn = std::string(" variant=") + variant_name(var);
    Sampler S(cfg.seed ^ 0x5ab1);
    std::vector<CirclePoint> pts = interior_points(cfg);
    for (int trial = 0; trial < cfg.instances; ++trial) {
        int d = dim_for(cfg, trial);
        std::string inst = trial_name(trial, d) + vn;
        OpQ A = random_N(S, d), B = random_N(S, d);
        R.add(suite, "T_K at t=0 is the identity map", inst, rot_conjugate(A, param(T0), var) == A);
        if (!poly) {
            OpQ want = shifted_in(A);
            R.add(suite, "T_K at t=1 is A -> W(z) A W(z^-1)", inst, rot_conjugate(A, param(T1), var) == want);
            R.add(suite, "T_K at t=-1 is A -> W(z) A W(z^-1)", inst, rot_conjugate(A, param(TM), var) == want);
            R.add(suite, "T_K respects adjoints: T_K(A)^dag = T_K(A^dag)", inst,
                  rot_conjugate(A, param(pts[trial % pts.size()]), var).adjoint() ==
                      rot_conjugate(A.adjoint(), param(pts[trial % pts.size()]), var));
        }
        bool mult = true;
        for (const auto& p : pts) {
            auto q = param(p);
            mult = mult && rot_conjugate(OpQ(A * B), q, var) == rot_conjugate(A, q, var) * rot_conjugate(B, q, var);
        }
        R.add(suite, "T_K is an endomorphism: T_K(AB) = T_K(A) T_K(B)", inst + " at interior points", mult);
    }
    // symbolic angle
    auto ps = param_symbolic();
    for (int trial = 0; trial < 4; ++trial) {
        std::string inst = trial_name(trial, 1) + " symbolic" + vn;
        OpC A = lift_op<CircleScalar>(random_N(S, 1)), B = lift_op<CircleScalar>(random_N(S, 1));
        OpC TA = rot_conjugate(A, ps, var);
        R.add(suite, "T_K is an endomorphism: T_K(AB) = T_K(A) T_K(B)", inst,
              rot_conjugate(OpC(A * B), ps, var) == TA * rot_conjugate(B, ps, var));
        std::string why = first_mismatch(0, 8, [&](long i, long j) { return unconjugate_entry(TA, ps, var, i, j) == A.at(i, j); });
        R.add(suite, "recovery A = C^dag T_K(A) C", inst + " window 8", why.empty(), why);
    }
    if (!poly) {
        OpC e = OpC::unit_at(1, 0, 0, OpC::one_entry(1));
        OpC T = rot_conjugate(e, ps);
        CircleScalar t = CircleScalar::t(), s = CircleScalar::s();
        bool ok = T.at(0, 0) == EC(Mat<CircleScalar>::scalar(1, s * s)) &&
                  T.at(0, 1) == EC(Mat<CircleScalar>::scalar(1, -(t * s))) &&
                  T.at(1, 0) == EC(Mat<CircleScalar>::scalar(1, -(t * s))) &&
                  T.at(1, 1) == EC(Mat<CircleScalar>::scalar(1, t * t)) && T.fin.size() == 4;
        R.add(suite, "T_K(e00) = [[s^2, -ts], [-ts, t^2]]", "symbolic", ok);

        // N x N: conjugation on the outer index
        using M = NNMat<Rational>;
        for (int trial = 0; trial < cfg.instances; ++trial) {
            int d = dim_for(cfg, trial);
            M A;
            for (int k = 0; k < 4; ++k)
                A[{{S.integer(0, 3), S.integer(0, 3)}, {S.integer(0, 3), S.integer(0, 3)}}] = EQ(S.matrix(d));
            for (auto it = A.begin(); it != A.end();) it = it->second.is_zero() ? A.erase(it) : std::next(it);
            std::string inst = trial_name(trial, d);
            R.add(suite, "N x N stabilization at t=1 is the outer shift", inst, stabilize(A, param(T1)) == relabel(A, shift_outer()));
            R.add(suite, "N x N stabilization at t=0 is the identity", inst, stabilize(A, param(T0)) == A);
        }
        M bad{{{{-1, 0}, {0, 0}}, OpQ::one_entry(1)}};
        bool threw = false;
        try {
            stabilize(bad, param(T1));
        } catch (const BadPartition&) {
            threw = true;
        }
        R.add(suite, "indices outside N x N are rejected", "single entry at (-1,0)", threw);
    }
    return R;
}

// ---- Bott involution ----

Report suite_bott(const SuiteConfig& cfg) {
    Report R;
    const std::string suite = "bott";
    LoopUnit z = unit_builder(1, {Generator{Generator::Monomial, QMat::identity(1), 1, CyclicLoop(1), 0}});
    OpQ Bz = bott_involution(z);
    R.add(suite, "B(z) = Q - 2 e00", "d=1", Bz == OpQ::Q(1) - OpQ::unit_at(1, 0, 0, entry_scalar<Rational>(1, 2)));
    R.add(suite, "B(1) = Q", "d=1", bott_involution(unit_builder(1, {})) == OpQ::Q(1));
    Sampler S(cfg.seed ^ 0xb077);
    for (int trial = 0; trial < cfg.instances; ++trial) {
        int d = dim_for(cfg, trial);
        std::string inst = trial_name(trial, d);
        QMat Qt = S.involution(d);
        LoopUnit mx = unit_builder(d, {Generator{Generator::Mixer, Qt, 1, CyclicLoop(d), 0}});
        OpQ want = OpQ::Q(d);
        fin_add(want.fin, {0, 0}, EQ(Qt - QMat::identity(d)));
        R.add(suite, "B(Lambda(z,Qt)) = Q + (Qt - 1) e00", inst, bott_involution(mx) == want);

        LoopUnit a = S.unit(d, 3);
        OpQ B = bott_involution(a);
        R.add(suite, "B(a)^2 = 1", inst, B * B == OpQ::identity(d));
        QMat c = S.invertible(d);
        LoopUnit ac{a.forward.scaled_right(c), CyclicLoop::constant(c.inverse()) * a.inverse, {}};
        R.add(suite, "B(ac) = B(a) for constant c", inst, bott_involution(ac) == B);
        R.add(suite, "bott_invert(B(a)) = a a(1)^-1", inst, bott_invert(B) == pointed(a).forward);
        R.add(suite, "bott_invert(B(a), z1=1) = a(1) a^-1", inst,
              bott_invert(B, InvertMode::Z2) == CyclicLoop::constant(a.forward.eval(1)) * a.inverse);
    }
    return R;
}

// ---- linearization ----

Report suite_linearize(const SuiteConfig& cfg) {
    Report R;
    const std::string suite = "linearize";
    const RotVariant var = cfg.variant;
    const bool poly = var == RotVariant::Poly;
    const std::string vn = std::string(" variant=") + variant_name(var);
    int w = window_or(cfg, 12);
    Sampler S(cfg.seed ^ 0x11ea);
    std::vector<CirclePoint> pts = interior_points(cfg);

    for (int trial = 0; trial < cfg.instances; ++trial) {
        int d = dim_for(cfg, trial);
        std::string inst = trial_name(trial, d) + vn;
        LoopUnit a = S.unit(d, 3), b = S.unit(d, 2);
        R.add(suite, "U(a,0,v) = U(a)", inst, linearize_u(a.forward, param(T0), var) == OpQ::laurent(a.forward));
        bool mult = true;
        for (const auto& p : pts) {
            auto q = param(p);
            mult = mult && linearize_u(a.forward * b.forward, q, var) == linearize_u(a.forward, q, var) * linearize_u(b.forward, q, var);
        }
        if (!poly) {
            auto q = param(T1);
            mult = mult && linearize_u(a.forward * b.forward, q) == linearize_u(a.forward, q) * linearize_u(b.forward, q);
        }
        R.add(suite, "U(ab,theta,v) = U(a,theta,v) U(b,theta,v)", inst + (poly ? " interior points" : " interior points and pi/2"), mult);
        R.add(suite, "K(a,0,v) = Lambda(v,Q)^-1 Lambda(v,B(a))", inst, linearize_k(a, param(T0), var) == k_start<Rational>(a));
        bool pointed_ok = true, inv_ok = true;
        for (const auto& p : pts) {
            OpQ Kp = linearize_k(a, param(p), var);
            pointed_ok = pointed_ok && Kp.subst_v(1) == OpQ::identity(d);
            inv_ok = inv_ok && Kp * linearize_k_inverse(a, param(p), var) == OpQ::identity(d);
        }
        R.add(suite, "K(a,theta,1) = 1", inst + " interior points", pointed_ok);
        R.add(suite, "K(a,theta,v) inverse is two-sided", inst + " interior points", inv_ok);
        if (!poly) {
            OpQ end = linearize_u(a.forward, param(T1));
            Sym<Rational> sa = lift_loop<Rational>(a.forward);
            std::string why = first_mismatch(-w, w, [&](long i, long j) { return end.at(i, j) == u_end_display(sa, i, j); });
            R.add(suite, "U(a,pi/2,v) matches the displayed pattern", inst + " window " + std::to_string(w), why.empty(), why);
            R.add(suite, "K(a,pi/2,v) = E_Z(a(v) a(1)^-1)", inst, linearize_k(a, param(T1)) == k_end<Rational>(a));
            // direct summation of the rotation entries
            bool ok = true;
            std::string where;
            for (const auto& p : with_endpoints(cfg)) {
                auto q = param(p);
                OpQ U = linearize_u(a.forward, q);
                std::string m = first_mismatch(-w, w, [&](long i, long j) {
                    return U.at(i, j) == linearize_u_entry_oracle(sa, q, RotVariant::Unitary, i, j);
                });
                if (!m.empty() && ok) where = p.str() + " " + m;
                ok = ok && m.empty();
            }
            R.add(suite, "U(a,theta,v) agrees with direct summation", inst + " window " + std::to_string(w), ok, where);
            R.add(suite, "reflection: U(a,theta,v) reflected = U(a(z^-1),theta,v^-1)", inst,
                  linearize_u(a.forward, param(pts[0])).reflect() == v_reversed(linearize_u(a.forward.reversed(), param(pts[0]))));
        }
    }
    for (int trial = 0; trial < cfg.instances; ++trial) {
        int d = dim_for(cfg, trial);
        std::string inst = trial_name(trial, d) + vn;
        QMat Qt = S.involution(d);
        LoopUnit mx = unit_builder(d, {Generator{Generator::Mixer, Qt, 1, CyclicLoop(d), 0}});
        OpQ want = OpQ::corner(d, loop_entry<Rational>(mx.forward));
        bool ok = true;
        std::vector<CirclePoint> grid = poly ? std::vector<CirclePoint>{T0} : with_endpoints(cfg);
        if (poly)
            for (const auto& p : pts) grid.push_back(p);
        for (const auto& p : grid) ok = ok && linearize_k(mx, param(p), var) == want;
        R.add(suite, "K(Lambda(z,Qt),theta,v) = E_Z(Lambda(v,Qt)) at every grid point", inst, ok);
    }
    // symbolic multiplicativity
    auto ps = param_symbolic();
    for (int trial = 0; trial < 3; ++trial) {
        std::string inst = trial_name(trial, 1) + " symbolic" + vn;
        LoopUnit a = S.unit(1, 2), b = S.unit(1, 2);
        OpC U = linearize_u(a.forward, ps, var);
        R.add(suite, "U(ab,theta,v) = U(a,theta,v) U(b,theta,v)", inst,
              linearize_u(a.forward * b.forward, ps, var) == U * linearize_u(b.forward, ps, var));
        if (poly) {
            bool pol = true;
            for (const auto& [ij, e] : U.fin)
                for (const auto& [k, c] : e.terms()) pol = pol && c(0, 0).is_polynomial_in_t();
            R.add(suite, "poly variant entries are polynomials in t", inst, pol);
        }
    }
    if (!poly) {
        // unitarity with the transpose structure
        for (int trial = 0; trial < cfg.instances; ++trial) {
            int d = dim_for(cfg, trial);
            std::string inst = trial_name(trial, d) + " unitary loop";
            LoopUnit a = S.unitary_unit(d, 3);
            bool ok = a.forward.adjoint() == a.inverse;
            for (const auto& p : with_endpoints(cfg)) {
                auto q = param(p);
                ok = ok && linearize_u(a.forward, q).adjoint() == linearize_u(a.inverse, q);
                ok = ok && linearize_k(a, q).adjoint() == linearize_k_inverse(a, q);
            }
            R.add(suite, "unitarity: U(a,theta,v) and K(a,theta,v) satisfy X^dag = X^-1", inst, ok);
            OpQ B = bott_involution(a);
            R.add(suite, "unitarity: B(a) is self-adjoint", inst, B.adjoint() == B);
        }
    }
    LoopUnit z = unit_builder(1, {Generator{Generator::Monomial, QMat::identity(1), 1, CyclicLoop(1), 0}});
    if (!poly) R.add(suite, "K(z,pi/2,v) = E_Z(v)", "d=1", linearize_k(z, param(T1)) == OpQ::corner(1, entry_v<Rational>(1)));
    bool triv = true;
    for (const auto& p : with_endpoints(cfg)) triv = triv && linearize_u(CyclicLoop::one(2), param(p)) == OpQ::identity(2);
    R.add(suite, "U(1,theta,v) = 1", "d=2", triv);
    return R;
}

// ---- Toeplitz calculus ----

Report suite_toeplitz(const SuiteConfig& cfg) {
    Report R;
    const std::string suite = "toeplitz";
    int w = window_or(cfg, 16);
    Sampler S(cfg.seed ^ 0x7e0b);
    std::vector<CirclePoint> pts = interior_points(cfg);
    auto ps = param_symbolic();
    for (int trial = 0; trial < cfg.instances; ++trial) {
        int d = dim_for(cfg, trial);
        std::string inst = trial_name(trial, d);
        OpQ A = random_N(S, d), B = random_N(S, d);
        ToeplitzElement<Rational> ta = ToeplitzElement<Rational>::from_op(A), tb = ToeplitzElement<Rational>::from_op(B);
        ToeplitzElement<Rational> tc = toeplitz_mul(ta, tb);
        auto W = dense_mul(DenseWindow<Rational>::truncate(A, 0, 2 * w), DenseWindow<Rational>::truncate(B, 0, 2 * w));
        // rows and columns near 0 are exact: the operators live on N
        bool ok = true;
        std::string where;
        for (long i = 0; i < W.safe_hi() && ok; ++i)
            for (long j = 0; j < W.safe_hi() && ok; ++j)
                if (!(W.at(i, j) == tc.at(i, j))) {
                    ok = false;
                    where = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
        R.add(suite, "anomalous product rule agrees with the dense product", inst + " window [0," + std::to_string(2 * w) + ")", ok, where);
        R.add(suite, "sigma is multiplicative", inst, symbol_of(tc) == ta.symbol * tb.symbol && tc.as_op() == A * B);

        R.add(suite, "T(A,0) = A", inst, toeplitz_homotopy(A, param(T0)) == A);
        R.add(suite, "T(A,pi/2) = sigma(v) e00 + W(z) A W(z^-1)", inst, toeplitz_homotopy(A, param(T1)) == sigma_corner(A, 1) + shifted_in(A));
        R.add(suite, "T(A,-pi/2) = sigma(-v) e00 + W(z) A W(z^-1)", inst, toeplitz_homotopy(A, param(TM)) == sigma_corner(A, -1) + shifted_in(A));
        bool inv = true, mult = true;
        for (const auto& p : pts) {
            OpQ t = toeplitz_homotopy(A, param(p));
            inv = inv && t.pos == A.pos && t.on_N();
            mult = mult && toeplitz_homotopy(OpQ(A * B), param(p)) == t * toeplitz_homotopy(B, param(p));
        }
        R.add(suite, "T(A,theta) keeps the symbol of A", inst + " interior points", inv);
        R.add(suite, "T(AB,theta) = T(A,theta) T(B,theta)", inst + " interior points", mult);
        if (trial < 4) {
            OpC Ac = lift_op<CircleScalar>(A), Bc = lift_op<CircleScalar>(B);
            R.add(suite, "T(AB,theta) = T(A,theta) T(B,theta)", inst + " symbolic",
                  toeplitz_homotopy(OpC(Ac * Bc), ps) == toeplitz_homotopy(Ac, ps) * toeplitz_homotopy(Bc, ps));
        }

        LoopUnit a = S.unit(d, 3);
        ToeplitzUnit U = trial % 5 == 4 ? toeplitz_corner(S.invertible(2)) : toeplitz_lift(a);
        int du = U.fwd.d;
        std::string ui = inst + (trial % 5 == 4 ? " corner unit" : " lifted unit");
        OpQ I = OpQ::identity_N(du);
        R.add(suite, "Z(A,0) = 1", ui, symbol_killer<Rational>(U, param(T0)) == I);
        R.add(suite, "Z(A,pi/2) = E(sigma(v) sigma(1)^-1)", ui, symbol_killer<Rational>(U, param(T1)) == symbol_killer_end<Rational>(U, 1));
        R.add(suite, "Z(A,-pi/2) = E(sigma(-v) sigma(-1)^-1)", ui, symbol_killer<Rational>(U, param(TM)) == symbol_killer_end<Rational>(U, -1));
        bool zin = true;
        for (const auto& p : pts) {
            OpQ z = symbol_killer<Rational>(U, param(p));
            zin = zin && z.pos == Sym<Rational>(OpQ::one_entry(du)) && z.subst_v(Rational(1)) == I;
        }
        R.add(suite, "Z(A,theta) has symbol 1 and is pointed", ui + " interior points", zin);
    }
    return R;
}

// ---- contractibility ----

Report suite_contract(const SuiteConfig& cfg) {
    Report R;
    const std::string suite = "contract";
    int w = window_or(cfg, 12);
    Sampler S(cfg.seed ^ 0xc047);
    std::vector<CirclePoint> pts = interior_points(cfg);
    int units = std::max(10, cfg.instances);
    for (int trial = 0; trial < units; ++trial) {
        int d = dim_for(cfg, trial);
        std::string inst = trial_name(trial, d);
        LoopUnit a = S.unit(d, 3);
        ToeplitzUnit A = toeplitz_lift(a);
        OpQ I = OpQ::identity_N(2 * d);
        R.add(suite, "Toeplitz lift is a unit with symbol a + a^-1", inst,
              A.fwd * A.inv == I && A.inv * A.fwd == I && A.fwd.pos == lift_loop<Rational>(A.symbol.forward));
        SectionResult r = symbol_section(a);
        R.add(suite, "section symbol is E_Z(a(z)) times the mixed symbol", inst,
              r.block_diagonal && r.split >= -1 && r.product.pos == r.want_symbol);
        long cmp = 0;
        bool win = window_product_check<OpQ>({&r.inflated, &r.mixer, &r.laurent}, r.product, -w, w, &cmp);
        R.add(suite, "section product agrees on nested windows", inst + " window [-" + std::to_string(w) + "," + std::to_string(w) + ")",
              win && cmp >= 100, std::to_string(cmp) + " entries");
    }
    for (int trial = 0; trial < cfg.instances; ++trial) {
        std::string inst = trial_name(trial, 1);
        LoopUnit a = S.unit(1, 2);
        StepB<Rational> b0 = contract_step_b(a, param(T0));
        R.add(suite, "step (b) symbol at 0 is diag(1, Lambda(z^-1,Q) U(a) Lambda(z,Q) U(a)^-1)", inst,
              b0.symbol == step_b_symbol_start<Rational>(a) && b0.value.pos == b0.symbol);
        R.add(suite, "step (b) symbol at pi/2 is 1", inst,
              contract_step_b(a, param(T1)).symbol == Laurent<Op2<Rational>>(Op2<Rational>::identity(2)));
        StepB<Rational> bm = contract_step_b(a, param(pts[trial % pts.size()]));
        R.add(suite, "step (b) path consists of units", inst,
              bm.S * bm.Sinv == Op2<Rational>::identity(2) &&
                  bm.value * bm.inverse == GOp<Op2<Rational>>::identity_N(Op2<Rational>::identity(2)));
    }
    for (int trial = 0; trial < cfg.instances; ++trial) {
        int d = dim_for(cfg, trial);
        std::string inst = trial_name(trial, d);
        QMat M = S.invertible(2 * d), Mi = M.inverse();
        FinMap<Rational> F, G;
        for (int bi = 0; bi < 2; ++bi)
            for (int bj = 0; bj < 2; ++bj) {
                fin_add(F, {bi, bj}, EQ(block_of(M, bi, bj, d, true)));
                fin_add(G, {bi, bj}, EQ(block_of(Mi, bi, bj, d, true)));
            }
        OpQ one = OpQ::identity(d);
        StepC<Rational> c0 = contract_step_c(F, G, d, param(T0));
        GOp<OpQ> E = GOp<OpQ>::identity_N(one);
        gfin_add(E.fin, {0, 0}, OpQ(c0.k - one));
        R.add(suite, "step (c) at 0 is E(k)", inst, c0.value == E);
        R.add(suite, "step (c) at pi/2 is 1", inst, contract_step_c(F, G, d, param(T1)).value == GOp<OpQ>::identity_N(one));
        StepC<Rational> cm = contract_step_c(F, G, d, param(pts[trial % pts.size()]));
        R.add(suite, "step (c) path consists of units", inst, cm.k * cm.kinv == one && cm.value * cm.inverse == GOp<OpQ>::identity_N(one));
    }
    for (int trial = 0; trial < cfg.instances; ++trial) {
        int d = 2 + trial % 2;
        std::string inst = trial_name(trial, d);
        QMat Q = S.involution(d), one = QMat::identity(d);
        QMat k1 = S.matrix(d), k2 = S.matrix(d);
        GOp<QMat> L1 = l_op(Q, k1, one);
        auto lam = [&](int sgn) {
            Laurent<QMat> x;
            x.add(0, half(QMat(one + Q)));
            x.add(sgn, half(QMat(one - Q)));
            return GOp<QMat>::quadrant(Laurent<QMat>(), x);
        };
        GOp<QMat> Wk = GOp<QMat>::quadrant(Laurent<QMat>(), Laurent<QMat>(k1));
        R.add(suite, "L(Q,k) = W(Lambda(z,Q)) k W(Lambda(z^-1,Q))", inst, L1 == lam(1) * Wk * lam(-1));
        R.add(suite, "L(Q,k1 k2) = L(Q,k1) L(Q,k2)", inst, l_op(Q, QMat(k1 * k2), one) == L1 * l_op(Q, k2, one));
        LoopUnit a = S.unit(1, 2), b = S.unit(1, 2);
        OpQ ka = OpQ::laurent(a.forward), kb = OpQ::laurent(b.forward);
        R.add(suite, "inflated L is multiplicative on Laurent units", trial_name(trial, 1),
              l_inflate(OpQ(ka * kb)) == l_inflate(ka) * l_inflate(kb) &&
                  l_inflate(ka) * l_inflate(OpQ::laurent(a.inverse)) == GOp<OpQ>::identity(OpQ::identity(1)));
    }
    return R;
}

// ---- finite linearization ----

Report suite_finite(const SuiteConfig& cfg) {
    Report R;
    Sampler S(cfg.seed ^ 0xf171);
    std::vector<CirclePoint> pts = with_endpoints(cfg, false);
    int want = std::max(10, cfg.instances);
    int cut = 0, plain = 0, quota_cut = (want * 2 + 2) / 3;
    int made = 0;
    for (int rep = 0; rep < 40 * want && made < want; ++rep) {
        int d = dim_for(cfg, rep);
        int s = 1 + rep % cfg.s;
        LoopDecomposition dec = S.decomposition(d, s, 2);
        auto T = tower(dec, param(CirclePoint::at(Rational(3, 5), Rational(4, 5))));
        bool reduces = false;
        for (std::size_t k = 0; k < T.Hhat.size(); ++k) reduces = reduces || T.Hhat[k] != T.H[k];
        // most instances exercise a nontrivial reduction
        if (reduces ? cut >= quota_cut : plain >= want - quota_cut) continue;
        (reduces ? cut : plain)++;
        ++made;
        if (made % 2 == 0)
            for (int j = 0; j < dec.size(); j += 2) {
                const auto& f = dec.factors[j];
                dec.cls.windows[j] = ClassWindow{std::min(0, -f.inverse.max_exp()), std::max(0, -f.inverse.min_exp()), 'R'};
            }
        std::string tag = "decomposition " + std::to_string(made) + (reduces ? " reducing" : " plain");
        auto relabel_rows = [&](Report r) {
            for (auto& row : r.rows) row.instance = tag + " " + row.instance;
            return r;
        };
        R.append(relabel_rows(finite_static_checks(dec)));
        for (const auto& p : pts) R.append(relabel_rows(finite_checks(dec, p)));
    }
    R.add("finite", "random decompositions with nontrivial reduction", std::to_string(made) + " decompositions",
          made == want && cut >= 1, std::to_string(cut) + " reducing");
    return R;
}

// ---- dense oracle equivalence ----

Report suite_oracle_equiv(const SuiteConfig& cfg) {
    Report R;
    const std::string suite = "oracle-equiv";
    int w = std::max(16, window_or(cfg, 16));
    Sampler S(cfg.seed ^ 0x0acc);
    for (int trial = 0; trial < cfg.instances; ++trial) {
        int d = dim_for(cfg, trial);
        std::string inst = trial_name(trial, d);
        OpQ A = random_op(S, d), B = random_op(S, d);
        OpQ C = A * B;
        auto Ws = dense_mul(DenseWindow<Rational>::truncate(A, -w, w), DenseWindow<Rational>::truncate(B, -w, w));
        std::string where;
        R.add(suite, "operator product agrees with the dense product on the safe window", inst, agrees_on_safe(Ws, C, &where), where);
        auto Wb = dense_mul(DenseWindow<Rational>::truncate(A, -w - 8, w + 8), DenseWindow<Rational>::truncate(B, -w - 8, w + 8));
        bool same = true;
        for (long i = Ws.safe_lo(); i < Ws.safe_hi(); ++i)
            for (long j = Ws.safe_lo(); j < Ws.safe_hi(); ++j) same = same && Ws.at(i, j) == Wb.at(i, j);
        R.add(suite, "enlarging the window keeps the safe region", inst, same);
        R.add(suite, "operator sum agrees with the dense sum", inst,
              first_mismatch(-w, w, [&](long i, long j) { return (A + B).at(i, j) == A.at(i, j) + B.at(i, j); }).empty());

        // K(a,theta,v) against the dense product of its four factors
        LoopUnit a = S.unit(d, 2);
        auto q = param(interior_points(cfg)[trial % interior_points(cfg).size()]);
        OpQ L = OpQ::lambda_Q(d, entry_v<Rational>(d, 1)), Li = OpQ::lambda_Q(d, entry_v<Rational>(d, -1));
        OpQ U = linearize_u(a.forward, q), U1i = linearize_u(a.inverse, q).subst_v(1);
        auto trunc = [&](const OpQ& X) { return DenseWindow<Rational>::truncate(X, -w, w); };
        auto Wk = dense_mul(dense_mul(dense_mul(trunc(Li), trunc(U)), trunc(L)), trunc(U1i));
        R.add(suite, "K(a,theta,v) agrees with the dense product of its factors", inst, agrees_on_safe(Wk, linearize_k(a, q), &where), where);
        OpQ Bs = bott_involution(a);
        auto Wbott = dense_mul(dense_mul(trunc(OpQ::laurent(a.forward)), trunc(OpQ::Q(d))), trunc(OpQ::laurent(a.inverse)));
        R.add(suite, "B(a) agrees with the dense product U(a) Q U(a)^-1", inst, agrees_on_safe(Wbott, Bs, &where), where);

        ToeplitzElement<Rational> ta{d, random_sym(S, d, -2, 2), {}}, tb{d, random_sym(S, d, -2, 2), {}};
        fin_add(ta.finite, {S.integer(0, 3), S.integer(0, 3)}, EQ(S.matrix(d)));
        auto tc = toeplitz_mul(ta, tb);
        auto Wt = dense_mul(DenseWindow<Rational>::truncate(ta.as_op(), 0, 2 * w), DenseWindow<Rational>::truncate(tb.as_op(), 0, 2 * w));
        bool tok = true;
        for (long i = 0; i < Wt.safe_hi(); ++i)
            for (long j = 0; j < Wt.safe_hi(); ++j) tok = tok && Wt.at(i, j) == tc.at(i, j);
        R.add(suite, "Toeplitz product agrees with the dense product", inst, tok);
    }

    // geometric series
    CyclicLoop g = CyclicLoop::one(1) - CyclicLoop::monomial(1, QMat::scalar(1, Rational(1, 2)));
    auto gi = truncated_loop_inverse(g, 4);
    CyclicLoop want(1);
    for (int k = 0; k <= 4; ++k) want = want + CyclicLoop::monomial(k, QMat::scalar(1, Rational(1, 1 << k)));
    R.add(suite, "truncated inverse of 1 - z/2 is the geometric series", "order 4",
          gi.series == want && gi.certified && gi.residual.min_exp() > 4);

    // K endpoints for factors whose inverse is not a Laurent polynomial
    const Rational tol(1, 1 << 20);
    const int order = 24, win = 32;
    for (int trial = 0; trial < cfg.instances; ++trial) {
        int d = dim_for(cfg, trial);
        std::string inst = trial_name(trial, d) + " order 24 window 32";
        QMat c0 = S.invertible(d);
        QMat c1 = S.matrix(d, 1);
        while (c1.is_zero()) c1 = S.matrix(d, 1);
        // sample-norm ratio at most 1/2
        Rational scale = 2 * d * d * (max_norm(c0.inverse()) * max_norm(c1) + 1);
        Rational inv_scale = 1 / scale;
        CyclicLoop a = CyclicLoop::constant(c0) + CyclicLoop::monomial(1, QMat(inv_scale * c1));
        auto t = truncated_loop_inverse(a, order);
        LoopUnit u{a, t.series, {}};
        auto res_norm = [&](const OpQ& D) {
            Rational r = 0;
            for (long i = -win / 2; i < win / 2; ++i)
                for (long j = -win / 2; j < win / 2; ++j) r = std::max(r, entry_norm(D.at(i, j)));
            return r;
        };
        OpQ Ua = OpQ::laurent(a);
        OpQ Lv = OpQ::lambda_Q(d, entry_v<Rational>(d, 1));
        OpQ K0 = linearize_k(u, param(T0));
        Rational r0 = res_norm(Lv * K0 * Ua - Ua * Lv);
        OpQ K1 = linearize_k(u, param(T1));
        Rational r1 = res_norm(K1 - k_end<Rational>(u));
        char buf[96];
        std::snprintf(buf, sizeof buf, "residuals %.3g, %.3g; tail bound %.3g", r0.get_d(), r1.get_d(), t.tail_bound.get_d());
        R.add(suite, "K endpoints for an L-only factor within 2^-20", inst, t.certified && r0 < tol && r1 < tol, buf);
    }
    return R;
}

Report run_suite(const SuiteConfig& cfg) {
    validate(cfg);
    Report R;
    const std::string& id = cfg.suite;
    bool all = id == "all";
    if (all || id == "artkey") R.append(suite_artkey(cfg));
    if (all || id == "stabilize") R.append(suite_stabilize(cfg));
    if (all || id == "bott") R.append(suite_bott(cfg));
    if (all || id == "linearize") R.append(suite_linearize(cfg));
    if (all || id == "toeplitz") R.append(suite_toeplitz(cfg));
    if (all || id == "contract") R.append(suite_contract(cfg));
    if (all || id == "finite") R.append(suite_finite(cfg));
    if (all || id == "oracle-equiv") R.append(suite_oracle_equiv(cfg));
    sort_rows(R);
    return R;
}

}  // namespace bott
