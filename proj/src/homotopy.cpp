#include "bott/homotopy.hpp"

namespace bott {

template <class K>
void key_lemma_checks(const Param<K>& p, const std::string& where, int window, RotVariant var, Report& rep) {
    const std::string suite = "artkey";
    const std::string inst = where + " window=" + std::to_string(window) + " variant=" + variant_name(var);
    bool poly_endpoint = var == RotVariant::Poly && (p.dplus || p.dminus);

    // left inverse: Y X = 1 (finite sums)
    bool ok = true;
    std::string why;
    for (long i = 0; i < window && ok; ++i)
        for (long j = 0; j < window && ok; ++j) {
            K acc(0);
            for (long k = 0; k <= std::max(i, j) + 1; ++k) acc += rot_right(p, var, i, k) * rot_left(p, var, k, j);
            if (acc != K(i == j ? 1 : 0)) {
                ok = false;
                why = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
        }
    rep.add(suite, "rotation left inverse: X'X = 1", inst, ok, why);

    // right product X Y via geometric tails
    ok = true;
    why.clear();
    for (long i = 0; i < window && ok; ++i)
        for (long j = 0; j < window && ok; ++j) {
            K want(i == j ? 1 : 0);
            if (i == 0 && j == 0 && var == RotVariant::Unitary) {
                if (p.dplus) want -= K(1);
                if (p.dminus) want -= K(1);
            }
            if (poly_endpoint && j == 0) want = i == 0 ? K(0) : K(-tpow(p, i));
            if (tail_entry(p, var, 0, i, j) != want) {
                ok = false;
                why = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
        }
    rep.add(suite,
            poly_endpoint ? "rotation right product at t=+-1: 1 - e00 - sum_i t^i e_i0 (poly)"
                          : "rotation right product: XX' = 1 - endpoint deltas",
            inst, ok, why);

    // conjugated matrix units against the displayed pattern
    ok = true;
    why.clear();
    for (long n = 0; n <= window && ok; ++n)
        for (long m = 0; m <= window && ok; ++m) {
            FinMap<K> F;
            fin_add(F, {n, m}, Entry<K>(Mat<K>::identity(1)));
            FinMap<K> G = conj_finite(F, p, var);
            for (long i = 0; i <= n + 2 && ok; ++i)
                for (long j = 0; j <= m + 2 && ok; ++j) {
                    auto it = G.find({i, j});
                    K got = it == G.end() ? K(0) : it->second.coeff(0)(0, 0);
                    K want = var == RotVariant::Unitary ? emn_display(p, n, m, i, j) : emn_display_poly(p, n, m, i, j);
                    if (got != want) {
                        ok = false;
                        why = "e_" + std::to_string(n) + "," + std::to_string(m) + " entry (" + std::to_string(i) +
                              "," + std::to_string(j) + ")";
                    }
                }
        }
    rep.add(suite, "conjugated matrix unit matches the displayed pattern", inst, ok, why);

    // conjugated shifts: closed form against tail summation
    if (poly_endpoint) return;
    ok = true;
    why.clear();
    for (long n = -window; n <= window && ok; ++n) {
        Op<K> cf = w_conj_closed(1, p, var, n);
        long L = window + std::labs(n) + 3;
        for (long i = 0; i < L && ok; ++i)
            for (long j = 0; j < L && ok; ++j) {
                K want = tail_entry(p, var, n, i, j);
                Entry<K> e = cf.at(i, j);
                K got = e.is_zero() ? K(0) : e.coeff(0)(0, 0);
                if (got != want) {
                    ok = false;
                    why = "n=" + std::to_string(n) + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            }
    }
    rep.add(suite, "conjugated shift W(z^n) matches its closed form", inst, ok, why);
}

template void key_lemma_checks<Rational>(const Param<Rational>&, const std::string&, int, RotVariant, Report&);
template void key_lemma_checks<CircleScalar>(const Param<CircleScalar>&, const std::string&, int, RotVariant, Report&);

Report key_lemma_suite(const CirclePoint& p, int window, RotVariant var) {
    Report r;
    if (p.symbolic) key_lemma_checks(param_symbolic(), p.str(), window, var, r);
    else key_lemma_checks(param(p), p.str(), window, var, r);
    return r;
}

Report key_lemma_symbolic(int window, RotVariant var) { return key_lemma_suite(CirclePoint::symbol(), window, var); }

}  // namespace bott
