#pragma once
// Template definitions for Op<K>; included by the explicit instantiation unit.

#include <algorithm>
#include <sstream>

#include "bott/op.hpp"

namespace bott {

template <class K>
Op<K> Op<K>::laurent(int d, const Sym<K>& a) {
    Op r = quadrant(d, a, a);
    for (const auto& [p, x] : a.terms()) {
        for (long i = 0; i < p; ++i) fin_add(r.fin, {i, i - p}, x);   // rows N, cols negative
        for (long i = p; i < 0; ++i) fin_add(r.fin, {i, i - p}, x);   // rows negative, cols N
    }
    return r;
}

template <class K>
Op<K> Op<K>::toeplitz(int d, const Sym<K>& a) { return quadrant(d, Sym<K>(), a); }

template <class K>
bool Op<K>::on_N() const {
    if (!neg.is_zero()) return false;
    for (const auto& [ij, e] : fin)
        if (ij.first < 0 || ij.second < 0) return false;
    return true;
}

template <class K>
std::pair<long, long> Op<K>::fin_range() const {
    long lo = 1, hi = 0;
    bool first = true;
    for (const auto& [ij, e] : fin) {
        long a = std::min(ij.first, ij.second), b = std::max(ij.first, ij.second);
        if (first) {
            lo = a;
            hi = b;
            first = false;
        } else {
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    }
    return {lo, hi};
}

template <class K>
Op<K> Op<K>::operator-() const {
    Op r(d);
    r.neg = -neg;
    r.pos = -pos;
    for (const auto& [ij, e] : fin) r.fin.emplace(ij, -e);
    return r;
}

template <class K>
Op<K> Op<K>::add(const Op& a, const Op& b, int sign) {
    Op r = a;
    if (sign > 0) {
        r.neg += b.neg;
        r.pos += b.pos;
        for (const auto& [ij, e] : b.fin) fin_add(r.fin, ij, e);
    } else {
        r.neg = r.neg - b.neg;
        r.pos = r.pos - b.pos;
        for (const auto& [ij, e] : b.fin) fin_add(r.fin, ij, -e);
    }
    return r;
}

template <class K>
Op<K> Op<K>::mul(const Op& A, const Op& B) {
    Op C(A.d);
    C.neg = A.neg * B.neg;
    C.pos = A.pos * B.pos;
    // Quadrant anomalies: the N block misses k < 0, the negative block misses k >= 0.
    for (const auto& [p, x] : A.pos.terms())
        for (const auto& [q, y] : B.pos.terms())
            for (long k = std::max(-p, q); k <= -1; ++k) fin_add(C.fin, {k + p, k - q}, -(x * y));
    for (const auto& [p, x] : A.neg.terms())
        for (const auto& [q, y] : B.neg.terms())
            for (long k = 0; k <= std::min(-p - 1, q - 1); ++k) fin_add(C.fin, {k + p, k - q}, -(x * y));
    // base(A) * fin(B)
    for (const auto& [kj, f] : B.fin) {
        long k = kj.first;
        const Sym<K>& s = k < 0 ? A.neg : A.pos;
        for (const auto& [p, x] : s.terms()) {
            long i = k + p;
            if ((i < 0) == (k < 0)) fin_add(C.fin, {i, kj.second}, x * f);
        }
    }
    // fin(A) * base(B)
    for (const auto& [ik, f] : A.fin) {
        long k = ik.second;
        const Sym<K>& s = k < 0 ? B.neg : B.pos;
        for (const auto& [q, y] : s.terms()) {
            long j = k - q;
            if ((j < 0) == (k < 0)) fin_add(C.fin, {ik.first, j}, f * y);
        }
    }
    // fin(A) * fin(B)
    if (!A.fin.empty() && !B.fin.empty()) {
        std::map<long, std::vector<std::pair<long, const Entry<K>*>>> rows;
        for (const auto& [kj, g] : B.fin) rows[kj.first].push_back({kj.second, &g});
        for (const auto& [ik, f] : A.fin) {
            auto it = rows.find(ik.second);
            if (it == rows.end()) continue;
            for (const auto& [j, g] : it->second) fin_add(C.fin, {ik.first, j}, f * *g);
        }
    }
    return C;
}

template <class K>
Op<K> Op<K>::scaled(const Entry<K>& c) const {
    Op r(d);
    r.neg = neg.map([&](const Entry<K>& e) { return c * e; });
    r.pos = pos.map([&](const Entry<K>& e) { return c * e; });
    for (const auto& [ij, e] : fin) fin_add(r.fin, ij, c * e);
    return r;
}

template <class K>
Op<K> Op<K>::adjoint() const {
    Op r(d);
    r.neg = bott::adjoint(neg);
    r.pos = bott::adjoint(pos);
    for (const auto& [ij, e] : fin) r.fin.emplace(Idx{ij.second, ij.first}, bott::adjoint(e));
    return r;
}

template <class K>
Op<K> Op<K>::subst_v(const K& w) const {
    auto ev = [&](const Entry<K>& e) { return Entry<K>(eval_at(e, w)); };
    Op r(d);
    r.neg = neg.map(ev);
    r.pos = pos.map(ev);
    for (const auto& [ij, e] : fin) fin_add(r.fin, ij, ev(e));
    return r;
}

namespace detail {

// R(i,j) = A(phi(i), phi(j)) for a translation or reflection phi. Base parts
// can only disagree in the rows and columns listed in boundary.
template <class K>
Op<K> remap(const Op<K>& A, const std::function<long(long)>& phi, const std::function<long(long)>& phi_inv,
            Sym<K> new_neg, Sym<K> new_pos, const std::vector<long>& boundary) {
    Op<K> R = Op<K>::quadrant(A.d, std::move(new_neg), std::move(new_pos));
    for (const auto& [ij, e] : A.fin) fin_add(R.fin, {phi_inv(ij.first), phi_inv(ij.second)}, e);
    std::set<int> exps;
    for (const auto& [p, x] : A.neg.terms()) exps.insert(p);
    for (const auto& [p, x] : A.pos.terms()) exps.insert(p);
    for (const auto& [p, x] : R.neg.terms()) exps.insert(p);
    for (const auto& [p, x] : R.pos.terms()) exps.insert(p);
    std::set<Idx> cand;
    for (long b : boundary)
        for (int p : exps) {
            cand.insert({b, b - p});
            cand.insert({b + p, b});
        }
    for (const auto& ij : cand) {
        Entry<K> want = A.base_at(phi(ij.first), phi(ij.second));
        Entry<K> have = R.base_at(ij.first, ij.second);
        fin_add(R.fin, ij, want - have);
    }
    return R;
}

}  // namespace detail

template <class K>
Op<K> Op<K>::reflect() const {
    return detail::remap<K>(*this, [](long i) { return -i; }, [](long i) { return -i; }, pos.reversed(),
                            neg.reversed(), {0});
}

template <class K>
Op<K> Op<K>::shift_conj() const {
    return detail::remap<K>(*this, [](long i) { return i - 1; }, [](long i) { return i + 1; }, neg, pos, {0, -1});
}

template <class K>
Op<K> Op<K>::restrict_N() const {
    Op r = quadrant(d, Sym<K>(), pos);
    for (const auto& [ij, e] : fin)
        if (ij.first >= 0 && ij.second >= 0) r.fin.emplace(ij, e);
    return r;
}

template <class K>
std::set<long> Op<K>::fin_rows() const {
    std::set<long> r;
    for (const auto& [ij, e] : fin) r.insert(ij.first);
    return r;
}

template <class K>
std::set<long> Op<K>::fin_cols() const {
    std::set<long> r;
    for (const auto& [ij, e] : fin) r.insert(ij.second);
    return r;
}

template <class K>
Op<K> Op<K>::inverse(const Sym<K>& neg_inv, const Sym<K>& pos_inv) const {
    Sym<K> one(one_entry(d));
    if (!(neg * neg_inv == one) || !(neg_inv * neg == one) || !(pos * pos_inv == one) || !(pos_inv * pos == one))
        throw HintMismatch("symbol inverses do not match the operator");
    // Column-split parametrix: column j < 0 uses neg_inv, column j >= 0 uses pos_inv.
    Op P = quadrant(d, neg_inv, pos_inv);
    for (const auto& [p, x] : neg_inv.terms())
        for (long i = 0; i < p; ++i) fin_add(P.fin, {i, i - p}, x);
    for (const auto& [p, x] : pos_inv.terms())
        for (long i = p; i < 0; ++i) fin_add(P.fin, {i, i - p}, x);
    Op G = (*this) * P - identity(d);
    if (!G.is_finite()) throw HintMismatch("parametrix leaves a symbol");
    Op R = P;
    if (!G.fin.empty()) {
        std::set<long> S = G.fin_rows();
        for (long c : G.fin_cols()) S.insert(c);
        std::vector<long> idx(S.begin(), S.end());
        std::map<long, int> pos_of;
        for (std::size_t a = 0; a < idx.size(); ++a) pos_of[idx[a]] = static_cast<int>(a);
        int n = static_cast<int>(idx.size()) * d;
        Mat<K> M = Mat<K>::identity(n);
        for (const auto& [ij, e] : G.fin) {
            if (!v_free(e)) throw SingularFiniteBlock("finite block depends on v");
            Mat<K> c = constant_part(e);
            int r0 = pos_of[ij.first] * d, c0 = pos_of[ij.second] * d;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) M(r0 + a, c0 + b) += c(a, b);
        }
        Mat<K> Mi;
        try {
            Mi = M.inverse();
        } catch (const std::domain_error&) {
            throw SingularFiniteBlock("finite block is singular");
        }
        Op X(d);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b) {
                Mat<K> c = Mat<K>::zero(d);
                for (int u = 0; u < d; ++u)
                    for (int w = 0; w < d; ++w) c(u, w) = Mi(a * d + u, b * d + w);
                if (a == b) c = c - Mat<K>::identity(d);
                fin_add(X.fin, {idx[a], idx[b]}, Entry<K>(c));
            }
        R = P + P * X;
    }
    Op I = identity(d);
    if ((*this) * R != I || R * (*this) != I) throw SingularFiniteBlock("operator is not invertible");
    return R;
}

template <class K>
std::string Op<K>::str() const {
    std::ostringstream os;
    os << "Op(d=" << d << ", neg terms=" << neg.terms().size() << ", pos terms=" << pos.terms().size()
       << ", fin=" << fin.size() << ")";
    return os.str();
}

template <class K>
BlockView<K> block_view(const Op<K>& A) {
    int d = A.d;
    BlockView<K> bv{Op<K>::quadrant(d, Sym<K>(), A.neg.reversed()), Op<K>(d), Op<K>(d),
                    Op<K>::quadrant(d, Sym<K>(), A.pos)};
    for (const auto& [ij, e] : A.fin) {
        auto [i, j] = ij;
        if (i < 0 && j < 0) fin_add(bv.mm.fin, {-1 - i, -1 - j}, e);
        else if (i < 0) fin_add(bv.mp.fin, {-1 - i, j}, e);
        else if (j < 0) fin_add(bv.pm.fin, {i, -1 - j}, e);
        else fin_add(bv.pp.fin, {i, j}, e);
    }
    return bv;
}

template <class K>
Op<K> assemble(const BlockView<K>& bv) {
    Op<K> r = Op<K>::quadrant(bv.pp.d, bv.mm.pos.reversed(), bv.pp.pos);
    for (const auto& [ij, e] : bv.mm.fin) fin_add(r.fin, {-1 - ij.first, -1 - ij.second}, e);
    for (const auto& [ij, e] : bv.mp.fin) fin_add(r.fin, {-1 - ij.first, ij.second}, e);
    for (const auto& [ij, e] : bv.pm.fin) fin_add(r.fin, {ij.first, -1 - ij.second}, e);
    for (const auto& [ij, e] : bv.pp.fin) fin_add(r.fin, ij, e);
    return r;
}

}  // namespace bott
