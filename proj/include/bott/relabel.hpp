#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace bott {

struct NotBijective : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using NN = std::pair<long, long>;    // element of N x N
using PairZ = std::pair<int, long>;  // element of {1,2} x Z

template <class I, class J>
struct Bijection {
    std::function<J(const I&)> fwd;
    std::function<I(const J&)> bwd;
    std::string name;
};

template <class I, class J, class L>
Bijection<I, L> compose(const Bijection<J, L>& outer, const Bijection<I, J>& inner) {
    return {[=](const I& i) { return outer.fwd(inner.fwd(i)); }, [=](const L& l) { return inner.bwd(outer.bwd(l)); },
            outer.name + "." + inner.name};
}

template <class I, class J>
Bijection<J, I> invert(const Bijection<I, J>& w) {
    return {w.bwd, w.fwd, "inv(" + w.name + ")"};
}

// Output entry (w(i), w(j)) equals input entry (i, j).
template <class I, class J, class V>
std::map<std::pair<J, J>, V> relabel(const std::map<std::pair<I, I>, V>& A, const Bijection<I, J>& w) {
    std::map<std::pair<J, J>, V> out;
    std::map<I, J> seen;
    std::set<J> images;
    auto image = [&](const I& i) {
        auto it = seen.find(i);
        if (it != seen.end()) return it->second;
        J j = w.fwd(i);
        if (w.bwd && !(w.bwd(j) == i)) throw NotBijective("relabeling " + w.name + " is not invertible");
        if (!images.insert(j).second) throw NotBijective("relabeling " + w.name + " is not injective");
        seen.emplace(i, j);
        return j;
    };
    for (const auto& [ij, v] : A) out.emplace(std::pair<J, J>{image(ij.first), image(ij.second)}, v);
    return out;
}

// Cantor pairing N x N -> N.
Bijection<NN, long> cantor_pairing();
// Z -> N: n >= 0 -> 2n, n < 0 -> -2n-1.
Bijection<long, long> zigzag();
// {1,2} x Z -> Z: (1,n) -> 2n, (2,n) -> 2n+1.
Bijection<PairZ, long> interleave();
// The injection (n, m) -> (n+1, m) of N x N onto (N \ {0}) x N.
Bijection<NN, NN> shift_outer();
Bijection<NN, NN> identity_nn();

}  // namespace bott
