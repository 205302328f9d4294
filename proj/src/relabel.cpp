#include "bott/relabel.hpp"

#include <cmath>

namespace bott {

Bijection<NN, long> cantor_pairing() {
    return {[](const NN& p) {
                long s = p.first + p.second;
                return s * (s + 1) / 2 + p.second;
            },
            [](const long& k) {
                long s = static_cast<long>((std::sqrt(8.0 * k + 1) - 1) / 2);
                while (s * (s + 1) / 2 > k) --s;
                while ((s + 1) * (s + 2) / 2 <= k) ++s;
                long m = k - s * (s + 1) / 2;
                return NN{s - m, m};
            },
            "cantor"};
}

Bijection<long, long> zigzag() {
    return {[](const long& n) { return n >= 0 ? 2 * n : -2 * n - 1; },
            [](const long& k) { return k % 2 == 0 ? k / 2 : -(k + 1) / 2; }, "zigzag"};
}

Bijection<PairZ, long> interleave() {
    return {[](const PairZ& p) { return 2 * p.second + (p.first == 2 ? 1 : 0); },
            [](const long& k) {
                long n = k >= 0 ? k / 2 : -((-k + 1) / 2);
                return PairZ{k - 2 * n == 1 ? 2 : 1, n};
            },
            "interleave"};
}

Bijection<NN, NN> shift_outer() {
    // bwd is a left inverse on the image only; relabel checks it there.
    return {[](const NN& p) { return NN{p.first + 1, p.second}; }, [](const NN& p) { return NN{p.first - 1, p.second}; },
            "shift_outer"};
}

Bijection<NN, NN> identity_nn() {
    return {[](const NN& p) { return p; }, [](const NN& p) { return p; }, "id"};
}

}  // namespace bott
