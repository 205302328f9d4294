#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bott/detail.hpp"

namespace bott {

// Dense d x d matrix over a scalar ring K. A default-constructed Mat (d == 0)
// is a zero that adapts to any size.
template <class K>
class Mat {
public:
    Mat() = default;
    static Mat zero(int d) { return Mat(d, K(0)); }
    static Mat scalar(int d, const K& c) {
        Mat m(d, K(0));
        for (int i = 0; i < d; ++i) m(i, i) = c;
        return m;
    }
    static Mat identity(int d) { return scalar(d, K(1)); }

    int dim() const { return d_; }
    K& operator()(int i, int j) { return a_[i * d_ + j]; }
    const K& operator()(int i, int j) const { return a_[i * d_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!bott_is_zero(x)) return false;
        return true;
    }

    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.d_ == 0) return b;
        if (b.d_ == 0) return a;
        check(a, b);
        Mat r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) { return a + (-b); }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.d_ == 0 || b.d_ == 0) return Mat();
        check(a, b);
        int d = a.d_;
        Mat r(d, K(0));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                const K& x = a(i, k);
                if (bott_is_zero(x)) continue;
                for (int j = 0; j < d; ++j) r(i, j) += x * b(k, j);
            }
        return r;
    }
    friend Mat operator*(const K& c, const Mat& m) {
        Mat r = m;
        for (auto& x : r.a_) x = c * x;
        return r;
    }
    Mat& operator+=(const Mat& b) { return *this = *this + b; }
    friend bool operator==(const Mat& a, const Mat& b) {
        if (a.d_ == 0 || b.d_ == 0) return a.is_zero() && b.is_zero();
        return a.d_ == b.d_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat transpose() const {
        Mat r = *this;
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    // Gauss-Jordan inverse; throws std::domain_error when singular.
    Mat inverse() const {
        int d = d_;
        Mat a = *this, r = identity(d);
        for (int c = 0; c < d; ++c) {
            int p = c;
            while (p < d && bott_is_zero(a(p, c))) ++p;
            if (p == d) throw std::domain_error("singular matrix");
            if (p != c)
                for (int j = 0; j < d; ++j) {
                    std::swap(a(p, j), a(c, j));
                    std::swap(r(p, j), r(c, j));
                }
            K f = inv(a(c, c));
            for (int j = 0; j < d; ++j) {
                a(c, j) = f * a(c, j);
                r(c, j) = f * r(c, j);
            }
            for (int i = 0; i < d; ++i) {
                if (i == c || bott_is_zero(a(i, c))) continue;
                K g = a(i, c);
                for (int j = 0; j < d; ++j) {
                    a(i, j) -= g * a(c, j);
                    r(i, j) -= g * r(c, j);
                }
            }
        }
        return r;
    }

private:
    Mat(int d, const K& fill) : d_(d), a_(static_cast<std::size_t>(d) * d, fill) {}
    static bool bott_is_zero(const K& x) { return detail::iz(x); }
    static void check(const Mat& a, const Mat& b) {
        if (a.d_ != b.d_) throw std::invalid_argument("matrix dimension mismatch");
    }
    int d_ = 0;
    std::vector<K> a_;
};

template <class K>
bool is_zero(const Mat<K>& m) { return m.is_zero(); }
template <class K>
Mat<K> adjoint(const Mat<K>& m) { return m.transpose(); }
template <class K>
Mat<K> scale(const K& c, const Mat<K>& m) { return c * m; }

}  // namespace bott
