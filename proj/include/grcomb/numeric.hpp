#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace grcomb {

using Int = long long;
using Rat = boost::rational<Int>;

/// Lattice vector in a fixed basis of X_*(T) or X^*(T).
using Vec = std::vector<Int>;
/// Rational vector, used for Newton points and Galois averages.
using QVec = std::vector<Rat>;

/// Row-major integer matrix acting on column vectors.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    Int operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool operator<(const Mat& o) const { return a < o.a; }

    Vec apply(const Vec& v) const {
        if (v.size() != cols) throw std::invalid_argument("Mat::apply: size mismatch");
        Vec out(rows, 0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) out[i] += a[i * cols + j] * v[j];
        return out;
    }

    QVec apply(const QVec& v) const {
        if (v.size() != cols) throw std::invalid_argument("Mat::apply: size mismatch");
        QVec out(rows, Rat(0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) out[i] += Rat(a[i * cols + j]) * v[j];
        return out;
    }

    Mat mul(const Mat& o) const {
        if (cols != o.rows) throw std::invalid_argument("Mat::mul: size mismatch");
        Mat m(rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                Int x = a[i * cols + k];
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols; ++j) m(i, j) += x * o(k, j);
            }
        return m;
    }

    Mat transpose() const {
        Mat m(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(j, i) = a[i * cols + j];
        return m;
    }

    bool is_identity() const {
        if (rows != cols) return false;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }
};

inline Vec vec_add(const Vec& x, const Vec& y) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return z;
}

inline Vec vec_sub(const Vec& x, const Vec& y) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

inline Vec vec_neg(const Vec& x) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
    return z;
}

inline Vec vec_scale(Int c, const Vec& x) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = c * x[i];
    return z;
}

inline bool vec_is_zero(const Vec& x) {
    for (Int v : x)
        if (v != 0) return false;
    return true;
}

inline Int dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline Rat dot(const Vec& x, const QVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < x.size(); ++i) s += Rat(x[i]) * y[i];
    return s;
}

inline QVec to_qvec(const Vec& x) {
    QVec q(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) q[i] = Rat(x[i]);
    return q;
}

inline QVec qvec_add(const QVec& x, const QVec& y) {
    QVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return z;
}

inline QVec qvec_sub(const QVec& x, const QVec& y) {
    QVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

inline QVec qvec_scale(const Rat& c, const QVec& x) {
    QVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = c * x[i];
    return z;
}

inline bool qvec_is_zero(const QVec& x) {
    for (const Rat& v : x)
        if (v != Rat(0)) return false;
    return true;
}

/// Integer part extraction: returns (v, den) with x = v/den, den > 0 minimal.
inline std::pair<Vec, Int> qvec_normalize(const QVec& x) {
    Int den = 1;
    for (const Rat& r : x) den = std::lcm(den, r.denominator());
    Vec v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i].numerator() * (den / x[i].denominator());
    return {v, den};
}

/// Domain error carrying a stable machine-readable name (the CLI echoes it).
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

}  // namespace grcomb
