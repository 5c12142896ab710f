#pragma once

#include "grcomb/fgab.hpp"

#include <optional>
#include <set>
#include <string>

namespace grcomb {

/// Based root datum. Roots live in X^*(T) and coroots in X_*(T), both written
/// in a fixed basis of X_*(T) = Z^rank and its dual. Roots and coroots are
/// index-aligned.
struct RootDatum {
    std::size_t rank = 0;
    std::vector<Vec> roots;
    std::vector<Vec> coroots;
    std::vector<std::size_t> simple;
    Vec two_rho;
    std::vector<std::size_t> positive;

    std::size_t num_simple() const { return simple.size(); }
    const Vec& simple_root(std::size_t k) const { return roots[simple[k]]; }
    const Vec& simple_coroot(std::size_t k) const { return coroots[simple[k]]; }

    Int cartan(std::size_t k, std::size_t l) const {
        return dot(simple_root(k), simple_coroot(l));
    }
};

/// Coefficients of `root` in the simple-root basis, when expressible.
inline std::optional<QVec> in_simple_root_basis(const RootDatum& rd, const Vec& root) {
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < rd.num_simple(); ++k) cols.push_back(rd.simple_root(k));
    Mat m = columns_matrix(rd.rank, cols);
    return solve_rational(m, to_qvec(root));
}

namespace detail {
enum class Sign { Positive, Negative, Neither };

inline Sign root_sign(const RootDatum& rd, const Vec& root) {
    auto coeffs = in_simple_root_basis(rd, root);
    if (!coeffs) return Sign::Neither;
    bool nonneg = true, nonpos = true;
    for (const Rat& c : *coeffs) {
        if (c.denominator() != 1) return Sign::Neither;
        if (c < Rat(0)) nonneg = false;
        if (c > Rat(0)) nonpos = false;
    }
    if (nonneg && !vec_is_zero(root)) return Sign::Positive;
    if (nonpos && !vec_is_zero(root)) return Sign::Negative;
    return Sign::Neither;
}
}  // namespace detail

/// Fill `positive` and `two_rho`; throws InvalidRootDatum when a root is not a
/// signed integral combination of the simple roots.
inline RootDatum finalize(RootDatum rd) {
    rd.positive.clear();
    Vec sum(rd.rank, 0);
    for (std::size_t i = 0; i < rd.roots.size(); ++i) {
        detail::Sign s = detail::root_sign(rd, rd.roots[i]);
        if (s == detail::Sign::Neither)
            throw DomainError("InvalidRootDatum", "root has mixed-sign simple coefficients");
        if (s == detail::Sign::Positive) {
            rd.positive.push_back(i);
            sum = vec_add(sum, rd.roots[i]);
        }
    }
    rd.two_rho = sum;
    return rd;
}

inline Mat simple_reflection_matrix(const RootDatum& rd, std::size_t k) {
    Mat m = Mat::identity(rd.rank);
    const Vec& alpha = rd.simple_root(k);
    const Vec& coalpha = rd.simple_coroot(k);
    for (std::size_t i = 0; i < rd.rank; ++i)
        for (std::size_t j = 0; j < rd.rank; ++j) m(i, j) -= coalpha[i] * alpha[j];
    return m;
}

/// Weyl group elements as matrices on X_*(T), with sign (-1)^{length}.
struct WeylElement {
    Mat mat;
    int sign = 1;
};

inline std::vector<WeylElement> weyl_elements(const RootDatum& rd,
                                              std::size_t bound = kGroupClosureBound) {
    std::vector<Mat> gens;
    for (std::size_t k = 0; k < rd.num_simple(); ++k) gens.push_back(simple_reflection_matrix(rd, k));
    std::vector<WeylElement> elems{{Mat::identity(rd.rank), 1}};
    std::map<Mat, bool> seen{{elems[0].mat, true}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        WeylElement cur = elems[head];
        for (const Mat& g : gens) {
            Mat h = g.mul(cur.mat);
            if (seen.emplace(h, true).second) {
                elems.push_back({h, -cur.sign});
                if (elems.size() > bound)
                    throw DomainError("NonFiniteAction", "Weyl closure exceeds bound");
            }
        }
    }
    return elems;
}

template <typename V>
inline bool is_dominant(const RootDatum& rd, const V& v) {
    for (std::size_t k = 0; k < rd.num_simple(); ++k) {
        auto p = dot(rd.simple_root(k), v);
        if (p < decltype(p)(0)) return false;
    }
    return true;
}

template <typename V>
struct DominantResult {
    V vec;
    std::vector<std::size_t> word;  // simple indices, in order of application
};

/// Dominant Weyl representative; the returned word is reduced.
template <typename V>
inline DominantResult<V> dominant_representative(const RootDatum& rd, V v) {
    DominantResult<V> res;
    std::size_t guard = 0, cap = (rd.positive.size() + 1) * (rd.positive.size() + 1) + 16;
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t k = 0; k < rd.num_simple(); ++k) {
            auto p = dot(rd.simple_root(k), v);
            if (p < decltype(p)(0)) {
                const Vec& coalpha = rd.simple_coroot(k);
                for (std::size_t i = 0; i < rd.rank; ++i) v[i] = v[i] - p * coalpha[i];
                res.word.push_back(k);
                moved = true;
                if (++guard > cap)
                    throw DomainError("InvalidRootDatum", "dominantization does not terminate");
            }
        }
    }
    res.vec = std::move(v);
    return res;
}

/// lambda <= mu in dominance order: mu - lambda a nonnegative integral
/// combination of simple coroots.
inline bool dominance_leq(const RootDatum& rd, const Vec& lambda, const Vec& mu) {
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < rd.num_simple(); ++k) cols.push_back(rd.simple_coroot(k));
    Mat m = columns_matrix(rd.rank, cols);
    auto x = solve_rational(m, to_qvec(vec_sub(mu, lambda)));
    if (!x) return false;
    for (const Rat& c : *x)
        if (c.denominator() != 1 || c < Rat(0)) return false;
    return true;
}

/// Rational relaxation, for Newton point comparisons.
inline bool dominance_leq_rational(const RootDatum& rd, const QVec& lambda, const QVec& mu) {
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < rd.num_simple(); ++k) cols.push_back(rd.simple_coroot(k));
    Mat m = columns_matrix(rd.rank, cols);
    auto x = solve_rational(m, qvec_sub(mu, lambda));
    if (!x) return false;
    for (const Rat& c : *x)
        if (c < Rat(0)) return false;
    return true;
}

inline Int pairing_2rho(const RootDatum& rd, const Vec& mu) { return dot(rd.two_rho, mu); }
inline Rat pairing_2rho(const RootDatum& rd, const QVec& mu) { return dot(rd.two_rho, mu); }

/// Exchange roots and coroots. The double dual is the identity.
inline RootDatum dual_datum(const RootDatum& rd) {
    RootDatum d;
    d.rank = rd.rank;
    d.roots = rd.coroots;
    d.coroots = rd.roots;
    d.simple = rd.simple;
    return finalize(d);
}

/// Central (root-null) directions: saturated basis of {v : <alpha, v> = 0}.
inline std::vector<Vec> central_cocharacters(const RootDatum& rd) {
    Mat m(rd.roots.size(), rd.rank);
    for (std::size_t i = 0; i < rd.roots.size(); ++i)
        for (std::size_t j = 0; j < rd.rank; ++j) m(i, j) = rd.roots[i][j];
    return integer_kernel(m);
}

/// Structural root-datum checks; returns human-readable violations.
inline std::vector<std::string> validate_root_datum(const RootDatum& rd) {
    std::vector<std::string> out;
    if (rd.roots.size() != rd.coroots.size()) {
        out.push_back("roots and coroots are not in bijection");
        return out;
    }
    for (const Vec& r : rd.roots)
        if (r.size() != rd.rank) out.push_back("root of wrong dimension");
    for (const Vec& c : rd.coroots)
        if (c.size() != rd.rank) out.push_back("coroot of wrong dimension");
    if (!out.empty()) return out;
    for (std::size_t k : rd.simple)
        if (k >= rd.roots.size()) {
            out.push_back("simple index out of range");
            return out;
        }

    for (std::size_t i = 0; i < rd.roots.size(); ++i)
        if (dot(rd.roots[i], rd.coroots[i]) != 2) {
            out.push_back("<alpha, alpha^vee> != 2 at index " + std::to_string(i));
            break;
        }

    for (std::size_t k = 0; k < rd.num_simple(); ++k)
        for (std::size_t l = 0; l < rd.num_simple(); ++l) {
            Int c = rd.cartan(k, l);
            if (k == l && c != 2) out.push_back("Cartan diagonal entry != 2");
            if (k != l && c > 0) out.push_back("positive off-diagonal Cartan entry");
            if (k != l && ((c == 0) != (rd.cartan(l, k) == 0)))
                out.push_back("Cartan zero pattern is not symmetric");
        }

    bool signs_ok = true;
    for (const Vec& r : rd.roots)
        if (detail::root_sign(rd, r) == detail::Sign::Neither) signs_ok = false;
    if (!signs_ok) out.push_back("a root is not a signed integral combination of simple roots");

    if (signs_ok) {
        RootDatum fin = rd;
        fin = finalize(fin);
        if (fin.two_rho != rd.two_rho) out.push_back("two_rho != sum of positive roots");

        std::set<Vec> root_set(rd.roots.begin(), rd.roots.end());
        std::map<Vec, Vec> coroot_of;
        for (std::size_t i = 0; i < rd.roots.size(); ++i) coroot_of[rd.roots[i]] = rd.coroots[i];
        bool closed = true, equivariant = true;
        for (std::size_t i = 0; i < rd.roots.size() && closed; ++i) {
            const Vec& a = rd.roots[i];
            const Vec& av = rd.coroots[i];
            for (std::size_t j = 0; j < rd.roots.size(); ++j) {
                Vec rb = vec_sub(rd.roots[j], vec_scale(dot(rd.roots[j], av), a));
                if (!root_set.count(rb)) {
                    closed = false;
                    break;
                }
                Vec rbv = vec_sub(rd.coroots[j], vec_scale(dot(a, rd.coroots[j]), av));
                if (coroot_of[rb] != rbv) equivariant = false;
            }
        }
        if (!closed) out.push_back("reflections do not permute the root set");
        else if (!equivariant) out.push_back("root/coroot bijection is not reflection-equivariant");
    }
    return out;
}

}  // namespace grcomb
