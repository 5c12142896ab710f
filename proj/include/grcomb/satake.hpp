#pragma once

// The determinant-of-pairing divisor on the sigma-coinvariant dual torus,
// relative coroots, and (strong) genericity tests for rational Satake
// parameters.

#include "grcomb/kottwitz.hpp"

namespace grcomb {

/// Relative coroot: a sigma-fixed element of the free part of X_*(T)_I,
/// together with the chosen folded coroot alpha_sigma whose sigma-translates
/// sum to it.
struct RelativeCoroot {
    Vec alpha;
    bool multipliable = false;  // alpha/2 is also a relative coroot
    Vec alpha_sigma;            // a folded coroot (an image root of the dual fixed points)
};

inline Mat sigma_on_folded(const GroupModel& m) { return m.sigma_I; }

/// Relative coroot system inside the sigma-invariants of X_*(T)_I. Orbits of
/// folded coroots contribute their orbit sum; orbits containing two
/// non-orthogonal members (the only source of multipliable roots) contribute
/// twice their orbit sum as well.
inline std::vector<RelativeCoroot> relative_coroots(const GroupModel& m) {
    const FoldedDatum& fd = require_folded(m);
    const RootDatum& fold = fd.datum;
    if (m.residual_order <= 0)
        throw DomainError("NonFiniteAction", "Frobenius has no finite residual order");

    // sigma-orbits of the folded coroots
    std::map<Vec, std::size_t> index;
    for (std::size_t i = 0; i < fold.coroots.size(); ++i) index[fold.coroots[i]] = i;
    std::set<Vec> seen;
    std::set<Vec> alphas;
    for (const Vec& c : fold.coroots) {
        if (seen.count(c)) continue;
        std::vector<Vec> orbit;
        Vec cur = c;
        do {
            orbit.push_back(cur);
            seen.insert(cur);
            cur = fd.sigma.apply(cur);
            if (!index.count(cur))
                throw DomainError("InvalidRootDatum", "sigma does not permute the folded coroots");
        } while (cur != c);

        Vec sum(fold.rank, 0);
        for (const Vec& x : orbit) sum = vec_add(sum, x);
        bool orthogonal = true;
        for (std::size_t a = 0; a < orbit.size() && orthogonal; ++a)
            for (std::size_t b = a + 1; b < orbit.size() && orthogonal; ++b)
                if (dot(fold.roots[index[orbit[a]]], orbit[b]) != 0) orthogonal = false;
        alphas.insert(sum);
        if (!orthogonal) alphas.insert(vec_scale(2, sum));
    }

    // alpha_sigma: the folded coroot whose k-fold translate sum equals alpha,
    // for the largest full-orbit k <= residual order; ties resolved
    // lexicographically. The class of alpha_sigma is what the exponents use.
    std::vector<RelativeCoroot> out;
    for (const Vec& alpha : alphas) {
        RelativeCoroot rc;
        rc.alpha = alpha;
        Vec half(alpha.size());
        bool halves = true;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (alpha[i] % 2 != 0) halves = false;
            else half[i] = alpha[i] / 2;
        }
        rc.multipliable = halves && alphas.count(half) > 0;

        int best_k = 0;
        for (const Vec& c : fold.coroots) {
            Vec acc(fold.rank, 0);
            Vec cur = c;
            for (int k = 1; k <= m.residual_order; ++k) {
                acc = vec_add(acc, cur);
                cur = fd.sigma.apply(cur);
                if (acc == alpha && cur == c) {  // full orbits only
                    if (k > best_k || (k == best_k && c < rc.alpha_sigma)) {
                        best_k = k;
                        rc.alpha_sigma = c;
                    }
                }
            }
        }
        if (best_k == 0)
            throw DomainError("InvalidRootDatum", "relative coroot without translate-sum witness");
        out.push_back(rc);
    }
    std::sort(out.begin(), out.end(),
              [](const RelativeCoroot& a, const RelativeCoroot& b) { return a.alpha < b.alpha; });
    return out;
}

/// Multiplicities of a folded character pushed to classes in X_*(T)_Gamma.
inline std::map<Vec, Int> gamma_class_multiplicities(const GroupModel& m, const Character& v) {
    std::map<Vec, Int> out;
    for (const auto& [w, mult] : v.support)
        out[m.gamma_q.apply(m.inertia_q.lift_free(w))] += mult;
    return out;
}

/// zeta_alpha = sum_{n >= n_start} dim V|_{Gamma-fixed dual}(n alpha_sigma).
/// The printed formula starts the sum at n = 0; n_start = 1 is exposed as a
/// configuration switch.
inline std::map<Vec, Int> zeta_exponents(const GroupModel& m, const Character& v, int n_start = 0) {
    std::vector<RelativeCoroot> rels = relative_coroots(m);
    std::map<Vec, Int> classes = gamma_class_multiplicities(m, v);

    Int max_height = 0;
    for (const auto& [w, mult] : v.support) {
        (void)mult;
        Int h = dot(m.datum.two_rho, m.inertia_q.lift_free(w));
        max_height = std::max(max_height, h >= 0 ? h : -h);
    }

    std::map<Vec, Int> zeta;
    for (const RelativeCoroot& rc : rels) {
        Vec lift = m.inertia_q.lift_free(rc.alpha_sigma);
        Int step = dot(m.datum.two_rho, lift);
        if (step < 0) step = -step;
        if (step == 0) throw DomainError("InvalidRootDatum", "relative coroot of zero height");
        Int z = 0;
        for (Int n = n_start; n * step <= max_height; ++n) {
            Vec cls = m.gamma_q.apply(vec_scale(n, lift));
            auto it = classes.find(cls);
            if (it != classes.end()) z += it->second;
        }
        zeta[rc.alpha] = z;
    }
    return zeta;
}

/// One factor (e^alpha -+ 1)^zeta of the determinant divisor.
struct DivisorFactor {
    Vec alpha;
    bool plus_sign = false;  // + exactly on multipliable alpha
    Int zeta = 0;
};

struct Divisor {
    std::vector<DivisorFactor> factors;  // only zeta > 0 entries
    bool empty() const { return factors.empty(); }
};

inline Divisor determinant_divisor(const GroupModel& m, const Character& v, int n_start = 0) {
    std::vector<RelativeCoroot> rels = relative_coroots(m);
    std::map<Vec, Int> zeta = zeta_exponents(m, v, n_start);
    Divisor d;
    for (const RelativeCoroot& rc : rels) {
        Int z = zeta.at(rc.alpha);
        if (z > 0) d.factors.push_back({rc.alpha, rc.multipliable, z});
    }
    return d;
}

/// Rational point of the sigma-coinvariant dual torus: values on a fixed basis
/// of the sigma-invariant sublattice of the free part of X_*(T)_I.
struct SatakeParameter {
    std::vector<Vec> basis;   // columns: basis of the invariant sublattice
    std::vector<Rat> values;  // nonzero rationals, one per basis vector
};

inline std::vector<Vec> satake_parameter_basis(const GroupModel& m) {
    require_folded(m);
    std::size_t r = m.inertia_q.group.free_rank;
    Mat shifted(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) shifted(i, j) = m.sigma_I(i, j) - (i == j ? 1 : 0);
    return integer_kernel(shifted);
}

inline SatakeParameter make_satake_parameter(const GroupModel& m, std::vector<Rat> values) {
    SatakeParameter s;
    s.basis = satake_parameter_basis(m);
    if (values.size() != s.basis.size())
        throw DomainError("NonRationalUnsupported",
                          "expected " + std::to_string(s.basis.size()) + " parameter values");
    for (const Rat& v : values)
        if (v == Rat(0))
            throw DomainError("NonRationalUnsupported", "parameter values must be nonzero");
    s.values = std::move(values);
    return s;
}

namespace satdetail {

inline Rat checked_pow(const Rat& base, Int e) {
    Rat acc(1);
    Rat b = e >= 0 ? base : Rat(1) / base;
    for (Int i = 0, n = e >= 0 ? e : -e; i < n; ++i) {
        acc *= b;
        if (acc.numerator() > (Int(1) << 62) / 4 || acc.denominator() > (Int(1) << 62) / 4)
            throw DomainError("NonRationalUnsupported", "parameter evaluation overflows");
    }
    return acc;
}

}  // namespace satdetail

/// Evaluate s on a sigma-fixed vector of the free part of X_*(T)_I.
inline Rat evaluate_parameter(const GroupModel& m, const SatakeParameter& s, const Vec& v) {
    std::size_t r = m.inertia_q.group.free_rank;
    Mat basis = columns_matrix(r, s.basis);
    auto x = solve_integer(basis, v);
    if (!x)
        throw DomainError("NonRationalUnsupported",
                          "vector is not in the sigma-invariant sublattice");
    Rat acc(1);
    for (std::size_t i = 0; i < s.values.size(); ++i) acc *= satdetail::checked_pow(s.values[i], (*x)[i]);
    return acc;
}

/// V-general: the parameter avoids every divisor factor.
inline bool is_v_general(const GroupModel& m, const Divisor& d, const SatakeParameter& s) {
    for (const DivisorFactor& f : d.factors) {
        Rat val = evaluate_parameter(m, s, f.alpha);
        if (!f.plus_sign && val == Rat(1)) return false;
        if (f.plus_sign && val == Rat(-1)) return false;
    }
    return true;
}

/// Does a class in X_*(T)_Gamma factor through the center's dual torus?
inline bool gamma_class_is_central(const GroupModel& m, const Vec& cls) {
    std::vector<Vec> cols;
    for (const Vec& z : m.center) cols.push_back(m.gamma_q.apply(z));
    // account for torsion moduli in the class coordinates
    std::size_t free = m.gamma_q.group.free_rank;
    for (std::size_t k = 0; k < m.gamma_q.group.torsion.size(); ++k) {
        Vec e(m.gamma_q.group.coord_size(), 0);
        e[free + k] = m.gamma_q.group.torsion[k];
        cols.push_back(e);
    }
    return lattice_contains(columns_matrix(m.gamma_q.group.coord_size(), cols), cls);
}

/// Basis (as columns) of the sigma-fixed part of the central image lattice in
/// the free part of X_*(T)_I. Norm values of Tate weights land here.
inline std::vector<Vec> central_sigma_fixed_lattice(const GroupModel& m) {
    Mat c = central_image_lattice(m);
    std::size_t r = m.inertia_q.group.free_rank;
    Mat shifted(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) shifted(i, j) = m.sigma_I(i, j) - (i == j ? 1 : 0);
    Mat composed = shifted.mul(c);
    std::vector<Vec> out;
    for (const Vec& k : integer_kernel(composed)) out.push_back(c.apply(k));
    return out;
}

/// Norm value of s on a weight lambda_I: s evaluated on the sum of the m
/// sigma-translates. Constant on classes modulo (sigma - 1).
inline Rat norm_value(const GroupModel& m, const SatakeParameter& s, const Vec& lambda_I) {
    return evaluate_parameter(m, s, sigma_norm(m, lambda_I));
}

/// Strongly V-general: no weight class outside the center's dual evaluates to
/// a root of unity. Over the rationals this means the norm value avoids +-1.
inline bool is_strongly_v_general(const GroupModel& m, const Character& v,
                                  const SatakeParameter& s) {
    for (const auto& [w, mult] : v.support) {
        (void)mult;
        Vec cls = m.gamma_q.apply(m.inertia_q.lift_free(w));
        if (gamma_class_is_central(m, cls)) continue;
        Rat val = norm_value(m, s, w);
        if (val == Rat(1) || val == Rat(-1)) return false;
    }
    return true;
}

/// Weight count of the union of fixed spaces of the powers of s: over the
/// rationals, the weights whose norm value is a root of unity.
inline Int fixed_point_weight_count(const GroupModel& m, const Character& v,
                                    const SatakeParameter& s) {
    Int total = 0;
    for (const auto& [w, mult] : v.support) {
        Rat val = norm_value(m, s, w);
        if (val == Rat(1) || val == Rat(-1)) total += mult;
    }
    return total;
}

/// W_0 acting on the free part of X_*(T)_I (it commutes with inertia).
inline std::vector<Mat> weyl0_on_folded(const GroupModel& m) {
    std::vector<Mat> out;
    std::size_t r = m.inertia_q.group.free_rank;
    Mat proj_free(r, m.datum.rank);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.datum.rank; ++j) proj_free(i, j) = m.inertia_q.projection(i, j);
    for (const Mat& w : m.weyl0) out.push_back(proj_free.mul(w.mul(m.inertia_q.section)));
    return out;
}

}  // namespace grcomb
