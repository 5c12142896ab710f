#pragma once

// The computable part of B(G): invariants of very special classes, membership
// in B(G,mu), the basic Newton point, the Tate weight set Lambda.

#include "grcomb/rep.hpp"

namespace grcomb {

/// Very special class [varpi^tau], tau in X_*(T). Two representatives name the
/// same class exactly when their images in X_*(T)_Gamma lie in one W_0-orbit.
struct KottwitzVsp {
    Vec tau;
};

/// Dominant rational coweight, Galois-fixed.
struct NewtonPoint {
    QVec nu;

    bool operator==(const NewtonPoint& o) const { return nu == o.nu; }
};

/// kappa(tau): coordinates in pi_1(G)_Gamma (free part, then torsion residues).
inline Vec kottwitz_invariant(const GroupModel& m, const Vec& tau) {
    return m.pi1_gamma_q.apply(tau);
}

inline std::set<Vec> galois_orbit(const GroupModel& m, const Vec& v) {
    std::set<Vec> orbit;
    for (const Mat& g : group_closure(m.all_galois_gens(), m.datum.rank)) orbit.insert(g.apply(v));
    return orbit;
}

/// Galois average of v, as an exact rational vector.
inline QVec galois_average(const GroupModel& m, const Vec& v) {
    std::set<Vec> orbit = galois_orbit(m, v);
    QVec avg(m.datum.rank, Rat(0));
    for (const Vec& x : orbit) avg = qvec_add(avg, to_qvec(x));
    return qvec_scale(Rat(1, static_cast<Int>(orbit.size())), avg);
}

/// Newton point of the very special class of tau: dominant representative of
/// the Galois average.
inline NewtonPoint newton_point_vsp(const GroupModel& m, const Vec& tau) {
    QVec avg = galois_average(m, tau);
    return {dominant_representative(m.datum, avg).vec};
}

/// Newton point of the basic class of B(G,mu): the central component of the
/// Galois average, split off along span(coroots) + central directions.
inline NewtonPoint newton_basic(const GroupModel& m, const Vec& mu) {
    repdetail::require_dominant(m.datum, mu, "newton_basic");
    QVec avg = galois_average(m, mu);
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < m.datum.num_simple(); ++k) cols.push_back(m.datum.simple_coroot(k));
    std::size_t semis = cols.size();
    for (const Vec& z : m.center) cols.push_back(z);
    Mat basis = columns_matrix(m.datum.rank, cols);
    auto x = solve_rational(basis, avg);
    if (!x) throw DomainError("InvalidRootDatum", "coroots and center do not span");
    QVec central(m.datum.rank, Rat(0));
    for (std::size_t j = 0; j < m.center.size(); ++j)
        central = qvec_add(central, qvec_scale((*x)[semis + j], to_qvec(m.center[j])));
    return {central};
}

/// Exact class equality in X_*(T)_Gamma.
inline bool gamma_class_equal(const GroupModel& m, const Vec& v, const Vec& w) {
    return m.gamma_q.apply(v) == m.gamma_q.apply(w);
}

/// W_0-orbit equality of classes in X_*(T)_Gamma.
inline bool gamma_class_w0_equal(const GroupModel& m, const Vec& v, const Vec& w) {
    Vec target = m.gamma_q.apply(w);
    for (const Mat& w0 : m.weyl0)
        if (m.gamma_q.apply(w0.apply(v)) == target) return true;
    return false;
}

inline bool vsp_classes_equal(const GroupModel& m, const KottwitzVsp& a, const KottwitzVsp& b) {
    return gamma_class_w0_equal(m, a.tau, b.tau);
}

/// [varpi^tau] in B(G,mu): the tau-class weight space of V_mu pushed to
/// X_*(T)_Gamma is nonzero. The class sum is W_0-invariant, so exact class
/// equality decides the dominantized comparison as well.
inline bool vsp_in_bgmu(const GroupModel& m, const Vec& tau, const Vec& mu) {
    repdetail::require_dominant(m.datum, mu, "vsp_in_bgmu");
    require_folded(m);
    Vec cls = m.gamma_q.apply(tau);
    Character ch = full_character(m.datum, mu);
    for (const auto& [w, mult] : ch.support) {
        (void)mult;
        if (m.gamma_q.apply(w) == cls) return true;
    }
    return false;
}

/// All very special classes in B(G,mu), as W_0-orbit representatives of weight
/// classes of V_mu in X_*(T)_Gamma.
inline std::vector<KottwitzVsp> enumerate_vsp_bgmu(const GroupModel& m, const Vec& mu) {
    repdetail::require_dominant(m.datum, mu, "enumerate_vsp_bgmu");
    require_folded(m);
    Character ch = full_character(m.datum, mu);
    std::vector<KottwitzVsp> out;
    std::set<Vec> seen;  // canonical W_0-orbit keys
    for (const auto& [w, mult] : ch.support) {
        (void)mult;
        Vec key = m.gamma_q.apply(w);
        for (const Mat& w0 : m.weyl0) key = std::min(key, m.gamma_q.apply(w0.apply(w)));
        if (seen.insert(key).second) out.push_back({w});
    }
    return out;
}

/// Image of X_*(Z_G) in the free part of X_*(T)_I, as columns.
inline Mat central_image_lattice(const GroupModel& m) {
    require_folded(m);
    std::vector<Vec> cols;
    for (const Vec& z : m.center) cols.push_back(m.inertia_q.apply_free(z));
    return columns_matrix(m.inertia_q.group.free_rank, cols);
}

/// Sum of the m sigma-translates of lambda_I (m = residual order).
inline Vec sigma_norm(const GroupModel& m, const Vec& lambda_I) {
    if (m.residual_order <= 0)
        throw DomainError("NonFiniteAction", "Frobenius has no finite residual order");
    Vec acc(lambda_I.size(), 0);
    Vec cur = lambda_I;
    for (int i = 0; i < m.residual_order; ++i) {
        acc = vec_add(acc, cur);
        cur = m.sigma_I.apply(cur);
    }
    return acc;
}

/// Lambda = { lambda_I : sum of sigma-translates lies in X_*(Z_G)_I }.
inline bool lambda_membership(const GroupModel& m, const Vec& lambda_I) {
    require_folded(m);
    return lattice_contains(central_image_lattice(m), sigma_norm(m, lambda_I));
}

inline std::vector<Vec> tate_lambda_set(const GroupModel& m, const Character& v) {
    std::vector<Vec> out;
    for (const auto& [w, mult] : v.support) {
        (void)mult;
        if (lambda_membership(m, w)) out.push_back(w);
    }
    return out;
}

/// dim V^{Tate} of a character over X_*(T)_I.
inline Int tate_dim_of_character(const GroupModel& m, const Character& v) {
    Int s = 0;
    for (const auto& [w, mult] : v.support)
        if (lambda_membership(m, w)) s += mult;
    return s;
}

/// Splitting side: V_mu as a representation of the inertia fixed points.
inline Int tate_dim_splitting(const GroupModel& m, const Vec& mu) {
    return tate_dim_of_character(m, restrict_character(m, mu));
}

/// Canonical side: the folded irreducible of highest weight mu_I.
inline Int tate_dim_canonical(const GroupModel& m, const Vec& mu_can) {
    const FoldedDatum& fd = require_folded(m);
    repdetail::require_dominant(fd.datum, mu_can, "tate_dim_canonical");
    return tate_dim_of_character(m, full_character(fd.datum, mu_can, "X_*(T)_I"));
}

struct BasicVspReport {
    bool very_special = false;
    Int tate_dim_canonical = 0;   // criterion: nontrivial Tate space of V_{mu_I}
    Int tate_dim_splitting = 0;
    bool adjoint_kappa_trivial = false;  // criterion: kappa of mu_adj vanishes
};

/// The basic element of B(G,mu) is very special. Evaluates two criteria, the
/// Tate-space one and the adjoint Kottwitz-invariant one, and insists they
/// agree. `adjoint` may be passed to reuse a precomputed adjoint model.
inline BasicVspReport basic_is_very_special(const GroupModel& m, const Vec& mu,
                                            const GroupModel* adjoint = nullptr) {
    repdetail::require_dominant(m.datum, mu, "basic_is_very_special");
    BasicVspReport rep;
    rep.tate_dim_canonical = tate_dim_canonical(m, m.inertia_q.apply_free(mu));
    rep.tate_dim_splitting = tate_dim_splitting(m, mu);

    GroupModel local_adj;
    if (!adjoint) {
        local_adj = adjoint_model(m);
        adjoint = &local_adj;
    }
    Vec mu_adj = to_adjoint_coords(m, mu);
    Vec kappa = adjoint->pi1_gamma_q.apply(mu_adj);
    rep.adjoint_kappa_trivial = vec_is_zero(kappa);

    if ((rep.tate_dim_canonical > 0) != rep.adjoint_kappa_trivial)
        throw DomainError("CriteriaDisagree",
                          "Tate-space and adjoint-kappa criteria disagree; this is a bug");
    rep.very_special = rep.adjoint_kappa_trivial;
    return rep;
}

}  // namespace grcomb
