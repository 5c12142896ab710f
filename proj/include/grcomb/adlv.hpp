#pragma once

// Affine Deligne-Lusztig combinatorics: nonemptiness, dimension, component
// counts for the splitting and canonical models, Satake correspondence
// dimensions, minimal twisting cocharacters, norm reduction.

#include "grcomb/kottwitz.hpp"

namespace grcomb {

/// The class parameter b of a query: a very special representative, the basic
/// class of B(G,mu), or an explicit (nu, kappa, defect) triple.
struct BParam {
    enum class Kind { VerySpecial, Basic, Explicit };
    Kind kind = Kind::Basic;
    Vec tau;                          // VerySpecial
    std::optional<Int> defect_hint;   // Basic, when not very special
    QVec nu;                          // Explicit
    Vec kappa;                        // Explicit: pi_1(G)_Gamma coordinates
    Int defect = 0;                   // Explicit
    std::optional<Vec> lambda_b_lift; // Explicit: lift in X_*(T) of lambda_b

    static BParam very_special(Vec tau) {
        BParam b;
        b.kind = Kind::VerySpecial;
        b.tau = std::move(tau);
        return b;
    }
    static BParam basic(std::optional<Int> defect = std::nullopt) {
        BParam b;
        b.kind = Kind::Basic;
        b.defect_hint = defect;
        return b;
    }
    static BParam explicit_triple(QVec nu, Vec kappa, Int defect,
                                  std::optional<Vec> lambda_b_lift = std::nullopt) {
        BParam b;
        b.kind = Kind::Explicit;
        b.nu = std::move(nu);
        b.kappa = std::move(kappa);
        b.defect = defect;
        b.lambda_b_lift = std::move(lambda_b_lift);
        return b;
    }
};

struct ResolvedB {
    QVec nu;
    Vec kappa;
    Int defect = 0;
    bool very_special = false;
    std::optional<Vec> lambda_b;  // class coordinates in X_*(T)_Gamma
};

inline ResolvedB resolve_b(const GroupModel& m, const Vec& mu, const BParam& b) {
    ResolvedB r;
    switch (b.kind) {
        case BParam::Kind::VerySpecial:
            r.nu = newton_point_vsp(m, b.tau).nu;
            r.kappa = kottwitz_invariant(m, b.tau);
            r.defect = 0;
            r.very_special = true;
            r.lambda_b = m.gamma_q.apply(b.tau);
            return r;
        case BParam::Kind::Basic: {
            r.nu = newton_basic(m, mu).nu;
            r.kappa = kottwitz_invariant(m, mu);
            BasicVspReport rep = basic_is_very_special(m, mu);
            if (rep.very_special) {
                r.defect = 0;
                r.very_special = true;
                Character res = restrict_character(m, mu);
                auto lams = tate_lambda_set(m, res);
                if (!lams.empty())
                    r.lambda_b = m.gamma_q.apply(m.inertia_q.lift_free(lams.front()));
            } else {
                if (!b.defect_hint)
                    throw DomainError("DefectRequired",
                                      "basic class is not very special; supply the defect");
                r.defect = *b.defect_hint;
            }
            return r;
        }
        case BParam::Kind::Explicit:
            if (!is_dominant(m.datum, b.nu))
                throw DomainError("NotDominant", "explicit Newton point must be dominant");
            for (const Mat& g : m.all_galois_gens())
                if (g.apply(b.nu) != b.nu)
                    throw DomainError("NotDominant", "explicit Newton point must be Galois-fixed");
            if (b.defect < 0) throw DomainError("DefectRequired", "defect must be nonnegative");
            r.nu = b.nu;
            r.kappa = b.kappa;
            r.defect = b.defect;
            if (b.lambda_b_lift) r.lambda_b = m.gamma_q.apply(*b.lambda_b_lift);
            return r;
    }
    throw DomainError("DefectRequired", "unreachable");
}

/// X(b) nonempty iff kappa(b) = kappa(mu) and nu_b <= Galois average of mu.
inline bool adlv_nonempty(const GroupModel& m, const Vec& mu, const ResolvedB& b) {
    repdetail::require_dominant(m.datum, mu, "adlv_nonempty");
    if (b.kappa != kottwitz_invariant(m, mu)) return false;
    return dominance_leq_rational(m.datum, b.nu, galois_average(m, mu));
}

/// dim = <rho, mu - nu_b> - defect/2, exact.
inline Int adlv_dimension(const GroupModel& m, const Vec& mu, const ResolvedB& b) {
    if (!adlv_nonempty(m, mu, b)) throw DomainError("EmptyVariety", "b is not in B(G,mu)");
    Rat two_dim = Rat(pairing_2rho(m.datum, mu)) - pairing_2rho(m.datum, b.nu) - b.defect;
    if (two_dim.denominator() != 1 || two_dim.numerator() % 2 != 0 || two_dim < Rat(0))
        throw DomainError("NonIntegralDimension", "dimension formula is not a nonnegative integer");
    return two_dim.numerator() / 2;
}

struct ComponentTable {
    std::string side;  // "splitting" or "canonical"
    std::vector<std::pair<Vec, Int>> rows;
    Int total = 0;
};

inline const Vec& require_lambda_b(const ResolvedB& b) {
    if (!b.lambda_b)
        throw DomainError("LambdaBUnavailable",
                          "component counting needs lambda_b; supply it for general b");
    return *b.lambda_b;
}

/// Splitting side: rows are weights lambda of V_mu with lambda_Gamma =
/// lambda_b, each counted with dim V_mu(lambda).
inline ComponentTable component_table(const GroupModel& m, const Vec& mu, const ResolvedB& b) {
    repdetail::require_dominant(m.datum, mu, "component_table");
    const Vec& lb = require_lambda_b(b);
    ComponentTable t;
    t.side = "splitting";
    Character ch = full_character(m.datum, mu);
    for (const auto& [w, mult] : ch.support)
        if (m.gamma_q.apply(w) == lb) {
            t.rows.push_back({w, mult});
            t.total += mult;
        }
    return t;
}

/// Canonical side for mu'_I <= mu_I: rows are folded weights lambda_I of
/// V_{mu'_I} whose class in X_*(T)_Gamma is lambda_b.
inline ComponentTable component_table_can(const GroupModel& m, const Vec& mu, const ResolvedB& b,
                                          const Vec& mu_prime_I) {
    const FoldedDatum& fd = require_folded(m);
    repdetail::require_dominant(m.datum, mu, "component_table_can");
    repdetail::require_dominant(fd.datum, mu_prime_I, "component_table_can");
    Vec mu_I = m.inertia_q.apply_free(mu);
    if (!dominance_leq(fd.datum, mu_prime_I, mu_I))
        throw DomainError("NotDominant", "mu'_I is not below mu_I in folded dominance");
    const Vec& lb = require_lambda_b(b);
    ComponentTable t;
    t.side = "canonical";
    Character ch = full_character(fd.datum, mu_prime_I, "X_*(T)_I");
    for (const auto& [w, mult] : ch.support) {
        Vec cls = m.gamma_q.apply(m.inertia_q.lift_free(w));
        if (cls == lb) {
            t.rows.push_back({w, mult});
            t.total += mult;
        }
    }
    return t;
}

inline bool is_minuscule(const GroupModel& m, const Vec& mu) {
    for (std::size_t i : m.datum.positive) {
        Int p = dot(m.datum.roots[i], mu);
        if (p < -1 || p > 1) return false;
    }
    return true;
}

inline bool center_is_connected(const GroupModel& m) {
    // Z_G is connected iff X^*(T)/(root lattice) is torsion-free
    return quotient_from_relations(m.datum.rank, m.datum.roots).group.torsion.empty();
}

struct VspCountFactorization {
    Int mv_factor = 0;
    std::string coset_factor;  // symbolic, never a number
    Int dimension = 0;         // <rho, mu - nu_b>
};

/// Component count for very special b and minuscule mu with connected center:
/// finite MV factor times the symbolic J_b(F)/J_b(O_F) coset marker.
inline VspCountFactorization very_special_count_factorization(const GroupModel& m, const Vec& mu,
                                                              const BParam& bp) {
    if (bp.kind != BParam::Kind::VerySpecial)
        throw DomainError("NotVerySpecial", "count factorization needs a very special class");
    if (!is_minuscule(m, mu)) throw DomainError("NotMinuscule", "mu is not minuscule");
    if (!center_is_connected(m))
        throw DomainError("NotVerySpecial", "count factorization assumes connected center");
    ResolvedB b = resolve_b(m, mu, bp);
    VspCountFactorization out;
    out.mv_factor = component_table(m, mu, b).total;
    out.coset_factor = "J_b(F)/J_b(O_F)";
    out.dimension = adlv_dimension(m, mu, b);
    return out;
}

/// dim Hom(V_{nu_I} (x) V_{mu_I}, V_{lambda_I}) over the folded datum.
inline Int satake_hom_dim_canonical(const GroupModel& m, const Vec& nu_I, const Vec& mu_I,
                                    const Vec& lambda_I) {
    const FoldedDatum& fd = require_folded(m);
    repdetail::require_dominant(fd.datum, nu_I, "satake_hom_dim");
    repdetail::require_dominant(fd.datum, mu_I, "satake_hom_dim");
    repdetail::require_dominant(fd.datum, lambda_I, "satake_hom_dim");
    auto dec = tensor_decompose(fd.datum, nu_I, mu_I);
    auto it = dec.find(lambda_I);
    return it == dec.end() ? 0 : it->second;
}

/// dim Hom(V_{nu_I} (x) V_mu|, V_{lambda_I}), mu a splitting highest weight.
inline Int satake_hom_dim_splitting(const GroupModel& m, const Vec& nu_I, const Vec& mu,
                                    const Vec& lambda_I) {
    repdetail::require_dominant(m.datum, mu, "satake_hom_dim");
    Int total = 0;
    for (const auto& [mu_prime, mult] : branch_to_invariants(m, mu))
        total += mult * satake_hom_dim_canonical(m, nu_I, mu_prime, lambda_I);
    return total;
}

/// Cardinality identities of the cartesian comparison square: the splitting
/// Satake count refines over branch components, and the splitting MV count
/// over folded weight multiplicities.
inline bool beta_fiber_check(const GroupModel& m, const Vec& nu_I, const Vec& mu,
                             const Vec& lambda_I) {
    const FoldedDatum& fd = require_folded(m);
    Vec mu_I = m.inertia_q.apply_free(mu);
    auto branch = branch_to_invariants(m, mu);

    // every branch component sits below mu_I
    for (const auto& [mu_prime, mult] : branch) {
        (void)mult;
        if (!dominance_leq(fd.datum, mu_prime, mu_I)) return false;
    }

    Int spl = satake_hom_dim_splitting(m, nu_I, mu, lambda_I);
    Int can_sum = 0;
    for (const auto& [mu_prime, mult] : branch)
        can_sum += mult * satake_hom_dim_canonical(m, nu_I, mu_prime, lambda_I);
    if (spl != can_sum) return false;

    Character res = restrict_character(m, mu);
    Int mv_spl = res.mult(lambda_I);
    Int mv_sum = 0;
    for (const auto& [mu_prime, mult] : branch) {
        Character piece = full_character(fd.datum, mu_prime, "X_*(T)_I");
        mv_sum += mult * piece.mult(lambda_I);
    }
    return mv_spl == mv_sum;
}

struct MinimalNu {
    Vec nu_I;       // one dominant representative of the minimal class
    Int hom_dim;    // witness multiplicity at nu_I
};

/// Minimal dominant nu_I with lambda_I + nu_I - sigma(nu_I) dominant and
/// Hom(V_{nu_I} (x) V_mu|, V_{lambda_I + nu_I}) nonzero. The search runs over
/// classes modulo the central directions (a witness is invariant under central
/// shifts), bounded by <two_rho_fold, nu_I>.
inline MinimalNu minimal_nu(const GroupModel& m, const Vec& mu, const Vec& lambda_I,
                            Int height_bound = 12) {
    const FoldedDatum& fd = require_folded(m);
    repdetail::require_dominant(m.datum, mu, "minimal_nu");
    {
        Character res = restrict_character(m, mu);
        if (res.mult(lambda_I) == 0)
            throw DomainError("NotAWeight", "lambda_I is not a weight of the restriction");
    }
    const RootDatum& fold = fd.datum;
    std::size_t s = fold.num_simple();
    Mat pairings(s, fold.rank);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < fold.rank; ++j) pairings(i, j) = fold.simple_root(i)[j];

    std::vector<std::pair<Vec, Int>> witnesses;  // (nu rep, hom dim)
    std::vector<Int> p(s, 0);
    std::function<void(std::size_t, Int)> rec = [&](std::size_t k, Int used) {
        if (k == s) {
            auto nu = solve_integer(pairings, Vec(p));
            if (!nu) return;
            if (pairing_2rho(fold, *nu) > height_bound) return;
            Vec target = vec_add(lambda_I, vec_sub(*nu, fd.sigma.apply(*nu)));
            if (!is_dominant(fold, target)) return;
            Vec hom_target = vec_add(lambda_I, *nu);
            if (!is_dominant(fold, hom_target)) return;
            Int h = satake_hom_dim_splitting(m, *nu, mu, hom_target);
            if (h > 0) witnesses.push_back({*nu, h});
            return;
        }
        for (Int v = 0; used + v <= height_bound; ++v) {
            p[k] = v;
            rec(k + 1, used + v);
        }
        p[k] = 0;
    };
    rec(0, 0);

    if (witnesses.empty())
        throw DomainError("SearchBoundExceeded",
                          "no witness within height bound " + std::to_string(height_bound));
    const std::pair<Vec, Int>* best = nullptr;
    for (const auto& w : witnesses) {
        bool minimal = true;
        for (const auto& other : witnesses) {
            Vec diff = vec_sub(other.first, w.first);
            if (!is_dominant(fold, diff)) {
                minimal = false;
                break;
            }
        }
        if (minimal) {
            if (best) throw DomainError("SearchBoundExceeded", "minimal witness is not unique");
            best = &w;
        }
    }
    if (!best)
        throw DomainError("SearchBoundExceeded",
                          "witnesses within the bound have no common minimum");
    return {best->first, best->second};
}

struct NormReduction {
    std::vector<Vec> mu_tuple;  // (mu_0, sigma mu_1, ..., sigma^{f-1} mu_{f-1})
    Vec nm_b;                   // sum of sigma^i b_i, a coweight of the norm target
    Int pairing_lhs = 0, pairing_rhs = 0;        // <2rho_G, mu> vs <2rho_H, sum>
    Rat newton_lhs, newton_rhs;                  // <2rho_G, nu_b> vs <2rho_H, nu_{Nm b}>
    bool identities_hold = false;
};

/// Unramified norm reduction for an f-fold Res preset (single factor, e = 1).
inline NormReduction norm_reduce(const GroupModel& m, const Vec& mu, const Vec& b_tau) {
    if (!m.preset || m.preset->factors.size() != 1 || m.preset->factors[0].e != 1)
        throw DomainError("NotResUnramPreset",
                          "norm reduction needs a single-factor unramified Res preset");
    const EssUnramFactor& fac = m.preset->factors[0];
    const int f = fac.f;

    EssUnramFactor base = fac;
    base.f = 1;
    GroupModel h = build_from_descriptor({{base}}, m.label + " (norm target)");
    const Mat& theta = h.action.frobenius;
    const std::size_t rb = h.datum.rank;

    auto block = [&](const Vec& v, int i) {
        Vec out(rb);
        for (std::size_t k = 0; k < rb; ++k) out[k] = v[static_cast<std::size_t>(i) * rb + k];
        return out;
    };
    auto theta_pow = [&](Vec v, int i) {
        for (int t = 0; t < i; ++t) v = theta.apply(v);
        return v;
    };

    NormReduction out;
    Vec sum(rb, 0), nm(rb, 0);
    for (int i = 0; i < f; ++i) {
        Vec mi = theta_pow(block(mu, i), i);
        out.mu_tuple.push_back(mi);
        sum = vec_add(sum, mi);
        nm = vec_add(nm, theta_pow(block(b_tau, i), i));
    }
    out.nm_b = nm;

    out.pairing_lhs = pairing_2rho(m.datum, mu);
    out.pairing_rhs = pairing_2rho(h.datum, sum);
    out.newton_lhs = pairing_2rho(m.datum, newton_point_vsp(m, b_tau).nu);
    out.newton_rhs = pairing_2rho(h.datum, newton_point_vsp(h, nm).nu);
    out.identities_hold =
        (out.pairing_lhs == out.pairing_rhs) && (out.newton_lhs == out.newton_rhs);
    return out;
}

struct BasicStratumCount {
    Int mv_tate_count = 0;            // |MV^{spl,Tate}| = splitting Tate dimension
    Int rho_mu = 0;                   // equidimensionality constant <rho, mu>
    std::vector<Vec> tate_weights;    // contributing lambda_I
};

/// Irreducible-component count of the basic stratum: the finite MV factor and
/// the dimension constant. Requires the basic class to be very special.
inline BasicStratumCount basic_stratum_mv_count(const GroupModel& m, const Vec& mu) {
    BasicVspReport rep = basic_is_very_special(m, mu);
    if (!rep.very_special)
        throw DomainError("BasicNotVerySpecial", "the basic class of B(G,mu) is not very special");
    BasicStratumCount out;
    Character res = restrict_character(m, mu);
    out.mv_tate_count = tate_dim_of_character(m, res);
    out.tate_weights = tate_lambda_set(m, res);
    Int two = pairing_2rho(m.datum, mu);
    if (two % 2 != 0)
        throw DomainError("NonIntegralDimension", "<2rho, mu> is odd for a very special basic class");
    out.rho_mu = two / 2;
    return out;
}

}  // namespace grcomb
