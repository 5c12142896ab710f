#pragma once

// Exact character arithmetic. All functions below take a root datum D and
// work with representations of the dual group of D: highest weights and
// weights are cocharacters of D, dominance is tested against the roots of D.

#include "grcomb/model.hpp"

#include <functional>

namespace grcomb {

/// Finitely supported weight multiset with positive multiplicities.
struct Character {
    std::string lattice;  // informational tag: which lattice the weights live in
    std::map<Vec, Int> support;

    Int dim() const {
        Int s = 0;
        for (const auto& [w, m] : support) s += m;
        return s;
    }
    Int mult(const Vec& w) const {
        auto it = support.find(w);
        return it == support.end() ? 0 : it->second;
    }
    void add(const Vec& w, Int m) {
        if (m == 0) return;
        auto it = support.emplace(w, 0).first;
        it->second += m;
        if (it->second == 0) support.erase(it);
    }
};

inline Character character_sum(const Character& a, const Character& b) {
    Character c = a;
    for (const auto& [w, m] : b.support) c.add(w, m);
    return c;
}

inline Character character_product(const Character& a, const Character& b) {
    Character c;
    c.lattice = a.lattice;
    for (const auto& [w1, m1] : a.support)
        for (const auto& [w2, m2] : b.support) c.add(vec_add(w1, w2), m1 * m2);
    return c;
}

inline Character character_dual(const Character& a) {
    Character c;
    c.lattice = a.lattice;
    for (const auto& [w, m] : a.support) c.add(vec_neg(w), m);
    return c;
}

namespace repdetail {

inline void require_dominant(const RootDatum& rd, const Vec& mu, const char* who) {
    if (!is_dominant(rd, mu))
        throw DomainError("NotDominant", std::string(who) + ": highest weight is not dominant");
}

/// W-invariant symmetric form B(v,w) = sum_{alpha>0} <alpha,v><alpha,w>.
inline Int form(const RootDatum& rd, const Vec& v, const Vec& w) {
    Int s = 0;
    for (std::size_t i : rd.positive) s += dot(rd.roots[i], v) * dot(rd.roots[i], w);
    return s;
}

inline Vec sum_positive_coroots(const RootDatum& rd) {
    Vec t(rd.rank, 0);
    for (std::size_t i : rd.positive) t = vec_add(t, rd.coroots[i]);
    return t;
}

/// Dominant lattice points lambda <= mu: lambda = mu - sum c_k beta_k^vee with
/// c_k >= 0. Since <two_rho, beta^vee> = 2 for simple coroots, sum c_k is
/// bounded by <two_rho, mu>/2.
inline std::vector<Vec> dominant_weights_below(const RootDatum& rd, const Vec& mu) {
    std::vector<Vec> out;
    Int budget = pairing_2rho(rd, mu) / 2;
    std::size_t s = rd.num_simple();
    std::vector<Int> c(s, 0);
    std::function<void(std::size_t, Int, Vec)> rec = [&](std::size_t k, Int left, Vec cur) {
        if (k == s) {
            if (is_dominant(rd, cur)) out.push_back(cur);
            return;
        }
        rec(k + 1, left, cur);
        for (Int ck = 1; ck <= left; ++ck) {
            cur = vec_sub(cur, rd.simple_coroot(k));
            rec(k + 1, left - ck, cur);
        }
    };
    rec(0, budget, mu);
    return out;
}

}  // namespace repdetail

namespace repdetail {

// Thread-local memo caches. Results are value-identical across threads, so
// per-thread duplication is harmless; nothing is ever torn.
using DatumKey = std::tuple<std::size_t, std::vector<Vec>, std::vector<Vec>>;

inline DatumKey datum_key(const RootDatum& rd) { return {rd.rank, rd.roots, rd.coroots}; }

}  // namespace repdetail

/// Multiplicities of the dominant weights of the irreducible of highest weight
/// mu, by the Freudenthal recursion. Memoized per thread.
inline std::map<Vec, Int> dominant_multiplicities(const RootDatum& rd, const Vec& mu) {
    using namespace repdetail;
    require_dominant(rd, mu, "dominant_multiplicities");

    using Key = std::pair<DatumKey, Vec>;
    thread_local std::map<Key, std::map<Vec, Int>> cache;
    Key key{datum_key(rd), mu};
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    std::vector<Vec> doms = dominant_weights_below(rd, mu);
    std::sort(doms.begin(), doms.end(), [&](const Vec& a, const Vec& b) {
        Int ha = pairing_2rho(rd, a), hb = pairing_2rho(rd, b);
        if (ha != hb) return ha > hb;
        return a < b;
    });
    std::map<Vec, Int> mult;
    auto lookup = [&](const Vec& lambda) -> Int {
        Vec dom = dominant_representative(rd, lambda).vec;
        auto it = mult.find(dom);
        return it == mult.end() ? 0 : it->second;
    };

    Vec t = sum_positive_coroots(rd);  // = 2 rho-hat of the dual group
    Vec u = vec_add(vec_scale(2, mu), t);
    Int uu = form(rd, u, u);

    for (const Vec& lambda : doms) {
        if (lambda == mu) {
            mult[mu] = 1;
            continue;
        }
        Int numerator = 0;
        for (std::size_t i : rd.positive) {
            const Vec& coalpha = rd.coroots[i];
            for (Int k = 1;; ++k) {
                Vec shifted = vec_add(lambda, vec_scale(k, coalpha));
                Int m = lookup(shifted);
                if (m == 0) break;  // weight strings are intervals
                numerator += m * form(rd, shifted, coalpha);
            }
        }
        // (|mu+rho|^2 - |lambda+rho|^2) m = 2*numerator, on doubled vectors:
        Vec v = vec_add(vec_scale(2, lambda), t);
        Int denom = uu - form(rd, v, v);
        if (denom <= 0 || (8 * numerator) % denom != 0)
            throw DomainError("InvalidRootDatum", "Freudenthal division failure");
        mult[lambda] = 8 * numerator / denom;
    }
    cache[key] = mult;
    return mult;
}

inline Int weight_multiplicity(const RootDatum& rd, const Vec& mu, const Vec& lambda) {
    repdetail::require_dominant(rd, mu, "weight_multiplicity");
    auto table = dominant_multiplicities(rd, mu);
    Vec dom = dominant_representative(rd, lambda).vec;
    auto it = table.find(dom);
    return it == table.end() ? 0 : it->second;
}

inline Int weyl_dimension(const RootDatum& rd, const Vec& mu) {
    using namespace repdetail;
    require_dominant(rd, mu, "weyl_dimension");
    Vec t = sum_positive_coroots(rd);
    Vec u = vec_add(vec_scale(2, mu), t);
    Rat dim(1);
    for (std::size_t i : rd.positive) dim *= Rat(dot(rd.roots[i], u), dot(rd.roots[i], t));
    if (dim.denominator() != 1 || dim.numerator() <= 0)
        throw DomainError("InvalidRootDatum", "Weyl dimension is not a positive integer");
    return dim.numerator();
}

inline const std::vector<WeylElement>& cached_weyl_elements(const RootDatum& rd) {
    thread_local std::map<repdetail::DatumKey, std::vector<WeylElement>> cache;
    auto key = repdetail::datum_key(rd);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, weyl_elements(rd)).first;
    return it->second;
}

inline Character full_character(const RootDatum& rd, const Vec& mu,
                                const std::string& lattice_tag = "X_*(T)") {
    auto table = dominant_multiplicities(rd, mu);
    const auto& weyl = cached_weyl_elements(rd);
    Character ch;
    ch.lattice = lattice_tag;
    for (const auto& [lambda, m] : table) {
        std::set<Vec> orbit;
        for (const auto& w : weyl) orbit.insert(w.mat.apply(lambda));
        for (const Vec& x : orbit) ch.add(x, m);
    }
    return ch;
}

constexpr std::size_t kOracleRankBound = 6;

/// Independent character oracle: exact division of Weyl alternating sums,
/// computed on the doubled lattice to avoid half-integral shifts.
inline Character oracle_character(const RootDatum& rd, const Vec& mu,
                                  std::size_t rank_bound = kOracleRankBound) {
    using namespace repdetail;
    require_dominant(rd, mu, "oracle_character");
    if (rd.rank > rank_bound)
        throw DomainError("OracleBoundExceeded",
                          "datum rank " + std::to_string(rd.rank) + " exceeds oracle bound " +
                              std::to_string(rank_bound));

    Vec t = sum_positive_coroots(rd);
    auto weyl = weyl_elements(rd);

    auto alternating = [&](const Vec& v) {
        std::map<Vec, Int> poly;
        for (const auto& w : weyl) poly[w.mat.apply(v)] += w.sign;
        return poly;
    };
    std::map<Vec, Int> num = alternating(vec_add(vec_scale(2, mu), t));
    std::map<Vec, Int> den = alternating(t);

    // exact Laurent division in lexicographic leading-term order
    std::map<Vec, Int> quot;
    Vec den_lead;
    Int den_coeff = 0;
    for (auto it = den.rbegin(); it != den.rend(); ++it)
        if (it->second != 0) {
            den_lead = it->first;
            den_coeff = it->second;
            break;
        }
    std::size_t guard = 0;
    while (!num.empty()) {
        auto it = num.rbegin();
        while (it != num.rend() && it->second == 0) ++it;
        if (it == num.rend()) break;
        Vec lead = it->first;
        Int coeff = it->second;
        if (coeff % den_coeff != 0)
            throw DomainError("InvalidRootDatum", "oracle division is not exact");
        Vec shift = vec_sub(lead, den_lead);
        Int q = coeff / den_coeff;
        quot[shift] += q;
        for (const auto& [e, c] : den) {
            if (c == 0) continue;
            Vec target = vec_add(e, shift);
            auto jt = num.emplace(target, 0).first;
            jt->second -= q * c;
            if (jt->second == 0) num.erase(jt);
        }
        if (++guard > 2000000) throw DomainError("OracleBoundExceeded", "oracle division too large");
    }

    Character ch;
    ch.lattice = "X_*(T)";
    for (const auto& [e2, c] : quot) {
        if (c == 0) continue;
        Vec e(e2.size());
        for (std::size_t i = 0; i < e2.size(); ++i) {
            if (e2[i] % 2 != 0) throw DomainError("InvalidRootDatum", "oracle produced odd exponent");
            e[i] = e2[i] / 2;
        }
        if (c < 0) throw DomainError("InvalidRootDatum", "oracle produced negative multiplicity");
        ch.add(e, c);
    }
    return ch;
}

/// Brauer-Klimyk: decompose the tensor product of two irreducibles of the dual
/// group into dominant highest weights with multiplicities.
inline std::map<Vec, Int> tensor_decompose(const RootDatum& rd, const Vec& mu1, const Vec& mu2) {
    using namespace repdetail;
    require_dominant(rd, mu1, "tensor_decompose");
    require_dominant(rd, mu2, "tensor_decompose");

    using Key = std::tuple<DatumKey, Vec, Vec>;
    thread_local std::map<Key, std::map<Vec, Int>> cache;
    Key key{datum_key(rd), mu1, mu2};
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    Character ch1 = full_character(rd, mu1);
    Vec t = sum_positive_coroots(rd);
    std::map<Vec, Int> out;
    for (const auto& [lambda, m] : ch1.support) {
        Vec xi2 = vec_add(vec_add(vec_scale(2, lambda), vec_scale(2, mu2)), t);
        auto domres = dominant_representative(rd, xi2);
        bool singular = false;  // rho-shifted weight on a wall contributes nothing
        for (std::size_t k = 0; k < rd.num_simple() && !singular; ++k)
            if (dot(rd.simple_root(k), domres.vec) == 0) singular = true;
        if (singular) continue;
        int sign = (domres.word.size() % 2 == 0) ? 1 : -1;
        Vec nu2 = vec_sub(domres.vec, t);
        Vec nu(nu2.size());
        for (std::size_t i = 0; i < nu2.size(); ++i) {
            if (nu2[i] % 2 != 0) throw DomainError("InvalidRootDatum", "tensor shift parity failure");
            nu[i] = nu2[i] / 2;
        }
        out[nu] += m * sign;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0)
            it = out.erase(it);
        else if (it->second < 0)
            throw DomainError("InvalidRootDatum", "negative tensor multiplicity");
        else
            ++it;
    }
    cache[key] = out;
    return out;
}

/// Dominant coweights with <two_rho, mu> <= height, one representative per
/// coset of the central directions: enumerate the simple pairing vectors and
/// solve for a preimage.
inline std::vector<Vec> dominant_sweep(const RootDatum& rd, Int height) {
    std::vector<Vec> out;
    std::size_t s = rd.num_simple();
    Mat pairings(s, rd.rank);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < rd.rank; ++j) pairings(i, j) = rd.simple_root(i)[j];

    std::vector<Int> p(s, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == s) {
            auto mu = solve_integer(pairings, Vec(p));
            if (!mu) return;
            if (is_dominant(rd, *mu) && pairing_2rho(rd, *mu) <= height) out.push_back(*mu);
            return;
        }
        for (Int v = 0; v <= height; ++v) {
            p[k] = v;
            rec(k + 1);
            // each unit of a simple pairing contributes at least one to the height
            Int used = 0;
            for (std::size_t i = 0; i <= k; ++i) used += p[i];
            if (used >= height) break;
        }
        p[k] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline const FoldedDatum& require_folded(const GroupModel& m) {
    if (!m.folded)
        throw DomainError(m.folded_error.empty() ? "TorsionInCoinvariants" : m.folded_error,
                          "model has no folded datum on X_*(T)_I");
    return *m.folded;
}

/// Pushforward of the character of V_mu along X_*(T) ->> X_*(T)_I.
inline Character restrict_character(const GroupModel& m, const Vec& mu) {
    const FoldedDatum& fd = require_folded(m);
    (void)fd;
    Character abs = full_character(m.datum, mu);
    Character out;
    out.lattice = "X_*(T)_I";
    for (const auto& [w, c] : abs.support) out.add(m.inertia_q.apply_free(w), c);
    return out;
}

/// Decompose V_mu restricted to the inertia fixed points of the dual group
/// into folded irreducibles, by leading-term subtraction.
inline std::map<Vec, Int> branch_to_invariants(const GroupModel& m, const Vec& mu) {
    const FoldedDatum& fd = require_folded(m);

    using Key = std::tuple<repdetail::DatumKey, std::vector<Int>, Vec>;
    thread_local std::map<Key, std::map<Vec, Int>> cache;
    Key key{repdetail::datum_key(m.datum), m.inertia_q.projection.a, mu};
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    Character rest = restrict_character(m, mu);
    const RootDatum& fold = fd.datum;

    std::map<Vec, Int> out;
    std::size_t guard = 0;
    while (!rest.support.empty()) {
        // maximal weight in (height, lex) order; W^I-invariance makes it dominant
        auto best = rest.support.begin();
        Int best_h = pairing_2rho(fold, best->first);
        for (auto it = rest.support.begin(); it != rest.support.end(); ++it) {
            Int h = pairing_2rho(fold, it->first);
            if (h > best_h || (h == best_h && it->first > best->first)) {
                best = it;
                best_h = h;
            }
        }
        Vec lead = best->first;
        Int mult = best->second;
        if (!is_dominant(fold, lead) || mult < 0)
            throw DomainError("NegativeMultiplicity", "branching leading term failure");
        out[lead] += mult;
        Character piece = full_character(fold, lead, "X_*(T)_I");
        for (const auto& [w, c] : piece.support) {
            rest.add(w, -mult * c);
            if (rest.mult(w) < 0)
                throw DomainError("NegativeMultiplicity", "branching produced a negative remainder");
        }
        if (++guard > 100000) throw DomainError("NegativeMultiplicity", "branching does not terminate");
    }
    cache[key] = out;
    return out;
}

}  // namespace grcomb
