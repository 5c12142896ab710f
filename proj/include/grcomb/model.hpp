#pragma once

#include "grcomb/cartan.hpp"

#include <optional>
#include <sstream>

namespace grcomb {

/// Galois data: integer matrices acting on X_*(T). Inertia generators together
/// with one Frobenius lift.
struct GaloisAction {
    std::vector<Mat> inertia_gens;
    Mat frobenius;
};

struct EssUnramFactor {
    CartanType type = CartanType::A;
    int n = 1;
    Isogeny isogeny = Isogeny::SimplyConnected;
    int e = 1;
    int f = 1;
    std::vector<std::size_t> diagram_aut;  // permutation of simple indices
};

struct EssUnramDescriptor {
    std::vector<EssUnramFactor> factors;
};

/// Inertia-folded datum on the free part of X_*(T)_I. Its coroots are the
/// images of the coroots of G (the roots of the fixed-point dual group), its
/// roots are inertia-orbit sums of the roots of G.
struct FoldedDatum {
    RootDatum datum;
    Mat sigma;  // residual Frobenius on the free part of X_*(T)_I
};

struct GroupModel {
    RootDatum datum;
    GaloisAction action;
    std::string label;
    std::optional<EssUnramDescriptor> preset;

    QuotientMap inertia_q;  // X_*(T) ->> X_*(T)_I
    QuotientMap gamma_q;    // X_*(T) ->> X_*(T)_Gamma
    int residual_order = 0;  // m; 0 when sigma has no finite order on X_*(T)_I
    Mat sigma_I;             // sigma on the free part of X_*(T)_I
    bool sigma_descends = true;
    std::optional<FoldedDatum> folded;
    std::string folded_error;
    std::vector<Vec> center;          // basis of X_*(Z_G)
    std::vector<WeylElement> weyl;    // absolute Weyl group on X_*(T)
    std::vector<Mat> weyl0;           // W_0 = W^Gamma
    QuotientMap pi1_q;                // X_*(T) ->> pi_1(G)
    QuotientMap pi1_gamma_q;          // X_*(T) ->> pi_1(G)_Gamma

    std::vector<Mat> all_galois_gens() const {
        std::vector<Mat> g = action.inertia_gens;
        g.push_back(action.frobenius);
        return g;
    }
};

namespace detail {

inline std::optional<Mat> integer_inverse(const Mat& m) {
    if (m.rows != m.cols) return std::nullopt;
    Mat inv(m.rows, m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) {
        Vec e(m.rows, 0);
        e[j] = 1;
        auto col = solve_integer(m, e);
        if (!col) return std::nullopt;
        for (std::size_t i = 0; i < m.rows; ++i) inv(i, j) = (*col)[i];
    }
    return inv;
}

/// Contragredient action on X^*(T) of a matrix acting on X_*(T).
inline std::optional<Mat> dual_action(const Mat& m) {
    auto inv = integer_inverse(m);
    if (!inv) return std::nullopt;
    return inv->transpose();
}

inline Mat block_diagonal(const std::vector<Mat>& blocks) {
    std::size_t n = 0;
    for (const Mat& b : blocks) n += b.rows;
    Mat out(n, n);
    std::size_t off = 0;
    for (const Mat& b : blocks) {
        for (std::size_t i = 0; i < b.rows; ++i)
            for (std::size_t j = 0; j < b.cols; ++j) out(off + i, off + j) = b(i, j);
        off += b.rows;
    }
    return out;
}

inline FoldedDatum build_folded(const RootDatum& rd, const QuotientMap& iq, const Mat& sigma_I,
                                const std::vector<Mat>& inertia_gens) {
    if (!iq.group.is_torsion_free())
        throw DomainError("TorsionInCoinvariants", "X_*(T)_I has torsion");

    std::vector<Mat> closure = group_closure(inertia_gens, rd.rank);

    FoldedDatum fd;
    fd.sigma = sigma_I;
    RootDatum& fold = fd.datum;
    fold.rank = iq.group.free_rank;

    std::map<Vec, std::size_t> index_of_image;
    std::vector<std::size_t> preimage;  // one datum index per image coroot
    for (std::size_t i = 0; i < rd.coroots.size(); ++i) {
        Vec img = iq.apply_free(rd.coroots[i]);
        auto it = index_of_image.find(img);
        if (it == index_of_image.end()) {
            index_of_image[img] = fold.coroots.size();
            fold.coroots.push_back(img);
            preimage.push_back(i);
        }
    }
    // reducedness of the image system
    for (const auto& [img, idx] : index_of_image) {
        (void)idx;
        Vec twice = vec_scale(2, img);
        if (index_of_image.count(twice))
            throw DomainError("NonReducedFolding", "image root system is not reduced");
    }

    // folded root = inertia-orbit sum of the root, restricted along the section
    for (std::size_t k = 0; k < fold.coroots.size(); ++k) {
        const Vec& root = rd.roots[preimage[k]];
        std::set<Vec> orbit;
        for (const Mat& g : closure) {
            auto gd = dual_action(g);
            if (!gd) throw DomainError("InvalidRootDatum", "inertia matrix is not unimodular");
            orbit.insert(gd->apply(root));
        }
        Vec sum(rd.rank, 0);
        for (const Vec& r : orbit) sum = vec_add(sum, r);
        fold.roots.push_back(iq.section.transpose().apply(sum));
        if (dot(fold.roots.back(), fold.coroots[k]) != 2)
            throw DomainError("InvalidRootDatum", "folded pairing is not 2");
    }

    // consistency: every preimage of an image coroot folds to the same root
    for (std::size_t i = 0; i < rd.coroots.size(); ++i) {
        Vec img = iq.apply_free(rd.coroots[i]);
        std::size_t k = index_of_image.at(img);
        std::set<Vec> orbit;
        for (const Mat& g : closure) orbit.insert(dual_action(g)->apply(rd.roots[i]));
        Vec sum(rd.rank, 0);
        for (const Vec& r : orbit) sum = vec_add(sum, r);
        if (iq.section.transpose().apply(sum) != fold.roots[k])
            throw DomainError("InvalidRootDatum", "inconsistent folded roots");
    }

    for (std::size_t k = 0; k < rd.num_simple(); ++k) {
        Vec img = iq.apply_free(rd.simple_coroot(k));
        std::size_t idx = index_of_image.at(img);
        if (std::find(fold.simple.begin(), fold.simple.end(), idx) == fold.simple.end())
            fold.simple.push_back(idx);
    }
    fold = finalize(fold);
    return fd;
}

}  // namespace detail

/// Assemble the derived data of a model. Tolerates pinning violations (those
/// are reported by validate), but requires finite lattice actions.
inline GroupModel build_group_model(RootDatum datum, GaloisAction action, std::string label,
                                    std::optional<EssUnramDescriptor> preset = std::nullopt) {
    GroupModel m;
    m.datum = std::move(datum);
    m.action = std::move(action);
    m.label = std::move(label);
    m.preset = std::move(preset);
    const std::size_t n = m.datum.rank;

    m.inertia_q = coinvariants(n, m.action.inertia_gens);
    m.gamma_q = coinvariants(n, m.all_galois_gens());

    // sigma on the free part of X_*(T)_I
    const std::size_t r = m.inertia_q.group.free_rank;
    Mat qs = m.inertia_q.projection;  // includes torsion rows; free rows first
    Mat sig_full = qs.mul(m.action.frobenius.mul(m.inertia_q.section));
    m.sigma_I = Mat(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m.sigma_I(i, j) = sig_full(i, j);
    // descent check: projection . sigma == extended(sigma_I) . projection on free rows
    {
        Mat lhs = m.inertia_q.projection.mul(m.action.frobenius);
        Mat rhs = m.sigma_I.mul(Mat(r, n));
        Mat proj_free(r, n);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < n; ++j) proj_free(i, j) = m.inertia_q.projection(i, j);
        rhs = m.sigma_I.mul(proj_free);
        m.sigma_descends = true;
        for (std::size_t i = 0; i < r && m.sigma_descends; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (lhs(i, j) != rhs(i, j)) {
                    m.sigma_descends = false;
                    break;
                }
    }

    // residual order: least k with (sigma^k - 1)X_*(T) inside the inertia relations
    m.residual_order = 0;
    Mat power = Mat::identity(n);
    for (int k = 1; k <= 512; ++k) {
        power = m.action.frobenius.mul(power);
        bool trivial = true;
        for (std::size_t i = 0; i < n && trivial; ++i) {
            Vec e(n, 0);
            e[i] = 1;
            Vec diff = vec_sub(power.apply(e), e);
            if (!vec_is_zero(diff) && !m.inertia_q.kills(diff)) trivial = false;
        }
        if (trivial) {
            m.residual_order = k;
            break;
        }
    }

    try {
        m.folded = detail::build_folded(m.datum, m.inertia_q, m.sigma_I, m.action.inertia_gens);
    } catch (const DomainError& e) {
        m.folded.reset();
        m.folded_error = e.name();
    }

    m.center = central_cocharacters(m.datum);
    m.weyl = weyl_elements(m.datum);
    for (const WeylElement& w : m.weyl) {
        bool commutes = true;
        for (const Mat& g : m.all_galois_gens())
            if (g.mul(w.mat) != w.mat.mul(g)) {
                commutes = false;
                break;
            }
        if (commutes) m.weyl0.push_back(w.mat);
    }

    m.pi1_q = quotient_from_relations(n, m.datum.coroots);
    {
        std::vector<Vec> rels = m.datum.coroots;
        for (const Mat& g : m.all_galois_gens())
            for (std::size_t i = 0; i < n; ++i) {
                Vec e(n, 0);
                e[i] = 1;
                Vec d = vec_sub(g.apply(e), e);
                if (!vec_is_zero(d)) rels.push_back(d);
            }
        m.pi1_gamma_q = quotient_from_relations(n, rels);
    }
    return m;
}

/// Res_{F_i/F} assembly: e*f copies of each factor datum, inertia shifting the
/// e copies inside each block, Frobenius shifting the f blocks with the diagram
/// automorphism applied on wrap-around.
inline GroupModel build_from_descriptor(const EssUnramDescriptor& desc, std::string label = "") {
    if (desc.factors.empty()) throw DomainError("UnsupportedType", "descriptor has no factors");

    struct FactorLayout {
        std::size_t offset = 0, copy_rank = 0;
        int e = 1, f = 1;
    };
    std::vector<FactorLayout> layout;
    std::size_t total = 0;

    RootDatum big;
    std::vector<Mat> inertia_gens;
    std::vector<Mat> frob_blocks;

    for (const EssUnramFactor& fac : desc.factors) {
        if (fac.e < 1 || fac.f < 1) throw DomainError("UnsupportedType", "e and f must be >= 1");
        RootDatum base = base_factor_datum(fac.type, fac.n, fac.isogeny);
        std::vector<std::size_t> aut = fac.diagram_aut;
        if (aut.empty())
            for (int i = 0; i < fac.n; ++i) aut.push_back(static_cast<std::size_t>(i));
        Mat theta = diagram_aut_matrix(fac.type, fac.n, fac.isogeny, aut);

        const std::size_t rb = base.rank;
        const std::size_t copies = static_cast<std::size_t>(fac.e) * fac.f;
        const std::size_t frank = rb * copies;
        const std::size_t off = total;
        layout.push_back({off, rb, fac.e, fac.f});
        total += frank;

        big.rank = total;
        for (Vec& v : big.roots) v.resize(total, 0);
        for (Vec& v : big.coroots) v.resize(total, 0);

        auto slot = [&](int b, int j) { return off + (static_cast<std::size_t>(b) * fac.e + j) * rb; };

        for (int b = 0; b < fac.f; ++b)
            for (int j = 0; j < fac.e; ++j)
                for (std::size_t i = 0; i < base.roots.size(); ++i) {
                    Vec root(total, 0), coroot(total, 0);
                    for (std::size_t k = 0; k < rb; ++k) {
                        root[slot(b, j) + k] = base.roots[i][k];
                        coroot[slot(b, j) + k] = base.coroots[i][k];
                    }
                    if (std::find(base.simple.begin(), base.simple.end(), i) != base.simple.end())
                        big.simple.push_back(big.roots.size());
                    big.roots.push_back(root);
                    big.coroots.push_back(coroot);
                }

        if (fac.e > 1) {
            Mat gen(frank, frank);
            for (int b = 0; b < fac.f; ++b)
                for (int j = 0; j < fac.e; ++j) {
                    int j2 = (j + 1) % fac.e;
                    for (std::size_t k = 0; k < rb; ++k)
                        gen(slot(b, j2) - off + k, slot(b, j) - off + k) = 1;
                }
            inertia_gens.push_back(gen);  // padded below
        } else {
            inertia_gens.push_back(Mat());  // marker: no generator for this factor
        }

        Mat frob(frank, frank);
        for (int b = 0; b < fac.f; ++b)
            for (int j = 0; j < fac.e; ++j) {
                int b2 = (b + 1) % fac.f;
                bool wrap = (b == fac.f - 1);
                for (std::size_t k = 0; k < rb; ++k)
                    for (std::size_t l = 0; l < rb; ++l) {
                        Int entry = wrap ? theta(k, l) : (k == l ? 1 : 0);
                        if (entry != 0) frob(slot(b2, j) - off + k, slot(b, j) - off + l) = entry;
                    }
            }
        frob_blocks.push_back(frob);
    }

    // pad factor-level matrices to the full rank
    GaloisAction action;
    for (std::size_t fi = 0; fi < desc.factors.size(); ++fi) {
        if (inertia_gens[fi].rows == 0) continue;
        const FactorLayout& L = layout[fi];
        std::size_t frank = L.copy_rank * static_cast<std::size_t>(L.e) * L.f;
        Mat g = Mat::identity(total);
        for (std::size_t i = 0; i < frank; ++i)
            for (std::size_t j = 0; j < frank; ++j) g(L.offset + i, L.offset + j) = inertia_gens[fi](i, j);
        action.inertia_gens.push_back(g);
    }
    {
        Mat s = Mat::identity(total);
        for (std::size_t fi = 0; fi < desc.factors.size(); ++fi) {
            const FactorLayout& L = layout[fi];
            std::size_t frank = L.copy_rank * static_cast<std::size_t>(L.e) * L.f;
            for (std::size_t i = 0; i < frank; ++i)
                for (std::size_t j = 0; j < frank; ++j)
                    s(L.offset + i, L.offset + j) = frob_blocks[fi](i, j);
        }
        action.frobenius = s;
    }

    big = finalize(big);
    if (label.empty()) {
        std::ostringstream os;
        for (std::size_t i = 0; i < desc.factors.size(); ++i) {
            const auto& fac = desc.factors[i];
            if (i) os << " x ";
            os << to_string(fac.type) << fac.n << "(" << to_string(fac.isogeny) << ",e=" << fac.e
               << ",f=" << fac.f << ")";
        }
        label = os.str();
    }
    return build_group_model(std::move(big), std::move(action), std::move(label), desc);
}

/// Adjoint quotient model: X_*(T_adj) is the full coweight lattice of the root
/// system, coordinatized by pairings with the simple roots.
inline GroupModel adjoint_model(const GroupModel& m) {
    const RootDatum& rd = m.datum;
    const std::size_t s = rd.num_simple();
    RootDatum adj;
    adj.rank = s;
    for (std::size_t i = 0; i < rd.roots.size(); ++i) {
        auto coeffs = in_simple_root_basis(rd, rd.roots[i]);
        if (!coeffs) throw DomainError("InvalidRootDatum", "root outside simple span");
        Vec root(s), coroot(s);
        for (std::size_t k = 0; k < s; ++k) {
            if ((*coeffs)[k].denominator() != 1)
                throw DomainError("InvalidRootDatum", "root has fractional simple coefficients");
            root[k] = (*coeffs)[k].numerator();
            coroot[k] = dot(rd.simple_root(k), rd.coroots[i]);
        }
        adj.roots.push_back(root);
        adj.coroots.push_back(coroot);
    }
    adj.simple = rd.simple;
    adj = finalize(adj);

    auto push_action = [&](const Mat& g) {
        auto gd = detail::dual_action(g);
        if (!gd) throw DomainError("InvalidRootDatum", "Galois matrix is not unimodular");
        // permutation of the simple roots under the contragredient action
        Mat p(s, s);
        for (std::size_t k = 0; k < s; ++k) {
            Vec img = gd->apply(rd.simple_root(k));
            bool found = false;
            for (std::size_t l = 0; l < s; ++l)
                if (rd.simple_root(l) == img) {
                    p(l, k) = 1;  // dual basis follows the same permutation
                    found = true;
                    break;
                }
            if (!found) throw DomainError("InvalidRootDatum", "action does not preserve the base");
        }
        return p;
    };

    GaloisAction act;
    for (const Mat& g : m.action.inertia_gens) act.inertia_gens.push_back(push_action(g));
    act.frobenius = push_action(m.action.frobenius);
    return build_group_model(std::move(adj), std::move(act), m.label + " (adjoint)");
}

/// Coordinates of mu in the adjoint model built by adjoint_model.
inline Vec to_adjoint_coords(const GroupModel& m, const Vec& mu) {
    Vec out(m.datum.num_simple());
    for (std::size_t k = 0; k < m.datum.num_simple(); ++k) out[k] = dot(m.datum.simple_root(k), mu);
    return out;
}

/// Langlands dual model: roots and coroots exchanged, contragredient action.
inline GroupModel dual_model(const GroupModel& m) {
    RootDatum d = dual_datum(m.datum);
    GaloisAction act;
    for (const Mat& g : m.action.inertia_gens) {
        auto gd = detail::dual_action(g);
        if (!gd) throw DomainError("InvalidRootDatum", "Galois matrix is not unimodular");
        act.inertia_gens.push_back(*gd);
    }
    auto sd = detail::dual_action(m.action.frobenius);
    if (!sd) throw DomainError("InvalidRootDatum", "Frobenius matrix is not unimodular");
    act.frobenius = *sd;
    return build_group_model(std::move(d), std::move(act), m.label + " (dual)");
}

/// Model validation. Empty report means valid.
inline std::vector<std::string> validate_model(const GroupModel& m) {
    std::vector<std::string> out = validate_root_datum(m.datum);

    std::set<Vec> root_set(m.datum.roots.begin(), m.datum.roots.end());
    std::set<Vec> coroot_set(m.datum.coroots.begin(), m.datum.coroots.end());
    std::set<Vec> simple_set;
    for (std::size_t k = 0; k < m.datum.num_simple(); ++k) simple_set.insert(m.datum.simple_root(k));

    auto check_pinned = [&](const Mat& g, const std::string& who) {
        if (g.rows != m.datum.rank || g.cols != m.datum.rank) {
            out.push_back(who + " has wrong dimensions");
            return;
        }
        auto gd = detail::dual_action(g);
        if (!gd) {
            out.push_back(who + " is not unimodular");
            return;
        }
        std::map<Vec, Vec> coroot_of;
        for (std::size_t i = 0; i < m.datum.roots.size(); ++i)
            coroot_of[m.datum.roots[i]] = m.datum.coroots[i];
        for (std::size_t i = 0; i < m.datum.roots.size(); ++i) {
            Vec r = gd->apply(m.datum.roots[i]);
            Vec c = g.apply(m.datum.coroots[i]);
            if (!root_set.count(r)) {
                out.push_back(who + " does not preserve the root set");
                return;
            }
            if (!coroot_set.count(c) || coroot_of[r] != c) {
                out.push_back(who + " breaks the root/coroot bijection");
                return;
            }
        }
        for (const Vec& sr : simple_set)
            if (!simple_set.count(gd->apply(sr))) {
                out.push_back(who + " does not preserve the base");
                return;
            }
    };

    for (std::size_t i = 0; i < m.action.inertia_gens.size(); ++i)
        check_pinned(m.action.inertia_gens[i], "inertia generator " + std::to_string(i));
    check_pinned(m.action.frobenius, "frobenius");

    // frobenius normalizes the inertia subgroup
    if (!m.action.inertia_gens.empty()) {
        auto sinv = detail::integer_inverse(m.action.frobenius);
        if (sinv) {
            try {
                std::vector<Mat> closure = group_closure(m.action.inertia_gens, m.datum.rank);
                std::set<Mat> cl(closure.begin(), closure.end());
                for (const Mat& g : m.action.inertia_gens) {
                    Mat conj = m.action.frobenius.mul(g).mul(*sinv);
                    if (!cl.count(conj)) {
                        out.push_back("frobenius does not normalize the inertia group");
                        break;
                    }
                }
            } catch (const DomainError&) {
                out.push_back("inertia generators do not generate a finite group");
            }
        }
    }

    if (m.residual_order == 0)
        out.push_back("frobenius has no finite order on X_*(T)_I (bound 512)");
    if (!m.sigma_descends) out.push_back("frobenius does not descend to X_*(T)_I");
    return out;
}

}  // namespace grcomb
