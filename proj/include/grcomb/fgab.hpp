#pragma once

#include "grcomb/snf.hpp"

#include <map>
#include <vector>

namespace grcomb {

constexpr std::size_t kGroupClosureBound = 10000;

/// All elements of the group generated by `gens`, by BFS. Throws
/// NonFiniteAction when the closure exceeds `bound`.
inline std::vector<Mat> group_closure(const std::vector<Mat>& gens, std::size_t n,
                                      std::size_t bound = kGroupClosureBound) {
    std::vector<Mat> elems{Mat::identity(n)};
    std::map<Mat, bool> seen{{elems[0], true}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const Mat& g : gens) {
            Mat h = g.mul(elems[head]);
            if (seen.emplace(h, true).second) {
                elems.push_back(h);
                if (elems.size() > bound)
                    throw DomainError("NonFiniteAction",
                                      "group closure exceeds bound " + std::to_string(bound));
            }
        }
    }
    return elems;
}

/// Finitely generated abelian group in Smith normal form: Z^free_rank + sum Z/d_i
/// with d_1 | d_2 | ... and every d_i >= 2.
struct FGAbGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    std::size_t coord_size() const { return free_rank + torsion.size(); }
    bool is_torsion_free() const { return torsion.empty(); }

    /// Reduce torsion coordinates into [0, d).
    Vec reduce(Vec coords) const {
        for (std::size_t k = 0; k < torsion.size(); ++k) {
            Int d = torsion[k];
            Int& c = coords[free_rank + k];
            c %= d;
            if (c < 0) c += d;
        }
        return coords;
    }
};

/// Surjection Z^source_rank ->> group, with an exact section of the free part.
struct QuotientMap {
    std::size_t source_rank = 0;
    FGAbGroup group;
    Mat projection;  // coord_size x source_rank; free rows first, then torsion rows
    Mat section;     // source_rank x free_rank; projection*section = (id_free; 0)
    Mat relations;   // source_rank x k; columns span the kernel sublattice

    Vec apply(const Vec& v) const { return group.reduce(projection.apply(v)); }

    /// Free-part coordinates only (valid as-is when the group is torsion-free).
    Vec apply_free(const Vec& v) const {
        Vec full = projection.apply(v);
        return Vec(full.begin(), full.begin() + static_cast<long>(group.free_rank));
    }

    /// Lift of free-part coordinates back to the source lattice.
    Vec lift_free(const Vec& coords) const { return section.apply(coords); }

    bool classes_equal(const Vec& v, const Vec& w) const { return apply(v) == apply(w); }

    /// Is v in the kernel sublattice (the relations span)?
    bool kills(const Vec& v) const { return lattice_contains(relations, v); }
};

/// Quotient of Z^n by the sublattice spanned by the given columns, presented
/// through Smith normal form.
inline QuotientMap quotient_from_relations(std::size_t n, const std::vector<Vec>& rel_cols) {
    QuotientMap q;
    q.source_rank = n;
    q.relations = columns_matrix(n, rel_cols);
    Snf s = smith_normal_form(q.relations);
    std::vector<std::size_t> free_rows, torsion_rows;
    for (std::size_t i = 0; i < n; ++i) {
        Int d = (i < s.rank) ? s.d(i, i) : 0;
        if (d == 0)
            free_rows.push_back(i);
        else if (d >= 2)
            torsion_rows.push_back(i);
    }
    q.group.free_rank = free_rows.size();
    for (std::size_t i : torsion_rows) q.group.torsion.push_back(s.d(i, i));
    q.projection = Mat(free_rows.size() + torsion_rows.size(), n);
    std::size_t row = 0;
    for (std::size_t i : free_rows) {
        for (std::size_t j = 0; j < n; ++j) q.projection(row, j) = s.u(i, j);
        ++row;
    }
    for (std::size_t i : torsion_rows) {
        for (std::size_t j = 0; j < n; ++j) q.projection(row, j) = s.u(i, j);
        ++row;
    }
    q.section = Mat(n, free_rows.size());
    for (std::size_t k = 0; k < free_rows.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) q.section(j, k) = s.uinv(j, free_rows[k]);
    // orient each free coordinate: first nonzero projection entry positive
    for (std::size_t k = 0; k < free_rows.size(); ++k) {
        Int lead = 0;
        for (std::size_t j = 0; j < n && lead == 0; ++j) lead = q.projection(k, j);
        if (lead < 0) {
            for (std::size_t j = 0; j < n; ++j) q.projection(k, j) = -q.projection(k, j);
            for (std::size_t j = 0; j < n; ++j) q.section(j, k) = -q.section(j, k);
        }
    }
    return q;
}

/// Coinvariants Z^n / <(g-1)v : g in gens>, with projection and section.
/// Permutation actions take a canonical orbit-sum form; the general case is
/// computed through Smith normal form.
inline QuotientMap coinvariants(std::size_t n, const std::vector<Mat>& gens,
                                std::size_t bound = kGroupClosureBound) {
    group_closure(gens, n, bound);  // finiteness check

    std::vector<Vec> rel_cols;
    for (const Mat& g : gens)
        for (std::size_t i = 0; i < n; ++i) {
            Vec col(n, 0);
            for (std::size_t r = 0; r < n; ++r) col[r] = g(r, i) - (r == i ? 1 : 0);
            if (!vec_is_zero(col)) rel_cols.push_back(col);
        }

    QuotientMap q;
    q.source_rank = n;
    q.relations = columns_matrix(n, rel_cols);

    bool all_perm = true;
    for (const Mat& g : gens) {
        for (std::size_t j = 0; j < n && all_perm; ++j) {
            int ones = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (g(i, j) == 1)
                    ++ones;
                else if (g(i, j) != 0)
                    all_perm = false;
            }
            if (ones != 1) all_perm = false;
        }
        if (!all_perm) break;
    }

    if (all_perm) {
        // orbit-sum coordinates, ordered by smallest orbit member
        std::vector<long> orbit(n, -1);
        std::vector<std::vector<std::size_t>> orbits;
        for (std::size_t i = 0; i < n; ++i) {
            if (orbit[i] >= 0) continue;
            std::vector<std::size_t> stack{i}, members;
            orbit[i] = static_cast<long>(orbits.size());
            while (!stack.empty()) {
                std::size_t x = stack.back();
                stack.pop_back();
                members.push_back(x);
                for (const Mat& g : gens)
                    for (std::size_t r = 0; r < n; ++r)
                        if (g(r, x) == 1 && orbit[r] < 0) {
                            orbit[r] = orbit[i];
                            stack.push_back(r);
                        }
            }
            orbits.push_back(members);
        }
        std::size_t r = orbits.size();
        q.group.free_rank = r;
        q.projection = Mat(r, n);
        q.section = Mat(n, r);
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t i : orbits[k]) q.projection(k, i) = 1;
            std::size_t rep = *std::min_element(orbits[k].begin(), orbits[k].end());
            q.section(rep, k) = 1;
        }
        return q;
    }

    return quotient_from_relations(n, rel_cols);
}

/// Basis of the invariant sublattice {v : g v = v for all g in gens}.
inline std::vector<Vec> invariants(std::size_t n, const std::vector<Mat>& gens,
                                   std::size_t bound = kGroupClosureBound) {
    group_closure(gens, n, bound);
    std::vector<Vec> stack_rows;
    Mat stacked(gens.size() * n, n);
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                stacked(k * n + i, j) = gens[k](i, j) - (i == j ? 1 : 0);
    return integer_kernel(stacked);
}

}  // namespace grcomb
