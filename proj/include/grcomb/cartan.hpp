#pragma once

#include "grcomb/root_datum.hpp"

#include <string>

namespace grcomb {

enum class CartanType { A, B, C, D, G };
enum class Isogeny { SimplyConnected, Adjoint, GL };

inline std::string to_string(CartanType t) {
    switch (t) {
        case CartanType::A: return "A";
        case CartanType::B: return "B";
        case CartanType::C: return "C";
        case CartanType::D: return "D";
        case CartanType::G: return "G";
    }
    return "?";
}

inline std::string to_string(Isogeny i) {
    switch (i) {
        case Isogeny::SimplyConnected: return "simply-connected";
        case Isogeny::Adjoint: return "adjoint";
        case Isogeny::GL: return "GL";
    }
    return "?";
}

constexpr int kMaxCartanRank = 8;

/// Cartan matrix entries C(i,j) = <alpha_i, alpha_j^vee>, Bourbaki numbering.
inline Mat cartan_matrix(CartanType t, int n) {
    auto bad = [&](const std::string& why) {
        throw DomainError("UnsupportedType",
                          to_string(t) + "_" + std::to_string(n) + ": " + why);
    };
    if (n < 1 || n > kMaxCartanRank) bad("rank out of supported range");
    switch (t) {
        case CartanType::A: break;
        case CartanType::B:
        case CartanType::C:
            if (n < 2) bad("rank must be >= 2");
            break;
        case CartanType::D:
            if (n < 3) bad("rank must be >= 3");
            break;
        case CartanType::G:
            if (n != 2) bad("rank must be 2");
            break;
    }
    Mat c(n, n);
    for (int i = 0; i < n; ++i) c(i, i) = 2;
    auto link = [&](int i, int j, Int cij, Int cji) {
        c(i, j) = cij;
        c(j, i) = cji;
    };
    switch (t) {
        case CartanType::A:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1, -1);
            break;
        case CartanType::B:  // alpha_{n-1} short
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
            link(n - 2, n - 1, -2, -1);
            break;
        case CartanType::C:  // alpha_{n-1} long
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
            link(n - 2, n - 1, -1, -2);
            break;
        case CartanType::D:
            for (int i = 0; i + 3 < n; ++i) link(i, i + 1, -1, -1);
            link(n - 3, n - 2, -1, -1);
            link(n - 3, n - 1, -1, -1);
            break;
        case CartanType::G:
            link(0, 1, -1, -3);
            break;
    }
    return c;
}

namespace detail {

/// Reflection closure of the simple root/coroot pairs.
inline void close_root_system(RootDatum& rd) {
    std::map<Vec, std::size_t> index;
    for (std::size_t i = 0; i < rd.roots.size(); ++i) index[rd.roots[i]] = i;
    for (std::size_t head = 0; head < rd.roots.size(); ++head) {
        for (std::size_t k = 0; k < rd.num_simple(); ++k) {
            Vec r = vec_sub(rd.roots[head],
                            vec_scale(dot(rd.roots[head], rd.simple_coroot(k)), rd.simple_root(k)));
            if (index.count(r)) continue;
            Vec rv = vec_sub(rd.coroots[head],
                             vec_scale(dot(rd.simple_root(k), rd.coroots[head]), rd.simple_coroot(k)));
            index[r] = rd.roots.size();
            rd.roots.push_back(r);
            rd.coroots.push_back(rv);
            if (rd.roots.size() > 4096)
                throw DomainError("InvalidRootDatum", "root system closure does not terminate");
        }
    }
}

}  // namespace detail

/// Simply connected datum: X_*(T) has the simple coroots as basis.
inline RootDatum simply_connected_datum(CartanType t, int n) {
    Mat c = cartan_matrix(t, n);
    RootDatum rd;
    rd.rank = static_cast<std::size_t>(n);
    for (int k = 0; k < n; ++k) {
        Vec root(n), coroot(n, 0);
        for (int j = 0; j < n; ++j) root[j] = c(k, j);
        coroot[k] = 1;
        rd.roots.push_back(root);
        rd.coroots.push_back(coroot);
        rd.simple.push_back(static_cast<std::size_t>(k));
    }
    detail::close_root_system(rd);
    return finalize(rd);
}

/// Adjoint datum: X^*(T) has the simple roots as basis.
inline RootDatum adjoint_datum(CartanType t, int n) {
    Mat c = cartan_matrix(t, n);
    RootDatum rd;
    rd.rank = static_cast<std::size_t>(n);
    for (int k = 0; k < n; ++k) {
        Vec root(n, 0), coroot(n);
        root[k] = 1;
        for (int j = 0; j < n; ++j) coroot[j] = c(j, k);
        rd.roots.push_back(root);
        rd.coroots.push_back(coroot);
        rd.simple.push_back(static_cast<std::size_t>(k));
    }
    detail::close_root_system(rd);
    return finalize(rd);
}

/// GL_m datum on the diagonal torus.
inline RootDatum gl_datum(int m) {
    RootDatum rd;
    rd.rank = static_cast<std::size_t>(m);
    for (int k = 0; k + 1 < m; ++k) {
        Vec v(m, 0);
        v[k] = 1;
        v[k + 1] = -1;
        rd.roots.push_back(v);
        rd.coroots.push_back(v);
        rd.simple.push_back(static_cast<std::size_t>(k));
    }
    detail::close_root_system(rd);
    return finalize(rd);
}

inline std::size_t expected_root_count(CartanType t, int n) {
    switch (t) {
        case CartanType::A: return static_cast<std::size_t>(n) * (n + 1);
        case CartanType::B:
        case CartanType::C: return 2 * static_cast<std::size_t>(n) * n;
        case CartanType::D: return 2 * static_cast<std::size_t>(n) * (n - 1);
        case CartanType::G: return 12;
    }
    return 0;
}

inline bool is_diagram_automorphism(const Mat& cartan, const std::vector<std::size_t>& perm) {
    std::size_t n = cartan.rows;
    if (perm.size() != n) return false;
    std::vector<bool> hit(n, false);
    for (std::size_t i : perm) {
        if (i >= n || hit[i]) return false;
        hit[i] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (cartan(perm[i], perm[j]) != cartan(i, j)) return false;
    return true;
}

/// Lattice realization of a diagram automorphism on X_*(T) for the given
/// isogeny type. For GL_m the flip acts by v -> -reverse(v).
inline Mat diagram_aut_matrix(CartanType t, int n, Isogeny iso, const std::vector<std::size_t>& perm) {
    Mat c = cartan_matrix(t, n);
    if (!is_diagram_automorphism(c, perm))
        throw DomainError("InvalidDiagramAut", "permutation does not preserve the Cartan matrix");
    bool is_id = true;
    for (int i = 0; i < n; ++i)
        if (perm[static_cast<std::size_t>(i)] != static_cast<std::size_t>(i)) is_id = false;

    if (iso == Isogeny::GL) {
        if (t != CartanType::A) throw DomainError("UnsupportedType", "GL isogeny requires type A");
        int m = n + 1;
        Mat g(m, m);
        if (is_id) return Mat::identity(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) g(static_cast<std::size_t>(i), static_cast<std::size_t>(m - 1 - i)) = -1;
        return g;
    }
    // simply connected: permute the coroot basis; adjoint: permute the dual
    // basis of the simple roots. Both are the same permutation matrix.
    Mat g(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) g(perm[static_cast<std::size_t>(k)], static_cast<std::size_t>(k)) = 1;
    return g;
}

inline RootDatum base_factor_datum(CartanType t, int n, Isogeny iso) {
    switch (iso) {
        case Isogeny::SimplyConnected: return simply_connected_datum(t, n);
        case Isogeny::Adjoint: return adjoint_datum(t, n);
        case Isogeny::GL:
            if (t != CartanType::A) throw DomainError("UnsupportedType", "GL isogeny requires type A");
            return gl_datum(n + 1);
    }
    throw DomainError("UnsupportedType", "unknown isogeny");
}

}  // namespace grcomb
