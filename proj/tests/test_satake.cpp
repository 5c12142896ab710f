#include "grcomb/satake.hpp"
#include "test_models.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace grcomb;
using testmodels::make;

namespace {

Character folded_irrep(const GroupModel& m, const Vec& mu_I) {
    return full_character(m.folded->datum, mu_I, "X_*(T)_I");
}

SatakeParameter param(const GroupModel& m, std::initializer_list<Rat> vals) {
    return make_satake_parameter(m, std::vector<Rat>(vals));
}

}  // namespace

TEST_CASE("relative coroots of split and folded models", "[satake]") {
    SECTION("split GL2: the plain coroots, none multipliable") {
        GroupModel gl2 = make("gl2");
        auto rels = relative_coroots(gl2);
        REQUIRE(rels.size() == 2);
        std::set<Vec> alphas;
        for (const auto& r : rels) {
            alphas.insert(r.alpha);
            REQUIRE_FALSE(r.multipliable);
        }
        REQUIRE(alphas == std::set<Vec>{{1, -1}, {-1, 1}});
    }
    SECTION("unramified Res GL2: orbit sums across the blocks") {
        GroupModel m = make("resunram_gl2");
        auto rels = relative_coroots(m);
        REQUIRE(rels.size() == 2);
        std::set<Vec> alphas;
        for (const auto& r : rels) {
            alphas.insert(r.alpha);
            REQUIRE_FALSE(r.multipliable);
        }
        REQUIRE(alphas == std::set<Vec>{{1, -1, 1, -1}, {-1, 1, -1, 1}});
    }
    SECTION("unramified SU3: a multipliable pair appears") {
        GroupModel su3 = make("su3");
        auto rels = relative_coroots(su3);
        REQUIRE(rels.size() == 4);
        std::map<Vec, RelativeCoroot> by_alpha;
        for (const auto& r : rels) by_alpha[r.alpha] = r;
        REQUIRE(by_alpha.count(Vec{1, 1}) == 1);
        REQUIRE(by_alpha.count(Vec{2, 2}) == 1);
        REQUIRE_FALSE(by_alpha[Vec{1, 1}].multipliable);
        REQUIRE(by_alpha[Vec{2, 2}].multipliable);
        // translate-sum witnesses: the short orbit for theta, theta for 2*theta
        REQUIRE(by_alpha[Vec{1, 1}].alpha_sigma == Vec{0, 1});
        REQUIRE(by_alpha[Vec{2, 2}].alpha_sigma == Vec{1, 1});
    }
}

TEST_CASE("zeta exponents for the adjoint A1 model", "[satake]") {
    GroupModel pgl2 = make("pgl2");
    SECTION("standard representation: zero exponents") {
        auto z = zeta_exponents(pgl2, restrict_character(pgl2, Vec{1}));
        REQUIRE(z == std::map<Vec, Int>{{{2}, 0}, {{-2}, 0}});
    }
    SECTION("trivial representation: the n = 0 term") {
        auto z = zeta_exponents(pgl2, restrict_character(pgl2, Vec{0}));
        REQUIRE(z == std::map<Vec, Int>{{{2}, 1}, {{-2}, 1}});
    }
    SECTION("adjoint representation") {
        auto z = zeta_exponents(pgl2, restrict_character(pgl2, Vec{2}));
        REQUIRE(z == std::map<Vec, Int>{{{2}, 2}, {{-2}, 2}});
    }
    SECTION("n >= 1 switch drops the constant term") {
        auto z = zeta_exponents(pgl2, restrict_character(pgl2, Vec{0}), 1);
        REQUIRE(z == std::map<Vec, Int>{{{2}, 0}, {{-2}, 0}});
    }
}

TEST_CASE("determinant divisor", "[satake]") {
    GroupModel pgl2 = make("pgl2");
    SECTION("standard representation: empty divisor") {
        Divisor d = determinant_divisor(pgl2, restrict_character(pgl2, Vec{1}));
        REQUIRE(d.empty());
    }
    SECTION("adjoint representation: (e^alpha - 1)^2 on both signs") {
        Divisor d = determinant_divisor(pgl2, restrict_character(pgl2, Vec{2}));
        REQUIRE(d.factors.size() == 2);
        for (const auto& f : d.factors) {
            REQUIRE(f.zeta == 2);
            REQUIRE_FALSE(f.plus_sign);
        }
    }
    SECTION("SU3 adjoint: a plus-sign multipliable factor") {
        GroupModel su3 = make("su3");
        Divisor d = determinant_divisor(su3, restrict_character(su3, Vec{1, 1}));
        bool has_plus = false;
        for (const auto& f : d.factors)
            if (f.plus_sign) {
                has_plus = true;
                REQUIRE(f.zeta == 3);
            }
        REQUIRE(has_plus);
    }
}

TEST_CASE("zeta additivity and duality symmetry", "[satake]") {
    std::mt19937_64 rng(31);
    for (const char* name : {"pgl2", "su3", "resunram_gl2", "gl3"}) {
        GroupModel m = make(name);
        std::uniform_int_distribution<Int> coord(0, 2);
        for (int t = 0; t < 6; ++t) {
            Vec mu(m.datum.rank), mu2(m.datum.rank);
            for (auto& x : mu) x = coord(rng);
            for (auto& x : mu2) x = coord(rng);
            mu = dominant_representative(m.datum, mu).vec;
            mu2 = dominant_representative(m.datum, mu2).vec;
            Character a = restrict_character(m, mu), b = restrict_character(m, mu2);

            auto za = zeta_exponents(m, a), zb = zeta_exponents(m, b);
            auto zsum = zeta_exponents(m, character_sum(a, b));
            for (const auto& [al, z] : zsum) REQUIRE(z == za.at(al) + zb.at(al));

            // zeta_{-alpha}(V) = zeta_alpha(V^*)
            auto zdual = zeta_exponents(m, character_dual(a));
            for (const auto& [al, z] : za) REQUIRE(zdual.at(vec_neg(al)) == z);
        }
    }
}

TEST_CASE("the exponent multiset is W0-stable", "[satake]") {
    for (const char* name : {"pgl2", "su3", "gl3", "resunram_gl2"}) {
        GroupModel m = make(name);
        Vec mu(m.datum.rank, 0);
        mu[0] = 2;
        mu = dominant_representative(m.datum, mu).vec;
        auto z = zeta_exponents(m, restrict_character(m, mu));
        for (const Mat& w : weyl0_on_folded(m)) {
            std::map<Vec, Int> moved;
            for (const auto& [al, c] : z) moved[w.apply(al)] = c;
            REQUIRE(moved == z);
        }
    }
}

TEST_CASE("V-generality of rational parameters", "[satake]") {
    GroupModel pgl2 = make("pgl2");
    Character adj = restrict_character(pgl2, Vec{2});
    Divisor d = determinant_divisor(pgl2, adj);

    SECTION("empty divisor accepts everything") {
        Divisor none = determinant_divisor(pgl2, restrict_character(pgl2, Vec{1}));
        REQUIRE(is_v_general(pgl2, none, param(pgl2, {Rat(1)})));
    }
    SECTION("value 1 on a minus factor fails") {
        REQUIRE_FALSE(is_v_general(pgl2, d, param(pgl2, {Rat(1)})));
        REQUIRE_FALSE(is_v_general(pgl2, d, param(pgl2, {Rat(-1)})));  // (-1)^2 = 1
    }
    SECTION("generic value passes") {
        REQUIRE(is_v_general(pgl2, d, param(pgl2, {Rat(2)})));
    }
}

TEST_CASE("strong generality", "[satake]") {
    GroupModel pgl2 = make("pgl2");
    Character adj = restrict_character(pgl2, Vec{2});
    SECTION("central-only weight classes are vacuously strongly general") {
        GroupModel gl2 = make("gl2");
        Character det = restrict_character(gl2, Vec{1, 1});
        REQUIRE(is_strongly_v_general(gl2, det, param(gl2, {Rat(1), Rat(1)})));
    }
    SECTION("root of unity on a noncentral class fails") {
        REQUIRE_FALSE(is_strongly_v_general(pgl2, adj, param(pgl2, {Rat(-1)})));
        REQUIRE_FALSE(is_strongly_v_general(pgl2, adj, param(pgl2, {Rat(1)})));
    }
    SECTION("non-torsion value passes") {
        REQUIRE(is_strongly_v_general(pgl2, adj, param(pgl2, {Rat(3)})));
    }
}

TEST_CASE("fixed-space counts against the Tate dimension", "[satake]") {
    GroupModel pgl2 = make("pgl2");
    Character adj = restrict_character(pgl2, Vec{2});
    // strongly general: the count equals the Tate dimension
    SatakeParameter good = param(pgl2, {Rat(3)});
    REQUIRE(is_strongly_v_general(pgl2, adj, good));
    REQUIRE(fixed_point_weight_count(pgl2, adj, good) == tate_dim_splitting(pgl2, Vec{2}));
    // not strongly general: strictly more fixed weights
    SatakeParameter bad = param(pgl2, {Rat(1)});
    REQUIRE_FALSE(is_strongly_v_general(pgl2, adj, bad));
    REQUIRE(fixed_point_weight_count(pgl2, adj, bad) > tate_dim_splitting(pgl2, Vec{2}));
}

TEST_CASE("strong generality implies generality on covered divisors", "[satake]") {
    std::mt19937_64 rng(77);
    std::vector<Rat> pool{Rat(2), Rat(3), Rat(-2), Rat(1, 2), Rat(5), Rat(-1), Rat(1), Rat(2, 3)};
    for (const char* name : {"pgl2", "su3", "gl2", "resunram_gl2"}) {
        GroupModel m = make(name);
        Vec mu(m.datum.rank, 0);
        mu[0] = 2;
        mu = dominant_representative(m.datum, mu).vec;
        Character v = restrict_character(m, mu);
        Character vvdual = character_product(v, character_dual(v));
        Divisor d = determinant_divisor(m, v);

        std::map<Vec, Int> cls_of_vvdual = gamma_class_multiplicities(m, vvdual);
        bool covered = true;
        for (const auto& f : d.factors) {
            Vec cls = m.gamma_q.apply(m.inertia_q.lift_free(f.alpha));
            if (!cls_of_vvdual.count(cls)) covered = false;
        }
        if (!covered) continue;

        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::size_t nparams = satake_parameter_basis(m).size();
        for (int t = 0; t < 50; ++t) {
            std::vector<Rat> vals;
            for (std::size_t i = 0; i < nparams; ++i) vals.push_back(pool[pick(rng)]);
            SatakeParameter s = make_satake_parameter(m, vals);
            if (is_strongly_v_general(m, vvdual, s)) REQUIRE(is_v_general(m, d, s));
        }
    }
}
