#include "grcomb/rep.hpp"
#include "test_models.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

using namespace grcomb;
using testmodels::make;

TEST_CASE("weight multiplicities at pinned values", "[char_engine]") {
    GroupModel pgl2 = make("pgl2");
    REQUIRE(weight_multiplicity(pgl2.datum, Vec{2}, Vec{0}) == 1);
    REQUIRE(weight_multiplicity(pgl2.datum, Vec{2}, Vec{2}) == 1);
    REQUIRE(weight_multiplicity(pgl2.datum, Vec{2}, Vec{1}) == 0);

    GroupModel pgl3 = make("pgl3");
    REQUIRE(weight_multiplicity(pgl3.datum, Vec{1, 1}, Vec{0, 0}) == 2);

    GroupModel gl2 = make("gl2");
    REQUIRE(weight_multiplicity(gl2.datum, Vec{2, 0}, Vec{1, 1}) == 1);
    REQUIRE_THROWS_AS(weight_multiplicity(gl2.datum, Vec{0, 2}, Vec{1, 1}), DomainError);
}

TEST_CASE("weyl dimension", "[char_engine]") {
    GroupModel pgl2 = make("pgl2");
    REQUIRE(weyl_dimension(pgl2.datum, Vec{0}) == 1);
    for (Int n = 1; n <= 6; ++n) REQUIRE(weyl_dimension(pgl2.datum, Vec{n}) == n + 1);
    REQUIRE(weyl_dimension(make("pgl3").datum, Vec{1, 1}) == 8);
    REQUIRE(weyl_dimension(make("b2").datum, Vec{1, 1}) == 5);
}

TEST_CASE("full characters at pinned values", "[char_engine]") {
    GroupModel gl2 = make("gl2");
    Character triv = full_character(gl2.datum, Vec{0, 0});
    REQUIRE(triv.support == std::map<Vec, Int>{{{0, 0}, 1}});

    Character std2 = full_character(gl2.datum, Vec{1, 0});
    REQUIRE(std2.support == std::map<Vec, Int>{{{1, 0}, 1}, {{0, 1}, 1}});

    Character sym2 = full_character(gl2.datum, Vec{2, 0});
    REQUIRE(sym2.support == std::map<Vec, Int>{{{2, 0}, 1}, {{1, 1}, 1}, {{0, 2}, 1}});
}

TEST_CASE("oracle character agrees with Freudenthal", "[char_engine]") {
    GroupModel pgl2 = make("pgl2");
    Character c3 = oracle_character(pgl2.datum, Vec{3});
    REQUIRE(c3.support == std::map<Vec, Int>{{{3}, 1}, {{1}, 1}, {{-1}, 1}, {{-3}, 1}});
    REQUIRE(oracle_character(pgl2.datum, Vec{0}).support == std::map<Vec, Int>{{{0}, 1}});

    GroupModel b2 = make("b2");
    Character five = oracle_character(b2.datum, Vec{1, 1});
    REQUIRE(five.dim() == 5);
    REQUIRE(five.dim() == weyl_dimension(b2.datum, Vec{1, 1}));

    for (const char* name : {"sl2", "sl3", "b2", "g2", "gl2", "gl3"}) {
        GroupModel m = make(name);
        for (const Vec& mu : dominant_sweep(m.datum, 6)) {
            Character a = full_character(m.datum, mu);
            Character b = oracle_character(m.datum, mu);
            INFO(name);
            REQUIRE(a.support == b.support);
            REQUIRE(a.dim() == weyl_dimension(m.datum, mu));
        }
    }
}

TEST_CASE("characters are Weyl invariant", "[char_engine]") {
    for (const char* name : {"gl3", "b2", "su3"}) {
        GroupModel m = make(name);
        for (const Vec& mu : dominant_sweep(m.datum, 4)) {
            Character ch = full_character(m.datum, mu);
            for (const WeylElement& w : m.weyl)
                for (const auto& [x, c] : ch.support) REQUIRE(ch.mult(w.mat.apply(x)) == c);
        }
    }
}

TEST_CASE("tensor decomposition at pinned values", "[char_engine]") {
    GroupModel pgl2 = make("pgl2");
    auto t = tensor_decompose(pgl2.datum, Vec{1}, Vec{1});
    REQUIRE(t == std::map<Vec, Int>{{{2}, 1}, {{0}, 1}});

    GroupModel gl3 = make("gl3");
    auto unit = tensor_decompose(gl3.datum, Vec{2, 1, 0}, Vec{0, 0, 0});
    REQUIRE(unit == std::map<Vec, Int>{{{2, 1, 0}, 1}});

    auto mixed = tensor_decompose(gl3.datum, Vec{1, 0, 0}, Vec{1, 1, 0});
    REQUIRE(mixed == std::map<Vec, Int>{{{2, 1, 0}, 1}, {{1, 1, 1}, 1}});
}

TEST_CASE("tensor products match the character-product oracle", "[char_engine]") {
    std::mt19937_64 rng(20240812);
    for (const char* name : {"gl2", "sl3", "b2", "g2"}) {
        GroupModel m = make(name);
        auto sweep = dominant_sweep(m.datum, 6);
        std::uniform_int_distribution<std::size_t> pick(0, sweep.size() - 1);
        for (int trial = 0; trial < 12; ++trial) {
            Vec mu1 = sweep[pick(rng)], mu2 = sweep[pick(rng)];
            auto dec = tensor_decompose(m.datum, mu1, mu2);
            Character prod =
                character_product(full_character(m.datum, mu1), full_character(m.datum, mu2));
            Character rebuilt;
            Int dim = 0;
            for (const auto& [nu, mult] : dec) {
                Character piece = full_character(m.datum, nu);
                dim += mult * piece.dim();
                for (const auto& [w, c] : piece.support) rebuilt.add(w, mult * c);
            }
            REQUIRE(dim == prod.dim());
            REQUIRE(rebuilt.support == prod.support);
        }
    }
}

TEST_CASE("restriction to inertia coinvariants", "[char_engine]") {
    SECTION("trivial inertia is the identity on characters") {
        GroupModel gl3 = make("gl3");
        Character abs = full_character(gl3.datum, Vec{2, 1, 0});
        Character res = restrict_character(gl3, Vec{2, 1, 0});
        REQUIRE(res.support == abs.support);
    }
    SECTION("ramified Res GL2 pushes along the copy sum") {
        GroupModel m = make("resram_gl2");
        Character r = restrict_character(m, Vec{1, 0, 1, 0});
        REQUIRE(r.support == std::map<Vec, Int>{{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}});
        Character r2 = restrict_character(m, Vec{1, 0, 0, 0});
        REQUIRE(r2.support == std::map<Vec, Int>{{{1, 0}, 1}, {{0, 1}, 1}});
    }
}

TEST_CASE("branching to the folded datum", "[char_engine]") {
    SECTION("trivial inertia") {
        GroupModel gl2 = make("gl2");
        auto b = branch_to_invariants(gl2, Vec{2, 0});
        REQUIRE(b == std::map<Vec, Int>{{{2, 0}, 1}});
    }
    SECTION("ramified Res GL2: std (x) std = Sym2 + det") {
        GroupModel m = make("resram_gl2");
        auto b = branch_to_invariants(m, Vec{1, 0, 1, 0});
        REQUIRE(b == std::map<Vec, Int>{{{2, 0}, 1}, {{1, 1}, 1}});
    }
    SECTION("ramified Res dual-SL2") {
        GroupModel m = make("resram_sl2");
        auto b = branch_to_invariants(m, Vec{1, 1});
        REQUIRE(b == std::map<Vec, Int>{{{2}, 1}, {{0}, 1}});
    }
}

TEST_CASE("branching is consistent with restriction", "[char_engine]") {
    for (const char* name : {"resram_gl2", "resram_sl2", "resunram_gl2", "su3"}) {
        GroupModel m = make(name);
        const RootDatum& fold = m.folded->datum;
        for (const Vec& mu : dominant_sweep(m.datum, 4)) {
            Character res = restrict_character(m, mu);
            auto branch = branch_to_invariants(m, mu);
            Int dim = 0;
            Character rebuilt;
            for (const auto& [lam, mult] : branch) {
                REQUIRE(is_dominant(fold, lam));
                Character piece = full_character(fold, lam, "X_*(T)_I");
                dim += mult * piece.dim();
                for (const auto& [w, c] : piece.support) rebuilt.add(w, mult * c);
            }
            REQUIRE(dim == weyl_dimension(m.datum, mu));
            REQUIRE(rebuilt.support == res.support);
        }
    }
}

TEST_CASE("e-fold branching equals iterated folded tensor product", "[char_engine]") {
    GroupModel m = make("resram_gl2");
    const RootDatum& fold = m.folded->datum;
    auto b = branch_to_invariants(m, Vec{1, 0, 2, 0});
    auto t = tensor_decompose(fold, Vec{1, 0}, Vec{2, 0});
    REQUIRE(b == t);

    GroupModel s = make("resram_sl2");
    auto b2 = branch_to_invariants(s, Vec{2, 1});
    auto t2 = tensor_decompose(s.folded->datum, Vec{2}, Vec{1});
    REQUIRE(b2 == t2);
}

TEST_CASE("oracle bound errors", "[char_engine]") {
    GroupModel g = make("gl2");
    REQUIRE_THROWS_MATCHES(oracle_character(g.datum, Vec{1, 0}, 1), DomainError,
                           Catch::Matchers::Predicate<DomainError>([](const DomainError& e) {
                               return e.name() == "OracleBoundExceeded";
                           }));
}
