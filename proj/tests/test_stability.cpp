#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "oracles.hpp"
#include "quiversi/families.hpp"
#include "quiversi/stability.hpp"

using namespace quiversi;

TEST_CASE("cone_contains") {
    DimVector a12({"x", "y"}, {1, 2});
    CHECK(cone_contains(Weight({"x", "y"}, {2, -1}), a12,
                        {DimVector({"x", "y"}, {0, 1}), DimVector({"x", "y"}, {0, 2})}));
    CHECK_FALSE(cone_contains(Weight({"x", "y"}, {-2, 1}), a12, {DimVector({"x", "y"}, {0, 1})}));
    CHECK(cone_contains(Weight::zero({"x", "y"}), a12, {DimVector({"x", "y"}, {0, 2})}));
    CHECK_THROWS_AS(cone_contains(Weight({"z"}, {1}), a12, {}), DomainMismatchError);
}

TEST_CASE("is_semistable on the Kronecker indecomposables") {
    auto v = is_semistable(kronecker_V(), Weight({"x", "y"}, {2, -1}));
    CHECK(v.decision == Decision::Semistable);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->d == 1);
    CHECK(v.certificate->det_value != 0);

    // reversed weight: the pencil has no paths at all, so the verdict is exact
    auto u = is_semistable(kronecker_V(), Weight({"x", "y"}, {-2, 1}));
    CHECK(u.decision == Decision::ProbablyUnstable);
    CHECK(u.exact);
    CHECK(u.failure_probability_bound == 0);

    CHECK(is_semistable(kronecker_W(), Weight({"x", "y"}, {1, -2})).decision ==
          Decision::Semistable);
    CHECK(is_semistable(kronecker_W(), Weight({"x", "y"}, {-1, 2})).exact);

    CHECK_THROWS_AS(is_semistable(kronecker_V(), Weight::zero({"x", "y"})), ZeroWeightError);
    CHECK_THROWS_AS(is_semistable(kronecker_V(), Weight({"x", "y"}, {1, 1})),
                    NotOrthogonalError);
    CHECK_THROWS_AS(is_semistable(kronecker_V(), Weight({"x", "y"}, {2, -1}), 0), ArgumentError);
}

TEST_CASE("is_semistable end to end on the n=3 family instance") {
    auto bundle = build_qn_bundle(3);
    auto v = is_semistable(bundle.rep, bundle.expected_weight);
    CHECK(v.decision == Decision::Semistable);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->d == 5);  // |sigma|_alpha - 1

    // certificate replay: rebuild the d*sigma pencil and re-evaluate
    auto matrix = build_linear_matrix(
        bundle.quiver, bundle.alpha,
        Weight(bundle.expected_weight.vertices(),
               [&] {
                   std::vector<Int> s;
                   for (std::size_t i = 0; i < bundle.expected_weight.size(); ++i)
                       s.push_back(v.certificate->d * bundle.expected_weight.value(i));
                   return s;
               }()));
    CHECK(matrix.size() == 30);
    std::vector<Rat> t;
    for (const Int& x : v.certificate->t) t.emplace_back(x);
    Rat replayed = evaluate_det(instantiate(matrix, bundle.rep), t);
    CHECK(replayed == v.certificate->det_value);
    CHECK(replayed != 0);
}

TEST_CASE("probabilistic negative carries the Schwartz-Zippel bound") {
    // det is identically zero here although the pencil is structurally nonzero
    auto v = is_semistable(corpus::a3(1, 0, 1), Weight({"1", "2", "3"}, {1, 1, -2}), 8, 3);
    CHECK(v.decision == Decision::ProbablyUnstable);
    CHECK_FALSE(v.exact);
    CHECK(v.trials_used == 8);
    // d = 1, |sigma|_alpha = 2: bound = (2 / 2^20)^8
    CHECK(v.failure_probability_bound == rat_pow(make_rat(Int(2), int_pow(Int(2), 20)), 8));
}

TEST_CASE("verdicts are deterministic given the seed") {
    auto a = is_semistable(kronecker_V(), Weight({"x", "y"}, {2, -1}), 8, 12345);
    auto b = is_semistable(kronecker_V(), Weight({"x", "y"}, {2, -1}), 8, 12345);
    CHECK(a.decision == b.decision);
    REQUIRE(a.certificate.has_value());
    REQUIRE(b.certificate.has_value());
    CHECK(a.certificate->t == b.certificate->t);
    CHECK(a.certificate->det_value == b.certificate->det_value);
    CHECK(a.trials_used == b.trials_used);
}

TEST_CASE("decision is invariant under scaling the weight") {
    std::vector<std::pair<Representation, Weight>> cases = {
        {kronecker_V(), Weight({"x", "y"}, {2, -1})},
        {kronecker_V(), Weight({"x", "y"}, {-2, 1})},
        {kronecker_W(), Weight({"x", "y"}, {1, -2})},
        {corpus::k11(1, 2), Weight({"x", "y"}, {1, -1})},
        {corpus::a3(1, 1, 1), Weight({"1", "2", "3"}, {1, 0, -1})},
        {corpus::a3(1, 0, 1), Weight({"1", "2", "3"}, {1, 1, -2})},
    };
    for (const auto& [rep, sigma] : cases) {
        auto base = is_semistable(rep, sigma, 6, 0).decision;
        for (long scale : {2L, 3L}) {
            std::vector<Int> scaled;
            for (std::size_t i = 0; i < sigma.size(); ++i)
                scaled.push_back(Int(scale) * sigma.value(i));
            CHECK(is_semistable(rep, Weight(sigma.vertices(), scaled), 6, 0).decision == base);
        }
    }
}

TEST_CASE("semistability status is invariant under special base change") {
    // g acts at vertex y only (alpha(x) = 1): V'(a) = g V(a)
    std::vector<RationalMatrix> gs;
    gs.push_back(RationalMatrix(2, 2, {Rat(1), Rat(3), Rat(0), Rat(1)}));
    gs.push_back(RationalMatrix(2, 2, {Rat(2), Rat(1), Rat(5), Rat(3)}));   // det 1
    gs.push_back(RationalMatrix(2, 2, {Rat(-3), Rat(2), Rat(-5), Rat(3)})); // det 1
    for (const auto& g : gs) {
        REQUIRE(det(g) == 1);
        std::map<std::string, RationalMatrix> maps;
        maps.emplace("a", g * kronecker_V().map("a"));
        maps.emplace("b", g * kronecker_V().map("b"));
        Representation moved(kronecker_quiver(), DimVector({"x", "y"}, {1, 2}), std::move(maps));
        for (auto w : {Weight({"x", "y"}, {2, -1}), Weight({"x", "y"}, {-2, 1}),
                       Weight({"x", "y"}, {4, -2})}) {
            for (std::uint64_t seed : {0ull, 9ull})
                CHECK(is_semistable(moved, w, 8, seed).decision ==
                      is_semistable(kronecker_V(), w, 8, seed).decision);
        }
    }
}

TEST_CASE("null_cone_membership smoke cases") {
    auto zero11 = corpus::zero_rep(kronecker_quiver(), DimVector({"x", "y"}, {1, 1}));
    auto vz = null_cone_membership(zero11, Int(3));
    CHECK(vz.decision == Decision::InNullConeProbably);
    CHECK(vz.exact);
    CHECK(vz.failure_probability_bound == 0);
    CHECK(vz.weights_tested > 0);

    auto one = null_cone_membership(corpus::k11(1, 0), Int(3));
    CHECK(one.decision == Decision::NotInNullCone);
    REQUIRE(one.certificate.has_value());
    CHECK(one.certificate->sigma == Weight({"x", "y"}, {1, -1}));
    CHECK(one.certificate->det_value != 0);

    CHECK_THROWS_AS(null_cone_membership(corpus::k11(1, 0), Int(0)), ArgumentError);
}

TEST_CASE("ray_weight") {
    DimVector alpha({"1", "2", "3"}, {2, 3, 1});
    std::vector<DimVector> betas = {DimVector({"1", "2", "3"}, {2, 1, 0}),
                                    DimVector({"1", "2", "3"}, {0, 2, 1})};
    auto r = ray_weight(alpha, betas);
    CHECK(r.rank_ok);
    CHECK(r.weight == Weight({"1", "2", "3"}, {-1, 2, -4}));
    CHECK(r.coordinate_bound == 9);        // (6/2)^2
    CHECK(r.sigma_norm_bound == 27);       // 6^3 / (2*4)
    CHECK(sigma_norm(r.weight, alpha) == 6);

    DimVector alpha4({"1", "2", "3", "4"}, {2, 3, 3, 1});
    auto r4 = ray_weight(alpha4, {DimVector({"1", "2", "3", "4"}, {2, 1, 0, 0}),
                                  DimVector({"1", "2", "3", "4"}, {0, 2, 1, 0}),
                                  DimVector({"1", "2", "3", "4"}, {0, 0, 2, 1})});
    CHECK(r4.weight == Weight({"1", "2", "3", "4"}, {-1, 2, -4, 8}));
    CHECK(sigma_norm(r4.weight, alpha4) == 14);

    // the result is the kernel of the stack, nothing more: this beta does not
    // pin any particular representation's ray, and weight . alpha != 0 here
    auto rk = ray_weight(DimVector({"x", "y"}, {1, 2}), {DimVector({"x", "y"}, {0, 1})});
    CHECK(rk.rank_ok);
    CHECK(rk.weight == Weight({"x", "y"}, {-1, 0}));
    CHECK(weight_apply(rk.weight, DimVector({"x", "y"}, {1, 2})) != 0);

    auto dep = ray_weight(alpha, {DimVector({"1", "2", "3"}, {1, 1, 0}),
                                  DimVector({"1", "2", "3"}, {2, 2, 0})});
    CHECK_FALSE(dep.rank_ok);
    CHECK(dep.weight.is_zero());

    CHECK_THROWS_AS(ray_weight(alpha, {betas[0]}), ShapeError);
    CHECK_THROWS_AS(ray_weight(alpha, {DimVector({"a", "b", "c"}, {1, 1, 1}),
                                       DimVector({"a", "b", "c"}, {0, 1, 1})}),
                    DomainMismatchError);
}

TEST_CASE("ray_weight resolves the Kronecker ray together with is_semistable") {
    DimVector alpha({"x", "y"}, {2, 1});
    auto r = ray_weight(alpha, {alpha});  // the whole representation is a valid row
    REQUIRE(r.rank_ok);
    CHECK(r.weight == Weight({"x", "y"}, {-1, 2}));
    // the kernel line carries both signs; the representation picks one
    CHECK(is_semistable(kronecker_W(), r.weight).decision == Decision::ProbablyUnstable);
    std::vector<Int> neg;
    for (std::size_t i = 0; i < r.weight.size(); ++i) neg.push_back(-r.weight.value(i));
    CHECK(is_semistable(kronecker_W(), Weight(r.weight.vertices(), neg)).decision ==
          Decision::Semistable);
}

TEST_CASE("weight_bound_check") {
    auto c1 = weight_bound_check(Weight({"1", "2", "3"}, {-1, 2, -4}),
                                 DimVector({"1", "2", "3"}, {2, 3, 1}));
    CHECK(c1.coord_ok);
    CHECK(c1.norm_ok);
    CHECK(c1.coordinate_bound == 9);
    CHECK(c1.sigma_norm_bound == 27);

    CHECK_THROWS_AS(weight_bound_check(Weight({"x", "y"}, {2, -1}), DimVector({"x", "y"}, {1, 1})),
                    NotOrthogonalError);

    auto c2 = weight_bound_check(Weight({"x", "y"}, {2, -1}), DimVector({"x", "y"}, {1, 2}));
    CHECK(c2.coord_ok);   // 2 <= (3/1)^1
    CHECK(c2.norm_ok);    // 2 <= 9/2
    CHECK(c2.sigma_norm_bound == make_rat(Int(9), Int(2)));

    auto c0 = weight_bound_check(Weight::zero({"x", "y"}), DimVector({"x", "y"}, {1, 2}));
    CHECK(c0.coord_ok);
    CHECK(c0.norm_ok);
}
