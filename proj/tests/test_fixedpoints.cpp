#include <catch2/catch_amalgamated.hpp>

#include "fano/fixedpoints.hpp"

using namespace fano;

namespace {
TorusWeights explicit_weights(std::vector<long> vals) {
    TorusWeights w;
    w.n = static_cast<int>(vals.size());
    for (long v : vals) w.alpha.push_back(rat(v));
    return w;
}
}  // namespace

TEST_CASE("fixed point counts") {
    CHECK(fixed_points(2, 5).size() == 10);
    CHECK(fixed_points(3, 7).size() == 35);
    CHECK(fixed_points(1, 2).size() == 2);
}

TEST_CASE("neighbor counts are r(n-r)") {
    CHECK(neighbors({{1, 2}}, 5).size() == 6);
    CHECK(neighbors({{1, 2, 3}}, 7).size() == 12);
    CHECK(neighbors({{1}}, 2).size() == 1);
    for (const auto& p : fixed_points(2, 5)) {
        auto nb = neighbors(p, 5);
        CHECK(nb.size() == 6);
        for (const auto& q : nb) {
            std::vector<int> inter;
            std::set_intersection(p.idx.begin(), p.idx.end(), q.idx.begin(), q.idx.end(),
                                  std::back_inserter(inter));
            CHECK(inter.size() == 1);
        }
    }
}

TEST_CASE("tangent weights") {
    auto w = explicit_weights({3, 1});
    auto t = tangent_weights({{1}}, w);
    REQUIRE(t.size() == 1);
    CHECK(t[0] == rat(2));

    auto w5 = TorusWeights::specialize(5, 7);
    auto tw = tangent_weights({{1, 2}}, w5);
    CHECK(tw.size() == 6);

    // A global shift of all alphas leaves tangent weights unchanged.
    auto shifted = w5;
    for (auto& a : shifted.alpha) a += rat(1234567);
    CHECK(tangent_weights({{1, 2}}, w5) == tangent_weights({{1, 2}}, shifted));

    // A vanishing tangent weight is a degenerate specialization.
    auto bad = explicit_weights({4, 1, 4, 2, 3});
    CHECK_THROWS_AS(tangent_weights({{1, 2}}, bad), DegenerateWeights);
}

TEST_CASE("line bundle cohomology weights") {
    // m >= 0: endpoint interpolation.
    EquivLineData pos(rat(2), rat(0), 2, rat(1));
    auto c = line_bundle_cohomology_weights(pos);
    CHECK(c.h0 == std::vector<Rat>{rat(2), rat(1), rat(0)});
    CHECK(c.h1.empty());

    // m = -2: the Serre-duality midpoint.
    EquivLineData neg(rat(2), rat(0), -2, rat(-1));
    auto c2 = line_bundle_cohomology_weights(neg);
    CHECK(c2.h0.empty());
    CHECK(c2.h1 == std::vector<Rat>{rat(1)});

    // m = -3.
    EquivLineData neg3(rat(3), rat(0), -3, rat(-1));
    auto c3 = line_bundle_cohomology_weights(neg3);
    CHECK(c3.h1 == std::vector<Rat>{rat(2), rat(1)});

    // m = -1 has no cohomology at all.
    EquivLineData neg1(rat(1), rat(0), -1, rat(-1));
    auto c4 = line_bundle_cohomology_weights(neg1);
    CHECK(c4.h0.empty());
    CHECK(c4.h1.empty());

    // Dimension counts across a range of degrees.
    for (int m = 0; m <= 5; ++m)
        CHECK(line_bundle_cohomology_weights(EquivLineData(rat(m), rat(0), m, rat(1))).h0.size() ==
              static_cast<size_t>(m + 1));
    for (int m = -6; m <= -1; ++m)
        CHECK(line_bundle_cohomology_weights(EquivLineData(rat(m), rat(0), m, rat(1))).h1.size() ==
              static_cast<size_t>(-m - 1));

    CHECK_THROWS_AS(EquivLineData(rat(5), rat(0), 2, rat(1)), std::invalid_argument);
}

TEST_CASE("edge tangent euler on P1") {
    // Gr(1,2), d_e = 1, alpha = (1,0): H^0(O(2)) has weights {1,0,-1};
    // the zero is the reparametrization direction, so e^T = -1.
    auto w = explicit_weights({1, 0});
    EdgeGeometry e({{1}}, {{2}}, 1);
    CHECK(edge_tangent_euler(e, w) == rat(-1));

    // Degree-2 cover: moving weights {1, 1/2, -1/2, -1}, product 1/4.
    EdgeGeometry e2({{1}}, {{2}}, 2);
    CHECK(edge_tangent_euler(e2, w) == rat(1, 4));
}

TEST_CASE("edge tangent euler on Gr(2,5) matches the two-factor expansion") {
    // r=2, n=5, d_e=1: the (H^1-H^0)(S^v (x) S) factor reduces to
    // 1/((a_a - a_s)(a_b - a_s)) with an empty i<j product, and the
    // S^v (x) O^5 factor is the plain moving-weight product.
    auto w = TorusWeights::specialize(5, 11);
    EdgeGeometry e({{1, 2}}, {{1, 3}}, 1);
    const Rat& s = w.alpha[0];
    const Rat& a = w.alpha[1];
    const Rat& b = w.alpha[2];

    Rat h0_part(1);
    for (int k = 1; k <= 5; ++k) {
        if (k != 1) h0_part *= s - w.alpha[k - 1];
        if (k != 2) h0_part *= a - w.alpha[k - 1];
        if (k != 3) h0_part *= b - w.alpha[k - 1];
    }
    Rat expected = h0_part / ((a - s) * (b - s));
    CHECK(edge_tangent_euler(e, w) == expected);
}

TEST_CASE("insertion weights") {
    auto w = explicit_weights({1, 2, 30, 40, 50});
    InsertionLift s1{InsertionLift::Kind::Sigma1Sq, rat(5)};
    CHECK(insertion_weight(s1, {{1, 2}}, w) == rat(9, 5));
    InsertionLift s11{InsertionLift::Kind::Sigma11, rat(2)};
    CHECK(insertion_weight(s11, {{1, 2}}, w) == rat(1));  // e2 = 2, divided by 2
    InsertionLift s2{InsertionLift::Kind::Sigma2, rat(3)};
    CHECK(insertion_weight(s2, {{1, 2}}, w) == rat(7, 3));  // (9 - 2)/3
}
