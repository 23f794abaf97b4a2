#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "fano/localize.hpp"

using namespace fano;

namespace {

// String-equation recursion for genus-0 psi integrals, independent of the
// closed multinomial formula.
Rat psi_oracle(int m, std::vector<int> a) {
    int sum = 0;
    for (int x : a) sum += x;
    if (sum != m - 3) return Rat(0);
    if (m == 3) return Rat(1);
    // Some exponent is zero; remove that point via the string equation.
    size_t j = 0;
    while (a[j] != 0) ++j;
    std::vector<int> rest;
    for (size_t i = 0; i < a.size(); ++i)
        if (i != j) rest.push_back(a[i]);
    Rat total(0);
    for (size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == 0) continue;
        std::vector<int> next = rest;
        next[i] -= 1;
        total += psi_oracle(m - 1, next);
    }
    return total;
}

void all_tuples(int len, int sum, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        if (sum == 0) out.push_back(cur);
        return;
    }
    for (int a = 0; a <= sum; ++a) {
        cur.push_back(a);
        all_tuples(len, sum - a, cur, out);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("psi integrals: pinned values and string-equation oracle") {
    CHECK(psi_integral(3, {0, 0, 0}) == rat(1));
    CHECK(psi_integral(4, {1, 0, 0, 0}) == rat(1));
    CHECK(psi_integral(5, {1, 1, 0, 0, 0}) == rat(2));
    CHECK(psi_integral(5, {2, 0, 0, 0, 0}) == rat(1));
    CHECK(psi_integral(4, {0, 0, 0, 0}) == rat(0));  // degree mismatch
    for (int m = 3; m <= 7; ++m) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur;
        all_tuples(m, m - 3, cur, tuples);
        for (const auto& t : tuples) CHECK(psi_integral(m, t) == psi_oracle(m, t));
    }
}

TEST_CASE("domain deformation factors") {
    auto w = TorusWeights{2, {rat(1), rat(0)}, 0};

    DecoratedGraph single;
    single.r = 1;
    single.n = 2;
    single.labels = {{{1}}, {{2}}};
    single.edges = {{0, 1, 1}};
    auto f = domain_aut_def_factors(single, w);
    CHECK(f.ext0 == rat(-1));  // omega * (-omega) with omega = 1
    CHECK(f.node_smoothings == rat(1));
    CHECK(f.moduli.empty());

    single.marking = 0;  // marked end contributes no reparametrization
    auto fm = domain_aut_def_factors(single, w);
    CHECK(fm.ext0 == rat(-1));  // only the unmarked end: -omega

    DecoratedGraph path;
    path.r = 1;
    path.n = 2;
    path.labels = {{{1}}, {{2}}, {{1}}};
    path.edges = {{0, 1, 1}, {1, 2, 1}};
    auto fp = domain_aut_def_factors(path, w);
    CHECK(fp.node_smoothings == rat(-2));  // two flags at the middle, each -1

    path.marking = 1;  // moduli vertex with n(v) = 3
    auto fpm = domain_aut_def_factors(path, w);
    CHECK(fpm.node_smoothings == rat(1));
    REQUIRE(fpm.moduli.size() == 1);
    CHECK(fpm.moduli[0].special_points == 3);
    CHECK(moduli_vertex_integral(fpm.moduli[0]) == rat(1));  // 1/((-1)(-1))
}

TEST_CASE("twist Euler classes on a V5 edge") {
    auto w = TorusWeights::specialize(5, 3);
    DecoratedGraph g;
    g.r = 2;
    g.n = 5;
    g.labels = {{{1, 2}}, {{1, 3}}};
    g.edges = {{0, 1, 1}};
    TwistSpec twist = TwistSpec::for_target(target_geometry(Target::V5));
    auto [eF1, eF2] = twist_euler(g, twist, w);
    Rat la = w.alpha[0] + w.alpha[1];
    Rat lb = w.alpha[0] + w.alpha[2];
    CHECK(eF1 == pow_rat(la * lb, 3));
    // H^1(O(-2)) on a degree-1 edge is one weight, the midpoint.
    CHECK(eF2 == (rat(-2) * la + rat(-2) * lb) / 2);
}

TEST_CASE("local P1 multiple covers give 1/d^3") {
    // Twisted invariants of O(-1)+O(-1) over P1: the degree-d cover
    // contribution. Pins every convention in the graph sum independently of
    // the target tables.
    TwistSpec twist;
    twist.negative_exponents = {1, 1};
    for (int d = 1; d <= 3; ++d) {
        auto records = enumerate_graphs(1, 2, d, 0);
        for (auto seed : {7ULL, 99ULL}) {
            auto w = TorusWeights::specialize(2, seed);
            Rat sum = sum_over_graphs(records, twist, std::nullopt, w, 1);
            CHECK(sum == rat(1, d * d * d));
        }
    }
}

TEST_CASE("single contribution is invariant under ambient relabeling") {
    auto w = TorusWeights::specialize(5, 17);
    DecoratedGraph g;
    g.r = 2;
    g.n = 5;
    g.labels = {{{1, 2}}, {{1, 3}}, {{3, 4}}};
    g.edges = {{0, 1, 1}, {1, 2, 2}};
    g.marking = 0;
    TwistSpec twist = TwistSpec::for_target(target_geometry(Target::V5));
    InsertionLift lift = resolve_lift(target_geometry(Target::V5), "sigma1sq");
    auto aut = automorphism_order(g);

    // sigma = (1 2 3 4 5) -> (4 5 1 2 3); permute labels and weights together.
    std::map<int, int> sigma{{1, 4}, {2, 5}, {3, 1}, {4, 2}, {5, 3}};
    DecoratedGraph gp = g;
    for (auto& lab : gp.labels) {
        for (auto& i : lab.idx) i = sigma[i];
        std::sort(lab.idx.begin(), lab.idx.end());
    }
    TorusWeights wp = w;
    for (const auto& [from, to] : sigma) wp.alpha[to - 1] = w.alpha[from - 1];

    CHECK(graph_contribution(g, twist, lift, w, aut) ==
          graph_contribution(gp, twist, lift, wp, aut));
}

TEST_CASE("twisted GW degree 1: both targets") {
    auto v5 = twisted_gw(Target::V5, 1, "sigma1sq");
    CHECK(v5.value == rat(-5));
    CHECK(v5.seeds.size() == 2);
    auto v22 = twisted_gw(Target::V22, 1, "sigma1sq");
    CHECK(v22.value == rat(2));
}

TEST_CASE("twisted GW degree 2 on V5 with lift and job independence") {
    GWOptions opts;
    auto a = twisted_gw(Target::V5, 2, "sigma1sq", opts);
    CHECK(a.value == rat(-145, 4));
    opts.jobs = 3;
    auto b = twisted_gw(Target::V5, 2, "sigma11", opts);
    CHECK(b.value == rat(-145, 4));
    auto c = twisted_gw(Target::V5, 2, "sigma2", opts);
    CHECK(c.value == rat(-145, 4));
}

TEST_CASE("degenerate specializations raise the retry signal") {
    TwistSpec twist = TwistSpec::for_target(target_geometry(Target::V5));
    InsertionLift lift = resolve_lift(target_geometry(Target::V5), "sigma1sq");

    // Repeated weights kill a tangent weight.
    auto records1 = enumerate_graphs(2, 5, 1, 1);
    TorusWeights dup{5, {rat(1), rat(1), rat(3), rat(4), rat(5)}, 0};
    CHECK_THROWS_AS(sum_over_graphs(records1, twist, lift, dup, 1), DegenerateWeights);

    // An arithmetic progression kills a node-smoothing weight omega_1 +
    // omega_2 on some 2-path at degree 2.
    auto records2 = enumerate_graphs(2, 5, 2, 1);
    TorusWeights ap{5, {rat(1), rat(2), rat(3), rat(4), rat(5)}, 0};
    CHECK_THROWS_AS(sum_over_graphs(records2, twist, lift, ap, 1), DegenerateWeights);
}
