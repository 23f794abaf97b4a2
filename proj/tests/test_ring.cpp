#include <catch2/catch_amalgamated.hpp>

#include "fano/ring.hpp"
#include "fano/targets.hpp"
#include "test_util.hpp"

using namespace fano;

TEST_CASE("V5 relations reduce as stated") {
    const auto& y = ring_v5();
    CHECK(y.var("h1") * y.var("h1") == y.var("h2") * rat(5));
    CHECK(y.var("h1") * y.var("h2") == y.var("h3"));
    CHECK((y.var("h2") * y.var("h2")).is_zero());
    CHECK(y.one() * y.var("h2") == y.var("h2"));
    CHECK(y.integrate(y.var("h1") * y.var("h1") * y.var("h1")) == rat(5));
}

TEST_CASE("V22 intersection numbers") {
    const auto& y = ring_v22();
    auto h1 = y.var("h1");
    CHECK(y.integrate(h1 * h1 * h1) == rat(22));
    CHECK(y.integrate(y.one()) == rat(0));
    CHECK(y.integrate(y.var("h3")) == rat(1));
}

TEST_CASE("Gr(2,5) reduction: frozen normal forms") {
    const auto& g = ring_gr25();
    auto m1 = g.var("m1"), m2 = g.var("m2");
    // Derived by reducing against c4(Q) and c5(Q) by hand:
    //   m1^4 = 3 m1^2 m2 - m2^2, m1^3 m2 = 2 m1 m2^2, m1^2 m2^2 = m2^3.
    CHECK(m1 * m1 * m1 * m1 == m1 * m1 * m2 * rat(3) - m2 * m2);
    CHECK(m1 * m1 * m1 * m2 == m1 * m2 * m2 * rat(2));
    CHECK(m1 * m1 * m2 * m2 == m2 * m2 * m2);
    CHECK(g.var("m1", 6) == g.var("m2", 3) * rat(5));
    CHECK(g.integrate(g.var("m1", 6)) == rat(5));
    CHECK(g.integrate(g.var("m2", 3)) == rat(1));
}

TEST_CASE("normal_form is a ring homomorphism and idempotent") {
    const auto& g = ring_gr25();
    const auto& gens = g.generators();
    Poly a = make_poly(gens, {{rat(3), {{"m1", 2}}}, {rat(-1, 2), {{"m2", 1}}}});
    Poly b = make_poly(gens, {{rat(1), {{"m1", 3}}}, {rat(7), {{"m1", 1}, {"m2", 1}}}});
    Poly ab;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            ab[m] += ca * cb;
        }
    CHECK(g.normal_form(ab) == g.normal_form(a) * g.normal_form(b));
    // Linearity.
    Poly sum = a;
    for (const auto& [m, c] : b) sum[m] += c;
    CHECK(g.normal_form(sum) == g.normal_form(a) + g.normal_form(b));
    CHECK_THROWS_AS(g.var("nope"), std::invalid_argument);
}

TEST_CASE("Poincare pairing is nondegenerate in every ring in use") {
    CHECK(test::poincare_nondegenerate(ring_v5()));
    CHECK(test::poincare_nondegenerate(ring_v22()));
    CHECK(test::poincare_nondegenerate(ring_gr25()));
    CHECK(test::poincare_nondegenerate(projective_space_ring(2)));
    CHECK(test::poincare_nondegenerate(projective_space_ring(3)));
    CHECK(test::poincare_nondegenerate(projective_space_ring(4)));
    CHECK(test::poincare_nondegenerate(moduli_times_y(Target::V5, 1)));
    CHECK(test::poincare_nondegenerate(moduli_times_y(Target::V5, 2)));
    CHECK(test::poincare_nondegenerate(moduli_times_y(Target::V5, 3)));
    CHECK(test::poincare_nondegenerate(moduli_times_y(Target::V22, 1)));
    CHECK(test::poincare_nondegenerate(moduli_times_y(Target::V22, 2)));
    CHECK(test::poincare_nondegenerate(moduli_times_y(Target::V22, 3)));
}

TEST_CASE("product ring Kuenneth push and embed") {
    const auto& prod = moduli_times_y(Target::V5, 3);  // Gr(2,5) x V5
    const auto& m = ring_gr25();
    const auto& y = ring_v5();
    auto x = prod.embed_left(m.var("m1", 2)) * prod.embed_right(y.var("h3"));
    CHECK(prod.push_to_left(x) == m.var("m1", 2));
    auto low = prod.embed_left(m.var("m1")) * prod.embed_right(y.var("h2"));
    CHECK(prod.push_to_left(low).is_zero());
    // Integration against the product point class.
    auto pt = prod.embed_left(m.var("m2", 3)) * prod.embed_right(y.var("h3"));
    CHECK(prod.integrate(pt) == rat(1));
    CHECK(prod.dimension() == 9);
}
