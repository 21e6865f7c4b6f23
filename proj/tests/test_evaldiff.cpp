#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aromakit/evaldiff.hpp"
#include "aromakit/spaces.hpp"

using namespace aromakit;

namespace {
FormCombo fc(const std::string& s) { return parse_combo(s); }

Polynomial poly(const std::string& s, int d = 3) { return parse_polynomial(s, d); }
} // namespace

TEST_CASE("polynomial arithmetic and parsing") {
    Polynomial p = poly("x1^2*x2 + 3*x3");
    CHECK(p.derivative(0) == poly("2*x1*x2"));
    CHECK(p.derivative(2) == poly("3"));
    CHECK(poly("1/2*x1 + 1/2*x1") == poly("x1"));
    CHECK(poly("x1 - x1").is_zero());
    CHECK(parse_polynomial(to_string(p), 3) == p);
    CHECK_THROWS(poly("x9"));
    CHECK_THROWS(poly("= nonsense"));
}

TEST_CASE("field JSON round trip") {
    PolyVectorField f = field_from_json(R"({"d":2,"components":["x2","1 - x1"]})");
    CHECK(f.d == 2);
    CHECK(f.components[0] == parse_polynomial("x2", 2));
    PolyVectorField g = field_from_json(field_to_json(f));
    CHECK(g.components[1] == f.components[1]);
    CHECK_THROWS(field_from_json(R"({"d":2,"components":["x1"]})"));
}

TEST_CASE("elementary differentials of the basic forests") {
    PolyVectorField f = random_field(3, 2, 99);

    // the one-loop aroma evaluates to the divergence
    PolyTensor loop = elementary_differential(fc("<b>"), f);
    CHECK(loop.rank() == 0);
    CHECK(loop.component({}) == divergence(f));

    // the single tree evaluates to the field itself
    PolyTensor id = elementary_differential(fc("b"), f);
    for (int i = 0; i < 3; ++i) CHECK(id.component({i}) == f.components[i]);

    // b[b]: sum_j f^i_j f^j
    PolyTensor bb = elementary_differential(fc("b[b]"), f);
    for (int i = 0; i < 3; ++i) {
        Polynomial expect(3);
        for (int j = 0; j < 3; ++j)
            expect += f.components[i].derivative(j) * f.components[j];
        CHECK(bb.component({i}) == expect);
    }

    CHECK(elementary_differential(FormCombo(), f).is_zero());
    CHECK_THROWS(elementary_differential(fc("o1"), f));
}

TEST_CASE("linearity and multiplicativity") {
    PolyVectorField f = random_field(2, 2, 7);
    FormCombo a = fc("b[b]"), b = fc("<b> b");
    FormCombo lin = Rational(3) * a + b;
    PolyTensor lhs = elementary_differential(lin, f);
    PolyTensor ra = elementary_differential(a, f);
    PolyTensor rb = elementary_differential(b, f);
    for (int i = 0; i < 2; ++i) {
        Polynomial want = Polynomial::monomial(2, {}, 3) * ra.component({i}) + rb.component({i});
        CHECK(lhs.component({i}) == want);
    }
    // juxtaposition multiplies the values
    PolyTensor prod = elementary_differential(fc("<b> <b>"), f);
    Polynomial dv = divergence(f);
    CHECK(prod.component({}) == dv * dv);

    // a scalar component scales a rooted one
    PolyTensor mixed = elementary_differential(fc("<b> b"), f);
    for (int i = 0; i < 2; ++i) CHECK(mixed.component({i}) == dv * f.components[i]);
}

TEST_CASE("divergence basics") {
    PolyVectorField rot = field_from_json(R"({"d":2,"components":["-1*x2","x1"]})");
    CHECK(divergence(rot).is_zero());
    PolyVectorField sq = field_from_json(R"({"d":2,"components":["x1^2","0*x1"]})");
    CHECK(divergence(sq) == parse_polynomial("2*x1", 2));
}

TEST_CASE("dH compatibility with the analytic divergence") {
    std::vector<uint64_t> seeds = {1, 2};
    for (uint64_t s : seeds) {
        PolyVectorField f = random_field(3, 2, s);
        CHECK(check_dH_identity(fc("b[b]"), f));
        CHECK(check_dH_identity(fc("<b> b"), f));
    }
    for (int N = 1; N <= 3; ++N)
        for (const Forest& g : generate(N, 1, 0, false))
            for (uint64_t s : seeds) CHECK(check_dH_identity(FormCombo(g), random_field(3, 2, s)));
}

TEST_CASE("random divergence-free fields") {
    for (uint64_t s : {10u, 11u, 12u}) {
        PolyVectorField f = random_divfree_field(3, 2, s);
        CHECK(divergence(f).is_zero());
    }
    // determinism
    CHECK(random_divfree_field(2, 1, 5).components[0] ==
          random_divfree_field(2, 1, 5).components[0]);
    CHECK_THROWS(random_divfree_field(1, 1, 0));
}

TEST_CASE("numeric solenoidal checks") {
    FormCombo psi3 = fc("1/2 * <b,b> b + 1/2 * <b[b]> b + -1/2 * <b> b[b] + -1/2 * b[b,b]");
    CHECK(check_solenoidal_numeric(psi3, false, 3));
    FormCombo s3 = fc("1/2 * <b,b> b + -1/2 * b[b,b]");
    CHECK(check_solenoidal_numeric(s3, true, 3));
    CHECK(!check_solenoidal_numeric(s3, false, 3)); // needs Div f = 0
    CHECK(!check_solenoidal_numeric(fc("b[b]"), false, 3));
}
