#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "aromakit/algebra.hpp"
#include "util.hpp"

using namespace aromakit;
using testutil::random_combo;
using testutil::random_form;

namespace {

FormCombo fc(const std::string& s) { return parse_combo(s); }

MarkedCombo random_marked(std::mt19937_64& rng, int max_indeg = 4) {
    // forest detached at a node of in-degree <= max_indeg
    const int N = 3 + static_cast<int>(rng() % 3);
    auto pool = generate(N, 1 + static_cast<int>(rng() % 2), 0, false);
    for (int tries = 0; tries < 50; ++tries) {
        const Forest& f = pool[rng() % pool.size()];
        int v = static_cast<int>(rng() % f.order());
        if (static_cast<int>(f.predecessors(v).size()) <= max_indeg &&
            !f.predecessors(v).empty())
            return MarkedCombo(detach_at(f, v));
    }
    return MarkedCombo(detach_at(parse("b[b]"), 0));
}

} // namespace

TEST_CASE("wedge kills repeated trees") {
    CHECK(wedge(fc("b b")).is_zero());
    CHECK(wedge(fc("<b> b[b] b[b]")).is_zero());
}

TEST_CASE("wedge of the two-tree example") {
    FormCombo w = wedge(fc("b b[b]"));
    CHECK(w == fc("1/2 * b b[b] + -1/2 * b[b] b"));
    CHECK(wedge(w) == w);
}

TEST_CASE("wedge is an idempotent projection") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 40; ++i) {
        int N = 2 + static_cast<int>(rng() % 3);
        int n = static_cast<int>(rng() % 3);
        int p = static_cast<int>(rng() % 2);
        if (n > N || p > N) continue;
        FormCombo c = random_combo(N, n, p, false, rng);
        FormCombo w = wedge(c);
        CHECK(wedge(w) == w);
    }
}

TEST_CASE("dH worked examples") {
    CHECK(dH(fc("b")) == fc("<b>"));

    FormCombo g2 = wedge(fc("b b[b]"));
    FormCombo expect =
        fc("1/2 * <b,b> b + 1/2 * <b[b]> b + -1/2 * <b> b[b] + -1/2 * b[b,b]");
    CHECK(dH(g2) == expect);

    FormCombo g3 = wedge(fc("b o1"));
    CHECK(dH(g3) == fc("1/2 * <o1> b + 1/2 * b[o1] + -1/2 * <b> o1 + -1/2 * o1[b]"));

    CHECK_THROWS(dH(fc("<b>")));
}

TEST_CASE("dV worked examples") {
    CHECK(dV(fc("b")) == fc("o1"));
    CHECK(dV(fc("<b>")) == fc("<o1>"));

    FormCombo g2 = wedge(fc("b b[b]"));
    FormCombo expect = wedge(fc("o1 b[b]")) + wedge(fc("b o1[b]")) + wedge(fc("b b[o1]"));
    CHECK(dV(g2) == expect);

    FormCombo g3 = wedge(fc("b o1"));
    CHECK(dV(g3) == wedge(fc("o2 o1")));
}

TEST_CASE("derivatives square to zero and commute") {
    std::mt19937_64 rng(707);
    for (int i = 0; i < 60; ++i) {
        int N = 2 + static_cast<int>(rng() % 4);
        int n = static_cast<int>(rng() % 3);
        int p = static_cast<int>(rng() % 2);
        if (n > N || p > N) continue;
        FormCombo c = random_form(N, n, p, false, rng);
        if (c.is_zero()) continue;
        if (n >= 2) CHECK(dH(dH(c)).is_zero());
        CHECK(dV(dV(c)).is_zero());
        if (n >= 1) CHECK(dV(dH(c)) == dH(dV(c)));
    }
}

TEST_CASE("dH squared on the worked example") {
    FormCombo g2 = wedge(fc("b b[b]"));
    CHECK(dH(dH(g2)).is_zero());
}

TEST_CASE("trace examples and commuting diagram") {
    CHECK(trace_form(fc("o1")) == fc("<b>"));
    CHECK(trace_form(fc("o1[b]")) == fc("<b[b]>"));
    CHECK(trace_form(fc("b[o1]")) == fc("<b,b>"));
    std::mt19937_64 rng(3);
    for (int N = 1; N <= 4; ++N)
        for (const Forest& f : generate(N, 1, 0, false)) {
            FormCombo g(f);
            CHECK(trace_form(dV(g)) == dH(g));
        }
    CHECK_THROWS(trace_form(fc("b")));
}

TEST_CASE("Euler operator vanishes on divergences") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 25; ++i) {
        int N = 2 + static_cast<int>(rng() % 3);
        FormCombo c = random_form(N, 1, 0, false, rng);
        if (!c.is_zero()) {
            CHECK(euler_E(dH(c)).is_zero());
            CHECK(euler_Estar(dH(c)).is_zero());
        }
        FormCombo c2 = random_form(N, 2, 0, false, rng);
        if (!c2.is_zero()) {
            FormCombo d = dH(c2);
            CHECK(euler_E(d).is_zero());
            CHECK(euler_E_root(d).is_zero());
        }
    }
}

TEST_CASE("Estar annihilates divergences of every aromatic tree up to order 6") {
    for (int N = 1; N <= 6; ++N)
        for (const Forest& f : generate(N, 1, 0, false))
            CHECK(euler_Estar(dH(FormCombo(f))).is_zero());
}

TEST_CASE("Estar output block") {
    CHECK(euler_Estar(fc("<b>")).is_zero());
    CHECK(euler_Estar(fc("<b[b]>")) == fc("2 * <b[o1]>"));
    CHECK(euler_Estar(fc("<b,b>")) == fc("-2 * <b[o1]>"));
    CHECK(euler_Estar(fc("<b> <b>")) == fc("-2 * <b[o1]>"));
}

TEST_CASE("E of the single one-loop aroma vanishes") {
    // forced by E dH = 0 applied to dH(b) = <b>
    CHECK(euler_E(fc("<b>")).is_zero());
}

TEST_CASE("higher Euler operators vanish beyond the order") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        int N = 1 + static_cast<int>(rng() % 4);
        FormCombo c = random_combo(N, 1, 0, false, rng);
        for (int q = N + 1; q <= N + 2; ++q) CHECK(euler_Eq(c, q).is_zero());
        CHECK(euler_Eq(c, 0) == MarkedCombo(euler_E(c)));
    }
}

TEST_CASE("decomposition |gamma| gamma = sum D^q E^q gamma") {
    for (int N = 1; N <= 4; ++N)
        for (int n = 0; n <= 2 && n <= N; ++n)
            for (int p = 0; p <= (N > n ? 1 : 0); ++p)
                for (const Forest& f : generate(N, n, p, false)) {
                    FormCombo acc;
                    for (int q = 0; q <= N; ++q)
                        acc += to_form(D_q(euler_Eq(FormCombo(f), q), q, false));
                    FormCombo expect(f, N);
                    CHECK(acc == expect);
                }
}

TEST_CASE("per-vertex decomposition gamma = sum_q D^q E^q_v gamma") {
    for (int N = 1; N <= 4; ++N)
        for (const Forest& f : generate(N, 1, 0, false))
            for (int v = 0; v < f.order(); ++v) {
                FormCombo acc;
                for (int q = 0; q <= N; ++q)
                    acc += to_form(D_q(euler_Eq_at(f, v, q), q, false));
                CHECK(acc == FormCombo(f));
            }
}

TEST_CASE("binomial composition of grafting operators") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        MarkedCombo m = unmark(random_marked(rng));
        int d = m.terms().begin()->first.detached;
        for (int n = 0; n <= d; ++n)
            for (int p = 0; p <= n; ++p) {
                MarkedCombo lhs = D_q(m, n, false);
                lhs *= Rational(binomial(n, p));
                MarkedCombo rhs = D_q(D_q(m, n - p, false), p, false);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("Leibniz-style recombination of detach and graft") {
    std::mt19937_64 rng(13);
    for (int done = 0; done < 30; ++done) {
        MarkedCombo md = random_marked(rng);
        int indeg = md.terms().begin()->first.detached;
        // mark kept as a position tracker; diamond semantics already removed
        for (int q = 0; q + 1 <= indeg; ++q)
            for (int k = 0; q + k + 1 <= indeg; ++k) {
                int p = indeg - 1 - q - k;
                MarkedCombo Dp = D_q(md, p, true);
                MarkedCombo lhs = D_q(D_q_to_mark(Dp, k), q + 1, false);
                lhs *= Rational(q + 1);
                MarkedCombo r1 = D_q(D_q_to_mark(Dp, k + 1), q, false);
                r1 *= Rational(k + 1);
                MarkedCombo r2 = D_q(D_q_to_mark(D_q(md, p + 1, true), k), q, false);
                r2 *= Rational(p + 1);
                CHECK(unmark(lhs) == unmark(r1 + r2));
            }
    }
}

TEST_CASE("closed composition formula for detach and graft") {
    std::mt19937_64 rng(17);
    for (int done = 0; done < 20; ++done) {
        MarkedCombo md = random_marked(rng);
        int indeg = md.terms().begin()->first.detached;
        for (int q = 0; q <= indeg; ++q)
            for (int k = 0; q + k <= indeg; ++k) {
                int p = indeg - q - k;
                MarkedCombo lhs = D_q(D_q_to_mark(D_q(md, p, true), k), q, false);
                MarkedCombo rhs;
                for (int m = 0; m <= k; ++m) {
                    MarkedCombo term = D_q(D_q(md, p + k - m, true), q + m, false);
                    term *= Rational(binomial(q + m, q) * binomial(p + k - m, p) *
                                     ((k - m) % 2 == 0 ? 1 : -1));
                    rhs += term;
                }
                CHECK(unmark(lhs) == unmark(rhs));
            }
    }
}

TEST_CASE("interior Euler operator is a projection killing divergences") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        int N = 2 + static_cast<int>(rng() % 3);
        FormCombo c = random_form(N, 0, 1, false, rng);
        FormCombo ic = interior_euler(c);
        CHECK(interior_euler(ic) == ic);
        FormCombo c1 = random_form(N, 1, 1, false, rng);
        if (!c1.is_zero()) CHECK(interior_euler(dH(c1)).is_zero());
    }
    CHECK_THROWS(interior_euler(fc("<b>")));
}

TEST_CASE("delta_V squares to zero and extends Estar") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 15; ++i) {
        int N = 2 + static_cast<int>(rng() % 3);
        FormCombo c = random_combo(N, 0, 0, false, rng);
        if (c.is_zero()) continue;
        CHECK(delta_V(c) == euler_Estar(c));
        FormCombo cp = random_form(N, 0, 1, false, rng);
        if (!cp.is_zero()) CHECK(delta_V(delta_V(cp)).is_zero());
    }
}

TEST_CASE("drop_one_loops") {
    FormCombo psi3 =
        fc("1/2 * <b,b> b + 1/2 * <b[b]> b + -1/2 * <b> b[b] + -1/2 * b[b,b]");
    CHECK(drop_one_loops(psi3) == fc("1/2 * <b,b> b + -1/2 * b[b,b]"));
    CHECK(drop_one_loops(fc("<b> b")).is_zero());
    CHECK(drop_one_loops(drop_one_loops(psi3)) == drop_one_loops(psi3));
}

TEST_CASE("JSON round trip of combinations") {
    FormCombo c = fc("1/2 * <b,b> b + -1/2 * b[b,b]");
    CHECK(combo_from_json(to_json(c)) == c);
    CHECK(to_json(FormCombo()) == "[]");
    CHECK(combo_from_json("[]").is_zero());
}

TEST_CASE("grade checks") {
    CHECK_THROWS(fc("b + <b>").grade());
    CHECK(fc("b[b] + <b> b").grade() == std::pair<int, int>{1, 0});
}
