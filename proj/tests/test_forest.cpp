#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "aromakit/forest.hpp"

using namespace aromakit;

namespace {

// all node bijections a -> b preserving kinds, edges, root order and mark
bool brute_isomorphic(const Forest& a, const Forest& b) {
    if (a.order() != b.order() || a.num_roots() != b.num_roots() ||
        a.detached != b.detached)
        return false;
    std::vector<int> perm(a.order());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < a.order() && ok; ++v) {
            if (a.label[v] != b.label[perm[v]]) ok = false;
            else if (a.succ[v] < 0 ? b.succ[perm[v]] >= 0
                                   : b.succ[perm[v]] != perm[a.succ[v]])
                ok = false;
        }
        for (int i = 0; i < a.num_roots() && ok; ++i)
            if (perm[a.roots[i]] != b.roots[i]) ok = false;
        if (ok && (a.marked < 0 ? b.marked >= 0 : perm[a.marked] != b.marked)) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Integer brute_symmetry(const Forest& f) {
    Integer count = 0;
    std::vector<int> perm(f.order());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < f.order() && ok; ++v) {
            if (f.label[v] != f.label[perm[v]]) ok = false;
            else if (f.succ[v] < 0 ? f.succ[perm[v]] >= 0
                                   : f.succ[perm[v]] != perm[f.succ[v]])
                ok = false;
        }
        for (int i = 0; i < f.num_roots() && ok; ++i)
            if (perm[f.roots[i]] != f.roots[i]) ok = false;
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

Forest shuffled_copy(const Forest& f, std::mt19937_64& rng) {
    std::vector<int> perm(f.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Forest g;
    g.label.resize(f.order());
    g.succ.resize(f.order());
    for (int v = 0; v < f.order(); ++v) {
        g.label[perm[v]] = f.label[v];
        g.succ[perm[v]] = f.succ[v] < 0 ? -1 : perm[f.succ[v]];
    }
    for (int r : f.roots) g.roots.push_back(perm[r]);
    if (f.marked >= 0) g.marked = perm[f.marked];
    g.detached = f.detached;
    return canonical(std::move(g));
}

} // namespace

TEST_CASE("parse and print round-trip") {
    for (const char* s : {"b", "<b>", "<b,b>", "<b[b]>", "b[b]", "<b> b",
                          "<b,b[b[b]]> b o1[b]", "1", "<o1> b", "b[b,b[b]]",
                          "<b,b,b> b b[b]"}) {
        Forest f = parse(s);
        CHECK(print(f) == s);
        CHECK(parse(print(f)) == f);
    }
}

TEST_CASE("parse normalizes non-canonical spellings") {
    CHECK(print(parse("b[b[b],b]")) == print(parse("b[b,b[b]]")));
    CHECK(print(parse("<b[b],b>")) == print(parse("<b,b[b]>")));
    CHECK(print(parse("b <b>")) == "<b> b");
    CHECK(print(parse("b[o1] <b,b> b")) == "<b,b> b[o1] b");
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse("b["), ParseError);
    CHECK_THROWS_AS(parse("x"), ParseError);
    CHECK_THROWS_AS(parse("<b> <"), ParseError);
    CHECK_THROWS_AS(parse("o1 o1"), ParseError);      // duplicate label
    CHECK_THROWS_AS(parse("o2"), ParseError);         // labels not 1..p
    CHECK_THROWS_AS(parse("b[o1,o3]"), ParseError);   // gap in labels
    CHECK_THROWS_AS(parse("b b extra["), ParseError);
}

TEST_CASE("smallest forests") {
    CHECK(print(parse("b")) == "b");
    CHECK(parse("b").order() == 1);
    CHECK(parse("b").num_roots() == 1);
    CHECK(parse("<b>").num_roots() == 0);
    CHECK(parse("<b>").has_one_loop());
    CHECK(!parse("<b,b>").has_one_loop());
    CHECK(print(empty_forest()) == "1");
    CHECK(empty_forest().order() == 0);
}

TEST_CASE("bamboo") {
    CHECK(print(bamboo(1)) == "b");
    CHECK(print(bamboo(2)) == "b[b]");
    CHECK(print(bamboo(3)) == "b[b[b]]");
    CHECK_THROWS(bamboo(0));
}

TEST_CASE("graft basics") {
    Forest b = parse("b");
    CHECK(print(graft(b, b.roots[0], b.roots[0])) == "<b>");

    Forest bb = parse("b[b]");
    int root = bb.roots[0];
    int child = bb.predecessors(root)[0];
    CHECK(print(graft(bb, root, child)) == "<b,b>");

    Forest f = parse("<b> b");
    int tree_root = f.roots[0];
    int aroma_node = 0;
    for (int v = 0; v < f.order(); ++v)
        if (f.succ[v] == v) aroma_node = v;
    CHECK(print(graft(f, tree_root, aroma_node)) == "<b[b]>");

    CHECK_THROWS(graft(bb, child, root)); // child is not a root
}

TEST_CASE("graft adds exactly one predecessor at the target") {
    for (int N = 1; N <= 5; ++N)
        for (const Forest& f : generate(N, 1, 0, false)) {
            int r = f.roots[0];
            for (int u = 0; u < f.order(); ++u) {
                size_t before = f.predecessors(u).size();
                Forest g = f; // raw edit, same node indexing
                g.enc.clear();
                g.succ[r] = u;
                CHECK(g.predecessors(u).size() == before + 1);
                // and the canonical graft agrees with the raw edit
                g.roots.clear();
                CHECK(graft(f, r, u) == canonical(std::move(g)));
            }
        }
}

TEST_CASE("detach basics") {
    Forest loop = parse("<b>");
    Forest m = detach_at(loop, 0);
    CHECK(m.marked >= 0);
    CHECK(m.detached == 1);
    CHECK(m.num_roots() == 1);
    CHECK(m.roots[0] == m.marked); // the loop node became its own detached root
    CHECK(print(m) == "b*|1");

    Forest claw = parse("b[b,b]");
    Forest m2 = detach_at(claw, claw.roots[0]);
    CHECK(m2.detached == 2);
    CHECK(m2.order() == 3);
    CHECK(print(m2) == "b* b b|2");
}

TEST_CASE("detach then regraft recovers the forest") {
    // the mark tracks the detach point through canonical reindexing
    for (int N = 1; N <= 4; ++N)
        for (int n = 0; n <= 2; ++n)
            for (int p = 0; p <= (N >= 2 ? 1 : 0); ++p)
                for (const Forest& f : generate(N, n, p, false))
                    for (int v = 0; v < f.order(); ++v) {
                        Forest g = detach_at(f, v);
                        while (g.detached > 0) g = graft(g, g.roots.back(), g.marked);
                        CHECK(print(to_plain(g)) == print(f));
                    }
}

TEST_CASE("replace vertex and covertex") {
    Forest b = parse("b");
    CHECK(print(replace_vertex(b, 0, 1)) == "o1");
    CHECK(print(replace_covertex(parse("<b[o1]>"), 1)) == "<b[b]>");
    Forest f = parse("b[b]");
    Forest g = replace_vertex(f, f.roots[0], 1);
    CHECK(print(replace_covertex(g, 1)) == "b[b]");
    CHECK_THROWS(replace_covertex(parse("b"), 1));
    CHECK_THROWS(replace_vertex(parse("o1"), 0, 2));
}

TEST_CASE("symmetry orders") {
    CHECK(symmetry_order(parse("b")) == 1);
    CHECK(symmetry_order(parse("<b,b>")) == 2);
    CHECK(symmetry_order(parse("b[b,b]")) == 2);
    CHECK(symmetry_order(parse("b[b,b,b]")) == 6);
    CHECK(symmetry_order(parse("<b> <b>")) == 2);
    CHECK(symmetry_order(parse("<b,b,b>")) == 3);
    CHECK(symmetry_order(parse("<b[b],b[b]>")) == 2);
    CHECK(symmetry_order(parse("b b")) == 1); // roots are numbered
}

TEST_CASE("symmetry order matches brute force at order 6") {
    for (const Forest& f : generate(6, 1, 0, false))
        CHECK(symmetry_order(f) == brute_symmetry(f));
}

TEST_CASE("symmetry order matches brute force") {
    for (int N = 1; N <= 5; ++N) {
        for (int n = 0; n <= 2 && n <= N; ++n) {
            int pmax = N >= 3 ? 1 : 0;
            for (int p = 0; p <= pmax; ++p)
                for (const Forest& f : generate(N, n, p, false))
                    CHECK(symmetry_order(f) == brute_symmetry(f));
        }
    }
}

TEST_CASE("canonical form is stable under relabeling at order 6") {
    std::mt19937_64 rng(99);
    for (const Forest& f : generate(6, 1, 0, false))
        CHECK(shuffled_copy(f, rng) == f);
}

TEST_CASE("canonical form is a complete isomorphism invariant") {
    std::mt19937_64 rng(20240811);
    for (int N = 1; N <= 5; ++N)
        for (int n = 0; n <= 2 && n <= N; ++n)
            for (const Forest& f : generate(N, n, std::min(1, N - 1), false)) {
                for (int k = 0; k < 3; ++k) CHECK(shuffled_copy(f, rng) == f);
            }
    // distinct canonical forms are genuinely non-isomorphic (brute force)
    auto fs = generate(4, 1, 0, false);
    for (size_t i = 0; i < fs.size(); ++i)
        for (size_t j = i + 1; j < fs.size(); ++j)
            CHECK(!brute_isomorphic(fs[i], fs[j]));
}

TEST_CASE("canonicalize is idempotent") {
    for (int N = 1; N <= 5; ++N)
        for (const Forest& f : generate(N, 1, 0, false)) {
            Forest g = f;
            g.enc.clear();
            CHECK(canonical(std::move(g)) == f);
        }
}

TEST_CASE("generation counts for N = 2 match the nine two-node sets") {
    CHECK(generate(2, 2, 0, false).size() == 1);
    CHECK(generate(2, 1, 0, false).size() == 2);
    CHECK(generate(2, 0, 0, false).size() == 3);
    CHECK(generate(2, 2, 1, false).size() == 2);
    CHECK(generate(2, 1, 1, false).size() == 4);
    CHECK(generate(2, 0, 1, false).size() == 4);
    CHECK(generate(2, 2, 2, false).size() == 2);
    CHECK(generate(2, 1, 2, false).size() == 4);
    CHECK(generate(2, 0, 2, false).size() == 4);
}

TEST_CASE("generation reproduces the explicit small sets") {
    auto names = [](const std::vector<Forest>& v) {
        std::set<std::string> s;
        for (auto& f : v) s.insert(print(f));
        return s;
    };
    CHECK(names(generate(2, 1, 0, false)) == std::set<std::string>{"b[b]", "<b> b"});
    CHECK(names(generate(2, 0, 0, false)) ==
          std::set<std::string>{"<b[b]>", "<b,b>", "<b> <b>"});
    CHECK(names(generate(2, 1, 1, false)) ==
          std::set<std::string>{"b[o1]", "o1[b]", "<b> o1", "<o1> b"});
    CHECK(names(generate(1, 0, 0, true)).empty());
    CHECK(names(generate(2, 0, 0, true)) == std::set<std::string>{"<b,b>"});
}

TEST_CASE("scalar generation counts match the aroma series") {
    // |Omega_0^N|: 1, 3, 7, 19, 47, 130, 343
    std::vector<size_t> a = {1, 3, 7, 19, 47, 130, 343};
    for (int N = 1; N <= 7; ++N) CHECK(generate(N, 0, 0, false).size() == a[N - 1]);
}

TEST_CASE("aromatic tree counts match the first dimension row") {
    std::vector<size_t> at = {1, 2, 6, 16, 45, 121, 338, 929};
    for (int N = 1; N <= 8; ++N) CHECK(generate(N, 1, 0, false).size() == at[N - 1]);
}

TEST_CASE("divfree generation drops exactly the one-loop forests") {
    for (int N = 1; N <= 6; ++N) {
        auto all = generate(N, 1, 0, false);
        auto df = generate(N, 1, 0, true);
        size_t kept = 0;
        for (auto& f : all) kept += !f.has_one_loop();
        CHECK(df.size() == kept);
        for (auto& f : df) CHECK(!f.has_one_loop());
    }
}

TEST_CASE("generate argument validation") {
    CHECK_THROWS(generate(-1, 0, 0, false));
    CHECK(generate(2, 0, 3, false).empty()); // p > N
    CHECK(generate(0, 0, 0, false).size() == 1);
    CHECK(generate(0, 1, 0, false).empty());
}

TEST_CASE("juxtaposition and the empty forest") {
    Forest one = empty_forest();
    Forest f = parse("<b> b");
    CHECK(juxtapose(one, f) == f);
    CHECK(juxtapose(f, one) == f);
    CHECK(print(juxtapose(parse("b"), parse("<b>"))) == "<b> b");
    CHECK(print(juxtapose(parse("b"), parse("b[b]"))) == "b b[b]");
    CHECK(print(juxtapose(parse("b[b]"), parse("b"))) == "b[b] b");
}
