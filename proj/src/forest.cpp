#include "aromakit/forest.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace aromakit {

int Forest::num_covertices() const {
    int p = 0;
    for (int l : label) p = std::max(p, l);
    return p;
}

bool Forest::has_one_loop() const {
    for (size_t v = 0; v < succ.size(); ++v)
        if (succ[v] == static_cast<int>(v)) return true;
    return false;
}

std::vector<int> Forest::predecessors(int v) const {
    std::vector<int> ps;
    for (size_t w = 0; w < succ.size(); ++w)
        if (succ[w] == v) ps.push_back(static_cast<int>(w));
    return ps;
}

std::vector<bool> cycle_nodes(const Forest& f) {
    // colour-walk over the functional part of the graph
    const int n = f.order();
    std::vector<int> colour(n, 0); // 0 unseen, 1 on stack, 2 done
    std::vector<bool> on_cycle(n, false);
    for (int s = 0; s < n; ++s) {
        if (colour[s]) continue;
        std::vector<int> path;
        int v = s;
        while (v != -1 && colour[v] == 0) {
            colour[v] = 1;
            path.push_back(v);
            v = f.succ[v];
        }
        if (v != -1 && colour[v] == 1) {
            // found a new cycle ending at v
            bool in = false;
            for (int w : path) {
                if (w == v) in = true;
                if (in) on_cycle[w] = true;
            }
        }
        for (int w : path) colour[w] = 2;
    }
    return on_cycle;
}

namespace {

std::string node_token(const Forest& f, int v) {
    std::string t = f.label[v] == 0 ? "b" : "o" + std::to_string(f.label[v]);
    if (f.marked == v) t += "*";
    return t;
}

// children of v = predecessors minus the cycle predecessor (if v is on a cycle)
std::vector<int> tree_children(const Forest& f, int v, const std::vector<bool>& on_cycle) {
    std::vector<int> cs;
    for (int w : f.predecessors(v))
        if (!(on_cycle[v] && on_cycle[w] && f.succ[w] == v)) cs.push_back(w);
    return cs;
}

std::string encode_subtree(const Forest& f, int v, const std::vector<bool>& on_cycle) {
    std::vector<std::string> parts;
    for (int w : tree_children(f, v, on_cycle)) parts.push_back(encode_subtree(f, w, on_cycle));
    std::sort(parts.begin(), parts.end());
    std::string s = node_token(f, v);
    if (!parts.empty()) {
        s += "[";
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += parts[i];
        }
        s += "]";
    }
    return s;
}

std::string encode_forest(const Forest& f) {
    auto on_cycle = cycle_nodes(f);
    const int n = f.order();

    // aromas: walk each cycle once, in successor order, minimal rotation
    std::vector<std::string> aromas;
    std::vector<bool> seen(n, false);
    for (int v = 0; v < n; ++v) {
        if (!on_cycle[v] || seen[v]) continue;
        std::vector<int> cyc;
        int w = v;
        do {
            cyc.push_back(w);
            seen[w] = true;
            w = f.succ[w];
        } while (w != v);
        std::vector<std::string> enc(cyc.size());
        for (size_t i = 0; i < cyc.size(); ++i) enc[i] = encode_subtree(f, cyc[i], on_cycle);
        size_t best = 0;
        const size_t k = enc.size();
        for (size_t r = 1; r < k; ++r) {
            for (size_t i = 0; i < k; ++i) {
                auto cmp = enc[(r + i) % k].compare(enc[(best + i) % k]);
                if (cmp < 0) { best = r; break; }
                if (cmp > 0) break;
            }
        }
        std::string s = "<";
        for (size_t i = 0; i < k; ++i) {
            if (i) s += ",";
            s += enc[(best + i) % k];
        }
        s += ">";
        aromas.push_back(std::move(s));
    }
    std::sort(aromas.begin(), aromas.end());

    std::vector<std::string> parts = std::move(aromas);
    for (int r : f.roots) parts.push_back(encode_subtree(f, r, on_cycle));

    std::string out;
    if (parts.empty()) out = "1";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " ";
        out += parts[i];
    }
    if (f.detached > 0) out += "|" + std::to_string(f.detached);
    return out;
}

struct Parser {
    const std::string& s;
    size_t pos = 0;
    Forest f;

    explicit Parser(const std::string& text) : s(text) {}

    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    void expect(char c) {
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }
    int parse_int() {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer", pos);
        return std::stoi(s.substr(start, pos - start));
    }

    // returns node index; predecessors wired to it
    int parse_node() {
        int lbl;
        if (peek() == 'b') {
            ++pos;
            lbl = 0;
        } else if (peek() == 'o') {
            ++pos;
            lbl = parse_int();
            if (lbl < 1) throw ParseError("covertex label must be >= 1", pos);
        } else {
            throw ParseError("expected node ('b' or 'o<k>')", pos);
        }
        int v = f.order();
        f.label.push_back(lbl);
        f.succ.push_back(-1);
        if (peek() == '*') {
            ++pos;
            if (f.marked >= 0) throw ParseError("more than one marked node", pos);
            f.marked = v;
        }
        if (peek() == '[') {
            ++pos;
            while (true) {
                int c = parse_node();
                f.succ[c] = v;
                if (peek() == ',') { ++pos; continue; }
                break;
            }
            expect(']');
        }
        return v;
    }

    void parse_component() {
        if (peek() == '<') {
            ++pos;
            std::vector<int> cyc;
            while (true) {
                cyc.push_back(parse_node());
                if (peek() == ',') { ++pos; continue; }
                break;
            }
            expect('>');
            for (size_t i = 0; i < cyc.size(); ++i)
                f.succ[cyc[i]] = cyc[(i + 1) % cyc.size()];
        } else {
            f.roots.push_back(parse_node());
        }
    }

    Forest run() {
        if (peek() == '1') {
            ++pos;
        } else {
            parse_component();
            while (peek() == ' ') {
                ++pos;
                parse_component();
            }
        }
        if (peek() == '|') {
            ++pos;
            f.detached = parse_int();
            if (f.detached < 0 || f.detached > f.num_roots())
                throw ParseError("bad detached-root count", pos);
        }
        if (pos != s.size()) throw ParseError("trailing input", pos);

        // covertex labels must be exactly 1..p, each once
        std::vector<int> labels;
        for (int l : f.label)
            if (l > 0) labels.push_back(l);
        std::sort(labels.begin(), labels.end());
        for (size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] != static_cast<int>(i) + 1) {
                if (i > 0 && labels[i] == labels[i - 1])
                    throw ParseError("duplicate covertex label " + std::to_string(labels[i]), pos);
                throw ParseError("covertex labels must form 1..p", pos);
            }
        }
        return std::move(f);
    }
};

} // namespace

Forest parse(const std::string& text) {
    Parser p(text);
    Forest f = p.run();
    return canonical(std::move(f));
}

Forest canonical(Forest f) {
    std::string e = encode_forest(f);
    Parser p(e);
    Forest g = p.run();
    g.enc = std::move(e);
    return g;
}

const std::string& print(const Forest& f) {
    if (!f.is_canonical()) throw std::logic_error("print: forest not canonical");
    return f.enc;
}

Forest empty_forest() { return canonical(Forest{}); }

Forest bamboo(int N) {
    if (N < 1) throw std::invalid_argument("bamboo: N must be >= 1");
    Forest f;
    f.label.assign(N, 0);
    f.succ.assign(N, -1);
    for (int v = 1; v < N; ++v) f.succ[v] = v - 1;
    f.roots = {0};
    return canonical(std::move(f));
}

Forest juxtapose(const Forest& a, const Forest& b) {
    if (a.marked >= 0 && b.marked >= 0) throw std::invalid_argument("juxtapose: two marks");
    Forest f = a;
    f.enc.clear();
    const int off = a.order();
    for (int l : b.label) f.label.push_back(l);
    for (int s : b.succ) f.succ.push_back(s < 0 ? -1 : s + off);
    // detached roots of either operand stay behind all ordinary roots
    std::vector<int> rs;
    for (int i = 0; i < a.num_roots() - a.detached; ++i) rs.push_back(a.roots[i]);
    for (int i = 0; i < b.num_roots() - b.detached; ++i) rs.push_back(b.roots[i] + off);
    for (int i = a.num_roots() - a.detached; i < a.num_roots(); ++i) rs.push_back(a.roots[i]);
    for (int i = b.num_roots() - b.detached; i < b.num_roots(); ++i) rs.push_back(b.roots[i] + off);
    f.roots = std::move(rs);
    f.detached = a.detached + b.detached;
    if (b.marked >= 0) f.marked = b.marked + off;
    return canonical(std::move(f));
}

Forest graft(const Forest& f, int r, int u) {
    auto it = std::find(f.roots.begin(), f.roots.end(), r);
    if (it == f.roots.end()) throw std::invalid_argument("graft: r is not a root");
    if (u < 0 || u >= f.order()) throw std::invalid_argument("graft: bad target node");
    Forest g = f;
    g.enc.clear();
    size_t pos = static_cast<size_t>(it - f.roots.begin());
    g.succ[r] = u;
    g.roots.erase(g.roots.begin() + pos);
    if (pos >= g.roots.size() + 1 - f.detached) --g.detached;
    return canonical(std::move(g));
}

Forest graft_many(const Forest& f, const std::vector<std::pair<int, int>>& edges) {
    Forest g = f;
    g.enc.clear();
    const int plain_roots = f.num_roots() - f.detached;
    for (auto [r, u] : edges) {
        if (g.succ[r] != -1) throw std::invalid_argument("graft_many: r is not a root");
        if (u < 0 || u >= g.order()) throw std::invalid_argument("graft_many: bad target");
        g.succ[r] = u;
    }
    std::vector<int> rs;
    int det = f.detached;
    for (int i = 0; i < f.num_roots(); ++i) {
        if (g.succ[f.roots[i]] == -1) rs.push_back(f.roots[i]);
        else if (i >= plain_roots) --det;
    }
    g.roots = std::move(rs);
    g.detached = det;
    return canonical(std::move(g));
}

Forest detach_at(const Forest& f, int v) {
    if (f.marked >= 0) throw std::invalid_argument("detach_at: forest already marked");
    if (v < 0 || v >= f.order()) throw std::invalid_argument("detach_at: bad node");
    Forest g = f;
    g.enc.clear();
    std::vector<int> preds = g.predecessors(v);
    for (int w : preds) g.succ[w] = -1;
    g.marked = v;
    // append in canonical-encoding order of the cut-off subtrees
    auto on_cycle = cycle_nodes(g);
    std::vector<std::pair<std::string, int>> keyed;
    for (int w : preds) keyed.emplace_back(encode_subtree(g, w, on_cycle), w);
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [e, w] : keyed) g.roots.push_back(w);
    g.detached += static_cast<int>(preds.size());
    return canonical(std::move(g));
}

Forest unmark(const Forest& f) {
    Forest g = f;
    g.enc.clear();
    g.marked = -1;
    return canonical(std::move(g));
}

Forest to_plain(const Forest& f) {
    Forest g = f;
    g.enc.clear();
    g.marked = -1;
    g.detached = 0;
    return canonical(std::move(g));
}

Forest replace_vertex(const Forest& f, int v, int k) {
    if (v < 0 || v >= f.order() || f.label[v] != 0)
        throw std::invalid_argument("replace_vertex: not a vertex");
    for (int l : f.label)
        if (l == k) throw std::invalid_argument("replace_vertex: label collision");
    Forest g = f;
    g.enc.clear();
    g.label[v] = k;
    return canonical(std::move(g));
}

Forest replace_covertex(const Forest& f, int k) {
    Forest g = f;
    g.enc.clear();
    for (int v = 0; v < g.order(); ++v) {
        if (g.label[v] == k) {
            g.label[v] = 0;
            return canonical(std::move(g));
        }
    }
    throw std::invalid_argument("replace_covertex: missing label");
}

Integer symmetry_order(const Forest& f) {
    auto on_cycle = cycle_nodes(f);

    // automorphisms of the subtree hanging at v
    auto tree_auto = [&](auto&& self, int v) -> Integer {
        std::vector<std::pair<std::string, int>> cs;
        for (int w : tree_children(f, v, on_cycle))
            cs.emplace_back(encode_subtree(f, w, on_cycle), w);
        std::sort(cs.begin(), cs.end());
        Integer a = 1;
        size_t i = 0;
        while (i < cs.size()) {
            size_t j = i;
            while (j < cs.size() && cs[j].first == cs[i].first) ++j;
            a *= factorial(static_cast<int>(j - i));
            for (size_t t = i; t < j; ++t) a *= self(self, cs[t].second);
            i = j;
        }
        return a;
    };

    Integer total = 1;
    std::vector<bool> seen(f.order(), false);
    std::map<std::string, int> aroma_mult;
    for (int v = 0; v < f.order(); ++v) {
        if (!on_cycle[v] || seen[v]) continue;
        std::vector<int> cyc;
        int w = v;
        do {
            cyc.push_back(w);
            seen[w] = true;
            w = f.succ[w];
        } while (w != v);
        std::vector<std::string> enc(cyc.size());
        std::string whole = "<";
        for (size_t i = 0; i < cyc.size(); ++i) {
            enc[i] = encode_subtree(f, cyc[i], on_cycle);
            total *= tree_auto(tree_auto, cyc[i]);
        }
        // rotations fixing the decorated cycle word
        int rot = 0;
        const size_t k = enc.size();
        for (size_t r = 0; r < k; ++r) {
            bool same = true;
            for (size_t i = 0; i < k && same; ++i) same = enc[(i + r) % k] == enc[i];
            if (same) ++rot;
        }
        total *= rot;
        // canonical word for multiset counting of equal aromas
        size_t best = 0;
        for (size_t r = 1; r < k; ++r)
            for (size_t i = 0; i < k; ++i) {
                auto cmp = enc[(r + i) % k].compare(enc[(best + i) % k]);
                if (cmp < 0) { best = r; break; }
                if (cmp > 0) break;
            }
        for (size_t i = 0; i < k; ++i) whole += enc[(best + i) % k] + ",";
        whole += ">";
        aroma_mult[whole]++;
    }
    for (auto& [e, m] : aroma_mult) total *= factorial(m);
    for (int r : f.roots) total *= tree_auto(tree_auto, r);
    return total;
}

namespace {

// canonical encodings of plain rooted trees with m vertex nodes
const std::vector<std::string>& tree_shapes(int m) {
    static std::mutex mu;
    static std::vector<std::vector<std::string>> cache{{}}; // cache[0] unused
    std::lock_guard<std::mutex> lock(mu);
    if (m < static_cast<int>(cache.size())) return cache[m];
    for (int k = static_cast<int>(cache.size()); k <= m; ++k) {
        std::vector<std::string> out;
        if (k == 1) {
            out.push_back("b");
        } else {
            // multisets of child trees totalling k-1, non-decreasing in (size, index)
            std::vector<std::vector<std::string>> stacks;
            std::vector<std::string> cur;
            auto rec = [&](auto&& self, int remaining, int min_size, int min_idx) -> void {
                if (remaining == 0) {
                    std::vector<std::string> parts = cur;
                    std::sort(parts.begin(), parts.end());
                    std::string s = "b[";
                    for (size_t i = 0; i < parts.size(); ++i) {
                        if (i) s += ",";
                        s += parts[i];
                    }
                    s += "]";
                    out.push_back(std::move(s));
                    return;
                }
                for (int sz = min_size; sz <= remaining; ++sz) {
                    const auto& ts = cache[sz];
                    for (int i = (sz == min_size ? min_idx : 0);
                         i < static_cast<int>(ts.size()); ++i) {
                        cur.push_back(ts[i]);
                        self(self, remaining - sz, sz, i);
                        cur.pop_back();
                    }
                }
            };
            rec(rec, k - 1, 1, 0);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        cache.push_back(std::move(out));
    }
    return cache[m];
}

// canonical encodings of connected plain aromas with m nodes
std::vector<std::string> aroma_shapes(int m, bool divfree) {
    std::vector<std::string> out;
    // cyclic sequence of K rooted trees, total m nodes
    std::vector<std::string> cur;
    auto emit = [&]() {
        const size_t k = cur.size();
        size_t best = 0;
        for (size_t r = 1; r < k; ++r)
            for (size_t i = 0; i < k; ++i) {
                auto cmp = cur[(r + i) % k].compare(cur[(best + i) % k]);
                if (cmp < 0) { best = r; break; }
                if (cmp > 0) break;
            }
        std::string s = "<";
        for (size_t i = 0; i < k; ++i) {
            if (i) s += ",";
            s += cur[(best + i) % k];
        }
        s += ">";
        out.push_back(std::move(s));
    };
    auto rec = [&](auto&& self, int remaining, int slots_left) -> void {
        if (slots_left == 0) {
            if (remaining == 0) emit();
            return;
        }
        for (int sz = 1; sz + slots_left - 1 <= remaining; ++sz)
            for (const auto& t : tree_shapes(sz)) {
                cur.push_back(t);
                self(self, remaining - sz, slots_left - 1);
                cur.pop_back();
            }
    };
    int kmin = divfree ? 2 : 1;
    for (int K = kmin; K <= m; ++K) rec(rec, m, K);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// multisets of aromas with total size s, composed with an ordered tuple of
// n trees with total size N - s
void scalar_structures(int s, bool divfree, std::vector<std::string>& out) {
    // multiset of connected aromas totalling s
    std::vector<std::string> cur;
    auto rec = [&](auto&& self, int remaining, int min_size, int min_idx) -> void {
        if (remaining == 0) {
            std::vector<std::string> parts = cur;
            std::sort(parts.begin(), parts.end());
            std::string joined;
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) joined += " ";
                joined += parts[i];
            }
            out.push_back(std::move(joined));
            return;
        }
        for (int sz = min_size; sz <= remaining; ++sz) {
            auto as = aroma_shapes(sz, divfree);
            for (int i = (sz == min_size ? min_idx : 0); i < static_cast<int>(as.size()); ++i) {
                cur.push_back(as[i]);
                self(self, remaining - sz, sz, i);
                cur.pop_back();
            }
        }
    };
    if (s == 0) {
        out.push_back("");
        return;
    }
    rec(rec, s, 1, 0);
}

} // namespace

std::vector<Forest> generate(int N, int n, int p, bool divfree) {
    if (N < 0 || n < 0 || p < 0) throw std::invalid_argument("generate: negative argument");
    if (p > N || n > N) return {};
    if (N == 0) {
        if (n == 0 && p == 0) return {empty_forest()};
        return {};
    }

    // vertex-only structures: aroma multiset + ordered n-tuple of trees
    std::vector<std::string> structures;
    for (int s = (n == 0 ? N : 0); s <= N - n; ++s) {
        std::vector<std::string> scalars;
        scalar_structures(s, divfree, scalars);
        if (scalars.empty()) continue;
        // ordered tuples of n trees totalling N - s
        std::vector<std::string> cur;
        auto rec = [&](auto&& self, int remaining, int slots_left) -> void {
            if (slots_left == 0) {
                if (remaining != 0) return;
                std::string trees;
                for (size_t i = 0; i < cur.size(); ++i) {
                    if (i) trees += " ";
                    trees += cur[i];
                }
                for (const auto& sc : scalars) {
                    if (sc.empty() && trees.empty()) continue;
                    if (sc.empty())
                        structures.push_back(trees);
                    else if (trees.empty())
                        structures.push_back(sc);
                    else
                        structures.push_back(sc + " " + trees);
                }
                return;
            }
            for (int sz = 1; sz + slots_left - 1 <= remaining; ++sz)
                for (const auto& t : tree_shapes(sz)) {
                    cur.push_back(t);
                    self(self, remaining - sz, slots_left - 1);
                    cur.pop_back();
                }
        };
        rec(rec, N - s, n);
        if (n == 0) break;
    }

    std::set<std::string> seen;
    std::vector<Forest> out;
    for (const auto& st : structures) {
        Forest base = parse(st);
        if (p == 0) {
            if (seen.insert(base.enc).second) out.push_back(std::move(base));
            continue;
        }
        // distribute labels 1..p over distinct nodes, in all injective ways
        std::vector<int> idx(p);
        auto rec = [&](auto&& self, int k) -> void {
            if (k == p) {
                Forest g = base;
                g.enc.clear();
                for (int i = 0; i < p; ++i) g.label[idx[i]] = i + 1;
                g = canonical(std::move(g));
                if (seen.insert(g.enc).second) out.push_back(std::move(g));
                return;
            }
            for (int v = 0; v < base.order(); ++v) {
                bool used = false;
                for (int i = 0; i < k; ++i) used |= (idx[i] == v);
                if (used) continue;
                idx[k] = v;
                self(self, k + 1);
            }
        };
        rec(rec, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace aromakit
