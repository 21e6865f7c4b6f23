#include "aromakit/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace aromakit {

namespace {

int perm_sign(const std::vector<int>& p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

int covertex_node(const Forest& f, int k) {
    for (int v = 0; v < f.order(); ++v)
        if (f.label[v] == k) return v;
    throw std::invalid_argument("covertex label not present");
}

} // namespace

FormCombo wedge(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    Rational norm = Rational(1) / Rational(factorial(n) * factorial(p));
    FormCombo out;
    std::vector<int> sigma(n), tau(p);
    for (auto& [f, coeff] : c.terms()) {
        if (!f.is_plain()) throw std::invalid_argument("wedge: marked term");
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
            int ssign = perm_sign(sigma);
            Forest g0 = f;
            g0.enc.clear();
            for (int i = 0; i < n; ++i) g0.roots[i] = f.roots[sigma[i]];
            std::iota(tau.begin(), tau.end(), 0);
            do {
                Forest g = g0;
                g.enc.clear();
                for (int v = 0; v < g.order(); ++v)
                    if (f.label[v] > 0) g.label[v] = tau[f.label[v] - 1] + 1;
                int tsign = perm_sign(tau);
                out.add(canonical(std::move(g)), coeff * ssign * tsign * norm);
            } while (std::next_permutation(tau.begin(), tau.end()));
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    return out;
}

FormCombo dH(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    if (n < 1) throw std::invalid_argument("dH: no roots");
    FormCombo raw;
    for (auto& [f, coeff] : c.terms()) {
        int r = f.roots.back();
        for (int u = 0; u < f.order(); ++u) raw.add(graft(f, r, u), coeff);
    }
    return wedge(raw);
}

FormCombo dV(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    FormCombo raw;
    for (auto& [f, coeff] : c.terms())
        for (int v = 0; v < f.order(); ++v)
            if (f.label[v] == 0) raw.add(replace_vertex(f, v, p + 1), coeff);
    return wedge(raw);
}

FormCombo trace_form(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    if (n != 1 || p != 1) throw std::invalid_argument("trace: needs one root, one covertex");
    FormCombo out;
    for (auto& [f, coeff] : c.terms()) {
        Forest g = graft(f, f.roots[0], covertex_node(f, 1));
        out.add(replace_covertex(g, 1), coeff);
    }
    return out;
}

FormCombo drop_one_loops(const FormCombo& c) {
    FormCombo out;
    for (auto& [f, coeff] : c.terms())
        if (!f.has_one_loop()) out.add(f, coeff);
    return out;
}

FormCombo juxtapose(const FormCombo& a, const FormCombo& b) {
    FormCombo out;
    for (auto& [f, cf] : a.terms())
        for (auto& [g, cg] : b.terms()) out.add(juxtapose(f, g), cf * cg);
    return out;
}

namespace {

// enumerate grafts of a size-q subset of the detached roots of f
template <class Fn>
void graft_subsets(const Forest& f, int q, bool exclude_marked, Fn&& emit) {
    const int d = f.detached;
    if (q > d) return;
    std::vector<int> det(f.roots.end() - d, f.roots.end());
    std::vector<int> targets;
    for (int u = 0; u < f.order(); ++u)
        if (!(exclude_marked && u == f.marked)) targets.push_back(u);

    std::vector<int> pick(q);
    auto choose = [&](auto&& self, int from, int k) -> void {
        if (k == q) {
            if (targets.empty() && q > 0) return;
            std::vector<int> idx(q, 0);
            while (true) {
                std::vector<std::pair<int, int>> edges(q);
                for (int i = 0; i < q; ++i) edges[i] = {det[pick[i]], targets[idx[i]]};
                emit(graft_many(f, edges));
                int i = q - 1;
                while (i >= 0 && ++idx[i] == static_cast<int>(targets.size())) idx[i--] = 0;
                if (i < 0) break;
            }
            return;
        }
        for (int i = from; i < d; ++i) {
            pick[k] = i;
            self(self, i + 1, k + 1);
        }
    };
    choose(choose, 0, 0);
}

} // namespace

MarkedCombo D_q(const MarkedCombo& c, int q, bool exclude_marked) {
    MarkedCombo out;
    for (auto& [f, coeff] : c.terms()) {
        const Rational& cc = coeff;
        graft_subsets(f, q, exclude_marked, [&](Forest g) { out.add(std::move(g), cc); });
    }
    return out;
}

MarkedCombo D_q_to_mark(const MarkedCombo& c, int q) {
    MarkedCombo out;
    for (auto& [f, coeff] : c.terms()) {
        const int d = f.detached;
        if (q > d) continue;
        if (f.marked < 0) throw std::invalid_argument("D_q_to_mark: no mark");
        std::vector<int> det(f.roots.end() - d, f.roots.end());
        std::vector<int> pick(q);
        auto choose = [&](auto&& self, int from, int k) -> void {
            if (k == q) {
                std::vector<std::pair<int, int>> edges(q);
                for (int i = 0; i < q; ++i) edges[i] = {det[pick[i]], f.marked};
                out.add(graft_many(f, edges), coeff);
                return;
            }
            for (int i = from; i < d; ++i) {
                pick[k] = i;
                self(self, i + 1, k + 1);
            }
        };
        choose(choose, 0, 0);
    }
    return out;
}

MarkedCombo unmark(const MarkedCombo& c) {
    MarkedCombo out;
    for (auto& [f, coeff] : c.terms()) out.add(unmark(f), coeff);
    return out;
}

FormCombo to_form(const MarkedCombo& c) {
    FormCombo out;
    for (auto& [f, coeff] : c.terms()) {
        if (f.marked >= 0) throw std::invalid_argument("to_form: marked term");
        out.add(to_plain(f), coeff);
    }
    return out;
}

MarkedCombo euler_Eq_at(const Forest& f, int v, int q) {
    int k = static_cast<int>(f.predecessors(v).size());
    if (q > k) return {};
    MarkedCombo m(detach_at(f, v));
    MarkedCombo out = unmark(D_q(m, k - q, /*exclude_marked=*/true));
    out *= Rational(((k - q) % 2 == 0) ? 1 : -1);
    return out;
}

FormCombo euler_E_at(const Forest& f, int v) { return to_form(euler_Eq_at(f, v, 0)); }

FormCombo euler_E(const FormCombo& c) {
    FormCombo out;
    for (auto& [f, coeff] : c.terms())
        for (int v = 0; v < f.order(); ++v) {
            FormCombo e = euler_E_at(f, v);
            e *= coeff;
            out += e;
        }
    return out;
}

FormCombo euler_E_root(const FormCombo& c) {
    FormCombo out;
    for (auto& [f, coeff] : c.terms()) {
        if (f.num_roots() - f.detached != 1)
            throw std::invalid_argument("euler_E_root: needs exactly one root");
        FormCombo e = euler_E_at(f, f.roots[0]);
        e *= coeff;
        out += e;
    }
    return out;
}

FormCombo euler_Estar(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    if (n != 0 || p != 0) throw std::invalid_argument("euler_Estar: defined on Omega_0");
    FormCombo out;
    for (auto& [f, coeff] : c.terms())
        for (int v = 0; v < f.order(); ++v) {
            Forest g = replace_vertex(f, v, 1);
            FormCombo e = euler_E_at(g, covertex_node(g, 1));
            e *= coeff;
            out += e;
        }
    return out;
}

MarkedCombo euler_Eq(const FormCombo& c, int q) {
    MarkedCombo out;
    for (auto& [f, coeff] : c.terms())
        for (int v = 0; v < f.order(); ++v) {
            MarkedCombo e = euler_Eq_at(f, v, q);
            e *= coeff;
            out += e;
        }
    return out;
}

FormCombo interior_euler(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    if (p < 1) throw std::invalid_argument("interior_euler: needs p >= 1");
    FormCombo raw;
    for (auto& [f, coeff] : c.terms()) {
        FormCombo e = euler_E_at(f, covertex_node(f, p));
        e *= coeff;
        raw += e;
    }
    return wedge(raw);
}

FormCombo delta_V(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    if (p == 0) return euler_Estar(c);
    return interior_euler(dV(c));
}

} // namespace aromakit
