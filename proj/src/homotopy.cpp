#include "aromakit/homotopy.hpp"

#include <set>

namespace aromakit {

namespace {

int covertex_node(const Forest& f, int k) {
    for (int v = 0; v < f.order(); ++v)
        if (f.label[v] == k) return v;
    throw std::invalid_argument("covertex label not present");
}

} // namespace

FormCombo h_V(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    if (p < 1) throw std::invalid_argument("h_V: needs p >= 1");
    FormCombo raw;
    for (auto& [f, coeff] : c.terms()) {
        Forest g = replace_covertex(f, p);
        raw.add(g, coeff * Rational(p, f.order()));
    }
    return wedge(raw);
}

FormCombo h_H(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    FormCombo raw;
    for (auto& [f, coeff] : c.terms()) {
        const int N = f.order();
        for (int v = 0; v < N; ++v) {
            int indeg = static_cast<int>(f.predecessors(v).size());
            for (int q = 0; q + 1 <= indeg; ++q) {
                MarkedCombo e = euler_Eq_at(f, v, q + 1);
                FormCombo piece = to_form(D_q(e, q, /*exclude_marked=*/false));
                piece *= coeff * Rational(n + 1, (q + n + 1) * N);
                raw += piece;
            }
        }
    }
    return wedge(raw);
}

FormCombo variational_residual(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    if (n != 0 || p != 0) throw std::invalid_argument("variational identity lives on Omega_0");
    return dH(h_H(c)) + h_V(euler_Estar(c)) - c;
}

DivfreeHomotopy h_H_divfree(const FormCombo& c) {
    DivfreeHomotopy out;
    if (c.is_zero()) return out;
    auto [n, p] = c.grade();
    for (auto& [f, coeff] : c.terms())
        if (f.has_one_loop())
            throw std::invalid_argument("h_H_divfree: input contains a 1-loop");
    FormCombo raw;
    for (auto& [f, coeff] : c.terms()) {
        const int N = f.order();
        std::vector<bool> is_root(N, false);
        for (int r : f.roots) is_root[r] = true;
        for (int v = 0; v < N; ++v) {
            int indeg = static_cast<int>(f.predecessors(v).size());
            for (int q = 0; q + 1 <= indeg; ++q) {
                MarkedCombo e = euler_Eq_at(f, v, q + 1);
                FormCombo piece = to_form(D_q(e, q, false));
                piece *= coeff * Rational(n + 1, (q + n + (is_root[v] ? 0 : 1)) * N);
                raw += piece;
            }
        }
        if (n == 1) {
            FormCombo rem = euler_E_at(f, f.roots[0]);
            rem *= coeff / Rational(N);
            out.r += rem;
        }
    }
    out.h = drop_one_loops(wedge(raw));
    out.r = drop_one_loops(out.r);
    return out;
}

DivfreeSimple h_H_divfree_simple(const FormCombo& c) {
    DivfreeSimple out;
    if (c.is_zero()) return out;
    auto [n, p] = c.grade();
    if (n != 1) throw std::invalid_argument("h_H_divfree_simple: needs n = 1");
    FormCombo in1, in2;
    for (auto& [f, coeff] : c.terms()) {
        const int N = f.order();
        if (N <= 1) throw std::invalid_argument("h_H_divfree_simple: needs N > 1");
        FormCombo term(f, coeff);
        FormCombo e = drop_one_loops(euler_E(term));
        e *= Rational(1, N - 1);
        in1 += term + e;
        FormCombo er = drop_one_loops(euler_E_root(term));
        er *= Rational(1, N - 1);
        in2 += term + er;
    }
    out.h1 = h_H_divfree(in1).h;
    out.h2 = h_H_divfree(in2).h;
    return out;
}

FormCombo aug_h_H(const FormCombo& c) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    if (n != 0 || p < 1) throw std::invalid_argument("aug_h_H: defined on Omega_{0,p}, p >= 1");
    FormCombo raw;
    for (auto& [f, coeff] : c.terms()) {
        int v = covertex_node(f, p);
        int indeg = static_cast<int>(f.predecessors(v).size());
        for (int q = 1; q <= indeg; ++q) {
            MarkedCombo e = euler_Eq_at(f, v, q);
            FormCombo piece = to_form(D_q(e, q - 1, false));
            piece *= coeff * Rational(1, q);
            raw += piece;
        }
    }
    return wedge(raw);
}

FormCombo aug_h_V(const FormCombo& c) {
    if (c.is_zero()) return c;
    return interior_euler(h_V(c));
}

FormCombo ibp_homotopy(const FormCombo& c, bool reverse_order) {
    if (c.is_zero()) return c;
    auto [n, p] = c.grade();
    if (n != 0) throw std::invalid_argument("ibp_homotopy: defined on Omega_{0,p}");

    FormCombo hat;
    FormCombo cur = c;
    for (auto& [f, coeff] : c.terms()) {
        FormCombo e = euler_E(FormCombo(f));
        e *= coeff / Rational(f.order());
        cur -= e;
    }

    // Deterministic peel.  Terms with the most 1-loops go first: peeling such
    // a term only creates terms with fewer loops, so the algorithm terminates
    // regardless of how coefficients recombine.  Among those, take the
    // lexicographically smallest (or largest) term and its first loop vertex.
    auto pick = [&](Forest& tau_out, int& v_out) -> bool {
        int best_loops = 0;
        for (auto& [f, coeff] : cur.terms()) {
            int loops = 0, first_v = -1;
            for (int v = 0; v < f.order(); ++v)
                if (f.succ[v] == v && f.label[v] == 0) {
                    ++loops;
                    if (first_v < 0) first_v = v;
                }
            if (loops == 0) continue;
            bool better = loops > best_loops;
            if (loops == best_loops && reverse_order) better = true; // later term
            if (better) {
                best_loops = loops;
                tau_out = f;
                v_out = first_v;
            }
        }
        return best_loops > 0;
    };

    Forest tau;
    int v = -1;
    while (pick(tau, v)) {
        Rational a = cur.coeff(tau);
        // theta_v: cut the loop at v, v becomes the root
        Forest theta = tau;
        theta.enc.clear();
        theta.succ[v] = -1;
        theta.roots.push_back(v);
        Forest th = canonical(std::move(theta));
        hat.add(th, a);
        cur -= dH(FormCombo(th, a));
    }
    return hat;
}

std::vector<std::string> ibp_reachable_outputs(const FormCombo& c, size_t cap) {
    FormCombo start = c;
    for (auto& [f, coeff] : c.terms()) {
        FormCombo e = euler_E(FormCombo(f));
        e *= coeff / Rational(f.order());
        start -= e;
    }
    std::set<std::string> outs;
    auto walk = [&](auto&& self, const FormCombo& cur, const FormCombo& hat) -> void {
        if (outs.size() >= cap) return;
        std::vector<std::pair<Forest, int>> picks;
        for (auto& [f, coeff] : cur.terms())
            for (int v = 0; v < f.order(); ++v)
                if (f.succ[v] == v && f.label[v] == 0) picks.emplace_back(f, v);
        if (picks.empty()) {
            outs.insert(to_string(hat));
            return;
        }
        for (auto& [tau, v] : picks) {
            Rational a = cur.coeff(tau);
            Forest theta = tau;
            theta.enc.clear();
            theta.succ[v] = -1;
            theta.roots.push_back(v);
            Forest th = canonical(std::move(theta));
            FormCombo hat2 = hat;
            hat2.add(th, a);
            FormCombo cur2 = cur;
            cur2 -= dH(FormCombo(th, a));
            self(self, cur2, hat2);
        }
    };
    walk(walk, start, FormCombo());
    return {outs.begin(), outs.end()};
}

MarkedCombo nth_antiderivative(const FormCombo& c, int n) {
    if (n < 0) throw std::invalid_argument("nth_antiderivative: n < 0");
    for (int p = 0; p < n; ++p)
        if (!euler_Eq(c, p).is_zero()) throw AntiderivativeError(p);
    MarkedCombo out;
    if (c.is_zero()) return out;
    for (auto& [f, coeff] : c.terms()) {
        const int N = f.order();
        for (int p = n; p <= N; ++p) {
            MarkedCombo e;
            for (int v = 0; v < f.order(); ++v) e += euler_Eq_at(f, v, p);
            MarkedCombo piece = D_q(e, p - n, false);
            piece *= coeff / Rational(binomial(p, n) * N);
            out += piece;
        }
    }
    return out;
}

} // namespace aromakit
