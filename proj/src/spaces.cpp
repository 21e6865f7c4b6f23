#include "aromakit/spaces.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <set>
#include <mutex>
#include <thread>

namespace aromakit {

namespace {

// permutation orbit of a forest under root reorderings and label swaps,
// with the signed sum that the wedge would produce
struct Orbit {
    std::vector<Forest> members;
    FormCombo signed_sum; // unnormalized: sum of sign * permuted forest
};

int perm_sign(const std::vector<int>& p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

Orbit orbit_of(const Forest& f, int n, int p) {
    Orbit o;
    std::set<std::string> seen;
    std::vector<int> sigma(n), tau(p);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        Forest g0 = f;
        g0.enc.clear();
        for (int i = 0; i < n; ++i) g0.roots[i] = f.roots[sigma[i]];
        int ss = perm_sign(sigma);
        std::iota(tau.begin(), tau.end(), 0);
        do {
            Forest g = g0;
            g.enc.clear();
            for (int v = 0; v < g.order(); ++v)
                if (f.label[v] > 0) g.label[v] = tau[f.label[v] - 1] + 1;
            g = canonical(std::move(g));
            if (seen.insert(g.enc).second) o.members.push_back(g);
            o.signed_sum.add(g, ss * perm_sign(tau));
        } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return o;
}

int thread_budget() {
    if (const char* env = std::getenv("AROMAKIT_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(std::min(hw, 8u)) : 1;
}

template <class Fn>
void parallel_for(int count, Fn&& fn) {
    int threads = std::min(thread_budget(), count);
    if (threads <= 1 || count < 32) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace

int SpaceBasis::index_of(const Forest& f) const {
    auto it = std::lower_bound(reps.begin(), reps.end(), f);
    if (it != reps.end() && *it == f) return static_cast<int>(it - reps.begin());
    return -1;
}

FormCombo SpaceBasis::element(const std::vector<Rational>& coords) const {
    FormCombo out;
    for (size_t j = 0; j < reps.size(); ++j)
        if (coords[j] != 0) {
            FormCombo w = wedge(FormCombo(reps[j]));
            w *= coords[j];
            out += w;
        }
    return out;
}

SpaceBasis basis(int N, int n, int p, bool divfree) {
    static std::map<std::tuple<int, int, int, bool>, SpaceBasis> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({N, n, p, divfree});
        if (it != cache.end()) return it->second;
    }

    SpaceBasis b;
    b.N = N;
    b.n = n;
    b.p = p;
    b.divfree = divfree;
    std::set<std::string> seen;
    for (const Forest& f : generate(N, n, p, divfree)) {
        if (seen.count(f.enc)) continue;
        Orbit o = orbit_of(f, n, p);
        for (const Forest& g : o.members) seen.insert(g.enc);
        if (o.signed_sum.is_zero()) continue;
        // first unseen forest in sorted order is the orbit minimum
        b.reps.push_back(f);
        Rational norm = Rational(1) / Rational(factorial(n) * factorial(p));
        b.self_coeff.push_back(o.signed_sum.coeff(f) * norm);
    }

    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_tuple(N, n, p, divfree), b);
    return b;
}

std::vector<Rational> coordinates(const FormCombo& w, const SpaceBasis& b) {
    std::vector<Rational> coords(b.reps.size(), Rational(0));
    FormCombo check;
    for (auto& [f, c] : w.terms()) {
        int j = b.index_of(f);
        if (j < 0) continue; // non-representative term; covered by the check below
        coords[j] = c / b.self_coeff[j];
    }
    for (size_t j = 0; j < coords.size(); ++j)
        if (coords[j] != 0) {
            FormCombo wj = wedge(FormCombo(b.reps[j]));
            wj *= coords[j];
            check += wj;
        }
    if (!(check == w))
        throw std::invalid_argument("coordinates: combination not in the spanned space");
    return coords;
}

namespace {

SparseRationalMatrix operator_matrix(const SpaceBasis& src, const SpaceBasis& dst,
                                     const std::function<FormCombo(const FormCombo&)>& op,
                                     bool divfree) {
    SparseRationalMatrix m(dst.dim(), src.dim());
    std::vector<std::vector<Rational>> cols(src.dim());
    parallel_for(src.dim(), [&](int j) {
        FormCombo img = op(wedge(FormCombo(src.reps[j])));
        if (divfree) img = drop_one_loops(img);
        cols[j] = coordinates(img, dst);
    });
    for (int j = 0; j < src.dim(); ++j)
        for (int r = 0; r < dst.dim(); ++r)
            if (cols[j][r] != 0) m.add(r, j, cols[j][r]);
    return m;
}

} // namespace

SparseRationalMatrix matrix_dH(int N, int n, int p, bool divfree) {
    if (n < 1) throw std::invalid_argument("matrix_dH: n >= 1");
    return operator_matrix(basis(N, n, p, divfree), basis(N, n - 1, p, divfree),
                           [](const FormCombo& c) { return dH(c); }, divfree);
}

SparseRationalMatrix matrix_dV(int N, int n, int p, bool divfree) {
    return operator_matrix(basis(N, n, p, divfree), basis(N, n, p + 1, divfree),
                           [](const FormCombo& c) { return dV(c); }, divfree);
}

SparseRationalMatrix matrix_I(int N, int p, bool divfree) {
    if (p < 1) throw std::invalid_argument("matrix_I: p >= 1");
    return operator_matrix(basis(N, 0, p, divfree), basis(N, 0, p, divfree),
                           [](const FormCombo& c) { return interior_euler(c); }, divfree);
}

SparseRationalMatrix matrix_Estar(int N, bool divfree) {
    return operator_matrix(basis(N, 0, 0, divfree), basis(N, 0, 1, divfree),
                           [](const FormCombo& c) { return euler_Estar(c); }, divfree);
}

int functional_dim(int N, int p, bool divfree) {
    // the interior Euler operator is idempotent, so its rank is its trace
    SparseRationalMatrix m = matrix_I(N, p, divfree);
    Rational tr = 0;
    for (int i = 0; i < m.rows(); ++i) tr += m.at(i, i);
    if (denominator(tr) != 1)
        throw std::logic_error("functional_dim: non-integral trace");
    return static_cast<int>(numerator(tr));
}

int functional_dim_restricted(int N, int p) {
    // I on 1-loop-free combinations, image read in the 1-loop quotient: the
    // marked-leaf functional forms of the divergence-free second row
    return rank(matrix_I(N, p, true));
}

std::vector<FormCombo> solenoidal_generators(int N, bool divfree) {
    std::vector<FormCombo> out;
    if (divfree && N == 1) out.emplace_back(parse("b"));
    for (const Forest& f : basis(N, 2, 0, divfree).reps) {
        FormCombo g = dH(wedge(FormCombo(f)));
        if (divfree) g = drop_one_loops(g);
        if (!g.is_zero()) out.push_back(std::move(g));
    }
    return out;
}

namespace {

Forest selfloop_at_root(const Forest& t) { return graft(t, t.roots[0], t.roots[0]); }

// plain rooted trees (no aromas) of each order, in canonical order
std::vector<Forest> butcher_trees(int max_order) {
    std::vector<Forest> out;
    for (int m = 1; m <= max_order; ++m)
        for (const Forest& f : generate(m, 1, 0, false)) {
            auto cyc = cycle_nodes(f);
            if (std::none_of(cyc.begin(), cyc.end(), [](bool b) { return b; }))
                out.push_back(f);
        }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<FormCombo> solenoidal_basis(int N) {
    if (N < 1) throw std::invalid_argument("solenoidal_basis: N >= 1");
    std::vector<Forest> trees = butcher_trees(N - 1);
    std::vector<FormCombo> out;

    // choose distinct trees t_{i1} < ... < t_{ik}, k >= 2, total <= N;
    // the rest of the order is a scalar phi (possibly empty)
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from, int total) -> void {
        if (static_cast<int>(pick.size()) >= 2) {
            int rest = N - total;
            std::vector<Forest> scalars;
            if (rest == 0)
                scalars.push_back(empty_forest());
            else
                scalars = generate(rest, 0, 0, false);
            for (const Forest& phi : scalars)
                for (size_t l = 1; l < pick.size(); ++l) {
                    Forest scal = phi;
                    for (size_t j = 1; j < pick.size(); ++j)
                        if (j != l) scal = juxtapose(scal, selfloop_at_root(trees[pick[j]]));
                    Forest two = juxtapose(juxtapose(scal, trees[pick[0]]), trees[pick[l]]);
                    out.push_back(dH(wedge(FormCombo(two))));
                }
        }
        for (int i = from; i < static_cast<int>(trees.size()); ++i) {
            int sz = trees[i].order();
            if (total + sz > N) continue;
            pick.push_back(i);
            self(self, i + 1, total + sz);
            pick.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

FormCombo redirect_rho(const Forest& alpha) {
    std::vector<int> loops;
    for (int v = 0; v < alpha.order(); ++v)
        if (alpha.succ[v] == v) loops.push_back(v);
    if (loops.empty()) throw std::invalid_argument("redirect_rho: no self-loop");
    FormCombo out;
    std::vector<int> target(loops.size(), 0);
    while (true) {
        bool ok = true;
        for (size_t i = 0; i < loops.size(); ++i)
            if (target[i] == loops[i]) ok = false;
        if (ok) {
            Forest g = alpha;
            g.enc.clear();
            for (size_t i = 0; i < loops.size(); ++i) g.succ[loops[i]] = target[i];
            out.add(canonical(std::move(g)), 1);
        }
        int i = static_cast<int>(loops.size()) - 1;
        while (i >= 0 && ++target[i] == alpha.order()) target[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::vector<DivergenceBasisElement> divergence_basis(int N) {
    std::vector<DivergenceBasisElement> out;
    for (const Forest& a : basis(N, 0, 0, false).reps) {
        if (!a.has_one_loop()) continue;
        int k = 0;
        for (int v = 0; v < a.order(); ++v) k += a.succ[v] == v;
        FormCombo combo(a);
        FormCombo rho = redirect_rho(a);
        rho *= Rational(k % 2 == 1 ? 1 : -1);
        combo += rho;
        out.push_back({a, std::move(combo)});
    }
    return out;
}

std::vector<FormCombo> annihilator_div_basis(int N) {
    std::vector<FormCombo> out;
    auto scalars = basis(N, 0, 0, false).reps;
    std::vector<std::pair<Forest, FormCombo>> alphas;
    for (const Forest& a : scalars)
        if (a.has_one_loop()) {
            int k = 0;
            for (int v = 0; v < a.order(); ++v) k += a.succ[v] == v;
            FormCombo rho = redirect_rho(a);
            rho *= Rational(k % 2 == 1 ? 1 : -1);
            alphas.emplace_back(a, std::move(rho));
        }
    for (const Forest& beta : scalars) {
        if (beta.has_one_loop()) continue;
        FormCombo fn(beta);
        for (auto& [a, rho] : alphas) fn.add(a, -rho.coeff(beta));
        out.push_back(std::move(fn));
    }
    return out;
}

FormCombo annihilator_pi_literal(const Forest& beta) {
    if (beta.has_one_loop())
        throw std::invalid_argument("annihilator_pi_literal: beta must be non-self-looped");
    std::vector<int> edges; // nodes with an outgoing edge
    for (int v = 0; v < beta.order(); ++v)
        if (beta.succ[v] >= 0) edges.push_back(v);
    FormCombo out;
    const size_t m = edges.size();
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
        Forest g = beta;
        g.enc.clear();
        int cut = 0;
        for (size_t i = 0; i < m; ++i)
            if (mask & (size_t{1} << i)) {
                g.succ[edges[i]] = edges[i];
                ++cut;
            }
        Forest cutf = canonical(std::move(g));
        Rational mult = 0;
        if (cut == 0)
            mult = 1;
        else
            mult = redirect_rho(cutf).coeff(beta);
        if (mult != 0) out.add(cutf, (cut % 2 == 0 ? mult : -mult));
    }
    return out;
}

FormCombo dH_dual(const Forest& phi, int N, bool divfree) {
    FormCombo fn;
    for (const Forest& g : basis(N, 1, 0, divfree).reps) {
        FormCombo d = dH(FormCombo(g));
        if (divfree) d = drop_one_loops(d);
        Rational v = d.coeff(phi);
        if (v != 0) fn.add(g, v);
    }
    return fn;
}

FormCombo dH_dual_by_edges(const Forest& phi) {
    FormCombo fn;
    for (int v = 0; v < phi.order(); ++v) {
        if (phi.succ[v] < 0) continue;
        Forest g = phi;
        g.enc.clear();
        g.succ[v] = -1;
        g.roots.push_back(v);
        Forest cut = canonical(std::move(g));
        Rational m1 = dH(FormCombo(cut)).coeff(phi);
        int m2 = 0;
        for (int w = 0; w < phi.order(); ++w) {
            if (phi.succ[w] < 0) continue;
            Forest h = phi;
            h.enc.clear();
            h.succ[w] = -1;
            h.roots.push_back(w);
            if (canonical(std::move(h)) == cut) ++m2;
        }
        fn.add(cut, m1 / m2);
    }
    return fn;
}

std::vector<FormCombo> image_dual_basis(int N) {
    std::vector<FormCombo> out;
    for (const Forest& phi : basis(N, 0, 0, false).reps)
        if (phi.has_one_loop()) out.push_back(dH_dual(phi, N, false));
    return out;
}

Rational pair_dual(const FormCombo& functional, const FormCombo& value) {
    Rational s = 0;
    const FormCombo& small = functional.size() <= value.size() ? functional : value;
    const FormCombo& large = functional.size() <= value.size() ? value : functional;
    for (auto& [f, c] : small.terms()) s += c * large.coeff(f);
    return s;
}

bool ExactnessReport::horizontal_exact() const {
    for (auto& pt : horizontal)
        if (pt.defect() != 0) return false;
    return true;
}

bool ExactnessReport::vertical_exact() const {
    for (auto& pt : vertical)
        if (pt.defect() != 0) return false;
    return true;
}

ExactnessReport exactness_report(int N, int n_max, int p_max, bool divfree) {
    ExactnessReport rep;
    rep.N = N;
    rep.divfree = divfree;
    for (int p = 0; p <= p_max; ++p) {
        std::vector<int> dim(n_max + 2, 0), rk(n_max + 2, 0);
        for (int n = 0; n <= n_max + 1; ++n) dim[n] = basis(N, n, p, divfree).dim();
        for (int n = 1; n <= n_max + 1; ++n)
            rk[n] = dim[n] == 0 ? 0 : rank(matrix_dH(N, n, p, divfree));
        for (int n = 1; n <= n_max; ++n) {
            ExactnessPoint pt;
            pt.n = n;
            pt.p = p;
            pt.dim = dim[n];
            pt.ker = dim[n] - rk[n];
            pt.im = rk[n + 1];
            if (pt.defect() != 0) {
                // keep the kernel as the witness of the failure
                auto kv = kernel(matrix_dH(N, n, p, divfree));
                auto b = basis(N, n, p, divfree);
                for (auto& x : kv) rep.defect_witness.push_back(b.element(x));
            }
            rep.horizontal.push_back(pt);
        }
        // augmented end of the row: Ker(I or Estar) against Im d_H.  A genuine
        // complex only without the 1-loop quotient (I does not descend to it).
        if (!divfree) {
            ExactnessPoint ap;
            ap.n = 0;
            ap.p = p;
            ap.dim = dim[0];
            if (dim[0] > 0) {
                int rk_edge =
                    p == 0 ? rank(matrix_Estar(N, false)) : rank(matrix_I(N, p, false));
                ap.ker = dim[0] - rk_edge;
                ap.im = rk[1];
            }
            rep.augmented.push_back(ap);
        }
        if (p >= 1) {
            // the whole row: spaces vanish beyond n = N
            int alt = 0;
            for (int n = 0; n <= N; ++n)
                alt += (n % 2 == 0 ? 1 : -1) * basis(N, n, p, divfree).dim();
            alt -= divfree ? functional_dim_restricted(N, p) : functional_dim(N, p, false);
            rep.augmented_alternating.emplace_back(p, alt);
        }
    }
    for (int n = 0; n <= n_max; ++n) {
        std::vector<int> rkv(p_max + 2, 0);
        std::vector<int> dim(p_max + 2, 0);
        for (int p = 0; p <= p_max + 1; ++p) dim[p] = basis(N, n, p, divfree).dim();
        for (int p = 0; p <= p_max; ++p)
            rkv[p] = dim[p] == 0 ? 0 : rank(matrix_dV(N, n, p, divfree));
        for (int p = 0; p <= p_max; ++p) {
            ExactnessPoint pt;
            pt.n = n;
            pt.p = p;
            pt.dim = dim[p];
            pt.ker = dim[p] - rkv[p];
            pt.im = p == 0 ? 0 : rkv[p - 1];
            rep.vertical.push_back(pt);
        }
    }
    return rep;
}

VpCertificate vp_certificate(const std::map<Forest, Rational>& coeffs, int max_order,
                             bool divfree) {
    VpCertificate cert;
    FormCombo series;
    for (auto& [f, c] : coeffs) {
        if (!f.is_plain() || f.num_roots() != 1 || f.num_covertices() != 0)
            throw std::invalid_argument("vp_certificate: coefficients must map aromatic trees");
        series.add(f, c / Rational(symmetry_order(f)));
    }
    Forest b1 = parse("b");
    if (coeffs.find(b1) == coeffs.end() || coeffs.at(b1) != 1)
        throw std::invalid_argument("vp_certificate: the single-vertex tree must carry 1");

    for (int k = 2; k <= max_order; ++k) {
        FormCombo part = series.graded(k);
        if (divfree) part = drop_one_loops(part);
        if (part.is_zero()) {
            cert.eta[k] = FormCombo();
            continue;
        }
        bool bamboo_obstructed = part.coeff(bamboo(k)) != 0;
        std::optional<std::vector<Rational>> x;
        if (!bamboo_obstructed) {
            auto m = matrix_dH(k, 2, 0, divfree);
            x = solve(m, coordinates(part, basis(k, 1, 0, divfree)));
        }
        if (x) {
            FormCombo eta = basis(k, 2, 0, divfree).element(*x);
            FormCombo back = dH(eta);
            if (divfree) back = drop_one_loops(back);
            if (!(back == part))
                throw std::logic_error("vp_certificate: solver verification failed");
            cert.eta[k] = std::move(eta);
            continue;
        }
        // infeasible: produce a separating functional d_H* phi*
        FormCombo d = dH(part);
        if (divfree) d = drop_one_loops(d);
        VpFailure fail;
        fail.order = k;
        bool found = false;
        for (auto& [phi, c] : d.terms())
            if (divfree || phi.has_one_loop()) {
                fail.witness_scalar = phi;
                found = true;
                break;
            }
        if (!found)
            throw std::logic_error("vp_certificate: nonzero divergence without witness");
        fail.functional = dH_dual(fail.witness_scalar, k, divfree);
        fail.pairing = pair_dual(fail.functional, part);
        cert.feasible = false;
        cert.failure = std::move(fail);
        break;
    }
    return cert;
}

std::map<int, Rational> bamboo_check(const FormCombo& c) {
    std::map<int, Rational> out;
    if (c.is_zero()) return out;
    auto [n, p] = c.grade();
    if (n != 1 || p != 0) throw std::invalid_argument("bamboo_check: needs Omega_1");
    for (int k = 1; k <= c.max_order(); ++k) {
        Rational v = c.coeff(bamboo(k));
        if (v != 0) out[k] = v;
    }
    return out;
}

} // namespace aromakit
