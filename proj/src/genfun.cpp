#include "aromakit/genfun.hpp"

#include <stdexcept>

namespace aromakit {

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
    if (o.trunc() != trunc()) throw std::invalid_argument("series truncation mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
    if (o.trunc() != trunc()) throw std::invalid_argument("series truncation mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    if (a.trunc() != b.trunc()) throw std::invalid_argument("series truncation mismatch");
    PowerSeries r(a.trunc());
    for (int i = 0; i <= a.trunc(); ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; i + j <= a.trunc(); ++j)
            if (b.c_[j] != 0) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

PowerSeries operator*(const Rational& v, PowerSeries a) {
    for (auto& c : a.c_) c *= v;
    return a;
}

PowerSeries PowerSeries::substitute_power(int k) const {
    PowerSeries r(trunc());
    for (int i = 0; i * k <= trunc(); ++i) r.c_[i * k] = c_[i];
    return r;
}

PowerSeries PowerSeries::exp() const {
    if (c_[0] != 0) throw std::invalid_argument("exp: nonzero constant term");
    PowerSeries g(trunc());
    g.c_[0] = 1;
    for (int n = 1; n <= trunc(); ++n) {
        Rational s = 0;
        for (int k = 1; k <= n; ++k)
            if (c_[k] != 0) s += Rational(k) * c_[k] * g.c_[n - k];
        g.c_[n] = s / n;
    }
    return g;
}

PowerSeries PowerSeries::reciprocal() const {
    if (c_[0] == 0) throw std::invalid_argument("reciprocal: zero constant term");
    PowerSeries h(trunc());
    h.c_[0] = Rational(1) / c_[0];
    for (int n = 1; n <= trunc(); ++n) {
        Rational s = 0;
        for (int k = 1; k <= n; ++k) s += c_[k] * h.c_[n - k];
        h.c_[n] = -s / c_[0];
    }
    return h;
}

PowerSeries PowerSeries::shift_up(int m) const {
    PowerSeries r(trunc());
    for (int i = 0; i + m <= trunc(); ++i) r.c_[i + m] = c_[i];
    return r;
}

PowerSeries PowerSeries::shift_down(int m) const {
    for (int i = 0; i < m && i <= trunc(); ++i)
        if (c_[i] != 0) throw std::invalid_argument("shift_down: nonzero low coefficient");
    // the top m coefficients are unknown at this truncation
    PowerSeries r(trunc() - m);
    for (int i = m; i <= trunc(); ++i) r.c_[i - m] = c_[i];
    return r;
}

PowerSeries PowerSeries::truncate(int K) const {
    if (K > trunc()) throw std::invalid_argument("truncate: cannot extend");
    PowerSeries r(K);
    for (int i = 0; i <= K; ++i) r.c_[i] = c_[i];
    return r;
}

BivariateSeries BivariateSeries::constant(int K, const Rational& v) {
    BivariateSeries s(K);
    s.add(0, 0, v);
    return s;
}

Rational BivariateSeries::coeff(int upow, int zpow) const {
    if (zpow < 0 || zpow > trunc()) return 0;
    const auto& row = c_[zpow];
    if (upow < 0 || upow >= static_cast<int>(row.size())) return 0;
    return row[upow];
}

void BivariateSeries::add(int upow, int zpow, const Rational& v) {
    auto& row = c_[zpow];
    if (upow >= static_cast<int>(row.size())) row.resize(upow + 1, Rational(0));
    row[upow] += v;
}

BivariateSeries& BivariateSeries::operator+=(const BivariateSeries& o) {
    if (o.trunc() != trunc()) throw std::invalid_argument("series truncation mismatch");
    for (int z = 0; z <= trunc(); ++z)
        for (size_t u = 0; u < o.c_[z].size(); ++u) add(static_cast<int>(u), z, o.c_[z][u]);
    return *this;
}

BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
    if (a.trunc() != b.trunc()) throw std::invalid_argument("series truncation mismatch");
    BivariateSeries r(a.trunc());
    for (int za = 0; za <= a.trunc(); ++za)
        for (size_t ua = 0; ua < a.c_[za].size(); ++ua) {
            if (a.c_[za][ua] == 0) continue;
            for (int zb = 0; za + zb <= a.trunc(); ++zb)
                for (size_t ub = 0; ub < b.c_[zb].size(); ++ub)
                    if (b.c_[zb][ub] != 0)
                        r.add(static_cast<int>(ua + ub), za + zb, a.c_[za][ua] * b.c_[zb][ub]);
        }
    return r;
}

BivariateSeries BivariateSeries::scale(const PowerSeries& f) const {
    BivariateSeries r(trunc());
    for (int z = 0; z <= trunc(); ++z)
        for (size_t u = 0; u < c_[z].size(); ++u) {
            if (c_[z][u] == 0) continue;
            for (int k = 0; z + k <= trunc(); ++k)
                if (f[k] != 0) r.add(static_cast<int>(u), z + k, c_[z][u] * f[k]);
        }
    return r;
}

PowerSeries BivariateSeries::at_u(const Rational& u) const {
    PowerSeries r(trunc());
    for (int z = 0; z <= trunc(); ++z) {
        Rational up = 1, s = 0;
        for (size_t k = 0; k < c_[z].size(); ++k) {
            s += c_[z][k] * up;
            up *= u;
        }
        r.set(z, s);
    }
    return r;
}

PowerSeries BivariateSeries::u_coefficient(int upow) const {
    PowerSeries r(trunc());
    for (int z = 0; z <= trunc(); ++z) r.set(z, coeff(upow, z));
    return r;
}

BivariateSeries BivariateSeries::exp() const {
    if (!c_[0].empty())
        for (auto& v : c_[0])
            if (v != 0) throw std::invalid_argument("exp: nonzero z-constant column");
    BivariateSeries acc = BivariateSeries::constant(trunc(), 1);
    BivariateSeries pow = BivariateSeries::constant(trunc(), 1);
    Rational fact = 1;
    for (int m = 1; m <= trunc(); ++m) {
        pow = pow * (*this);
        fact *= m;
        BivariateSeries term = pow;
        for (int z = 0; z <= trunc(); ++z)
            for (size_t u = 0; u < term.c_[z].size(); ++u) term.c_[z][u] /= fact;
        acc += term;
    }
    return acc;
}

PowerSeries t_series(int K) {
    if (K < 1) throw std::invalid_argument("t_series: K >= 1");
    PowerSeries t = PowerSeries::var(K);
    for (int it = 0; it < K; ++it) {
        PowerSeries arg(K);
        for (int k = 1; k <= K; ++k)
            arg += Rational(1, k) * t.substitute_power(k);
        t = arg.exp().shift_up();
    }
    return t;
}

AromaSeries aroma_series(int K) {
    // one guard order so that t/z is exact at order K
    const int G = K + 1;
    PowerSeries t = t_series(G);
    PowerSeries one = PowerSeries::constant(G, 1);
    PowerSeries a = one;
    for (int k = 1; k <= G; ++k)
        a = a * (one - t.substitute_power(k)).reciprocal();
    // z a = t abar: divide out one power of z on both factors
    PowerSeries abar = a.truncate(K) * t.shift_down().reciprocal();
    AromaSeries s{a.truncate(K), PowerSeries(K), abar};
    s.aring = s.a - abar;
    return s;
}

RowSeries row_series(int K) {
    PowerSeries t = t_series(K);
    AromaSeries ar = aroma_series(K);
    PowerSeries one = PowerSeries::constant(K, 1);
    PowerSeries inv1mt2 = ((one - t) * (one - t)).reciprocal();

    BivariateSeries arg(K);
    for (int k = 1; k <= K; ++k) {
        PowerSeries tk = t.substitute_power(k);
        Rational w = Rational(k % 2 == 1 ? 1 : -1, k);
        for (int z = 0; z <= K; ++z)
            if (tk[z] != 0) arg.add(k, z, w * tk[z]);
    }
    RowSeries r{arg.exp().scale(ar.a), BivariateSeries(K), PowerSeries(K), PowerSeries(K)};

    // b1 = b0 (t/(1-t)^2 + u t/(1-t))
    BivariateSeries mult(K);
    PowerSeries m0 = t * inv1mt2;
    PowerSeries m1 = t * (one - t).reciprocal();
    for (int z = 0; z <= K; ++z) {
        if (m0[z] != 0) mult.add(0, z, m0[z]);
        if (m1[z] != 0) mult.add(1, z, m1[z]);
    }
    r.b1 = r.b0 * mult;
    r.c1 = (ar.a * t * inv1mt2).shift_up();
    r.s = ar.a * t - ar.aring;
    return r;
}

RowSeries tilde_row_series(int K) {
    PowerSeries t = t_series(K);
    AromaSeries ar = aroma_series(K);
    PowerSeries one = PowerSeries::constant(K, 1);
    PowerSeries inv1mt = (one - t).reciprocal();
    PowerSeries z_over_t = t_series(K + 1).shift_down().reciprocal();
    RowSeries full = row_series(K);

    RowSeries r{BivariateSeries(K), BivariateSeries(K), PowerSeries(K), PowerSeries(K)};
    r.b0 = full.b0.scale(z_over_t); // z b0 / t
    // b1-tilde = z b0 (t/(1-t)^2 + u/(1-t))
    BivariateSeries mult(K);
    PowerSeries m0 = t * inv1mt * inv1mt;
    for (int z = 0; z <= K; ++z) {
        if (m0[z] != 0) mult.add(0, z, m0[z]);
        if (inv1mt[z] != 0) mult.add(1, z, inv1mt[z]);
    }
    r.b1 = full.b0.scale(PowerSeries::var(K)) * mult;
    r.c1 = full.c1.shift_up();
    r.s = PowerSeries::var(K) + (full.s * z_over_t);
    return r;
}

DimensionTable dimension_table(int K) {
    DimensionTable tab;
    tab.K = K;
    PowerSeries t = t_series(K);
    AromaSeries ar = aroma_series(K);
    RowSeries row = row_series(K);
    RowSeries tilde = tilde_row_series(K);
    PowerSeries omega1 = ar.a * t;

    auto as_int = [](const Rational& v) {
        if (denominator(v) != 1) throw std::logic_error("dimension_table: non-integer");
        return numerator(v);
    };
    for (int N = 1; N <= K; ++N) {
        tab.omega1.push_back(as_int(omega1[N]));
        tab.ring0.push_back(as_int(ar.aring[N]));
        tab.psi.push_back(as_int(row.s[N]));
        tab.psi_tilde.push_back(as_int(tilde.s[N]));
        if (tab.psi.back() != tab.omega1.back() - tab.ring0.back())
            throw std::logic_error("dimension_table: solenoidal count mismatch");
        std::vector<Integer> r0, r1;
        for (int n = 4; n >= 0; --n) {
            r0.push_back(as_int(row.b0.coeff(n, N)));
            r1.push_back(as_int(row.b1.coeff(n, N)));
        }
        tab.row0.push_back(std::move(r0));
        tab.row1.push_back(std::move(r1));
        tab.functional1.push_back(as_int(row.c1[N]));
    }
    return tab;
}

} // namespace aromakit
