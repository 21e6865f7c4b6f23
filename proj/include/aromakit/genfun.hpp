#pragma once

#include <vector>

#include "aromakit/rational.hpp"

namespace aromakit {

// Power series with exact rational coefficients, truncated at z^K inclusive.
class PowerSeries {
  public:
    explicit PowerSeries(int K) : c_(K + 1, Rational(0)) {}
    static PowerSeries var(int K) {
        PowerSeries s(K);
        if (K >= 1) s.c_[1] = 1;
        return s;
    }
    static PowerSeries constant(int K, const Rational& v) {
        PowerSeries s(K);
        s.c_[0] = v;
        return s;
    }

    int trunc() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int i) const { return c_[i]; }
    void set(int i, const Rational& v) { c_[i] = v; }

    PowerSeries& operator+=(const PowerSeries& o);
    PowerSeries& operator-=(const PowerSeries& o);
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const Rational& v, PowerSeries a);
    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.c_ == b.c_;
    }

    PowerSeries substitute_power(int k) const; // f(z^k)
    PowerSeries exp() const;                   // needs zero constant term
    PowerSeries reciprocal() const;            // needs nonzero constant term
    PowerSeries shift_up(int m = 1) const;     // multiply by z^m
    PowerSeries shift_down(int m = 1) const;   // divide by z^m; low terms must vanish
    PowerSeries truncate(int K) const;         // restrict to a lower order

  private:
    std::vector<Rational> c_;
};

// Polynomial in u per z-order, truncated in z at K.
class BivariateSeries {
  public:
    explicit BivariateSeries(int K) : c_(K + 1) {}
    static BivariateSeries constant(int K, const Rational& v);

    int trunc() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int upow, int zpow) const;
    void add(int upow, int zpow, const Rational& v);

    BivariateSeries& operator+=(const BivariateSeries& o);
    friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b);

    // multiply by a univariate series in z
    BivariateSeries scale(const PowerSeries& f) const;
    // evaluate u to a constant
    PowerSeries at_u(const Rational& u) const;
    PowerSeries u_coefficient(int upow) const;
    BivariateSeries exp() const; // needs zero (u,z) = (*,0) column

  private:
    std::vector<std::vector<Rational>> c_; // c_[z][u]
};

// Rooted-tree counting series: t = z exp(sum t(z^k)/k).  OEIS A000081.
PowerSeries t_series(int K);

// Scalar-aroma counting series.  `abar` counts the fixed-point-free mapping
// patterns including the empty one, so that z a = t abar and aring = a - abar.
// OEIS cross-references: a = A001372, aring = A217896, abar = A001373.
struct AromaSeries {
    PowerSeries a;     // all scalar aromas, constant term 1
    PowerSeries aring; // at least one 1-loop
    PowerSeries abar;  // no 1-loop
};
AromaSeries aroma_series(int K);

// Bottom two rows of the bicomplex and the solenoidal counts.
struct RowSeries {
    BivariateSeries b0; // [u^n z^N] = dim Omega_n^N
    BivariateSeries b1; // [u^n z^N] = dim Omega_{n,1}^N
    PowerSeries c1;     // dim I_1^N
    PowerSeries s;      // dim Psi^N
};
RowSeries row_series(int K);

// Divergence-free analogues.
RowSeries tilde_row_series(int K); // s field holds s-tilde, c1 holds c1-tilde

// The two headline tables, emitted row-wise for N = 1..K.
struct DimensionTable {
    int K;
    std::vector<Integer> omega1, ring0, psi, psi_tilde; // solenoidal table
    // bottom-rows table: per N, dims for n = 4..0 of rows p = 0 and p = 1
    std::vector<std::vector<Integer>> row0, row1;
    std::vector<Integer> functional1; // |I_1^N|
};
DimensionTable dimension_table(int K);

} // namespace aromakit
