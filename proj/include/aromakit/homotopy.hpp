#pragma once

#include "aromakit/algebra.hpp"

namespace aromakit {

// Vertical homotopy: (p/|gamma|) gamma_{(p) -> vertex}, termwise.  p >= 1.
// One-sided inverse of d_V: (d_V h_V + h_V d_V) = id on Omega_{n,p}.
FormCombo h_V(const FormCombo& c);

// Horizontal homotopy on Omega_{n,p}:
//   (1/|gamma|) sum_q (n+1)/(q+n+1) wedge D^q E^{q+1} gamma.
// Satisfies (d_H h_H + h_H d_H) = id for n >= 1 and the variational identity
// (d_H h_H + h_V Estar) = id on Omega_0.
FormCombo h_H(const FormCombo& c);

// (d_H h_H + h_V Estar)c - c on Omega_0; expected zero.
FormCombo variational_residual(const FormCombo& c);

// Divergence-free horizontal homotopy and its remainder R = E_r / |gamma|.
// Outputs are reduced modulo 1-loops.  For n > 1 the homotopy identity has no
// remainder; for n = 1 it reads (d_H h + h d_H) = id - R.
struct DivfreeHomotopy {
    FormCombo h; // h-tilde applied to the input
    FormCombo r; // remainder R applied to the input (n = 1), else zero
};
DivfreeHomotopy h_H_divfree(const FormCombo& c);

// Modified operators h1 = h(1 + E/(N-1)), h2 = h(1 + E_r/(N-1)) on
// Omega-tilde_1^N with N > 1; they satisfy d_H h2 + h1 d_H = id.
struct DivfreeSimple {
    FormCombo h1;
    FormCombo h2;
};
DivfreeSimple h_H_divfree_simple(const FormCombo& c);

// Augmented homotopies of the Euler-Lagrange edge:
//   aug_h_H = wedge sum_{q>=1} (1/q) D^{q-1} E^q_{(p)}   on Omega_{0,p},
//   aug_h_V = I h_V                                      on I_p.
FormCombo aug_h_H(const FormCombo& c);
FormCombo aug_h_V(const FormCombo& c);

// Integration-by-parts homotopy on Omega_{0,p}: peel 1-loops greedily,
// loop-richest terms first.  The result equals h_H up to a solenoidal term.
// The output depends on which loop vertex is peeled inside a term (any two
// choices differ by a solenoidal form); the term order does not matter and
// `reverse_order` switches it, exposed to assert exactly that.
FormCombo ibp_homotopy(const FormCombo& c, bool reverse_order = false);

// Every output the peeling algorithm can produce over all pick orders, as
// printable strings.  Exhaustive search; meant for small scalars in tests.
std::vector<std::string> ibp_reachable_outputs(const FormCombo& c, size_t cap = 64);

// h^(n): right inverse of the n-fold grafting D^n, defined when
// E^p c = 0 for p < n.  Terms carry n detached roots.
struct AntiderivativeError : std::runtime_error {
    int failing_order;
    AntiderivativeError(int p)
        : std::runtime_error("antiderivative precondition violated: E^" +
                             std::to_string(p) + " does not vanish"),
          failing_order(p) {}
};
MarkedCombo nth_antiderivative(const FormCombo& c, int n);

} // namespace aromakit
