#pragma once

#include <map>
#include <optional>

#include "aromakit/algebra.hpp"
#include "aromakit/linalg.hpp"

namespace aromakit {

// Ordered basis of Omega_{n,p}^N (or its divergence-free quotient): one
// representative per root/covertex-permutation orbit with nonvanishing wedge.
struct SpaceBasis {
    int N = 0, n = 0, p = 0;
    bool divfree = false;
    std::vector<Forest> reps;
    std::vector<Rational> self_coeff; // coefficient of rep in wedge(rep)

    int dim() const { return static_cast<int>(reps.size()); }
    int index_of(const Forest& f) const; // -1 if absent
    FormCombo element(const std::vector<Rational>& coords) const;
};

SpaceBasis basis(int N, int n, int p, bool divfree);

// Coordinates of a wedge-invariant combination over the basis; the expansion
// is re-checked exactly and a mismatch throws.
std::vector<Rational> coordinates(const FormCombo& w, const SpaceBasis& b);

// Matrix of d_H : Omega_{n,p}^N -> Omega_{n-1,p}^N in the bases above
// (rows = target, cols = source).  divfree works in the 1-loop-free quotient.
SparseRationalMatrix matrix_dH(int N, int n, int p, bool divfree);

// Matrix of d_V : Omega_{n,p}^N -> Omega_{n,p+1}^N.
SparseRationalMatrix matrix_dV(int N, int n, int p, bool divfree);

// Matrix of the interior Euler operator on Omega_{0,p}^N, p >= 1.
SparseRationalMatrix matrix_I(int N, int p, bool divfree);

// Matrix of Estar : Omega_0^N -> Omega_{0,1}^N.
SparseRationalMatrix matrix_Estar(int N, bool divfree);

// dim I_p^N computed as the trace of the idempotent interior Euler matrix.
int functional_dim(int N, int p, bool divfree);

// dim of I applied to the span of 1-loop-free forms, inside the full
// Omega_{0,p}^N: the divergence-free functional forms of the second row.
int functional_dim_restricted(int N, int p);

// Generating set {d_H wedge(gamma) : gamma in F_2^N}; spans Ker d_H.
// In divfree mode 1-loops are dropped and N = 1 contributes the single tree.
std::vector<FormCombo> solenoidal_generators(int N, bool divfree);

// Basis of Psi^N built from self-looped scalars: for a scalar phi, distinct
// trees t_1 < ... < t_k and a position l, take
//   d_H( phi selfloop(t_2)...selfloop(t_{l-1}) selfloop(t_{l+1})...selfloop(t_k)
//        t_1 wedge t_l ).
std::vector<FormCombo> solenoidal_basis(int N);

// Sum over all ways of simultaneously redirecting every 1-loop of alpha to
// another node.  alpha must have at least one 1-loop.
FormCombo redirect_rho(const Forest& alpha);

// alpha + (-1)^(k-1) rho(alpha) per self-looped scalar alpha; each combo is a
// divergence and together they form a basis of Im d_H.
struct DivergenceBasisElement {
    Forest alpha;
    FormCombo combo;
};
std::vector<DivergenceBasisElement> divergence_basis(int N);

// Dual vectors annihilating Im d_H inside Omega_0^N, one per non-self-looped
// scalar: beta* - sum_alpha [beta] ((-1)^(k-1) rho(alpha)) alpha*.
// Functionals are represented as combinations: value on f = coefficient of f.
std::vector<FormCombo> annihilator_div_basis(int N);

// Literal edge-subset formula for the annihilator of Im d_H at beta.  Kept as
// a secondary route; its multiplicities overcount orbits of edge subsets (at
// N = 2 it yields -2 <b[b]> where the graph construction needs -1).
FormCombo annihilator_pi_literal(const Forest& beta);

// Dual of d_H applied to a scalar functional: value on a tree gamma is the
// coefficient of phi in d_H gamma.
FormCombo dH_dual(const Forest& phi, int N, bool divfree);

// Same value computed from cut edges with the m1/m2 multiplicities.
FormCombo dH_dual_by_edges(const Forest& phi);

// {d_H* phi* : phi self-looped scalar}; a basis of Im d_H*, the conditions a
// combination of aromatic trees must satisfy to be solenoidal.
std::vector<FormCombo> image_dual_basis(int N);

Rational pair_dual(const FormCombo& functional, const FormCombo& value);

// Exactness survey of the order-N (augmented) bicomplex.
struct ExactnessPoint {
    int n = 0, p = 0;
    int dim = 0;       // dim of the space at this node
    int ker = 0;       // kernel of the outgoing arrow
    int im = 0;        // image of the incoming arrow
    int defect() const { return ker - im; }
};
struct ExactnessReport {
    int N;
    bool divfree;
    std::vector<ExactnessPoint> horizontal; // at Omega_{n,p}, n >= 1
    std::vector<ExactnessPoint> vertical;   // at Omega_{n,p} for d_V
    // Ker I (or Ker Estar for p = 0) against Im d_H at the row end; a genuine
    // complex only in the standard setting, so filled there alone.
    std::vector<ExactnessPoint> augmented;
    // Alternating dimension sum along the augmented row p >= 1:
    //   sum_n (-1)^n dim Omega_{n,p}^N  -  dim I_p^N.
    // Zero whenever an exact augmented row exists; the divergence-free second
    // row yields a nonzero value (its augmented row cannot be exact).
    std::vector<std::pair<int, int>> augmented_alternating;
    bool horizontal_exact() const;
    bool vertical_exact() const;
    std::vector<FormCombo> defect_witness; // kernel basis at each defective point
};
ExactnessReport exactness_report(int N, int n_max, int p_max, bool divfree);

// Volume-preservation certificate.  `coeffs` maps aromatic trees to the
// coefficients of the modified field's B-series (the tree "b" must carry 1).
// Per order k the order-k part sum a(tau)/sigma(tau) tau must be a divergence
// of a 2-root form; on success eta_k is returned per order, otherwise the
// first failing order with a separating functional from the dual image.
struct VpFailure {
    int order = 0;
    Forest witness_scalar;  // phi with d_H* phi* separating
    FormCombo functional;   // the functional d_H* phi* as a dual vector
    Rational pairing;       // value on the order-k part, nonzero
};
struct VpCertificate {
    bool feasible = true;
    std::map<int, FormCombo> eta; // per order 2..K
    std::optional<VpFailure> failure;
};
VpCertificate vp_certificate(const std::map<Forest, Rational>& coeffs, int max_order,
                             bool divfree);

// Coefficient of the bamboo tree of each order in a combination of trees.
std::map<int, Rational> bamboo_check(const FormCombo& c);

} // namespace aromakit
