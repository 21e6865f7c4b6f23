#pragma once

#include "aromakit/combo.hpp"

namespace aromakit {

// Antisymmetrization over root positions and covertex labels; the projection
// onto Omega_{n,p}.  Input must be homogeneous in (n, p) and plain.
FormCombo wedge(const FormCombo& c);

// Horizontal derivative: graft the last root onto every node, then wedge.
// Requires n >= 1.
FormCombo dH(const FormCombo& c);

// Vertical derivative: replace each vertex by the covertex p+1, wedged.
FormCombo dV(const FormCombo& c);

// Trace on Omega_{1,1}: graft the root onto the covertex, then turn the
// covertex into a vertex.
FormCombo trace_form(const FormCombo& c);

// Quotient map to the divergence-free side: terms with a 1-loop go to 0.
FormCombo drop_one_loops(const FormCombo& c);

// Bilinear juxtaposition product.
FormCombo juxtapose(const FormCombo& a, const FormCombo& b);

// ---- grafting calculus on marked/detached combinations ----

// D^q: graft q of the detached roots, each onto any node, in all ways.
// While the diamond mark is present the marked node is excluded as a target;
// pass exclude_marked = false for combinations that have been unmarked.
MarkedCombo D_q(const MarkedCombo& c, int q, bool exclude_marked);

// D^{q -> v} with v the marked node: all q grafts target the mark.  Used with
// the mark kept as a position tracker on otherwise unmarked combinations.
MarkedCombo D_q_to_mark(const MarkedCombo& c, int q);

// remove the diamond decoration termwise
MarkedCombo unmark(const MarkedCombo& c);

// detached roots become ordinary roots; terms must be unmarked
FormCombo to_form(const MarkedCombo& c);

// ---- Euler operators (outputs are raw, not wedge-projected) ----

// E_v on a single forest: detach the predecessors of v, regraft them in all
// ways avoiding v, with sign (-1)^{|Pi(v)|}.
FormCombo euler_E_at(const Forest& f, int v);

// E = sum of E_v over all nodes.
FormCombo euler_E(const FormCombo& c);

// E_r, the Euler operator at the root; n = 1 only.
FormCombo euler_E_root(const FormCombo& c);

// E°: Omega_0 -> Omega_{0,1}; the node under scrutiny becomes covertex 1.
FormCombo euler_Estar(const FormCombo& c);

// E^q_v: regraft all but q of the detached predecessors; q detached roots
// remain, appended after the ordinary roots.
MarkedCombo euler_Eq_at(const Forest& f, int v, int q);

// E^q = sum over nodes.
MarkedCombo euler_Eq(const FormCombo& c, int q);

// Interior Euler operator I = wedge E_{(p)} on Omega_{0,p}, p >= 1.
FormCombo interior_euler(const FormCombo& c);

// Variational derivative delta_V = I after d_V.
FormCombo delta_V(const FormCombo& c);

} // namespace aromakit
