#ifndef GERBECALC_EXAMPLES_HPP
#define GERBECALC_EXAMPLES_HPP

/* Ready-made gerbe data on generated meshes. */

#include <map>

#include "gerbecalc/connective.hpp"

namespace gerbecalc {

struct GerbeExample {
  ConnectiveBundle cb;
  CurvingData cur;
};

/// Integer Cech 2-cochain on sorted base triangles with sum of
/// orientation * value equal to `charge`, concentrated on |charge| triangles.
std::map<Simplex, int> concentrated_charge(const TriangulatedComplex& base, int charge);

/// mu_ij = sum_k phi_k n_kij on U_ij for a Cech 2-cochain n on a surface.
std::map<Simplex, ScalarCochain> charge_potentials(const CoverPtr& cover, const std::map<Simplex, int>& n);

/// U(1) transitions exp(2 pi i mu_ij) of the degree-`charge` line bundle on a
/// surface; they satisfy u_ik = u_ij u_jk.
std::map<Simplex, GroupFunction> monopole_transitions(const CoverPtr& cover, int charge);

/// Lifting gerbe of the monopole bundle for U(2) over SU(2).
GerbeCocycle monopole_gerbe(const CoverPtr& cover, int charge, bool twisted = false);

/// Trivial U(1) gerbe with a global curving B (non-uniform density) whose
/// integral is 2 pi i * total.
GerbeExample trivial_curving(const CoverPtr& cover, double total);

/// Trivial U(1) gerbe whose curving is the curvature of the charge-n monopole
/// connection; the connective shift is the connection's transition form.
GerbeExample monopole_curving(const CoverPtr& cover, int charge);

/// U(1) gerbe on a closed 3-manifold with integer class n: c = exp(2 pi i lambda)
/// with lambda_ijk = sum_l phi_l n_lijk, shift A_ij = -2 pi i sum_k phi_k u d(lambda_kij),
/// alpha_i = 0, L_i = sum_k phi_k u d(alpha_ki).
GerbeExample abelian_class3(const CoverPtr& cover, int n);

}  // namespace gerbecalc

#endif
