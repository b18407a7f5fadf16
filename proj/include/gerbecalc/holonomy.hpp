#ifndef GERBECALC_HOLONOMY_HPP
#define GERBECALC_HOLONOMY_HPP

/* Surface holonomy by descent through the Cech-de Rham double complex.
 *
 *   L_i = dL'_i                       (cone contraction on each star)
 *   alpha_ij u alpha_ij = dL'_ij      (cone contraction on each edge overlap)
 *   h_ij = alpha_ij + L'_ij,   L'_j - L'_i = h_ij + dL''_ij
 *   d(C_ijk) = (delta h)_ijk,  kappa_ijk = -(C_ijk + (delta L'')_ijk)  (constant)
 *   (the sign makes kappa the Cech representative of [L] under D = delta + (-1)^p d)
 *   holonomy_density = Whitney image of kappa,  value = exp(integral).
 *
 * Cech differentials on a triangle (i<j<k) move the U_j-frame term into the
 * U_i frame by Ad(T_ij^{-1}); in center-valued data the transport is trivial.
 */

#include <map>
#include <string>

#include "gerbecalc/connective.hpp"

namespace gerbecalc {

struct HolonomyProblem {
  /// Throws DegreeMismatch when the base is not a surface.
  HolonomyProblem(ConnectiveBundle cb, CurvingData cur);

  ConnectiveBundle cb;
  CurvingData cur;
  const CoverPtr& cover() const { return cb.cover(); }
};

/// L'_i with dL'_i = L_i, apex at the patch vertex.
std::map<int, Cochain> solve_potentials(const HolonomyProblem& p);

/// L'_ij with dL'_ij = alpha_ij u alpha_ij on each sorted edge overlap.
std::map<Simplex, Cochain> solve_wedge_potentials(const HolonomyProblem& p);

struct HChain {
  std::map<Simplex, Cochain> h;       // 1-cochains on U_ij
  std::map<Simplex, Cochain> second;  // L''_ij, 0-cochains on U_ij
  double rho_closedness = 0.0;        // max |d rho_ij|
};

/// Throws NotClosed when some rho_ij is not closed within `tol`.
HChain build_h_chain(const HolonomyProblem& p, const std::map<int, Cochain>& potentials,
                     const std::map<Simplex, Cochain>& wedge_potentials, double tol = kTolAlg);

struct Constants {
  std::map<Simplex, Mat> kappa;      // per sorted base triangle
  std::map<Simplex, double> spread;  // max deviation from the barycenter value
  double max_spread = 0.0;
  double closedness = 0.0;  // max |d(delta h)|
};

/// Throws NotClosed (delta h) or NotConstant (spread above `tol`).
Constants extract_constants(const HolonomyProblem& p, const HChain& chain, double tol = kTolAlg);

/// Integral of the unnormalized discrete Whitney 2-form of a positively
/// oriented triangle; the assembly divides by it so each triangle carries
/// unit weight.
inline constexpr double kWhitneyWeight = 0.5;

/// Sum over base triangles (i<j<k) of kappa_ijk times
/// (phi_i u dphi_j u dphi_k - phi_j u dphi_i u dphi_k + phi_k u dphi_i u dphi_j) / kWhitneyWeight.
Cochain whitney_assemble(const std::map<Simplex, Mat>& kappa, const CoverPtr& cover, GroupSpec spec);

struct HolonomyReport {
  std::map<Simplex, Mat> kappa;
  std::map<Simplex, double> kappa_spread;
  Cochain density;  // holonomy_density, a global 2-cochain
  Mat integral;
  Mat value;
  double potential_residual = 0.0;  // max |dL'_i - L_i|
  double wedge_residual = 0.0;      // max |dL'_ij - alpha_ij u alpha_ij|
  double rho_closedness = 0.0;
  double delta_h_closedness = 0.0;
  double max_kappa_spread = 0.0;
  std::string frame_convention;
};

/// Full pipeline. Stage failures are rethrown with the stage name prefixed.
HolonomyReport holonomy(const HolonomyProblem& p, double tol = kTolAlg);

/// Pipeline from given potentials (used to study the dependence on choices).
HolonomyReport holonomy_from_potentials(const HolonomyProblem& p, const std::map<int, Cochain>& potentials,
                                        double tol = kTolAlg);

}  // namespace gerbecalc

#endif
