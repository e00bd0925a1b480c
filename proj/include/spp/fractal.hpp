#ifndef SPP_FRACTAL_HPP
#define SPP_FRACTAL_HPP

#include <vector>

#include "spp/super_periodic.hpp"
#include "spp/sweep_grid.hpp"

// Cantor-family fractal potentials as super periodic specials: stage-G
// middle-removal constructions are order-G repetitions with N_i = 2.
//
//   standard Cantor    remove the middle third of each segment
//   general Cantor     remove the middle fraction gamma (1/3 recovers standard)
//   Smith-Volterra     remove an absolute width L/4^g at stage g; the set
//                      keeps positive measure and the tunnelling saturates
//
// The removal fraction gamma is unrelated to the Bloch phase acos(xi); the
// two are kept apart as removal_gamma and bloch_gamma.

namespace spp {

enum class FractalKind { standard_cantor, general_cantor, svc };

struct FractalSpec {
  FractalKind kind;
  int stage;      // G >= 0
  double span;    // L > 0
  double height;  // V
  double removal_gamma = 1.0 / 3.0;  // general Cantor only, in (0, 1)

  void check() const;
};

// cell width l_G for the given kind and stage
double fractal_cell_width(const FractalSpec& f);

// tier periods s_1 (finest) .. s_G (coarsest), start-to-start
std::vector<double> fractal_periods(const FractalSpec& f);

SppSpec to_spp(const FractalSpec& f);

struct FractalClosedForm {
  double tau = 0.0;                       // k L / 3^{G+1} (standard) or tau_gamma
  std::vector<double> eta1;               // phase lengths, tier-indexed
  std::vector<std::vector<double>> eta2;  // eta2[j][p], p < j
  std::vector<double> eta3;               // 2 s_{j-1} - s_j
  std::vector<double> xi;                 // xi_1 .. xi_G (saturating)
  std::vector<ScaledReal> xi_s;
};

// kind-specialized closed-form xi_j; equals the generic recursion
FractalClosedForm cantor_xi(const FractalSpec& f, const EnergyPoint& at);

// T_G = 1 / (1 + 4^G eps_-^2 sin^2(k' l_G) prod xi_i^2), accumulated in
// log-space; amplitudes from the generic closed-form matrix
ScatteringResult fractal_transmission(const FractalSpec& f, const EnergyPoint& at);

// sup-norm of log10(-log10 T) between two SVC stages over a k-grid,
// skipping points where either T = 1 within 1e-12
double svc_saturation(const FractalSpec& f1, const FractalSpec& f2, const SweepGrid& grid);

}  // namespace spp

#endif
