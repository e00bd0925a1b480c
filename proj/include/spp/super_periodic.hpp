#ifndef SPP_SUPER_PERIODIC_HPP
#define SPP_SUPER_PERIODIC_HPP

#include <vector>

#include "spp/chebyshev.hpp"
#include "spp/unit_cell.hpp"

// Order-n super periodic potentials: tier i repeats the tier-(i-1) aggregate
// N_i times at start-to-start period s_i. Closed-form transfer-matrix
// elements and transmission via Chebyshev polynomials of the second kind,
// with tier arguments xi_i computed from |m22|, alpha of the unit cell and
// all earlier tiers.

namespace spp {

enum class OverlapPolicy { strict, permissive };

struct TierSpec {
  int N;     // repetitions >= 1
  double s;  // period > 0
};

struct SppSpec {
  UnitCell cell;
  std::vector<TierSpec> tiers;
  OverlapPolicy policy = OverlapPolicy::strict;
};

struct ValidatedSpp {
  SppSpec spec;
  std::vector<double> spans;  // d_0 .. d_n, d_i = d_{i-1} + (N_i - 1) s_i
  bool overlap_warning = false;

  int order() const { return static_cast<int>(spec.tiers.size()); }
};

// checks N_i >= 1, s_i > 0, and (strict) s_i >= d_{i-1}; permissive keeps
// overlapping geometries evaluable but flags them
ValidatedSpp validate(const SppSpec& spec);

struct TierState {
  double xi;                    // Bloch argument (+-inf if beyond double range)
  cdouble bloch_gamma;          // acos(xi); real iff |xi| <= 1
  double u_n1;                  // U_{N_i - 1}(xi)
  double u_n2;                  // U_{N_i - 2}(xi)
  ScaledReal xi_s, u_n1_s, u_n2_s;  // scaled forms, always finite
};

std::vector<TierState> xi_sequence(const ValidatedSpp& v, const EnergyPoint& at);

struct SppMatrix {
  TransferMatrix m;  // saturating double view of the elements
  ScaledComplex m11_s, m12_s, m21_s, m22_s;
  std::vector<TierState> tier_states;
};

SppMatrix closed_form_matrix(const ValidatedSpp& v, const EnergyPoint& at);

// T from the unimodular reduction (log-space product of |m12| and the tier
// Chebyshev factors); amplitudes from the closed-form elements
ScatteringResult transmission(const ValidatedSpp& v, const EnergyPoint& at);

// cell start positions of the fully expanded geometry, sorted
std::vector<double> flatten(const ValidatedSpp& v);

}  // namespace spp

#endif
