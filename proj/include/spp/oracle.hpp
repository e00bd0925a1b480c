#ifndef SPP_ORACLE_HPP
#define SPP_ORACLE_HPP

#include <utility>
#include <variant>
#include <vector>

#include "spp/super_periodic.hpp"
#include "spp/sweep_grid.hpp"

// First-principles scattering solvers used as ground truth for the closed
// forms. Two independent routes:
//   - delta chains: ordered products of translated single-delta matrices
//   - piecewise-constant profiles: wavefunction matching at slab interfaces
// Neither touches the Chebyshev machinery.

namespace spp {

struct DeltaSpike {
  double position;
  double strength;
};

struct Rect {
  double start;
  double width;
  double height;
};

using DeltaChain = std::vector<DeltaSpike>;
using RectProfile = std::vector<Rect>;
using FlatPotential = std::variant<DeltaChain, RectProfile>;

ScatteringResult oracle_delta(const DeltaChain& chain, const EnergyPoint& at);
ScatteringResult oracle_piecewise(const RectProfile& profile, const EnergyPoint& at);

// expand a validated spec into its explicit potential
FlatPotential flatten_potential(const ValidatedSpp& v);

ScatteringResult oracle_scattering(const FlatPotential& pot, const EnergyPoint& at);

struct CompareReport {
  double max_abs_dT = 0.0;
  double max_rel_dlog10T = 0.0;  // on points with T < 1e-12
  double worst_k = 0.0;
  int points = 0;

  bool within(double tol_abs, double tol_rel_log) const {
    return max_abs_dT <= tol_abs && max_rel_dlog10T <= tol_rel_log;
  }
};

// closed-form transmission vs the matching oracle, pointwise on a k-grid;
// the metric switches from |dT| to relative dlog10T where T < 1e-12
CompareReport compare(const ValidatedSpp& v, const SweepGrid& grid, Units units = {});

}  // namespace spp

#endif
