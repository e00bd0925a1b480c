#ifndef SPP_ANALYSIS_HPP
#define SPP_ANALYSIS_HPP

#include <optional>
#include <variant>
#include <vector>

#include "spp/fractal.hpp"
#include "spp/oracle.hpp"
#include "spp/super_periodic.hpp"
#include "spp/sweep_grid.hpp"

// Resonance location, resonance-band estimation, band-structure detection and
// parameter sweeps. Root refinement is grid bracketing plus bisection
// throughout; no derivatives of the scattering formalism are needed.

namespace spp {

// zeros of m12(k): unit-cell transmission resonances (T = 1). |m12| dips to
// zero without a sign change, so minima are bracketed on the grid and the
// slope of |m12|^2 is bisected, then a smallness test filters real zeros.
std::vector<double> find_cell_resonances(const UnitCell& cell, const SweepGrid& grid,
                                         Units units = {});

// zeros of U_{N_1 - 1}(xi_1(k)) for the first tier: comb resonances, which
// every higher tier inherits
std::vector<double> find_comb_resonances(const ValidatedSpp& v, const SweepGrid& grid);

struct ResonanceBandEstimate {
  double k_star;
  double delta_k;        // first-order analytic width
  double width_numeric;  // k-range over which xi_2 runs from its resonance
                         // value (~ -sign side) to the opposite edge
  double band_lo, band_hi;  // contiguous |xi_2| <= 1 interval containing k*
  double f1_tilde, f2_tilde;  // terminating-hypergeometric derivative terms
  double z;                   // -d(xi_1)/dk at k*
  double zeta;                // slowly varying phase at k*
  double xi2_star;
};

// first-order Taylor estimate of the resonance-band width for an order-2
// delta-cell system, plus the numerically measured |xi_2| <= 1 band
ResonanceBandEstimate band_width_estimate(const ValidatedSpp& v, double k_star);

// contiguous |xi_n| <= 1 interval of the top tier containing k (generic cell)
std::pair<double, double> resonance_band_interval(const ValidatedSpp& v, double k);

// local maxima of T with T > threshold inside [lo, hi]; grid scan with
// golden-section refinement near each candidate peak
int count_band_peaks(const ValidatedSpp& v, double lo, double hi, double threshold,
                     int grid_points = 20000);

struct BandInterval {
  double lo, hi;
  bool forbidden;  // |xi_i| > 1: opaque as N_i -> infinity
};

struct BandReport {
  std::vector<std::vector<BandInterval>> tiers;  // per-tier intervals, sorted
};

BandReport band_report(const ValidatedSpp& v, const SweepGrid& grid);

// zeros of xi_2(k); for even N_2 each is a transmission resonance
std::vector<double> xi2_zeros(const ValidatedSpp& v, const SweepGrid& grid);

// terminating Gauss hypergeometric 2F1(a, b; c; x) for nonpositive integer a
double hyp2f1_terminating(int a, double b, double c, double x);

using SweepSystem = std::variant<SppSpec, FractalSpec>;

struct SweepRow {
  double axis;
  double T;
  double log10_T;
  std::vector<double> xi;
};

// row-per-grid-point table; evaluation parallelizes over points (OpenMP) but
// rows land at their grid index, so output is identical for any thread count.
// threads <= 1 runs the serial reference path.
std::vector<SweepRow> sweep(const SweepSystem& system, const SweepGrid& grid, int threads = 0,
                            Units units = {});

CompareReport compare_system(const SweepSystem& system, const SweepGrid& grid, Units units = {});

}  // namespace spp

#endif
