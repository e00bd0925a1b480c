#ifndef SPP_UNIT_CELL_HPP
#define SPP_UNIT_CELL_HPP

#include <variant>
#include <vector>

#include "spp/transfer_matrix.hpp"

// Unit-cell potentials and their energy-dependent transfer matrices.
//
// Every cell is referenced with its left edge at the origin: the delta spike
// sits at x = 0 and a rectangular barrier occupies [0, b]. translate() moves
// cells to their lattice positions.
//
// Natural units hbar = m = 1 by default, E = (hbar k)^2 / 2m. Scattering
// states only: k > 0. Note the conventions here keep hbar explicit even
// though several source formulas set it to 1 silently.

namespace spp {

struct Units {
  double hbar = 1.0;
  double mass = 1.0;
};

struct EnergyPoint {
  double k;  // wavenumber > 0
  double E;
  Units units;

  static EnergyPoint from_k(double k, Units u = {}) {
    if (!(k > 0.0))
      throw Error(ErrorCode::invalid_energy, "wavenumber must be positive");
    return {k, u.hbar * u.hbar * k * k / (2.0 * u.mass), u};
  }
};

struct DeltaCell {
  double strength;  // V0, attractive (< 0) permitted
};

struct RectangularCell {
  double height;  // V, wells (< 0) permitted
  double width;   // b > 0
};

struct Segment {
  double width;
  double height;
};

struct PiecewiseCell {
  std::vector<Segment> segments;  // laid left to right from the origin
};

using UnitCell = std::variant<DeltaCell, RectangularCell, PiecewiseCell>;

// sin(k'b)/k' and cos(k'b) as functions of k'^2 (real, any sign); series for
// |k'b| < 1e-6 keeps the pair continuous through E = V
struct SincCos {
  double sinc;  // sin(k'b)/k'  ->  b at k' = 0
  double cosv;  // cos(k'b)     ->  1 at k' = 0
};
SincCos guarded_sinc_cos(double kp2, double b);

TransferMatrix delta_matrix(const DeltaCell& cell, const EnergyPoint& at);
TransferMatrix rect_matrix(const RectangularCell& cell, const EnergyPoint& at);
TransferMatrix piecewise_matrix(const PiecewiseCell& cell, const EnergyPoint& at);

TransferMatrix cell_matrix(const UnitCell& cell, const EnergyPoint& at);

// spatial extent d0 of the cell (0 for a delta)
double cell_width(const UnitCell& cell);

}  // namespace spp

#endif
