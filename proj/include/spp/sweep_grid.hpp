#ifndef SPP_SWEEP_GRID_HPP
#define SPP_SWEEP_GRID_HPP

#include "spp/transfer_matrix.hpp"

namespace spp {

enum class SweepAxis { k, gamma, y };

struct SweepGrid {
  SweepAxis axis = SweepAxis::k;
  double start;
  double stop;
  int points;  // >= 2, linear spacing
  double fixed_k = 0.0;  // evaluation wavenumber for gamma- and y-axis sweeps

  double at(int i) const { return start + (stop - start) * i / (points - 1); }

  void check() const {
    if (!(start < stop) || points < 2)
      throw Error(ErrorCode::validation, "sweep grid needs start < stop and points >= 2");
    if (axis != SweepAxis::k && !(fixed_k > 0.0))
      throw Error(ErrorCode::validation, "non-k sweeps need a positive fixed k");
  }
};

}  // namespace spp

#endif
