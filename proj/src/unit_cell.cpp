#include "spp/unit_cell.hpp"

#include <cmath>

namespace spp {

SincCos guarded_sinc_cos(double kp2, double b) {
  double x = kp2 * b * b;  // (k'b)^2, sign carries the regime
  if (std::fabs(x) < 1e-12) {
    return {b * (1.0 - x / 6.0 + x * x / 120.0), 1.0 - x / 2.0 + x * x / 24.0};
  }
  if (kp2 > 0.0) {
    double kp = std::sqrt(kp2);
    return {std::sin(kp * b) / kp, std::cos(kp * b)};
  }
  double kappa = std::sqrt(-kp2);
  return {std::sinh(kappa * b) / kappa, std::cosh(kappa * b)};
}

TransferMatrix delta_matrix(const DeltaCell& cell, const EnergyPoint& at) {
  double beta = at.units.mass * cell.strength / (at.units.hbar * at.units.hbar * at.k);
  cdouble ib(0.0, beta);
  return {1.0 + ib, ib, -ib, 1.0 - ib};
}

TransferMatrix rect_matrix(const RectangularCell& cell, const EnergyPoint& at) {
  double k = at.k;
  double h2 = at.units.hbar * at.units.hbar;
  double kp2 = k * k - 2.0 * at.units.mass * cell.height / h2;  // k'^2, any sign
  auto [S, C] = guarded_sinc_cos(kp2, cell.width);
  // eps_+- sin(k'b) stay real in both regimes
  double p = (k * k + kp2) / (2.0 * k) * S;
  double q = (k * k - kp2) / (2.0 * k) * S;
  cdouble ph = std::polar(1.0, k * cell.width);
  return {(C - cdouble(0.0, p)) * ph, cdouble(0.0, q), -cdouble(0.0, q),
          (C + cdouble(0.0, p)) * std::conj(ph)};
}

TransferMatrix piecewise_matrix(const PiecewiseCell& cell, const EnergyPoint& at) {
  if (cell.segments.empty())
    throw Error(ErrorCode::validation, "piecewise cell needs at least one segment");
  TransferMatrix m = TransferMatrix::identity();
  double x = 0.0;
  for (const Segment& s : cell.segments) {
    if (!(s.width > 0.0))
      throw Error(ErrorCode::validation, "piecewise segment width must be positive");
    m = matmul(m, translate(rect_matrix({s.height, s.width}, at), x, at.k));
    x += s.width;
  }
  return m;
}

TransferMatrix cell_matrix(const UnitCell& cell, const EnergyPoint& at) {
  return std::visit(
      [&](const auto& c) -> TransferMatrix {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, DeltaCell>) return delta_matrix(c, at);
        else if constexpr (std::is_same_v<T, RectangularCell>) return rect_matrix(c, at);
        else return piecewise_matrix(c, at);
      },
      cell);
}

double cell_width(const UnitCell& cell) {
  if (std::holds_alternative<DeltaCell>(cell)) return 0.0;
  if (const auto* r = std::get_if<RectangularCell>(&cell)) return r->width;
  const auto& p = std::get<PiecewiseCell>(cell);
  double w = 0.0;
  for (const Segment& s : p.segments) w += s.width;
  return w;
}

}  // namespace spp
