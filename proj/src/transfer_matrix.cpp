#include "spp/transfer_matrix.hpp"

#include <cmath>

namespace spp {

TransferMatrix matmul(const TransferMatrix& a, const TransferMatrix& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

TransferMatrix translate(const TransferMatrix& m, double x0, double k) {
  cdouble ph = std::polar(1.0, -2.0 * k * x0);
  return {m.m11, m.m12 * ph, m.m21 * std::conj(ph), m.m22};
}

PolarM22 polar_m22(const TransferMatrix& m) {
  return {std::abs(m.m22), std::arg(m.m22)};
}

ScatteringResult amplitudes(const TransferMatrix& m) {
  double a2 = std::norm(m.m22);
  if (a2 == 0.0)
    throw Error(ErrorCode::degenerate_matrix, "transfer matrix has m22 = 0");
  ScatteringResult r;
  r.t = 1.0 / m.m22;
  r.r_left = m.m21 / m.m22;
  r.r_right = m.m12 / m.m22;
  r.transmission = 1.0 / a2;
  r.reflection = std::norm(m.m21) / a2;
  r.log10_T = -std::log10(a2);
  return r;
}

ScatteringResult amplitudes(const ScaledComplex& m22, const ScaledComplex& m12,
                            const ScaledComplex& m21) {
  if (m22.is_zero())
    throw Error(ErrorCode::degenerate_matrix, "transfer matrix has m22 = 0");
  ScatteringResult r;
  r.t = (ScaledComplex::from(1.0) / m22).value();
  r.r_left = (m21 / m22).value();
  r.r_right = (m12 / m22).value();
  // |m22|^2 = 1 + |m12|^2 for a unimodular matrix; stable in both regimes
  double s2_log10 = 2.0 * m12.log10_abs();
  if (s2_log10 < 15.0) {
    double s2 = std::pow(10.0, s2_log10);
    r.transmission = 1.0 / (1.0 + s2);
    r.reflection = s2 / (1.0 + s2);
    r.log10_T = -std::log1p(s2) / 2.302585092994045684;
  } else {
    r.transmission = 0.0;
    r.reflection = 1.0;
    r.log10_T = -s2_log10;
  }
  return r;
}

cdouble det(const TransferMatrix& m) { return m.m11 * m.m22 - m.m12 * m.m21; }

double conjugate_symmetry_defect(const TransferMatrix& m) {
  double scale = std::max({1.0, std::abs(m.m11), std::abs(m.m12)});
  return std::max(std::abs(m.m11 - std::conj(m.m22)), std::abs(m.m12 - std::conj(m.m21))) / scale;
}

double unimodularity_defect(const TransferMatrix& m) {
  // |m11|^2 - |m12|^2 cancels to 1 from values of size |m11|^2, so the
  // defect is meaningful relative to that scale
  return std::abs(det(m) - cdouble(1.0, 0.0)) / std::max(1.0, std::norm(m.m11));
}

}  // namespace spp
