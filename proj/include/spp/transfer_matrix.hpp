#ifndef SPP_TRANSFER_MATRIX_HPP
#define SPP_TRANSFER_MATRIX_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include "spp/scaled.hpp"

// 2x2 complex transfer matrices relating plane-wave amplitudes on the left of
// a potential to those on the right: (A, B)^T = M (C, D)^T.
//
// For a Hermitian potential the elements obey m11 = conj(m22) and
// m12 = conj(m21), and M is unimodular; for this symmetry class
// det M = |m11|^2 - |m12|^2, so the determinant check and the flux identity
// coincide.

namespace spp {

enum class ErrorCode {
  invalid_energy,
  overlap_violation,
  non_positive_period,
  degenerate_matrix,
  not_a_resonance,
  kind_mismatch,
  config_parse,
  validation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

using cdouble = std::complex<double>;

struct TransferMatrix {
  cdouble m11{1.0, 0.0};
  cdouble m12{0.0, 0.0};
  cdouble m21{0.0, 0.0};
  cdouble m22{1.0, 0.0};

  static TransferMatrix identity() { return {}; }
};

struct PolarM22 {
  double magnitude = 1.0;  // |m22| >= 1 for unimodular M
  double alpha = 0.0;      // arg(m22), principal branch (-pi, pi]
};

struct ScatteringResult {
  double transmission = 1.0;  // T in [0, 1]; saturates to 0 when underflowing
  double reflection = 0.0;    // R = 1 - T
  cdouble t{1.0, 0.0};
  cdouble r_left{0.0, 0.0};
  cdouble r_right{0.0, 0.0};
  double log10_T = 0.0;  // finite even when T underflows
};

TransferMatrix matmul(const TransferMatrix& a, const TransferMatrix& b);

// same physical cell shifted by x0: only the off-diagonal phases change,
// so |m22| (and T) are shift-invariant
TransferMatrix translate(const TransferMatrix& m, double x0, double k);

PolarM22 polar_m22(const TransferMatrix& m);

ScatteringResult amplitudes(const TransferMatrix& m);

// amplitudes from scaled elements (m12, m21 determine the reflections;
// m22 the transmission) for systems whose elements overflow a double
ScatteringResult amplitudes(const ScaledComplex& m22, const ScaledComplex& m12,
                            const ScaledComplex& m21);

cdouble det(const TransferMatrix& m);

// max componentwise deviation from the Hermitian symmetry class, relative to
// the element magnitudes
double conjugate_symmetry_defect(const TransferMatrix& m);

// |det M - 1| / max(1, |m11|^2)
double unimodularity_defect(const TransferMatrix& m);

}  // namespace spp

#endif
