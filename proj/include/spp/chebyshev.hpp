#ifndef SPP_CHEBYSHEV_HPP
#define SPP_CHEBYSHEV_HPP

#include "spp/scaled.hpp"

// Chebyshev polynomials of the second kind U_N(x), extended to N = -1
// (U_{-1} == 0, so a single-repetition tier degenerates cleanly).
//
// Evaluation branches:
//   |x| <= 1      sin((N+1)g)/sin g with g = acos x, Taylor limit near |x|=1
//   |x| >  1      sinh((N+1)t)/sinh t with t = acosh|x|, sign (-1)^N for x < -1
// The three-term recurrence is unstable for large N and overflows for |x| > 1,
// so it is only used as a test oracle for small N.

namespace spp {

double cheb_u(int n, double x);

// U_N at a scaled argument, result scaled; exact for |x| <= 1, and accurate to
// ~1e-13 relative in the log for arguments/results beyond the double range.
ScaledReal cheb_u(int n, const ScaledReal& x);

}  // namespace spp

#endif
