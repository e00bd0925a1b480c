#include "spp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spp {

namespace {

double bisect(const std::function<double(double)>& f, double a, double b, double fa,
              double tol = 1e-13) {
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// minimize a unimodal dip by interval thirds; |b - a| ends below tol
double ternary_min(const std::function<double(double)>& f, double a, double b,
                   double tol = 1e-12) {
  while (b - a > tol) {
    double m1 = a + (b - a) / 3.0;
    double m2 = b - (b - a) / 3.0;
    if (f(m1) < f(m2))
      b = m2;
    else
      a = m1;
  }
  return 0.5 * (a + b);
}

double ternary_max(const std::function<double(double)>& f, double a, double b,
                   double tol = 1e-13) {
  return ternary_min([&](double x) { return -f(x); }, a, b, tol);
}

}  // namespace

std::vector<double> find_cell_resonances(const UnitCell& cell, const SweepGrid& grid,
                                         Units units) {
  grid.check();
  auto m12sq = [&](double k) {
    return std::norm(cell_matrix(cell, EnergyPoint::from_k(k, units)).m12);
  };
  std::vector<double> vals(grid.points);
  double scale = 0.0;
  for (int i = 0; i < grid.points; ++i) {
    vals[i] = m12sq(grid.at(i));
    scale = std::max(scale, vals[i]);
  }
  std::vector<double> roots;
  for (int i = 1; i + 1 < grid.points; ++i) {
    if (vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1]) {
      double k = ternary_min(m12sq, grid.at(i - 1), grid.at(i + 1), 1e-11);
      if (m12sq(k) <= 1e-18 * std::max(1.0, scale)) {
        if (roots.empty() || k - roots.back() > 1e-9) roots.push_back(k);
      }
    }
  }
  return roots;
}

namespace {

std::vector<double> refine_sign_changes(const std::function<double(double)>& f,
                                        const SweepGrid& grid) {
  std::vector<double> out;
  double prev = f(grid.at(0));
  for (int i = 1; i < grid.points; ++i) {
    double cur = f(grid.at(i));
    if (prev == 0.0) {
      out.push_back(grid.at(i - 1));
    } else if ((prev < 0.0) != (cur < 0.0)) {
      out.push_back(bisect(f, grid.at(i - 1), grid.at(i), prev));
    }
    prev = cur;
  }
  return out;
}

}  // namespace

std::vector<double> find_comb_resonances(const ValidatedSpp& v, const SweepGrid& grid) {
  grid.check();
  if (v.order() < 1) throw Error(ErrorCode::validation, "comb resonances need at least one tier");
  if (v.spec.tiers[0].N < 2) return {};  // U_0 has no roots
  auto f = [&](double k) {
    return xi_sequence(v, EnergyPoint::from_k(k)).front().u_n1;
  };
  return refine_sign_changes(f, grid);
}

double hyp2f1_terminating(int a, double b, double c, double x) {
  if (a > 0) throw Error(ErrorCode::validation, "series requires a nonpositive integer first parameter");
  double sum = 1.0, term = 1.0;
  for (int j = 0; j < -a; ++j) {
    term *= (a + j) * (b + j) / ((c + j) * (j + 1.0)) * x;
    sum += term;
  }
  return sum;
}

namespace {

double xi_top(const ValidatedSpp& v, double k) {
  return xi_sequence(v, EnergyPoint::from_k(k)).back().xi;
}

// nearest |xi| = 1 crossing of f scanning from k0 in direction dir
double scan_crossing(const std::function<double(double)>& f, double k0, double dir, double h0) {
  double h = h0;
  double prev = k0;
  for (int it = 0; it < 100000; ++it) {
    double k = prev + dir * h;
    if (k <= 0.0) k = 1e-12;
    if (std::fabs(f(k)) >= 1.0) {
      auto g = [&](double q) { return std::fabs(f(q)) - 1.0; };
      double a = std::min(prev, k), b = std::max(prev, k);
      return bisect(g, a, b, g(a));
    }
    prev = k;
    h *= 1.25;
    if (k <= 1e-12) break;
  }
  throw Error(ErrorCode::validation, "no band edge found");
}

}  // namespace

std::pair<double, double> resonance_band_interval(const ValidatedSpp& v, double k) {
  if (v.order() < 2) throw Error(ErrorCode::validation, "band interval needs an order >= 2 system");
  auto f = [&](double q) { return xi_top(v, q); };
  if (std::fabs(f(k)) > 1.0)
    throw Error(ErrorCode::not_a_resonance, "|xi| > 1 at the requested point");
  double lo = scan_crossing(f, k, -1.0, 1e-7);
  double hi = scan_crossing(f, k, +1.0, 1e-7);
  return {lo, hi};
}

ResonanceBandEstimate band_width_estimate(const ValidatedSpp& v, double k_star) {
  if (v.order() != 2)
    throw Error(ErrorCode::validation, "band width estimate is for order-2 systems");
  const auto* cell = std::get_if<DeltaCell>(&v.spec.cell);
  if (!cell)
    throw Error(ErrorCode::validation, "band width estimate is for delta-cell combs");

  const int N1 = v.spec.tiers[0].N;
  const double s1 = v.spec.tiers[0].s;
  const double s2 = v.spec.tiers[1].s;
  const double y = s2 - N1 * s1;  // comb-to-comb spacing defect

  EnergyPoint at = EnergyPoint::from_k(k_star);
  auto states = xi_sequence(v, at);
  double xi1 = states[0].xi;
  if (std::fabs(states[0].u_n1) > 1e-6)
    throw Error(ErrorCode::not_a_resonance, "U_{N1-1}(xi_1) does not vanish at k_star");

  double beta = at.units.mass * cell->strength / (at.units.hbar * at.units.hbar * k_star);
  double un2 = cheb_u(N1 - 2, xi1);

  ResonanceBandEstimate est;
  est.k_star = k_star;
  est.xi2_star = -un2 * std::cos(k_star * y);
  est.f1_tilde = (N1 - 2) * (N1 - 1) * N1 / 3.0 * std::cos(k_star * y) *
                 hyp2f1_terminating(-N1 + 3, N1 + 1, 2.5, 0.5 * (1.0 - xi1));
  est.f2_tilde = (N1 - 1) * N1 * (N1 + 1) / 3.0 *
                 hyp2f1_terminating(-N1 + 2, N1 + 2, 2.5, 0.5 * (1.0 - xi1));
  est.z = -beta * s1 * std::cos(k_star * s1) +
          std::sin(k_star * s1) / k_star * (beta + k_star * s1);
  est.zeta = std::atan(beta) + k_star * ((2 * N1 - 1) * s1 + y);
  // first-order slope of xi_2 in the slowly varying phase form, via
  // d(xi_1)/dk = -Z; the F1 term enters with the opposite sign to F2
  double xi1_prime = -est.z;
  double slope = (-est.f1_tilde +
                  est.f2_tilde * std::sqrt(1.0 + beta * beta) * std::cos(est.zeta)) *
                     xi1_prime +
                 y * un2 * std::sin(k_star * y);
  est.delta_k = std::fabs(2.0 + un2 * std::cos(k_star * y)) / std::fabs(slope);

  auto [lo, hi] = resonance_band_interval(v, k_star);
  est.band_lo = lo;
  est.band_hi = hi;
  // the band runs from the ~(-+1) resonance value of xi_2 to the opposite
  // edge; measure to whichever edge xi_2 reaches -sign(xi2_star)
  auto f = [&](double q) { return xi_top(v, q); };
  double target = est.xi2_star >= 0.0 ? -1.0 : 1.0;
  double edge = (std::fabs(f(lo) - target) < std::fabs(f(hi) - target)) ? lo : hi;
  est.width_numeric = std::fabs(edge - k_star);
  return est;
}

int count_band_peaks(const ValidatedSpp& v, double lo, double hi, double threshold,
                     int grid_points) {
  auto T = [&](double k) { return transmission(v, EnergyPoint::from_k(k)).transmission; };
  std::vector<double> vals(grid_points);
  for (int i = 0; i < grid_points; ++i)
    vals[i] = T(lo + (hi - lo) * i / (grid_points - 1));
  int count = 0;
  double last_peak = lo - 1.0;
  for (int i = 1; i + 1 < grid_points; ++i) {
    if (vals[i] > vals[i - 1] && vals[i] > vals[i + 1]) {
      double a = lo + (hi - lo) * (i - 1) / (grid_points - 1);
      double b = lo + (hi - lo) * (i + 1) / (grid_points - 1);
      double kp = ternary_max(T, a, b);
      if (T(kp) > threshold && kp - last_peak > (hi - lo) * 1e-7) {
        ++count;
        last_peak = kp;
      }
    }
  }
  return count;
}

BandReport band_report(const ValidatedSpp& v, const SweepGrid& grid) {
  grid.check();
  BandReport rep;
  rep.tiers.resize(v.order());
  for (int t = 0; t < v.order(); ++t) {
    auto f = [&](double k) {
      return std::fabs(xi_sequence(v, EnergyPoint::from_k(k))[t].xi) - 1.0;
    };
    std::vector<double> cross = refine_sign_changes(f, grid);
    std::vector<double> edges{grid.start};
    edges.insert(edges.end(), cross.begin(), cross.end());
    edges.push_back(grid.stop);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (edges[i + 1] - edges[i] < 1e-12) continue;
      double mid = 0.5 * (edges[i] + edges[i + 1]);
      rep.tiers[t].push_back({edges[i], edges[i + 1], f(mid) > 0.0});
    }
  }
  return rep;
}

std::vector<double> xi2_zeros(const ValidatedSpp& v, const SweepGrid& grid) {
  grid.check();
  if (v.order() < 2) throw Error(ErrorCode::validation, "xi_2 zeros need an order-2 system");
  auto f = [&](double k) { return xi_sequence(v, EnergyPoint::from_k(k))[1].xi; };
  return refine_sign_changes(f, grid);
}

namespace {

SweepRow evaluate_point(const SweepSystem& system, const SweepGrid& grid, double value,
                        Units units) {
  SweepRow row;
  row.axis = value;
  if (const auto* spec = std::get_if<SppSpec>(&system)) {
    SppSpec s = *spec;
    double k = grid.fixed_k;
    if (grid.axis == SweepAxis::k) {
      k = value;
    } else if (grid.axis == SweepAxis::y) {
      if (s.tiers.size() < 2)
        throw Error(ErrorCode::validation, "y sweeps need an order >= 2 system");
      s.tiers[1].s = s.tiers[0].N * s.tiers[0].s + value;
    } else {
      throw Error(ErrorCode::validation, "gamma sweeps apply to general Cantor systems");
    }
    ValidatedSpp v = validate(s);
    EnergyPoint at = EnergyPoint::from_k(k, units);
    ScatteringResult r = transmission(v, at);
    row.T = r.transmission;
    row.log10_T = r.log10_T;
    for (const TierState& st : xi_sequence(v, at)) row.xi.push_back(st.xi);
    return row;
  }
  FractalSpec f = std::get<FractalSpec>(system);
  double k = grid.fixed_k;
  if (grid.axis == SweepAxis::k) {
    k = value;
  } else if (grid.axis == SweepAxis::gamma) {
    if (f.kind != FractalKind::general_cantor)
      throw Error(ErrorCode::validation, "gamma sweeps apply to general Cantor systems");
    f.removal_gamma = value;
  } else {
    throw Error(ErrorCode::validation, "y sweeps apply to tiered systems");
  }
  EnergyPoint at = EnergyPoint::from_k(k, units);
  ScatteringResult r = fractal_transmission(f, at);
  row.T = r.transmission;
  row.log10_T = r.log10_T;
  for (double x : cantor_xi(f, at).xi) row.xi.push_back(x);
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSystem& system, const SweepGrid& grid, int threads,
                            Units units) {
  grid.check();
  std::vector<SweepRow> rows(grid.points);
  std::exception_ptr err;

#ifdef _OPENMP
  int nthreads = threads;
  if (nthreads <= 0) nthreads = omp_get_max_threads();
  if (nthreads > 1) {
#pragma omp parallel for schedule(static) num_threads(nthreads)
    for (int i = 0; i < grid.points; ++i) {
      try {
        rows[i] = evaluate_point(system, grid, grid.at(i), units);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return rows;
  }
#else
  (void)threads;
#endif

  // serial reference path
  for (int i = 0; i < grid.points; ++i) rows[i] = evaluate_point(system, grid, grid.at(i), units);
  return rows;
}

CompareReport compare_system(const SweepSystem& system, const SweepGrid& grid, Units units) {
  if (const auto* spec = std::get_if<SppSpec>(&system)) return compare(validate(*spec), grid, units);

  // fractal route: the specialized closed form against the slab oracle
  const FractalSpec& f = std::get<FractalSpec>(system);
  grid.check();
  ValidatedSpp v = validate(to_spp(f));
  FlatPotential pot = flatten_potential(v);
  CompareReport rep;
  rep.points = grid.points;
  for (int i = 0; i < grid.points; ++i) {
    EnergyPoint at = EnergyPoint::from_k(grid.at(i), units);
    ScatteringResult closed = fractal_transmission(f, at);
    ScatteringResult brute = oracle_scattering(pot, at);
    double dT = std::fabs(closed.transmission - brute.transmission);
    if (closed.transmission < 1e-12 && brute.transmission < 1e-12) {
      double rel = std::fabs(closed.log10_T - brute.log10_T) / std::fabs(brute.log10_T);
      if (rel > rep.max_rel_dlog10T) {
        rep.max_rel_dlog10T = rel;
        rep.worst_k = at.k;
      }
    } else if (dT > rep.max_abs_dT) {
      rep.max_abs_dT = dT;
      rep.worst_k = at.k;
    }
  }
  return rep;
}

}  // namespace spp
