#include "spp/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace spp {

ScatteringResult oracle_delta(const DeltaChain& chain, const EnergyPoint& at) {
  DeltaChain sorted = chain;
  std::sort(sorted.begin(), sorted.end(),
            [](const DeltaSpike& a, const DeltaSpike& b) { return a.position < b.position; });
  TransferMatrix m = TransferMatrix::identity();
  for (const DeltaSpike& d : sorted)
    m = matmul(m, translate(delta_matrix({d.strength}, at), d.position, at.k));
  return amplitudes(m);
}

namespace {

// interface between regions with wavenumbers p (left) and q (right) at x,
// in the global phase convention A e^{ikx} + B e^{-ikx}
void apply_interface(TransferMatrix& m, cdouble p, cdouble q, double x, double /*k*/) {
  cdouble ipx = cdouble(0.0, 1.0) * p * x;
  cdouble iqx = cdouble(0.0, 1.0) * q * x;
  TransferMatrix iface{(p + q) * std::exp(iqx - ipx) / (2.0 * p),
                       (p - q) * std::exp(-iqx - ipx) / (2.0 * p),
                       (p - q) * std::exp(iqx + ipx) / (2.0 * p),
                       (p + q) * std::exp(-iqx + ipx) / (2.0 * p)};
  m = matmul(m, iface);
}

cdouble region_wavenumber(double k, double V, const Units& u) {
  double kp2 = k * k - 2.0 * u.mass * V / (u.hbar * u.hbar);
  if (kp2 >= 0.0) return {std::sqrt(kp2), 0.0};
  return {0.0, std::sqrt(-kp2)};
}

}  // namespace

ScatteringResult oracle_piecewise(const RectProfile& profile, const EnergyPoint& at) {
  RectProfile sorted = profile;
  std::sort(sorted.begin(), sorted.end(),
            [](const Rect& a, const Rect& b) { return a.start < b.start; });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i].start + sorted[i].width > sorted[i + 1].start + 1e-15)
      throw Error(ErrorCode::overlap_violation, "oracle profile rectangles overlap");

  cdouble k_free(at.k, 0.0);
  TransferMatrix m = TransferMatrix::identity();
  cdouble cur = k_free;
  for (const Rect& r : sorted) {
    cdouble kin = region_wavenumber(at.k, r.height, at.units);
    apply_interface(m, cur, kin, r.start, at.k);
    apply_interface(m, kin, k_free, r.start + r.width, at.k);
    cur = k_free;  // gaps are exactly free space
  }
  return amplitudes(m);
}

FlatPotential flatten_potential(const ValidatedSpp& v) {
  std::vector<double> pos = flatten(v);
  if (const auto* d = std::get_if<DeltaCell>(&v.spec.cell)) {
    DeltaChain chain;
    chain.reserve(pos.size());
    for (double x : pos) chain.push_back({x, d->strength});
    return chain;
  }
  RectProfile profile;
  if (const auto* r = std::get_if<RectangularCell>(&v.spec.cell)) {
    for (double x : pos) profile.push_back({x, r->width, r->height});
    return profile;
  }
  const auto& pw = std::get<PiecewiseCell>(v.spec.cell);
  for (double x : pos) {
    double off = 0.0;
    for (const Segment& s : pw.segments) {
      profile.push_back({x + off, s.width, s.height});
      off += s.width;
    }
  }
  return profile;
}

ScatteringResult oracle_scattering(const FlatPotential& pot, const EnergyPoint& at) {
  if (const auto* chain = std::get_if<DeltaChain>(&pot)) return oracle_delta(*chain, at);
  return oracle_piecewise(std::get<RectProfile>(pot), at);
}

CompareReport compare(const ValidatedSpp& v, const SweepGrid& grid, Units units) {
  grid.check();
  if (grid.axis != SweepAxis::k)
    throw Error(ErrorCode::validation, "oracle comparison sweeps over k only");
  FlatPotential pot = flatten_potential(v);
  CompareReport rep;
  rep.points = grid.points;
  for (int i = 0; i < grid.points; ++i) {
    EnergyPoint at = EnergyPoint::from_k(grid.at(i), units);
    ScatteringResult closed = transmission(v, at);
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
