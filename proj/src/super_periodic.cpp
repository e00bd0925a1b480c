#include "spp/super_periodic.hpp"

#include <algorithm>
#include <cmath>

namespace spp {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double reduced_cos(double k, double length) { return std::cos(std::remainder(k * length, kTwoPi)); }

}  // namespace

ValidatedSpp validate(const SppSpec& spec) {
  ValidatedSpp v{spec, {cell_width(spec.cell)}, false};
  for (std::size_t i = 0; i < spec.tiers.size(); ++i) {
    const TierSpec& t = spec.tiers[i];
    if (t.N < 1)
      throw Error(ErrorCode::validation, "tier repetition count must be >= 1");
    if (!(t.s > 0.0))
      throw Error(ErrorCode::non_positive_period, "tier period must be positive");
    double prev = v.spans.back();
    if (t.s < prev) {
      if (spec.policy == OverlapPolicy::strict)
        throw Error(ErrorCode::overlap_violation,
                    "tier " + std::to_string(i + 1) + " period " + std::to_string(t.s) +
                        " overlaps the repeated block of span " + std::to_string(prev));
      v.overlap_warning = true;
    }
    v.spans.push_back(prev + (t.N - 1) * t.s);
  }
  return v;
}

std::vector<TierState> xi_sequence(const ValidatedSpp& v, const EnergyPoint& at) {
  const auto& tiers = v.spec.tiers;
  const int n = v.order();
  PolarM22 cell = polar_m22(cell_matrix(v.spec.cell, at));
  const double k = at.k;

  std::vector<TierState> states;
  states.reserve(n);
  std::vector<ScaledReal> u1(n);  // U_{N_p - 1}(xi_p)
  std::vector<ScaledReal> u2(n);  // U_{N_p - 2}(xi_p)

  for (int j = 0; j < n; ++j) {
    // leading term: |m22| cos(alpha + k (s_j - sum_{p<j} (N_p - 1) s_p)) prod U
    double len = tiers[j].s;
    for (int p = 0; p < j; ++p) len -= (tiers[p].N - 1) * tiers[p].s;
    ScaledReal acc = ScaledReal::from(
        cell.magnitude * std::cos(std::remainder(cell.alpha + k * len, kTwoPi)));
    for (int p = 0; p < j; ++p) acc = acc * u1[p];

    // - sum_r cos(k (sum_{p=r..j-1} N_p s_p - sum_{p=r+1..j} s_p)) U_{N_r-2} prod_{p>r} U_{N_p-1}
    for (int r = 0; r < j; ++r) {
      double ph = 0.0;
      for (int p = r; p < j; ++p) ph += tiers[p].N * tiers[p].s;
      for (int p = r + 1; p <= j; ++p) ph -= tiers[p].s;
      ScaledReal term = u2[r] * reduced_cos(k, ph);
      for (int p = r + 1; p < j; ++p) term = term * u1[p];
      acc = acc - term;
    }

    TierState st;
    st.xi_s = acc;
    st.xi = acc.value();
    st.u_n1_s = cheb_u(tiers[j].N - 1, acc);
    st.u_n2_s = cheb_u(tiers[j].N - 2, acc);
    st.u_n1 = st.u_n1_s.value();
    st.u_n2 = st.u_n2_s.value();
    st.bloch_gamma = std::acos(cdouble(st.xi, 0.0));
    u1[j] = st.u_n1_s;
    u2[j] = st.u_n2_s;
    states.push_back(st);
  }
  return states;
}

SppMatrix closed_form_matrix(const ValidatedSpp& v, const EnergyPoint& at) {
  const auto& tiers = v.spec.tiers;
  const int n = v.order();
  const double k = at.k;
  TransferMatrix cell = cell_matrix(v.spec.cell, at);

  SppMatrix out;
  out.tier_states = xi_sequence(v, at);

  double sum_nm1_s = 0.0;  // sum (N_p - 1) s_p
  for (const TierSpec& t : tiers) sum_nm1_s += (t.N - 1) * t.s;

  ScaledReal prod_u = ScaledReal::from(1.0);
  for (const TierState& st : out.tier_states) prod_u = prod_u * st.u_n1_s;

  auto phase = [&](double len) {
    return ScaledComplex::from(std::polar(1.0, std::remainder(-k * len, kTwoPi)));
  };

  // off-diagonal elements: pure products
  out.m12_s = ScaledComplex::from(cell.m12) * phase(sum_nm1_s) * prod_u;
  out.m21_s = ScaledComplex::from(cell.m21) * phase(-sum_nm1_s) * prod_u;

  // m22: leading product minus one correction per tier r (the r = n term is
  // the bare -U_{N_n-2} e^{-i k N_n s_n} tail of the recursion)
  ScaledComplex m22 = ScaledComplex::from(cell.m22) * phase(sum_nm1_s) * prod_u;
  ScaledComplex m11 = ScaledComplex::from(cell.m11) * phase(-sum_nm1_s) * prod_u;
  for (int r = 0; r < n; ++r) {
    double len = tiers[r].N * tiers[r].s;
    for (int p = r + 1; p < n; ++p) len += (tiers[p].N - 1) * tiers[p].s;
    ScaledComplex corr = ScaledComplex::from(std::complex<double>(1.0, 0.0));
    corr = corr * out.tier_states[r].u_n2_s;
    for (int p = r + 1; p < n; ++p) corr = corr * out.tier_states[p].u_n1_s;
    m22 = m22 - corr * phase(len);
    m11 = m11 - corr * phase(-len);
  }
  out.m22_s = m22;
  out.m11_s = m11;

  out.m = {m11.value(), out.m12_s.value(), out.m21_s.value(), m22.value()};
  return out;
}

ScatteringResult transmission(const ValidatedSpp& v, const EnergyPoint& at) {
  SppMatrix M = closed_form_matrix(v, at);
  return amplitudes(M.m22_s, M.m12_s, M.m21_s);
}

std::vector<double> flatten(const ValidatedSpp& v) {
  std::vector<double> pos{0.0};
  for (const TierSpec& t : v.spec.tiers) {
    std::vector<double> next;
    next.reserve(pos.size() * t.N);
    for (int q = 0; q < t.N; ++q)
      for (double p : pos) next.push_back(p + q * t.s);
    pos = std::move(next);
  }
  std::sort(pos.begin(), pos.end());
  double w = cell_width(v.spec.cell);
  for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
    if (pos[i + 1] - pos[i] < w && v.spec.policy == OverlapPolicy::strict)
      throw Error(ErrorCode::overlap_violation, "flattened cells intersect");
    if (pos[i + 1] == pos[i])
      throw Error(ErrorCode::overlap_violation, "duplicate cell positions");
  }
  return pos;
}

}  // namespace spp
