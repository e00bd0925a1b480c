// Command-line front end: transmission sweeps, resonance location, band
// reports and closed-form-vs-oracle verification for super periodic and
// Cantor-family potentials.
//
// Exit codes: 0 success, 1 verification failure, 2 config parse error,
// 3 validation error.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "spp/analysis.hpp"
#include "spp/config.hpp"

namespace {

using namespace spp;

struct Out {
  std::ostream* stream;
  std::ofstream file;

  static Out open(const std::string& path) {
    Out o;
    if (path.empty() || path == "stdout") {
      o.stream = &std::cout;
    } else {
      o.file.open(path);
      if (!o.file) throw Error(ErrorCode::validation, "cannot open output file '" + path + "'");
      o.stream = &o.file;
    }
    return o;
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::k: return "k";
    case SweepAxis::gamma: return "gamma";
    default: return "y";
  }
}

int run_transmission(const ExperimentConfig& cfg, const std::string& out_path, int threads,
                     OutputFormat format) {
  std::vector<SweepRow> rows = sweep(cfg.system, cfg.grid, threads, cfg.units);
  Out out = Out::open(out_path);
  std::size_t nxi = rows.empty() ? 0 : rows.front().xi.size();
  if (format == OutputFormat::csv) {
    *out.stream << "# schema=spp.v1\n";
    *out.stream << axis_name(cfg.grid.axis) << ",T,log10T";
    for (std::size_t i = 1; i <= nxi; ++i) *out.stream << ",xi_" << i;
    *out.stream << "\n";
    for (const SweepRow& r : rows) {
      *out.stream << fmt(r.axis) << ',' << fmt(r.T) << ',' << fmt(r.log10_T);
      for (double x : r.xi) *out.stream << ',' << fmt(x);
      *out.stream << "\n";
    }
  } else {
    for (const SweepRow& r : rows) {
      *out.stream << "{\"" << axis_name(cfg.grid.axis) << "\":" << fmt(r.axis)
                  << ",\"T\":" << fmt(r.T) << ",\"log10T\":" << fmt(r.log10_T) << ",\"xi\":[";
      for (std::size_t i = 0; i < r.xi.size(); ++i)
        *out.stream << (i ? "," : "") << fmt(r.xi[i]);
      *out.stream << "]}\n";
    }
  }
  return 0;
}

int run_resonances(const ExperimentConfig& cfg, const std::string& out_path, OutputFormat format) {
  if (cfg.grid.axis != SweepAxis::k)
    throw Error(ErrorCode::validation, "resonance search sweeps over k");

  const auto* spec = std::get_if<SppSpec>(&cfg.system);
  SppSpec s = spec ? *spec : to_spp(std::get<FractalSpec>(cfg.system));
  ValidatedSpp v = validate(s);

  struct Row {
    double k;
    const char* type;
    std::unique_ptr<ResonanceBandEstimate> est;
  };
  std::vector<Row> rows;
  for (double k : find_cell_resonances(s.cell, cfg.grid, cfg.units))
    rows.push_back({k, "cell", nullptr});
  if (v.order() >= 1) {
    for (double k : find_comb_resonances(v, cfg.grid)) {
      Row row{k, "comb", nullptr};
      if (v.order() == 2 && std::holds_alternative<DeltaCell>(s.cell))
        row.est = std::make_unique<ResonanceBandEstimate>(band_width_estimate(v, k));
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.k < b.k; });

  Out out = Out::open(out_path);
  if (format == OutputFormat::csv) {
    *out.stream << "# schema=spp.v1\n";
    *out.stream << "k_star,type,delta_k_analytic,width_numeric,f1_tilde,f2_tilde,Z,zeta\n";
    for (const Row& r : rows) {
      *out.stream << fmt(r.k) << ',' << r.type;
      if (r.est)
        *out.stream << ',' << fmt(r.est->delta_k) << ',' << fmt(r.est->width_numeric) << ','
                    << fmt(r.est->f1_tilde) << ',' << fmt(r.est->f2_tilde) << ',' << fmt(r.est->z)
                    << ',' << fmt(r.est->zeta);
      else
        *out.stream << ",,,,,,";
      *out.stream << "\n";
    }
  } else {
    for (const Row& r : rows) {
      *out.stream << "{\"k_star\":" << fmt(r.k) << ",\"type\":\"" << r.type << "\"";
      if (r.est)
        *out.stream << ",\"delta_k_analytic\":" << fmt(r.est->delta_k)
                    << ",\"width_numeric\":" << fmt(r.est->width_numeric) << ",\"f1_tilde\":"
                    << fmt(r.est->f1_tilde) << ",\"f2_tilde\":" << fmt(r.est->f2_tilde)
                    << ",\"Z\":" << fmt(r.est->z) << ",\"zeta\":" << fmt(r.est->zeta);
      *out.stream << "}\n";
    }
  }
  return 0;
}

int run_bands(const ExperimentConfig& cfg, const std::string& out_path, OutputFormat format) {
  const auto* spec = std::get_if<SppSpec>(&cfg.system);
  SppSpec s = spec ? *spec : to_spp(std::get<FractalSpec>(cfg.system));
  ValidatedSpp v = validate(s);
  BandReport rep = band_report(v, cfg.grid);

  Out out = Out::open(out_path);
  if (format == OutputFormat::csv) {
    *out.stream << "# schema=spp.v1\n";
    *out.stream << "tier,kind,k_lo,k_hi\n";
    for (std::size_t t = 0; t < rep.tiers.size(); ++t)
      for (const BandInterval& iv : rep.tiers[t])
        *out.stream << (t + 1) << ',' << (iv.forbidden ? "forbidden" : "allowed") << ','
                    << fmt(iv.lo) << ',' << fmt(iv.hi) << "\n";
  } else {
    for (std::size_t t = 0; t < rep.tiers.size(); ++t)
      for (const BandInterval& iv : rep.tiers[t])
        *out.stream << "{\"tier\":" << (t + 1) << ",\"kind\":\""
                    << (iv.forbidden ? "forbidden" : "allowed") << "\",\"k_lo\":" << fmt(iv.lo)
                    << ",\"k_hi\":" << fmt(iv.hi) << "}\n";
  }
  return 0;
}

// seeded random spec suite: closed forms vs both oracles
int run_default_verify(std::ostream& os) {
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  const int n_specs = 60;
  for (int i = 0; i < n_specs; ++i) {
    SppSpec spec;
    if (u01(rng) < 0.5)
      spec.cell = DeltaCell{-20.0 + 40.0 * u01(rng)};
    else
      spec.cell = RectangularCell{-20.0 + 40.0 * u01(rng), 0.2 + 1.8 * u01(rng)};
    int order = static_cast<int>(u01(rng) * 4);  // 0..3
    double d = cell_width(spec.cell);
    for (int t = 0; t < order; ++t) {
      int N = 1 + static_cast<int>(u01(rng) * 5);
      double s = std::max(d, 0.05) * (1.0 + 1.5 * u01(rng));
      spec.tiers.push_back({N, s});
      d += (N - 1) * s;
    }
    SweepGrid grid{SweepAxis::k, 0.11, 15.0, 100};
    CompareReport rep = compare(validate(spec), grid);
    worst = std::max(worst, rep.max_abs_dT);
  }
  os << "verify: " << n_specs << " random specs, max |T_closed - T_oracle| = " << fmt(worst)
     << "\n";
  return worst <= 1e-9 ? 0 : 1;
}

int run_verify(const ExperimentConfig* cfg, const std::string& out_path) {
  Out out = Out::open(out_path);
  if (!cfg) return run_default_verify(*out.stream);
  CompareReport rep = compare_system(cfg->system, cfg->grid, cfg->units);
  *out.stream << "verify: " << rep.points << " points, max |dT| = " << fmt(rep.max_abs_dT)
              << ", max rel dlog10T = " << fmt(rep.max_rel_dlog10T)
              << ", worst k = " << fmt(rep.worst_k) << "\n";
  bool ok = rep.within(cfg->tolerances.oracle_abs, cfg->tolerances.oracle_rel_log);
  *out.stream << (ok ? "PASS" : "FAIL") << " (tol_abs = " << fmt(cfg->tolerances.oracle_abs)
              << ", tol_rel_log = " << fmt(cfg->tolerances.oracle_rel_log) << ")\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transmission through super periodic and Cantor-family potentials"};
  app.require_subcommand(1);

  std::string config_path, out_path = "stdout", format_str = "csv";
  int threads = 0;
  bool permissive = false;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    sub->add_option("--config", config_path, "experiment config (JSON)")
        ->required(config_required);
    sub->add_option("--output", out_path, "output path or 'stdout'");
    sub->add_option("--format", format_str, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_option("--threads", threads, "worker threads (0 = all, 1 = serial)");
    sub->add_flag("--permissive-overlap", permissive, "evaluate overlapping geometries");
  };

  CLI::App* cmd_t = app.add_subcommand("transmission", "sweep T over the configured grid");
  CLI::App* cmd_r = app.add_subcommand("resonances", "locate cell and comb resonances");
  CLI::App* cmd_b = app.add_subcommand("bands", "allowed/forbidden band intervals per tier");
  CLI::App* cmd_v = app.add_subcommand("verify", "closed forms vs brute-force oracle");
  add_common(cmd_t, true);
  add_common(cmd_r, true);
  add_common(cmd_b, true);
  add_common(cmd_v, false);

  CLI11_PARSE(app, argc, argv);

  try {
    std::unique_ptr<spp::ExperimentConfig> cfg;
    if (!config_path.empty()) {
      cfg = std::make_unique<spp::ExperimentConfig>(spp::load_config(config_path));
      if (permissive)
        if (auto* s = std::get_if<spp::SppSpec>(&cfg->system))
          s->policy = spp::OverlapPolicy::permissive;
      if (format_str == "jsonl") cfg->format = spp::OutputFormat::jsonl;
    }
    spp::OutputFormat fmt_out =
        format_str == "jsonl" ? spp::OutputFormat::jsonl : spp::OutputFormat::csv;

    if (cmd_t->parsed()) return run_transmission(*cfg, out_path, threads, fmt_out);
    if (cmd_r->parsed()) return run_resonances(*cfg, out_path, fmt_out);
    if (cmd_b->parsed()) return run_bands(*cfg, out_path, fmt_out);
    return run_verify(cfg.get(), out_path);
  } catch (const spp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case spp::ErrorCode::config_parse:
        return 2;
      case spp::ErrorCode::invalid_energy:
      case spp::ErrorCode::overlap_violation:
      case spp::ErrorCode::non_positive_period:
      case spp::ErrorCode::validation:
      case spp::ErrorCode::kind_mismatch:
      case spp::ErrorCode::not_a_resonance:
        return 3;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
