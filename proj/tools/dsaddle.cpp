// SPDX-License-Identifier: Apache-2.0
//
// Batch experiment runner: randomized bound verification on synthetic
// systems, the discretized optimal-control benchmarks, and a calculator mode
// that turns indicator JSON into inclusion intervals.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "dsaddle/eigen_sym.hpp"
#include "dsaddle/json_io.hpp"
#include "dsaddle/minres.hpp"
#include "dsaddle/ocp.hpp"
#include "dsaddle/synthetic.hpp"

namespace fs = std::filesystem;
using namespace dsaddle;

namespace {

std::string format_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw Error("cannot open for writing: " + tmp.string());
    os << content;
  }
  fs::rename(tmp, path);
}

std::vector<double> parse_double_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const std::string& s : items) {
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(std::stod(part));
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (double v : parse_double_list(items)) out.push_back(static_cast<int>(v));
  return out;
}

struct CommonOpts {
  std::string out_dir = "out";
  int workers = 0;
  std::uint64_t seeds = 1;
  double tol = 1e-10;
};

fs::path resolve_out_dir(const std::string& flag_value) {
  const char* env = std::getenv("DSADDLE_OUT");
  const fs::path dir = (env && *env) ? fs::path(env) : fs::path(flag_value);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------- synth ----

int cmd_synth_verify(const CommonOpts& common, const std::string& preset, int repeats_flag) {
  const fs::path out_dir = resolve_out_dir(common.out_dir);

  bool square_c = false;
  auto e_mode = SyntheticParams::EMode::Zero;
  int repeats = repeats_flag;
  if (preset == "full") {
    if (repeats <= 0) repeats = 25;
  } else if (preset == "ci") {
    if (repeats <= 0) repeats = 3;
  } else if (preset == "square-c") {
    square_c = true;
    if (repeats <= 0) repeats = 25;
  } else if (preset == "with-e") {
    e_mode = SyntheticParams::EMode::RandomPsd;
    if (repeats <= 0) repeats = 3;
  } else {
    std::cerr << "unknown preset: " << preset << "\n";
    return 2;
  }

  const auto grid = full_parameter_grid(square_c, e_mode, common.seeds * 1000000ull);
  const GridReport report = run_grid(grid, repeats, common.workers);

  std::ostringstream csv;
  csv.precision(10);
  report.write_csv(csv);
  write_file_atomic(out_dir / ("synth_" + preset + "_results.csv"), csv.str());

  // Worst slack per bound endpoint, per variant.
  json summary;
  summary["preset"] = preset;
  summary["cases"] = report.cases.size();
  summary["checks"] = report.total_checks;
  summary["failed"] = report.failed_checks;
  summary["pass_rate"] =
      report.total_checks == 0
          ? 1.0
          : 1.0 - static_cast<double>(report.failed_checks) / report.total_checks;
  json slack = json::object();
  for (const CaseRecord& rec : report.cases) {
    for (const SpectralBounds& b : rec.bounds) {
      const std::string key = to_string(b.variant);
      json& s = slack[key];
      auto update = [&](const char* name, double v) {
        if (!s.contains(name) || v < s[name].get<double>()) s[name] = v;
      };
      update("neg_lo", rec.eig_min_neg - b.negative.lo);
      update("neg_hi", b.negative.hi - rec.eig_max_neg);
      update("pos_lo", rec.eig_min_pos - b.positive.lo);
      update("pos_hi", b.positive.hi - rec.eig_max_pos);
    }
  }
  summary["worst_slack"] = slack;
  write_file_atomic(out_dir / ("synth_" + preset + "_summary.json"), summary.dump(2) + "\n");

  std::cout << "cases: " << report.cases.size() << "  checks: " << report.total_checks
            << "  failed: " << report.failed_checks << "\n";
  return report.all_contained() ? 0 : 1;
}

// ---------------------------------------------------------------- pdeco ----

struct PdecoRow {
  int l = 0;
  SpectralBounds bounds;
  bool have_eigens = false;
  double rho_l_neg = 0.0, rho_u_neg = 0.0, rho_l_pos = 0.0, rho_u_pos = 0.0;
  bool contained = true;
  int iterations = 0;
  bool converged = false;
};

struct PdecoCase {
  Observation obs;
  int level;
  double beta;
  std::vector<PdecoRow> rows;
};

PdecoRow run_pdeco_row(const Mesh& mesh, const FemMatrices& fem,
                       const DoubleSaddleSystem& sys, Observation obs, double beta, int l,
                       AmgMode amg_mode, int amg_sweeps, SpectralIntervalMode interval_mode,
                       bool eigens, double tol) {
  PdecoRow row;
  row.l = l;
  const OcpPreconditioner ocp = build_ocp_preconditioner(mesh, fem, beta, obs, l, amg_mode,
                                                         amg_sweeps, interval_mode);
  const MeasuredOverrides overrides = measure_overrides(sys, fem, beta, obs, ocp);
  const GammaIndicators indicators = analytic_indicators_pdeco(
      l, beta, obs, ocp.amg_quality, overrides, ocp.cheb.lmin(), ocp.cheb.lmax());
  row.bounds = bounds_e_nonzero(indicators);

  if (eigens) {
    const DenseSymMatrix full = assemble_full_matrix(sys);
    const DenseSymMatrix p_inv = assemble_preconditioner_inverse_dense(ocp.pc);
    const Spectrum spectrum = gen_sym_eigenvalues_inverse(full, p_inv);
    row.have_eigens = true;
    row.rho_l_neg = HUGE_VAL;
    row.rho_u_neg = -HUGE_VAL;
    row.rho_l_pos = HUGE_VAL;
    row.rho_u_pos = -HUGE_VAL;
    for (double v : spectrum.eigenvalues) {
      if (v < 0.0) {
        row.rho_l_neg = std::min(row.rho_l_neg, v);
        row.rho_u_neg = std::max(row.rho_u_neg, v);
      } else {
        row.rho_l_pos = std::min(row.rho_l_pos, v);
        row.rho_u_pos = std::max(row.rho_u_pos, v);
      }
      if (!row.bounds.contains(v)) row.contained = false;
    }
  }

  auto [x, report] = minres_solve(sys, ocp.pc, tol, 5000);
  row.iterations = report.iterations;
  row.converged = report.converged;
  return row;
}

std::string pdeco_case_stem(const PdecoCase& c) {
  std::ostringstream name;
  name << "pdeco_" << (c.obs == Observation::Full ? "full" : "boundary") << "_h" << c.level
       << "_beta" << format_num(c.beta);
  return name.str();
}

void write_pdeco_case(const fs::path& out_dir, const PdecoCase& c) {
  std::ostringstream csv;
  csv << "l,Bound_l_neg,rho_l_neg,rho_u_neg,Bound_u_neg,"
         "Bound_l_pos,rho_l_pos,rho_u_pos,Bound_u_pos\n";
  for (const PdecoRow& r : c.rows) {
    csv << r.l << "," << format_num(r.bounds.negative.lo) << ",";
    if (r.have_eigens) csv << format_num(r.rho_l_neg);
    csv << ",";
    if (r.have_eigens) csv << format_num(r.rho_u_neg);
    csv << "," << format_num(r.bounds.negative.hi) << "," << format_num(r.bounds.positive.lo)
        << ",";
    if (r.have_eigens) csv << format_num(r.rho_l_pos);
    csv << ",";
    if (r.have_eigens) csv << format_num(r.rho_u_pos);
    csv << "," << format_num(r.bounds.positive.hi) << "\n";
  }
  write_file_atomic(out_dir / (pdeco_case_stem(c) + ".csv"), csv.str());

  std::ostringstream md;
  md << "| l | Bound_l_neg | rho_l_neg | rho_u_neg | Bound_u_neg |"
        " Bound_l_pos | rho_l_pos | rho_u_pos | Bound_u_pos |\n"
     << "|---|---|---|---|---|---|---|---|---|\n";
  for (const PdecoRow& r : c.rows) {
    md << "| " << r.l << " | " << format_num(r.bounds.negative.lo) << " | "
       << (r.have_eigens ? format_num(r.rho_l_neg) : "") << " | "
       << (r.have_eigens ? format_num(r.rho_u_neg) : "") << " | "
       << format_num(r.bounds.negative.hi) << " | " << format_num(r.bounds.positive.lo)
       << " | " << (r.have_eigens ? format_num(r.rho_l_pos) : "") << " | "
       << (r.have_eigens ? format_num(r.rho_u_pos) : "") << " | "
       << format_num(r.bounds.positive.hi) << " |\n";
  }
  write_file_atomic(out_dir / (pdeco_case_stem(c) + ".md"), md.str());
}

void write_pdeco_iterations(const fs::path& out_dir, const std::vector<PdecoCase>& cases,
                            const std::vector<int>& iters) {
  std::ostringstream csv, md, md_sep;
  csv << "l";
  md << "| l |";
  md_sep << "|---|";
  for (const PdecoCase& c : cases) {
    const std::string tag = (c.obs == Observation::Full ? std::string("full")
                                                        : std::string("boundary")) +
                            "_h" + std::to_string(c.level) + "_beta" + format_num(c.beta);
    csv << "," << tag;
    md << " " << tag << " |";
    md_sep << "---|";
  }
  csv << "\n";
  md << "\n" << md_sep.str() << "\n";
  for (std::size_t row = 0; row < iters.size(); ++row) {
    csv << iters[row];
    md << "| " << iters[row] << " |";
    for (const PdecoCase& c : cases) {
      csv << "," << c.rows[row].iterations;
      md << " " << c.rows[row].iterations << " |";
    }
    csv << "\n";
    md << "\n";
  }
  write_file_atomic(out_dir / "pdeco_iterations.csv", csv.str());
  write_file_atomic(out_dir / "pdeco_iterations.md", md.str());
}

int cmd_pdeco(const CommonOpts& common, const std::vector<int>& levels,
              std::vector<double> betas, const std::vector<int>& cheb_iters,
              const std::string& observation, const std::string& amg_mode_text, bool eigens,
              const std::string& interval_text) {
  const fs::path out_dir = resolve_out_dir(common.out_dir);
  const Observation obs =
      observation == "boundary" ? Observation::Boundary : Observation::Full;
  if (betas.empty())
    betas = (obs == Observation::Full) ? std::vector<double>{1e-2, 1e-4}
                                       : std::vector<double>{1e-1, 1e-3};
  int amg_sweeps = 2;
  const AmgMode amg_mode = parse_amg_mode(amg_mode_text, &amg_sweeps);
  const SpectralIntervalMode interval_mode = interval_text == "measured"
                                                 ? SpectralIntervalMode::Measured
                                                 : SpectralIntervalMode::Analytic;

  std::vector<PdecoCase> cases;
  for (int level : levels)
    for (double beta : betas)
      cases.push_back({obs, level, beta, std::vector<PdecoRow>(cheb_iters.size())});

  // One (case, l) job per grid point, scheduled across the pool; meshes and
  // systems are built once per case up front.
  struct CaseContext {
    Mesh mesh;
    FemMatrices fem;
    DoubleSaddleSystem sys;
  };
  std::vector<CaseContext> contexts;
  contexts.reserve(cases.size());
  for (const PdecoCase& c : cases) {
    CaseContext ctx;
    ctx.mesh = build_mesh(c.level);
    ctx.fem = assemble_matrices(ctx.mesh);
    ctx.sys = build_ocp_system(ctx.mesh, ctx.fem, c.beta, obs);
    contexts.push_back(std::move(ctx));
  }

  struct Job {
    std::size_t case_idx, row_idx;
  };
  std::vector<Job> jobs;
  for (std::size_t ci = 0; ci < cases.size(); ++ci)
    for (std::size_t ri = 0; ri < cheb_iters.size(); ++ri) jobs.push_back({ci, ri});

  int workers = common.workers > 0 ? common.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job job = jobs[i];
      const CaseContext& ctx = contexts[job.case_idx];
      PdecoCase& c = cases[job.case_idx];
      try {
        c.rows[job.row_idx] =
            run_pdeco_row(ctx.mesh, ctx.fem, ctx.sys, obs, c.beta, cheb_iters[job.row_idx],
                          amg_mode, amg_sweeps, interval_mode, eigens, common.tol);
      } catch (const std::exception& e) {
        failed = true;
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error.empty()) first_error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed) {
    std::cerr << "pdeco run failed: " << first_error << "\n";
    return 2;
  }

  for (const PdecoCase& c : cases) write_pdeco_case(out_dir, c);
  write_pdeco_iterations(out_dir, cases, cheb_iters);

  bool all_contained = true;
  for (const PdecoCase& c : cases)
    for (const PdecoRow& r : c.rows) {
      if (r.have_eigens && !r.contained) all_contained = false;
      if (!r.converged) all_contained = false;
    }
  std::cout << "pdeco cases: " << cases.size() << "  rows per case: " << cheb_iters.size()
            << (eigens ? "" : "  (eigens off)") << "  containment: "
            << (eigens ? (all_contained ? "pass" : "FAIL") : "skipped") << "\n";
  return all_contained ? 0 : 1;
}

// --------------------------------------------------------------- bounds ----

int cmd_bounds(const CommonOpts& common, const std::string& indicators_path,
               const std::string& variants, bool to_file) {
  const json j = load_json(indicators_path);
  const GammaIndicators g = indicators_from_json(j);

  json out;
  out["indicators"] = to_json(g);
  out["warnings"] = g.assumption_warnings();

  auto emit = [&](const std::string& name, auto&& make) {
    if (variants != "all" && variants != name) return;
    try {
      out["variants"][name] = to_json(make());
    } catch (const ComplexRootsError& e) {
      out["variants"][name] = {{"error", "ComplexRoots"}, {"message", e.what()}};
    } catch (const NotSquareError& e) {
      out["variants"][name] = {{"error", "NotSquare"}, {"message", e.what()}};
    }
  };
  emit("E0", [&] { return bounds_e_zero(g); });
  emit("E_nonzero", [&] { return bounds_e_nonzero(g); });
  emit("E0_squareC", [&] { return bounds_c_invertible(g, true); });
  emit("E_nonzero_squareC", [&] { return bounds_c_invertible(g, false); });

  const std::string text = out.dump(2) + "\n";
  if (to_file) {
    const fs::path out_dir = resolve_out_dir(common.out_dir);
    write_file_atomic(out_dir / "bounds.json", text);
  }
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-Schur-complement preconditioner toolkit: inclusion intervals for the "
               "preconditioned spectrum, verified against computed eigenvalues"};
  app.set_config("--config");
  app.require_subcommand(1);

  CommonOpts common;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", common.out_dir, "output directory (env DSADDLE_OUT overrides)");
    cmd->add_option("--workers", common.workers, "worker pool size (0 = logical cores)");
    cmd->add_option("--seeds", common.seeds, "base seed");
    cmd->add_option("--tol", common.tol, "iterative solve tolerance");
  };

  // synth-verify
  std::string preset = "ci";
  int repeats = 0;
  CLI::App* synth = app.add_subcommand(
      "synth-verify", "randomized containment verification on target-matched systems");
  synth->add_option("--preset", preset, "full | ci | square-c | with-e");
  synth->add_option("--repeats", repeats, "repeats per grid cell (0 = preset default)");
  add_common(synth);

  // pdeco
  std::vector<std::string> levels_text{"4"}, betas_text, cheb_text{"1,2,3,4,5,7,10"};
  std::string observation = "full", amg_mode_text = "exact", interval_text = "analytic";
  bool eigens = true;
  CLI::App* pdeco = app.add_subcommand(
      "pdeco", "optimal-control benchmark tables: bounds, eigenvalue extremes, iterations");
  pdeco->add_option("--levels", levels_text, "mesh levels (h = 2^-level)");
  pdeco->add_option("--beta", betas_text, "regularization values");
  pdeco->add_option("--cheb-iters", cheb_text, "inner iteration counts (table rows)");
  pdeco->add_option("--observation", observation, "full | boundary");
  pdeco->add_option("--amg-mode", amg_mode_text, "exact | sgs[:k] | two-grid");
  pdeco->add_flag("--eigens,!--no-eigens", eigens, "compute eigenvalue extremes");
  pdeco->add_option("--spectral-interval", interval_text,
                    "chebyshev spectral interval: analytic | measured");
  add_common(pdeco);

  // bounds
  std::string indicators_path, variants = "all";
  bool bounds_to_file = false;
  CLI::App* bounds = app.add_subcommand("bounds", "inclusion intervals from indicator JSON");
  bounds->add_option("--indicators", indicators_path, "indicator JSON file")->required();
  bounds->add_option("--variant", variants, "all | E0 | E_nonzero | E0_squareC | E_nonzero_squareC");
  bounds->add_flag("--write", bounds_to_file, "also write bounds.json to the output directory");
  add_common(bounds);

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth_verify(common, preset, repeats);
    if (pdeco->parsed())
      return cmd_pdeco(common, parse_int_list(levels_text), parse_double_list(betas_text),
                       parse_int_list(cheb_text), observation, amg_mode_text, eigens,
                       interval_text);
    if (bounds->parsed()) return cmd_bounds(common, indicators_path, variants, bounds_to_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
