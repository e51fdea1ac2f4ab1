// tqlab: numerical laboratory for the inhomogeneous T-Q relation of the
// periodic XXX spin-1/2 chain. Subcommands: verify, spectrum, solve,
// reconstruct. Exit codes: 0 success, 1 verification/acceptance failure,
// 2 usage error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tqlab/bae_solver.hpp"
#include "tqlab/eigenstate_builder.hpp"
#include "tqlab/identity_suite.hpp"
#include "tqlab/parallel.hpp"
#include "tqlab/q_reconstructor.hpp"
#include "tqlab/report.hpp"
#include "tqlab/spectral_oracle.hpp"
#include "tqlab/version.hpp"

using namespace tqlab;

namespace {

struct RunConfig {
  int n = 3;
  std::string theta_text = "homogeneous";
  std::string phi_text = "0";
  std::uint64_t seed = kDefaultSeed;
  int budget = 2000;
  double tol = 1e-10;
  std::string format = "json";
  std::string out_path;
  int threads = 0;
  bool seed_from_oracle = true;
  int reproduce_table = 0;
  bool inject_fault = false;

  Cplx phi{};
  std::vector<Cplx> theta;
};

std::vector<Cplx> resolve_theta(const std::string& text, int n, std::uint64_t seed) {
  if (text == "homogeneous") return std::vector<Cplx>(static_cast<size_t>(n), Cplx(0.0));
  if (text == "random") {
    std::mt19937_64 rng(seed ^ 0x5eedu);
    std::normal_distribution<double> g(0.0, 0.4);
    std::vector<Cplx> t(static_cast<size_t>(n));
    for (auto& x : t) x = Cplx(g(rng), g(rng));
    return t;
  }
  std::vector<Cplx> t;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) t.push_back(parse_complex(item));
  return t;
}

ChainSpec make_spec(const RunConfig& cfg) {
  ChainSpec spec;
  spec.num_sites = cfg.n;
  spec.theta = cfg.theta;
  spec.phi = cfg.phi;
  spec.validate();
  return spec;
}

Json config_to_json(const RunConfig& cfg, const std::string& command) {
  Json j;
  j["command"] = command;
  j["n"] = cfg.n;
  Json th = Json::array();
  for (const Cplx& t : cfg.theta) th.push_back(complex_to_json(t));
  j["theta"] = std::move(th);
  j["phi"] = complex_to_json(cfg.phi);
  j["seed"] = cfg.seed;
  j["budget"] = cfg.budget;
  j["tol"] = cfg.tol;
  j["threads"] = worker_count();
  j["seed_from_oracle"] = cfg.seed_from_oracle;
  if (cfg.reproduce_table != 0) j["reproduce_table"] = cfg.reproduce_table;
  return j;
}

Json report_skeleton(const RunConfig& cfg, const std::string& command) {
  Json j;
  j["version"] = kVersion;
  j["seed"] = cfg.seed;
  j["config"] = config_to_json(cfg, command);
  return j;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  f << text;
}

// ---------------------------------------------------------------- tables 1/2

struct TableRow {
  std::vector<Cplx> mu;
  double energy;
  int degeneracy;
};

std::vector<TableRow> reference_table(int which) {
  if (which == 1)
    return {
        {{{-2.97259, 1.15909}, {-2.51751, -1.42184}, {-0.50990, 0.26274}}, -1.5, 2},
        {{{-2.97259, -1.15909}, {-2.51751, 1.42184}, {-0.50990, -0.26274}}, -1.5, 2},
        {{{-2.88462, 0.00000}, {-1.55769, -2.56650}, {-1.55769, 2.56650}}, 1.5, 4},
    };
  return {
      {{{-3.46085, -2.04638}, {-3.46085, 2.04638}, {-0.53915, -0.28370}, {-0.53915, 0.28370}},
       -4.0, 1},
      {{{-3.49754, 0.0}, {-2.00000, 2.49853}, {-2.00000, -2.49853}, {-0.50246, 0.0}}, -2.0, 3},
      {{{-3.41695, -0.01463}, {-2.20702, 2.20734}, {-1.88461, -2.68745}, {-0.49142, 0.49474}},
       0.0, 3},
      {{{-3.41695, 0.01463}, {-2.20702, -2.20734}, {-1.88461, 2.68745}, {-0.49142, -0.49474}},
       0.0, 3},
      {{{-3.38446, -2.02080}, {-3.38446, 2.02080}, {-1.11571, 0.0}, {-0.11537, 0.0}}, 0.0, 1},
      {{{-3.07558, 1.25638}, {-3.07558, -1.25638}, {-0.92442, 3.56865}, {-0.92442, -3.56865}},
       2.0, 5},
  };
}

// ------------------------------------------------------------------ commands

int cmd_verify(const RunConfig& cfg) {
  const ChainSpec spec = make_spec(cfg);
  IdentitySuiteOptions opts;
  opts.seed = cfg.seed;
  opts.inject_fault = cfg.inject_fault;
  const IdentityReport rep = run_identity_suite(spec, opts);

  Json j = report_skeleton(cfg, "verify");
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back(Json{{"name", c.name},
                          {"residual", c.residual},
                          {"threshold", c.threshold},
                          {"passed", c.passed}});
  j["checks"] = std::move(checks);
  j["all_passed"] = rep.all_passed();
  if (const IdentityCheck* f = rep.first_failure()) j["first_failure"] = f->name;

  if (cfg.format == "table") {
    std::ostringstream os;
    os << "identity suite  N=" << cfg.n << "\n";
    for (const auto& c : rep.checks) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "  %-34s %12.3e  (< %.0e)  %s\n", c.name.c_str(),
                    c.residual, c.threshold, c.passed ? "ok" : "FAIL");
      os << buf;
    }
    emit(cfg, os.str());
  } else {
    emit(cfg, canonical_dump(j));
  }
  return rep.all_passed() ? 0 : 1;
}

int cmd_spectrum(const RunConfig& cfg) {
  const ChainSpec spec = make_spec(cfg);
  OracleOptions opts;
  opts.seed = cfg.seed;
  const auto records = diagonalize(spec, opts);

  int total = 0;
  for (const auto& r : records) total += r.degeneracy;

  Json j = report_skeleton(cfg, "spectrum");
  Json branches = Json::array();
  for (const auto& r : records) {
    Json b;
    b["lambda"] = poly_to_json(r.lambda);
    b["degeneracy"] = r.degeneracy;
    b["lambda_at_origin"] = complex_to_json(r.momentum_marker);
    if (r.energy) b["energy"] = complex_to_json(*r.energy);
    branches.push_back(std::move(b));
  }
  j["branches"] = std::move(branches);
  j["dimension"] = spec.dim();
  j["degeneracy_sum"] = total;

  if (cfg.format == "table") {
    std::ostringstream os;
    os << "spectrum  N=" << cfg.n << "  (" << records.size() << " branches)\n";
    for (const auto& r : records) {
      os << "  d=" << r.degeneracy;
      if (r.energy) os << "  E_n=" << format_complex_table(*r.energy);
      os << "  Lambda(0)=" << format_complex_table(r.momentum_marker) << "\n";
    }
    emit(cfg, os.str());
  } else {
    emit(cfg, canonical_dump(j));
  }
  return total == spec.dim() ? 0 : 1;
}

std::vector<std::vector<Cplx>> oracle_seed_starts(const ChainSpec& spec,
                                                  const std::vector<SpectrumRecord>& records) {
  std::vector<std::vector<Cplx>> seeds;
  for (const auto& rec : records) {
    try {
      const Reconstruction r = spec.is_homogeneous()
                                   ? reconstruct_q_homogeneous(rec.lambda, spec)
                                   : reconstruct_q(rec.lambda, spec);
      seeds.push_back(r.q.roots());
    } catch (const std::exception&) {
      // branch without a usable reconstruction seed; random starts cover it
    }
  }
  return seeds;
}

int cmd_solve(RunConfig cfg) {
  if (cfg.reproduce_table == 1) {
    cfg.n = 3;
    cfg.phi = Cplx(0.0, -0.69315);
    cfg.theta.assign(3, Cplx(0.0));
  } else if (cfg.reproduce_table == 2) {
    cfg.n = 4;
    cfg.phi = Cplx(0.0, -0.69315);
    cfg.theta.assign(4, Cplx(0.0));
    if (cfg.budget < 10000) cfg.budget = 10000;
  }
  const ChainSpec spec = make_spec(cfg);

  OracleOptions oopts;
  oopts.seed = cfg.seed;
  const auto records = diagonalize(spec, oopts);

  EnumerationOptions eopts;
  eopts.budget = cfg.budget;
  eopts.seed = cfg.seed;
  eopts.newton.tol = cfg.tol;
  std::vector<std::vector<Cplx>> seeds;
  if (cfg.seed_from_oracle) seeds = oracle_seed_starts(spec, records);
  const auto solutions = enumerate_solutions(spec, eopts, seeds);
  const Matching matching = classify(solutions, records, spec);

  // canonical row order: by energy, then by Lambda(0)
  struct Row {
    const BetheRootSet* roots;
    const MatchEntry* entry;
  };
  std::vector<Row> rows;
  for (const auto& e : matching.matched)
    rows.push_back({&solutions[static_cast<size_t>(e.solution)], &e});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    const Cplx ea = a.entry->has_energy ? a.entry->energy : Cplx(0.0);
    const Cplx eb = b.entry->has_energy ? b.entry->energy : Cplx(0.0);
    if (std::abs(ea.real() - eb.real()) > 1e-9) return ea.real() < eb.real();
    const Cplx la = a.entry->lambda.coeff(0), lb = b.entry->lambda.coeff(0);
    if (std::abs(la.imag() - lb.imag()) > 1e-9) return la.imag() < lb.imag();
    return la.real() < lb.real();
  });

  Json j = report_skeleton(cfg, "solve");
  Json sols = Json::array();
  for (const auto& row : rows) {
    Json s = roots_to_json(*row.roots);
    s["lambda"] = poly_to_json(row.entry->lambda);
    s["matched_record"] = row.entry->record;
    s["match_distance"] = row.entry->distance;
    s["degeneracy"] = records[static_cast<size_t>(row.entry->record)].degeneracy;
    if (row.entry->has_energy) s["energy"] = complex_to_json(row.entry->energy);
    sols.push_back(std::move(s));
  }
  j["solutions"] = std::move(sols);
  j["distinct_solutions"] = solutions.size();
  j["oracle_branches"] = records.size();
  Json unmatched = Json::array();
  for (int k : matching.unmatched_solutions) unmatched.push_back(k);
  j["unmatched_solutions"] = std::move(unmatched);
  Json missing = Json::array();
  for (int k : matching.unmatched_records) missing.push_back(k);
  j["uncovered_branches"] = std::move(missing);
  j["failures"] = matching.failures;

  int exit_code = 0;
  if (cfg.reproduce_table != 0) {
    const auto table = reference_table(cfg.reproduce_table);
    Json cmp = Json::array();
    bool ok = solutions.size() == table.size();
    for (const auto& trow : table) {
      double best = 1e300;
      const MatchEntry* best_entry = nullptr;
      for (const auto& row : rows) {
        const double d = root_set_distance(row.roots->mu, trow.mu);
        if (d < best) {
          best = d;
          best_entry = row.entry;
        }
      }
      const bool roots_ok = best < 1e-4;
      bool energy_ok = false, deg_ok = false;
      if (best_entry != nullptr && best_entry->has_energy) {
        energy_ok = std::abs(best_entry->energy - Cplx(trow.energy)) < 1e-6;
        deg_ok = records[static_cast<size_t>(best_entry->record)].degeneracy == trow.degeneracy;
      }
      ok = ok && roots_ok && energy_ok && deg_ok;
      cmp.push_back(Json{{"root_distance", best},
                         {"roots_ok", roots_ok},
                         {"energy_ok", energy_ok},
                         {"degeneracy_ok", deg_ok}});
    }
    j["table_comparison"] = std::move(cmp);
    j["table_reproduced"] = ok;
    if (!ok) exit_code = 1;
  }

  if (cfg.format == "table") {
    std::ostringstream os;
    os << "BAE solutions  N=" << cfg.n << "  phi=" << format_complex(cfg.phi) << "\n";
    for (int k = 1; k <= cfg.n; ++k) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "        mu_%-14d", k);
      os << buf;
    }
    os << "      E_n     d\n";
    for (const auto& row : rows) {
      for (const Cplx& m : row.roots->mu) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "  %20s", format_complex_table(m).c_str());
        os << buf;
      }
      char buf[48];
      if (row.entry->has_energy)
        std::snprintf(buf, sizeof(buf), "  %9.5f  %4d\n", row.entry->energy.real(),
                      records[static_cast<size_t>(row.entry->record)].degeneracy);
      else
        std::snprintf(buf, sizeof(buf), "  %9s  %4d\n", "-",
                      records[static_cast<size_t>(row.entry->record)].degeneracy);
      os << buf;
    }
    if (cfg.reproduce_table != 0)
      os << (j["table_reproduced"].get<bool>() ? "table reproduced\n" : "TABLE MISMATCH\n");
    emit(cfg, os.str());
  } else {
    emit(cfg, canonical_dump(j));
  }
  return exit_code;
}

int cmd_reconstruct(const RunConfig& cfg) {
  const ChainSpec spec = make_spec(cfg);
  OracleOptions oopts;
  oopts.seed = cfg.seed;
  const auto records = diagonalize(spec, oopts);

  Json j = report_skeleton(cfg, "reconstruct");
  Json branches = Json::array();
  int exit_code = 0;
  std::ostringstream table_os;
  table_os << "Q reconstruction  N=" << cfg.n << "  phi=" << format_complex(cfg.phi) << "\n";
  for (size_t bi = 0; bi < records.size(); ++bi) {
    const auto& rec = records[bi];
    Json b;
    b["degeneracy"] = rec.degeneracy;
    if (rec.energy) b["energy"] = complex_to_json(*rec.energy);
    try {
      const Reconstruction r = spec.is_homogeneous()
                                   ? reconstruct_q_homogeneous(rec.lambda, spec, cfg.seed)
                                   : reconstruct_q(rec.lambda, spec, cfg.seed);
      const RootExtraction ext = roots_from_q(r.q, spec);
      b["q"] = poly_to_json(r.q);
      b["condition"] = r.condition;
      b["condition_warning"] = r.condition > 1e8;
      b["verification_residual"] = r.verification_residual;
      Json mu = Json::array();
      for (const Cplx& m : ext.roots.mu) mu.push_back(complex_to_json(m));
      b["bethe_roots"] = std::move(mu);
      b["selection_violations"] = ext.selection_violations;
      table_os << "  branch " << bi << " (d=" << rec.degeneracy << "):";
      for (const Cplx& m : ext.roots.mu) table_os << "  " << format_complex_table(m);
      char buf[96];
      std::snprintf(buf, sizeof(buf), "   cond=%.2e resid=%.2e", r.condition,
                    r.verification_residual);
      table_os << buf;
      if (r.condition > 1e8) table_os << "  [ill-conditioned]";
      table_os << "\n";
    } catch (const std::exception& e) {
      b["error"] = e.what();
      table_os << "  branch " << bi << ": ERROR " << e.what() << "\n";
      exit_code = 1;
    }
    branches.push_back(std::move(b));
  }
  j["branches"] = std::move(branches);
  j["all_verified"] = (exit_code == 0);

  if (cfg.format == "table")
    emit(cfg, table_os.str());
  else
    emit(cfg, canonical_dump(j));
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inhomogeneous T-Q relation laboratory for the periodic XXX chain"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "key=value config file; flags override file values");

  RunConfig cfg;
  app.add_option("--n", cfg.n, "number of sites (2..12)");
  app.add_option("--theta", cfg.theta_text,
                 "inhomogeneities: 'homogeneous', 'random', or a comma list like 0.1+0.2i,-0.3");
  app.add_option("--phi", cfg.phi_text, "T-Q parameter phi, e.g. -0.69315i");
  app.add_option("--seed", cfg.seed, "random seed recorded in the report");
  app.add_option("--budget", cfg.budget, "multistart budget for solve");
  app.add_option("--tol", cfg.tol, "Newton convergence tolerance (scaled defect)");
  app.add_option("--format", cfg.format, "output format: json|table")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--out", cfg.out_path, "write the report to this path instead of stdout");
  app.add_option("--threads", cfg.threads,
                 "worker count (default: TQLAB_THREADS or hardware concurrency)");

  CLI::App* verify = app.add_subcommand("verify", "run the algebraic identity suite");
  verify->add_flag("--inject-fault", cfg.inject_fault,
                   "corrupt the R-matrix to exercise the failure path (testing)");
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "exact diagonalization of the transfer family");
  CLI::App* solve = app.add_subcommand("solve", "enumerate BAE solutions and match the oracle");
  solve->add_option("--reproduce-table", cfg.reproduce_table,
                    "reproduce reference table 1 or 2 (N=3/N=4, phi=-0.69315i) against the printed values")
      ->check(CLI::IsMember({1, 2}));
  solve->add_flag("--seed-from-oracle,!--no-seed-from-oracle", cfg.seed_from_oracle,
                  "seed the multistart with reconstruction roots (default on)");
  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "solve for Q from each oracle eigenvalue branch");
  for (CLI::App* sub : {verify, spectrum, solve, reconstruct}) sub->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage errors exit 2; --help/--version exit 0
  }

  try {
    if (cfg.threads > 0) set_worker_count(cfg.threads);
    if (verify->parsed() && !app.count("--theta")) cfg.theta_text = "random";
    cfg.phi = parse_complex(cfg.phi_text);
    cfg.theta = resolve_theta(cfg.theta_text, cfg.n, cfg.seed);
    if (static_cast<int>(cfg.theta.size()) != cfg.n)
      throw CLI::ValidationError("--theta", "needs exactly N entries");
    if (cfg.n < 2 || cfg.n > ChainSpec::kMaxSites)
      throw CLI::ValidationError("--n", "N exceeds configured cap (2..12)");

    if (verify->parsed()) return cmd_verify(cfg);
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (reconstruct->parsed()) return cmd_reconstruct(cfg);
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
