// Command-line front end for the ALCC lab.
// Exit codes: 0 success, 1 invalid configuration or usage, 2 runtime guard trip / failed self-check.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <alcc/alcc.hpp>

using namespace alcc;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<int>& v, char sep = ' ') {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? std::string(1, sep) : "") << v[i];
  return os.str();
}

// Writes to the named file, or stdout for "" / "-".
template <class F>
void emit(const std::string& path, F body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidParams("cannot open output file: " + path);
  body(f);
}

Scenario load_scenario(const std::string& path, Config& cfg) {
  cfg = Config::load(path);
  return scenario_from_config(cfg);
}

int cmd_simulate(const std::string& config, const std::string& out, int trials, long long seed) {
  Config cfg;
  Scenario sc = load_scenario(config, cfg);
  reject_unused(cfg);
  if (trials > 0) sc.trials = trials;
  if (seed >= 0) sc.seed = static_cast<std::uint64_t>(seed);
  auto res = run_sweep(sc, {});
  emit(out, [&](std::ostream& os) { write_csv(os, res); });
  std::cerr << "mean e_rel " << fmt("%.6e", res.mean_e_rel(0)) << " (" << fmt("%.3f", res.mean_db(0))
            << " dB), correct localization " << fmt("%.3f", res.loc_rate(0)) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config, const std::string& out, bool summary_only) {
  Config cfg;
  Scenario sc = load_scenario(config, cfg);
  SweepSpec spec = sweep_from_config(cfg);
  reject_unused(cfg);
  auto res = run_sweep(sc, spec);
  emit(out, [&](std::ostream& os) { write_csv(os, res, !summary_only); });
  return 0;
}

int cmd_bounds(const std::string& kind, int N, int A, int v, int M, double eta, std::vector<double> sig, double csq,
               const std::string& out) {
  if (sig.empty()) sig = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  const double cI = std::sqrt(csq);
  emit(out, [&](std::ostream& os) {
    os << "kind,N,A,param,sigma_p2,value\n";
    auto row = [&](int a, long long param, double s2, double val) {
      os << kind << ',' << N << ',' << a << ',' << param << ',' << fmt("%.6g", s2) << ',' << fmt("%.12e", val) << '\n';
    };
    if (kind == "kappa") {
      for (int g = 1; g <= N - 1; ++g) row(A, g, 0.0, kappa(N, A, g, eta));
    } else if (kind == "gamma") {
      for (int a = 1; a <= A; ++a) row(a, 0, 0.0, gamma_max(N, a, eta));
    } else if (kind == "pep") {
      for (double s2 : sig)
        for (int g = 1; g <= N - 1; ++g) {
          PepContext c{N, A, eta, s2, 1 + g, 1, cI, 0.0};
          row(A, g, s2, pep_lower_bound(c).value);
        }
    } else if (kind == "dominant") {
      for (double s2 : sig)
        for (int a = 1; a <= v; ++a) row(a, a, s2, dominant_term_bound(a, N, s2, eta, cI, 0.0));
    } else if (kind == "strong") {
      for (double s2 : sig)
        for (int om = 0; om <= M; ++om) row(v, om, s2, strong_collusion_objective(M, v, om, s2, eta, N, csq, csq));
    } else if (kind == "union") {
      std::vector<int> L(A);
      std::iota(L.begin(), L.end(), 1);
      for (double s2 : sig) row(A, 0, s2, localization_upper_bound(N, L, s2, eta).value);
    } else {
      throw Usage("unknown bounds kind: " + kind);
    }
  });
  return 0;
}

int cmd_optimize(int N, int mu, int A, double s2, double eta, const std::string& search, int width,
                 const std::string& hmode, int trials, const std::string& config, bool baseline, bool allow_large,
                 long long seed, const std::string& out) {
  AssignmentProblem pr;
  pr.N = N;
  pr.mu = mu;
  pr.A = A;
  pr.sigma_p2 = s2;
  pr.eta = eta;
  if (hmode == "literal") pr.h_mode = HMode::Literal;
  else if (hmode == "root") pr.h_mode = HMode::Root;
  else throw Usage("h-mode must be literal or root");
  SearchMode sm;
  if (search == "exhaustive") sm.kind = SearchMode::Exhaustive;
  else if (search == "beam") { sm.kind = SearchMode::Beam; sm.width = width; }
  else throw Usage("search must be exhaustive or beam");
  auto sol = solve_assignment(pr, sm);
  std::cerr << "P* = {" << join(sol.P, ',') << "} canonical {" << join(canonical_form(sol.P, N), ',')
            << "} objective " << fmt("%.6e", sol.objective) << " (" << sol.evaluated << " evaluations)\n";

  // comparison table: Q*, contiguous, delta=2 family, optional exhaustive baseline
  std::vector<std::pair<std::string, std::vector<int>>> rows{{"Q*", sol.P}};
  std::vector<int> contig(mu);
  std::iota(contig.begin(), contig.end(), 1);
  rows.emplace_back("contiguous", contig);
  if (1 + (mu - 1) * 2 <= N) rows.emplace_back("delta2", delta_spaced_candidates(N, mu, 2).front());

  Scenario sc;
  Config cfg;
  if (!config.empty()) {
    sc = load_scenario(config, cfg);
    reject_unused(cfg);
  } else {
    sc.enc.N = N;
    sc.enc.k = 3;
    sc.enc.t = 1;
    sc.strategy = Strategy::Restricted;
    sc.precision = {PrecisionModel::Synthetic, s2};
  }
  sc.A = A;
  sc.byz_workers.clear();
  if (sc.enc.N != N) throw InvalidParams("scenario N does not match --N");
  auto e_rel = [&](const std::vector<int>& P, int t, std::uint64_t sd) {
    Scenario s = sc;
    s.unreliable = P;
    s.trials = t;
    s.seed = sd;
    return run_sweep(s, {}).mean_e_rel(0);
  };
  if (baseline) {
    if (trials < 1) throw Usage("--baseline needs --trials >= 1");
    auto b = relative_error_baseline(pr, e_rel, trials, static_cast<std::uint64_t>(seed), allow_large);
    rows.emplace_back("R*", b.best);
    if (b.non_discriminative) std::cerr << "baseline is non-discriminative (all subsets tie)\n";
  }
  emit(out, [&](std::ostream& os) {
    os << "label,set,canonical,objective,e_rel_db\n";
    for (auto& [label, P] : rows) {
      os << label << ",\"" << join(P) << "\",\"" << join(canonical_form(P, N)) << "\","
         << fmt("%.6e", assignment_objective(P, pr).value) << ',';
      if (trials > 0) os << fmt("%.4f", to_db(e_rel(P, trials, static_cast<std::uint64_t>(seed))));
      os << '\n';
    }
  });
  return 0;
}

int cmd_attack(const std::string& kind, int M, int v, double p, long long seed, bool show_p, const std::string& out) {
  if (show_p) {
    std::cout << fmt("%.6f", optimal_p(v)) << "\n";
    return 0;
  }
  Rng rng(static_cast<std::uint64_t>(seed));
  EffectiveBaseMatrix e;
  if (kind == "strong") e = design_strong_collusion(M, v, rng);
  else if (kind == "weak") e = design_weak_collusion(M, v, p, rng);
  else throw Usage("kind must be strong or weak");
  int all_one = 0;
  emit(out, [&](std::ostream& os) {
    os << "row";
    for (int a = 1; a <= v; ++a) os << ",b" << a;
    os << ",weight\n";
    for (int r = 0; r < M; ++r) {
      os << r + 1;
      int w = 0;
      for (int a = 0; a < v; ++a) { os << ',' << e.B(r, a); w += e.B(r, a); }
      os << ',' << w << '\n';
      if (w == v) ++all_one;
    }
  });
  std::cerr << "all-one rows: " << all_one << " of " << M << (e.degenerate ? " (degenerate: v = 1)" : "") << "\n";
  return 0;
}

int cmd_selftest(int draws, long long seed) {
  bool ok = true;
  for (auto [N, K] : std::vector<std::pair<int, int>>{{7, 3}, {11, 7}, {15, 7}}) {
    auto r = decoder_oracle(N, K, draws, static_cast<std::uint64_t>(seed));
    std::cout << "(" << N << "," << K << ") cases " << r.cases << " support failures " << r.support_failures
              << " value failures " << r.value_failures << " count failures " << r.count_failures << " worst rel "
              << fmt("%.3e", r.worst_rel) << (r.ok() ? "  ok" : "  FAILED") << "\n";
    ok = ok && r.ok();
  }
  return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analog Lagrange coded computing lab"};
  app.require_subcommand(1);

  std::string config, out;
  int trials = 0, draws = 20, width = 8;
  long long seed = -1;
  bool summary_only = false, baseline = false, allow_large = false, show_p = false;

  auto* sim = app.add_subcommand("simulate", "run one scenario and write per-trial CSV");
  sim->add_option("--config", config, "scenario config file")->required();
  sim->add_option("--out", out, "CSV output path (default stdout)");
  sim->add_option("--trials", trials, "override trial count");
  sim->add_option("--seed", seed, "override master seed");

  auto* sw = app.add_subcommand("sweep", "run a parameter grid from the [sweep] section");
  sw->add_option("--config", config, "scenario config file")->required();
  sw->add_option("--out", out, "CSV output path (default stdout)");
  sw->add_flag("--summary-only", summary_only, "emit only aggregate rows");

  std::string kind = "pep";
  int N = 31, A = 8, v = 8, M = 100, mu = 5;
  double eta = 10.0, csq = 1.0, s2 = 1.0, p = 0.5;
  std::vector<double> sig;
  auto* bd = app.add_subcommand("bounds", "evaluate analytical bounds over a grid");
  bd->add_option("--kind", kind, "kappa | gamma | pep | dominant | strong | union");
  bd->add_option("--N", N);
  bd->add_option("--A", A);
  bd->add_option("--v", v);
  bd->add_option("--M", M);
  bd->add_option("--eta", eta);
  bd->add_option("--c", csq, "c_I^2 + c_Q^2 for pep/dominant/strong");
  bd->add_option("--sigma-p2", sig, "precision variances");
  bd->add_option("--out", out);

  std::string search = "exhaustive", hmode = "literal";
  int oN = 11, oA = 2;
  auto* oa = app.add_subcommand("optimize-assignment", "choose evaluation indices for unreliable workers");
  oa->add_option("--N", oN);
  oa->add_option("--mu", mu);
  oa->add_option("--A", oA);
  oa->add_option("--sigma-p2", s2);
  oa->add_option("--eta", eta);
  oa->add_option("--search", search, "exhaustive | beam");
  oa->add_option("--width", width, "beam width");
  oa->add_option("--h-mode", hmode, "literal | root");
  oa->add_option("--trials", trials, "end-to-end trials per compared set (0: objective only)");
  oa->add_option("--config", config, "scenario config for the end-to-end comparison");
  oa->add_flag("--baseline", baseline, "also run the exhaustive relative-error baseline");
  oa->add_flag("--allow-large", allow_large, "lift the baseline simulation guard");
  oa->add_option("--seed", seed);
  oa->add_option("--out", out);

  int aM = 25, av = 8;
  std::string akind = "strong";
  auto* ad = app.add_subcommand("attack-design", "generate an effective base matrix");
  ad->add_option("--kind", akind, "strong | weak");
  ad->add_option("--M", aM);
  ad->add_option("--v", av);
  ad->add_option("--p", p, "probability of a zero entry (weak)");
  ad->add_option("--seed", seed);
  ad->add_flag("--optimal-p", show_p, "print the adversary's optimal p for v and exit");
  ad->add_option("--out", out);

  auto* st = app.add_subcommand("selftest", "exhaustive decoder oracle on small codes");
  st->add_option("--draws", draws, "random error vectors per support");
  st->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    const long long sd = seed < 0 ? 1 : seed;
    if (*sim) return cmd_simulate(config, out, trials, seed);
    if (*sw) return cmd_sweep(config, out, summary_only);
    if (*bd) return cmd_bounds(kind, N, A, v, M, eta, sig, csq, out);
    if (*oa) return cmd_optimize(oN, mu, oA, s2, eta, search, width, hmode, trials, config, baseline, allow_large, sd, out);
    if (*ad) return cmd_attack(akind, aM, av, p, sd, show_p, out);
    if (*st) return cmd_selftest(draws, sd);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 1;
  } catch (const GuardTrip& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
