#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "assignment.hpp"
#include "codec.hpp"
#include "config.hpp"
#include "dft_code.hpp"
#include "localization.hpp"
#include "threat.hpp"

namespace alcc {

enum class Strategy { None, Independent, Restricted, Joint };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Independent: return "independent";
    case Strategy::Restricted: return "restricted";
    case Strategy::Joint: return "joint";
    default: return "none";
  }
}

inline Strategy parse_strategy(const std::string& s) {
  if (s == "none") return Strategy::None;
  if (s == "independent") return Strategy::Independent;
  if (s == "restricted") return Strategy::Restricted;
  if (s == "joint") return Strategy::Joint;
  throw InvalidParams("unknown strategy: " + s);
}

enum class BaseDesign { AllOne, Strong, Weak };

struct Scenario {
  std::string name = "scenario";
  EncodingParams enc;
  int m = 20, n = 5;
  std::string function = "gram";

  std::vector<int> unreliable;  // evaluation indices held by unreliable workers; empty = all

  int A = 0;
  std::vector<int> byz_workers;  // explicit worker ids; empty = uniformly random each trial
  BaseDesign bases = BaseDesign::AllOne;
  double p = 0.5;
  cplx noise_mean = cplx(10.0, 0.0);
  double noise_var = 1e3;

  PrecisionModel precision;

  Strategy strategy = Strategy::Independent;
  ErrorCountMode::Kind count_mode = ErrorCountMode::Oracle;
  double rank_tol = 1e-6;
  double rank_floor = 0.0;
  int vprime = 0;
  long long enum_limit = 5'000'000;

  int trials = 100;
  std::uint64_t seed = 1;

  MatrixFunction f() const {
    if (function == "gram") return gram_function();
    if (function == "identity") return identity_function();
    throw InvalidParams("unknown function: " + function);
  }

  int mu() const { return unreliable.empty() ? enc.N : static_cast<int>(unreliable.size()); }

  /// Unreliable workers are ids 1..mu and hold the evaluations in `unreliable`.
  std::vector<int> psi() const {
    const int N = enc.N;
    std::vector<int> map(N);
    if (unreliable.empty()) {
      std::iota(map.begin(), map.end(), 1);
      return map;
    }
    std::vector<char> taken(N + 1, 0);
    int w = 1;
    for (int q : unreliable) { map[q - 1] = w++; taken[q] = 1; }
    for (int q = 1; q <= N; ++q)
      if (!taken[q]) map[q - 1] = w++;
    return map;
  }

  void validate() const {
    auto e = enc;
    e.D = f().degree;
    e.validate();
    if (m < 1 || n < 1) throw InvalidParams("scenario: matrix dimensions must be positive");
    std::vector<char> seen(enc.N + 1, 0);
    for (int q : unreliable) {
      if (q < 1 || q > enc.N || seen[q]) throw InvalidParams("scenario: unreliable index outside [N] or repeated");
      seen[q] = 1;
    }
    if (A < 0 || A > mu()) throw InvalidParams("scenario: A must lie in 0..mu");
    if (!byz_workers.empty()) {
      if (static_cast<int>(byz_workers.size()) != A) throw InvalidParams("scenario: explicit Byzantine list must have A entries");
      std::vector<char> s2(enc.N + 1, 0);
      for (int w : byz_workers) {
        if (w < 1 || w > mu() || s2[w]) throw InvalidParams("scenario: Byzantine worker must be a distinct unreliable worker id");
        s2[w] = 1;
      }
    }
    if (bases == BaseDesign::Weak && !(p > 0.0 && p < 1.0)) throw InvalidParams("scenario: p must lie in (0,1)");
    if (precision.variance < 0.0) throw InvalidParams("scenario: precision variance must be >= 0");
    if (!(noise_var >= 0.0)) throw InvalidParams("scenario: noise variance must be >= 0");
    if (trials < 1) throw InvalidParams("scenario: trials must be >= 1");
    if (vprime < 0) throw InvalidParams("scenario: vprime must be >= 0");
    if (!(rank_tol > 0.0 && rank_tol < 1.0)) throw InvalidParams("scenario: rank_tol must lie in (0,1)");
    if (rank_floor < 0.0) throw InvalidParams("scenario: rank_floor must be >= 0");
    if (enum_limit < 1) throw InvalidParams("scenario: enum_limit must be >= 1");
  }
};

struct TrialRecord {
  std::string scenario;
  std::uint64_t seed = 0;
  int A = 0;
  double variance = 0.0;
  Strategy strategy = Strategy::Independent;
  double e_rel = 0.0;
  bool loc_correct = true;
  bool capability_exceeded = false;
  int union_violations = 0;  // joint: codewords batches whose root union exceeded v
  double wall_ms = 0.0;

  double e_rel_db() const { return to_db(e_rel); }
};

struct DecodeOutcome {
  CMatrix corrected;
  bool loc_correct = true;
  bool capability_exceeded = false;
  int union_violations = 0;
};

/// Syndrome decoding of every codeword row. truth[c] is the sorted true support of row c.
inline DecodeOutcome decode_words(const DftCode& code, const CMatrix& words, const std::vector<std::vector<int>>& truth,
                                  const Scenario& sc, const std::vector<int>& candidates, Rng& rng) {
  DecodeOutcome out;
  out.corrected = words;
  if (sc.strategy == Strategy::None) {
    for (auto& t : truth) out.loc_correct = out.loc_correct && t.empty();
    return out;
  }
  const int M = static_cast<int>(words.rows()), N = code.N;
  std::vector<CVector> syn(M);
  std::vector<LocatorPolynomial> polys(M);
  std::vector<int> count(M, 0);
  for (int c = 0; c < M; ++c) {
    CVector r = words.row(c).transpose();
    syn[c] = syndrome(code, r);
    ErrorCountMode mode = sc.count_mode == ErrorCountMode::Oracle ? ErrorCountMode::oracle(static_cast<int>(truth[c].size()))
                                                                  : ErrorCountMode::rank(sc.rank_tol, sc.rank_floor);
    try {
      count[c] = estimate_error_count(code, syn[c], mode);
    } catch (const CapabilityExceeded&) {
      out.capability_exceeded = true;
      count[c] = code.v;
    }
    count[c] = std::min<int>(count[c], static_cast<int>(candidates.size()));
    if (count[c] == 0) continue;
    polys[c] = locator_polynomial(code, syn[c], count[c]);
    if (sc.precision.mode == PrecisionModel::LocatorDirect && sc.precision.variance > 0.0)
      polys[c] = perturb_locator(polys[c], sc.precision.variance, rng);
  }

  std::vector<std::vector<int>> found(M);
  if (sc.strategy == Strategy::Joint) {
    std::vector<LocatorPolynomial> active;
    std::vector<int> rows;
    for (int c = 0; c < M; ++c)
      if (count[c] > 0) { active.push_back(polys[c]); rows.push_back(c); }
    if (!active.empty()) {
      auto js = build_joint_set(active, code.v);
      JointConfig cfg{code.v, sc.vprime, js.polys, sc.enum_limit};
      auto res = joint_localize(cfg, N, candidates, rng);
      out.union_violations = res.union_exceeds_v ? 1 : 0;
      for (std::size_t a = 0; a < active.size(); ++a) found[rows[a]] = res.per_poly[js.owner[a]];
    }
  } else {
    for (int c = 0; c < M; ++c)
      if (count[c] > 0) found[c] = independent_localize(polys[c], count[c], N, candidates);
  }

  for (int c = 0; c < M; ++c) {
    if (found[c] != truth[c]) out.loc_correct = false;
    if (found[c].empty()) continue;
    CVector r = words.row(c).transpose();
    CVector vals = recover_error_values(code, syn[c], found[c]);
    out.corrected.row(c) = correct_codeword(r, found[c], vals).transpose();
  }
  if (out.capability_exceeded) out.loc_correct = false;
  return out;
}

/// encode -> compute -> inject -> decode -> reconstruct -> compare with the centralized result.
inline TrialRecord run_trial(const Scenario& sc, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  sc.validate();
  const MatrixFunction f = sc.f();
  EncodingParams enc = sc.enc;
  enc.D = f.degree;
  enc.psi = sc.psi();
  const int N = enc.N;

  Rng rng(seed);
  DatasetBatch batch = make_batch(enc, sc.m, sc.n, rng);
  ShareSet shares = encode_shares(batch, enc);
  auto held = assign_shares(shares, enc.psi);  // held[w-1]

  std::vector<CMatrix> results(N);
  for (int w = 0; w < N; ++w) results[w] = worker_compute(f, held[w].U, sc.precision);
  const int u = static_cast<int>(results[0].rows()), h = static_cast<int>(results[0].cols());
  const int M = u * h;

  ByzantinePlan plan;
  plan.noise_mean = sc.noise_mean;
  plan.noise_var = sc.noise_var;
  if (!sc.byz_workers.empty()) {
    plan.workers = sc.byz_workers;
  } else if (sc.A > 0) {
    std::vector<int> pool(sc.mu());
    std::iota(pool.begin(), pool.end(), 1);
    for (int a = 0; a < sc.A; ++a) {
      std::uniform_int_distribution<int> d(a, sc.mu() - 1);
      std::swap(pool[a], pool[d(rng)]);
    }
    plan.workers.assign(pool.begin(), pool.begin() + sc.A);
    std::sort(plan.workers.begin(), plan.workers.end());
  }
  switch (sc.bases) {
    case BaseDesign::AllOne: plan.beff = all_one_bases(M, sc.A); break;
    case BaseDesign::Strong:
      plan.beff = sc.A > 0 ? design_strong_collusion(M, sc.A, rng) : all_one_bases(M, 0);
      break;
    case BaseDesign::Weak:
      plan.beff = sc.A > 0 ? design_weak_collusion(M, sc.A, sc.p, rng) : all_one_bases(M, 0);
      break;
  }
  auto returned = inject(results, plan, sc.precision, derive_seed(seed, 0x1A, 0));

  CMatrix words(M, N);
  for (int w = 0; w < N; ++w) {
    const int col = held[w].eval_index - 1;
    for (int r = 0; r < u; ++r)
      for (int c = 0; c < h; ++c) words(r * h + c, col) = returned[w](r, c);
  }
  std::vector<int> eval_of_worker(N + 1);
  for (int w = 0; w < N; ++w) eval_of_worker[held[w].worker] = held[w].eval_index;
  std::vector<std::vector<int>> truth(M);
  for (int c = 0; c < M; ++c) {
    for (int a = 0; a < plan.A(); ++a)
      if (plan.beff.B(c, a)) truth[c].push_back(eval_of_worker[plan.workers[a]]);
    std::sort(truth[c].begin(), truth[c].end());
  }

  const DftCode code = build_code(N, enc.K());
  std::vector<int> cand = all_indices(N);
  if (sc.strategy == Strategy::Restricted && !sc.unreliable.empty()) {
    cand = sc.unreliable;
    std::sort(cand.begin(), cand.end());
  }
  auto dec = decode_words(code, words, truth, sc, cand, rng);

  auto est = reconstruct(dec.corrected, enc, u, h);
  std::vector<RMatrix> ref;
  for (auto& x : batch.X) ref.push_back(f.apply_real(x));

  TrialRecord rec;
  rec.scenario = sc.name;
  rec.seed = seed;
  rec.A = sc.A;
  rec.variance = sc.precision.variance;
  rec.strategy = sc.strategy;
  rec.e_rel = relative_error(ref, est);
  rec.loc_correct = dec.loc_correct;
  rec.capability_exceeded = dec.capability_exceeded || sc.A > code.v;
  rec.union_violations = dec.union_violations;
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

inline int thread_count() {
  if (const char* e = std::getenv("ALCC_THREADS")) {
    int n = std::atoi(e);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs job(i) for i in [0,n) on a pool; results land at their index.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F job, int threads = thread_count()) {
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed) {
      std::size_t i = next++;
      if (i >= n) break;
      try {
        out[i] = job(i);
      } catch (...) {
        if (!failed.exchange(true)) err = std::current_exception();
      }
    }
  };
  const int t = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
  return out;
}

inline std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct GridPoint {
  Scenario sc;
  std::uint64_t seed_key = 0;  // shared by points that differ only in A or strategy
};

struct SweepSpec {
  std::vector<int> A;
  std::vector<double> variance;
  std::vector<Strategy> strategy;
  std::vector<int> vprime;
  std::vector<double> p;
  std::vector<std::vector<int>> assignment;
};

/// Cartesian grid in a fixed nesting order; sub-seeds ignore the A and strategy axes so
/// those comparisons are paired trial by trial.
inline std::vector<GridPoint> expand_grid(const Scenario& base, const SweepSpec& g) {
  auto A = g.A.empty() ? std::vector<int>{base.A} : g.A;
  auto var = g.variance.empty() ? std::vector<double>{base.precision.variance} : g.variance;
  auto st = g.strategy.empty() ? std::vector<Strategy>{base.strategy} : g.strategy;
  auto vp = g.vprime.empty() ? std::vector<int>{base.vprime} : g.vprime;
  auto pp = g.p.empty() ? std::vector<double>{base.p} : g.p;
  auto as = g.assignment.empty() ? std::vector<std::vector<int>>{base.unreliable} : g.assignment;
  std::vector<GridPoint> out;
  std::uint64_t key = 0;
  for (auto& P : as)
    for (double p : pp)
      for (int v : vp)
        for (double s2 : var) {
          for (int a : A)
            for (Strategy s : st) {
              GridPoint gp{base, key};
              gp.sc.unreliable = P;
              gp.sc.p = p;
              gp.sc.vprime = v;
              gp.sc.precision.variance = s2;
              gp.sc.A = a;
              gp.sc.strategy = s;
              if (!gp.sc.byz_workers.empty() && static_cast<int>(gp.sc.byz_workers.size()) != a)
                gp.sc.byz_workers.clear();
              std::string tag;
              if (g.assignment.size() > 1) {
                tag += "/P=";
                for (std::size_t i = 0; i < P.size(); ++i) tag += (i ? "-" : "") + std::to_string(P[i]);
              }
              if (g.p.size() > 1) tag += "/p=" + fmt("%g", p);
              if (g.vprime.size() > 1) tag += "/vprime=" + std::to_string(v);
              gp.sc.name += tag;
              gp.sc.validate();
              out.push_back(std::move(gp));
            }
          ++key;
        }
  return out;
}

struct SweepResult {
  std::vector<GridPoint> grid;
  std::vector<std::vector<TrialRecord>> trials;  // per grid point

  double mean_e_rel(std::size_t g) const {
    double s = 0.0;
    for (auto& r : trials[g]) s += r.e_rel;
    return s / trials[g].size();
  }
  double mean_db(std::size_t g) const { return to_db(mean_e_rel(g)); }
  double loc_rate(std::size_t g) const {
    double s = 0.0;
    for (auto& r : trials[g]) s += r.loc_correct ? 1.0 : 0.0;
    return s / trials[g].size();
  }
};

inline SweepResult run_sweep(const Scenario& base, const SweepSpec& spec, int threads = thread_count()) {
  SweepResult res;
  res.grid = expand_grid(base, spec);
  const std::size_t G = res.grid.size(), T = static_cast<std::size_t>(base.trials);
  auto flat = parallel_map<TrialRecord>(G * T, [&](std::size_t i) {
    const auto& gp = res.grid[i / T];
    return run_trial(gp.sc, derive_seed(base.seed, gp.seed_key, i % T));
  }, threads);
  res.trials.resize(G);
  for (std::size_t g = 0; g < G; ++g) res.trials[g].assign(flat.begin() + g * T, flat.begin() + (g + 1) * T);
  return res;
}

inline const char* kCsvHeader = "scenario,seed,A,sigma_p2,strategy,e_rel,e_rel_db,loc_correct";

inline void write_trial_row(std::ostream& os, const TrialRecord& r) {
  os << r.scenario << ',' << r.seed << ',' << r.A << ',' << fmt("%.6g", r.variance) << ',' << strategy_name(r.strategy)
     << ',' << fmt("%.10e", r.e_rel) << ',' << fmt("%.4f", r.e_rel_db()) << ',' << (r.loc_correct ? 1 : 0) << '\n';
}

/// Trial rows in grid order, then one aggregate row per grid point (seed column "mean",
/// loc_correct column holds the correct-localization rate).
inline void write_csv(std::ostream& os, const SweepResult& res, bool trial_rows = true) {
  os << kCsvHeader << '\n';
  if (trial_rows)
    for (auto& v : res.trials)
      for (auto& r : v) write_trial_row(os, r);
  for (std::size_t g = 0; g < res.grid.size(); ++g) {
    const auto& sc = res.grid[g].sc;
    os << sc.name << ",mean," << sc.A << ',' << fmt("%.6g", sc.precision.variance) << ',' << strategy_name(sc.strategy)
       << ',' << fmt("%.10e", res.mean_e_rel(g)) << ',' << fmt("%.4f", res.mean_db(g)) << ','
       << fmt("%.4f", res.loc_rate(g)) << '\n';
  }
}

// ---- configuration ----

inline PrecisionModel::Mode parse_precision(const std::string& s) {
  if (s == "none") return PrecisionModel::None;
  if (s == "synthetic") return PrecisionModel::Synthetic;
  if (s == "locator-direct") return PrecisionModel::LocatorDirect;
  if (s == "native-reduced") return PrecisionModel::NativeReduced;
  throw InvalidParams("unknown precision mode: " + s);
}

inline BaseDesign parse_bases(const std::string& s) {
  if (s == "all-one") return BaseDesign::AllOne;
  if (s == "strong") return BaseDesign::Strong;
  if (s == "weak") return BaseDesign::Weak;
  throw InvalidParams("unknown base design: " + s);
}

inline std::vector<std::vector<int>> parse_sets(const Config& c, const std::string& key) {
  std::vector<std::vector<int>> out;
  for (auto& item : c.list(key, ';')) {
    Config tmp;
    tmp.set("x", item);
    out.push_back(tmp.int_list("x"));
  }
  return out;
}

inline Scenario scenario_from_config(const Config& c) {
  Scenario s;
  s.name = c.str("run.name", s.name);
  if (s.name.empty() || s.name.find_first_of(",\n\"") != std::string::npos)
    throw InvalidParams("run.name must be non-empty and free of commas/quotes");
  s.trials = static_cast<int>(c.integer("run.trials", s.trials));
  s.seed = static_cast<std::uint64_t>(c.integer("run.seed", static_cast<long long>(s.seed)));

  s.enc.N = static_cast<int>(c.integer("encoding.N", s.enc.N));
  s.enc.k = static_cast<int>(c.integer("encoding.k", s.enc.k));
  s.enc.t = static_cast<int>(c.integer("encoding.t", s.enc.t));
  s.enc.beta = c.real("encoding.beta", s.enc.beta);
  s.enc.sigma_pad = c.real("encoding.sigma", s.enc.sigma_pad);
  s.m = static_cast<int>(c.integer("encoding.m", s.m));
  s.n = static_cast<int>(c.integer("encoding.n", s.n));
  s.function = c.str("encoding.function", s.function);

  s.unreliable = c.int_list("trust.unreliable");

  s.A = static_cast<int>(c.integer("byzantine.A", s.A));
  auto loc = c.str("byzantine.locations", "random");
  if (loc != "random") s.byz_workers = c.int_list("byzantine.locations");
  s.bases = parse_bases(c.str("byzantine.bases", "all-one"));
  s.p = c.real("byzantine.p", s.p);
  s.noise_mean = cplx(c.real("byzantine.noise_mean", 10.0), c.real("byzantine.noise_mean_im", 0.0));
  s.noise_var = c.real("byzantine.noise_var", s.noise_var);

  s.precision.mode = parse_precision(c.str("precision.mode", "none"));
  s.precision.variance = c.real("precision.variance", 0.0);

  s.strategy = parse_strategy(c.str("decoder.strategy", "independent"));
  auto cm = c.str("decoder.count", "oracle");
  if (cm == "oracle") s.count_mode = ErrorCountMode::Oracle;
  else if (cm == "rank") s.count_mode = ErrorCountMode::Rank;
  else throw InvalidParams("decoder.count must be oracle or rank");
  s.rank_tol = c.real("decoder.rank_tol", s.rank_tol);
  s.rank_floor = c.real("decoder.rank_floor", s.rank_floor);
  s.vprime = static_cast<int>(c.integer("decoder.vprime", s.vprime));
  s.enum_limit = c.integer("decoder.enum_limit", s.enum_limit);
  s.validate();
  return s;
}

inline SweepSpec sweep_from_config(const Config& c) {
  SweepSpec g;
  g.A = c.int_list("sweep.A");
  g.variance = c.real_list("sweep.variance");
  for (auto& s : c.list("sweep.strategy")) g.strategy.push_back(parse_strategy(s));
  g.vprime = c.int_list("sweep.vprime");
  g.p = c.real_list("sweep.p");
  g.assignment = parse_sets(c, "sweep.assignment");
  return g;
}

inline void reject_unused(const Config& c) {
  auto u = c.unused();
  if (!u.empty()) throw InvalidParams("unknown config key: " + u.front());
}

// ---- exhaustive decoder oracle ----

struct OracleReport {
  long long cases = 0;
  long long support_failures = 0;
  long long value_failures = 0;
  long long count_failures = 0;  // rank-mode count disagreeing with the true count
  double worst_rel = 0.0;

  bool ok() const { return support_failures == 0 && value_failures == 0 && count_failures == 0; }
};

/// Every support of size <= v, `draws` random error vectors with |e| >= 1, no precision noise.
inline OracleReport decoder_oracle(int N, int K, int draws, std::uint64_t seed, double tol = 1e-6) {
  const DftCode code = build_code(N, K);
  OracleReport rep;
  Rng rng(seed);
  std::uniform_real_distribution<double> mag(1.0, 10.0), ph(0.0, 2.0 * kPi);
  const auto cand = all_indices(N);
  for (int A = 0; A <= code.v; ++A) {
    std::vector<int> c(A);
    std::iota(c.begin(), c.end(), 0);
    do {
      std::vector<int> L(A);
      for (int a = 0; a < A; ++a) L[a] = c[a] + 1;
      for (int d = 0; d < draws; ++d) {
        CVector msg(K);
        for (int j = 0; j < K; ++j) msg(j) = cn(rng, 0.0, 1.0);
        CVector clean = code.G.transpose() * msg;
        CVector r = clean;
        for (int q : L) r(q - 1) += std::polar(mag(rng), ph(rng));
        CVector s = syndrome(code, r);
        ++rep.cases;
        if (estimate_error_count(code, s, ErrorCountMode::rank(1e-6, 1e-9 * r.norm())) != A) ++rep.count_failures;
        std::vector<int> found;
        if (A > 0) found = independent_localize(locator_polynomial(code, s, A), A, N, cand);
        if (found != L) { ++rep.support_failures; continue; }
        CVector fixed = correct_codeword(r, found, recover_error_values(code, s, found));
        double rel = (fixed - clean).norm() / clean.norm();
        rep.worst_rel = std::max(rep.worst_rel, rel);
        if (!(rel <= tol)) ++rep.value_failures;
      }
    } while (A > 0 && detail::next_combination(c, N));
  }
  return rep;
}

} // namespace alcc
