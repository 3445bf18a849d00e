#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "clipscale/clipscale.hpp"
#include "json.hpp"

namespace clipscale::cli {

namespace {

using nlohmann::json;

// Streams every well-formed record to handle(); handle returns false when it
// emitted a failure-status record. Rejected lines go to the diagnostic
// stream with their line number.
int process_records(
    std::istream& in, std::ostream& diag, const IoOptions& opt,
    RecordMode mode,
    const std::function<bool(const InstanceRecord&, std::size_t)>& handle) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t index = 0;
  bool any_rejected = false;
  bool any_failed = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::size_t record_index = index++;

    try {
      InstanceRecord rec;
      if (opt.format == Format::csv) {
        rec = parse_csv_record(line, opt.csv);
        if (mode != RecordMode::noise && !rec.delta) {
          throw std::invalid_argument("csv input requires --delta-cols");
        }
        if (mode == RecordMode::noise && rec.delta) {
          throw std::invalid_argument(
              "noise draws its own direction; drop --delta-cols");
        }
      } else {
        rec = parse_record(json::parse(line), mode);
      }
      if (!handle(rec, record_index)) any_failed = true;
    } catch (const std::exception& e) {
      diag << "line " << line_no << ": " << e.what() << '\n';
      any_rejected = true;
    }
  }

  if (any_rejected) return kExitUsage;
  if (any_failed) return kExitRecordFailed;
  return kExitOk;
}

void emit(std::ostream& out, const IoOptions& opt, const SolutionRecord& rec) {
  if (opt.format == Format::csv) {
    out << to_csv(rec) << '\n';
  } else {
    out << to_json(rec).dump() << '\n';
  }
}

std::vector<double> perturbed_point(const ProblemInstance& inst, double eta) {
  std::vector<double> v(inst.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = inst.x()[i] + eta * inst.delta()[i];
  }
  return clip(v, inst.bounds());
}

// Solves one instance into a status record; shared by solve and noise.
SolutionRecord solve_to_record(const ProblemInstance& inst,
                               std::optional<std::string> id,
                               bool emit_vector) {
  SolutionRecord rec;
  rec.id = std::move(id);
  try {
    const EtaSolution sol = solve_eta(inst);
    rec.eta = sol.eta;
    rec.achieved_norm = sol.achieved_norm;
    rec.saturated_count = sol.saturated_count;
    if (emit_vector) rec.v = perturbed_point(inst, sol.eta);
  } catch (const UnreachableError& e) {
    rec.status = RecordStatus::unreachable;
    rec.max_norm = e.max_norm();
  } catch (const ZeroDeltaError&) {
    rec.status = RecordStatus::zero_delta;
  }
  return rec;
}

}  // namespace

std::mt19937_64 record_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> draw_direction(std::mt19937_64& rng, std::size_t n,
                                   NoiseConfig::Dist dist) {
  std::vector<double> delta(n);
  if (dist == NoiseConfig::Dist::gaussian) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& d : delta) d = gauss(rng);
  } else {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (auto& d : delta) d = uni(rng);
  }
  return delta;
}

int run_solve(std::istream& in, std::ostream& out, std::ostream& diag,
              const IoOptions& opt) {
  return process_records(
      in, diag, opt, RecordMode::solve,
      [&](const InstanceRecord& rec, std::size_t) {
        const auto prm = effective_params(rec, opt.defaults, /*need_eps=*/true);
        SolutionRecord sol;
        try {
          ProblemInstance inst(rec.x, *rec.delta, prm.eps, prm.p,
                               DomainBounds(prm.a, prm.b));
          sol = solve_to_record(inst, prm.id, opt.emit_vector);
        } catch (const ZeroDeltaError&) {
          sol.id = prm.id;
          sol.status = RecordStatus::zero_delta;
        }
        emit(out, opt, sol);
        return sol.status == RecordStatus::ok;
      });
}

int run_norm(std::istream& in, std::ostream& out, std::ostream& diag,
             const IoOptions& opt) {
  return process_records(
      in, diag, opt, RecordMode::norm,
      [&](const InstanceRecord& rec, std::size_t) {
        const auto prm = effective_params(rec, opt.defaults, /*need_eps=*/false);
        if (!prm.eta) {
          throw std::invalid_argument("record has no 'eta' and --eta was not given");
        }
        if (!(*prm.eta >= 0.0) || !std::isfinite(*prm.eta)) {
          throw std::invalid_argument("eta must be finite and non-negative");
        }
        ProblemInstance inst(rec.x, *rec.delta, prm.eps, prm.p,
                             DomainBounds(prm.a, prm.b));
        json j;
        if (prm.id) j["id"] = *prm.id;
        j["eta"] = *prm.eta;
        j["norm"] = effective_norm(inst, *prm.eta);
        j["max_norm"] = max_effective_norm(inst);
        if (opt.format == Format::csv) {
          std::ostringstream line;
          line.precision(17);
          line << (prm.id ? *prm.id : "") << ',' << *prm.eta << ','
               << j["norm"].get<double>() << ',' << j["max_norm"].get<double>();
          out << line.str() << '\n';
        } else {
          out << j.dump() << '\n';
        }
        return true;
      });
}

int run_grad(std::istream& in, std::ostream& out, std::ostream& diag,
             const IoOptions& opt) {
  return process_records(
      in, diag, opt, RecordMode::grad,
      [&](const InstanceRecord& rec, std::size_t) {
        const auto prm = effective_params(rec, opt.defaults, /*need_eps=*/true);
        GradientRecord grec;
        grec.id = prm.id;
        try {
          ProblemInstance inst(rec.x, *rec.delta, prm.eps, prm.p,
                               DomainBounds(prm.a, prm.b));
          const EtaSolution sol = solve_eta(inst);
          const EtaGradient grad = gradient_eta(inst, sol);
          grec.eta = sol.eta;
          grec.d_eps = grad.d_eps;
          grec.d_x = grad.d_x;
          grec.d_delta = grad.d_delta;
          grec.at_breakpoint = grad.at_breakpoint;
        } catch (const UnreachableError& e) {
          grec.status = RecordStatus::unreachable;
          grec.max_norm = e.max_norm();
        } catch (const ZeroDeltaError&) {
          grec.status = RecordStatus::zero_delta;
        } catch (const DegenerateGradientError&) {
          grec.status = RecordStatus::degenerate;
        }
        out << to_json(grec).dump() << '\n';
        return grec.status == RecordStatus::ok;
      });
}

int run_noise(std::istream& in, std::ostream& out, std::ostream& diag,
              const IoOptions& opt, const NoiseConfig& noise) {
  return process_records(
      in, diag, opt, RecordMode::noise,
      [&](const InstanceRecord& rec, std::size_t index) {
        const auto prm = effective_params(rec, opt.defaults, /*need_eps=*/true);
        auto rng = record_rng(noise.seed, index);
        const auto delta = draw_direction(rng, rec.x.size(), noise.dist);

        SolutionRecord sol;
        const bool all_zero =
            std::all_of(delta.begin(), delta.end(),
                        [](double d) { return d == 0.0; });
        if (all_zero) {
          sol.id = prm.id;
          sol.status = RecordStatus::zero_delta;
        } else {
          ProblemInstance inst(rec.x, delta, prm.eps, prm.p,
                               DomainBounds(prm.a, prm.b));
          sol = solve_to_record(inst, prm.id, /*emit_vector=*/true);
        }
        emit(out, opt, sol);
        return sol.status == RecordStatus::ok;
      });
}

int run_bench(std::ostream& out, std::ostream& diag, const BenchConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const DomainBounds unit(0.0, 1.0);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  std::uniform_real_distribution<double> ufrac(0.3, 0.9);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto make_instance = [&]() {
    std::vector<double> x(cfg.n), delta(cfg.n);
    for (auto& v : x) v = ux(rng);
    for (auto& d : delta) d = gauss(rng);
    ProblemInstance base(std::move(x), std::move(delta), 0.0, cfg.p, unit);
    return base.with_eps(ufrac(rng) * max_effective_norm(base));
  };

  auto emit_trial = [&](int trial, const char* method, long long nanos,
                        double eta, long long iters) {
    json j;
    j["n"] = cfg.n;
    j["method"] = method;
    j["nanos"] = nanos;
    j["eta"] = eta;
    j["iters"] = iters;
    j["trial"] = trial;
    out << j.dump() << '\n';
  };

  // One untimed warmup solve settles allocators and caches.
  {
    const auto inst = make_instance();
    (void)solve_eta(inst);
    (void)solve_eta_bisect(inst, cfg.bisect_tol, 1000);
  }

  double total_analytic = 0.0;
  double total_bisect = 0.0;
  double max_abs_diff = 0.0;
  double max_rel_diff = 0.0;
  long long total_bisect_iters = 0;

  for (int trial = 0; trial < cfg.trials; ++trial) {
    const auto inst = make_instance();

    const auto t0 = clock::now();
    const EtaSolution sol = solve_eta(inst);
    const auto t1 = clock::now();
    BisectStats stats;
    const double bisected = solve_eta_bisect(inst, cfg.bisect_tol, 1000, &stats);
    const auto t2 = clock::now();

    const auto analytic_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    const auto bisect_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1).count();
    const long long bisect_iters = stats.doublings + stats.iterations;

    emit_trial(trial, "analytic", analytic_ns, sol.eta, 1);
    emit_trial(trial, "bisect", bisect_ns, bisected, bisect_iters);

    total_analytic += double(analytic_ns);
    total_bisect += double(bisect_ns);
    total_bisect_iters += bisect_iters;
    const double diff = std::abs(sol.eta - bisected);
    max_abs_diff = std::max(max_abs_diff, diff);
    max_rel_diff =
        std::max(max_rel_diff, diff / std::max({sol.eta, bisected, 1e-300}));
  }

  if (cfg.batch > 0) {
    std::vector<double> xs(cfg.batch * cfg.n), ds(cfg.batch * cfg.n);
    std::vector<double> eps(cfg.batch);
    for (std::size_t r = 0; r < cfg.batch; ++r) {
      const auto inst = make_instance();
      std::copy(inst.x().begin(), inst.x().end(), xs.begin() + r * cfg.n);
      std::copy(inst.delta().begin(), inst.delta().end(), ds.begin() + r * cfg.n);
      eps[r] = inst.eps();
    }
    const auto t0 = clock::now();
    const auto rows = solve_eta_batch(xs, ds, eps, cfg.n, cfg.p, unit);
    const auto t1 = clock::now();
    const auto per_row =
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count() /
        static_cast<long long>(cfg.batch);
    emit_trial(0, "batch", per_row, rows.front().solution.eta, 1);
  }

  const double mean_analytic = total_analytic / std::max(cfg.trials, 1);
  const double mean_bisect = total_bisect / std::max(cfg.trials, 1);
  diag << "n=" << cfg.n << " trials=" << cfg.trials << " p=" << cfg.p
       << " tol=" << cfg.bisect_tol << '\n'
       << "analytic mean " << mean_analytic / 1e6 << " ms/solve (1 pass)\n"
       << "bisect   mean " << mean_bisect / 1e6 << " ms/solve ("
       << (cfg.trials > 0 ? total_bisect_iters / cfg.trials : 0)
       << " evaluations avg)\n"
       << "max disagreement " << max_abs_diff << " abs, " << max_rel_diff
       << " rel\n"
       << "speedup x" << (mean_analytic > 0 ? mean_bisect / mean_analytic : 0.0)
       << '\n';
  return kExitOk;
}

}  // namespace clipscale::cli
