#include "bernopt/solver.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace bernopt {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const NlpProblem::Eval& e) {
  if (!std::isfinite(e.objective)) return false;
  for (double v : e.eq)
    if (!std::isfinite(v)) return false;
  for (double v : e.ineq)
    if (!std::isfinite(v)) return false;
  return true;
}

double violation_of(const NlpProblem::Eval& e) {
  double v = 0.0;
  for (double h : e.eq) v = std::max(v, std::abs(h));
  for (double g : e.ineq) v = std::max(v, g);
  return std::max(v, 0.0);
}

struct Multipliers {
  std::vector<double> eq;
  std::vector<double> ineq;
  double mu = 1.0;
};

double merit_of(const NlpProblem::Eval& e, const Multipliers& m, double f_scale) {
  if (!all_finite(e)) return std::numeric_limits<double>::infinity();
  double val = e.objective / f_scale;
  for (size_t i = 0; i < e.eq.size(); ++i)
    val += m.eq[i] * e.eq[i] + 0.5 * m.mu * e.eq[i] * e.eq[i];
  for (size_t j = 0; j < e.ineq.size(); ++j) {
    const double t = std::max(0.0, m.ineq[j] + m.mu * e.ineq[j]);
    val += (t * t - m.ineq[j] * m.ineq[j]) / (2.0 * m.mu);
  }
  return val;
}

struct MeritFn {
  const NlpProblem* problem;
  const Multipliers* mult;
  double f_scale;
  mutable long evals = 0;

  double operator()(const std::vector<double>& x) const {
    ++evals;
    return merit_of(problem->eval_all(x), *mult, f_scale);
  }
};

std::vector<double> fd_gradient(const MeritFn& f, const std::vector<double>& x, double f0,
                                double rel_step) {
  std::vector<double> g(x.size());
  std::vector<double> xp = x;
  for (size_t i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x[i]));
    xp[i] = x[i] + h;
    const double fp = f(xp);
    g[i] = (fp - f0) / h;
    xp[i] = x[i];
  }
  return g;
}

// L-BFGS two-loop direction with Armijo backtracking. Minimizes the merit for
// fixed multipliers; only accepts decreases, so the per-outer merit trace is
// monotone by construction.
struct InnerResult {
  std::vector<double> x;
  double merit;
  int iterations;
};

bool trace_enabled() {
  static const bool on = std::getenv("BERNOPT_SOLVER_TRACE") != nullptr;
  return on;
}

InnerResult minimize_merit(const MeritFn& f, std::vector<double> x, const SolverOptions& opts) {
  const size_t mem = 10;
  std::deque<std::pair<std::vector<double>, std::vector<double>>> history;  // (s, y)

  double fx = f(x);
  std::vector<double> g = fd_gradient(f, x, fx, opts.fd_step);
  int iter = 0;
  int tiny_steps = 0;
  for (; iter < opts.max_inner_iters; ++iter) {
    bool g_finite = true;
    for (double v : g) g_finite = g_finite && std::isfinite(v);
    if (!g_finite) break;
    const double gnorm = inf_norm(g);
    if (trace_enabled() && iter < 4)
      std::fprintf(stderr, "    inner %d: f=%.10g gnorm=%.3e\n", iter, fx, gnorm);
    if (gnorm <= 1e-9 * (1.0 + std::abs(fx))) break;

    // Two-loop recursion.
    std::vector<double> d = g;
    for (double& v : d) v = -v;
    std::vector<double> alpha_hist(history.size());
    for (size_t k = history.size(); k-- > 0;) {
      const auto& [s, y] = history[k];
      double sy = 0.0, sd = 0.0;
      for (size_t i = 0; i < x.size(); ++i) {
        sy += s[i] * y[i];
        sd += s[i] * d[i];
      }
      alpha_hist[k] = sd / sy;
      for (size_t i = 0; i < x.size(); ++i) d[i] -= alpha_hist[k] * y[i];
    }
    if (!history.empty()) {
      const auto& [s, y] = history.back();
      double sy = 0.0, yy = 0.0;
      for (size_t i = 0; i < x.size(); ++i) {
        sy += s[i] * y[i];
        yy += y[i] * y[i];
      }
      const double gamma = (yy > 0.0) ? sy / yy : 1.0;
      for (double& v : d) v *= gamma;
      for (size_t k = 0; k < history.size(); ++k) {
        const auto& [s2, y2] = history[k];
        double sy2 = 0.0, yd = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
          sy2 += s2[i] * y2[i];
          yd += y2[i] * d[i];
        }
        const double beta = yd / sy2;
        for (size_t i = 0; i < x.size(); ++i) d[i] += (alpha_hist[k] - beta) * s2[i];
      }
    } else {
      const double scale = 1.0 / std::max(1.0, gnorm);
      for (double& v : d) v *= scale;
    }

    double gd = 0.0;
    for (size_t i = 0; i < x.size(); ++i) gd += g[i] * d[i];
    if (!(gd < 0.0)) {  // not a descent direction: restart from steepest descent
      history.clear();
      d = g;
      const double scale = 1.0 / std::max(1.0, gnorm);
      for (double& v : d) v = -v * scale;
      gd = 0.0;
      for (size_t i = 0; i < x.size(); ++i) gd += g[i] * d[i];
      if (!(gd < 0.0)) break;
    }

    // Armijo backtracking; on failure retry once from steepest descent (the
    // quasi-Newton direction can point uphill at kinks of extrema-reduced
    // constraints).
    auto line_search = [&](const std::vector<double>& dir, double slope, double& step_out,
                           std::vector<double>& x_out, double& f_out) {
      double step = 1.0;
      for (int bt = 0; bt < 30; ++bt) {
        for (size_t i = 0; i < x.size(); ++i) x_out[i] = x[i] + step * dir[i];
        f_out = f(x_out);
        if (std::isfinite(f_out) && f_out <= fx + 1e-4 * step * slope) {
          step_out = step;
          // Expand while the decrease still tracks the full slope; keeps the
          // iteration from crawling down shallow valleys.
          if (bt == 0) {
            std::vector<double> x_try(x.size());
            for (int ex = 0; ex < 6; ++ex) {
              const double wide = step_out * 2.0;
              for (size_t i = 0; i < x.size(); ++i) x_try[i] = x[i] + wide * dir[i];
              const double f_try = f(x_try);
              if (!std::isfinite(f_try) || f_try > fx + 0.5 * wide * slope || f_try >= f_out)
                break;
              step_out = wide;
              x_out = x_try;
              f_out = f_try;
            }
          }
          return true;
        }
        step *= 0.5;
      }
      return false;
    };
    double step = 0.0;
    double f_new = std::numeric_limits<double>::infinity();
    std::vector<double> x_new(x.size());
    bool accepted = line_search(d, gd, step, x_new, f_new);
    if (!accepted && !history.empty()) {
      history.clear();
      const double scale = 1.0 / std::max(1.0, gnorm);
      for (size_t i = 0; i < x.size(); ++i) d[i] = -g[i] * scale;
      gd = 0.0;
      for (size_t i = 0; i < x.size(); ++i) gd += g[i] * d[i];
      accepted = line_search(d, gd, step, x_new, f_new);
    }
    if (!accepted) {
      // Kink rescue: gradient directions can all point uphill in a nonsmooth
      // valley (max-type constraints). Probe the coordinate axes at a few
      // scales and take any strict improvement; deterministic by order.
      bool moved = false;
      double delta = 1e-4;
      for (int round = 0; round < 3 && !moved; ++round, delta *= 0.1) {
        int best_i = -1;
        double best_f = fx, best_sign = 0.0;
        std::vector<double> xp = x;
        for (size_t i = 0; i < x.size(); ++i) {
          const double h = delta * std::max(1.0, std::abs(x[i]));
          for (double sgn : {1.0, -1.0}) {
            xp[i] = x[i] + sgn * h;
            const double fp = f(xp);
            if (std::isfinite(fp) && fp < best_f) {
              best_f = fp;
              best_i = static_cast<int>(i);
              best_sign = sgn;
            }
          }
          xp[i] = x[i];
        }
        if (best_i >= 0) {
          x[best_i] += best_sign * delta * std::max(1.0, std::abs(x[best_i]));
          fx = best_f;
          moved = true;
        }
      }
      if (!moved) {
        if (trace_enabled())
          std::fprintf(stderr, "    inner %d: line search failed (gd=%.3e)\n", iter, gd);
        break;
      }
      history.clear();
      g = fd_gradient(f, x, fx, opts.fd_step);
      continue;
    }

    const double dx_norm = step * inf_norm(d);
    std::vector<double> g_new = fd_gradient(f, x_new, f_new, opts.fd_step);
    std::vector<double> s(x.size()), y(x.size());
    double sy = 0.0, ss = 0.0, yy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      s[i] = x_new[i] - x[i];
      y[i] = g_new[i] - g[i];
      sy += s[i] * y[i];
      ss += s[i] * s[i];
      yy += y[i] * y[i];
    }
    if (sy > 1e-12 * std::sqrt(ss * yy)) {
      history.emplace_back(std::move(s), std::move(y));
      if (history.size() > mem) history.pop_front();
    }
    x = std::move(x_new);
    fx = f_new;
    g = std::move(g_new);
    tiny_steps = (dx_norm <= opts.step_tol * (1.0 + inf_norm(x))) ? tiny_steps + 1 : 0;
    if (tiny_steps >= 2) {
      ++iter;
      break;
    }
  }
  return {std::move(x), fx, iter};
}

}  // namespace

void NlpProblem::wire_eval_from_lists() {
  auto obj = objective;
  auto eqs = eq;
  auto ineqs = ineq;
  eval_all = [obj, eqs, ineqs](const std::vector<double>& x) {
    Eval e;
    e.objective = obj ? obj(x) : 0.0;
    e.eq.reserve(eqs.size());
    for (const auto& h : eqs) e.eq.push_back(h(x));
    e.ineq.reserve(ineqs.size());
    for (const auto& g : ineqs) e.ineq.push_back(g(x));
    return e;
  };
}

void NlpProblem::wire_lists_from_eval(size_t n_eq, size_t n_ineq) {
  struct Cache {
    std::mutex mutex;
    std::vector<double> x;
    Eval eval;
    bool valid = false;
  };
  auto cache = std::make_shared<Cache>();
  auto evaluator = eval_all;
  auto cached = [cache, evaluator](const std::vector<double>& x) {
    std::lock_guard<std::mutex> lock(cache->mutex);
    if (!cache->valid || cache->x != x) {
      cache->eval = evaluator(x);
      cache->x = x;
      cache->valid = true;
    }
    return cache->eval;
  };
  if (!objective)
    objective = [cached](const std::vector<double>& x) { return cached(x).objective; };
  eq.clear();
  for (size_t i = 0; i < n_eq; ++i)
    eq.push_back([cached, i](const std::vector<double>& x) { return cached(x).eq[i]; });
  ineq.clear();
  for (size_t j = 0; j < n_ineq; ++j)
    ineq.push_back([cached, j](const std::vector<double>& x) { return cached(x).ineq[j]; });
}

SolverResult solve(const NlpProblem& problem, const SolverOptions& opts) {
  if (!problem.eval_all) throw std::invalid_argument("solve: problem has no eval_all");
  if (static_cast<int>(problem.initial_guess.size()) != problem.dim)
    throw std::invalid_argument("solve: initial guess size does not match dim");
  if (!(opts.feasibility_tol > 0.0) || !(opts.step_tol > 0.0))
    throw std::invalid_argument("solve: tolerances must be positive");
  if (!(opts.penalty_growth > 1.0))
    throw std::invalid_argument("solve: penalty_growth must be > 1");

  std::vector<double> x = problem.initial_guess;
  NlpProblem::Eval e0 = problem.eval_all(x);
  if (!all_finite(e0))
    throw std::invalid_argument("solve: objective or constraint non-finite at initial guess");

  const double f_scale = std::max(1.0, std::abs(e0.objective));
  Multipliers mult;
  mult.eq.assign(e0.eq.size(), 0.0);
  mult.ineq.assign(e0.ineq.size(), 0.0);
  mult.mu = opts.penalty_init;

  SolverResult result;
  result.x = x;
  result.objective = e0.objective;
  result.max_violation = violation_of(e0);
  result.feasible = result.max_violation <= opts.feasibility_tol;

  auto better = [&](const NlpProblem::Eval& e, double viol) {
    const bool feas = viol <= opts.feasibility_tol;
    if (feas && result.feasible) return e.objective < result.objective;
    if (feas != result.feasible) return feas;
    return viol < result.max_violation;
  };

  long total_inner = 0;
  double prev_objective = e0.objective;
  std::vector<double> prev_x = x;
  // Safeguarded schedule: multipliers only move when the violation meets the
  // current target; otherwise the penalty grows (capped, since the
  // finite-difference merit turns to noise at extreme penalties). Targets
  // track the achieved violation so neither side runs away.
  const double mu_cap = 1e6;
  double eta = 0.25;
  int stagnant = 0;
  double best_viol_seen = result.max_violation;

  for (int outer = 0; outer < opts.max_outer_iters; ++outer) {
    MeritFn merit{&problem, &mult, f_scale};
    const double merit_before = merit(x);
    InnerResult inner = minimize_merit(merit, x, opts);
    x = inner.x;
    total_inner += inner.iterations;

    NlpProblem::Eval e = problem.eval_all(x);
    const double viol = violation_of(e);
    result.outer_log.push_back({merit_before, inner.merit, viol, mult.mu});

    if (better(e, viol)) {
      result.x = x;
      result.objective = e.objective;
      result.max_violation = viol;
      result.feasible = viol <= opts.feasibility_tol;
    }

    if (viol <= std::max(opts.feasibility_tol, eta)) {
      for (size_t i = 0; i < e.eq.size(); ++i)
        mult.eq[i] = std::clamp(mult.eq[i] + mult.mu * e.eq[i], -1e12, 1e12);
      for (size_t j = 0; j < e.ineq.size(); ++j)
        mult.ineq[j] = std::clamp(std::max(0.0, mult.ineq[j] + mult.mu * e.ineq[j]), 0.0, 1e12);
      eta = std::max(opts.feasibility_tol * 0.5, 0.3 * viol);
    } else {
      mult.mu = std::min(mult.mu * opts.penalty_growth, mu_cap);
      eta = std::max(opts.feasibility_tol * 0.5, 0.8 * viol);
    }

    // A violation that refuses to improve over many rounds will not start
    // improving at the penalty cap; report the best iterate honestly.
    if (viol < 0.95 * best_viol_seen) {
      best_viol_seen = viol;
      stagnant = 0;
    } else if (viol > opts.feasibility_tol && mult.mu >= mu_cap) {
      if (++stagnant >= 10) break;
    }

    const double dx = [&] {
      double m = 0.0;
      for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - prev_x[i]));
      return m;
    }();
    const bool stalled = dx <= 1e-10 * (1.0 + inf_norm(x)) &&
                         std::abs(e.objective - prev_objective) <=
                             1e-10 * (1.0 + std::abs(e.objective));
    prev_objective = e.objective;
    prev_x = x;
    if (viol <= opts.feasibility_tol && stalled) break;
  }

  result.iterations = static_cast<int>(total_inner);
  // Honest feasibility: re-evaluate at the returned point.
  NlpProblem::Eval e_final = problem.eval_all(result.x);
  result.objective = e_final.objective;
  result.max_violation = violation_of(e_final);
  result.feasible = result.max_violation <= opts.feasibility_tol;
  if (problem.decode) result.trajectories = problem.decode(result.x);
  if (problem.final_times) result.final_times = problem.final_times(result.x);
  return result;
}

double check_gradient(const NlpProblem& problem, const std::vector<double>& x) {
  if (!problem.eval_all) throw std::invalid_argument("check_gradient: problem has no eval_all");
  auto f = [&](const std::vector<double>& p) { return problem.eval_all(p).objective; };
  const double f0 = f(x);
  if (!std::isfinite(f0))
    throw std::invalid_argument("check_gradient: objective not finite at x");

  auto grad_at = [&](double rel) {
    std::vector<double> g(x.size());
    std::vector<double> xp = x;
    for (size_t i = 0; i < x.size(); ++i) {
      const double h = rel * std::max(1.0, std::abs(x[i]));
      xp[i] = x[i] + h;
      g[i] = (f(xp) - f0) / h;
      xp[i] = x[i];
    }
    return g;
  };
  const std::vector<double> g1 = grad_at(1e-6);
  const std::vector<double> g2 = grad_at(1e-6 / 16.0);
  double scale = 1.0;
  for (double v : g2) scale = std::max(scale, std::abs(v));
  double err = 0.0;
  for (size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(g1[i] - g2[i]) / scale);
  return err;
}

}  // namespace bernopt
