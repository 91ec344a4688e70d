// Internal first-order + Newton-polish minimizer shared by the quantum and
// classical projection solvers. Not part of the public API.
#ifndef QEP_SRC_MINIMIZE_HPP
#define QEP_SRC_MINIMIZE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "qep/projection.hpp"

namespace qep {
namespace detail {

struct MinimizeOutcome {
  Eigen::VectorXd x;
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // accepted objective values, when recorded
};

using ValueFn = std::function<double(const Eigen::VectorXd&)>;
using GradFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

inline MinimizeOutcome minimize_bb(const ValueFn& fval, const GradFn& fgrad,
                                   const Eigen::VectorXd& x0,
                                   const SolverConfig& cfg) {
  MinimizeOutcome out;
  out.x = x0;
  out.f = fval(out.x);
  Eigen::VectorXd g = fgrad(out.x);
  Eigen::VectorXd x_prev, g_prev;
  if (cfg.record_trace) out.trace.push_back(out.f);

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    out.grad_norm = g.norm();
    out.iterations = iter;
    if (out.grad_norm <= cfg.grad_tol) {
      out.converged = true;
      return out;
    }

    // Barzilai–Borwein step, safeguarded by Armijo backtracking so the
    // accepted objective stays monotone.
    double alpha = cfg.step_init;
    if (iter > 0) {
      const Eigen::VectorXd s = out.x - x_prev;
      const Eigen::VectorXd y = g - g_prev;
      const double sy = s.dot(y);
      if (sy > 1e-300) alpha = std::clamp(s.dot(s) / sy, 1e-10, 1e8);
    }

    const double slope = g.squaredNorm();
    double f_new = 0.0;
    Eigen::VectorXd x_new;
    bool accepted = false;
    while (alpha > 1e-18) {
      x_new = out.x - alpha * g;
      f_new = fval(x_new);
      if (f_new <= out.f - cfg.armijo_c * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= cfg.backtrack;
    }
    if (!accepted) return out;  // descent stalled at roundoff

    x_prev = out.x;
    g_prev = g;
    out.x = x_new;
    out.f = f_new;
    if (cfg.record_trace) out.trace.push_back(out.f);
    g = fgrad(out.x);
  }
  out.grad_norm = g.norm();
  out.iterations = cfg.max_iter;
  out.converged = out.grad_norm <= cfg.grad_tol;
  return out;
}

// Newton steps on a numerically differentiated Hessian. The first-order
// phase gets close; a handful of these reaches gradient norms near machine
// precision, which the oracle-equivalence tolerances need.
inline void newton_polish(const ValueFn& fval, const GradFn& fgrad,
                          const SolverConfig& cfg, MinimizeOutcome* out) {
  const int n = static_cast<int>(out->x.size());
  Eigen::VectorXd g = fgrad(out->x);
  out->grad_norm = g.norm();
  const double target = std::min(cfg.grad_tol, 1e-12);

  for (int round = 0; round < 12 && out->grad_norm > target; ++round) {
    const double h = 1e-6;
    Eigen::MatrixXd hess(n, n);
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd xp = out->x, xm = out->x;
      xp(j) += h;
      xm(j) -= h;
      hess.col(j) = (fgrad(xp) - fgrad(xm)) / (2.0 * h);
    }
    hess = 0.5 * (hess + hess.transpose()).eval();

    double mu = 1e-12 * std::max(1.0, hess.norm());
    bool moved = false;
    for (int attempt = 0; attempt < 8 && !moved; ++attempt) {
      Eigen::VectorXd step =
          (hess + mu * Eigen::MatrixXd::Identity(n, n)).ldlt().solve(-g);
      if (!step.allFinite()) {
        mu *= 100.0;
        continue;
      }
      double scale = 1.0;
      for (int ls = 0; ls < 30; ++ls) {
        const Eigen::VectorXd x_new = out->x + scale * step;
        const double f_new = fval(x_new);
        const Eigen::VectorXd g_new = fgrad(x_new);
        // Near roundoff the objective comparison is unreliable; a genuine
        // gradient-norm decrease also counts as progress.
        if (f_new < out->f || g_new.norm() < out->grad_norm) {
          out->x = x_new;
          out->f = std::min(out->f, f_new);
          if (cfg.record_trace) out->trace.push_back(out->f);
          g = g_new;
          out->grad_norm = g.norm();
          moved = true;
          break;
        }
        scale *= 0.5;
      }
      if (!moved) mu *= 100.0;
    }
    ++out->iterations;
    if (!moved) break;
  }
  out->converged = out->grad_norm <= cfg.grad_tol;
}

inline MinimizeOutcome minimize_smooth(const ValueFn& fval, const GradFn& fgrad,
                                       const Eigen::VectorXd& x0,
                                       const SolverConfig& cfg) {
  SolverConfig bb_cfg = cfg;
  bb_cfg.grad_tol = std::max(cfg.grad_tol, 1e-9);
  MinimizeOutcome out = minimize_bb(fval, fgrad, x0, bb_cfg);
  newton_polish(fval, fgrad, cfg, &out);
  return out;
}

}  // namespace detail
}  // namespace qep

#endif  // QEP_SRC_MINIMIZE_HPP
