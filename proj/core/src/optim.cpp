#include "ucom2/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ucom2/errors.hpp"
#include "ucom2/rng.hpp"

namespace ucom2 {

void OptimConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps outside (0, 0.5)");
}

std::vector<double> grad_from_ids(const PenaltyComposite& obj, const ProbVector& p) {
  IdTable ids(p.size(), 2);
  obj.ids(p, ids);
  std::vector<double> grad(static_cast<std::size_t>(p.size()), 0.0);
  for (int i = 0; i < p.size(); ++i) {
    grad[static_cast<std::size_t>(i)] = ids.at(i, 1) - ids.at(i, 0);
  }
  return grad;
}

std::vector<double> grad_from_ids(const ColorPenaltyComposite& obj,
                                  const ProbMatrix& p) {
  IdTable ids(p.rows(), p.cols());
  obj.ids(p, ids);
  const double base = obj.eval(p);
  std::vector<double> grad(ids.delta.size());
  for (std::size_t k = 0; k < grad.size(); ++k) grad[k] = ids.delta[k] + base;
  return grad;
}

namespace {

ProbVector step_project(const ProbVector& p, std::span<const double> grad,
                        double lr) {
  std::vector<double> raw(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) {
    const double v = p[i] - lr * grad[static_cast<std::size_t>(i)];
    raw[static_cast<std::size_t>(i)] = std::min(1.0, std::max(0.0, v));
  }
  return ProbVector::clamped(std::move(raw), p.eps());
}

bool all_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

ProbVector line_search_backtrack(const PenaltyComposite& obj, const ProbVector& p,
                                 std::span<const double> grad, double lr0) {
  const double base = obj.eval(p);
  double lr = lr0;
  for (int h = 0; h <= 20; ++h) {
    ProbVector cand = step_project(p, grad, lr);
    if (obj.eval(cand) < base) return cand;
    lr *= 0.5;
  }
  return p;
}

namespace {

struct RestartOutcome {
  bool diverged = false;
  double final_loss = std::numeric_limits<double>::infinity();
  std::vector<double> loss_path;
};

bool should_stop(const std::vector<double>& path, const OptimConfig& cfg) {
  const int t = static_cast<int>(path.size()) - 1;
  if (t < cfg.stop_window) return false;
  const double before = path[static_cast<std::size_t>(t - cfg.stop_window)];
  const double now = path[static_cast<std::size_t>(t)];
  return before - now <= cfg.rel_improvement_stop * std::max(1.0, std::abs(before));
}

RestartOutcome run_binary_restart(const PenaltyComposite& obj, ProbVector& p,
                                  const OptimConfig& cfg) {
  RestartOutcome out;
  out.loss_path.push_back(obj.eval(p));
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const std::vector<double> grad = grad_from_ids(obj, p);
    if (!all_finite(grad)) {
      out.diverged = true;
      return out;
    }
    if (cfg.backtracking) {
      ProbVector next = line_search_backtrack(obj, p, grad, cfg.learning_rate);
      const double next_loss = obj.eval(next);
      if (!(next_loss < out.loss_path.back())) break;  // no improving step left
      p = std::move(next);
      out.loss_path.push_back(next_loss);
    } else {
      p = step_project(p, grad, cfg.learning_rate);
      const double loss = obj.eval(p);
      if (!std::isfinite(loss)) {
        out.diverged = true;
        return out;
      }
      out.loss_path.push_back(loss);
    }
    if (should_stop(out.loss_path, cfg)) break;
  }
  out.final_loss = out.loss_path.back();
  return out;
}

ProbVector binary_init(int n, const OptimConfig& cfg, int restart) {
  if (restart == 0) {
    switch (cfg.init) {
      case InitKind::kUniformHalf:
        return ProbVector::constant(n, 0.5, cfg.eps);
      case InitKind::kCardinalityScaled:
        return ProbVector::constant(n, cfg.init_value, cfg.eps);
      case InitKind::kRandom:
        break;
    }
  }
  Rng rng(cfg.seed + static_cast<std::uint64_t>(restart));
  std::vector<double> raw(static_cast<std::size_t>(n));
  for (double& v : raw) v = rng.uniform();
  return ProbVector::clamped(std::move(raw), cfg.eps);
}

}  // namespace

OptimResult optimize_binary(const PenaltyComposite& obj, const OptimConfig& cfg) {
  cfg.validate();
  OptimResult result;
  result.best_loss = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    ProbVector p = binary_init(obj.size(), cfg, r);
    RestartOutcome outcome = run_binary_restart(obj, p, cfg);
    result.restart_losses.push_back(outcome.diverged
                                        ? std::numeric_limits<double>::infinity()
                                        : outcome.final_loss);
    if (!outcome.diverged && outcome.final_loss < result.best_loss) {
      result.best_loss = outcome.final_loss;
      result.best_p = std::move(p);
      result.loss_path = std::move(outcome.loss_path);
    }
  }
  if (!std::isfinite(result.best_loss)) {
    throw NumericError("every optimization restart diverged");
  }
  return result;
}

namespace {

ProbMatrix softmax_rows(int n, int c, const std::vector<double>& logits,
                        double eps) {
  std::vector<double> raw(logits.size());
  for (int i = 0; i < n; ++i) {
    const double* z = logits.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(c);
    double zmax = z[0];
    for (int r = 1; r < c; ++r) zmax = std::max(zmax, z[r]);
    double sum = 0.0;
    double* out = raw.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(c);
    for (int r = 0; r < c; ++r) {
      out[r] = std::exp(z[r] - zmax);
      sum += out[r];
    }
    for (int r = 0; r < c; ++r) out[r] /= sum;
  }
  return ProbMatrix::clamped(n, c, std::move(raw), eps);
}

std::vector<double> color_logit_grad(const ProbMatrix& p,
                                     const std::vector<double>& grad_p) {
  // Chain rule through the row softmax: dz_ir = p_ir (g_ir - sum_s p_is g_is).
  const int n = p.rows();
  const int c = p.cols();
  std::vector<double> gz(grad_p.size());
  for (int i = 0; i < n; ++i) {
    const double* row = p.row(i);
    const double* g = grad_p.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(c);
    double mean = 0.0;
    for (int r = 0; r < c; ++r) mean += row[r] * g[r];
    double* out = gz.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(c);
    for (int r = 0; r < c; ++r) out[r] = row[r] * (g[r] - mean);
  }
  return gz;
}

std::vector<double> color_init_logits(int n, int c, const OptimConfig& cfg,
                                      int restart) {
  std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(c), 0.0);
  if (restart == 0 && cfg.init != InitKind::kRandom) return z;  // uniform rows
  Rng rng(cfg.seed + static_cast<std::uint64_t>(restart));
  // Logits of a uniformly random probability row (up to the row constant).
  for (double& v : z) v = std::log(std::max(rng.uniform(), 1e-12));
  return z;
}

RestartOutcome run_color_restart(const ColorPenaltyComposite& obj,
                                 std::vector<double>& logits, ProbMatrix& p,
                                 const OptimConfig& cfg) {
  const int n = obj.size();
  const int c = obj.num_colors();
  RestartOutcome out;
  p = softmax_rows(n, c, logits, cfg.eps);
  out.loss_path.push_back(obj.eval(p));
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const std::vector<double> grad_p = grad_from_ids(obj, p);
    if (!all_finite(grad_p)) {
      out.diverged = true;
      return out;
    }
    const std::vector<double> gz = color_logit_grad(p, grad_p);

    bool improved = false;
    double lr = cfg.learning_rate;
    const int tries = cfg.backtracking ? 21 : 1;
    std::vector<double> cand(logits.size());
    for (int h = 0; h < tries; ++h) {
      for (std::size_t k = 0; k < logits.size(); ++k) cand[k] = logits[k] - lr * gz[k];
      ProbMatrix next = softmax_rows(n, c, cand, cfg.eps);
      const double loss = obj.eval(next);
      if (!cfg.backtracking) {
        if (!std::isfinite(loss)) {
          out.diverged = true;
          return out;
        }
        logits.swap(cand);
        p = std::move(next);
        out.loss_path.push_back(loss);
        improved = true;
        break;
      }
      if (loss < out.loss_path.back()) {
        logits.swap(cand);
        p = std::move(next);
        out.loss_path.push_back(loss);
        improved = true;
        break;
      }
      lr *= 0.5;
    }
    if (!improved) break;
    if (should_stop(out.loss_path, cfg)) break;
  }
  out.final_loss = out.loss_path.back();
  return out;
}

}  // namespace

ColorOptimResult optimize_nonbinary(const ColorPenaltyComposite& obj,
                                    const OptimConfig& cfg) {
  cfg.validate();
  ColorOptimResult result;
  result.best_loss = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> logits =
        color_init_logits(obj.size(), obj.num_colors(), cfg, r);
    ProbMatrix p;
    RestartOutcome outcome = run_color_restart(obj, logits, p, cfg);
    result.restart_losses.push_back(outcome.diverged
                                        ? std::numeric_limits<double>::infinity()
                                        : outcome.final_loss);
    if (!outcome.diverged && outcome.final_loss < result.best_loss) {
      result.best_loss = outcome.final_loss;
      result.best_p = std::move(p);
      result.loss_path = std::move(outcome.loss_path);
    }
  }
  if (!std::isfinite(result.best_loss)) {
    throw NumericError("every optimization restart diverged");
  }
  return result;
}

}  // namespace ucom2
