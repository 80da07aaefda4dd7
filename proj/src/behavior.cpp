#include "firmcas/behavior.h"

#include <algorithm>
#include <cmath>

namespace firmcas {

double deviation_delta(ValueType v) {
  switch (v) {
    case ValueType::Conservative: return 1.0 / 3.0;
    case ValueType::OpenToChange: return 1.0;
    case ValueType::SelfEnhancing: return 2.0 / 3.0;
    case ValueType::SelfTranscendent: return 2.0 / 3.0;
  }
  return 1.0;
}

double autonomy_offset(ValueType v, double sigma, double shirk_norm, double delta) {
  if (sigma == 0.5) return 0.0;
  const bool controlling = sigma > 0.5;
  const double magnitude = 0.5 * shirk_norm * delta;
  switch (v) {
    case ValueType::Conservative: return controlling ? -magnitude : magnitude;
    case ValueType::OpenToChange: return controlling ? magnitude : -magnitude;
    default: return 0.0;
  }
}

double cooperativeness_offset(ValueType v, double coop_norm, double delta) {
  switch (v) {
    case ValueType::SelfEnhancing: return -0.5 * coop_norm * delta;
    case ValueType::SelfTranscendent: return 0.5 * coop_norm * delta;
    default: return 0.0;
  }
}

double rewards_offset(ValueType v, double lambda, double mu, double coop_norm, double delta,
                      bool mu_scaling) {
  if (lambda == 0.5) return 0.0;
  const bool group_scheme = lambda > 0.5;
  double factor = 0.0;
  switch (v) {
    case ValueType::SelfEnhancing: factor = group_scheme ? 0.1 : -0.5; break;
    case ValueType::SelfTranscendent: factor = group_scheme ? 0.5 : -0.1; break;
    default: return 0.0;
  }
  const double rho = factor * coop_norm * delta;
  return mu_scaling ? mu * rho : rho;
}

double warning_scaling(std::span<const int> written_warnings, int t) {
  if (written_warnings.empty()) return 1.0;
  const double recency = static_cast<double>(t - written_warnings.back()) / t;
  if (written_warnings.size() >= 3) return recency;
  const double k = static_cast<double>(written_warnings.size()) / 3.0;
  return (1.0 - k) + k * recency;
}

TriangularParams triangular_bounds(double norm, double delta, double beta, double offset) {
  TriangularParams p;
  p.lower = norm * (1.0 - delta);
  p.upper = norm * (1.0 + beta * delta);
  p.mode = std::clamp(norm + offset, p.lower, p.upper);
  return p;
}

double triangular_quantile(const TriangularParams& p, double u) {
  const double width = p.upper - p.lower;
  if (width <= 0.0) return p.lower;
  const double left = p.mode - p.lower;
  if (u * width < left) return p.lower + std::sqrt(u * width * left);
  const double right = p.upper - p.mode;
  return p.upper - std::sqrt((1.0 - u) * width * right);
}

double sample_triangular(const TriangularParams& p, Rng& rng) {
  return triangular_quantile(p, rng.uniform01());
}

TimeAllocation allocate_time(const Employee& emp, const Strategy& strategy, int t,
                             const BehaviorParams& params, Rng& rng) {
  const double beta = t >= 1 ? warning_scaling(emp.written_warnings, t) : 1.0;

  const double phi = autonomy_offset(emp.vtype, strategy.sigma, emp.shirk_norm, emp.delta);
  const auto shirk_tri = triangular_bounds(emp.shirk_norm, emp.delta, beta, phi);

  const double coop_offset =
      cooperativeness_offset(emp.vtype, emp.coop_norm, emp.delta) +
      rewards_offset(emp.vtype, strategy.lambda, strategy.mu, emp.coop_norm, emp.delta,
                     params.rho_mu_scaling);
  const auto coop_tri = triangular_bounds(emp.coop_norm, emp.delta, 1.0, coop_offset);

  double s = sample_triangular(shirk_tri, rng);
  double c = sample_triangular(coop_tri, rng);
  if (s + c > params.tau) {
    const double scale = params.tau / (s + c);
    s *= scale;
    c *= scale;
  }
  return {s, c, std::max(0.0, params.tau - s - c)};
}

TimeAllocation initial_allocation(TimeInitMethod method, double kappa, double tau,
                                  double s_max0, Rng& rng) {
  switch (method) {
    case TimeInitMethod::Randomly: {
      // Spacings of two sorted uniforms are uniform on the simplex.
      double u1 = rng.uniform01();
      double u2 = rng.uniform01();
      if (u1 > u2) std::swap(u1, u2);
      const double s = u1 * tau;
      const double c = (u2 - u1) * tau;
      return {s, c, std::max(0.0, tau - s - c)};
    }
    case TimeInitMethod::Equally:
      return {tau / 3.0, tau / 3.0, tau - 2.0 * (tau / 3.0)};
    case TimeInitMethod::Kappa: {
      const double c = kappa * (tau - s_max0);
      return {s_max0, c, std::max(0.0, tau - s_max0 - c)};
    }
    case TimeInitMethod::KappaNoShirk:
      return {0.0, kappa * tau, tau - kappa * tau};
  }
  return {0.0, 0.0, tau};
}

}  // namespace firmcas
