#pragma once

#include <span>

#include "firmcas/core.h"
#include "firmcas/rng.h"

namespace firmcas {

/// Triangular distribution T(lower, mode, upper).
struct TriangularParams {
  double lower = 0.0;
  double mode = 0.0;
  double upper = 0.0;
};

/// Spread of behaviour around personal norms; fixed per value type.
double deviation_delta(ValueType v);

/// Mode shift of shirking from the need for autonomy. Monitoring below 0.5
/// counts as trusting, above 0.5 as controlling; exactly 0.5 is neutral.
/// Only C and O employees respond.
double autonomy_offset(ValueType v, double sigma, double shirk_norm, double delta);

/// Mode shift of cooperation from intrinsic cooperativeness (SE down, ST up).
double cooperativeness_offset(ValueType v, double coop_norm, double delta);

/// Mode shift of cooperation from the PFP type. With `mu_scaling` the shift is
/// multiplied by the PFP intensity, so it vanishes when no bonuses are paid.
double rewards_offset(ValueType v, double lambda, double mu, double coop_norm, double delta,
                      bool mu_scaling = true);

/// Contraction of the upper shirking bound after written warnings issued at
/// `written_warnings` (all < t). Returns 1 when there are none.
double warning_scaling(std::span<const int> written_warnings, int t);

/// Bounds around a norm; the mode is clamped into [lower, upper].
TriangularParams triangular_bounds(double norm, double delta, double beta, double offset);

/// Inverse CDF of the triangular distribution at u in [0, 1].
double triangular_quantile(const TriangularParams& p, double u);

double sample_triangular(const TriangularParams& p, Rng& rng);

struct BehaviorParams {
  double tau = 8.0;
  bool rho_mu_scaling = true;
};

/// Draws today's shirking and cooperation around the employee's norms.
/// If the two draws exceed the budget they are rescaled to fill it exactly.
TimeAllocation allocate_time(const Employee& emp, const Strategy& strategy, int t,
                             const BehaviorParams& params, Rng& rng);

/// Day-zero allocation for a freshly hired workforce.
TimeAllocation initial_allocation(TimeInitMethod method, double kappa, double tau,
                                  double s_max0, Rng& rng);

}  // namespace firmcas
