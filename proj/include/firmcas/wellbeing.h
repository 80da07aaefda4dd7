#pragma once

#include "firmcas/core.h"

namespace firmcas {

/// Neutral satisfaction level implied by the management style.
double base_satisfaction(ValueType v, const Strategy& strategy);

/// One day of mean reversion toward `base`: 1% of the current value, never
/// overshooting the base level. Result in [0,1].
double recover_satisfaction(double s, double base);

enum class WarningKind : std::uint8_t { Verbal, Written };

/// Satisfaction after a warning: s(1-eta) for verbal, s(1-3eta) for written.
/// Throws ConfigError when a written shock could turn satisfaction negative.
double apply_warning_shock(double s, WarningKind kind, double eta);

/// Productivity multiplier (1 - s_eff) + 2 s_eff s, in [1-s_eff, 1+s_eff].
double productivity(double s, double s_eff);

}  // namespace firmcas
