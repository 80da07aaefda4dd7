#include "firmcas/wellbeing.h"

#include <algorithm>

namespace firmcas {

double base_satisfaction(ValueType v, const Strategy& strategy) {
  switch (v) {
    case ValueType::Conservative: return strategy.sigma;
    case ValueType::OpenToChange: return 1.0 - strategy.sigma;
    case ValueType::SelfEnhancing: return 0.5 + strategy.mu * (0.5 - strategy.lambda);
    case ValueType::SelfTranscendent: return 0.5 + strategy.mu * (strategy.lambda - 0.5);
  }
  return 0.5;
}

double recover_satisfaction(double s, double base) {
  double next = s;
  if (s > base) {
    next = std::max(0.99 * s, base);
  } else if (s < base) {
    next = std::min(1.01 * s, base);
  }
  return std::clamp(next, 0.0, 1.0);
}

double apply_warning_shock(double s, WarningKind kind, double eta) {
  if (kind == WarningKind::Verbal) return std::clamp(s * (1.0 - eta), 0.0, 1.0);
  if (eta > 1.0 / 3.0) throw ConfigError("written warning shock requires eta <= 1/3");
  return std::clamp(s * (1.0 - 3.0 * eta), 0.0, 1.0);
}

double productivity(double s, double s_eff) { return (1.0 - s_eff) + 2.0 * s_eff * s; }

}  // namespace firmcas
