#include "firmcas/economy.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace firmcas {

double individual_output(double individual_time, double mean_coop_others, double kappa,
                         double productivity, double wage_hourly) {
  // std::pow gives 0^0 = 1 and 0^x = 0 for x > 0, as required.
  return productivity * std::pow(individual_time, 1.0 - kappa) *
         std::pow(mean_coop_others, kappa) * wage_hourly;
}

double bonus(double own_output, double mean_output, double lambda) {
  return (1.0 - lambda) * own_output + lambda * mean_output;
}

std::vector<double> bonuses(std::span<const double> outputs, double lambda) {
  std::vector<double> out(outputs.size());
  if (outputs.empty()) return out;
  const double mean =
      std::accumulate(outputs.begin(), outputs.end(), 0.0) / static_cast<double>(outputs.size());
  for (std::size_t i = 0; i < outputs.size(); ++i) out[i] = bonus(outputs[i], mean, lambda);
  return out;
}

double reward(double base_wage_daily, double mu, double bonus_value) {
  return base_wage_daily + mu * bonus_value;
}

double profitability(std::span<const double> outputs, std::span<const double> rewards) {
  const double total_reward = std::accumulate(rewards.begin(), rewards.end(), 0.0);
  if (!(total_reward > 0.0)) throw std::domain_error("profitability: reward sum must be positive");
  return std::accumulate(outputs.begin(), outputs.end(), 0.0) / total_reward;
}

}  // namespace firmcas
