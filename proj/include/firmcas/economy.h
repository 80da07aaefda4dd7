#pragma once

#include <span>
#include <vector>

namespace firmcas {

/// Cobb-Douglas output of one employee: pi * p^(1-kappa) * cbar^kappa * w,
/// where cbar is the mean cooperation of everyone else.
double individual_output(double individual_time, double mean_coop_others, double kappa,
                         double productivity, double wage_hourly);

/// Bonus base: (1-lambda) * own output + lambda * mean output.
double bonus(double own_output, double mean_output, double lambda);
std::vector<double> bonuses(std::span<const double> outputs, double lambda);

/// Base wage plus mu-weighted bonus.
double reward(double base_wage_daily, double mu, double bonus_value);

/// Total output over total rewards. Throws std::domain_error if the reward sum
/// is not positive.
double profitability(std::span<const double> outputs, std::span<const double> rewards);

}  // namespace firmcas
