#pragma once

#include <string>

namespace microgrid {

enum class SigmoidKind { standard, zero_centered };

SigmoidKind sigmoid_kind_from_string(const std::string& s);
std::string to_string(SigmoidKind kind);

struct PricingParams {
  double a = 1.0;         // basic price of power
  double k = 4.0;         // demand-ratio exponent, >= 1
  double capacity = 0.0;  // grid maximum, > 0
  SigmoidKind sigmoid_kind = SigmoidKind::zero_centered;
  double tau = 10.0;      // sigmoid scale in power units, > 0

  void validate() const;  // throws ArgumentError on any violated bound
};

/// a * (total / capacity)^k, monotone nondecreasing in total.
double base_price(const PricingParams& params, double total_demand);

/// Overload surcharge, zero at or below capacity (strict unit step), else the
/// configured sigmoid of the excess. Always in [0, 1).
///   standard:      1 / (1 + exp(-excess / tau))   (jumps to 0.5 just past 0)
///   zero_centered: tanh(excess / (2 tau))         (continuous at 0)
double overload_penalty(const PricingParams& params, double excess);

/// base_price plus the gated overload penalty of (total - capacity).
double price(const PricingParams& params, double total_demand);

}  // namespace microgrid
