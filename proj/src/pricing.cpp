#include "microgrid/pricing.hpp"

#include <cmath>

#include "microgrid/errors.hpp"

namespace microgrid {

SigmoidKind sigmoid_kind_from_string(const std::string& s) {
  if (s == "standard") return SigmoidKind::standard;
  if (s == "zero_centered") return SigmoidKind::zero_centered;
  throw ArgumentError("unknown sigmoid kind: " + s);
}

std::string to_string(SigmoidKind kind) {
  return kind == SigmoidKind::standard ? "standard" : "zero_centered";
}

void PricingParams::validate() const {
  if (!(a > 0.0)) throw ArgumentError("pricing: a must be positive");
  if (!(k >= 1.0)) throw ArgumentError("pricing: k must be at least 1");
  if (!(capacity > 0.0)) throw ArgumentError("pricing: capacity must be positive");
  if (!(tau > 0.0)) throw ArgumentError("pricing: tau must be positive");
}

double base_price(const PricingParams& params, double total_demand) {
  if (total_demand < 0.0) throw ArgumentError("base_price: negative total demand");
  return params.a * std::pow(total_demand / params.capacity, params.k);
}

double overload_penalty(const PricingParams& params, double excess) {
  if (excess <= 0.0) return 0.0;  // strict step: being exactly at capacity is free
  const double s = params.sigmoid_kind == SigmoidKind::standard
                       ? 1.0 / (1.0 + std::exp(-excess / params.tau))
                       : std::tanh(excess / (2.0 * params.tau));
  // Far past capacity the sigmoid rounds up to 1.0; hold the open bound.
  return std::min(s, std::nextafter(1.0, 0.0));
}

double price(const PricingParams& params, double total_demand) {
  return base_price(params, total_demand) +
         overload_penalty(params, total_demand - params.capacity);
}

}  // namespace microgrid
