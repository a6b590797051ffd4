#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace entsched {

/// Fidelity of an entangled pair, constrained to [0, 1].
/// Werner-state decay floors at 1/4; perfect Bell state is 1.
class Fidelity {
 public:
  constexpr Fidelity() noexcept = default;

  constexpr explicit Fidelity(double v) : v_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("fidelity outside [0, 1]: " +
                                  std::to_string(v));
    }
  }

  /// Builds a Fidelity from a value known to lie in [0, 1] up to rounding.
  static constexpr Fidelity clamped(double v) noexcept {
    Fidelity f;
    f.v_ = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    return f;
  }

  constexpr double value() const noexcept { return v_; }

  friend constexpr auto operator<=>(Fidelity, Fidelity) noexcept = default;

 private:
  double v_ = 0.0;
};

inline constexpr double kWernerFloor = 0.25;

/// Memory decoherence parameters: slot duration delta and time constant tau,
/// both in seconds. tau may be +infinity (no decay).
struct DecayParams {
  double slot_duration = 1.0;
  double decoherence_tau = 1.0;

  void validate() const {
    if (!(slot_duration > 0.0) || !std::isfinite(slot_duration)) {
      throw std::invalid_argument("slot_duration must be finite and > 0");
    }
    if (!(decoherence_tau > 0.0) || std::isnan(decoherence_tau)) {
      throw std::invalid_argument("decoherence_tau must be > 0");
    }
  }
};

/// Utility of a single fidelity value.
///   A: g(F) = F
///   B: g(F) = max(D(F), 0), D the distillation rate.
enum class UtilityKind { A, B };

/// Exponential decoherence toward the Werner floor:
///   F(k) = 1/4 + (F0 - 1/4) * exp(-delta * k / tau).
/// Identity at k = 0; 1/4 is a fixed point.
inline Fidelity decay_fidelity(Fidelity f0, std::int64_t elapsed_slots,
                               const DecayParams& params) {
  if (elapsed_slots < 0) {
    throw std::invalid_argument("elapsed_slots must be non-negative");
  }
  if (elapsed_slots == 0) return f0;
  const double arg = params.slot_duration *
                     static_cast<double>(elapsed_slots) /
                     params.decoherence_tau;
  return Fidelity::clamped(kWernerFloor +
                           (f0.value() - kWernerFloor) * std::exp(-arg));
}

/// Fidelity of the end-to-end pair produced by swapping two pairs:
///   F_s = F1*F2 + (1-F1)*(1-F2).
inline Fidelity swap_fidelity(Fidelity f1, Fidelity f2) noexcept {
  const double a = f1.value(), b = f2.value();
  return Fidelity::clamped(a * b + (1.0 - a) * (1.0 - b));
}

/// Success probability of 2-to-1 purification; same bilinear form as the
/// swap output fidelity.
inline double purify_success_prob(Fidelity f1, Fidelity f2) noexcept {
  const double a = f1.value(), b = f2.value();
  const double p = a * b + (1.0 - a) * (1.0 - b);
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

/// Fidelity after successful 2-to-1 purification:
///   F_p = F1*F2 / (F1*F2 + (1-F1)*(1-F2)).
/// The denominator vanishes only for the degenerate input pair {0, 1}.
inline Fidelity purify_fidelity(Fidelity f1, Fidelity f2) {
  const double a = f1.value(), b = f2.value();
  const double num = a * b;
  const double den = num + (1.0 - a) * (1.0 - b);
  if (den == 0.0) {
    throw std::domain_error("purify_fidelity: degenerate inputs {0, 1}");
  }
  return Fidelity::clamped(num / den);
}

/// Distillation rate D(F) = 1 + F*log2(F) + (1-F)*log2((1-F)/3), with the
/// 0*log 0 = 0 convention at both endpoints. Negative below F ~ 0.8107,
/// strictly increasing on (1/4, 1], D(1) = 1.
inline double distillation_rate(Fidelity f) noexcept {
  const double x = f.value();
  const double t1 = x == 0.0 ? 0.0 : x * std::log2(x);
  const double u = 1.0 - x;
  const double t2 = u == 0.0 ? 0.0 : u * std::log2(u / 3.0);
  return 1.0 + t1 + t2;
}

/// Per-pair utility. Kind B clamps negative distillation rates to zero so
/// the aggregate sum stays meaningful for low-fidelity pairs.
inline double g_value(UtilityKind kind, Fidelity f) noexcept {
  switch (kind) {
    case UtilityKind::A:
      return f.value();
    case UtilityKind::B: {
      const double d = distillation_rate(f);
      return d > 0.0 ? d : 0.0;
    }
  }
  return 0.0;  // unreachable
}

/// Aggregate utility ln(sum of g-values). Returns nullopt (the Degenerate
/// marker) when the inner sum is not positive: empty input or an
/// all-clamped sum under kind B.
inline std::optional<double> aggregate_utility(
    UtilityKind kind, std::span<const Fidelity> fidelities) noexcept {
  double sum = 0.0;
  for (const Fidelity f : fidelities) sum += g_value(kind, f);
  if (!(sum > 0.0)) return std::nullopt;
  return std::log(sum);
}

/// Inner sum of Eq.-style aggregate utility without the log; always defined.
inline double utility_inner_sum(UtilityKind kind,
                                std::span<const Fidelity> fidelities) noexcept {
  double sum = 0.0;
  for (const Fidelity f : fidelities) sum += g_value(kind, f);
  return sum;
}

}  // namespace entsched
