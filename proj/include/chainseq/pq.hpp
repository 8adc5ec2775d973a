#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "chainseq/errors.hpp"
#include "chainseq/scalar.hpp"
#include "chainseq/sequences.hpp"

namespace chainseq {

/// Two-periodic construction a_{2k-1} = 1/4 - p, a_{2k} = 1/4 + q together
/// with an interval [eps, gamma] that the minimal parameters never leave.
template <Numeric T>
struct PQConfig {
  T p, q, eps, gamma;

  PQConfig(T p, T q, T eps, T gamma)
      : p(std::move(p)), q(std::move(q)), eps(std::move(eps)), gamma(std::move(gamma)) {
    const T zero{};
    const T one = numeric_traits<T>::ratio(1, 1);
    if (!(this->p > zero) || !(this->q > zero))
      throw DomainError("p and q must be positive");
    if (!(this->eps > zero) || !(this->eps < one))
      throw DomainError("eps must lie in (0,1)");
    if (!(this->gamma > zero) || !(this->gamma < one))
      throw DomainError("gamma must lie in (0,1)");
    if (!(this->eps < this->gamma)) throw DomainError("eps must be below gamma");
  }
};

/// The four quantities compared by the feasibility condition:
///   eps <= 1/4 - p <= gamma (1 - gamma)
///   eps <= 1/4 + q <= gamma - (gamma / (1 - gamma)) (1/4 - p)
template <Numeric T>
struct FeasibilityValues {
  T odd_term;    // 1/4 - p
  T even_term;   // 1/4 + q
  T odd_cap;     // gamma (1 - gamma)
  T even_cap;    // gamma - (gamma / (1 - gamma)) (1/4 - p)
};

template <Numeric T>
FeasibilityValues<T> feasibility_values(const PQConfig<T>& cfg) {
  const T quarter = numeric_traits<T>::ratio(1, 4);
  const T one = numeric_traits<T>::ratio(1, 1);
  FeasibilityValues<T> v{quarter - cfg.p, quarter + cfg.q, cfg.gamma * (one - cfg.gamma),
                         T{}};
  v.even_cap = cfg.gamma - (cfg.gamma / (one - cfg.gamma)) * v.odd_term;
  return v;
}

template <Numeric T>
std::optional<std::string> first_violated_inequality(const PQConfig<T>& cfg) {
  const auto v = feasibility_values(cfg);
  if (!(cfg.eps <= v.odd_term)) return "eps <= 1/4 - p";
  if (!(v.odd_term <= v.odd_cap)) return "1/4 - p <= gamma (1 - gamma)";
  if (!(cfg.eps <= v.even_term)) return "eps <= 1/4 + q";
  if (!(v.even_term <= v.even_cap))
    return "1/4 + q <= gamma - (gamma / (1 - gamma)) (1/4 - p)";
  return std::nullopt;
}

template <Numeric T>
bool validate_config(const PQConfig<T>& cfg) {
  return !first_violated_inequality(cfg).has_value();
}

/// One endpoint evaluation of the induction step: `value` compared against
/// the interval edge `bound` (>= for lower bounds, <= for upper bounds).
template <Numeric T>
struct BoundCheck {
  std::string name;
  T value;
  T bound;
  bool is_lower;
  bool holds;
};

/// Certificate that g_n stays in [eps, gamma] for every n >= 1: the base
/// values g_1, g_2 plus the four endpoint inequalities of the induction step,
/// all evaluated exactly in the exact backend. Because g_{n+1} is increasing
/// in g_n, the endpoint evaluations bound the whole interval orbit, so the
/// membership extends to every horizon.
template <Numeric T>
struct IntervalCertificate {
  T eps, gamma;
  T g1, g2;
  BoundCheck<T> base_g1_lower, base_g1_upper, base_g2_lower, base_g2_upper;
  std::array<BoundCheck<T>, 4> inductive;
};

template <Numeric T>
IntervalCertificate<T> certify(const PQConfig<T>& cfg) {
  if (auto violated = first_violated_inequality(cfg))
    throw FeasibilityFailure("infeasible configuration: " + *violated + " fails");

  const T one = numeric_traits<T>::ratio(1, 1);
  const auto v = feasibility_values(cfg);

  IntervalCertificate<T> cert{cfg.eps, cfg.gamma, v.odd_term,
                              v.even_term / (one - v.odd_term),
                              {}, {}, {}, {}, {}};

  auto lower = [&](std::string name, T value) {
    return BoundCheck<T>{std::move(name), value, cfg.eps, true, value >= cfg.eps};
  };
  auto upper = [&](std::string name, T value) {
    return BoundCheck<T>{std::move(name), value, cfg.gamma, false, value <= cfg.gamma};
  };

  cert.base_g1_lower = lower("g_1 >= eps", cert.g1);
  cert.base_g1_upper = upper("g_1 <= gamma", cert.g1);
  cert.base_g2_lower = lower("g_2 >= eps", cert.g2);
  cert.base_g2_upper = upper("g_2 <= gamma", cert.g2);

  // Induction step, evaluated at the interval endpoints:
  //   odd index:  (1/4 - p) / (1 - g) for g in [eps, gamma]
  //   even index: (1/4 + q) / (1 - g') with g' = (1/4 - p) / (1 - g)
  cert.inductive[0] = lower("odd step lower", v.odd_term / (one - cfg.eps));
  cert.inductive[1] = upper("odd step upper", v.odd_term / (one - cfg.gamma));
  cert.inductive[2] = lower("even step lower", v.even_term / (one - cfg.eps));
  cert.inductive[3] = upper(
      "even step upper", v.even_term / (one - v.odd_term / (one - cfg.gamma)));

  for (const auto* check :
       {&cert.base_g1_lower, &cert.base_g1_upper, &cert.base_g2_lower,
        &cert.base_g2_upper, &cert.inductive[0], &cert.inductive[1],
        &cert.inductive[2], &cert.inductive[3]}) {
    if (!check->holds)
      throw FeasibilityFailure("certificate bound failed: " + check->name);
  }
  return cert;
}

template <Numeric T>
TermSequence<T> build_sequence(const PQConfig<T>& cfg) {
  if (auto violated = first_violated_inequality(cfg))
    throw FeasibilityFailure("infeasible configuration: " + *violated + " fails");
  return TermSequence<T>::pq_periodic(cfg.p, cfg.q);
}

/// Searches a rational grid of gamma values (k/64) for an interval that makes
/// (p, q) feasible, taking eps = min(1/4 - p, 1/4 + q, gamma) / 2. Returns
/// nothing when the grid has no feasible point; the caller falls back to a
/// horizon-bounded scan in that case.
template <Numeric T>
std::optional<PQConfig<T>> find_feasible_interval(const T& p, const T& q) {
  const T quarter = numeric_traits<T>::ratio(1, 4);
  const T half = numeric_traits<T>::ratio(1, 2);
  const T odd_term = quarter - p;
  const T even_term = quarter + q;
  if (!(odd_term > T{}) || !(even_term > T{})) return std::nullopt;
  for (int k = 1; k < 64; ++k) {
    const T gamma = numeric_traits<T>::ratio(k, 64);
    T eps = odd_term < even_term ? odd_term : even_term;
    if (gamma < eps) eps = gamma;
    eps = eps * half;
    if (!(eps > T{}) || !(eps < gamma)) continue;
    PQConfig<T> cfg(p, q, eps, gamma);
    if (validate_config(cfg)) return cfg;
  }
  return std::nullopt;
}

enum class DivergenceKind { None, ToPlusInfinity, ToMinusInfinity, ByOscillation };

inline std::string_view divergence_kind_name(DivergenceKind k) {
  switch (k) {
    case DivergenceKind::None: return "none";
    case DivergenceKind::ToPlusInfinity: return "to-plus-infinity";
    case DivergenceKind::ToMinusInfinity: return "to-minus-infinity";
    case DivergenceKind::ByOscillation: return "by-oscillation";
  }
  return "?";
}

/// How the series sum of (a_n - 1/4) diverges for the two-periodic family.
/// For p = q the partial sums oscillate between 0 and -p without settling.
template <Numeric T>
DivergenceKind pq_divergence_kind(const T& p, const T& q) {
  if (q > p) return DivergenceKind::ToPlusInfinity;
  if (q < p) return DivergenceKind::ToMinusInfinity;
  return DivergenceKind::ByOscillation;
}

/// Closed form of the partial sums S_N = sum_{n<=N} (a_n - 1/4):
/// S_{2k} = k (q - p), S_{2k+1} = k (q - p) - p.
template <Numeric T>
T pq_partial_sum(const T& p, const T& q, std::int64_t n) {
  if (n < 0) throw IndexOutOfRange("partial sum index must be >= 0");
  const T k = numeric_traits<T>::ratio(n / 2, 1);
  T s = k * (q - p);
  if (n % 2 != 0) s = s - p;
  return s;
}

}  // namespace chainseq
