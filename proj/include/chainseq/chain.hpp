#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainseq/errors.hpp"
#include "chainseq/pq.hpp"
#include "chainseq/scalar.hpp"
#include "chainseq/sequences.hpp"

namespace chainseq {

/// Prefix g_0..g_N of the parameter recurrence g_n = a_n / (1 - g_{n-1}).
/// A run that leaves [0, 1] stops with first_invalid set; the offending value
/// is kept as the last entry of g when it was computable.
template <Numeric T>
struct ParameterRun {
  std::vector<T> g;
  std::int64_t horizon = 0;
  std::optional<std::int64_t> first_invalid;
  std::string invalid_reason;

  /// Largest n with g_0..g_n all inside [0, 1].
  std::int64_t last_valid_index() const {
    if (first_invalid) return *first_invalid - 1;
    return static_cast<std::int64_t>(g.size()) - 1;
  }
};

/// Runs the recurrence from the given seed (default 0, the minimal run).
/// Failure is data, not an exception: the run records where and why it left
/// [0, 1]. In the float backend a denominator 1 - g_{n-1} <= abs_tol counts
/// as a division by zero.
template <Numeric T>
ParameterRun<T> minimal_parameters(const TermSequence<T>& seq, std::int64_t horizon,
                                   T g0 = T{}, const Tolerance& tol = {}) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  const T zero{};
  const T one = numeric_traits<T>::ratio(1, 1);
  if (g0 < zero || !(g0 < one)) throw DomainError("seed g0 must lie in [0, 1)");

  ParameterRun<T> run;
  run.horizon = horizon;
  run.g.reserve(static_cast<std::size_t>(horizon) + 1);
  run.g.push_back(std::move(g0));
  for (std::int64_t n = 1; n <= horizon; ++n) {
    const T denom = one - run.g.back();
    bool unreachable;
    if constexpr (numeric_traits<T>::is_exact)
      unreachable = denom.sign() == 0;
    else
      unreachable = denom <= tol.abs_tol;
    if (unreachable) {
      run.first_invalid = n;
      run.invalid_reason = "g_" + std::to_string(n - 1) + " reached 1; a_" +
                           std::to_string(n) + " is unreachable";
      return run;
    }
    T gn = seq.term(n) / denom;
    const bool out_of_range = gn < zero || gn > one;
    run.g.push_back(std::move(gn));
    if (out_of_range) {
      run.first_invalid = n;
      run.invalid_reason = "g_" + std::to_string(n) + " left [0, 1]";
      return run;
    }
  }
  return run;
}

/// True iff every stored parameter lies in [0, 1] and a_n = g_n (1 - g_{n-1})
/// holds for 1 <= n <= the run's horizon (exactly in the exact backend,
/// within tol in the float backend). A run that was cut short fails.
template <Numeric T>
bool verify_parameters(const TermSequence<T>& seq, const ParameterRun<T>& run,
                       const Tolerance& tol = {}) {
  if (run.first_invalid) return false;
  if (static_cast<std::int64_t>(run.g.size()) != run.horizon + 1) return false;
  const T zero{};
  const T one = numeric_traits<T>::ratio(1, 1);
  for (const T& g : run.g)
    if (g < zero || g > one) return false;
  for (std::int64_t n = 1; n <= run.horizon; ++n) {
    const T lhs = run.g[static_cast<std::size_t>(n)] *
                  (one - run.g[static_cast<std::size_t>(n - 1)]);
    if (!approx_eq(lhs, seq.term(n), tol)) return false;
  }
  return true;
}

/// g_n = (8 n^2 - 1 + (-1)^n) / (4 (2 n + 1)^2), the parameter sequence whose
/// products reproduce the osc31 terms identically.
template <Numeric T>
T closed_form_g31(std::int64_t n) {
  if (n < 0) throw IndexOutOfRange("closed_form_g31 needs n >= 0");
  const long long sign = n % 2 == 0 ? 1 : -1;
  return numeric_traits<T>::ratio(8 * n * n - 1 + sign, 4 * (2 * n + 1) * (2 * n + 1));
}

template <Numeric T>
ParameterRun<T> closed_form_g31_run(std::int64_t horizon) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  ParameterRun<T> run;
  run.horizon = horizon;
  run.g.reserve(static_cast<std::size_t>(horizon) + 1);
  for (std::int64_t n = 0; n <= horizon; ++n) run.g.push_back(closed_form_g31<T>(n));
  return run;
}

enum class VerdictKind { CertifiedChain, RefutedAt, ConsistentUpTo };

inline std::string_view verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::CertifiedChain: return "certified-chain";
    case VerdictKind::RefutedAt: return "refuted-at";
    case VerdictKind::ConsistentUpTo: return "consistent-up-to";
  }
  return "?";
}

/// Three-valued chain-sequence outcome. Refutation is sound: the g_0 = 0 run
/// is minimal, so once it leaves [0, 1] no parameter sequence exists.
/// Certification is issued only by structural certifiers; a clean scan alone
/// yields ConsistentUpTo.
struct ChainVerdict {
  VerdictKind kind = VerdictKind::ConsistentUpTo;
  std::int64_t horizon = 0;
  std::int64_t index = 0;   // refutation index when kind == RefutedAt
  std::string reason;       // refutation reason
  std::string certificate;  // structural certifier description
};

template <Numeric T>
ChainVerdict verdict(const TermSequence<T>& seq, std::int64_t horizon,
                     const Tolerance& tol = {}) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  ChainVerdict out;
  out.horizon = horizon;

  const T quarter = numeric_traits<T>::ratio(1, 4);
  if (auto a = seq.constant_value()) {
    if (*a <= quarter) {
      out.kind = VerdictKind::CertifiedChain;
      out.certificate = "constant family with 0 < a <= 1/4";
      return out;
    }
  } else if (seq.kind() == FamilyKind::Osc31) {
    out.kind = VerdictKind::CertifiedChain;
    out.certificate = "closed-form parameter sequence for osc31";
    return out;
  } else if (auto pq = seq.pq_values()) {
    if (auto cfg = find_feasible_interval(pq->first, pq->second)) {
      certify(*cfg);
      out.kind = VerdictKind::CertifiedChain;
      out.certificate = "two-periodic interval certificate, [eps, gamma] = [" +
                        format_double(numeric_traits<T>::to_double(cfg->eps)) + ", " +
                        format_double(numeric_traits<T>::to_double(cfg->gamma)) + "]";
      return out;
    }
  }

  const std::int64_t scan_horizon = std::min(horizon, seq.max_index());
  const ParameterRun<T> run = minimal_parameters(seq, scan_horizon, T{}, tol);
  if (run.first_invalid) {
    out.kind = VerdictKind::RefutedAt;
    out.index = *run.first_invalid;
    out.reason = run.invalid_reason;
    return out;
  }
  out.kind = VerdictKind::ConsistentUpTo;
  out.horizon = scan_horizon;
  return out;
}

/// Last parameter of the minimal run, the numerical witness for the limit
/// g_n -> 1/2 when a_n -> 1/4. Total for any sequence; callers that do not
/// meet the limit hypothesis simply get the final parameter.
template <Numeric T>
T limit_witness_g(const TermSequence<T>& seq, std::int64_t horizon,
                  const Tolerance& tol = {}) {
  const ParameterRun<T> run = minimal_parameters(seq, horizon, T{}, tol);
  if (run.first_invalid)
    throw RefutedRun("minimal run refuted at index " +
                     std::to_string(*run.first_invalid) + ": " + run.invalid_reason);
  return run.g.back();
}

}  // namespace chainseq
