#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "chainseq/chain.hpp"
#include "chainseq/errors.hpp"
#include "chainseq/scalar.hpp"
#include "chainseq/sequences.hpp"

namespace chainseq {

/// Centered parameters delta_n with g_n = (1 + (-1)^n delta_n) / 2,
/// indexed from 0. |delta_n| <= 1 whenever g_n lies in [0, 1].
template <Numeric T>
struct DeltaSequence {
  std::vector<T> values;  // values[n] = delta_n

  const T& at(std::int64_t n) const {
    if (n < 0 || n >= static_cast<std::int64_t>(values.size()))
      throw IndexOutOfRange("delta index " + std::to_string(n) + " out of range");
    return values[static_cast<std::size_t>(n)];
  }

  std::int64_t max_index() const { return static_cast<std::int64_t>(values.size()) - 1; }
};

/// Positive weights c_1, c_2, ... with c_1 = 1, built by the ratio
/// recurrence c_{n+1} = c_n (1 + (-1)^n delta_{n-1}).
template <Numeric T>
struct CSequence {
  std::vector<T> values;  // values[i] = c_{i+1}

  const T& at(std::int64_t n) const {
    if (n < 1 || n > static_cast<std::int64_t>(values.size()))
      throw IndexOutOfRange("c index " + std::to_string(n) + " out of range");
    return values[static_cast<std::size_t>(n - 1)];
  }

  std::int64_t max_index() const { return static_cast<std::int64_t>(values.size()); }
};

/// delta_n = (-1)^n (2 g_n - 1) over the valid prefix of a run.
template <Numeric T>
DeltaSequence<T> deltas_from_run(const ParameterRun<T>& run) {
  const T one = numeric_traits<T>::ratio(1, 1);
  const T two = numeric_traits<T>::ratio(2, 1);
  DeltaSequence<T> deltas;
  const std::int64_t last = run.last_valid_index();
  deltas.values.reserve(static_cast<std::size_t>(last) + 1);
  for (std::int64_t n = 0; n <= last; ++n) {
    T d = two * run.g[static_cast<std::size_t>(n)] - one;
    if (n % 2 != 0) d = -d;
    deltas.values.push_back(std::move(d));
  }
  return deltas;
}

/// c_1 = 1 and c_{n+1} = c_n (1 + (-1)^n delta_{n-1}) for n = 1..N+1 given
/// delta_0..delta_N. Throws DegenerateC when a ratio is not positive.
template <Numeric T>
CSequence<T> c_from_deltas(const DeltaSequence<T>& deltas) {
  const T one = numeric_traits<T>::ratio(1, 1);
  CSequence<T> c;
  c.values.reserve(deltas.values.size() + 1);
  c.values.push_back(one);
  for (std::int64_t n = 1; n <= deltas.max_index() + 1; ++n) {
    T ratio = n % 2 == 0 ? one + deltas.at(n - 1) : one - deltas.at(n - 1);
    if (!(ratio > T{}))
      throw DegenerateC("ratio c_" + std::to_string(n + 1) + "/c_" + std::to_string(n) +
                        " is not positive");
    c.values.push_back(c.values.back() * ratio);
  }
  return c;
}

/// Checks the ratio bound c_{n+1} <= 2 c_n over the whole stored range.
template <Numeric T>
std::optional<std::int64_t> ratio_bound_violation(const CSequence<T>& c) {
  const T two = numeric_traits<T>::ratio(2, 1);
  for (std::int64_t n = 1; n + 1 <= c.max_index(); ++n)
    if (!(c.at(n + 1) <= two * c.at(n))) return n;
  return std::nullopt;
}

enum class CheckVerdict { Pass, Fail, Inconclusive };

inline std::string_view check_verdict_name(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::Pass: return "pass";
    case CheckVerdict::Fail: return "fail";
    case CheckVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// One truncated instance of the alternating tail identity
///   sum_{m=n}^{inf} (-1)^{m-n} c_m eps_m = (-1)^n (c_{n+1} - c_n).
/// residual is the gap left by truncating at M. tail_bound is the
/// alternating-series remainder c_{M+1} eps_{M+1}, issued only when the
/// summands c_m eps_m are verified non-increasing on [n, M+1]; without that
/// monotone decay the check stays inconclusive instead of pass/fail.
template <Numeric T>
struct TailIdentityCheck {
  std::int64_t n = 0;
  std::int64_t truncation = 0;
  T residual{};
  std::optional<T> tail_bound;
  CheckVerdict verdict = CheckVerdict::Inconclusive;
};

template <Numeric T>
TailIdentityCheck<T> check_tail_identity(const CSequence<T>& c,
                                         const EpsilonRule<T>& eps, std::int64_t n,
                                         std::int64_t truncation,
                                         const Tolerance& tol = {}) {
  if (n < 1 || n > truncation) throw IndexOutOfRange("need 1 <= n <= M");
  if (c.max_index() < truncation + 1)
    throw IndexOutOfRange("c sequence must extend through M + 1");

  TailIdentityCheck<T> check;
  check.n = n;
  check.truncation = truncation;

  T partial{};
  bool monotone = true;
  T prev_summand{};
  for (std::int64_t m = n; m <= truncation + 1; ++m) {
    const T summand = c.at(m) * eps.at(m);
    if (m > n && summand > prev_summand) monotone = false;
    if (m <= truncation) {
      if ((m - n) % 2 == 0)
        partial = partial + summand;
      else
        partial = partial - summand;
    }
    prev_summand = summand;
  }

  T rhs = c.at(n + 1) - c.at(n);
  if (n % 2 != 0) rhs = -rhs;
  check.residual = numeric_traits<T>::magnitude(partial - rhs);

  if (monotone) {
    check.tail_bound = c.at(truncation + 1) * eps.at(truncation + 1);
    T allowed = *check.tail_bound;
    if constexpr (!numeric_traits<T>::is_exact) allowed = allowed + tol.abs_tol;
    check.verdict =
        check.residual <= allowed ? CheckVerdict::Pass : CheckVerdict::Fail;
  } else {
    check.verdict = CheckVerdict::Inconclusive;
  }
  return check;
}

/// Reconstruction of a parameter run from a candidate weight sequence:
///   delta_{n-1} = (1/c_n) sum_{m=n}^{M} (-1)^{m-n} c_m eps_m
///   h_n = (1 + (-1)^n delta_n) / 2
/// Requires the ratio bound on c; any nonpositive weight is DegenerateC.
/// The run covers h_0..h_{M-1}; entries outside [0, 1] are recorded the same
/// way a recurrence run records them.
template <Numeric T>
ParameterRun<T> reconstruct_h(const CSequence<T>& c, const EpsilonRule<T>& eps,
                              std::int64_t truncation) {
  if (truncation < 1) throw DomainError("truncation must be >= 1");
  if (c.max_index() < truncation)
    throw IndexOutOfRange("c sequence must extend through M");
  for (std::int64_t n = 1; n <= truncation; ++n)
    if (!(c.at(n) > T{})) throw DegenerateC("c_" + std::to_string(n) + " not positive");
  if (auto bad = ratio_bound_violation(c))
    throw std::invalid_argument("ratio bound c_{n+1} <= 2 c_n fails at n = " +
                                std::to_string(*bad));

  // Suffix alternating sums: A_n = sum_{m=n}^{M} (-1)^{m-n} c_m eps_m
  // via A_n = c_n eps_n - A_{n+1}, one backward pass.
  std::vector<T> suffix(static_cast<std::size_t>(truncation) + 2, T{});
  for (std::int64_t m = truncation; m >= 1; --m)
    suffix[static_cast<std::size_t>(m)] =
        c.at(m) * eps.at(m) - suffix[static_cast<std::size_t>(m) + 1];

  const T one = numeric_traits<T>::ratio(1, 1);
  const T half = numeric_traits<T>::ratio(1, 2);
  ParameterRun<T> run;
  run.horizon = truncation - 1;
  run.g.reserve(static_cast<std::size_t>(truncation));
  for (std::int64_t j = 0; j < truncation; ++j) {
    const T delta = suffix[static_cast<std::size_t>(j) + 1] / c.at(j + 1);
    T h = j % 2 == 0 ? half * (one + delta) : half * (one - delta);
    const bool out_of_range = h < T{} || h > one;
    run.g.push_back(std::move(h));
    if (out_of_range) {
      run.first_invalid = j;
      run.invalid_reason = "h_" + std::to_string(j) + " left [0, 1]";
      break;
    }
  }
  return run;
}

/// Aggregate report: the ratio bound over the whole weight range plus one
/// truncated tail-identity check per requested index.
template <Numeric T>
struct CharacterizationReport {
  bool ratio_bound_ok = false;
  std::optional<std::int64_t> ratio_bound_violation_at;
  std::vector<TailIdentityCheck<T>> checks;
  std::int64_t truncation = 0;  // largest truncation used
};

/// Runs the whole necessity-side computation for a sequence in epsilon form:
/// minimal run -> deltas -> weights -> tail checks at n = 1..n_max. Each
/// index n uses truncation max(1000, 10 n) unless an override is given.
template <Numeric T>
CharacterizationReport<T> characterize_sequence(
    const TermSequence<T>& seq, std::int64_t n_max,
    std::optional<std::int64_t> truncation_override = std::nullopt,
    const Tolerance& tol = {}) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");

  std::int64_t max_truncation = 0;
  std::vector<std::int64_t> truncations;
  truncations.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const std::int64_t m =
        truncation_override ? *truncation_override
                            : std::max<std::int64_t>(1000, 10 * n);
    if (m < n) throw DomainError("truncation below check index");
    truncations.push_back(m);
    max_truncation = std::max(max_truncation, m);
  }
  if (max_truncation + 1 > seq.max_index())
    throw IndexOutOfRange("truncation beyond table length");

  const ParameterRun<T> run = minimal_parameters(seq, max_truncation, T{}, tol);
  if (run.first_invalid)
    throw RefutedRun("minimal run refuted at index " +
                     std::to_string(*run.first_invalid));
  const DeltaSequence<T> deltas = deltas_from_run(run);
  const CSequence<T> c = c_from_deltas(deltas);

  EpsilonRule<T> eps = EpsilonRule<T>::closed_form(
      [&seq](std::int64_t n) { return seq.epsilon(n); }, false);
  eps.max_index = seq.max_index();

  CharacterizationReport<T> report;
  report.truncation = max_truncation;
  report.ratio_bound_violation_at = ratio_bound_violation(c);
  report.ratio_bound_ok = !report.ratio_bound_violation_at.has_value();
  for (std::int64_t n = 1; n <= n_max; ++n)
    report.checks.push_back(check_tail_identity(
        c, eps, n, truncations[static_cast<std::size_t>(n - 1)], tol));
  return report;
}

}  // namespace chainseq
