#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "chainseq/errors.hpp"
#include "chainseq/pq.hpp"
#include "chainseq/scalar.hpp"
#include "chainseq/sequences.hpp"

namespace chainseq {

enum class OscClassification { OscillatoryWitnessed, AboveOnly, BelowOnly, Inconclusive };

inline std::string_view osc_classification_name(OscClassification c) {
  switch (c) {
    case OscClassification::OscillatoryWitnessed: return "oscillatory-witnessed";
    case OscClassification::AboveOnly: return "above-only";
    case OscClassification::BelowOnly: return "below-only";
    case OscClassification::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Trichotomy counts of a_n against a center value over a finite prefix.
/// OscillatoryWitnessed is only issued when the family structure guarantees
/// infinitely many terms on both sides; finite counts alone stay inconclusive.
template <Numeric T>
struct OscillationReport {
  T center;
  std::int64_t horizon = 0;
  std::int64_t count_above = 0;
  std::int64_t count_below = 0;
  std::int64_t count_equal = 0;
  OscClassification classification = OscClassification::Inconclusive;
};

template <Numeric T>
OscillationReport<T> classify_oscillation(const TermSequence<T>& seq, T center,
                                          std::int64_t horizon) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  if (horizon > seq.max_index()) throw IndexOutOfRange("horizon beyond table length");
  OscillationReport<T> report;
  report.center = center;
  report.horizon = horizon;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    const T a = seq.term(n);
    if (a > center)
      ++report.count_above;
    else if (a < center)
      ++report.count_below;
    else
      ++report.count_equal;
  }
  const bool structural = seq.oscillatory_by_structure() &&
                          center == numeric_traits<T>::ratio(1, 4);
  const std::int64_t gate = horizon / 4;
  if (structural && report.count_above >= gate && report.count_below >= gate)
    report.classification = OscClassification::OscillatoryWitnessed;
  else if (report.count_below == 0 && report.count_above > 0)
    report.classification = OscClassification::AboveOnly;
  else if (report.count_above == 0 && report.count_below > 0)
    report.classification = OscClassification::BelowOnly;
  else
    report.classification = OscClassification::Inconclusive;
  return report;
}

enum class DivergenceVerdict { ConvergesWitnessed, DivergesCertified, Unknown };

inline std::string_view divergence_verdict_name(DivergenceVerdict v) {
  switch (v) {
    case DivergenceVerdict::ConvergesWitnessed: return "converges-witnessed";
    case DivergenceVerdict::DivergesCertified: return "diverges-certified";
    case DivergenceVerdict::Unknown: return "unknown";
  }
  return "?";
}

/// Partial sums S_N = sum_{n<=N} (a_n - 1/4) against the bound S <= 1/4.
/// Divergence or convergence is certified only from family structure, never
/// from the finite scan; hypothesis_violated flags any term below 1/4 (the
/// bound's classical hypothesis is a_n >= 1/4 throughout).
template <Numeric T>
struct ChiharaReport {
  std::int64_t horizon = 0;
  std::vector<T> partial_sums;  // S_1..S_N
  T sup_partial_sum{};
  std::optional<std::int64_t> bound_violated_at;  // first N with S_N > 1/4
  DivergenceVerdict divergence_verdict = DivergenceVerdict::Unknown;
  DivergenceKind divergence_kind = DivergenceKind::None;
  bool hypothesis_violated = false;
};

template <Numeric T>
ChiharaReport<T> chihara_sums(const TermSequence<T>& seq, std::int64_t horizon) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  if (horizon > seq.max_index()) throw IndexOutOfRange("horizon beyond table length");
  const T quarter = numeric_traits<T>::ratio(1, 4);
  ChiharaReport<T> report;
  report.horizon = horizon;
  report.partial_sums.reserve(static_cast<std::size_t>(horizon));
  T sum{};
  for (std::int64_t n = 1; n <= horizon; ++n) {
    const T delta = seq.term(n) - quarter;
    if (delta < T{}) report.hypothesis_violated = true;
    sum = sum + delta;
    report.partial_sums.push_back(sum);
    if (n == 1 || sum > report.sup_partial_sum) report.sup_partial_sum = sum;
    if (!report.bound_violated_at && sum > quarter) report.bound_violated_at = n;
  }

  switch (seq.kind()) {
    case FamilyKind::PQPeriodic: {
      const auto pq = *seq.pq_values();
      report.divergence_verdict = DivergenceVerdict::DivergesCertified;
      report.divergence_kind = pq_divergence_kind(pq.first, pq.second);
      break;
    }
    case FamilyKind::Osc31:
      // Absolute partial sums telescope to (1/8)(1 - 1/(2k+1)), so the
      // series converges absolutely with absolute sum 1/8.
      report.divergence_verdict = DivergenceVerdict::ConvergesWitnessed;
      break;
    case FamilyKind::Constant: {
      const T a = *seq.constant_value();
      if (a == quarter) {
        report.divergence_verdict = DivergenceVerdict::ConvergesWitnessed;
      } else {
        report.divergence_verdict = DivergenceVerdict::DivergesCertified;
        report.divergence_kind = a > quarter ? DivergenceKind::ToPlusInfinity
                                             : DivergenceKind::ToMinusInfinity;
      }
      break;
    }
    default:
      report.divergence_verdict = DivergenceVerdict::Unknown;
  }
  return report;
}

/// sum_{n<=k} |a_n - 1/4| for the osc31 family, accumulated exactly term by
/// term. Telescopes to (1/8)(1 - 1/(2k+1)), hence tends to 1/8.
template <Numeric T>
T osc31_abs_sum(std::int64_t k) {
  if (k < 1) throw DomainError("k must be >= 1");
  T sum{};
  for (std::int64_t n = 1; n <= k; ++n)
    sum = sum + numeric_traits<T>::ratio(1, 4 * (4 * n * n - 1));
  return sum;
}

/// All prefix values of osc31_abs_sum up to kmax in one pass.
template <Numeric T>
std::vector<T> osc31_abs_sums(std::int64_t kmax) {
  if (kmax < 1) throw DomainError("kmax must be >= 1");
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(kmax));
  T sum{};
  for (std::int64_t n = 1; n <= kmax; ++n) {
    sum = sum + numeric_traits<T>::ratio(1, 4 * (4 * n * n - 1));
    out.push_back(sum);
  }
  return out;
}

/// First N with S_N > 1/4 for the two-periodic family with q > p, from the
/// closed form: N = 2 k with k the least integer with k (q - p) > 1/4.
template <Numeric T>
std::optional<std::int64_t> pq_first_bound_violation(const T& p, const T& q) {
  if (!(q > p)) return std::nullopt;
  const T threshold = numeric_traits<T>::ratio(1, 4) / (q - p);
  std::int64_t k;
  if constexpr (numeric_traits<T>::is_exact)
    k = threshold.floor_ll() + 1;
  else
    k = static_cast<std::int64_t>(std::floor(threshold)) + 1;
  return 2 * k;
}

}  // namespace chainseq
