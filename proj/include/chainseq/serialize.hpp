#pragma once

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <string>

#include "chainseq/chain.hpp"
#include "chainseq/characterization.hpp"
#include "chainseq/chihara.hpp"
#include "chainseq/fixedpoint.hpp"
#include "chainseq/pq.hpp"
#include "chainseq/scalar.hpp"
#include "chainseq/sequences.hpp"

namespace chainseq {

inline constexpr int kSchemaVersion = 1;

/// Exact scalars serialize as "p/q" strings, floats as shortest
/// round-trip decimals.
inline std::string scalar_string(const Rational& x) { return x.to_string(); }
inline std::string scalar_string(double x) { return format_double(x); }

inline nlohmann::json scalar_json(const Rational& x) { return x.to_string(); }
inline nlohmann::json scalar_json(double x) { return x; }

template <Numeric T>
nlohmann::json run_to_json(const ParameterRun<T>& run) {
  nlohmann::json g = nlohmann::json::array();
  for (const T& x : run.g) g.push_back(scalar_json(x));
  nlohmann::json out{{"horizon", run.horizon},
                     {"g0", scalar_json(run.g.front())},
                     {"g", std::move(g)}};
  if (run.first_invalid) {
    out["first_invalid"] = *run.first_invalid;
    out["invalid_reason"] = run.invalid_reason;
  } else {
    out["first_invalid"] = nullptr;
  }
  return out;
}

template <Numeric T>
std::string run_to_csv(const ParameterRun<T>& run) {
  std::ostringstream os;
  os << "n,g_n,valid\n";
  const std::int64_t last_valid = run.last_valid_index();
  for (std::size_t i = 0; i < run.g.size(); ++i)
    os << i << ',' << scalar_string(run.g[i]) << ','
       << (static_cast<std::int64_t>(i) <= last_valid ? 1 : 0) << '\n';
  return os.str();
}

template <Numeric T>
std::string trace_to_csv(const IterationTrace<T>& trace) {
  const T half = numeric_traits<T>::ratio(1, 2);
  std::ostringstream os;
  os << "i,x_i,x_i_minus_half\n";
  for (std::size_t i = 0; i < trace.x.size(); ++i)
    os << i << ',' << scalar_string(trace.x[i]) << ','
       << scalar_string(trace.x[i] - half) << '\n';
  return os.str();
}

template <Numeric T>
nlohmann::json trace_to_json(const IterationTrace<T>& trace) {
  const T half = numeric_traits<T>::ratio(1, 2);
  nlohmann::json xs = nlohmann::json::array();
  nlohmann::json dist = nlohmann::json::array();
  for (const T& x : trace.x) {
    xs.push_back(scalar_json(x));
    dist.push_back(scalar_json(x - half));
  }
  return {{"steps", trace.steps()}, {"x", std::move(xs)},
          {"x_minus_half", std::move(dist)}};
}

inline nlohmann::json verdict_to_json(const ChainVerdict& v) {
  nlohmann::json out{{"kind", std::string(verdict_kind_name(v.kind))},
                     {"horizon", v.horizon}};
  if (v.kind == VerdictKind::RefutedAt) {
    out["index"] = v.index;
    out["reason"] = v.reason;
  }
  if (v.kind == VerdictKind::CertifiedChain) out["certificate"] = v.certificate;
  return out;
}

template <Numeric T>
nlohmann::json oscillation_to_json(const OscillationReport<T>& r) {
  return {{"center", scalar_json(r.center)},
          {"horizon", r.horizon},
          {"count_above", r.count_above},
          {"count_below", r.count_below},
          {"count_equal", r.count_equal},
          {"classification", std::string(osc_classification_name(r.classification))}};
}

template <Numeric T>
nlohmann::json chihara_to_json(const ChiharaReport<T>& r) {
  nlohmann::json out{{"horizon", r.horizon},
                     {"sup_partial_sum", scalar_json(r.sup_partial_sum)},
                     {"final_partial_sum", scalar_json(r.partial_sums.back())},
                     {"divergence_verdict",
                      std::string(divergence_verdict_name(r.divergence_verdict))},
                     {"hypothesis_violated", r.hypothesis_violated}};
  out["bound_violated_at"] =
      r.bound_violated_at ? nlohmann::json(*r.bound_violated_at) : nlohmann::json();
  out["divergence_kind"] = r.divergence_kind == DivergenceKind::None
                               ? nlohmann::json()
                               : nlohmann::json(std::string(
                                     divergence_kind_name(r.divergence_kind)));
  return out;
}

template <Numeric T>
nlohmann::json bound_check_to_json(const BoundCheck<T>& b) {
  return {{"name", b.name},
          {"value", scalar_json(b.value)},
          {"bound", scalar_json(b.bound)},
          {"relation", b.is_lower ? ">=" : "<="},
          {"holds", b.holds}};
}

template <Numeric T>
nlohmann::json certificate_to_json(const IntervalCertificate<T>& cert) {
  nlohmann::json inductive = nlohmann::json::array();
  for (const auto& check : cert.inductive) inductive.push_back(bound_check_to_json(check));
  return {{"interval", {scalar_json(cert.eps), scalar_json(cert.gamma)}},
          {"g1", scalar_json(cert.g1)},
          {"g2", scalar_json(cert.g2)},
          {"base_case",
           {bound_check_to_json(cert.base_g1_lower), bound_check_to_json(cert.base_g1_upper),
            bound_check_to_json(cert.base_g2_lower), bound_check_to_json(cert.base_g2_upper)}},
          {"inductive", std::move(inductive)}};
}

/// Published schema: {condition_i_ok, checks: [{n, residual, tail_bound,
/// verdict}], M}.
template <Numeric T>
nlohmann::json characterization_to_json(const CharacterizationReport<T>& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& check : r.checks) {
    nlohmann::json j{{"n", check.n},
                     {"residual", scalar_json(check.residual)},
                     {"verdict", std::string(check_verdict_name(check.verdict))},
                     {"M", check.truncation}};
    j["tail_bound"] =
        check.tail_bound ? scalar_json(*check.tail_bound) : nlohmann::json();
    checks.push_back(std::move(j));
  }
  nlohmann::json out{{"condition_i_ok", r.ratio_bound_ok},
                     {"checks", std::move(checks)},
                     {"M", r.truncation}};
  if (r.ratio_bound_violation_at)
    out["condition_i_violation_at"] = *r.ratio_bound_violation_at;
  return out;
}

/// Per-term table shared by the analyze JSON and CSV emitters. Rows cover
/// n = 1..N; the seed g_0 travels separately.
template <Numeric T>
struct AnalysisTable {
  std::vector<T> a;
  std::vector<T> a_minus_quarter;
  std::vector<T> partial_sums;
  const ParameterRun<T>* run = nullptr;
};

template <Numeric T>
AnalysisTable<T> build_analysis_table(const TermSequence<T>& seq,
                                      const ChiharaReport<T>& sums,
                                      const ParameterRun<T>& run) {
  const T quarter = numeric_traits<T>::ratio(1, 4);
  AnalysisTable<T> table;
  table.run = &run;
  const std::int64_t horizon = sums.horizon;
  table.a.reserve(static_cast<std::size_t>(horizon));
  table.a_minus_quarter.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t n = 1; n <= horizon; ++n) {
    T a = seq.term(n);
    table.a_minus_quarter.push_back(a - quarter);
    table.a.push_back(std::move(a));
  }
  table.partial_sums = sums.partial_sums;
  return table;
}

template <Numeric T>
nlohmann::json analysis_table_to_json(const AnalysisTable<T>& table) {
  nlohmann::json a = nlohmann::json::array();
  nlohmann::json d = nlohmann::json::array();
  nlohmann::json s = nlohmann::json::array();
  for (const T& x : table.a) a.push_back(scalar_json(x));
  for (const T& x : table.a_minus_quarter) d.push_back(scalar_json(x));
  for (const T& x : table.partial_sums) s.push_back(scalar_json(x));
  return {{"a", std::move(a)},
          {"a_minus_quarter", std::move(d)},
          {"partial_sum", std::move(s)}};
}

template <Numeric T>
std::string analysis_table_to_csv(const AnalysisTable<T>& table) {
  std::ostringstream os;
  os << "# g0=" << scalar_string(table.run->g.front()) << '\n';
  os << "n,a_n,a_n_minus_quarter,S_n,g_n,g_valid\n";
  const std::int64_t last_valid = table.run->last_valid_index();
  for (std::size_t i = 0; i < table.a.size(); ++i) {
    const std::int64_t n = static_cast<std::int64_t>(i) + 1;
    os << n << ',' << scalar_string(table.a[i]) << ','
       << scalar_string(table.a_minus_quarter[i]) << ','
       << scalar_string(table.partial_sums[i]) << ',';
    if (n < static_cast<std::int64_t>(table.run->g.size()))
      os << scalar_string(table.run->g[static_cast<std::size_t>(n)]) << ','
         << (n <= last_valid ? 1 : 0);
    else
      os << ",";
    os << '\n';
  }
  return os.str();
}

}  // namespace chainseq
