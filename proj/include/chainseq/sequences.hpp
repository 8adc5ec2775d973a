#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chainseq/errors.hpp"
#include "chainseq/scalar.hpp"

namespace chainseq {

inline constexpr std::int64_t kUnboundedIndex = INT64_MAX;

/// Rule n -> epsilon_n (n >= 1) for sequences written as
/// a_n = (1 + (-1)^n epsilon_n) / 4. Closed-form rules are unbounded,
/// table rules end at the table length.
template <Numeric T>
struct EpsilonRule {
  std::function<T(std::int64_t)> fn;
  std::int64_t max_index = kUnboundedIndex;
  bool tends_to_zero = false;
  bool strictly_positive = false;

  static EpsilonRule closed_form(std::function<T(std::int64_t)> f, bool tends_to_zero,
                                 bool strictly_positive = false) {
    EpsilonRule r;
    r.fn = std::move(f);
    r.tends_to_zero = tends_to_zero;
    r.strictly_positive = strictly_positive;
    return r;
  }

  static EpsilonRule from_table(std::vector<T> values, bool tends_to_zero = false) {
    EpsilonRule r;
    r.max_index = static_cast<std::int64_t>(values.size());
    bool positive = !values.empty();
    const T zero{};
    for (const T& v : values) {
      if (v < zero) throw NotEpsilonForm("epsilon table entry below zero");
      if (!(v > zero)) positive = false;
    }
    r.strictly_positive = positive;
    r.tends_to_zero = tends_to_zero;
    r.fn = [table = std::move(values)](std::int64_t n) { return table[n - 1]; };
    return r;
  }

  T at(std::int64_t n) const {
    if (n < 1 || n > max_index)
      throw IndexOutOfRange("epsilon index " + std::to_string(n) + " out of range");
    T v = fn(n);
    if (v < T{}) throw NotEpsilonForm("epsilon_" + std::to_string(n) + " is negative");
    return v;
  }
};

enum class FamilyKind { Constant, Osc31, PQPeriodic, EpsilonForm, UserTable };

inline std::string_view family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Constant: return "constant";
    case FamilyKind::Osc31: return "osc31";
    case FamilyKind::PQPeriodic: return "pq";
    case FamilyKind::EpsilonForm: return "eps";
    case FamilyKind::UserTable: return "table";
  }
  return "?";
}

/// A term rule n -> a_n (n >= 1), one of the built-in families or a finite
/// user table. Values are immutable after construction.
template <Numeric T>
class TermSequence {
 public:
  /// Requires a > 0; whether the constant sequence is a chain sequence is
  /// decided by the verdict machinery, not assumed here.
  static TermSequence constant(T a) {
    if (!(a > T{})) throw DomainError("constant term must be positive");
    return TermSequence(ConstantFamily{std::move(a)});
  }

  /// a_n = 1/4 + (-1)^n / (4 (4 n^2 - 1)).
  static TermSequence osc31() { return TermSequence(Osc31Family{}); }

  /// a_{2k-1} = 1/4 - p, a_{2k} = 1/4 + q. Requires p, q > 0, p < 1/4,
  /// q < 3/4 so that every term stays inside (0, 1).
  static TermSequence pq_periodic(T p, T q) {
    const T quarter = numeric_traits<T>::ratio(1, 4);
    const T three_quarters = numeric_traits<T>::ratio(3, 4);
    if (!(p > T{}) || !(q > T{})) throw DomainError("p and q must be positive");
    if (!(p < quarter)) throw DomainError("p must be below 1/4");
    if (!(q < three_quarters)) throw DomainError("q must be below 3/4");
    return TermSequence(PQFamily{std::move(p), std::move(q)});
  }

  /// a_n = (1 + (-1)^n epsilon_n) / 4. When the rule declares a vanishing
  /// limit, that claim is spot-checked at n = 1e3 and 1e4 where evaluable.
  static TermSequence epsilon_form(EpsilonRule<T> rule) {
    if (rule.tends_to_zero) spot_check_decay(rule);
    return TermSequence(EpsilonFamily{std::move(rule)});
  }

  /// Finite table of terms, each in (0, 1), indexed from n = 1.
  static TermSequence user_table(std::vector<T> values) {
    if (values.empty()) throw DomainError("user table must be nonempty");
    const T zero{};
    const T one = numeric_traits<T>::ratio(1, 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] > zero) || !(values[i] < one))
        throw DomainError("table entry " + std::to_string(i + 1) + " outside (0,1)");
    }
    return TermSequence(TableFamily{std::move(values)});
  }

  T term(std::int64_t n) const {
    if (n < 1) throw IndexOutOfRange("term index must be >= 1");
    return std::visit([n](const auto& fam) { return eval(fam, n); }, family_);
  }

  /// epsilon_n with 4 a_n = 1 + (-1)^n epsilon_n. Throws NotEpsilonForm when
  /// the sign pattern around 1/4 is violated, i.e. (-1)^n (4 a_n - 1) < 0.
  T epsilon(std::int64_t n) const {
    if (const auto* fam = std::get_if<EpsilonFamily>(&family_)) return fam->rule.at(n);
    if (std::holds_alternative<Osc31Family>(family_)) {
      if (n < 1) throw IndexOutOfRange("epsilon index must be >= 1");
      return numeric_traits<T>::ratio(1, 4 * n * n - 1);
    }
    const T four = numeric_traits<T>::ratio(4, 1);
    const T one = numeric_traits<T>::ratio(1, 1);
    T signed_eps = four * term(n) - one;
    if (n % 2 != 0) signed_eps = -signed_eps;
    if (signed_eps < T{})
      throw NotEpsilonForm("sign pattern violated at n = " + std::to_string(n));
    return signed_eps;
  }

  std::int64_t max_index() const {
    if (const auto* fam = std::get_if<TableFamily>(&family_))
      return static_cast<std::int64_t>(fam->values.size());
    if (const auto* fam = std::get_if<EpsilonFamily>(&family_))
      return fam->rule.max_index;
    return kUnboundedIndex;
  }

  FamilyKind kind() const {
    return std::visit([](const auto& fam) { return fam.kind; }, family_);
  }

  /// True when the family structure alone guarantees infinitely many terms on
  /// each side of 1/4 (two-periodic with p,q > 0, or strictly positive
  /// epsilon_n in the oscillatory normal form).
  bool oscillatory_by_structure() const {
    if (std::holds_alternative<Osc31Family>(family_)) return true;
    if (std::holds_alternative<PQFamily>(family_)) return true;
    if (const auto* fam = std::get_if<EpsilonFamily>(&family_))
      return fam->rule.strictly_positive && fam->rule.max_index == kUnboundedIndex;
    return false;
  }

  std::optional<T> constant_value() const {
    if (const auto* fam = std::get_if<ConstantFamily>(&family_)) return fam->a;
    return std::nullopt;
  }

  std::optional<std::pair<T, T>> pq_values() const {
    if (const auto* fam = std::get_if<PQFamily>(&family_))
      return std::make_pair(fam->p, fam->q);
    return std::nullopt;
  }

 private:
  struct ConstantFamily {
    static constexpr FamilyKind kind = FamilyKind::Constant;
    T a;
  };
  struct Osc31Family {
    static constexpr FamilyKind kind = FamilyKind::Osc31;
  };
  struct PQFamily {
    static constexpr FamilyKind kind = FamilyKind::PQPeriodic;
    T p, q;
  };
  struct EpsilonFamily {
    static constexpr FamilyKind kind = FamilyKind::EpsilonForm;
    EpsilonRule<T> rule;
  };
  struct TableFamily {
    static constexpr FamilyKind kind = FamilyKind::UserTable;
    std::vector<T> values;
  };

  using Family =
      std::variant<ConstantFamily, Osc31Family, PQFamily, EpsilonFamily, TableFamily>;

  explicit TermSequence(Family f) : family_(std::move(f)) {}

  static T eval(const ConstantFamily& fam, std::int64_t) { return fam.a; }

  static T eval(const Osc31Family&, std::int64_t n) {
    const T quarter = numeric_traits<T>::ratio(1, 4);
    const T wobble = numeric_traits<T>::ratio(1, 4 * (4 * n * n - 1));
    return n % 2 == 0 ? quarter + wobble : quarter - wobble;
  }

  static T eval(const PQFamily& fam, std::int64_t n) {
    const T quarter = numeric_traits<T>::ratio(1, 4);
    return n % 2 == 0 ? quarter + fam.q : quarter - fam.p;
  }

  static T eval(const EpsilonFamily& fam, std::int64_t n) {
    const T quarter = numeric_traits<T>::ratio(1, 4);
    const T eps = fam.rule.at(n);
    const T a = n % 2 == 0 ? quarter * (numeric_traits<T>::ratio(1, 1) + eps)
                           : quarter * (numeric_traits<T>::ratio(1, 1) - eps);
    if (!(a > T{}) || !(a < numeric_traits<T>::ratio(1, 1)))
      throw DomainError("epsilon-form term outside (0,1) at n = " + std::to_string(n));
    return a;
  }

  static T eval(const TableFamily& fam, std::int64_t n) {
    if (n > static_cast<std::int64_t>(fam.values.size()))
      throw IndexOutOfRange("table index " + std::to_string(n) + " beyond length " +
                            std::to_string(fam.values.size()));
    return fam.values[static_cast<std::size_t>(n - 1)];
  }

  // Declared limits cannot be decided from finitely many terms; require the
  // tail samples to have dropped below epsilon_1 / 100 where evaluable.
  static void spot_check_decay(const EpsilonRule<T>& rule) {
    if (rule.max_index < 1) return;
    const T eps1 = rule.at(1);
    if (!(eps1 > T{})) return;
    const T gate = eps1 * numeric_traits<T>::ratio(1, 100);
    for (std::int64_t probe : {std::int64_t{1000}, std::int64_t{10000}}) {
      if (probe > rule.max_index) continue;
      if (!(rule.at(probe) < gate))
        throw std::invalid_argument(
            "epsilon rule declared tends_to_zero but epsilon_" + std::to_string(probe) +
            " has not decayed below epsilon_1 / 100");
    }
  }

  Family family_;
};

/// Backend-independent family descriptor produced by the spec grammar:
///   constant:a=1/4 | osc31 | pq:p=11/50,q=6/25 | eps:table=[...] | table=[...]
/// Values parse as "p/q" or decimal.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Constant;
  Rational a, p, q;
  std::vector<Rational> table;
};

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::vector<Rational> parse_bracket_list(std::string_view text,
                                                std::string_view context) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ParseError("expected [...] list in '" + std::string(context) + "'");
  const std::string_view inner = text.substr(1, text.size() - 2);
  std::vector<Rational> values;
  if (inner.empty()) return values;
  for (const std::string& item : split(inner, ','))
    values.push_back(Rational::from_string(item));
  return values;
}

inline Rational parse_named_value(std::string_view field, std::string_view key) {
  const auto eq = field.find('=');
  if (eq == std::string_view::npos || field.substr(0, eq) != key)
    throw ParseError("expected '" + std::string(key) + "=...' in family spec, got '" +
                     std::string(field) + "'");
  return Rational::from_string(field.substr(eq + 1));
}

}  // namespace detail

inline FamilySpec parse_family_spec(std::string_view text) {
  FamilySpec spec;
  if (text == "osc31") {
    spec.kind = FamilyKind::Osc31;
    return spec;
  }
  if (text.rfind("constant:", 0) == 0) {
    spec.kind = FamilyKind::Constant;
    spec.a = detail::parse_named_value(text.substr(9), "a");
    return spec;
  }
  if (text.rfind("pq:", 0) == 0) {
    spec.kind = FamilyKind::PQPeriodic;
    const auto fields = detail::split(text.substr(3), ',');
    if (fields.size() != 2)
      throw ParseError("pq spec needs exactly p=... and q=...: '" + std::string(text) + "'");
    spec.p = detail::parse_named_value(fields[0], "p");
    spec.q = detail::parse_named_value(fields[1], "q");
    return spec;
  }
  if (text.rfind("eps:table=", 0) == 0) {
    spec.kind = FamilyKind::EpsilonForm;
    spec.table = detail::parse_bracket_list(text.substr(10), text);
    return spec;
  }
  if (text.rfind("table=", 0) == 0) {
    spec.kind = FamilyKind::UserTable;
    spec.table = detail::parse_bracket_list(text.substr(6), text);
    return spec;
  }
  throw ParseError("unrecognized family spec: '" + std::string(text) + "'");
}

template <Numeric T>
TermSequence<T> make_sequence(const FamilySpec& spec) {
  using traits = numeric_traits<T>;
  switch (spec.kind) {
    case FamilyKind::Constant:
      return TermSequence<T>::constant(traits::from_rational(spec.a));
    case FamilyKind::Osc31:
      return TermSequence<T>::osc31();
    case FamilyKind::PQPeriodic:
      return TermSequence<T>::pq_periodic(traits::from_rational(spec.p),
                                          traits::from_rational(spec.q));
    case FamilyKind::EpsilonForm: {
      std::vector<T> eps;
      eps.reserve(spec.table.size());
      for (const Rational& r : spec.table) eps.push_back(traits::from_rational(r));
      return TermSequence<T>::epsilon_form(EpsilonRule<T>::from_table(std::move(eps)));
    }
    case FamilyKind::UserTable: {
      std::vector<T> values;
      values.reserve(spec.table.size());
      for (const Rational& r : spec.table) values.push_back(traits::from_rational(r));
      return TermSequence<T>::user_table(std::move(values));
    }
  }
  throw ParseError("unknown family kind");
}

inline std::string family_spec_string(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::Constant: return "constant:a=" + spec.a.to_string();
    case FamilyKind::Osc31: return "osc31";
    case FamilyKind::PQPeriodic:
      return "pq:p=" + spec.p.to_string() + ",q=" + spec.q.to_string();
    case FamilyKind::EpsilonForm:
    case FamilyKind::UserTable: {
      std::string out(spec.kind == FamilyKind::EpsilonForm ? "eps:table=[" : "table=[");
      for (std::size_t i = 0; i < spec.table.size(); ++i) {
        if (i) out += ',';
        out += spec.table[i].to_string();
      }
      out += ']';
      return out;
    }
  }
  return "?";
}

}  // namespace chainseq
