#include "chainseq/chain.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

using chainseq::closed_form_g31;
using chainseq::closed_form_g31_run;
using chainseq::DomainError;
using chainseq::limit_witness_g;
using chainseq::minimal_parameters;
using chainseq::ParameterRun;
using chainseq::Rational;
using chainseq::RefutedRun;
using chainseq::TermSequence;
using chainseq::Tolerance;
using chainseq::verdict;
using chainseq::VerdictKind;
using chainseq::verify_parameters;

namespace {

TEST(MinimalParameters, PQExactPrefix) {
  const auto seq =
      TermSequence<Rational>::pq_periodic(Rational(11, 50), Rational(6, 25));
  const auto run = minimal_parameters(seq, 2);
  ASSERT_FALSE(run.first_invalid);
  EXPECT_EQ(run.g[0], Rational(0, 1));
  EXPECT_EQ(run.g[1], Rational(3, 100));
  EXPECT_EQ(run.g[2], Rational(49, 97));
}

TEST(MinimalParameters, ConstantQuarterClosedForm) {
  // g_n = n / (2 (n + 1)) for the constant 1/4 sequence.
  const auto seq = TermSequence<Rational>::constant(Rational(1, 4));
  const auto run = minimal_parameters(seq, 64);
  ASSERT_FALSE(run.first_invalid);
  for (std::int64_t n = 0; n <= 64; ++n)
    EXPECT_EQ(run.g[static_cast<std::size_t>(n)], Rational(n, 2 * (n + 1))) << n;
}

TEST(MinimalParameters, RefutesConstantAboveQuarter) {
  // Brute-force float oracle: 0.26 -> 14, 0.3 -> 6, 0.4 -> 3.
  struct Case {
    Rational a;
    std::int64_t index;
  };
  for (const auto& c : {Case{Rational(13, 50), 14}, Case{Rational(3, 10), 6},
                        Case{Rational(2, 5), 3}}) {
    const auto run = minimal_parameters(TermSequence<Rational>::constant(c.a), 100);
    ASSERT_TRUE(run.first_invalid);
    EXPECT_EQ(*run.first_invalid, c.index);
    EXPECT_GT(run.g.back(), Rational(1, 1));
    EXPECT_EQ(run.last_valid_index(), c.index - 1);
  }
}

TEST(MinimalParameters, FloatBackendRefutesAtSameIndex) {
  const auto run = minimal_parameters(TermSequence<double>::constant(0.3), 100);
  ASSERT_TRUE(run.first_invalid);
  EXPECT_EQ(*run.first_invalid, 6);
  EXPECT_NEAR(run.g.back(), 1.615, 1e-2);
}

TEST(MinimalParameters, SeedValidation) {
  const auto seq = TermSequence<Rational>::constant(Rational(1, 4));
  EXPECT_THROW(minimal_parameters(seq, 0), DomainError);
  EXPECT_THROW(minimal_parameters(seq, 10, Rational(1, 1)), DomainError);
  EXPECT_THROW(minimal_parameters(seq, 10, Rational(-1, 2)), DomainError);
  EXPECT_NO_THROW(minimal_parameters(seq, 10, Rational(1, 2)));
}

TEST(MinimalParameters, DivisionByZeroIsTerminal) {
  // a_1 = 1/2 with seed 1/2 gives g_1 = 1 exactly; g_2 is unreachable.
  const auto seq = TermSequence<Rational>::constant(Rational(1, 2));
  const auto ok = minimal_parameters(seq, 1, Rational(1, 2));
  EXPECT_FALSE(ok.first_invalid);
  EXPECT_EQ(ok.g[1], Rational(1, 1));
  const auto bad = minimal_parameters(seq, 2, Rational(1, 2));
  ASSERT_TRUE(bad.first_invalid);
  EXPECT_EQ(*bad.first_invalid, 2);
}

TEST(VerifyParameters, ClosedFormOsc31) {
  const auto seq = TermSequence<Rational>::osc31();
  const auto run = closed_form_g31_run<Rational>(100);
  EXPECT_TRUE(verify_parameters(seq, run));
}

TEST(VerifyParameters, ConstantHalfParameters) {
  const auto seq = TermSequence<Rational>::constant(Rational(1, 4));
  ParameterRun<Rational> run;
  run.horizon = 50;
  for (int i = 0; i <= 50; ++i) run.g.push_back(Rational(1, 2));
  EXPECT_TRUE(verify_parameters(seq, run));
}

TEST(VerifyParameters, RejectsWrongParameters) {
  const auto seq = TermSequence<Rational>::constant(Rational(1, 4));
  ParameterRun<Rational> run;
  run.horizon = 1;
  run.g = {Rational(3, 4), Rational(3, 4)};  // 3/4 * 1/4 = 3/16 != 1/4
  EXPECT_FALSE(verify_parameters(seq, run));
}

TEST(VerifyParameters, RefutedRunFailsVerification) {
  const auto seq = TermSequence<Rational>::constant(Rational(3, 10));
  const auto run = minimal_parameters(seq, 10);
  EXPECT_FALSE(verify_parameters(seq, run));
}

TEST(ClosedFormG31, SmallValues) {
  EXPECT_EQ(closed_form_g31<Rational>(0), Rational(0, 1));
  EXPECT_EQ(closed_form_g31<Rational>(1), Rational(1, 6));
  EXPECT_EQ(closed_form_g31<Rational>(2), Rational(8, 25));
  // Consistency with the term rule: a_1 = g_1 (1 - g_0).
  const auto seq = TermSequence<Rational>::osc31();
  EXPECT_EQ(closed_form_g31<Rational>(1) *
                (Rational(1, 1) - closed_form_g31<Rational>(0)),
            seq.term(1));
}

TEST(ClosedFormG31, MatchesMinimalRun) {
  // The closed form and the recurrence from g_0 = 0 are the same sequence.
  const auto seq = TermSequence<Rational>::osc31();
  const auto run = minimal_parameters(seq, 300);
  ASSERT_FALSE(run.first_invalid);
  for (std::int64_t n = 0; n <= 300; ++n)
    EXPECT_EQ(run.g[static_cast<std::size_t>(n)], closed_form_g31<Rational>(n)) << n;
}

TEST(Verdict, StructuralCertificates) {
  EXPECT_EQ(verdict(TermSequence<Rational>::constant(Rational(1, 4)), 10).kind,
            VerdictKind::CertifiedChain);
  EXPECT_EQ(verdict(TermSequence<Rational>::constant(Rational(1, 10)), 10).kind,
            VerdictKind::CertifiedChain);
  EXPECT_EQ(verdict(TermSequence<Rational>::osc31(), 10).kind,
            VerdictKind::CertifiedChain);
  const auto pq = verdict(
      TermSequence<Rational>::pq_periodic(Rational(11, 50), Rational(6, 25)), 10);
  EXPECT_EQ(pq.kind, VerdictKind::CertifiedChain);
  EXPECT_NE(pq.certificate.find("interval certificate"), std::string::npos);
}

TEST(Verdict, RefutesConstantAboveQuarter) {
  const auto v = verdict(TermSequence<Rational>::constant(Rational(3, 10)), 10);
  EXPECT_EQ(v.kind, VerdictKind::RefutedAt);
  EXPECT_EQ(v.index, 6);
}

TEST(Verdict, ConsistentUpToForUnstructuredData) {
  // A short prefix of the constant-1/4 minimal parameters as a user table:
  // nothing structural to certify, the scan stays clean.
  const auto seq = TermSequence<Rational>::user_table(
      {Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  const auto v = verdict(seq, 3);
  EXPECT_EQ(v.kind, VerdictKind::ConsistentUpTo);
  EXPECT_EQ(v.horizon, 3);
}

TEST(Verdict, TableHorizonClamped) {
  const auto seq = TermSequence<Rational>::user_table({Rational(1, 4)});
  const auto v = verdict(seq, 100);
  EXPECT_EQ(v.kind, VerdictKind::ConsistentUpTo);
  EXPECT_EQ(v.horizon, 1);
}

TEST(Verdict, MonotoneRefutation) {
  // Refuted at k stays refuted at k for every horizon >= k.
  const auto seq = TermSequence<Rational>::constant(Rational(13, 50));
  for (std::int64_t horizon : {14, 20, 50, 1000}) {
    const auto v = verdict(seq, horizon);
    EXPECT_EQ(v.kind, VerdictKind::RefutedAt);
    EXPECT_EQ(v.index, 14) << horizon;
  }
}

TEST(Minimality, SeedSweepDominatesMinimalRun) {
  // Any valid seed produces termwise-larger parameters than g_0 = 0.
  const auto seq = TermSequence<Rational>::osc31();
  const auto minimal = minimal_parameters(seq, 24);
  for (int num = 1; num <= 9; ++num) {
    const auto other = minimal_parameters(seq, 24, Rational(num, 10));
    const std::int64_t both_valid =
        std::min(minimal.last_valid_index(), other.last_valid_index());
    for (std::int64_t n = 0; n <= both_valid; ++n)
      EXPECT_LE(minimal.g[static_cast<std::size_t>(n)],
                other.g[static_cast<std::size_t>(n)])
          << "seed " << num << "/10 at n=" << n;
  }
}

TEST(Minimality, ReconstructionRoundTrip) {
  for (const auto& seq :
       {TermSequence<Rational>::osc31(),
        TermSequence<Rational>::constant(Rational(1, 5)),
        TermSequence<Rational>::pq_periodic(Rational(11, 50), Rational(6, 25))}) {
    const auto run = minimal_parameters(seq, 100);
    ASSERT_FALSE(run.first_invalid);
    EXPECT_TRUE(verify_parameters(seq, run));
  }
}

TEST(Backends, ExactFloatAgreementOverBuiltins) {
  const auto specs = {"constant:a=1/4", "constant:a=1/5", "osc31",
                      "pq:p=11/50,q=6/25"};
  for (const char* text : specs) {
    const auto spec = chainseq::parse_family_spec(text);
    const auto exact_run =
        minimal_parameters(chainseq::make_sequence<Rational>(spec), 1000);
    const auto float_run =
        minimal_parameters(chainseq::make_sequence<double>(spec), 1000);
    ASSERT_FALSE(exact_run.first_invalid) << text;
    ASSERT_FALSE(float_run.first_invalid) << text;
    for (std::size_t i = 0; i < exact_run.g.size(); ++i)
      EXPECT_NEAR(float_run.g[i], exact_run.g[i].to_double(), 1e-9)
          << text << " at " << i;
  }
}

TEST(LimitWitness, ApproachesHalfWhenTermsApproachQuarter) {
  const auto osc = TermSequence<Rational>::osc31();
  const Rational half(1, 2);
  Rational prev_gap(1, 1);
  for (std::int64_t horizon : {10, 100, 1000}) {
    const Rational g = limit_witness_g(osc, horizon);
    const Rational gap = (g - half).magnitude();
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, Rational(1, 1000));

  const auto constant = TermSequence<Rational>::constant(Rational(1, 4));
  const Rational g = limit_witness_g(constant, 10000);
  EXPECT_EQ(g, Rational(10000, 2 * 10001));
  EXPECT_LT((g - half).magnitude(), Rational(1, 10000));
}

TEST(LimitWitness, TotalOffHypothesis) {
  // a_n = 1/8 does not approach 1/4; the witness is far from 1/2 but the
  // operation still succeeds.
  const auto seq = TermSequence<Rational>::constant(Rational(1, 8));
  const Rational g = limit_witness_g(seq, 1000);
  EXPECT_GT((g - Rational(1, 2)).magnitude(), Rational(1, 4));
}

TEST(LimitWitness, RefutedRunThrows) {
  const auto seq = TermSequence<Rational>::constant(Rational(3, 10));
  EXPECT_THROW(limit_witness_g(seq, 100), RefutedRun);
}

}  // namespace
