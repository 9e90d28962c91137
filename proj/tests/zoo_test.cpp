#include <gtest/gtest.h>

#include "qf1ca/qf1ca.hpp"
#include "support.hpp"

using namespace qf1ca;
using qf1ca::testing::block_word;

TEST(CriticalP, RootOfCubic) {
  const double p = critical_p();
  EXPECT_NEAR(p, 0.6823278038, 1e-10);
  EXPECT_NEAR(p * p * p + p - 1, 0.0, 1e-15);
}

TEST(Example3, BothVariants) {
  for (auto v : {Example3Variant::kIntegerCounter, Example3Variant::kNonNegative}) {
    const SimpleQf1ca s = build_example3(v);
    EXPECT_TRUE(check_simple(s).ok());
    const GeneralQf1ca a = general_from_simple(s);
    EXPECT_NEAR(run_mm(a, "00000100000").p_accept, 1.0, 1e-9);
    EXPECT_NEAR(run_mm(a, "000001000").p_reject_total, 1.0, 1e-9);
  }
  EXPECT_EQ(build_example3(Example3Variant::kNonNegative).header.counter_domain, CounterDomain::kNonNegative);
  // The non-negative variant rejects mid-word instead of going below zero.
  const GeneralQf1ca nn = general_from_simple(build_example3(Example3Variant::kNonNegative));
  EXPECT_NO_THROW(run_mm(nn, "0100000"));
}

// Accepting by state (type 3) works too; acceptance by zero counter alone
// accepts right after # under MM and is reported, not asserted as a
// recognizer.
TEST(Example3, OtherAcceptanceTypes) {
  const GeneralQf1ca st = general_from_simple(make_zoo_entry("example3", {{"acceptance", "state"}}).automaton);
  for (const auto& w : qf1ca::testing::all_words("01", 9)) {
    EXPECT_NEAR(run_mm(st, w).p_accept, qf1ca::testing::in_l1(w) ? 1.0 : 0.0, 1e-9) << w;
  }
  const GeneralQf1ca zero = general_from_simple(make_zoo_entry("example3", {{"acceptance", "zero"}}).automaton);
  EXPECT_NEAR(run_mm(zero, "0011").p_accept, 1.0, 1e-9);
}

TEST(Example4, Examples) {
  const double p = critical_p();
  const SimpleQf1ca s = build_example4(p);
  EXPECT_TRUE(check_simple(s).ok());
  const GeneralQf1ca a = general_from_simple(s);
  EXPECT_NEAR(run_mm(a, "0011").p_accept, 0.6823278038, 1e-6);
  EXPECT_NEAR(run_mm(a, "01").p_accept, 0.6823278038, 1e-6);
  // The superposition after # is a fixed point of the 0 step.
  const StateId q1 = s.header.state_id("q1");
  const StateId q2 = s.header.state_id("q2");
  const StateId qr = s.header.state_id("q_r");
  StateVector v{{{q1, 0}, std::sqrt(1 - p)}, {{q2, 0}, std::sqrt(p)}};
  const StateVector w = evolve_step(a, TapeSymbol::input('0'), v);
  double leak = 0;
  for (const auto& [c, amp] : w) {
    if (c.state == qr) leak += std::abs(amp);
  }
  EXPECT_LE(leak, 1e-12);
  EXPECT_THROW(build_example4(0.0), BadParameter);
  EXPECT_THROW(build_example4(1.0), BadParameter);
  EXPECT_TRUE(check_simple(build_example4(0.5)).ok());
}

TEST(PathPredicate, Examples) {
  EXPECT_TRUE(path_predicate(3, 4, 4, 4));
  EXPECT_TRUE(path_predicate(2, 4, 3, 2));
  EXPECT_FALSE(path_predicate(2, 5, 3, 2));
}

TEST(Example5, Examples) {
  const SimpleQf1ca s = build_example5(3);
  EXPECT_TRUE(check_simple(s).ok());
  const GeneralQf1ca a = general_from_simple(s);
  EXPECT_NEAR(run_mm(a, block_word(2, 2, 2)).p_accept, 1.0, 1e-9);
  const RunResult r = run_mm(a, block_word(4, 3, 2));
  EXPECT_NEAR(r.p_accept, 1.0 / 3, 1e-9);
  EXPECT_NEAR(r.p_reject_total, 2.0 / 3, 1e-9);
  EXPECT_NEAR(run_mm(general_from_simple(build_example5(5)), "0110").p_reject_total, 1.0, 1e-9);
  EXPECT_THROW(build_example5(1), BadParameter);
}

TEST(Example5, MalformedRejectedByEveryPath) {
  const GeneralQf1ca a = general_from_simple(build_example5(4));
  for (const auto& w : qf1ca::testing::all_words("01", 9)) {
    long l, m, n;
    if (qf1ca::testing::parse_block_word(w, l, m, n)) continue;
    EXPECT_NEAR(run_mm(a, w).p_reject, 1.0, 1e-9) << w;
  }
}

TEST(Theorem5, Examples) {
  const SimpleQf1ca s = build_theorem5();
  EXPECT_TRUE(check_simple(s).ok());
  const GeneralQf1ca a = general_from_simple(s);
  const RunResult r = run_mm(a, "010101");
  EXPECT_NEAR(r.p_accept, 3.0 / 7, 1e-9);
  EXPECT_NEAR(r.p_reject_total, 4.0 / 7, 1e-9);
  EXPECT_NEAR(run_mm(a, block_word(2, 1, 2)).p_accept, 4.0 / 7, 1e-9);
  EXPECT_NEAR(run_mm(a, block_word(1, 2, 3)).p_reject_total, 4.0 / 7, 1e-9);
  // Initial superposition.
  const GeneralQf1ca g = a;
  const StateVector v = evolve_step(g, TapeSymbol::left_end(), StateVector::basis({g.header.initial, 0}));
  EXPECT_NEAR(std::norm(v.at({g.header.state_id("q_a"), 0})), 3.0 / 7, 1e-12);
  EXPECT_NEAR(std::norm(v.at({g.header.state_id("q1"), 0})), 2.0 / 7, 1e-12);
  EXPECT_NEAR(std::norm(v.at({g.header.state_id("q2"), 0})), 2.0 / 7, 1e-12);
}

TEST(Theorem5, MalformedWords) {
  const GeneralQf1ca a = general_from_simple(build_theorem5());
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> len(0, 12), bit(0, 1);
  int seen = 0;
  while (seen < 100) {
    std::string w;
    for (int i = len(rng); i > 0; --i) w += static_cast<char>('0' + bit(rng));
    long l, m, n;
    if (qf1ca::testing::parse_block_word(w, l, m, n)) continue;
    ++seen;
    EXPECT_NEAR(run_mm(a, w).p_reject_total, 4.0 / 7, 1e-9) << w;
  }
}

TEST(Theorem6, MarginReported) {
  const GeneralQf1ca a = general_from_simple(build_theorem6_experimental());
  EXPECT_TRUE(check_conditions(a).ok());
  std::vector<std::string> in, out;
  for (int l = 0; l <= 5; ++l) {
    for (int m = 0; m <= 5; ++m) {
      for (int n = 0; n <= 5; ++n) {
        ((l == m) + (l == n) + (m == n) == 1 ? in : out).push_back(block_word(l, m, n));
      }
    }
  }
  const Margin mg = recognition_margin(a, in, out);
  RecordProperty("min_accept", std::to_string(mg.min_accept));
  RecordProperty("min_reject_total", std::to_string(mg.min_reject_total));
  std::printf("theorem 6 experimental margin: accept %.12g, reject %.12g\n", mg.min_accept, mg.min_reject_total);
}

TEST(ZooEntry, NamesAndParams) {
  for (const auto& name : zoo_names()) {
    const ZooEntry e = make_zoo_entry(name);
    EXPECT_EQ(e.name, name);
    EXPECT_FALSE(e.claims.empty());
    EXPECT_TRUE(check_simple(e.automaton).ok()) << name;
    EXPECT_TRUE(validate_structure(e.automaton).empty()) << name;
  }
  EXPECT_THROW(make_zoo_entry("nope"), BadParameter);
  EXPECT_THROW(make_zoo_entry("example4", {{"q", "1"}}), BadParameter);
  EXPECT_THROW(make_zoo_entry("example4", {{"p", "abc"}}), BadParameter);
  EXPECT_THROW(make_zoo_entry("example5", {{"N", "2.5"}}), BadParameter);
  EXPECT_EQ(make_zoo_entry("example5", {{"N", "4"}}).automaton.header.accepting.size(), 1u + 2 + 3 + 4);
}

TEST(ZooEntry, BuildersArePure) {
  const std::string a = io::emit_automaton(make_zoo_entry("example5").automaton);
  const std::string b = io::emit_automaton(make_zoo_entry("example5").automaton);
  EXPECT_EQ(a, b);
}
