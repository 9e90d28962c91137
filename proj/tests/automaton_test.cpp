#include <gtest/gtest.h>

#include "qf1ca/qf1ca.hpp"
#include "support.hpp"

using namespace qf1ca;

namespace {

SimpleQf1ca identity_automaton(std::size_t n = 3) {
  SimpleQf1ca a;
  a.header.alphabet = "01";
  for (std::size_t q = 0; q < n; ++q) a.header.states.push_back("s" + std::to_string(q));
  for (TapeSymbol g : a.header.tape_alphabet()) {
    for (CounterSign s : kAllSigns) a.unitaries[UnitaryKey{g, s}] = Matrix::Identity(n, n);
    for (StateId q = 0; q < n; ++q) a.direction[DirectionKey{q, g}] = Direction::kStay;
  }
  return a;
}

}  // namespace

TEST(GeneralFromSimple, Example3InitialColumn) {
  const SimpleQf1ca s = build_example3();
  const GeneralQf1ca a = general_from_simple(s);
  const StateId q0 = s.header.state_id("q0");
  const StateId q1 = s.header.state_id("q1");
  const auto& list = a.transitions(q0, TapeSymbol::left_end(), CounterSign::kZero);
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list[0].to, q1);
  EXPECT_EQ(list[0].dir, Direction::kStay);
  EXPECT_EQ(list[0].amp, Amplitude(1.0));
}

TEST(GeneralFromSimple, Identity) {
  const GeneralQf1ca a = general_from_simple(identity_automaton());
  for (StateId q = 0; q < 3; ++q) {
    for (TapeSymbol g : a.header.tape_alphabet()) {
      for (CounterSign s : kAllSigns) {
        const auto& list = a.transitions(q, g, s);
        ASSERT_EQ(list.size(), 1u);
        EXPECT_EQ(list[0].to, q);
        EXPECT_EQ(list[0].dir, Direction::kStay);
      }
    }
  }
}

TEST(GeneralFromSimple, Example4ZeroColumn) {
  const double p = critical_p();
  const SimpleQf1ca s = build_example4(p);
  const GeneralQf1ca a = general_from_simple(s);
  const StateId q1 = s.header.state_id("q1");
  const StateId q2 = s.header.state_id("q2");
  const StateId qr = s.header.state_id("q_r");
  for (CounterSign sg : kAllSigns) {
    const TapeSymbol zero = TapeSymbol::input('0');
    EXPECT_NEAR(std::abs(a.amplitude(q1, zero, sg, q1, Direction::kRight) - (1 - p)), 0, 1e-15);
    EXPECT_NEAR(std::abs(a.amplitude(q1, zero, sg, q2, Direction::kRight) - std::sqrt(p * (1 - p))), 0, 1e-15);
    EXPECT_NEAR(std::abs(a.amplitude(q1, zero, sg, qr, *s.direction_of(qr, zero)) - std::sqrt(p)), 0, 1e-15);
  }
}

TEST(GeneralFromSimple, EntriesCopiedExactly) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const SimpleQf1ca s = qf1ca::testing::random_simple(rng);
    const GeneralQf1ca a = general_from_simple(s);
    for (const auto& [key, m] : s.unitaries) {
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          const auto d = *s.direction_of(static_cast<StateId>(r), key.symbol);
          EXPECT_EQ(a.amplitude(static_cast<StateId>(c), key.symbol, key.sign, static_cast<StateId>(r), d), m(r, c));
        }
      }
      // Column norms carry over.
      for (StateId q = 0; q < s.header.num_states(); ++q) {
        double total = 0;
        for (const auto& t : a.transitions(q, key.symbol, key.sign)) total += std::norm(t.amp);
        EXPECT_NEAR(total, 1.0, 1e-9);
      }
    }
  }
}

TEST(GeneralFromSimple, MissingDirectionThrows) {
  SimpleQf1ca s = identity_automaton();
  s.direction.erase(DirectionKey{1, TapeSymbol::input('0')});
  EXPECT_THROW(general_from_simple(s), MissingDirection);
}

TEST(ClassifyConfig, ThreeTypes) {
  AutomatonHeader h;
  h.alphabet = "0";
  h.states = {"q", "qa", "qr"};
  h.accepting = {1};
  h.rejecting = {2};
  h.acceptance = AcceptanceType::kStateAndZero;
  EXPECT_EQ(classify_config(h, {1, 0}), ConfigClass::kAccept);
  EXPECT_EQ(classify_config(h, {1, 3}), ConfigClass::kNonHalting);
  EXPECT_EQ(classify_config(h, {2, 3}), ConfigClass::kReject);
  h.acceptance = AcceptanceType::kStateOnly;
  EXPECT_EQ(classify_config(h, {1, 3}), ConfigClass::kAccept);
  h.acceptance = AcceptanceType::kZeroCounter;
  EXPECT_EQ(classify_config(h, {2, 0}), ConfigClass::kAccept);
  EXPECT_EQ(classify_config(h, {0, 0}), ConfigClass::kAccept);
  EXPECT_EQ(classify_config(h, {2, -1}), ConfigClass::kReject);
  EXPECT_EQ(classify_config(h, {1, 2}), ConfigClass::kNonHalting);
}

TEST(ClassifyConfig, Partition) {
  AutomatonHeader h;
  h.states = {"a", "b", "c", "d"};
  h.accepting = {1, 3};
  h.rejecting = {2};
  for (auto t : {AcceptanceType::kStateAndZero, AcceptanceType::kZeroCounter, AcceptanceType::kStateOnly}) {
    h.acceptance = t;
    for (StateId q = 0; q < 4; ++q) {
      for (Counter k = -3; k <= 3; ++k) {
        const auto c = classify_config(h, {q, k});
        const bool acc = c == ConfigClass::kAccept, rej = c == ConfigClass::kReject,
                   non = c == ConfigClass::kNonHalting;
        EXPECT_EQ(acc + rej + non, 1);
      }
    }
  }
}

TEST(ValidateStructure, Examples) {
  EXPECT_TRUE(validate_structure(build_example3()).empty());
  EXPECT_TRUE(validate_structure(general_from_simple(build_example3())).empty());

  GeneralQf1ca a = general_from_simple(build_example3());
  const StateId qa = a.header.state_id("q_a");
  a.header.rejecting.insert(qa);
  auto v = validate_structure(a);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, StructureViolation::Kind::kDisjointness);
  EXPECT_STREQ(to_string(v[0].kind), "DisjointnessViolation");
  EXPECT_NE(v[0].detail.find("q_a"), std::string::npos);

  GeneralQf1ca b = general_from_simple(build_example3());
  b.add(0, TapeSymbol::input('0'), CounterSign::kZero, 99, Direction::kStay, 0.5);
  v = validate_structure(b);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, StructureViolation::Kind::kUnknownState);

  GeneralQf1ca c = general_from_simple(build_example3());
  c.add(0, TapeSymbol::input('0'), CounterSign::kZero, 0, Direction::kLeft, 3.0);
  bool large = false;
  for (const auto& x : validate_structure(c)) large |= x.kind == StructureViolation::Kind::kAmplitudeTooLarge;
  EXPECT_TRUE(large);
}

TEST(ValidateStructure, ReservedSymbol) {
  GeneralQf1ca a = general_from_simple(build_example3());
  a.header.alphabet += '$';
  bool found = false;
  for (const auto& v : validate_structure(a)) found |= v.kind == StructureViolation::Kind::kReservedSymbol;
  EXPECT_TRUE(found);
}
