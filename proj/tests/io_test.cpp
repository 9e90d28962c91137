#include <gtest/gtest.h>

#include <sstream>

#include "qf1ca/qf1ca.hpp"
#include "support.hpp"

using namespace qf1ca;

namespace {

std::string example3_text() { return io::emit_automaton(build_example3()); }

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  if (at != std::string::npos) s.replace(at, from.size(), to);
  return s;
}

}  // namespace

TEST(RoundTrip, ZooBitExact) {
  std::mt19937_64 rng(41);
  std::vector<SimpleQf1ca> all;
  for (const auto& name : zoo_names()) all.push_back(make_zoo_entry(name).automaton);
  for (int i = 0; i < 10; ++i) all.push_back(qf1ca::testing::random_simple(rng));
  for (const auto& s : all) {
    const std::string text = io::emit_automaton(s);
    const io::AnyAutomaton back = io::parse_automaton(text);
    const auto& b = std::get<SimpleQf1ca>(back);
    EXPECT_EQ(b.header.states, s.header.states);
    EXPECT_EQ(b.header.accepting, s.header.accepting);
    EXPECT_EQ(b.header.rejecting, s.header.rejecting);
    EXPECT_EQ(b.header.acceptance, s.header.acceptance);
    EXPECT_EQ(b.header.counter_domain, s.header.counter_domain);
    EXPECT_EQ(b.direction, s.direction);
    for (const auto& [key, m] : s.unitaries) {
      EXPECT_TRUE((b.unitaries.at(key).array() == m.array()).all());
    }
    EXPECT_EQ(io::emit_automaton(back), text);

    const GeneralQf1ca g = general_from_simple(s);
    const auto gb = std::get<GeneralQf1ca>(io::parse_automaton(io::emit_automaton(g)));
    EXPECT_EQ(io::emit_automaton(gb), io::emit_automaton(g));
    for (const auto& [key, list] : g.delta) {
      const auto& other = gb.delta.at(key);
      ASSERT_EQ(other.size(), list.size());
      for (std::size_t i = 0; i < list.size(); ++i) EXPECT_EQ(other[i].amp, list[i].amp);
    }
  }
}

TEST(RoundTrip, ObservationAndDomain) {
  SimpleQf1ca s = make_zoo_entry("example3", {{"variant", "nonneg"}, {"observation", "mo"}}).automaton;
  const auto b = std::get<SimpleQf1ca>(io::parse_automaton(io::emit_automaton(s)));
  EXPECT_EQ(b.header.observation, Observation::kOnceMeasure);
  EXPECT_EQ(b.header.counter_domain, CounterDomain::kNonNegative);
}

TEST(Parse, Errors) {
  EXPECT_THROW(io::parse_automaton("{not json"), ParseError);
  EXPECT_THROW(io::parse_automaton("[]"), ParseError);
  EXPECT_THROW(io::parse_automaton("{}"), ParseError);
  const std::string t = example3_text();
  EXPECT_NO_THROW(io::parse_automaton(t));
  EXPECT_THROW(io::parse_automaton(replace(t, "\"simple\"", "\"weird\"")), ParseError);
  EXPECT_THROW(io::parse_automaton(replace(t, "\"state_and_zero\"", "\"sometimes\"")), ParseError);
  EXPECT_THROW(io::parse_automaton(replace(t, "\"mm\"", "\"xx\"")), ParseError);
  EXPECT_THROW(io::parse_automaton(replace(t, "\"initial\": \"q0\"", "\"initial\": \"zz\"")), ParseError);
  EXPECT_THROW(io::parse_automaton(replace(t, "\"0\",", "\"#\",")), ParseError);
  EXPECT_THROW(io::parse_automaton(replace(t, "\"0\",", "\"$\",")), ParseError);
  EXPECT_THROW(io::parse_automaton(replace(t, "\"0|0\"", "\"0|2\"")), ParseError);
  EXPECT_THROW(io::parse_automaton(replace(t, "\"0|0\"", "\"7|0\"")), ParseError);
  EXPECT_THROW(io::parse_automaton(replace(t, ": \"D\"", ": \"X\"")), ParseError);
}

TEST(Parse, GeneralDocument) {
  const char* doc = R"({
    "kind": "general", "alphabet": ["a"], "states": ["s", "t"], "initial": "s",
    "accepting": ["t"], "rejecting": [], "acceptance": "state",
    "observation": "mm", "counter_domain": "int",
    "delta": [{"from": "s", "symbol": "#", "sign": 0, "to": "s", "dir": "D", "amp": {"re": 1, "im": 0}},
              {"from": "s", "symbol": "a", "sign": 0, "to": "t", "dir": "R", "amp": {"re": 0, "im": 1}},
              {"from": "t", "symbol": "a", "sign": 0, "to": "s", "dir": "R", "amp": {"re": 1, "im": 0}}]
  })";
  const auto g = std::get<GeneralQf1ca>(io::parse_automaton(doc));
  EXPECT_EQ(g.amplitude(0, TapeSymbol::input('a'), CounterSign::kZero, 1, Direction::kRight), Amplitude(0, 1));
  EXPECT_NEAR(run_mm(g, "a").p_accept, 1.0, 1e-12);
  std::string bad = doc;
  bad.replace(bad.find("\"sign\": 0"), 9, "\"sign\": 3");
  EXPECT_THROW(io::parse_automaton(bad), ParseError);
}

TEST(Sweep, RangesAndPatterns) {
  auto [name, r] = io::parse_range("a=1..3");
  EXPECT_EQ(name, "a");
  EXPECT_EQ(r.lo, 1);
  EXPECT_EQ(r.hi, 3);
  EXPECT_EQ(io::parse_range("b=4").second.hi, 4);
  EXPECT_THROW(io::parse_range("a"), ParseError);
  EXPECT_THROW(io::parse_range("a=-1..2"), ParseError);
  EXPECT_THROW(io::parse_range("a=x..2"), ParseError);

  io::SweepSpec spec{"0^a 1 0^b 1 0^2", {}};
  spec.ranges.insert(io::parse_range("a=0..1"));
  spec.ranges.insert(io::parse_range("b=2..3"));
  EXPECT_EQ(io::expand_pattern(spec, {{"a", 1}, {"b", 3}}), "0100010" "0");
  const auto all = io::sweep_assignments(spec);
  ASSERT_EQ(all.size(), 4u);
  EXPECT_EQ(all[0], (std::map<std::string, long>{{"a", 0}, {"b", 2}}));
  EXPECT_EQ(all[1], (std::map<std::string, long>{{"a", 0}, {"b", 3}}));
  EXPECT_EQ(all[3], (std::map<std::string, long>{{"a", 1}, {"b", 3}}));

  io::SweepSpec missing{"0^z", {}};
  std::ostringstream out;
  EXPECT_THROW(io::write_sweep_csv(general_from_simple(build_example3()), missing, out), ParseError);
  EXPECT_TRUE(out.str().empty());
}

TEST(Sweep, Example3Diagonal) {
  io::SweepSpec spec{"0^a 1 0^b", {}};
  spec.ranges.insert(io::parse_range("a=0..4"));
  spec.ranges.insert(io::parse_range("b=0..4"));
  std::ostringstream out;
  io::write_sweep_csv(general_from_simple(build_example3()), spec, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "a,b,p_accept,p_reject,p_residual,p_reject_total");
  int rows = 0;
  while (std::getline(in, line)) {
    int a = 0, b = 0;
    double acc = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%d,%d,%lf", &a, &b, &acc), 3);
    EXPECT_NEAR(acc, a == b ? 1.0 : 0.0, 1e-12) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 25);
}

TEST(Sweep, EmptyRangeIsHeaderOnly) {
  io::SweepSpec spec{"0^a", {}};
  spec.ranges.insert(io::parse_range("a=3..1"));
  std::ostringstream out;
  io::write_sweep_csv(general_from_simple(build_example3()), spec, out);
  EXPECT_EQ(out.str(), "a,p_accept,p_reject,p_residual,p_reject_total\n");
}

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(io::format_prob(3.0 / 7), "0.428571428571");
  EXPECT_EQ(io::format_prob(1.0), "1");
  EXPECT_EQ(io::format_prob(critical_p()), "0.682327803828");
}
