#pragma once

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qf1ca/automaton.hpp"
#include "qf1ca/core.hpp"
#include "qf1ca/dynamics.hpp"
#include "qf1ca/errors.hpp"

namespace qf1ca::io {

using AnyAutomaton = std::variant<SimpleQf1ca, GeneralQf1ca>;

inline const AutomatonHeader& header_of(const AnyAutomaton& a) {
  return std::visit([](const auto& x) -> const AutomatonHeader& { return x.header; }, a);
}

inline GeneralQf1ca as_general(const AnyAutomaton& a) {
  if (const auto* s = std::get_if<SimpleQf1ca>(&a)) return general_from_simple(*s);
  return std::get<GeneralQf1ca>(a);
}

namespace detail {

using nlohmann::json;

inline const char* acceptance_name(AcceptanceType t) {
  switch (t) {
    case AcceptanceType::kStateAndZero:
      return "state_and_zero";
    case AcceptanceType::kZeroCounter:
      return "zero";
    case AcceptanceType::kStateOnly:
      return "state";
  }
  return "?";
}

inline Direction parse_direction(const std::string& s) {
  if (s == "L") return Direction::kLeft;
  if (s == "D") return Direction::kStay;
  if (s == "R") return Direction::kRight;
  throw ParseError("direction must be L, D or R, got '" + s + "'");
}

inline json amp_json(Amplitude a) { return json{{"re", a.real()}, {"im", a.imag()}}; }

inline Amplitude parse_amp(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() ||
      !j["im"].is_number()) {
    throw ParseError("amplitude must be {\"re\": number, \"im\": number}");
  }
  return {j["re"].get<double>(), j["im"].get<double>()};
}

inline TapeSymbol parse_symbol(const AutomatonHeader& h, const std::string& s) {
  if (s.size() != 1) throw ParseError("symbols are single characters, got '" + s + "'");
  const TapeSymbol g = TapeSymbol::from_char(s[0]);
  if (!h.in_tape_alphabet(g)) throw ParseError("symbol '" + s + "' is not in the tape alphabet");
  return g;
}

inline CounterSign parse_sign(const std::string& s) {
  if (s == "0") return CounterSign::kZero;
  if (s == "1") return CounterSign::kNonZero;
  throw ParseError("counter sign must be 0 or 1, got '" + s + "'");
}

inline json header_json(const AutomatonHeader& h, const char* kind) {
  json j;
  j["kind"] = kind;
  json alphabet = json::array();
  for (char c : h.alphabet) alphabet.push_back(std::string(1, c));
  j["alphabet"] = alphabet;
  j["states"] = h.states;
  j["initial"] = h.states.at(h.initial);
  json acc = json::array();
  for (StateId q : h.accepting) acc.push_back(h.states.at(q));
  json rej = json::array();
  for (StateId q : h.rejecting) rej.push_back(h.states.at(q));
  j["accepting"] = acc;
  j["rejecting"] = rej;
  j["acceptance"] = acceptance_name(h.acceptance);
  j["observation"] = h.observation == Observation::kOnceMeasure ? "mo" : "mm";
  j["counter_domain"] = h.counter_domain == CounterDomain::kNonNegative ? "nonneg" : "int";
  return j;
}

inline AutomatonHeader parse_header(const json& j) {
  AutomatonHeader h;
  for (const auto& s : j.at("alphabet")) {
    const auto sym = s.get<std::string>();
    if (sym.size() != 1) throw ParseError("alphabet symbols are single characters");
    if (sym[0] == kLeftEndMarker || sym[0] == kRightEndMarker) {
      throw ParseError("endmarkers '#' and '$' cannot be input symbols");
    }
    if (h.in_alphabet(sym[0])) throw ParseError("duplicate alphabet symbol '" + sym + "'");
    h.alphabet.push_back(sym[0]);
  }
  h.states = j.at("states").get<std::vector<std::string>>();
  if (h.states.empty()) throw ParseError("state set is empty");
  for (std::size_t i = 0; i < h.states.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (h.states[i] == h.states[k]) throw ParseError("duplicate state '" + h.states[i] + "'");
    }
  }
  auto id = [&](const json& name) {
    if (auto q = h.find_state(name.get<std::string>())) return *q;
    throw ParseError("unknown state '" + name.get<std::string>() + "'");
  };
  h.initial = id(j.at("initial"));
  for (const auto& q : j.at("accepting")) h.accepting.insert(id(q));
  for (const auto& q : j.at("rejecting")) h.rejecting.insert(id(q));
  for (StateId q : h.accepting) {
    if (h.rejecting.contains(q)) throw ParseError("state '" + h.states[q] + "' is both accepting and rejecting");
  }
  const auto acc = j.at("acceptance").get<std::string>();
  if (acc == "state_and_zero") {
    h.acceptance = AcceptanceType::kStateAndZero;
  } else if (acc == "zero") {
    h.acceptance = AcceptanceType::kZeroCounter;
  } else if (acc == "state") {
    h.acceptance = AcceptanceType::kStateOnly;
  } else {
    throw ParseError("unknown acceptance '" + acc + "'");
  }
  const auto obs = j.at("observation").get<std::string>();
  if (obs != "mm" && obs != "mo") throw ParseError("observation must be mm or mo");
  h.observation = obs == "mo" ? Observation::kOnceMeasure : Observation::kManyMeasure;
  const auto dom = j.at("counter_domain").get<std::string>();
  if (dom != "int" && dom != "nonneg") throw ParseError("counter_domain must be int or nonneg");
  h.counter_domain = dom == "nonneg" ? CounterDomain::kNonNegative : CounterDomain::kAllIntegers;
  return h;
}

}  // namespace detail

/// JSON document for a simple automaton. Matrices are row-major, keyed
/// "symbol|sign"; directions are keyed "state|symbol".
inline std::string emit_automaton(const SimpleQf1ca& a) {
  using detail::json;
  json j = detail::header_json(a.header, "simple");
  json unitaries = json::object();
  for (const auto& [key, m] : a.unitaries) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(detail::amp_json(m(r, c)));
      rows.push_back(row);
    }
    unitaries[std::string(1, key.symbol.ch()) + "|" + std::to_string(sign_bit(key.sign))] = rows;
  }
  j["unitaries"] = unitaries;
  json dirs = json::object();
  for (const auto& [key, d] : a.direction) {
    dirs[a.header.states.at(key.target) + "|" + key.symbol.ch()] = std::string(1, direction_code(d));
  }
  j["direction"] = dirs;
  return j.dump(1);
}

inline std::string emit_automaton(const GeneralQf1ca& a) {
  using detail::json;
  json j = detail::header_json(a.header, "general");
  json delta = json::array();
  for (const auto& [key, list] : a.delta) {
    for (const auto& t : list) {
      delta.push_back(json{{"from", a.header.states.at(key.from)},
                           {"symbol", std::string(1, key.symbol.ch())},
                           {"sign", sign_bit(key.sign)},
                           {"to", a.header.states.at(t.to)},
                           {"dir", std::string(1, direction_code(t.dir))},
                           {"amp", detail::amp_json(t.amp)}});
    }
  }
  j["delta"] = delta;
  return j.dump(1);
}

inline std::string emit_automaton(const AnyAutomaton& a) {
  return std::visit([](const auto& x) { return emit_automaton(x); }, a);
}

inline AnyAutomaton parse_automaton(std::string_view text) {
  using detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ParseError("automaton document must be a JSON object");
    const auto kind = j.at("kind").get<std::string>();
    AutomatonHeader h = detail::parse_header(j);
    const auto n = static_cast<Eigen::Index>(h.num_states());
    if (kind == "simple") {
      SimpleQf1ca a;
      for (const auto& [key, rows] : j.at("unitaries").items()) {
        const auto bar = key.find('|');
        if (bar == std::string::npos) throw ParseError("unitary key must be symbol|sign: " + key);
        const TapeSymbol g = detail::parse_symbol(h, key.substr(0, bar));
        const CounterSign s = detail::parse_sign(key.substr(bar + 1));
        if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
          throw ParseError("unitary " + key + " must have one row per state");
        }
        Matrix m(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
          const auto& row = rows[static_cast<std::size_t>(r)];
          if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw ParseError("unitary " + key + " must be square");
          }
          for (Eigen::Index c = 0; c < n; ++c) m(r, c) = detail::parse_amp(row[static_cast<std::size_t>(c)]);
        }
        a.unitaries[UnitaryKey{g, s}] = std::move(m);
      }
      for (const auto& [key, value] : j.at("direction").items()) {
        const auto bar = key.rfind('|');
        if (bar == std::string::npos) throw ParseError("direction key must be state|symbol: " + key);
        auto q = h.find_state(key.substr(0, bar));
        if (!q) throw ParseError("unknown state in direction key " + key);
        a.direction[DirectionKey{*q, detail::parse_symbol(h, key.substr(bar + 1))}] =
            detail::parse_direction(value.get<std::string>());
      }
      a.header = std::move(h);
      for (TapeSymbol g : a.header.tape_alphabet()) {
        for (CounterSign s : kAllSigns) {
          if (!a.unitaries.contains(UnitaryKey{g, s})) {
            throw ParseError(std::string("missing unitary ") + g.ch() + "|" + std::to_string(sign_bit(s)));
          }
        }
        for (StateId q = 0; q < a.header.num_states(); ++q) {
          if (!a.direction_of(q, g)) {
            throw ParseError("direction missing for " + a.header.states[q] + "|" + g.ch());
          }
        }
      }
      return a;
    }
    if (kind == "general") {
      GeneralQf1ca a;
      for (const auto& rec : j.at("delta")) {
        auto from = h.find_state(rec.at("from").get<std::string>());
        auto to = h.find_state(rec.at("to").get<std::string>());
        if (!from || !to) throw ParseError("delta record references an unknown state");
        const TapeSymbol g = detail::parse_symbol(h, rec.at("symbol").get<std::string>());
        const int sg = rec.at("sign").get<int>();
        if (sg != 0 && sg != 1) throw ParseError("delta sign must be 0 or 1");
        const CounterSign s = sg == 0 ? CounterSign::kZero : CounterSign::kNonZero;
        a.delta[TransitionKey{*from, g, s}].push_back(
            Transition{*to, detail::parse_direction(rec.at("dir").get<std::string>()),
                       detail::parse_amp(rec.at("amp"))});
      }
      a.header = std::move(h);
      return a;
    }
    throw ParseError("kind must be simple or general, got '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed automaton document: ") + e.what());
  }
}

/// Probability formatting shared by the CLI and CSV: 12 significant digits.
inline std::string format_prob(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct Range {
  long lo = 0;
  long hi = -1;  // inclusive; hi < lo is an empty range
};

/// A block pattern such as "0^a 1 0^b 1 0^c" plus a range per variable.
/// Tokens are separated by whitespace; "X^v" repeats the literal X v times,
/// where v is a variable name or a non-negative integer.
struct SweepSpec {
  std::string pattern;
  std::map<std::string, Range> ranges;
};

/// Parses "name=lo..hi" (or "name=value").
inline std::pair<std::string, Range> parse_range(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ParseError("range must look like a=1..3");
  std::string name(text.substr(0, eq));
  std::string body(text.substr(eq + 1));
  auto number = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw ParseError("range bounds must be non-negative integers: " + std::string(text));
    }
    return std::stol(s);
  };
  const auto dots = body.find("..");
  if (dots == std::string::npos) {
    const long v = number(body);
    return {name, Range{v, v}};
  }
  return {name, Range{number(body.substr(0, dots)), number(body.substr(dots + 2))}};
}

namespace detail {

struct PatternToken {
  std::string literal;
  std::string variable;  // empty when the count is fixed
  long count = 1;
};

inline std::vector<PatternToken> tokenize(const SweepSpec& spec) {
  std::vector<PatternToken> out;
  std::istringstream in(spec.pattern);
  std::string tok;
  while (in >> tok) {
    PatternToken t;
    const auto caret = tok.find('^');
    if (caret == std::string::npos) {
      t.literal = tok;
    } else {
      t.literal = tok.substr(0, caret);
      const std::string exp = tok.substr(caret + 1);
      if (t.literal.empty() || exp.empty()) throw ParseError("bad pattern token '" + tok + "'");
      if (std::all_of(exp.begin(), exp.end(), [](unsigned char c) { return std::isdigit(c); })) {
        t.count = std::stol(exp);
      } else {
        if (!spec.ranges.contains(exp)) throw ParseError("no range given for variable '" + exp + "'");
        t.variable = exp;
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace detail

inline std::string expand_pattern(const SweepSpec& spec, const std::map<std::string, long>& values) {
  std::string word;
  for (const auto& t : detail::tokenize(spec)) {
    const long reps = t.variable.empty() ? t.count : values.at(t.variable);
    for (long r = 0; r < reps; ++r) word += t.literal;
  }
  return word;
}

/// All assignments in lexicographic order over the variable names (the first
/// name varies slowest).
inline std::vector<std::map<std::string, long>> sweep_assignments(const SweepSpec& spec) {
  std::vector<std::map<std::string, long>> out;
  for (const auto& [name, r] : spec.ranges) {
    if (r.hi < r.lo) return out;
  }
  std::map<std::string, long> cur;
  for (const auto& [name, r] : spec.ranges) cur[name] = r.lo;
  while (true) {
    out.push_back(cur);
    auto it = spec.ranges.rbegin();
    for (; it != spec.ranges.rend(); ++it) {
      if (cur[it->first] < it->second.hi) {
        ++cur[it->first];
        break;
      }
      cur[it->first] = it->second.lo;
    }
    if (it == spec.ranges.rend()) break;
  }
  return out;
}

/// CSV with one row per assignment: variable values, then p_accept, p_reject,
/// p_residual, p_reject_total.
inline void write_sweep_csv(const GeneralQf1ca& a, const SweepSpec& spec, std::ostream& out) {
  detail::tokenize(spec);  // validates the pattern before any output
  for (const auto& [name, r] : spec.ranges) out << name << ',';
  out << "p_accept,p_reject,p_residual,p_reject_total\n";
  for (const auto& values : sweep_assignments(spec)) {
    const RunResult r = run(a, expand_pattern(spec, values));
    for (const auto& [name, v] : values) out << v << ',';
    out << format_prob(r.p_accept) << ',' << format_prob(r.p_reject) << ','
        << format_prob(r.p_residual) << ',' << format_prob(r.p_reject_total) << '\n';
  }
}

}  // namespace qf1ca::io
