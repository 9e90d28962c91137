#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qf1ca/core.hpp"
#include "qf1ca/errors.hpp"

namespace qf1ca {

/// Which configurations are halting.
///   kStateAndZero: accept q in Q_a and k = 0; reject q in Q_r.
///   kZeroCounter:  accept k = 0;              reject q in Q_r and k != 0.
///   kStateOnly:    accept q in Q_a;           reject q in Q_r.
enum class AcceptanceType { kStateAndZero, kZeroCounter, kStateOnly };

enum class Observation { kManyMeasure, kOnceMeasure };

enum class CounterDomain { kAllIntegers, kNonNegative };

enum class ConfigClass { kAccept, kReject, kNonHalting };

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Fields shared by the general and the simple representation.
struct AutomatonHeader {
  std::string alphabet;  // input symbols, in declaration order
  std::vector<std::string> states;
  StateId initial = 0;
  std::set<StateId> accepting;
  std::set<StateId> rejecting;
  AcceptanceType acceptance = AcceptanceType::kStateAndZero;
  Observation observation = Observation::kManyMeasure;
  CounterDomain counter_domain = CounterDomain::kAllIntegers;

  std::size_t num_states() const { return states.size(); }

  bool is_accepting(StateId q) const { return accepting.contains(q); }
  bool is_rejecting(StateId q) const { return rejecting.contains(q); }

  std::optional<StateId> find_state(std::string_view name) const {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) return std::nullopt;
    return static_cast<StateId>(it - states.begin());
  }

  StateId state_id(std::string_view name) const {
    if (auto id = find_state(name)) return *id;
    throw Error("unknown state '" + std::string(name) + "'");
  }

  bool in_alphabet(char c) const { return alphabet.find(c) != std::string::npos; }

  /// Gamma = {#} + Sigma + {$}, endmarkers first and last.
  std::vector<TapeSymbol> tape_alphabet() const {
    std::vector<TapeSymbol> out{TapeSymbol::left_end()};
    for (char c : alphabet) out.push_back(TapeSymbol::input(c));
    out.push_back(TapeSymbol::right_end());
    return out;
  }

  bool in_tape_alphabet(TapeSymbol g) const { return g.is_endmarker() || in_alphabet(g.ch()); }
};

struct TransitionKey {
  StateId from = 0;
  TapeSymbol symbol;
  CounterSign sign = CounterSign::kZero;

  friend auto operator<=>(const TransitionKey&, const TransitionKey&) = default;
};

struct Transition {
  StateId to = 0;
  Direction dir = Direction::kStay;
  Amplitude amp;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Full transition table delta(q, gamma, s) -> {(q', d) -> amplitude}.
/// Absent keys and absent (q', d) pairs carry amplitude zero.
struct GeneralQf1ca {
  AutomatonHeader header;
  std::map<TransitionKey, std::vector<Transition>> delta;

  const std::vector<Transition>& transitions(StateId q, TapeSymbol g, CounterSign s) const {
    static const std::vector<Transition> kNone;
    auto it = delta.find(TransitionKey{q, g, s});
    return it == delta.end() ? kNone : it->second;
  }

  Amplitude amplitude(StateId q, TapeSymbol g, CounterSign s, StateId to, Direction d) const {
    Amplitude total{};
    for (const auto& t : transitions(q, g, s)) {
      if (t.to == to && t.dir == d) total += t.amp;
    }
    return total;
  }

  /// Adds to the amplitude of (q, g, s) -> (to, d), merging duplicates.
  void add(StateId q, TapeSymbol g, CounterSign s, StateId to, Direction d, Amplitude a) {
    auto& list = delta[TransitionKey{q, g, s}];
    for (auto& t : list) {
      if (t.to == to && t.dir == d) {
        t.amp += a;
        return;
      }
    }
    list.push_back(Transition{to, d, a});
  }
};

struct UnitaryKey {
  TapeSymbol symbol;
  CounterSign sign = CounterSign::kZero;

  friend auto operator<=>(const UnitaryKey&, const UnitaryKey&) = default;
};

struct DirectionKey {
  StateId target = 0;
  TapeSymbol symbol;

  friend auto operator<=>(const DirectionKey&, const DirectionKey&) = default;
};

/// One unitary V per (symbol, sign) plus the direction function D(q', gamma).
/// Matrix convention: entry (row q', column q) is <q'|V|q>, so column q holds
/// the image of basis state q.
struct SimpleQf1ca {
  AutomatonHeader header;
  std::map<UnitaryKey, Matrix> unitaries;
  std::map<DirectionKey, Direction> direction;

  const Matrix& unitary(TapeSymbol g, CounterSign s) const {
    auto it = unitaries.find(UnitaryKey{g, s});
    if (it == unitaries.end()) {
      throw Error(std::string("no unitary for symbol '") + g.ch() + "' sign " +
                  std::to_string(sign_bit(s)));
    }
    return it->second;
  }

  std::optional<Direction> direction_of(StateId target, TapeSymbol g) const {
    auto it = direction.find(DirectionKey{target, g});
    if (it == direction.end()) return std::nullopt;
    return it->second;
  }
};

template <typename A>
concept Automaton = requires(const A& a) {
  { a.header } -> std::convertible_to<const AutomatonHeader&>;
};

inline ConfigClass classify_config(const AutomatonHeader& h, const Configuration& c) {
  const bool zero = c.counter == 0;
  switch (h.acceptance) {
    case AcceptanceType::kStateAndZero:
      if (h.is_accepting(c.state) && zero) return ConfigClass::kAccept;
      if (h.is_rejecting(c.state)) return ConfigClass::kReject;
      break;
    case AcceptanceType::kZeroCounter:
      // Accept wins at k = 0 so that the two halting subspaces stay disjoint.
      if (zero) return ConfigClass::kAccept;
      if (h.is_rejecting(c.state)) return ConfigClass::kReject;
      break;
    case AcceptanceType::kStateOnly:
      if (h.is_accepting(c.state)) return ConfigClass::kAccept;
      if (h.is_rejecting(c.state)) return ConfigClass::kReject;
      break;
  }
  return ConfigClass::kNonHalting;
}

template <Automaton A>
ConfigClass classify_config(const A& a, const Configuration& c) {
  return classify_config(a.header, c);
}

/// Expands V and D into the general table: delta(q, g, s, q', D(q', g)) =
/// V(g, s)(q', q). Entries that are exactly zero are omitted; no arithmetic is
/// applied to the others.
inline GeneralQf1ca general_from_simple(const SimpleQf1ca& a) {
  GeneralQf1ca out;
  out.header = a.header;
  const std::size_t n = a.header.num_states();
  for (const auto& [key, m] : a.unitaries) {
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<Transition> list;
      for (std::size_t to = 0; to < n; ++to) {
        const Amplitude amp = m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(q));
        if (amp == Amplitude{}) continue;
        auto d = a.direction_of(to, key.symbol);
        if (!d) {
          throw MissingDirection("no direction for state '" + a.header.states[to] +
                                 "' on symbol '" + key.symbol.ch() + "'");
        }
        list.push_back(Transition{to, *d, amp});
      }
      if (!list.empty()) out.delta[TransitionKey{q, key.symbol, key.sign}] = std::move(list);
    }
  }
  return out;
}

struct StructureViolation {
  enum class Kind {
    kDisjointness,
    kUnknownState,
    kUnknownSymbol,
    kReservedSymbol,
    kAmplitudeTooLarge,
    kDuplicateState,
    kMissingDirection,
    kBadMatrixShape,
  };
  Kind kind;
  std::string detail;
};

inline const char* to_string(StructureViolation::Kind k) {
  using K = StructureViolation::Kind;
  switch (k) {
    case K::kDisjointness:
      return "DisjointnessViolation";
    case K::kUnknownState:
      return "UnknownState";
    case K::kUnknownSymbol:
      return "UnknownSymbol";
    case K::kReservedSymbol:
      return "ReservedSymbol";
    case K::kAmplitudeTooLarge:
      return "AmplitudeTooLarge";
    case K::kDuplicateState:
      return "DuplicateState";
    case K::kMissingDirection:
      return "MissingDirection";
    case K::kBadMatrixShape:
      return "BadMatrixShape";
  }
  return "?";
}

namespace detail {

inline void validate_header(const AutomatonHeader& h, std::vector<StructureViolation>& out) {
  using K = StructureViolation::Kind;
  const std::size_t n = h.num_states();
  std::set<std::string> seen;
  for (const auto& s : h.states) {
    if (!seen.insert(s).second) out.push_back({K::kDuplicateState, s});
  }
  for (char c : h.alphabet) {
    if (c == kLeftEndMarker || c == kRightEndMarker) {
      out.push_back({K::kReservedSymbol, std::string(1, c)});
    }
  }
  if (h.initial >= n) out.push_back({K::kUnknownState, "initial #" + std::to_string(h.initial)});
  for (StateId q : h.accepting) {
    if (q >= n) out.push_back({K::kUnknownState, "accepting #" + std::to_string(q)});
    if (h.rejecting.contains(q)) {
      out.push_back({K::kDisjointness, q < n ? h.states[q] : std::to_string(q)});
    }
  }
  for (StateId q : h.rejecting) {
    if (q >= n) out.push_back({K::kUnknownState, "rejecting #" + std::to_string(q)});
  }
}

}  // namespace detail

/// Set-level invariants of the general representation. Violations are data.
inline std::vector<StructureViolation> validate_structure(const GeneralQf1ca& a) {
  using K = StructureViolation::Kind;
  std::vector<StructureViolation> out;
  const auto& h = a.header;
  detail::validate_header(h, out);
  const std::size_t n = h.num_states();
  for (const auto& [key, list] : a.delta) {
    const std::string where = std::string("delta(") +
                              (key.from < n ? h.states[key.from] : std::to_string(key.from)) +
                              "," + key.symbol.ch() + "," + std::to_string(sign_bit(key.sign)) +
                              ")";
    if (key.from >= n) out.push_back({K::kUnknownState, where});
    if (!h.in_tape_alphabet(key.symbol)) out.push_back({K::kUnknownSymbol, where});
    for (const auto& t : list) {
      if (t.to >= n) out.push_back({K::kUnknownState, where + " -> #" + std::to_string(t.to)});
      if (std::abs(t.amp) > 1.0 + 1e-12) out.push_back({K::kAmplitudeTooLarge, where});
    }
  }
  return out;
}

inline std::vector<StructureViolation> validate_structure(const SimpleQf1ca& a) {
  using K = StructureViolation::Kind;
  std::vector<StructureViolation> out;
  const auto& h = a.header;
  detail::validate_header(h, out);
  const auto n = static_cast<Eigen::Index>(h.num_states());
  for (const auto& [key, m] : a.unitaries) {
    if (!h.in_tape_alphabet(key.symbol)) {
      out.push_back({K::kUnknownSymbol, std::string(1, key.symbol.ch())});
    }
    if (m.rows() != n || m.cols() != n) {
      out.push_back({K::kBadMatrixShape, std::string(1, key.symbol.ch()) + "|" +
                                             std::to_string(sign_bit(key.sign))});
    }
  }
  for (StateId q = 0; q < h.num_states(); ++q) {
    for (TapeSymbol g : h.tape_alphabet()) {
      if (!a.direction_of(q, g)) {
        out.push_back({K::kMissingDirection, h.states[q] + "|" + g.ch()});
      }
    }
  }
  return out;
}

/// Transitions that decrement a zero counter, i.e. nonzero
/// delta(q, g, 0, q', Left).
inline std::vector<TransitionKey> zero_sign_decrements(const GeneralQf1ca& a) {
  std::vector<TransitionKey> out;
  for (const auto& [key, list] : a.delta) {
    if (key.sign != CounterSign::kZero) continue;
    for (const auto& t : list) {
      if (t.dir == Direction::kLeft && t.amp != Amplitude{}) {
        out.push_back(key);
        break;
      }
    }
  }
  return out;
}

}  // namespace qf1ca
