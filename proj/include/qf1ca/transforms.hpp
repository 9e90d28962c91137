#pragma once

#include <set>
#include <string>
#include <vector>

#include "qf1ca/automaton.hpp"
#include "qf1ca/core.hpp"
#include "qf1ca/errors.hpp"

namespace qf1ca {

/// Q1 = Q + Q': state q keeps its index, its companion q' is q + |Q|.
struct StateDuplication {
  std::size_t original_count = 0;
  std::vector<std::string> combined;

  StateId primed(StateId q) const { return q + original_count; }
  bool is_primed(StateId q) const { return q >= original_count; }
};

inline StateDuplication duplicate_states(const AutomatonHeader& h) {
  StateDuplication dup;
  dup.original_count = h.num_states();
  std::set<std::string> taken(h.states.begin(), h.states.end());
  dup.combined = h.states;
  for (const auto& name : h.states) {
    std::string fresh = name + "'";
    while (taken.contains(fresh)) fresh += "'";
    taken.insert(fresh);
    dup.combined.push_back(fresh);
  }
  return dup;
}

/// Measure-many automaton equivalent to a measure-once one. Before $ the
/// unprimed half runs the original table and never halts; $ moves the
/// amplitude into the primed half, whose states alone are accepting or
/// rejecting. Primed states idle on every other symbol.
///
/// On $ the primed states map back onto the unprimed half with the original
/// $ amplitudes, which keeps the $ operator isometric (primed states are only
/// ever populated by $ itself, so this branch is never exercised).
inline GeneralQf1ca mo_to_mm(const GeneralQf1ca& a) {
  if (a.header.observation != Observation::kOnceMeasure) {
    throw BadParameter("mo_to_mm: input must be a measure-once automaton");
  }
  if (a.header.acceptance == AcceptanceType::kZeroCounter) {
    throw UnsupportedAcceptance("mo_to_mm: acceptance by zero counter alone cannot be simulated");
  }
  const StateDuplication dup = duplicate_states(a.header);
  GeneralQf1ca out;
  out.header = a.header;
  out.header.states = dup.combined;
  out.header.observation = Observation::kManyMeasure;
  out.header.accepting.clear();
  out.header.rejecting.clear();
  for (StateId q : a.header.accepting) out.header.accepting.insert(dup.primed(q));
  for (StateId q : a.header.rejecting) out.header.rejecting.insert(dup.primed(q));

  const TapeSymbol end = TapeSymbol::right_end();
  for (const auto& [key, list] : a.delta) {
    for (const auto& t : list) {
      if (key.symbol == end) {
        out.add(key.from, end, key.sign, dup.primed(t.to), t.dir, t.amp);
        out.add(dup.primed(key.from), end, key.sign, t.to, t.dir, t.amp);
      } else {
        out.add(key.from, key.symbol, key.sign, t.to, t.dir, t.amp);
      }
    }
  }
  for (StateId q = 0; q < dup.original_count; ++q) {
    for (TapeSymbol g : a.header.tape_alphabet()) {
      if (g == end) continue;
      for (CounterSign s : kAllSigns) {
        out.add(dup.primed(q), g, s, dup.primed(q), Direction::kStay, 1.0);
      }
    }
  }
  return out;
}

/// Simulates an integer-counter automaton with a non-negative counter.
///
/// Configuration (q, k) with k >= 0 is kept as (q, k); (q, -k) with k >= 1 is
/// represented as (q', k - 1). The shift by one makes the correspondence a
/// bijection of basis states, so the simulated operator is unitarily
/// equivalent to the original. On the primed half counter moves are mirrored;
/// at the sign-0 boundary decrements from Q enter Q' and increments from Q'
/// at counter 0 return to Q.
inline GeneralQf1ca eliminate_negative(const GeneralQf1ca& a) {
  if (a.header.counter_domain != CounterDomain::kAllIntegers) {
    throw BadParameter("eliminate_negative: input already uses a non-negative counter");
  }
  if (a.header.acceptance == AcceptanceType::kZeroCounter) {
    // A primed configuration at counter 0 stands for counter -1, which a
    // zero-counter observable would wrongly accept.
    throw UnsupportedAcceptance(
        "eliminate_negative: acceptance by zero counter alone is not preserved");
  }
  using D = Direction;
  using S = CounterSign;
  const StateDuplication dup = duplicate_states(a.header);
  GeneralQf1ca out;
  out.header = a.header;
  out.header.states = dup.combined;
  out.header.counter_domain = CounterDomain::kNonNegative;
  for (StateId q : a.header.rejecting) out.header.rejecting.insert(dup.primed(q));
  if (a.header.acceptance == AcceptanceType::kStateOnly) {
    for (StateId q : a.header.accepting) out.header.accepting.insert(dup.primed(q));
  }

  for (const auto& [key, list] : a.delta) {
    const StateId q = key.from;
    const StateId qp = dup.primed(q);
    const TapeSymbol g = key.symbol;
    for (const auto& t : list) {
      const StateId to = t.to;
      const StateId top = dup.primed(t.to);
      if (key.sign == S::kNonZero) {
        // Unprimed, k >= 1: unchanged.
        out.add(q, g, S::kNonZero, to, t.dir, t.amp);
        // Primed, stored counter >= 1 (original <= -2): mirrored move.
        out.add(qp, g, S::kNonZero, top, reversed(t.dir), t.amp);
        // Primed, stored counter 0 (original -1).
        switch (t.dir) {
          case D::kLeft:
            out.add(qp, g, S::kZero, top, D::kRight, t.amp);
            break;
          case D::kStay:
            out.add(qp, g, S::kZero, top, D::kStay, t.amp);
            break;
          case D::kRight:
            out.add(qp, g, S::kZero, to, D::kStay, t.amp);
            break;
        }
      } else {
        // Unprimed, k = 0.
        if (t.dir == D::kLeft) {
          out.add(q, g, S::kZero, top, D::kStay, t.amp);
        } else {
          out.add(q, g, S::kZero, to, t.dir, t.amp);
        }
      }
    }
  }
  return out;
}

/// Maps a configuration of eliminate_negative's output back to the
/// configuration of the source automaton it represents.
inline Configuration original_configuration(const StateDuplication& dup, Configuration c) {
  if (!dup.is_primed(c.state)) return c;
  return {c.state - dup.original_count, -(c.counter + 1)};
}

}  // namespace qf1ca
