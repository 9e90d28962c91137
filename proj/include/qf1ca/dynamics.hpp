#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qf1ca/automaton.hpp"
#include "qf1ca/core.hpp"
#include "qf1ca/errors.hpp"

namespace qf1ca {

struct StepTrace {
  std::size_t step_index = 0;
  TapeSymbol symbol;
  double p_accept_inc = 0.0;
  double p_reject_inc = 0.0;
  double residual_norm2 = 0.0;
  std::optional<StateVector> surviving;
};

struct RunResult {
  double p_accept = 0.0;
  double p_reject = 0.0;
  double p_residual = 0.0;
  /// Rejection verdict: explicit rejection plus probability left non-halting
  /// after the right endmarker.
  double p_reject_total = 0.0;
  std::vector<StepTrace> trace;
};

struct RunOptions {
  bool keep_vectors = false;  // fill StepTrace::surviving
};

inline void check_word(const AutomatonHeader& h, std::string_view word) {
  for (char c : word) {
    if (!h.in_alphabet(c)) {
      throw ParseError(std::string("symbol '") + c + "' is not in the alphabet \"" + h.alphabet +
                       "\"");
    }
  }
}

/// Applies U_x for one tape symbol: |q,k> -> sum delta(q, g, sign(k), q', d) |q', k + mu(d)>.
inline StateVector evolve_step(const GeneralQf1ca& a, TapeSymbol g, const StateVector& v) {
  StateVector out(v.prune_eps());
  const bool nonneg = a.header.counter_domain == CounterDomain::kNonNegative;
  for (const auto& [c, amp] : v) {
    for (const auto& t : a.transitions(c.state, g, sign(c.counter))) {
      const Counter k = c.counter + displacement(t.dir);
      if (nonneg && k < 0 && t.amp != Amplitude{}) {
        throw NegativeCounter("transition from '" + a.header.states[c.state] + "' on '" + g.ch() +
                              "' drives the counter to " + std::to_string(k));
      }
      out.add({t.to, k}, t.amp * amp);
    }
  }
  out.prune();
  return out;
}

namespace detail {

struct Partition {
  StateVector accept;
  StateVector reject;
  StateVector rest;
};

inline Partition partition(const AutomatonHeader& h, const StateVector& v) {
  Partition p{StateVector(v.prune_eps()), StateVector(v.prune_eps()), StateVector(v.prune_eps())};
  for (const auto& [c, amp] : v) {
    switch (classify_config(h, c)) {
      case ConfigClass::kAccept:
        p.accept.add(c, amp);
        break;
      case ConfigClass::kReject:
        p.reject.add(c, amp);
        break;
      case ConfigClass::kNonHalting:
        p.rest.add(c, amp);
        break;
    }
  }
  return p;
}

inline void finish(RunResult& r) {
  r.p_reject_total = r.p_reject + r.p_residual;
}

}  // namespace detail

/// Measure-many run: observe after every tape symbol (endmarkers included),
/// drop the halting parts without renormalizing the rest.
inline RunResult run_mm(const GeneralQf1ca& a, std::string_view word, RunOptions opts = {}) {
  check_word(a.header, word);
  RunResult r;
  StateVector v = StateVector::basis({a.header.initial, 0});
  std::size_t i = 0;
  for (TapeSymbol g : tape(word)) {
    auto parts = detail::partition(a.header, evolve_step(a, g, v));
    StepTrace st;
    st.step_index = i++;
    st.symbol = g;
    st.p_accept_inc = norm2(parts.accept);
    st.p_reject_inc = norm2(parts.reject);
    v = std::move(parts.rest);
    st.residual_norm2 = norm2(v);
    if (opts.keep_vectors) st.surviving = v;
    r.p_accept += st.p_accept_inc;
    r.p_reject += st.p_reject_inc;
    r.trace.push_back(std::move(st));
  }
  r.p_residual = norm2(v);
  detail::finish(r);
  return r;
}

/// Measure-once run: evolve through the whole tape, observe once at the end.
inline RunResult run_mo(const GeneralQf1ca& a, std::string_view word, RunOptions opts = {}) {
  check_word(a.header, word);
  RunResult r;
  StateVector v = StateVector::basis({a.header.initial, 0});
  std::size_t i = 0;
  for (TapeSymbol g : tape(word)) {
    v = evolve_step(a, g, v);
    StepTrace st;
    st.step_index = i++;
    st.symbol = g;
    st.residual_norm2 = norm2(v);
    if (opts.keep_vectors) st.surviving = v;
    r.trace.push_back(std::move(st));
  }
  auto parts = detail::partition(a.header, v);
  r.p_accept = norm2(parts.accept);
  r.p_reject = norm2(parts.reject);
  r.p_residual = norm2(parts.rest);
  if (!r.trace.empty()) {
    r.trace.back().p_accept_inc = r.p_accept;
    r.trace.back().p_reject_inc = r.p_reject;
    r.trace.back().residual_norm2 = r.p_residual;
    if (opts.keep_vectors) r.trace.back().surviving = parts.rest;
  }
  detail::finish(r);
  return r;
}

/// Dispatches on the automaton's declared observation mode.
inline RunResult run(const GeneralQf1ca& a, std::string_view word, RunOptions opts = {}) {
  return a.header.observation == Observation::kOnceMeasure ? run_mo(a, word, opts)
                                                          : run_mm(a, word, opts);
}

inline constexpr std::size_t kBruteForceMaxWord = 8;

/// Independent measure-many oracle. Enumerates every configuration trajectory
/// explicitly, sums path amplitudes per (step, configuration) and only then
/// squares; a path is cut as soon as it enters a halting configuration.
inline RunResult brute_force_run(const GeneralQf1ca& a, std::string_view word) {
  if (word.size() > kBruteForceMaxWord) {
    throw TooLong("brute_force_run: words longer than " + std::to_string(kBruteForceMaxWord) +
                  " are refused");
  }
  check_word(a.header, word);
  const std::vector<TapeSymbol> cells = tape(word);
  // arrivals[t]: summed amplitude of all surviving paths that reach a
  // configuration right after cell t.
  std::vector<std::map<Configuration, Amplitude>> arrivals(cells.size());

  std::function<void(std::size_t, Configuration, Amplitude)> walk =
      [&](std::size_t t, Configuration c, Amplitude path_amp) {
        const CounterSign s = c.counter == 0 ? CounterSign::kZero : CounterSign::kNonZero;
        auto it = a.delta.find(TransitionKey{c.state, cells[t], s});
        if (it == a.delta.end()) return;
        for (const Transition& tr : it->second) {
          const Amplitude next_amp = path_amp * tr.amp;
          if (next_amp == Amplitude{}) continue;
          int move = 0;
          if (tr.dir == Direction::kLeft) move = -1;
          if (tr.dir == Direction::kRight) move = 1;
          const Configuration next{tr.to, c.counter + move};
          arrivals[t][next] += next_amp;
          if (t + 1 < cells.size() &&
              classify_config(a.header, next) == ConfigClass::kNonHalting) {
            walk(t + 1, next, next_amp);
          }
        }
      };
  walk(0, Configuration{a.header.initial, 0}, Amplitude{1.0, 0.0});

  RunResult r;
  for (std::size_t t = 0; t < cells.size(); ++t) {
    StepTrace st;
    st.step_index = t;
    st.symbol = cells[t];
    for (const auto& [c, amp] : arrivals[t]) {
      const double p = std::norm(amp);
      switch (classify_config(a.header, c)) {
        case ConfigClass::kAccept:
          st.p_accept_inc += p;
          break;
        case ConfigClass::kReject:
          st.p_reject_inc += p;
          break;
        case ConfigClass::kNonHalting:
          st.residual_norm2 += p;
          break;
      }
    }
    r.p_accept += st.p_accept_inc;
    r.p_reject += st.p_reject_inc;
    if (t + 1 == cells.size()) r.p_residual = st.residual_norm2;
    r.trace.push_back(std::move(st));
  }
  detail::finish(r);
  return r;
}

struct Margin {
  double min_accept = 0.0;
  double min_reject_total = 0.0;
};

/// Worst-case acceptance over members and worst-case rejection verdict over
/// non-members, under the automaton's own observation mode.
inline Margin recognition_margin(const GeneralQf1ca& a, std::span<const std::string> members,
                                 std::span<const std::string> nonmembers) {
  if (members.empty() || nonmembers.empty()) {
    throw BadParameter("recognition_margin: word lists must be non-empty");
  }
  Margin m{1.0, 1.0};
  for (const auto& w : members) m.min_accept = std::min(m.min_accept, run(a, w).p_accept);
  for (const auto& w : nonmembers) {
    m.min_reject_total = std::min(m.min_reject_total, run(a, w).p_reject_total);
  }
  return m;
}

}  // namespace qf1ca
