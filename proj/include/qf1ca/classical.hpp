#pragma once

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qf1ca/core.hpp"
#include "qf1ca/errors.hpp"

namespace qf1ca::classical {

// Classical one-counter machines read the bare word (no endmarkers) and
// decide from the final state alone.

struct Key {
  StateId state = 0;
  char symbol = 0;
  CounterSign sign = CounterSign::kZero;

  friend auto operator<=>(const Key&, const Key&) = default;
};

struct Move {
  StateId to = 0;
  Direction dir = Direction::kStay;
};

struct Branch {
  StateId to = 0;
  Direction dir = Direction::kStay;
  double prob = 0.0;
};

struct MachineHeader {
  std::string alphabet;
  std::vector<std::string> states;
  StateId initial = 0;
  std::set<StateId> accepting;
  std::set<StateId> rejecting;

  StateId add_state(std::string name) {
    states.push_back(std::move(name));
    return states.size() - 1;
  }
};

struct Cdfa {
  MachineHeader header;
  std::map<Key, Move> delta;
};

struct Cpfa {
  MachineHeader header;
  std::map<Key, std::vector<Branch>> delta;
};

enum class Verdict { kAccepted, kRejected, kNeither };

inline Verdict verdict_of(const MachineHeader& h, StateId q) {
  if (h.accepting.contains(q)) return Verdict::kAccepted;
  if (h.rejecting.contains(q)) return Verdict::kRejected;
  return Verdict::kNeither;
}

/// Problems with a machine's tables; empty when total and stochastic.
inline std::vector<std::string> validate(const Cdfa& a) {
  std::vector<std::string> out;
  for (StateId q : a.header.accepting) {
    if (a.header.rejecting.contains(q)) out.push_back("state in both Q_a and Q_r: " + a.header.states[q]);
  }
  for (StateId q = 0; q < a.header.states.size(); ++q) {
    for (char c : a.header.alphabet) {
      for (CounterSign s : kAllSigns) {
        if (!a.delta.contains(Key{q, c, s})) {
          out.push_back("missing move for " + a.header.states[q] + "," + c + "," +
                        std::to_string(sign_bit(s)));
        }
      }
    }
  }
  return out;
}

inline std::vector<std::string> validate(const Cpfa& a) {
  std::vector<std::string> out;
  for (StateId q : a.header.accepting) {
    if (a.header.rejecting.contains(q)) out.push_back("state in both Q_a and Q_r: " + a.header.states[q]);
  }
  for (StateId q = 0; q < a.header.states.size(); ++q) {
    for (char c : a.header.alphabet) {
      for (CounterSign s : kAllSigns) {
        auto it = a.delta.find(Key{q, c, s});
        double total = 0.0;
        if (it != a.delta.end()) {
          for (const auto& b : it->second) {
            if (b.prob < 0.0) out.push_back("negative probability from " + a.header.states[q]);
            total += b.prob;
          }
        }
        if (std::abs(total - 1.0) > 1e-12) {
          out.push_back("probabilities from " + a.header.states[q] + "," + c + "," +
                        std::to_string(sign_bit(s)) + " sum to " + std::to_string(total));
        }
      }
    }
  }
  return out;
}

inline Verdict run_cdfa(const Cdfa& a, std::string_view word) {
  StateId q = a.header.initial;
  Counter k = 0;
  for (char c : word) {
    auto it = a.delta.find(Key{q, c, sign(k)});
    if (it == a.delta.end()) {
      throw Error(std::string("run_cdfa: no move on '") + c + "' from " + a.header.states[q]);
    }
    q = it->second.to;
    k += displacement(it->second.dir);
  }
  return verdict_of(a.header, q);
}

struct CpfaResult {
  double p_accept = 0.0;
  double p_reject = 0.0;
  double p_neither = 0.0;
};

/// Exact forward propagation of the distribution over (state, counter).
inline CpfaResult run_cpfa(const Cpfa& a, std::string_view word) {
  std::map<Configuration, double> dist{{{a.header.initial, 0}, 1.0}};
  for (char c : word) {
    std::map<Configuration, double> next;
    for (const auto& [cfg, p] : dist) {
      auto it = a.delta.find(Key{cfg.state, c, sign(cfg.counter)});
      if (it == a.delta.end()) {
        throw Error(std::string("run_cpfa: no move on '") + c + "' from " +
                    a.header.states[cfg.state]);
      }
      for (const auto& b : it->second) {
        if (b.prob == 0.0) continue;
        next[{b.to, cfg.counter + displacement(b.dir)}] += p * b.prob;
      }
    }
    dist = std::move(next);
  }
  CpfaResult r;
  for (const auto& [cfg, p] : dist) {
    switch (verdict_of(a.header, cfg.state)) {
      case Verdict::kAccepted:
        r.p_accept += p;
        break;
      case Verdict::kRejected:
        r.p_reject += p;
        break;
      case Verdict::kNeither:
        r.p_neither += p;
        break;
    }
  }
  return r;
}

/// Deterministic checker for 0^n 1 0^n. The first block counts up; the 1
/// decrements once in advance, so seeing a zero counter on a later 0 means
/// that 0 is the n-th one of the second block.
inline Cdfa build_example1() {
  using D = Direction;
  using S = CounterSign;
  Cdfa a;
  auto& h = a.header;
  h.alphabet = "01";
  const StateId up = h.add_state("up");
  const StateId down = h.add_state("down");
  const StateId done = h.add_state("balanced");
  const StateId sink = h.add_state("reject");
  h.initial = up;
  h.accepting = {done};
  h.rejecting = {up, down, sink};

  for (S s : kAllSigns) {
    a.delta[{up, '0', s}] = {up, D::kRight};
    a.delta[{done, '0', s}] = {sink, D::kStay};
    a.delta[{done, '1', s}] = {sink, D::kStay};
    a.delta[{down, '1', s}] = {sink, D::kStay};
    a.delta[{sink, '0', s}] = {sink, D::kStay};
    a.delta[{sink, '1', s}] = {sink, D::kStay};
  }
  a.delta[{up, '1', S::kZero}] = {done, D::kStay};
  a.delta[{up, '1', S::kNonZero}] = {down, D::kLeft};
  a.delta[{down, '0', S::kZero}] = {done, D::kStay};
  a.delta[{down, '0', S::kNonZero}] = {down, D::kLeft};
  return a;
}

namespace detail {

/// State layout of one divisibility-gadget path with weight i, checking
/// (l - n) = i (m - n) on 0^l 1 0^m 1 0^n.
///   block 1: residue r1 = l mod i, +1 on every i-th zero
///   block 2: -1 on every zero
///   block 3: residue r3 = n mod i, +1 on every zero except each i-th;
///            the counter is kept one above its true value and `zero` tracks
///            whether the true value is 0
/// Accept iff zero and r1 == r3.
struct GadgetPath {
  int weight = 1;
  std::vector<StateId> block1;                              // [r1]
  std::vector<StateId> block2;                              // [r1]
  std::vector<std::vector<std::array<StateId, 2>>> block3;  // [r1][r3][zero]
};

inline GadgetPath add_gadget_states(MachineHeader& h, int i, const std::string& prefix) {
  GadgetPath p;
  p.weight = i;
  p.block3.resize(static_cast<std::size_t>(i));
  for (int r = 0; r < i; ++r) {
    p.block1.push_back(h.add_state(prefix + "b1_r" + std::to_string(r)));
    p.block2.push_back(h.add_state(prefix + "b2_r" + std::to_string(r)));
  }
  for (int r1 = 0; r1 < i; ++r1) {
    for (int r3 = 0; r3 < i; ++r3) {
      std::array<StateId, 2> z{};
      for (int zero = 0; zero < 2; ++zero) {
        z[static_cast<std::size_t>(zero)] =
            h.add_state(prefix + "b3_r" + std::to_string(r1) + "_r" + std::to_string(r3) +
                        (zero ? "_z" : "_nz"));
        if (zero && r1 == r3) h.accepting.insert(z[static_cast<std::size_t>(zero)]);
      }
      p.block3[static_cast<std::size_t>(r1)].push_back(z);
    }
  }
  return p;
}

/// The move of path `p` from `q` on (c, s); `sink` receives malformed input.
inline Move gadget_move(const GadgetPath& p, StateId q, char c, CounterSign s, StateId sink) {
  using D = Direction;
  const int i = p.weight;
  for (int r = 0; r < i; ++r) {
    if (q == p.block1[static_cast<std::size_t>(r)]) {
      if (c == '1') return {p.block2[static_cast<std::size_t>(r)], D::kStay};
      const int next = (r + 1) % i;
      return {p.block1[static_cast<std::size_t>(next)], next == 0 ? D::kRight : D::kStay};
    }
    if (q == p.block2[static_cast<std::size_t>(r)]) {
      if (c == '0') return {q, D::kLeft};
      const int zero = s == CounterSign::kZero ? 1 : 0;
      return {p.block3[static_cast<std::size_t>(r)][0][static_cast<std::size_t>(zero)], D::kRight};
    }
  }
  for (int r1 = 0; r1 < i; ++r1) {
    for (int r3 = 0; r3 < i; ++r3) {
      for (int zero = 0; zero < 2; ++zero) {
        if (q != p.block3[static_cast<std::size_t>(r1)][static_cast<std::size_t>(r3)]
                         [static_cast<std::size_t>(zero)]) {
          continue;
        }
        if (c == '1') return {sink, D::kStay};
        const int next = (r3 + 1) % i;
        const auto& row = p.block3[static_cast<std::size_t>(r1)][static_cast<std::size_t>(next)];
        if (next == 0) return {row[static_cast<std::size_t>(zero)], D::kStay};
        return {row[s == CounterSign::kZero ? 1u : 0u], D::kRight};
      }
    }
  }
  return {sink, D::kStay};
}

inline std::vector<StateId> gadget_states(const GadgetPath& p) {
  std::vector<StateId> out(p.block1.begin(), p.block1.end());
  out.insert(out.end(), p.block2.begin(), p.block2.end());
  for (const auto& row : p.block3) {
    for (const auto& z : row) out.insert(out.end(), z.begin(), z.end());
  }
  return out;
}

}  // namespace detail

/// Path i of build_example2 on its own, as a deterministic machine.
inline Cdfa build_example2_path(int i) {
  if (i < 1) throw BadParameter("build_example2_path: weight must be >= 1");
  Cdfa a;
  auto& h = a.header;
  h.alphabet = "01";
  const StateId sink = h.add_state("reject");
  const auto path = detail::add_gadget_states(h, i, "");
  h.initial = path.block1[0];
  for (StateId q = 0; q < h.states.size(); ++q) {
    if (!h.accepting.contains(q)) h.rejecting.insert(q);
  }
  for (StateId q : detail::gadget_states(path)) {
    for (char c : h.alphabet) {
      for (CounterSign s : kAllSigns) a.delta[{q, c, s}] = detail::gadget_move(path, q, c, s, sink);
    }
  }
  for (char c : h.alphabet) {
    for (CounterSign s : kAllSigns) a.delta[{sink, c, s}] = {sink, Direction::kStay};
  }
  return a;
}

/// Probabilistic recognizer of 0^n 1 0^n 1 0^n: the first symbol picks one of
/// n gadget paths uniformly; path i accepts block words with
/// (l - n) = i (m - n), so a non-member is accepted by at most one path.
inline Cpfa build_example2(int n) {
  if (n < 2) throw BadParameter("build_example2: n must be >= 2");
  Cpfa a;
  auto& h = a.header;
  h.alphabet = "01";
  const StateId start = h.add_state("start");
  const StateId sink = h.add_state("reject");
  h.initial = start;
  std::vector<detail::GadgetPath> paths;
  for (int i = 1; i <= n; ++i) {
    paths.push_back(detail::add_gadget_states(h, i, "p" + std::to_string(i) + "_"));
  }
  for (StateId q = 0; q < h.states.size(); ++q) {
    if (!h.accepting.contains(q)) h.rejecting.insert(q);
  }

  const double share = 1.0 / static_cast<double>(n);
  for (char c : h.alphabet) {
    for (CounterSign s : kAllSigns) {
      auto& first = a.delta[{start, c, s}];
      for (const auto& p : paths) {
        const Move m = detail::gadget_move(p, p.block1[0], c, CounterSign::kZero, sink);
        first.push_back({m.to, m.dir, share});
      }
      a.delta[{sink, c, s}] = {{sink, Direction::kStay, 1.0}};
      for (const auto& p : paths) {
        for (StateId q : detail::gadget_states(p)) {
          const Move m = detail::gadget_move(p, q, c, s, sink);
          a.delta[{q, c, s}] = {{m.to, m.dir, 1.0}};
        }
      }
    }
  }
  return a;
}

}  // namespace qf1ca::classical
