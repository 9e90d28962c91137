#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "qf1ca/automaton.hpp"
#include "qf1ca/core.hpp"
#include "qf1ca/errors.hpp"
#include "qf1ca/wellformed.hpp"

namespace qf1ca {

/// Assembles a SimpleQf1ca from the columns that matter. Columns that are not
/// given are completed to a unitary, and directions that are not given
/// default to Stay.
class SimpleBuilder {
 public:
  explicit SimpleBuilder(std::string alphabet) { header_.alphabet = std::move(alphabet); }

  StateId state(const std::string& name) {
    if (auto id = header_.find_state(name)) return *id;
    header_.states.push_back(name);
    return header_.states.size() - 1;
  }

  const std::string& name(StateId q) const { return header_.states.at(q); }

  SimpleBuilder& initial(StateId q) {
    header_.initial = q;
    return *this;
  }
  SimpleBuilder& accepting(StateId q) {
    header_.accepting.insert(q);
    return *this;
  }
  SimpleBuilder& rejecting(StateId q) {
    header_.rejecting.insert(q);
    return *this;
  }
  SimpleBuilder& counter_domain(CounterDomain d) {
    header_.counter_domain = d;
    return *this;
  }

  /// V(g, s)|from> = sum of amp |to>.
  SimpleBuilder& map(char g, CounterSign s, StateId from,
                     std::vector<std::pair<StateId, Amplitude>> image) {
    columns_[UnitaryKey{TapeSymbol::from_char(g), s}][from] = std::move(image);
    return *this;
  }
  /// Same image for both counter signs.
  SimpleBuilder& map(char g, StateId from, std::vector<std::pair<StateId, Amplitude>> image) {
    map(g, CounterSign::kZero, from, image);
    return map(g, CounterSign::kNonZero, from, std::move(image));
  }

  SimpleBuilder& dir(StateId target, char g, Direction d) {
    direction_[DirectionKey{target, TapeSymbol::from_char(g)}] = d;
    return *this;
  }
  /// D(target, g) = d for every tape symbol g.
  SimpleBuilder& dir_all(StateId target, Direction d) {
    for (TapeSymbol g : header_.tape_alphabet()) direction_[DirectionKey{target, g}] = d;
    return *this;
  }

  SimpleQf1ca build() const {
    SimpleQf1ca a;
    a.header = header_;
    const std::size_t n = header_.num_states();
    for (TapeSymbol g : header_.tape_alphabet()) {
      for (CounterSign s : kAllSigns) {
        std::map<std::size_t, Vector> partial;
        if (auto it = columns_.find(UnitaryKey{g, s}); it != columns_.end()) {
          for (const auto& [from, image] : it->second) {
            Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
            for (const auto& [to, amp] : image) v(static_cast<Eigen::Index>(to)) += amp;
            partial[from] = v;
          }
        }
        a.unitaries[UnitaryKey{g, s}] = complete_unitary(partial, n);
      }
      for (StateId q = 0; q < n; ++q) {
        auto it = direction_.find(DirectionKey{q, g});
        a.direction[DirectionKey{q, g}] = it == direction_.end() ? Direction::kStay : it->second;
      }
    }
    return a;
  }

 private:
  AutomatonHeader header_;
  std::map<UnitaryKey, std::map<StateId, std::vector<std::pair<StateId, Amplitude>>>> columns_;
  std::map<DirectionKey, Direction> direction_;
};

/// Real root of p^3 + p - 1 = 0 (equivalently p = 1 - p^3), by bisection on [0, 1].
inline double critical_p() {
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid * mid * mid + mid - 1.0 < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

enum class Example3Variant { kIntegerCounter, kNonNegative };

/// Deterministic reversible recognizer of 0^n 1 0^n.
///
/// q1 counts the first block up, the 1 moves to q2, which counts the second
/// block down; at $ a zero counter sends q2 to q_a. Besides the listed
/// transitions, a second 1 and a nonzero counter at $ both send q2 to q_r2 so
/// that every V stays a permutation. The NonNegative variant rejects as soon
/// as q2 reads 0 on a zero counter instead of letting it go negative.
inline SimpleQf1ca build_example3(Example3Variant variant = Example3Variant::kIntegerCounter) {
  using D = Direction;
  using S = CounterSign;
  SimpleBuilder b("01");
  const StateId q0 = b.state("q0");
  const StateId q1 = b.state("q1");
  const StateId q2 = b.state("q2");
  const StateId qa = b.state("q_a");
  const StateId qr = b.state("q_r");
  const StateId qr2 = b.state("q_r2");
  b.initial(q0).accepting(qa).rejecting(qr).rejecting(qr2);

  b.map('#', S::kZero, q0, {{q1, 1.0}});
  b.map('0', q1, {{q1, 1.0}});
  b.map('1', q1, {{q2, 1.0}});
  b.map('1', q2, {{qr2, 1.0}});
  if (variant == Example3Variant::kIntegerCounter) {
    b.map('0', q2, {{q2, 1.0}});
  } else {
    b.counter_domain(CounterDomain::kNonNegative);
    b.map('0', S::kNonZero, q2, {{q2, 1.0}});
    b.map('0', S::kZero, q2, {{qr, 1.0}});
  }
  b.map('$', q1, {{qr, 1.0}});
  b.map('$', S::kNonZero, q2, {{qr2, 1.0}});
  b.map('$', S::kZero, q2, {{qa, 1.0}});

  b.dir(q1, '#', D::kStay).dir(q1, '0', D::kRight);
  b.dir(q2, '0', D::kLeft).dir(q2, '1', D::kStay);
  b.dir_all(qa, D::kStay).dir_all(qr, D::kStay).dir_all(qr2, D::kStay);
  return b.build();
}

/// Recognizer of 0^n 1^n built on the one-way automaton for 0*1*: the
/// superposition sqrt(1-p)|q1> + sqrt(p)|q2> is invariant under V(0), the
/// first 1 rejects the q1 branch, and the counter checks the block lengths.
/// Members are accepted with probability p; at the root of p = 1 - p^3 this
/// equals the worst-case rejection of non-members.
inline SimpleQf1ca build_example4(double p) {
  if (!(p > 0.0 && p < 1.0)) throw BadParameter("build_example4: p must lie in (0, 1)");
  using D = Direction;
  using S = CounterSign;
  SimpleBuilder b("01");
  const StateId q0 = b.state("q0");
  const StateId q1 = b.state("q1");
  const StateId q2 = b.state("q2");
  const StateId qa = b.state("q_a");
  const StateId qr = b.state("q_r");
  const StateId qr2 = b.state("q_r2");
  b.initial(q0).accepting(qa).rejecting(qr).rejecting(qr2);

  const double sp = std::sqrt(p);
  const double sq = std::sqrt(1.0 - p);
  const double mix = std::sqrt(p * (1.0 - p));
  b.map('#', S::kZero, q0, {{q1, sq}, {q2, sp}});
  b.map('0', q1, {{q1, 1.0 - p}, {q2, mix}, {qr, sp}});
  b.map('0', q2, {{q1, mix}, {q2, p}, {qr, -sq}});
  b.map('1', q1, {{qr, 1.0}});
  b.map('1', S::kNonZero, q2, {{q2, 1.0}});
  b.map('1', S::kZero, q2, {{qr2, 1.0}});
  b.map('$', q1, {{qr, 1.0}});
  b.map('$', S::kNonZero, q2, {{qr2, 1.0}});
  b.map('$', S::kZero, q2, {{qa, 1.0}});

  for (StateId q : {q1, q2}) {
    b.dir(q, '#', D::kStay).dir(q, '0', D::kRight).dir(q, '1', D::kLeft).dir(q, '$', D::kStay);
  }
  b.dir_all(qa, D::kStay).dir_all(qr, D::kStay).dir_all(qr2, D::kStay);
  return b.build();
}

inline SimpleQf1ca build_example4() { return build_example4(critical_p()); }

/// Arithmetic oracle for path i of the block-word family: (l - n) = i (m - n).
inline bool path_predicate(long i, long l, long m, long n) {
  if (i < 1) throw BadParameter("path_predicate: i must be >= 1");
  return (l - n) == i * (m - n);
}

namespace detail {

/// One gadget path of build_example5; see classical::detail::GadgetPath for
/// the counting scheme. The quantum version checks the counter by
/// observation at $, so no zero flag is needed.
struct QuantumPath {
  std::vector<StateId> block1;               // [r1]
  std::vector<StateId> block2;               // [r1]
  std::vector<std::vector<StateId>> block3;  // [r1][r3]
};

}  // namespace detail

/// Superposition of N deterministic reversible gadget paths; path i accepts
/// 0^l 1 0^m 1 0^n exactly when path_predicate(i, l, m, n) holds.
inline SimpleQf1ca build_example5(int paths) {
  if (paths < 2) throw BadParameter("build_example5: N must be >= 2");
  using D = Direction;
  using S = CounterSign;
  SimpleBuilder b("01");
  const StateId q0 = b.state("q0");
  b.initial(q0);

  std::vector<detail::QuantumPath> layout;
  std::vector<StateId> walkers;
  for (int i = 1; i <= paths; ++i) {
    const std::string pre = "p" + std::to_string(i) + "_";
    detail::QuantumPath p;
    p.block3.resize(static_cast<std::size_t>(i));
    for (int r = 0; r < i; ++r) {
      p.block1.push_back(b.state(pre + "b1_r" + std::to_string(r)));
      p.block2.push_back(b.state(pre + "b2_r" + std::to_string(r)));
    }
    for (int r1 = 0; r1 < i; ++r1) {
      for (int r3 = 0; r3 < i; ++r3) {
        p.block3[static_cast<std::size_t>(r1)].push_back(
            b.state(pre + "b3_r" + std::to_string(r1) + "_r" + std::to_string(r3)));
      }
    }
    walkers.insert(walkers.end(), p.block1.begin(), p.block1.end());
    walkers.insert(walkers.end(), p.block2.begin(), p.block2.end());
    for (const auto& row : p.block3) walkers.insert(walkers.end(), row.begin(), row.end());
    layout.push_back(std::move(p));
  }
  // One private rejecting state per walking state keeps every V injective.
  std::map<StateId, StateId> reject_of;
  for (StateId q : walkers) {
    reject_of[q] = b.state("rej_" + std::to_string(q));
    b.rejecting(reject_of[q]).dir_all(reject_of[q], D::kStay);
  }

  const Amplitude split = 1.0 / std::sqrt(static_cast<double>(paths));
  std::vector<std::pair<StateId, Amplitude>> fan;
  for (const auto& p : layout) fan.emplace_back(p.block1[0], split);
  b.map('#', S::kZero, q0, fan);

  for (int i = 1; i <= paths; ++i) {
    const auto& p = layout[static_cast<std::size_t>(i - 1)];
    const auto at = [](const auto& v, int idx) { return v[static_cast<std::size_t>(idx)]; };
    for (int r = 0; r < i; ++r) {
      const int next = (r + 1) % i;
      b.map('0', at(p.block1, r), {{at(p.block1, next), 1.0}});
      b.map('1', at(p.block1, r), {{at(p.block2, r), 1.0}});
      b.map('0', at(p.block2, r), {{at(p.block2, r), 1.0}});
      b.map('1', at(p.block2, r), {{at(at(p.block3, r), 0), 1.0}});
      b.dir(at(p.block1, r), '#', D::kStay);
      b.dir(at(p.block1, r), '0', r == 0 ? D::kRight : D::kStay);
      b.dir(at(p.block2, r), '0', D::kLeft);
      b.dir(at(p.block2, r), '1', D::kStay);
      for (StateId q : {at(p.block1, r), at(p.block2, r)}) {
        b.map('$', q, {{reject_of[q], 1.0}});
      }
    }
    for (int r1 = 0; r1 < i; ++r1) {
      const StateId accept = b.state("acc_p" + std::to_string(i) + "_r" + std::to_string(r1));
      b.accepting(accept).dir_all(accept, D::kStay);
      for (int r3 = 0; r3 < i; ++r3) {
        const StateId q = at(at(p.block3, r1), r3);
        const int next = (r3 + 1) % i;
        b.map('0', q, {{at(at(p.block3, r1), next), 1.0}});
        b.map('1', q, {{reject_of[q], 1.0}});
        b.dir(q, '0', r3 == 0 ? D::kStay : D::kRight);
        b.dir(q, '1', D::kStay);
        b.map('$', S::kNonZero, q, {{reject_of[q], 1.0}});
        b.map('$', S::kZero, q, {{r1 == r3 ? accept : reject_of[q], 1.0}});
      }
    }
  }
  return b.build();
}

/// Three-way split for 0^l 1 0^m 1 0^n with (l = n or m = n) and l != m:
/// 3/7 straight to q_a, 2/7 into a path that ends at |q1', l - n>, 2/7 into a
/// path that ends at |q2', m - n>. At $ the two path amplitudes cancel on q_a
/// when both counters are zero.
inline SimpleQf1ca build_theorem5() {
  using D = Direction;
  using S = CounterSign;
  SimpleBuilder b("01");
  const StateId q0 = b.state("q0");
  const StateId qa = b.state("q_a");
  const StateId qr = b.state("q_r");
  // Path 1 counts +l, 0, -n; path 2 counts 0, +m, -n.
  const StateId p1[3] = {b.state("q1"), b.state("q1_mid"), b.state("q1'")};
  const StateId p2[3] = {b.state("q2"), b.state("q2_mid"), b.state("q2'")};
  const D moves1[3] = {D::kRight, D::kStay, D::kLeft};
  const D moves2[3] = {D::kStay, D::kRight, D::kLeft};
  b.initial(q0).accepting(qa).rejecting(qr);
  b.dir_all(qa, D::kStay).dir_all(qr, D::kStay);

  b.map('#', S::kZero, q0,
        {{p1[0], std::sqrt(2.0 / 7.0)}, {p2[0], std::sqrt(2.0 / 7.0)}, {qa, std::sqrt(3.0 / 7.0)}});
  const double h = std::numbers::sqrt2 / 2.0;
  for (const auto& [path, moves] : {std::pair{p1, moves1}, std::pair{p2, moves2}}) {
    b.dir(path[0], '#', D::kStay);
    for (int blk = 0; blk < 3; ++blk) {
      const StateId q = path[blk];
      const StateId rej = b.state("rej_" + b.name(q));
      b.rejecting(rej).dir_all(rej, D::kStay);
      b.map('0', q, {{q, 1.0}});
      b.dir(q, '0', moves[blk]);
      if (blk < 2) {
        b.map('1', q, {{path[blk + 1], 1.0}});
        b.dir(path[blk + 1], '1', D::kStay);
        b.map('$', q, {{rej, 1.0}});
      } else {
        b.map('1', q, {{rej, 1.0}});
      }
    }
  }
  // Same $ map on both signs; at a nonzero counter the q_a part is not
  // accepted and stays as residual.
  b.map('$', p1[2], {{qa, h}, {qr, h}});
  b.map('$', p2[2], {{qa, -h}, {qr, h}});
  return b.build();
}

/// Experimental three-path recognizer for 0^l 1 0^m 1 0^n with exactly two
/// equal blocks. Paths end at counters l - m, l - n and m - n; exactly two
/// equal blocks means exactly one zero counter. At $ the three path states go
/// through a 3x3 Fourier matrix whose q_a row sums to zero, so the q_a
/// amplitude cancels when all three counters vanish (l = m = n). The initial
/// 8/17 direct acceptance balances both sides at 9/17.
inline SimpleQf1ca build_theorem6_experimental() {
  using D = Direction;
  using S = CounterSign;
  SimpleBuilder b("01");
  const StateId q0 = b.state("q0");
  const StateId qa = b.state("q_a");
  const StateId qr = b.state("q_r");
  const StateId qr2 = b.state("q_r2");
  b.initial(q0).accepting(qa).rejecting(qr).rejecting(qr2);
  b.dir_all(qa, D::kStay).dir_all(qr, D::kStay).dir_all(qr2, D::kStay);

  // Per block counter move: path 1 -> l - m, path 2 -> l - n, path 3 -> m - n.
  const D moves[3][3] = {{D::kRight, D::kLeft, D::kStay},
                         {D::kRight, D::kStay, D::kLeft},
                         {D::kStay, D::kRight, D::kLeft}};
  StateId last[3] = {};
  std::vector<std::pair<StateId, Amplitude>> fan{{qa, std::sqrt(8.0 / 17.0)}};
  for (int j = 0; j < 3; ++j) {
    StateId blocks[3];
    for (int blk = 0; blk < 3; ++blk) {
      blocks[blk] = b.state("t" + std::to_string(j + 1) + "_b" + std::to_string(blk + 1));
    }
    fan.emplace_back(blocks[0], std::sqrt(3.0 / 17.0));
    b.dir(blocks[0], '#', D::kStay);
    for (int blk = 0; blk < 3; ++blk) {
      const StateId q = blocks[blk];
      const StateId rej = b.state("rej_" + b.name(q));
      b.rejecting(rej).dir_all(rej, D::kStay);
      b.map('0', q, {{q, 1.0}});
      b.dir(q, '0', moves[j][blk]);
      if (blk < 2) {
        b.map('1', q, {{blocks[blk + 1], 1.0}});
        b.dir(blocks[blk + 1], '1', D::kStay);
        b.map('$', q, {{rej, 1.0}});
      } else {
        b.map('1', q, {{rej, 1.0}});
      }
    }
    last[j] = blocks[2];
  }
  b.map('#', S::kZero, q0, fan);

  const StateId out[3] = {qr, qa, qr2};
  const double norm = 1.0 / std::sqrt(3.0);
  for (int j = 0; j < 3; ++j) {
    std::vector<std::pair<StateId, Amplitude>> image;
    for (int row = 0; row < 3; ++row) {
      image.emplace_back(out[row], norm * std::polar(1.0, 2.0 * std::numbers::pi * row * j / 3.0));
    }
    b.map('$', last[j], image);
  }
  return b.build();
}

/// A named zoo automaton with the probabilities it is built to reproduce.
struct ZooEntry {
  std::string name;
  std::map<std::string, std::string> params;
  std::string claims;
  SimpleQf1ca automaton;
};

inline std::vector<std::string> zoo_names() {
  return {"example3", "example4", "example5", "theorem5", "theorem6"};
}

namespace detail {

inline AcceptanceType parse_acceptance_name(const std::string& v) {
  if (v == "state_and_zero") return AcceptanceType::kStateAndZero;
  if (v == "zero") return AcceptanceType::kZeroCounter;
  if (v == "state") return AcceptanceType::kStateOnly;
  throw BadParameter("unknown acceptance '" + v + "'");
}

inline double parse_number(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw BadParameter("parameter " + key + " is not a number: " + v);
  return x;
}

inline int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_number(key, v);
  if (x != std::floor(x)) throw BadParameter("parameter " + key + " must be an integer");
  return static_cast<int>(x);
}

}  // namespace detail

/// Builds a zoo automaton by name. Recognized parameters:
///   example3: variant=int|nonneg     example4: p=<real in (0,1)>
///   example5: N=<int >= 2>
/// and, for every entry, acceptance=state_and_zero|zero|state and
/// observation=mm|mo to reconfigure the observable.
inline ZooEntry make_zoo_entry(const std::string& name,
                               const std::map<std::string, std::string>& params = {}) {
  ZooEntry e;
  e.name = name;
  e.params = params;
  auto take = [&](const std::string& key) -> const std::string* {
    auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
  };
  std::set<std::string> known{"acceptance", "observation"};

  if (name == "example3") {
    known.insert("variant");
    auto variant = Example3Variant::kIntegerCounter;
    if (const auto* v = take("variant")) {
      if (*v == "nonneg") {
        variant = Example3Variant::kNonNegative;
      } else if (*v != "int") {
        throw BadParameter("example3: variant must be int or nonneg");
      }
    }
    e.automaton = build_example3(variant);
    e.claims = "0^n 1 0^n accepted with probability 1, all other words rejected with probability 1";
  } else if (name == "example4") {
    known.insert("p");
    const double p = take("p") ? detail::parse_number("p", *take("p")) : critical_p();
    e.automaton = build_example4(p);
    e.claims = "0^n 1^n accepted with probability p; at p = 0.6823278038 (root of p = 1 - p^3) "
               "every other word is rejected with probability >= p";
  } else if (name == "example5") {
    known.insert("N");
    const int n = take("N") ? detail::parse_int("N", *take("N")) : 3;
    e.automaton = build_example5(n);
    e.claims = "0^n 1 0^n 1 0^n accepted with probability 1, other block words rejected with "
               "probability >= 1 - 1/N, malformed words rejected with probability 1";
  } else if (name == "theorem5") {
    e.automaton = build_theorem5();
    e.claims = "(l = n or m = n) and l != m: accept 4/7; otherwise reject (incl. residual) 4/7; "
               "l = m = n: accept 3/7";
  } else if (name == "theorem6") {
    e.automaton = build_theorem6_experimental();
    e.claims = "experimental: exactly two equal blocks accepted with 9/17, others rejected with 9/17";
  } else {
    throw BadParameter("unknown zoo entry '" + name + "'");
  }
  for (const auto& [key, value] : params) {
    if (!known.contains(key)) throw BadParameter(name + ": unknown parameter '" + key + "'");
  }
  if (const auto* v = take("acceptance")) e.automaton.header.acceptance = detail::parse_acceptance_name(*v);
  if (const auto* v = take("observation")) {
    if (*v == "mo") {
      e.automaton.header.observation = Observation::kOnceMeasure;
    } else if (*v != "mm") {
      throw BadParameter("observation must be mm or mo");
    }
  }
  return e;
}

}  // namespace qf1ca
