#pragma once

// Test-only helpers: random simple automata, word enumeration, block words.

#include <random>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "qf1ca/qf1ca.hpp"

namespace qf1ca::testing {

/// Haar-ish random unitary: QR of a complex Gaussian matrix, phases fixed.
inline Matrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix z(n, n);
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    for (Eigen::Index c = 0; c < z.cols(); ++c) z(r, c) = {g(rng), g(rng)};
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    const Amplitude d = r(c, c);
    if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

struct RandomSpec {
  std::size_t min_states = 2;
  std::size_t max_states = 5;
  std::string alphabet = "ab";
  CounterDomain domain = CounterDomain::kAllIntegers;
};

/// A random simple automaton. Halting states are drawn at random; the
/// initial state is always non-halting.
inline SimpleQf1ca random_simple(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> size(spec.min_states, spec.max_states);
  const std::size_t n = size(rng);
  SimpleQf1ca a;
  a.header.alphabet = spec.alphabet;
  for (std::size_t q = 0; q < n; ++q) a.header.states.push_back("q" + std::to_string(q));
  a.header.initial = 0;
  a.header.counter_domain = spec.domain;
  std::uniform_int_distribution<int> role(0, 2);
  for (StateId q = 1; q < n; ++q) {
    const int r = role(rng);
    if (r == 1) a.header.accepting.insert(q);
    if (r == 2) a.header.rejecting.insert(q);
  }
  std::uniform_int_distribution<int> dir(0, 2);
  for (TapeSymbol g : a.header.tape_alphabet()) {
    for (CounterSign s : kAllSigns) a.unitaries[UnitaryKey{g, s}] = random_unitary(n, rng);
    for (StateId q = 0; q < n; ++q) a.direction[DirectionKey{q, g}] = kAllDirections[dir(rng)];
  }
  return a;
}

/// All words over `alphabet` of length <= max_len, shortest first.
inline std::vector<std::string> all_words(const std::string& alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

inline std::string block_word(long l, long m, long n) {
  return std::string(l, '0') + "1" + std::string(m, '0') + "1" + std::string(n, '0');
}

/// Parses 0^l 1 0^m 1 0^n; false for anything else.
inline bool parse_block_word(const std::string& w, long& l, long& m, long& n) {
  const auto a = w.find('1');
  if (a == std::string::npos) return false;
  const auto b = w.find('1', a + 1);
  if (b == std::string::npos || w.find('1', b + 1) != std::string::npos) return false;
  l = static_cast<long>(a);
  m = static_cast<long>(b - a - 1);
  n = static_cast<long>(w.size() - b - 1);
  return true;
}

inline bool in_l1(const std::string& w) {  // 0^n 1 0^n, n >= 0
  const auto a = w.find('1');
  if (a == std::string::npos || w.find('1', a + 1) != std::string::npos) return false;
  return 2 * a + 1 == w.size();
}

inline bool in_0n1n(const std::string& w) {  // 0^n 1^n, n >= 0
  const std::size_t h = w.size() / 2;
  return w.size() % 2 == 0 && w == std::string(h, '0') + std::string(h, '1');
}

/// Multiplies the largest-modulus amplitude in a random nonempty (q, g, s)
/// bucket by `factor`. Returns the touched key.
inline TransitionKey perturb_dominant(GeneralQf1ca& a, std::mt19937_64& rng, double factor) {
  std::vector<TransitionKey> keys;
  for (const auto& [key, list] : a.delta) {
    if (!list.empty()) keys.push_back(key);
  }
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  const TransitionKey key = keys[pick(rng)];
  auto& list = a.delta[key];
  std::size_t best = 0;
  for (std::size_t i = 1; i < list.size(); ++i) {
    if (std::abs(list[i].amp) > std::abs(list[best].amp)) best = i;
  }
  list[best].amp *= factor;
  return key;
}

/// The five zoo automata with their default parameters, in general form.
inline std::vector<std::pair<std::string, GeneralQf1ca>> zoo_general() {
  std::vector<std::pair<std::string, GeneralQf1ca>> out;
  for (const auto& name : zoo_names()) {
    out.emplace_back(name, general_from_simple(make_zoo_entry(name).automaton));
  }
  out.emplace_back("example3_nonneg",
                   general_from_simple(make_zoo_entry("example3", {{"variant", "nonneg"}}).automaton));
  return out;
}

}  // namespace qf1ca::testing
