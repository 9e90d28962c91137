#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "qf1ca/automaton.hpp"
#include "qf1ca/core.hpp"
#include "qf1ca/errors.hpp"

namespace qf1ca {

struct UnitarityCheck {
  bool ok = false;
  double residual = 0.0;  // max |(M^H M - I)_ij|
};

inline UnitarityCheck check_matrix_unitary(const Matrix& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) return {false, std::numeric_limits<double>::infinity()};
  const Matrix gram = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  const double residual = m.size() == 0 ? 0.0 : gram.cwiseAbs().maxCoeff();
  return {residual <= tol, residual};
}

/// One failed well-formedness sum. Condition 1 is local probability and
/// orthogonality, 2 and 3 are the two separability conditions. `s1` is the
/// counter sign seen by `q1`, `s2` the sign seen by `q2`.
struct ConditionViolation {
  int condition = 0;
  TapeSymbol symbol;
  CounterSign s1 = CounterSign::kZero;
  CounterSign s2 = CounterSign::kZero;
  StateId q1 = 0;
  StateId q2 = 0;
  double residual = 0.0;
};

struct ConditionReport {
  std::vector<ConditionViolation> violations;
  double max_residual = 0.0;
  bool strict_mode = false;

  bool ok() const { return violations.empty(); }
};

namespace detail {

using PairSums = std::map<std::pair<StateId, StateId>, Amplitude>;
/// target state -> [(source state, amplitude)] for one direction.
using Incoming = std::map<StateId, std::vector<std::pair<StateId, Amplitude>>>;

inline Incoming incoming(const GeneralQf1ca& a, TapeSymbol g, CounterSign s, Direction d) {
  Incoming out;
  for (StateId q = 0; q < a.header.num_states(); ++q) {
    for (const auto& t : a.transitions(q, g, s)) {
      if (t.dir == d && t.amp != Amplitude{}) out[t.to].emplace_back(q, t.amp);
    }
  }
  return out;
}

/// sums[(q1,q2)] += sum over q' of conj(first(q1 -> q')) * second(q2 -> q').
inline void accumulate(const Incoming& first, const Incoming& second, PairSums& sums) {
  for (const auto& [target, lhs] : first) {
    auto it = second.find(target);
    if (it == second.end()) continue;
    for (const auto& [q1, a1] : lhs) {
      for (const auto& [q2, a2] : it->second) sums[{q1, q2}] += std::conj(a1) * a2;
    }
  }
}

inline void record(ConditionReport& report, int condition, TapeSymbol g, CounterSign s1,
                   CounterSign s2, StateId q1, StateId q2, double residual, double tol) {
  report.max_residual = std::max(report.max_residual, residual);
  if (residual > tol) report.violations.push_back({condition, g, s1, s2, q1, q2, residual});
}

/// Sign pairs (sign(k1), sign(k2)) that configurations with k2 = k1 + gap
/// can actually carry, for gap 1 (separability I) and gap 2 (II).
inline std::vector<std::pair<CounterSign, CounterSign>> realizable_sign_pairs(CounterDomain dom) {
  using S = CounterSign;
  // (0,0) never occurs: two counters that differ cannot both be zero.
  // (1,0) needs k1 < 0.
  if (dom == CounterDomain::kNonNegative) return {{S::kZero, S::kNonZero}, {S::kNonZero, S::kNonZero}};
  return {{S::kZero, S::kNonZero}, {S::kNonZero, S::kZero}, {S::kNonZero, S::kNonZero}};
}

}  // namespace detail

/// Evaluates the three well-formedness sums for every tape symbol and every
/// ordered state pair.
///
/// Literal mode evaluates conditions (2) and (3) with one shared sign s for
/// both states, s in {0, 1}. Strict mode evaluates them with the sign pairs
/// that two configurations whose counters differ by 1 or 2 can really have in
/// the automaton's counter domain, which is exactly the set of inner products
/// of the evolution operator's columns. Strict verdicts therefore agree with
/// isometry_oracle.
inline ConditionReport check_conditions(const GeneralQf1ca& a, double tol = kDefaultTol,
                                        bool strict = true) {
  ConditionReport report;
  report.strict_mode = strict;
  const std::size_t n = a.header.num_states();
  using D = Direction;

  for (TapeSymbol g : a.header.tape_alphabet()) {
    std::map<std::pair<CounterSign, Direction>, detail::Incoming> in;
    for (CounterSign s : kAllSigns) {
      for (Direction d : kAllDirections) in[{s, d}] = detail::incoming(a, g, s, d);
    }

    // (1): same configuration pair, hence same sign.
    for (CounterSign s : kAllSigns) {
      detail::PairSums sums;
      for (Direction d : kAllDirections) detail::accumulate(in[{s, d}], in[{s, d}], sums);
      for (StateId q1 = 0; q1 < n; ++q1) {
        for (StateId q2 = 0; q2 < n; ++q2) {
          auto it = sums.find({q1, q2});
          const Amplitude v = it == sums.end() ? Amplitude{} : it->second;
          const double expected = q1 == q2 ? 1.0 : 0.0;
          detail::record(report, 1, g, s, s, q1, q2, std::abs(v - expected), tol);
        }
      }
    }

    std::vector<std::pair<CounterSign, CounterSign>> pairs;
    if (strict) {
      pairs = detail::realizable_sign_pairs(a.header.counter_domain);
    } else {
      pairs = {{CounterSign::kZero, CounterSign::kZero},
               {CounterSign::kNonZero, CounterSign::kNonZero}};
    }
    for (auto [s1, s2] : pairs) {
      detail::PairSums sep1;
      detail::accumulate(in[{s1, D::kRight}], in[{s2, D::kStay}], sep1);
      detail::accumulate(in[{s1, D::kStay}], in[{s2, D::kLeft}], sep1);
      detail::PairSums sep2;
      detail::accumulate(in[{s1, D::kRight}], in[{s2, D::kLeft}], sep2);
      for (const auto& [qq, v] : sep1) {
        detail::record(report, 2, g, s1, s2, qq.first, qq.second, std::abs(v), tol);
      }
      for (const auto& [qq, v] : sep2) {
        detail::record(report, 3, g, s1, s2, qq.first, qq.second, std::abs(v), tol);
      }
    }
  }
  return report;
}

struct MatrixFailure {
  TapeSymbol symbol;
  CounterSign sign = CounterSign::kZero;
  double residual = 0.0;
};

struct SimpleReport {
  std::vector<MatrixFailure> failures;
  double max_residual = 0.0;

  bool ok() const { return failures.empty(); }
};

/// A simple automaton is well-formed iff every V(gamma, s) is unitary. Missing
/// matrices count as failures with infinite residual.
inline SimpleReport check_simple(const SimpleQf1ca& a, double tol = kDefaultTol) {
  SimpleReport report;
  for (TapeSymbol g : a.header.tape_alphabet()) {
    for (CounterSign s : kAllSigns) {
      auto it = a.unitaries.find(UnitaryKey{g, s});
      UnitarityCheck c{false, std::numeric_limits<double>::infinity()};
      if (it != a.unitaries.end() &&
          it->second.rows() == static_cast<Eigen::Index>(a.header.num_states())) {
        c = check_matrix_unitary(it->second, tol);
      }
      report.max_residual = std::max(report.max_residual, c.residual);
      if (!c.ok) report.failures.push_back({g, s, c.residual});
    }
  }
  return report;
}

/// Brute-force ground truth for well-formedness: for each distinct symbol of
/// `# word $`, materializes the evolution operator on the truncated space
/// {(q, k) : |k| <= bound} (0 <= k <= bound for NonNegative automata) and
/// returns the largest deviation of its column Gram matrix from identity.
inline double isometry_oracle(const GeneralQf1ca& a, std::string_view word, Counter bound) {
  if (bound < static_cast<Counter>(word.size()) + 2) {
    throw BadParameter("isometry_oracle: counter bound must be at least |word| + 2");
  }
  const std::size_t n = a.header.num_states();
  const Counter lo = a.header.counter_domain == CounterDomain::kNonNegative ? 0 : -bound;

  std::vector<TapeSymbol> symbols = tape(word);
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());

  double worst = 0.0;
  for (TapeSymbol g : symbols) {
    // Column index = source configuration; collect rows sparsely.
    std::vector<Configuration> sources;
    for (Counter k = lo; k <= bound; ++k) {
      for (StateId q = 0; q < n; ++q) sources.push_back({q, k});
    }
    std::map<Configuration, std::vector<std::pair<std::size_t, Amplitude>>> rows;
    for (std::size_t col = 0; col < sources.size(); ++col) {
      const auto [q, k] = sources[col];
      std::map<Configuration, Amplitude> image;
      for (const auto& t : a.transitions(q, g, sign(k))) {
        image[{t.to, k + displacement(t.dir)}] += t.amp;
      }
      for (const auto& [target, amp] : image) {
        if (amp != Amplitude{}) rows[target].emplace_back(col, amp);
      }
    }
    std::map<std::pair<std::size_t, std::size_t>, Amplitude> gram;
    for (const auto& [target, entries] : rows) {
      for (const auto& [i, ai] : entries) {
        for (const auto& [j, aj] : entries) gram[{i, j}] += std::conj(ai) * aj;
      }
    }
    for (std::size_t i = 0; i < sources.size(); ++i) {
      auto it = gram.find({i, i});
      const Amplitude diag = it == gram.end() ? Amplitude{} : it->second;
      worst = std::max(worst, std::abs(diag - 1.0));
    }
    for (const auto& [ij, v] : gram) {
      if (ij.first != ij.second) worst = std::max(worst, std::abs(v));
    }
  }
  return worst;
}

/// Extends the given orthonormal columns to an order-n unitary. Unspecified
/// columns are filled in ascending column order by Gram-Schmidt over the
/// standard basis vectors taken in ascending index order, skipping candidates
/// that are (nearly) in the span of the columns chosen so far.
inline Matrix complete_unitary(const std::map<std::size_t, Vector>& partial, std::size_t order,
                               double tol = kDefaultTol) {
  const auto n = static_cast<Eigen::Index>(order);
  Matrix out = Matrix::Zero(n, n);
  std::vector<Eigen::Index> filled;
  for (const auto& [col, v] : partial) {
    if (col >= order || v.size() != n) {
      throw NotIsometric("complete_unitary: column " + std::to_string(col) + " does not fit order " +
                         std::to_string(order));
    }
    out.col(static_cast<Eigen::Index>(col)) = v;
    filled.push_back(static_cast<Eigen::Index>(col));
  }
  for (std::size_t i = 0; i < filled.size(); ++i) {
    for (std::size_t j = i; j < filled.size(); ++j) {
      const Amplitude ip = out.col(filled[i]).dot(out.col(filled[j]));
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(ip - expected) > tol) {
        throw NotIsometric("complete_unitary: given columns are not orthonormal");
      }
    }
  }

  // Any candidate skipped once stays skippable, so a single ascending cursor
  // suffices; the threshold leaves at least one acceptable candidate.
  const double threshold = 1.0 / (4.0 * static_cast<double>(std::max<std::size_t>(order, 1)));
  Eigen::Index cursor = 0;
  for (Eigen::Index col = 0; col < n; ++col) {
    if (partial.contains(static_cast<std::size_t>(col))) continue;
    for (;; ++cursor) {
      if (cursor >= n) throw NotIsometric("complete_unitary: basis exhausted");
      Vector v = Vector::Unit(n, cursor);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index f : filled) v -= out.col(f).dot(v) * out.col(f);
      }
      if (v.squaredNorm() > threshold) {
        out.col(col) = v / v.norm();
        filled.push_back(col);
        ++cursor;
        break;
      }
    }
  }
  return out;
}

}  // namespace qf1ca
