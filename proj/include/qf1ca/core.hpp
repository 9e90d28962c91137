#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qf1ca {

using Amplitude = std::complex<double>;
using StateId = std::size_t;
using Counter = std::int64_t;

inline constexpr char kLeftEndMarker = '#';
inline constexpr char kRightEndMarker = '$';

/// Default comparison tolerance for probabilities and unitarity residuals.
inline constexpr double kDefaultTol = 1e-9;

/// One cell of the tape: an input character or one of the two endmarkers.
class TapeSymbol {
 public:
  enum class Kind { kInput, kLeftEnd, kRightEnd };

  constexpr TapeSymbol() = default;

  static constexpr TapeSymbol input(char c) { return TapeSymbol(c); }
  static constexpr TapeSymbol left_end() { return TapeSymbol(kLeftEndMarker); }
  static constexpr TapeSymbol right_end() { return TapeSymbol(kRightEndMarker); }
  /// Interprets '#' and '$' as endmarkers and anything else as an input symbol.
  static constexpr TapeSymbol from_char(char c) { return TapeSymbol(c); }

  constexpr Kind kind() const {
    if (ch_ == kLeftEndMarker) return Kind::kLeftEnd;
    if (ch_ == kRightEndMarker) return Kind::kRightEnd;
    return Kind::kInput;
  }
  constexpr bool is_endmarker() const { return kind() != Kind::kInput; }
  constexpr char ch() const { return ch_; }

  friend constexpr auto operator<=>(const TapeSymbol&, const TapeSymbol&) = default;

 private:
  constexpr explicit TapeSymbol(char c) : ch_(c) {}
  char ch_ = kLeftEndMarker;
};

enum class Direction : std::uint8_t { kLeft, kStay, kRight };

inline constexpr Direction kAllDirections[] = {Direction::kLeft, Direction::kStay,
                                               Direction::kRight};

constexpr int displacement(Direction d) {
  switch (d) {
    case Direction::kLeft:
      return -1;
    case Direction::kStay:
      return 0;
    case Direction::kRight:
      return 1;
  }
  return 0;
}

constexpr Direction reversed(Direction d) {
  switch (d) {
    case Direction::kLeft:
      return Direction::kRight;
    case Direction::kRight:
      return Direction::kLeft;
    default:
      return Direction::kStay;
  }
}

constexpr char direction_code(Direction d) {
  switch (d) {
    case Direction::kLeft:
      return 'L';
    case Direction::kStay:
      return 'D';
    case Direction::kRight:
      return 'R';
  }
  return '?';
}

enum class CounterSign : std::uint8_t { kZero = 0, kNonZero = 1 };

inline constexpr CounterSign kAllSigns[] = {CounterSign::kZero, CounterSign::kNonZero};

constexpr CounterSign sign(Counter counter) {
  return counter == 0 ? CounterSign::kZero : CounterSign::kNonZero;
}

constexpr int sign_bit(CounterSign s) { return static_cast<int>(s); }

struct Configuration {
  StateId state = 0;
  Counter counter = 0;

  friend constexpr auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// `# word $`. Characters of `word` are taken as input symbols; the caller
/// checks them against an automaton's alphabet.
inline std::vector<TapeSymbol> tape(std::string_view word) {
  std::vector<TapeSymbol> out;
  out.reserve(word.size() + 2);
  out.push_back(TapeSymbol::left_end());
  for (char c : word) out.push_back(TapeSymbol::input(c));
  out.push_back(TapeSymbol::right_end());
  return out;
}

/// Sparse superposition over configurations. Entries whose modulus falls
/// below the pruning threshold are dropped, so the zero amplitude is never
/// stored.
class StateVector {
 public:
  using Map = std::map<Configuration, Amplitude>;
  static constexpr double kDefaultPruneEps = 1e-15;

  StateVector() = default;
  explicit StateVector(double prune_eps) : prune_eps_(prune_eps) {}
  StateVector(std::initializer_list<std::pair<const Configuration, Amplitude>> init,
              double prune_eps = kDefaultPruneEps)
      : prune_eps_(prune_eps) {
    for (const auto& [c, a] : init) add(c, a);
    prune();
  }

  static StateVector basis(Configuration c) { return StateVector{{c, Amplitude{1.0, 0.0}}}; }

  /// Accumulates without pruning; call prune() after a batch of additions.
  void add(const Configuration& c, Amplitude a) { entries_[c] += a; }

  void prune() {
    std::erase_if(entries_, [this](const auto& kv) { return std::abs(kv.second) < prune_eps_; });
  }

  Amplitude at(const Configuration& c) const {
    auto it = entries_.find(c);
    return it == entries_.end() ? Amplitude{} : it->second;
  }

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double prune_eps() const { return prune_eps_; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  StateVector& operator*=(Amplitude s) {
    for (auto& [c, a] : entries_) a *= s;
    prune();
    return *this;
  }
  StateVector& operator+=(const StateVector& other) {
    for (const auto& [c, a] : other.entries_) entries_[c] += a;
    prune();
    return *this;
  }
  friend StateVector operator*(Amplitude s, StateVector v) { return v *= s; }
  friend StateVector operator+(StateVector v, const StateVector& w) { return v += w; }

 private:
  Map entries_;
  double prune_eps_ = kDefaultPruneEps;
};

inline double norm2(const StateVector& v) {
  double total = 0.0;
  for (const auto& [c, a] : v) total += std::norm(a);
  return total;
}

struct SplitVector {
  StateVector inside;
  StateVector outside;
};

/// Partitions the entries of `v` by `member`.
template <typename Pred>
  requires std::predicate<Pred&, const Configuration&>
SplitVector split(const StateVector& v, Pred member) {
  SplitVector out{StateVector(v.prune_eps()), StateVector(v.prune_eps())};
  for (const auto& [c, a] : v) {
    if (member(c)) {
      out.inside.add(c, a);
    } else {
      out.outside.add(c, a);
    }
  }
  return out;
}

}  // namespace qf1ca
