#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantordyn/finite_system.hpp"
#include "cantordyn/morphisms.hpp"

namespace cantordyn::odometer {

/// An eventually periodic base sequence a_1, a_2, ... with every entry
/// >= 2: a finite preperiod followed by a nonempty period repeated forever.
/// The odometer adds one at digit 1 and carries to the right; the all-max
/// vector wraps to all zeros.
class Spec {
 public:
  Spec(std::vector<std::uint64_t> preperiod, std::vector<std::uint64_t> period);

  const std::vector<std::uint64_t>& preperiod() const { return preperiod_; }
  const std::vector<std::uint64_t>& period() const { return period_; }
  std::uint64_t entry(std::size_t i) const;  // a_i, 1-based
  std::uint64_t partial_product(std::size_t n) const;  // a_1 * ... * a_n

  /// "PRE:PERIOD" with comma-separated entries; PRE may be empty.  A bare
  /// comma-separated list is a pure period.  Examples: ":2", "6:5", "2,3".
  static Spec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Spec& a, const Spec& b) = default;

 private:
  std::vector<std::uint64_t> preperiod_;
  std::vector<std::uint64_t> period_;
};

/// One odometer step on a digit vector of any length n (digit i in
/// [0, a_{i+1})): add one at the first digit, carry rightward, wrap the
/// all-max vector to all zeros.
std::vector<std::uint64_t> step(const Spec& spec,
                                std::vector<std::uint64_t> digits);

inline constexpr std::uint64_t kDefaultTruncationCap = 1000000;

/// Level-n truncation: states are the digit vectors of length n (labelled
/// by comma-joined digits, ordered by orbit position from the zero vector),
/// dynamics is the odometer step.  Always a single cycle of length
/// a_1 * ... * a_n.
struct Truncation {
  std::size_t level;
  FiniteSystem system;
};

Truncation truncation(const Spec& spec, std::size_t n,
                      std::uint64_t max_states = kDefaultTruncationCap);

/// Drop-the-last-digit map from the level n+1 truncation onto the level n
/// truncation; surjective and equivariant.
EquivariantMap bonding(const Spec& spec, std::size_t n,
                       std::uint64_t max_states = kDefaultTruncationCap);

std::uint64_t index_of_digits(const Spec& spec,
                              const std::vector<std::uint64_t>& digits);
std::vector<std::uint64_t> digits_of_index(const Spec& spec, std::size_t n,
                                           std::uint64_t index);

/// A formal product of primes with exponents in {1, 2, ...} u {infinity}.
/// Two odometers are conjugate iff their invariants are equal.
class Supernatural {
 public:
  static constexpr std::uint64_t kInfinity =
      ~static_cast<std::uint64_t>(0);

  void add(std::uint64_t prime, std::uint64_t exponent);  // saturating
  void set_infinite(std::uint64_t prime);
  std::uint64_t exponent(std::uint64_t prime) const;  // 0 when absent

  /// True iff every prime power dividing k also divides this number.
  bool divisible_by(std::uint64_t k) const;

  const std::map<std::uint64_t, std::uint64_t>& exponents() const {
    return exponents_;
  }
  std::string to_string() const;  // e.g. "2^inf * 3^2 * 5"; "1" when empty

  friend bool operator==(const Supernatural& a, const Supernatural& b) = default;

 private:
  std::map<std::uint64_t, std::uint64_t> exponents_;
};

std::map<std::uint64_t, std::uint64_t> factorize(std::uint64_t n);

/// The invariant of the infinite product a_1 * a_2 * ...: a prime gets an
/// infinite exponent iff it divides a period entry, otherwise the total
/// multiplicity contributed by the preperiod.
Supernatural supernatural(const Spec& spec);

/// Conjugacy of the two odometers (equality of invariants; equivalently,
/// mutual divisibility of partial products).
bool conjugate(const Spec& a, const Spec& b);

/// Whether the odometer admits a partition into k nonempty clopen blocks
/// advanced cyclically by the dynamics; present value is the least level n
/// whose truncation carries such a partition (k divides a_1 * ... * a_n).
std::optional<std::size_t> admits_cyclic_partition(const Spec& spec,
                                                   std::uint64_t k);

/// Whether some clopen set is carried exactly onto its complement (the
/// k = 2 case of the cyclic partition).
bool swap_clopen_exists(const Spec& spec);

}  // namespace cantordyn::odometer
