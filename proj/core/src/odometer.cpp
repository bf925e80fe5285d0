#include "cantordyn/odometer.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cantordyn/errors.hpp"

namespace cantordyn::odometer {

namespace {

void check_entries(const std::vector<std::uint64_t>& entries,
                   const char* what) {
  for (std::uint64_t a : entries)
    if (a < 2)
      throw std::invalid_argument(std::string(what) + ": entries must be >= 2");
}

std::vector<std::uint64_t> parse_entry_list(std::string_view text,
                                            bool allow_empty) {
  std::vector<std::uint64_t> entries;
  if (text.empty()) {
    if (allow_empty) return entries;
    throw std::invalid_argument("odometer spec: empty entry list");
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw std::invalid_argument("odometer spec: bad entry '" +
                                  std::string(item) + "'");
    entries.push_back(value);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return entries;
}

}  // namespace

Spec::Spec(std::vector<std::uint64_t> preperiod,
           std::vector<std::uint64_t> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty())
    throw std::invalid_argument("odometer spec: period must be nonempty");
  check_entries(preperiod_, "odometer spec preperiod");
  check_entries(period_, "odometer spec period");
}

std::uint64_t Spec::entry(std::size_t i) const {
  if (i == 0) throw std::invalid_argument("odometer spec: entries are 1-based");
  if (i <= preperiod_.size()) return preperiod_[i - 1];
  return period_[(i - preperiod_.size() - 1) % period_.size()];
}

std::uint64_t Spec::partial_product(std::size_t n) const {
  std::uint64_t product = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint64_t a = entry(i);
    if (product > std::numeric_limits<std::uint64_t>::max() / a)
      throw std::overflow_error("odometer partial product overflow");
    product *= a;
  }
  return product;
}

Spec Spec::parse(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    return Spec({}, parse_entry_list(text, false));
  return Spec(parse_entry_list(text.substr(0, colon), true),
              parse_entry_list(text.substr(colon + 1), false));
}

std::string Spec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < preperiod_.size(); ++i)
    out += (i ? "," : "") + std::to_string(preperiod_[i]);
  out += ':';
  for (std::size_t i = 0; i < period_.size(); ++i)
    out += (i ? "," : "") + std::to_string(period_[i]);
  return out;
}

std::vector<std::uint64_t> step(const Spec& spec,
                                std::vector<std::uint64_t> digits) {
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i] >= spec.entry(i + 1))
      throw std::invalid_argument("odometer step: digit out of range");
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] + 1 < spec.entry(i + 1)) {
      ++digits[i];
      return digits;
    }
    digits[i] = 0;  // carry; the all-max vector ends up all zeros
  }
  return digits;
}

std::uint64_t index_of_digits(const Spec& spec,
                              const std::vector<std::uint64_t>& digits) {
  std::uint64_t index = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= spec.entry(i + 1))
      throw std::invalid_argument("odometer: digit out of range");
    index = index * spec.entry(i + 1) + digits[i];
  }
  return index;
}

std::vector<std::uint64_t> digits_of_index(const Spec& spec, std::size_t n,
                                           std::uint64_t index) {
  std::vector<std::uint64_t> digits(n);
  for (std::size_t i = 0; i < n; ++i) {
    digits[i] = index % spec.entry(i + 1);
    index /= spec.entry(i + 1);
  }
  if (index != 0)
    throw std::invalid_argument("odometer: index out of range");
  return digits;
}

Truncation truncation(const Spec& spec, std::size_t n,
                      std::uint64_t max_states) {
  if (n == 0) throw std::invalid_argument("truncation: level must be >= 1");
  const std::uint64_t m = spec.partial_product(n);
  const std::uint64_t cap = std::min<std::uint64_t>(
      max_states, std::numeric_limits<State>::max());
  if (m > cap)
    throw resource_limit_error("truncation: " + std::to_string(m) +
                               " states exceeds cap " + std::to_string(cap));
  std::vector<State> successor(m);
  std::vector<std::string> labels(m);
  for (std::uint64_t index = 0; index < m; ++index) {
    std::vector<std::uint64_t> digits = digits_of_index(spec, n, index);
    std::string label;
    for (std::size_t i = 0; i < n; ++i)
      label += (i ? "," : "") + std::to_string(digits[i]);
    labels[index] = std::move(label);
    successor[index] =
        static_cast<State>(index_of_digits(spec, step(spec, digits)));
  }
  return Truncation{n, FiniteSystem::permutation(std::move(successor),
                                                 std::move(labels))};
}

EquivariantMap bonding(const Spec& spec, std::size_t n,
                       std::uint64_t max_states) {
  Truncation upper = truncation(spec, n + 1, max_states);
  Truncation lower = truncation(spec, n, max_states);
  std::vector<State> assignment(upper.system.size());
  for (std::size_t index = 0; index < assignment.size(); ++index) {
    std::vector<std::uint64_t> digits = digits_of_index(spec, n + 1, index);
    digits.resize(n);
    assignment[index] = static_cast<State>(index_of_digits(spec, digits));
  }
  return EquivariantMap(std::move(upper.system), std::move(lower.system),
                        std::move(assignment));
}

void Supernatural::add(std::uint64_t prime, std::uint64_t exponent) {
  if (exponent == 0) return;
  std::uint64_t& slot = exponents_[prime];
  slot = (slot == kInfinity || exponent == kInfinity ||
          slot > kInfinity - exponent)
             ? kInfinity
             : slot + exponent;
}

void Supernatural::set_infinite(std::uint64_t prime) {
  exponents_[prime] = kInfinity;
}

std::uint64_t Supernatural::exponent(std::uint64_t prime) const {
  const auto it = exponents_.find(prime);
  return it == exponents_.end() ? 0 : it->second;
}

bool Supernatural::divisible_by(std::uint64_t k) const {
  for (const auto& [prime, multiplicity] : factorize(k))
    if (exponent(prime) < multiplicity) return false;
  return true;
}

std::string Supernatural::to_string() const {
  if (exponents_.empty()) return "1";
  std::string out;
  for (const auto& [prime, exponent] : exponents_) {
    if (!out.empty()) out += " * ";
    out += std::to_string(prime);
    if (exponent == kInfinity)
      out += "^inf";
    else if (exponent > 1)
      out += "^" + std::to_string(exponent);
  }
  return out;
}

std::map<std::uint64_t, std::uint64_t> factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: zero");
  std::map<std::uint64_t, std::uint64_t> factors;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    while (n % p == 0) {
      ++factors[p];
      n /= p;
    }
  if (n > 1) ++factors[n];
  return factors;
}

Supernatural supernatural(const Spec& spec) {
  Supernatural result;
  for (std::uint64_t a : spec.preperiod())
    for (const auto& [prime, multiplicity] : factorize(a))
      result.add(prime, multiplicity);
  for (std::uint64_t a : spec.period())
    for (const auto& [prime, multiplicity] : factorize(a))
      result.set_infinite(prime);
  return result;
}

bool conjugate(const Spec& a, const Spec& b) {
  return supernatural(a) == supernatural(b);
}

std::optional<std::size_t> admits_cyclic_partition(const Spec& spec,
                                                   std::uint64_t k) {
  if (k == 0)
    throw std::invalid_argument("admits_cyclic_partition: k must be >= 1");
  if (!supernatural(spec).divisible_by(k)) return std::nullopt;
  // Peel k by successive gcds with a_1, a_2, ...; divisibility above
  // guarantees termination.
  std::uint64_t remaining = k;
  std::size_t level = 0;
  while (remaining > 1) {
    ++level;
    remaining /= std::gcd(remaining, spec.entry(level));
  }
  return std::max<std::size_t>(level, 1);
}

bool swap_clopen_exists(const Spec& spec) {
  return admits_cyclic_partition(spec, 2).has_value();
}

}  // namespace cantordyn::odometer
