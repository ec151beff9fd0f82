#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/integer/common_factor.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace bbx {

using Bigint = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Error taxonomy.  Monte-Carlo failures (retryable) are distinct from
// precondition violations so callers and the CLI can map them to different
// exit codes.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Precondition : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  BudgetExceeded(const std::string& stage_, uint64_t draws_)
      : Error("budget exceeded in " + stage_ + " after " +
              std::to_string(draws_) + " draws"),
        stage(stage_),
        draws(draws_) {}
  std::string stage;
  uint64_t draws;
};

struct IncompleteFactorization : Error {
  using Error::Error;
};
struct OddOrderError : Error {
  using Error::Error;
};
struct EvenCaseError : Error {
  using Error::Error;
};
struct OddCaseError : Error {
  using Error::Error;
};
struct TrivialProductError : Error {
  using Error::Error;
};
struct EvenProductError : Error {
  using Error::Error;
};
struct ClosureTooLarge : Error {
  using Error::Error;
};
struct SmallPrimeError : Precondition {
  using Precondition::Precondition;
};
struct MissingJ : Precondition {
  using Precondition::Precondition;
};
struct NotCentralError : Error {
  using Error::Error;
};
struct PropagationMismatch : Error {
  using Error::Error;
};
struct OppositeCorrectionFailed : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};
// A postcondition that theory guarantees failed at runtime; always a bug.
struct CheckFailed : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Small-integer number theory.
// ---------------------------------------------------------------------------

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n % d == 0) return n == d;
  }
  for (uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

struct FactoredInteger {
  Bigint value;
  std::vector<std::pair<Bigint, unsigned>> factors;  // (prime, multiplicity)

  Bigint product() const {
    Bigint acc = 1;
    for (const auto& [q, e] : factors)
      for (unsigned i = 0; i < e; ++i) acc *= q;
    return acc;
  }
};

// Complete factorization by trial division up to `trial_bound`.  A leftover
// cofactor <= trial_bound^2 must be prime; anything larger is reported as an
// incomplete factorization instead of being silently misclassified.
inline FactoredInteger factor_small(const Bigint& n, const Bigint& trial_bound) {
  if (n < 1) throw Precondition("factor_small: n must be >= 1");
  FactoredInteger out;
  out.value = n;
  Bigint rem = n;
  auto strip = [&](const Bigint& q) {
    unsigned e = 0;
    while (rem % q == 0) {
      rem /= q;
      ++e;
    }
    if (e) out.factors.emplace_back(q, e);
  };
  strip(2);
  for (Bigint d = 3; d <= trial_bound && d * d <= rem; d += 2) strip(d);
  if (rem > 1) {
    if (rem > trial_bound * trial_bound)
      throw IncompleteFactorization("factor_small: unfactored cofactor " +
                                    rem.str());
    out.factors.emplace_back(rem, 1);
  }
  return out;
}

// E = 2^a * m with m odd.
inline std::pair<unsigned, Bigint> two_adic_split(const Bigint& e) {
  if (e < 1) throw Precondition("two_adic_split: E must be >= 1");
  Bigint m = e;
  unsigned a = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++a;
  }
  return {a, m};
}

inline Bigint bigpow(const Bigint& base, unsigned e) {
  Bigint acc = 1;
  for (unsigned i = 0; i < e; ++i) acc *= base;
  return acc;
}

inline Bigint biglcm(const Bigint& a, const Bigint& b) {
  return boost::multiprecision::lcm(a, b);
}

// prod_{i=1..k-1} (p^i - 1); the exponent whose nonvanishing certifies that a
// primitive prime divisor of p^k - 1 divides the order of an element.
inline Bigint ppd_exponent(uint64_t p, unsigned k) {
  Bigint acc = 1;
  Bigint pi = 1;
  for (unsigned i = 1; i + 1 <= k; ++i) {
    pi *= p;
    acc *= pi - 1;
  }
  return acc;
}

}  // namespace bbx
