#pragma once

#include <gmpxx.h>
#include <string>

namespace nsplab {

// Arbitrary-precision natural number. Sequence codes and the separation
// construction routinely exceed 64 bits, so everything numeric goes
// through this type.
using Nat = mpz_class;

inline Nat nat(unsigned long v) { return Nat(v); }

// Cantor pairing: cantor(a,b) = (a+b)(a+b+1)/2 + b.
inline Nat cantor_pair(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

// Inverse of cantor_pair.
inline void cantor_unpair(const Nat& n, Nat& a, Nat& b) {
  // Largest s with s(s+1)/2 <= n.
  Nat s = (sqrt(8 * n + 1) - 1) / 2;
  while (s * (s + 1) / 2 > n) --s;
  while ((s + 1) * (s + 2) / 2 <= n) ++s;
  b = n - s * (s + 1) / 2;
  a = s - b;
}

// Odd part: the unique odd t with n = 2^e * t. odd_part(0) = 0 by convention
// (0 never arises where it matters; all path values are odd or doubled-odd).
inline Nat odd_part(Nat n) {
  if (n == 0) return n;
  while (mpz_even_p(n.get_mpz_t())) n /= 2;
  return n;
}

inline std::string nat_str(const Nat& n) { return n.get_str(); }

}  // namespace nsplab
