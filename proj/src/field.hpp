#pragma once

#include "common.hpp"

namespace presilt {

// Arithmetic in GF(p). Elements are canonical representatives in [0, p).
struct Fp {
  u32 p;

  explicit Fp(u32 prime) : p(prime) {
    if (!is_prime(prime)) fail(ErrCode::BadArgument, "modulus " + std::to_string(prime) + " is not prime");
  }

  u32 reduce(i64 v) const {
    i64 r = v % static_cast<i64>(p);
    if (r < 0) r += p;
    return static_cast<u32>(r);
  }
  u32 add(u32 a, u32 b) const {
    u64 s = static_cast<u64>(a) + b;
    return s >= p ? static_cast<u32>(s - p) : static_cast<u32>(s);
  }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p - a; }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>(static_cast<u64>(a) * b % p); }
  u32 pow(u32 a, u64 e) const {
    u64 r = 1, base = a % p;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<u32>(r);
  }
  u32 inv(u32 a) const {
    if (a == 0) fail(ErrCode::Internal, "inverse of zero");
    return pow(a, p - 2);
  }

  static bool is_prime(u32 n) {
    if (n < 2) return false;
    for (u32 q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
      if (n % q == 0) return n == q;
    }
    // Deterministic Miller-Rabin for 32-bit inputs.
    u32 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 7ull, 61ull}) {
      u64 x = 1, base = a % n, e = d;
      while (e) {
        if (e & 1) x = x * base % n;
        base = base * base % n;
        e >>= 1;
      }
      if (x == 1 || x == n - 1) continue;
      bool composite = true;
      for (int i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) {
          composite = false;
          break;
        }
      }
      if (composite) return false;
    }
    return true;
  }
};

}  // namespace presilt
