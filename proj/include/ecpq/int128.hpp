#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ecpq {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline std::string to_string(i128 v)
{
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 mag = neg ? u128(0) - u128(v) : u128(v);
  std::string out;
  while (mag != 0) {
    out.push_back(char('0' + int(mag % 10)));
    mag /= 10;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

// Overflow-checked 128-bit arithmetic. Results that do not fit throw
// std::overflow_error instead of wrapping.
inline i128 checked_mul(i128 x, i128 y)
{
  i128 r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("128-bit multiplication overflow");
  return r;
}

inline i128 checked_add(i128 x, i128 y)
{
  i128 r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("128-bit addition overflow");
  return r;
}

inline i128 checked_sub(i128 x, i128 y)
{
  i128 r;
  if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("128-bit subtraction overflow");
  return r;
}

inline i128 checked_pow(i128 base, unsigned exp)
{
  i128 r = 1;
  while (exp-- > 0) r = checked_mul(r, base);
  return r;
}

/// Floor of the square root of n.
inline u128 isqrt(u128 n)
{
  if (n < 2) return n;
  const u64 hi = u64(n >> 64);
  const int bits = hi ? 128 - __builtin_clzll(hi) : 64 - __builtin_clzll(u64(n));
  // Newton iteration from 2^(ceil(bits/2)) >= sqrt(n), decreasing monotonically.
  u128 x = u128(1) << ((bits + 1) / 2);
  while (true) {
    const u128 y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

}  // namespace ecpq
