#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace rpdiv {

using BigInt = mpz_class;

// Number of bits in |x|; 0 for x = 0.
std::size_t bit_length(const BigInt& x);

BigInt pow(const BigInt& base, unsigned long exponent);
BigInt pow2(unsigned long exponent);

// ceil(lg n) for n >= 1, computed as the bit length of n - 1.
unsigned long ceil_lg(const BigInt& n);
unsigned long ceil_lg(unsigned long n);

// Floor k-th root: the unique v >= 0 with v^k <= a < (v+1)^k.
BigInt integer_kth_root(const BigInt& a, unsigned long k);

// Decimal, optionally signed, or 0x-prefixed hexadecimal.
BigInt parse_bigint(std::string_view text);

std::string to_string(const BigInt& x);

}  // namespace rpdiv
