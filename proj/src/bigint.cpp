#include "rpdiv/bigint.hpp"

#include <cctype>

#include "rpdiv/errors.hpp"

namespace rpdiv {

std::size_t bit_length(const BigInt& x) {
  if (sgn(x) == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt pow2(unsigned long exponent) {
  BigInt out;
  mpz_setbit(out.get_mpz_t(), exponent);
  return out;
}

unsigned long ceil_lg(const BigInt& n) {
  if (n < 1) throw InputError("ceil_lg: argument must be positive");
  return static_cast<unsigned long>(bit_length(n - 1));
}

unsigned long ceil_lg(unsigned long n) { return ceil_lg(BigInt(n)); }

BigInt integer_kth_root(const BigInt& a, unsigned long k) {
  if (k == 0) throw InputError("integer_kth_root: k must be positive");
  if (sgn(a) < 0) throw InputError("integer_kth_root: negative radicand");
  BigInt out;
  mpz_root(out.get_mpz_t(), a.get_mpz_t(), k);
  return out;
}

BigInt parse_bigint(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  int base = 10;
  if (text.size() - pos > 2 && text[pos] == '0' && (text[pos + 1] == 'x' || text[pos + 1] == 'X')) {
    base = 16;
    pos += 2;
  }
  if (pos == text.size()) throw InputError("expected an integer, got '" + std::string(text) + "'");
  for (std::size_t i = pos; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    const bool ok = base == 10 ? std::isdigit(c) != 0 : std::isxdigit(c) != 0;
    if (!ok) {
      throw InputError("invalid digit '" + std::string(1, text[i]) + "' at position " +
                       std::to_string(i) + " in '" + std::string(text) + "'");
    }
  }
  BigInt out;
  out.set_str(std::string(text.substr(pos)), base);
  return negative ? BigInt(-out) : out;
}

std::string to_string(const BigInt& x) { return x.get_str(10); }

}  // namespace rpdiv
