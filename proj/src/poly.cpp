#include "rpdiv/poly.hpp"

#include <algorithm>
#include <utility>

#include "rpdiv/errors.hpp"

namespace rpdiv {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::linear(const BigInt& a, const BigInt& b) { return IntPoly(std::vector<BigInt>{a, b}); }

void IntPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

const BigInt& IntPoly::leading() const {
  if (coeffs_.empty()) throw InputError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const BigInt& scalar) {
  if (sgn(scalar) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<BigInt> out(lhs.size() + rhs.size() - 1);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (sgn(lhs.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), lhs.coeffs_[i].get_mpz_t(), rhs.coeffs_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(out));
}

IntPoly operator-(IntPoly p) {
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

ModPoly::ModPoly(BigInt modulus, std::vector<BigInt> coeffs)
    : modulus_(std::move(modulus)), coeffs_(std::move(coeffs)) {
  if (modulus_ < 2) throw InputError("modulus must be at least 2");
  for (auto& c : coeffs_) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus_.get_mpz_t());
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

BigInt eval(const IntPoly& f, const BigInt& x) {
  BigInt acc = 0;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

BigInt eval(const ModPoly& f, const BigInt& x) {
  const auto& m = f.modulus().get_mpz_t();
  BigInt acc = 0;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc *= x;
    acc += *it;
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m);
  }
  return acc;
}

IntPoly derivative(const IntPoly& f) {
  if (f.degree() < 1) return {};
  std::vector<BigInt> out(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = f.coeffs()[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(out));
}

ModPoly derivative(const ModPoly& f) {
  std::vector<BigInt> out;
  if (f.degree() >= 1) {
    out.resize(f.coeffs().size() - 1);
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) out[i - 1] = f.coeffs()[i] * static_cast<unsigned long>(i);
  }
  return ModPoly(f.modulus(), std::move(out));
}

BigInt sup_norm(const IntPoly& f) {
  BigInt best = 0;
  for (const auto& c : f.coeffs()) {
    if (mpz_cmpabs(c.get_mpz_t(), best.get_mpz_t()) > 0) best = abs(c);
  }
  return best;
}

BigInt content(const IntPoly& f) {
  BigInt g = 0;
  for (const auto& c : f.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

PrimitiveDecomposition primitive_part(const IntPoly& f) {
  if (f.is_zero()) throw InputError("primitive_part of the zero polynomial");
  BigInt c = content(f);
  return {c, divexact(f, c)};
}

ModPoly reduce_mod(const IntPoly& f, const BigInt& modulus) {
  if (modulus < 2) throw InputError("reduce_mod: modulus must be at least 2");
  return ModPoly(modulus, f.coeffs());
}

IntPoly divexact(const IntPoly& f, const BigInt& divisor) {
  if (sgn(divisor) == 0) throw InvariantError("divexact by zero");
  std::vector<BigInt> out(f.coeffs());
  for (auto& c : out) {
    if (!mpz_divisible_p(c.get_mpz_t(), divisor.get_mpz_t())) {
      throw InvariantError("divexact: coefficient not divisible by " + to_string(divisor));
    }
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
  }
  return IntPoly(std::move(out));
}

IntPoly parse_coefficients(std::string_view text) {
  std::vector<BigInt> coeffs;
  std::size_t start = 0;
  std::size_t index = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) item.remove_suffix(1);
    if (item.empty()) {
      throw InputError("empty coefficient at index " + std::to_string(index) + " (offset " +
                       std::to_string(start) + ")");
    }
    try {
      coeffs.push_back(parse_bigint(item));
    } catch (const InputError& e) {
      throw InputError("coefficient " + std::to_string(index) + " (offset " + std::to_string(start) +
                       "): " + e.what());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
    ++index;
  }
  return IntPoly(std::move(coeffs));
}

std::string to_coefficient_string(const IntPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ',';
    out += to_string(f.coeffs()[i]);
  }
  return out;
}

}  // namespace rpdiv
