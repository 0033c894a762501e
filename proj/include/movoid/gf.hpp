// Copyright 2026 The movoid Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Finite fields GF(p^k) with full log/antilog (Zech) tables.
//
// An element is encoded as an integer n in [0, q) whose base-p digits
// (d_0, d_1, ..., d_{k-1}), lowest first, are its coordinates in the power
// basis 1, x, ..., x^{k-1} of GF(p)[x]/(f). The modulus f is the Conway
// polynomial for q <= 2^16 and the smallest primitive polynomial otherwise,
// so encodings are reproducible across runs.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "movoid/errors.hpp"
#include "movoid/numeric.hpp"

namespace movoid {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// A prime power q = p^k; used wherever only the order matters (bounds).
struct PrimePower {
  std::uint64_t p = 2;
  std::uint32_t k = 1;

  BigInt order() const { return ipow(BigInt(p), k); }
  bool is_square() const { return k % 2 == 0; }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline std::optional<PrimePower> as_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto primes = prime_divisors(q);
  if (primes.size() != 1) return std::nullopt;
  PrimePower out{primes.front(), 0};
  while (q > 1) {
    q /= out.p;
    ++out.k;
  }
  return out;
}

struct FieldElement {
  std::uint32_t value = 0;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

namespace detail {

// Polynomials over GF(p), coefficients lowest degree first.
using Poly = std::vector<std::uint32_t>;

// a * b mod f, where f is monic of degree k and a, b have length k.
inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
  }
  for (std::size_t d = 2 * k; d-- > k;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    // x^d = x^{d-k} * x^k and x^k = -(f_0 + ... + f_{k-1} x^{k-1}).
    for (std::size_t i = 0; i < k; ++i) {
      prod[d - k + i] = (prod[d - k + i] + (p - c) * f[i]) % p;
    }
    prod[d] = 0;
  }
  return Poly(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(k));
}

inline Poly x_mod(const Poly& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  Poly x(k, 0);
  if (k == 1) {
    x[0] = static_cast<std::uint32_t>((p - f[0]) % p);
  } else {
    x[1] = 1;
  }
  return x;
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result(f.size() - 1, 0);
  result[0] = 1;
  while (e != 0) {
    if ((e & 1u) != 0) result = mulmod(result, base, f, p);
    e >>= 1;
    if (e != 0) base = mulmod(base, base, f, p);
  }
  return result;
}

inline bool is_one(const Poly& a) {
  if (a[0] != 1) return false;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

// True iff x has multiplicative order p^k - 1 modulo f. A ring of size p^k
// that is not a field has fewer than p^k - 1 units, so this also certifies
// irreducibility.
inline bool is_primitive(const Poly& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  if (f[0] == 0) return false;
  const std::uint64_t group = checked_ipow(p, k) - 1;
  const Poly x = x_mod(f, p);
  if (!is_one(powmod(x, group, f, p))) return false;
  for (std::uint64_t l : prime_divisors(group)) {
    if (is_one(powmod(x, group / l, f, p))) return false;
  }
  return true;
}

// Evaluates c(u) in GF(p)[x]/(f) by Horner's rule.
inline Poly evaluate(const Poly& c, const Poly& u, const Poly& f, std::uint64_t p) {
  Poly acc(f.size() - 1, 0);
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = mulmod(acc, u, f, p);
    acc[0] = static_cast<std::uint32_t>((acc[0] + c[i]) % p);
  }
  return acc;
}

// Monic degree-k candidate number t in Conway order: t's base-p digits are
// (a_0, ..., a_{k-1}) with a_{k-1} most significant, and the polynomial is
// x^k + sum_i (-1)^{k-i} a_i x^i.
inline Poly conway_candidate(std::uint64_t t, std::uint64_t p, std::uint32_t k) {
  Poly f(k + 1, 0);
  f[k] = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto a = static_cast<std::uint32_t>(t % p);
    t /= p;
    const bool negate = ((k - i) % 2) == 1;
    f[i] = negate ? static_cast<std::uint32_t>((p - a) % p) : a;
  }
  return f;
}

inline std::mutex& conway_cache_mutex() {
  static std::mutex mu;
  return mu;
}

inline std::map<std::pair<std::uint64_t, std::uint32_t>, Poly>& conway_cache() {
  static std::map<std::pair<std::uint64_t, std::uint32_t>, Poly> cache;
  return cache;
}

}  // namespace detail

// The Conway polynomial C_{p,k}: the first primitive polynomial in Conway
// order whose roots are compatible with C_{p,d} for every proper divisor d.
inline std::vector<std::uint32_t> conway_polynomial(std::uint64_t p, std::uint32_t k) {
  if (!is_prime(p) || k == 0) throw std::invalid_argument("conway_polynomial: bad (p, k)");
  {
    std::lock_guard<std::mutex> lock(detail::conway_cache_mutex());
    auto it = detail::conway_cache().find({p, k});
    if (it != detail::conway_cache().end()) return it->second;
  }
  std::vector<std::pair<std::uint32_t, detail::Poly>> sub;
  for (std::uint32_t d = 1; d < k; ++d) {
    if (k % d == 0) sub.emplace_back(d, conway_polynomial(p, d));
  }
  const std::uint64_t q = checked_ipow(p, k);
  detail::Poly found;
  for (std::uint64_t t = 0; t < q; ++t) {
    detail::Poly f = detail::conway_candidate(t, p, k);
    if (!detail::is_primitive(f, p)) continue;
    const detail::Poly x = detail::x_mod(f, p);
    bool compatible = true;
    for (const auto& [d, cd] : sub) {
      const std::uint64_t step = (q - 1) / (checked_ipow(p, d) - 1);
      const detail::Poly u = detail::powmod(x, step, f, p);
      const detail::Poly v = detail::evaluate(cd, u, f, p);
      for (std::uint32_t c : v) compatible = compatible && c == 0;
      if (!compatible) break;
    }
    if (compatible) {
      found = std::move(f);
      break;
    }
  }
  if (found.empty()) throw std::logic_error("conway_polynomial: no candidate found");
  std::lock_guard<std::mutex> lock(detail::conway_cache_mutex());
  detail::conway_cache().emplace(std::make_pair(p, k), found);
  return found;
}

// Smallest monic primitive polynomial of degree k, ordered by the integer
// sum_{i<k} c_i p^i of its non-leading coefficients.
inline std::vector<std::uint32_t> smallest_primitive_polynomial(std::uint64_t p, std::uint32_t k) {
  const std::uint64_t q = checked_ipow(p, k);
  for (std::uint64_t t = 1; t < q; ++t) {
    detail::Poly f(k + 1, 0);
    f[k] = 1;
    std::uint64_t s = t;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<std::uint32_t>(s % p);
      s /= p;
    }
    if (detail::is_primitive(f, p)) return f;
  }
  throw std::logic_error("smallest_primitive_polynomial: none found");
}

struct FieldOptions {
  std::uint64_t max_order = std::uint64_t{1} << 20;
  // Conway polynomials are computed up to this order; beyond it the smallest
  // primitive polynomial is used.
  std::uint64_t conway_limit = std::uint64_t{1} << 16;
  // Explicit modulus (monic, lowest coefficient first); must be primitive.
  std::optional<std::vector<std::uint32_t>> modulus;
};

class Field {
 public:
  Field(std::uint64_t p, std::uint32_t k, const FieldOptions& options = {}) : p_(p), k_(k) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (k == 0) throw std::invalid_argument("field extension degree must be at least 1");
    const BigInt q = ipow(BigInt(p), k);
    if (q > options.max_order) {
      throw CapExceeded("field order " + q.str() + " exceeds cap " + std::to_string(options.max_order));
    }
    q_ = static_cast<std::uint32_t>(q);
    if (options.modulus) {
      modulus_ = *options.modulus;
      if (modulus_.size() != k + 1 || modulus_.back() != 1) {
        throw std::invalid_argument("modulus must be monic of degree k");
      }
      for (auto c : modulus_) {
        if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
      }
      if (!detail::is_primitive(modulus_, p)) throw std::invalid_argument("modulus is not primitive");
    } else if (q_ <= options.conway_limit) {
      modulus_ = conway_polynomial(p, k);
    } else {
      modulus_ = smallest_primitive_polynomial(p, k);
    }
    build_tables();
  }

  std::uint64_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  PrimePower prime_power() const { return {p_, k_}; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool is_square_order() const { return k_ % 2 == 0; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  // The root of the modulus; it generates the multiplicative group.
  FieldElement generator() const { return {exp_[1 % (q_ - 1)]}; }

  FieldElement element(std::uint64_t n) const {
    if (n >= q_) {
      throw std::out_of_range("element encoding " + std::to_string(n) + " outside [0, " + std::to_string(q_) + ")");
    }
    return {static_cast<std::uint32_t>(n)};
  }
  std::uint32_t encode(FieldElement a) const { return a.value; }

  std::vector<std::uint32_t> digits(FieldElement a) const {
    std::vector<std::uint32_t> d(k_, 0);
    std::uint64_t v = a.value;
    for (std::uint32_t i = 0; i < k_; ++i) {
      d[i] = static_cast<std::uint32_t>(v % p_);
      v /= p_;
    }
    return d;
  }

  FieldElement from_digits(const std::vector<std::uint32_t>& d) const {
    if (d.size() != k_) throw std::invalid_argument("digit vector has wrong length");
    std::uint64_t v = 0;
    for (std::uint32_t i = k_; i-- > 0;) {
      if (d[i] >= p_) throw std::invalid_argument("digit out of range");
      v = v * p_ + d[i];
    }
    return {static_cast<std::uint32_t>(v)};
  }

  FieldElement add(FieldElement a, FieldElement b) const {
    if (a.value == 0) return b;
    if (b.value == 0) return a;
    const std::uint32_t la = log_[a.value];
    const std::uint32_t lb = log_[b.value];
    const std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
    const std::uint32_t z = zech_[d];
    if (z == kNoLog) return {0};
    return {exp_[la + z]};
  }

  FieldElement neg(FieldElement a) const {
    if (a.value == 0) return a;
    return {exp_[log_[a.value] + log_minus_one_]};
  }

  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.value == 0 || b.value == 0) return {0};
    return {exp_[log_[a.value] + log_[b.value]]};
  }

  FieldElement inv(FieldElement a) const {
    if (a.value == 0) throw std::domain_error("division by zero in GF(" + std::to_string(q_) + ")");
    const std::uint32_t la = log_[a.value];
    return {exp_[la == 0 ? 0 : (q_ - 1) - la]};
  }

  FieldElement div(FieldElement a, FieldElement b) const {
    if (b.value == 0) throw std::domain_error("division by zero in GF(" + std::to_string(q_) + ")");
    if (a.value == 0) return a;
    return {exp_[log_[a.value] + (q_ - 1) - log_[b.value]]};
  }

  FieldElement pow(FieldElement a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.value == 0) return a;
    return {exp_[(std::uint64_t{log_[a.value]} * (e % (q_ - 1))) % (q_ - 1)]};
  }

  // a -> a^{sqrt(q)}, the involutory automorphism of GF(q) for square q.
  FieldElement conjugate(FieldElement a) const {
    if (!is_square_order()) {
      throw std::domain_error("conjugation needs a square order; GF(" + std::to_string(q_) + ") is not");
    }
    if (a.value == 0) return a;
    return {exp_[(std::uint64_t{log_[a.value]} * sqrt_q_) % (q_ - 1)]};
  }

  // Discrete logarithm to the base generator(); a must be nonzero.
  std::uint32_t log(FieldElement a) const {
    if (a.value == 0) throw std::domain_error("log of zero");
    return log_[a.value];
  }
  FieldElement exp(std::uint64_t i) const { return {exp_[i % (q_ - 1)]}; }

 private:
  static constexpr std::uint32_t kNoLog = UINT32_MAX;

  void build_tables() {
    const std::uint32_t group = q_ - 1;
    exp_.assign(2 * static_cast<std::size_t>(group) + 1, 0);
    log_.assign(q_, kNoLog);
    detail::Poly cur(k_, 0);
    cur[0] = 1;
    auto encode_poly = [&](const detail::Poly& a) {
      std::uint64_t v = 0;
      for (std::uint32_t i = k_; i-- > 0;) v = v * p_ + a[i];
      return static_cast<std::uint32_t>(v);
    };
    const detail::Poly x = detail::x_mod(modulus_, p_);
    for (std::uint32_t i = 0; i < group; ++i) {
      const std::uint32_t v = encode_poly(cur);
      if (log_[v] != kNoLog) throw std::invalid_argument("modulus is not primitive");
      exp_[i] = v;
      log_[v] = i;
      cur = detail::mulmod(cur, x, modulus_, p_);
    }
    for (std::size_t i = group; i < exp_.size(); ++i) exp_[i] = exp_[i - group];
    // 1 + g^i only changes the constant digit of g^i.
    zech_.assign(group, kNoLog);
    for (std::uint32_t i = 0; i < group; ++i) {
      const std::uint32_t v = exp_[i];
      const std::uint32_t d0 = static_cast<std::uint32_t>(v % p_);
      const std::uint32_t w = v - d0 + static_cast<std::uint32_t>((d0 + 1) % p_);
      zech_[i] = w == 0 ? kNoLog : log_[w];
    }
    log_minus_one_ = (p_ == 2) ? 0 : group / 2;
    if (k_ % 2 == 0) sqrt_q_ = static_cast<std::uint32_t>(checked_ipow(p_, k_ / 2));
  }

  std::uint64_t p_;
  std::uint32_t k_;
  std::uint32_t q_ = 0;
  std::uint32_t sqrt_q_ = 0;
  std::uint32_t log_minus_one_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

inline std::shared_ptr<const Field> build_field(std::uint64_t p, std::uint32_t k, const FieldOptions& options = {}) {
  return std::make_shared<const Field>(p, k, options);
}

// Builds GF(q) from its order.
inline std::shared_ptr<const Field> build_field_of_order(std::uint64_t q, const FieldOptions& options = {}) {
  const auto pp = as_prime_power(q);
  if (!pp) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return build_field(pp->p, pp->k, options);
}

}  // namespace movoid
