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

// The finite classical polar spaces Q-(2r+1,q), W(2r-1,q) and H(2r,q), their
// polarity and their generators.
//
// Each kind is described by its rank r and type parameter e (2, 1 and 3/2
// respectively); e is stored doubled so that it stays an integer. Powers
// q^x with x a half-integer are evaluated exactly as p^{xk}, which is an
// integer power because the Hermitian case needs k even.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "movoid/errors.hpp"
#include "movoid/gf.hpp"
#include "movoid/numeric.hpp"
#include "movoid/projgeom.hpp"

namespace movoid {

enum class SpaceKind { kElliptic, kSymplectic, kHermitian };

inline int twice_e(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::kElliptic:
      return 4;
    case SpaceKind::kSymplectic:
      return 2;
    case SpaceKind::kHermitian:
      return 3;
  }
  throw std::invalid_argument("unknown space kind");
}

// e as a fraction string: "2", "1" or "3/2".
inline std::string e_string(SpaceKind kind) {
  const int te = twice_e(kind);
  return te % 2 == 0 ? std::to_string(te / 2) : std::to_string(te) + "/2";
}

inline std::string kind_symbol(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::kElliptic:
      return "Q-";
    case SpaceKind::kSymplectic:
      return "W";
    case SpaceKind::kHermitian:
      return "H";
  }
  throw std::invalid_argument("unknown space kind");
}

// Accepts the symbols "Q-", "W", "H" and the names "elliptic",
// "symplectic", "hermitian" in any letter case.
inline SpaceKind parse_kind(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "q-" || s == "q" || s == "elliptic") return SpaceKind::kElliptic;
  if (s == "w" || s == "symplectic") return SpaceKind::kSymplectic;
  if (s == "h" || s == "hermitian") return SpaceKind::kHermitian;
  throw std::invalid_argument("unknown polar space kind '" + std::string(text) + "' (expected Q-, W or H)");
}

// Projective dimension n = 2r + 2e - 3 of the ambient space.
inline int ambient_dimension(SpaceKind kind, int r) { return 2 * r + twice_e(kind) - 3; }

// Display name such as "Q-(5,3)", "W(3,2)" or "H(4,4)".
inline std::string space_name(SpaceKind kind, int r, std::uint64_t q) {
  return kind_symbol(kind) + "(" + std::to_string(ambient_dimension(kind, r)) + "," + std::to_string(q) + ")";
}

// q^{twice_x / 2} exactly, where q = p^k. Negative exponents give a proper
// fraction. Throws if the exponent p-power is not integral.
inline Rational half_power(const PrimePower& q, int twice_x) {
  const long long num = static_cast<long long>(twice_x) * q.k;
  if (num % 2 != 0) {
    throw std::domain_error("q^(" + std::to_string(twice_x) + "/2) is irrational for q = " + to_string(BigInt(q.order())));
  }
  const long long exp = num / 2;
  const BigInt value = ipow(BigInt(q.p), static_cast<std::uint64_t>(exp < 0 ? -exp : exp));
  return exp < 0 ? Rational(BigInt(1), value) : Rational(value);
}

// As half_power, for exponents known to be non-negative.
inline BigInt half_power_int(const PrimePower& q, int twice_x) {
  if (twice_x < 0) throw std::domain_error("half_power_int: negative exponent");
  return numerator(half_power(q, twice_x));
}

inline void check_parameters(SpaceKind kind, int r, const PrimePower& q) {
  if (r < 1) throw std::invalid_argument("rank r must be at least 1");
  if (kind == SpaceKind::kHermitian && !q.is_square()) {
    throw std::invalid_argument("Hermitian polar spaces need a square field order, got q = " + to_string(BigInt(q.order())));
  }
}

// theta_{r-1} (q^{r+e-1} + 1).
inline BigInt polar_point_count(SpaceKind kind, int r, const PrimePower& q) {
  check_parameters(kind, r, q);
  return theta(r - 1, BigInt(q.order())) * (half_power_int(q, 2 * (r - 1) + twice_e(kind)) + 1);
}

// prod_{i=1..r} (q^{i+e-1} + 1).
inline BigInt generator_count(SpaceKind kind, int r, const PrimePower& q) {
  check_parameters(kind, r, q);
  BigInt out = 1;
  for (int i = 1; i <= r; ++i) out *= half_power_int(q, 2 * (i - 1) + twice_e(kind)) + 1;
  return out;
}

struct PolarLimits {
  ProjectiveLimits projective;
  std::uint64_t max_generators = 2'000'000;
};

class PolarSpace {
 public:
  static constexpr std::uint32_t kNotPolar = UINT32_MAX;

  PolarSpace(SpaceKind kind, int r, std::shared_ptr<const Field> field, const PolarLimits& limits = {})
      : kind_(kind), r_(r), limits_(limits) {
    if (!field) throw std::invalid_argument("PolarSpace: null field");
    check_parameters(kind, r, field->prime_power());
    n_ = ambient_dimension(kind, r);
    const BigInt expected = polar_point_count(kind, r, field->prime_power());
    ambient_ = std::make_shared<const ProjectiveSpace>(std::move(field), n_, limits.projective);
    if (kind_ == SpaceKind::kElliptic) choose_anisotropic_pair();

    local_.assign(ambient_->size(), kNotPolar);
    membership_ = PointSet(ambient_->size());
    for (std::size_t i = 0; i < ambient_->size(); ++i) {
      const auto p = static_cast<PointIndex>(i);
      const auto x = ambient_->coords(p);
      bool singular = true;
      if (kind_ == SpaceKind::kElliptic) singular = quadratic_unchecked(x).value == 0;
      if (kind_ == SpaceKind::kHermitian) singular = bilinear_unchecked(x, x).value == 0;
      if (!singular) continue;
      local_[i] = static_cast<std::uint32_t>(points_.size());
      points_.push_back(p);
      membership_.set(i);
      point_functionals_.push_back(functional(x));
    }
    if (BigInt(points_.size()) != expected) {
      throw ConsistencyError(name() + ": enumerated " + std::to_string(points_.size()) + " points, expected " +
                             to_string(expected));
    }
  }

  SpaceKind kind() const { return kind_; }
  int rank() const { return r_; }
  int twice_e() const { return movoid::twice_e(kind_); }
  std::string e_string() const { return movoid::e_string(kind_); }
  int dim() const { return n_; }
  std::uint64_t q() const { return field().order(); }
  PrimePower prime_power() const { return field().prime_power(); }
  std::string name() const { return space_name(kind_, r_, ambient_ ? q() : 0); }
  const Field& field() const { return ambient_->field(); }
  const ProjectiveSpace& ambient() const { return *ambient_; }
  const std::shared_ptr<const ProjectiveSpace>& shared_ambient() const { return ambient_; }

  // Coefficients (a, b) of the anisotropic binary form t^2 + a t + b used by
  // the elliptic quadric; (0, 0) for the other kinds.
  std::pair<FieldElement, FieldElement> anisotropic_pair() const { return {a_, b_}; }

  // The polar points, sorted by ambient index.
  const std::vector<PointIndex>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const PointSet& membership() const { return membership_; }
  bool contains_point(PointIndex p) const { return membership_.test(p); }
  // Position of p in points(), or kNotPolar.
  std::uint32_t local_index(PointIndex p) const { return local_[p]; }
  // Coefficients of x -> form_value(x, points()[local]).
  const Vector& point_functional(std::uint32_t local) const { return point_functionals_[local]; }

  // The form on two vectors: the bilinear form associated with Q for
  // ELLIPTIC, the alternating form for SYMPLECTIC, and the Hermitian form,
  // conjugate-linear in v, for HERMITIAN.
  FieldElement form_value(std::span<const FieldElement> u, std::span<const FieldElement> v) const {
    check_length(u);
    check_length(v);
    return bilinear_unchecked(u, v);
  }

  // Q(u); only defined for ELLIPTIC.
  FieldElement quadratic(std::span<const FieldElement> u) const {
    if (kind_ != SpaceKind::kElliptic) {
      throw std::invalid_argument("quadratic form evaluation is only defined for elliptic quadrics, not " + name());
    }
    check_length(u);
    return quadratic_unchecked(u);
  }

  // The linear functional x -> form_value(x, v), as a coefficient vector.
  Vector functional(std::span<const FieldElement> v) const {
    const Field& f = field();
    Vector g(v.size());
    switch (kind_) {
      case SpaceKind::kSymplectic:
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) {
          g[i] = v[i + 1];
          g[i + 1] = f.neg(v[i]);
        }
        break;
      case SpaceKind::kHermitian:
        for (std::size_t i = 0; i < v.size(); ++i) g[i] = f.conjugate(v[i]);
        break;
      case SpaceKind::kElliptic: {
        const std::size_t t = v.size() - 2;
        for (std::size_t i = 0; i < t; i += 2) {
          g[i] = v[i + 1];
          g[i + 1] = v[i];
        }
        const FieldElement two = f.add(f.one(), f.one());
        g[t] = f.add(f.mul(two, v[t]), f.mul(a_, v[t + 1]));
        g[t + 1] = f.add(f.mul(a_, v[t]), f.mul(f.mul(two, b_), v[t + 1]));
        break;
      }
    }
    return g;
  }

  // The polarity: {x : form_value(x, v) = 0 for all v in s}.
  Subspace perp(const Subspace& s) const {
    if (s.ambient_dim() != n_) throw std::invalid_argument("perp: ambient dimension mismatch");
    std::vector<Vector> eqs;
    for (const auto& row : s.basis()) eqs.push_back(functional(row));
    return solution_space(field(), n_, std::move(eqs));
  }

  Subspace perp_of_point(PointIndex p) const { return perp(ambient_->point(p)); }

  // True iff the two ambient points are orthogonal.
  bool perpendicular(PointIndex a, PointIndex b) const {
    if (local_[b] != kNotPolar) return dot(ambient_->coords(a), point_functionals_[local_[b]]).value == 0;
    return bilinear_unchecked(ambient_->coords(a), ambient_->coords(b)).value == 0;
  }

  // Every point of s is a polar point and s lies in its own perp. A basis
  // check suffices: Q(sum c_i b_i) = sum c_i^2 Q(b_i) + sum_{i<j} c_i c_j
  // f(b_i, b_j), and likewise for the Hermitian form.
  bool is_totally_isotropic(const Subspace& s) const {
    if (s.ambient_dim() != n_) throw std::invalid_argument("is_totally_isotropic: ambient dimension mismatch");
    const auto& basis = s.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!is_singular_vector(basis[i])) return false;
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        if (bilinear_unchecked(basis[i], basis[j]).value != 0) return false;
      }
    }
    return true;
  }

  bool is_singular_vector(std::span<const FieldElement> v) const {
    switch (kind_) {
      case SpaceKind::kElliptic:
        return quadratic_unchecked(v).value == 0;
      case SpaceKind::kSymplectic:
        return true;
      case SpaceKind::kHermitian:
        return bilinear_unchecked(v, v).value == 0;
    }
    return false;
  }

  // Extends a totally isotropic s to a generator by repeatedly adding the
  // smallest polar point of perp(s) outside s. Every maximal totally
  // isotropic subspace has dimension r - 1, so this always ends at a
  // generator.
  Subspace extend_to_generator(Subspace s) const {
    if (!is_totally_isotropic(s)) throw std::invalid_argument("extend_to_generator: subspace is not totally isotropic");
    const Field& f = field();
    while (s.dim() < r_ - 1) {
      std::optional<PointIndex> next;
      for (PointIndex p : ambient_->points_in(perp(s))) {
        if (contains_point(p) && !contains(f, s, ambient_->coords(p))) {
          next = p;
          break;
        }
      }
      if (!next) throw ConsistencyError(name() + ": totally isotropic subspace cannot be extended");
      s = span(f, s, ambient_->point(*next));
    }
    return s;
  }

  // A totally isotropic subspace of dimension dim built from uniformly
  // chosen polar points of the running perp.
  template <typename Rng>
  Subspace random_isotropic_subspace(int dim, Rng& rng) const {
    if (dim < -1 || dim > r_ - 1) throw std::invalid_argument("random_isotropic_subspace: dimension out of range");
    const Field& f = field();
    Subspace s = Subspace::empty(n_);
    while (s.dim() < dim) {
      std::vector<PointIndex> options;
      for (PointIndex p : ambient_->points_in(perp(s))) {
        if (contains_point(p) && !contains(f, s, ambient_->coords(p))) options.push_back(p);
      }
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      s = span(f, s, ambient_->point(options[pick(rng)]));
    }
    return s;
  }

  BigInt point_count_formula() const { return polar_point_count(kind_, r_, prime_power()); }
  BigInt generator_count_formula() const { return generator_count(kind_, r_, prime_power()); }

  // Calls fn(generator) for every generator, each exactly once, in a
  // deterministic order. A generator G is reached only along its greedy
  // flag p_1 < p_2 < ... with p_{i+1} = min(G minus <p_1..p_i>). If
  // first_point is given, only generators whose smallest point is that
  // point are visited; these branches partition the generators.
  void for_each_generator(const std::function<void(const Subspace&)>& fn,
                          std::optional<PointIndex> first_point = std::nullopt) const {
    check_generator_cap();
    if (first_point && !contains_point(*first_point)) {
      throw std::invalid_argument("for_each_generator: first point is not a polar point");
    }
    std::vector<PointIndex> flag;
    extend(Subspace::empty(n_), flag, points_, first_point, fn);
  }

  std::vector<Subspace> enumerate_generators() const {
    std::vector<Subspace> out;
    for_each_generator([&](const Subspace& g) { out.push_back(g); });
    return out;
  }

 private:
  void check_length(std::span<const FieldElement> u) const {
    if (u.size() != static_cast<std::size_t>(n_ + 1)) {
      throw std::invalid_argument("vector length " + std::to_string(u.size()) + " does not match " + name());
    }
  }

  void check_generator_cap() const {
    const BigInt count = generator_count_formula();
    if (count > limits_.max_generators) {
      throw CapExceeded(name() + " has " + to_string(count) + " generators, above the cap " +
                        std::to_string(limits_.max_generators));
    }
  }

  // Scan (a, b) in lexicographic order for the first irreducible t^2+at+b.
  void choose_anisotropic_pair() {
    const Field& f = field();
    const std::uint32_t q = f.order();
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 1; b < q; ++b) {
        bool has_root = false;
        for (std::uint32_t t = 0; t < q && !has_root; ++t) {
          const FieldElement x{t};
          has_root = f.add(f.add(f.mul(x, x), f.mul(FieldElement{a}, x)), FieldElement{b}).value == 0;
        }
        if (!has_root) {
          a_ = FieldElement{a};
          b_ = FieldElement{b};
          return;
        }
      }
    }
    throw ConsistencyError("no irreducible quadratic over GF(" + std::to_string(q) + ")");
  }

  FieldElement quadratic_unchecked(std::span<const FieldElement> x) const {
    const Field& f = field();
    const std::size_t t = x.size() - 2;
    FieldElement acc = f.zero();
    for (std::size_t i = 0; i < t; i += 2) acc = f.add(acc, f.mul(x[i], x[i + 1]));
    acc = f.add(acc, f.mul(x[t], x[t]));
    acc = f.add(acc, f.mul(a_, f.mul(x[t], x[t + 1])));
    acc = f.add(acc, f.mul(b_, f.mul(x[t + 1], x[t + 1])));
    return acc;
  }

  FieldElement bilinear_unchecked(std::span<const FieldElement> u, std::span<const FieldElement> v) const {
    return dot(u, functional(v));
  }

  FieldElement dot(std::span<const FieldElement> u, std::span<const FieldElement> g) const {
    const Field& f = field();
    FieldElement acc = f.zero();
    for (std::size_t i = 0; i < u.size(); ++i) acc = f.add(acc, f.mul(u[i], g[i]));
    return acc;
  }

  // Depth-first extension of the totally isotropic flag. `candidates` are
  // the polar points greater than the last flag point that are perpendicular
  // to the current subspace s and not in it.
  void extend(const Subspace& s, std::vector<PointIndex>& flag, const std::vector<PointIndex>& candidates,
              std::optional<PointIndex> only, const std::function<void(const Subspace&)>& fn) const {
    if (s.dim() == r_ - 1) {
      emit_if_canonical(s, flag, fn);
      return;
    }
    const Field& f = field();
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const PointIndex p = candidates[ci];
      if (only && p != *only) continue;
      const Subspace next = span(f, s, ambient_->point(p));
      // p must be the smallest point of next outside s. Points of s are
      // never candidates, so `added` only needs next's points above p.
      bool minimal = true;
      std::vector<PointIndex> added;
      ambient_->for_each_point(next, [&](PointIndex x) {
        if (x > p) {
          added.push_back(x);
        } else if (x < p && minimal && !contains(f, s, ambient_->coords(x))) {
          minimal = false;
        }
      });
      if (!minimal) continue;
      std::sort(added.begin(), added.end());
      const Vector& gp = point_functionals_[local_[p]];
      std::vector<PointIndex> rest;
      for (std::size_t cj = ci + 1; cj < candidates.size(); ++cj) {
        const PointIndex c = candidates[cj];
        const auto x = ambient_->coords(c);
        if (dot(x, gp).value != 0) continue;
        if (std::binary_search(added.begin(), added.end(), c)) continue;
        rest.push_back(c);
      }
      flag.push_back(p);
      extend(next, flag, rest, std::nullopt, fn);
      flag.pop_back();
    }
  }

  void emit_if_canonical(const Subspace& g, const std::vector<PointIndex>& flag,
                         const std::function<void(const Subspace&)>& fn) const {
    const Field& f = field();
    const std::vector<PointIndex> pts = ambient_->points_in(g);
    Subspace prefix = Subspace::empty(n_);
    for (PointIndex p : flag) {
      PointIndex smallest = p;
      for (PointIndex x : pts) {
        if (x >= smallest) break;
        if (!contains(f, prefix, ambient_->coords(x))) smallest = x;
      }
      if (smallest != p) return;
      prefix = span(f, prefix, ambient_->point(p));
    }
    // Maximality: no polar point of g's perp lies outside g.
    ambient_->for_each_point(perp(g), [&](PointIndex x) {
      if (contains_point(x) && !std::binary_search(pts.begin(), pts.end(), x)) {
        throw ConsistencyError(name() + ": a totally isotropic subspace of dimension " + std::to_string(r_) +
                               " exists");
      }
    });
    fn(g);
  }

  SpaceKind kind_;
  int r_;
  int n_ = 0;
  PolarLimits limits_;
  std::shared_ptr<const ProjectiveSpace> ambient_;
  FieldElement a_{0};
  FieldElement b_{0};
  std::vector<PointIndex> points_;
  std::vector<std::uint32_t> local_;
  PointSet membership_;
  std::vector<Vector> point_functionals_;  // per local point
};

inline std::shared_ptr<const PolarSpace> build_polar_space(SpaceKind kind, int r, std::uint64_t q,
                                                           const PolarLimits& limits = {}) {
  const auto pp = as_prime_power(q);
  if (!pp) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  check_parameters(kind, r, *pp);
  return std::make_shared<const PolarSpace>(kind, r, build_field(pp->p, pp->k), limits);
}

// Point-generator incidence in terms of local point indices (positions in
// PolarSpace::points()).
struct GeneratorIncidence {
  std::vector<Subspace> generators;
  std::vector<std::vector<std::uint32_t>> points_of;      // per generator, sorted
  std::vector<std::vector<std::uint32_t>> generators_of;  // per local point, sorted
};

inline GeneratorIncidence build_generator_incidence(const PolarSpace& ps) {
  GeneratorIncidence inc;
  inc.generators_of.resize(ps.size());
  ps.for_each_generator([&](const Subspace& g) {
    const auto gi = static_cast<std::uint32_t>(inc.generators.size());
    std::vector<std::uint32_t> local;
    ps.ambient().for_each_point(g, [&](PointIndex p) { local.push_back(ps.local_index(p)); });
    std::sort(local.begin(), local.end());
    for (auto lp : local) inc.generators_of[lp].push_back(gi);
    inc.generators.push_back(g);
    inc.points_of.push_back(std::move(local));
  });
  return inc;
}

}  // namespace movoid
