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

// Points and subspaces of PG(n, q).
//
// A subspace is stored as the reduced row echelon form of a basis of its
// underlying vector space (pivots leftmost, leading coefficients 1), which is
// the unique canonical representative. Points are numbered 0..theta_n - 1 in
// a fixed order: a point's normalized vector (first nonzero coordinate 1) is
// read as the base-q integer sum_i x_i q^i, coordinate 0 least significant,
// and points are sorted by that integer.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "movoid/errors.hpp"
#include "movoid/gf.hpp"
#include "movoid/numeric.hpp"

namespace movoid {

using PointIndex = std::uint32_t;
using Vector = std::vector<FieldElement>;
// Packed set of point indices over the fixed enumeration order.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

// Number of points of PG(n, q); theta(-1) = 0.
inline BigInt theta(int n, const BigInt& q) {
  if (n < -1) throw std::invalid_argument("theta: n must be at least -1");
  BigInt sum = 0;
  BigInt term = 1;
  for (int i = 0; i <= n; ++i) {
    sum += term;
    term *= q;
  }
  return sum;
}

inline BigInt theta(int n, std::uint64_t q) { return theta(n, BigInt(q)); }

// In-place Gauss-Jordan elimination to reduced row echelon form; zero rows
// are dropped. Returns the pivot columns.
inline std::vector<int> row_reduce(const Field& f, std::vector<Vector>& rows, int ncols) {
  std::vector<int> pivots;
  std::size_t rank = 0;
  for (int col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].value == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const FieldElement scale = f.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = f.mul(x, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].value == 0) continue;
      const FieldElement factor = rows[i][col];
      for (int c = col; c < ncols; ++c) {
        rows[i][c] = f.sub(rows[i][c], f.mul(factor, rows[rank][c]));
      }
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

// Scales v so its first nonzero coordinate is 1. Returns false for the zero
// vector.
inline bool normalize(const Field& f, Vector& v) {
  auto first = std::find_if(v.begin(), v.end(), [](FieldElement x) { return x.value != 0; });
  if (first == v.end()) return false;
  if (first->value == 1) return true;
  const FieldElement s = f.inv(*first);
  for (auto it = first; it != v.end(); ++it) *it = f.mul(*it, s);
  return true;
}

class Subspace {
 public:
  Subspace() = default;

  static Subspace empty(int ambient_dim) {
    Subspace s;
    s.ambient_dim_ = ambient_dim;
    return s;
  }

  // Row space of `rows` (need not be independent or reduced).
  static Subspace from_rows(const Field& f, int ambient_dim, std::vector<Vector> rows) {
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != ambient_dim + 1) {
        throw std::invalid_argument("subspace row has wrong length");
      }
    }
    Subspace s;
    s.ambient_dim_ = ambient_dim;
    s.pivots_ = row_reduce(f, rows, ambient_dim + 1);
    s.rows_ = std::move(rows);
    return s;
  }

  static Subspace full(const Field& f, int ambient_dim) {
    std::vector<Vector> rows(static_cast<std::size_t>(ambient_dim + 1),
                             Vector(static_cast<std::size_t>(ambient_dim + 1), f.zero()));
    for (int i = 0; i <= ambient_dim; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = f.one();
    return from_rows(f, ambient_dim, std::move(rows));
  }

  int ambient_dim() const { return ambient_dim_; }
  // Projective dimension; -1 for the empty subspace.
  int dim() const { return static_cast<int>(rows_.size()) - 1; }
  bool is_empty() const { return rows_.empty(); }
  const std::vector<Vector>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // Basis rows as element encodings, rows separated by ';' and coordinates by
  // ','. Empty subspaces render as "".
  std::string key() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != 0) out << ';';
      for (std::size_t j = 0; j < rows_[i].size(); ++j) {
        if (j != 0) out << ',';
        out << rows_[i][j].value;
      }
    }
    return out.str();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.rows_ == b.rows_;
  }
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim_ != b.ambient_dim_) return a.ambient_dim_ < b.ambient_dim_;
    if (a.rows_.size() != b.rows_.size()) return a.rows_.size() < b.rows_.size();
    return a.rows_ < b.rows_;
  }

 private:
  int ambient_dim_ = -1;
  std::vector<Vector> rows_;
  std::vector<int> pivots_;
};

// Is v (a vector of the ambient space) in the row space of s?
inline bool contains(const Field& f, const Subspace& s, std::span<const FieldElement> v) {
  Vector rest(v.begin(), v.end());
  const auto& basis = s.basis();
  const auto& pivots = s.pivots();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const FieldElement c = rest[static_cast<std::size_t>(pivots[i])];
    if (c.value == 0) continue;
    for (std::size_t j = 0; j < rest.size(); ++j) rest[j] = f.sub(rest[j], f.mul(c, basis[i][j]));
  }
  return std::all_of(rest.begin(), rest.end(), [](FieldElement x) { return x.value == 0; });
}

inline bool contains(const Field& f, const Subspace& outer, const Subspace& inner) {
  for (const auto& row : inner.basis()) {
    if (!contains(f, outer, row)) return false;
  }
  return true;
}

inline Subspace span(const Field& f, std::span<const Subspace> parts) {
  if (parts.empty()) throw std::invalid_argument("span of no parts has no ambient dimension; use Subspace::empty");
  const int n = parts.front().ambient_dim();
  std::vector<Vector> rows;
  for (const auto& s : parts) {
    if (s.ambient_dim() != n) throw std::invalid_argument("span: ambient dimension mismatch");
    rows.insert(rows.end(), s.basis().begin(), s.basis().end());
  }
  return Subspace::from_rows(f, n, std::move(rows));
}

inline Subspace span(const Field& f, const Subspace& a, const Subspace& b) {
  const Subspace parts[] = {a, b};
  return span(f, parts);
}

// {x : sum_k row_k x_k = 0 for every row}, as a subspace of PG(n, q).
inline Subspace solution_space(const Field& f, int ambient_dim, std::vector<Vector> equations) {
  const int ncols = ambient_dim + 1;
  const std::vector<int> pivots = row_reduce(f, equations, ncols);
  std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vector> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector v(static_cast<std::size_t>(ncols), f.zero());
    v[static_cast<std::size_t>(free)] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[static_cast<std::size_t>(pivots[i])] = f.neg(equations[i][static_cast<std::size_t>(free)]);
    }
    basis.push_back(std::move(v));
  }
  return Subspace::from_rows(f, ambient_dim, std::move(basis));
}

inline Subspace intersect(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: ambient dimension mismatch");
  const int n = a.ambient_dim();
  // Annihilators with respect to the standard pairing.
  Subspace ann_a = solution_space(f, n, a.basis());
  Subspace ann_b = solution_space(f, n, b.basis());
  std::vector<Vector> eqs = ann_a.basis();
  eqs.insert(eqs.end(), ann_b.basis().begin(), ann_b.basis().end());
  return solution_space(f, n, std::move(eqs));
}

struct ProjectiveLimits {
  std::uint64_t max_points = std::uint64_t{1} << 22;
};

// PG(n, q) with its points enumerated in the fixed order.
class ProjectiveSpace {
 public:
  ProjectiveSpace(std::shared_ptr<const Field> field, int n, const ProjectiveLimits& limits = {})
      : field_(std::move(field)), n_(n) {
    if (n < 0) throw std::invalid_argument("projective dimension must be non-negative");
    const BigInt count = theta(n, field_->order());
    if (count > limits.max_points) {
      throw CapExceeded("PG(" + std::to_string(n) + "," + std::to_string(field_->order()) + ") has " + count.str() +
                        " points, above the cap " + std::to_string(limits.max_points));
    }
    const std::uint64_t q = field_->order();
    const std::size_t len = static_cast<std::size_t>(n + 1);
    size_ = static_cast<std::size_t>(count);
    total_codes_ = checked_ipow(q, len);

    std::vector<std::uint64_t> codes;
    codes.reserve(size_);
    for (std::size_t lead = 0; lead < len; ++lead) {
      const std::uint64_t base = checked_ipow(q, lead);
      const std::uint64_t tail = checked_ipow(q, len - lead - 1);
      for (std::uint64_t t = 0; t < tail; ++t) codes.push_back(base + t * base * q);
    }
    std::sort(codes.begin(), codes.end());

    coords_.resize(size_ * len);
    if (total_codes_ <= kDenseLimit) {
      dense_.assign(total_codes_, kNone);
    } else {
      sparse_.reserve(size_);
    }
    for (std::size_t i = 0; i < size_; ++i) {
      std::uint64_t c = codes[i];
      for (std::size_t j = 0; j < len; ++j) {
        coords_[i * len + j] = FieldElement{static_cast<std::uint32_t>(c % q)};
        c /= q;
      }
      if (!dense_.empty()) {
        dense_[codes[i]] = static_cast<PointIndex>(i);
      } else {
        sparse_.emplace(codes[i], static_cast<PointIndex>(i));
      }
    }
  }

  const Field& field() const { return *field_; }
  const std::shared_ptr<const Field>& shared_field() const { return field_; }
  int dim() const { return n_; }
  std::size_t size() const { return size_; }

  std::span<const FieldElement> coords(PointIndex p) const {
    const std::size_t len = static_cast<std::size_t>(n_ + 1);
    return {coords_.data() + static_cast<std::size_t>(p) * len, len};
  }
  Vector vector(PointIndex p) const {
    auto c = coords(p);
    return Vector(c.begin(), c.end());
  }

  // Index of the point spanned by v; nullopt for the zero vector.
  std::optional<PointIndex> index_of(std::span<const FieldElement> v) const {
    if (static_cast<int>(v.size()) != n_ + 1) throw std::invalid_argument("index_of: wrong vector length");
    Vector w(v.begin(), v.end());
    if (!normalize(*field_, w)) return std::nullopt;
    return lookup(w);
  }

  Subspace point(PointIndex p) const {
    return Subspace::from_rows(*field_, n_, {vector(p)});
  }

  Subspace full() const { return Subspace::full(*field_, n_); }

  // Indices of all points of s, sorted.
  std::vector<PointIndex> points_in(const Subspace& s) const {
    std::vector<PointIndex> out;
    for_each_point(s, [&](PointIndex p) { out.push_back(p); });
    std::sort(out.begin(), out.end());
    return out;
  }

  // Calls fn for every point of s, in an unspecified order.
  template <typename Fn>
  void for_each_point(const Subspace& s, Fn&& fn) const {
    if (s.ambient_dim() != n_) throw std::invalid_argument("points_in: ambient dimension mismatch");
    const auto& basis = s.basis();
    const std::size_t rows = basis.size();
    if (rows == 0) return;
    const std::uint32_t q = field_->order();
    const std::size_t len = static_cast<std::size_t>(n_ + 1);
    std::vector<std::uint32_t> coef(rows, 0);
    Vector v(len);
    // With basis rows in RREF, a combination whose first nonzero coefficient
    // is 1 is already normalized.
    for (std::size_t lead = 0; lead < rows; ++lead) {
      std::fill(coef.begin(), coef.end(), 0);
      coef[lead] = 1;
      while (true) {
        std::fill(v.begin(), v.end(), field_->zero());
        for (std::size_t i = lead; i < rows; ++i) {
          if (coef[i] == 0) continue;
          const FieldElement c{coef[i]};
          for (std::size_t j = 0; j < len; ++j) v[j] = field_->add(v[j], field_->mul(c, basis[i][j]));
        }
        fn(lookup(v));
        // Base-q counter over the coefficients after the leading one.
        bool wrapped = true;
        for (std::size_t pos = rows; pos > lead + 1;) {
          --pos;
          if (++coef[pos] < q) {
            wrapped = false;
            break;
          }
          coef[pos] = 0;
        }
        if (wrapped) break;
      }
    }
  }

 private:
  static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 25;
  static constexpr PointIndex kNone = UINT32_MAX;

  PointIndex lookup(const Vector& normalized) const {
    const std::uint64_t q = field_->order();
    std::uint64_t code = 0;
    for (std::size_t j = normalized.size(); j-- > 0;) code = code * q + normalized[j].value;
    if (!dense_.empty()) return dense_[code];
    return sparse_.at(code);
  }

  std::shared_ptr<const Field> field_;
  int n_;
  std::size_t size_ = 0;
  std::uint64_t total_codes_ = 0;
  std::vector<FieldElement> coords_;
  std::vector<PointIndex> dense_;
  std::unordered_map<std::uint64_t, PointIndex> sparse_;
};

// The points of PG(n, q) as normalized vectors, in index order.
inline std::vector<Vector> enumerate_points(int n, std::shared_ptr<const Field> field,
                                            const ProjectiveLimits& limits = {}) {
  ProjectiveSpace space(std::move(field), n, limits);
  std::vector<Vector> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) out.push_back(space.vector(static_cast<PointIndex>(i)));
  return out;
}

inline PointSet to_point_set(std::size_t universe, std::span<const PointIndex> points) {
  PointSet set(universe);
  for (PointIndex p : points) set.set(p);
  return set;
}

}  // namespace movoid
