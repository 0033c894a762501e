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

// Lower bounds on m for m-ovoids, each of the form m >= (A + sqrt(R)) / D
// with exact rational A, R, D, and their integer thresholds.
//
// Bound identifiers:
//   bklp        (-3 + sqrt(9 + 4 q^{r+e-1})) / (2(q-1))
//   small       (-3 + sqrt(9 + 4(q^{r+e-1} + q - 2))) / (2(q-1))
//   bds-h4      H(4, q), b = sqrt(q): (-3b-3 + sqrt(4b^5-4b^4+5b^2-2b+1)) / (2(b^2-b-2)); 2 when b = 2
//   main        q > 2, r >= 3, and r >= 4 or e in {1, 3/2} with (r,q,e) != (3,3,1)
//   asymptotic  the limiting form of main; reported, never used as a bound
//   q7          Q-(7, q), q > 2
// Hermitian spaces are parameterized by the field order q (a square), so
// q^{r+e-1} = b^{2r+1} with b = sqrt(q).
//
// main, asymptotic and q7 are derived from the quadratic inequality in m
// at a totally isotropic (r-2)-space. That derivation uses the all-points
// sum of mu(s^perp cap pi) where the counting identity needs the
// mu(s)-weighted sum (see ovoid.hpp, check_main_inequality); such bounds
// carry uses_main_inequality, and BoundReport lists the best bound with and
// without them.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "movoid/gf.hpp"
#include "movoid/numeric.hpp"
#include "movoid/polar.hpp"

namespace movoid {

// Smallest integer t >= 0 with t >= (A + sqrt(R)) / D, decided by exact
// integer comparisons: t qualifies iff D t - A >= 0 and (D t - A)^2 >= R.
inline BigInt ceil_radical(const Rational& a, const Rational& radicand, const Rational& d) {
  if (radicand < 0) throw std::invalid_argument("ceil_radical: negative radicand " + to_string(radicand));
  if (d <= 0) throw std::invalid_argument("ceil_radical: denominator must be positive, got " + to_string(d));
  auto ok = [&](const BigInt& t) {
    const Rational x = d * Rational(t) - a;
    return x >= 0 && x * x >= radicand;
  };
  // floor(sqrt(R)) = isqrt(floor(R)), so the root lies in [s, s + 1).
  const BigInt s = isqrt(floor(radicand));
  BigInt t = ceil((a + Rational(s)) / d);
  while (!ok(t)) ++t;
  while (ok(t - 1)) --t;
  return t < 0 ? BigInt(0) : t;
}

struct RadicalBound {
  std::string theorem;
  Rational a;
  Rational radicand;
  Rational d = 1;
  bool applicable = false;
  std::string reason;  // why the bound does not apply, or a remark
  bool uses_main_inequality = false;

  BigInt threshold() const { return ceil_radical(a, radicand, d); }

  // (A + sqrt(R)) / D rounded to the given number of decimals, for display.
  std::string decimal(int digits = 4) const {
    const BigInt scale = ipow(BigInt(10), static_cast<std::uint64_t>(digits + 1));
    const BigInt root = isqrt(floor(radicand * Rational(scale * scale)));
    const BigInt fine = floor((a * Rational(scale) + Rational(root)) / d);
    const BigInt scaled = floor(Rational(fine + 5, 10));
    const bool negative = scaled < 0;
    const BigInt mag = negative ? BigInt(-scaled) : scaled;
    std::string text = to_string(mag);
    if (digits > 0) {
      if (text.size() <= static_cast<std::size_t>(digits)) text.insert(0, digits + 1 - text.size(), '0');
      text.insert(text.size() - digits, ".");
    }
    return (negative ? "-" : "") + text;
  }
};

namespace detail {

inline PrimePower bound_field(SpaceKind kind, int r, std::uint64_t q) {
  const auto pp = as_prime_power(q);
  if (!pp) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  check_parameters(kind, r, *pp);
  return *pp;
}

inline RadicalBound inapplicable(std::string theorem, std::string reason) {
  RadicalBound b;
  b.theorem = std::move(theorem);
  b.applicable = false;
  b.reason = std::move(reason);
  return b;
}

}  // namespace detail

inline RadicalBound bound_bklp(SpaceKind kind, int r, std::uint64_t q) {
  const PrimePower pp = detail::bound_field(kind, r, q);
  RadicalBound b;
  b.theorem = "bklp";
  b.a = -3;
  b.radicand = 9 + 4 * half_power(pp, 2 * r + twice_e(kind) - 2);
  b.d = 2 * Rational(q - 1);
  b.applicable = r >= 2;
  if (!b.applicable) b.reason = "rank 1";
  return b;
}

inline RadicalBound bound_small_improv(SpaceKind kind, int r, std::uint64_t q) {
  const PrimePower pp = detail::bound_field(kind, r, q);
  RadicalBound b;
  b.theorem = "small";
  b.a = -3;
  b.radicand = 9 + 4 * (half_power(pp, 2 * r + twice_e(kind) - 2) + Rational(q) - 2);
  b.d = 2 * Rational(q - 1);
  b.applicable = r >= 2;
  if (!b.applicable) {
    b.reason = "rank 1";
  } else if (kind == SpaceKind::kSymplectic && r == 2) {
    b.reason = "stated for r > 2; at r = 2 the value is exactly 1";
  }
  return b;
}

// H(4, q) with q = b^2.
inline RadicalBound bound_bds_h4(std::uint64_t q) {
  const auto pp = as_prime_power(q);
  if (!pp || !pp->is_square()) {
    throw std::invalid_argument("bound_bds_h4: field order " + std::to_string(q) + " is not a square prime power");
  }
  const Rational bb = half_power(*pp, 1);
  RadicalBound b;
  b.theorem = "bds-h4";
  b.applicable = true;
  if (bb == 2) {
    b.a = 2;
    b.radicand = 0;
    b.d = 1;
    b.reason = "b = 2: m >= 2";
    return b;
  }
  b.a = -3 * bb - 3;
  b.radicand = 4 * bb * bb * bb * bb * bb - 4 * bb * bb * bb * bb + 5 * bb * bb - 2 * bb + 1;
  b.d = 2 * (bb * bb - bb - 2);
  return b;
}

inline std::optional<std::string> main_bound_obstruction(SpaceKind kind, int r, std::uint64_t q) {
  if (q <= 2) return "requires q > 2";
  if (r < 3) return "requires r >= 3";
  if (r >= 4) return std::nullopt;
  if (kind == SpaceKind::kElliptic) return "r = 3 requires e in {1, 3/2}";
  if (kind == SpaceKind::kSymplectic && q == 3) return "excluded case (r, q, e) = (3, 3, 1)";
  return std::nullopt;
}

inline RadicalBound bound_main(SpaceKind kind, int r, std::uint64_t q) {
  const PrimePower pp = detail::bound_field(kind, r, q);
  if (auto why = main_bound_obstruction(kind, r, q)) return detail::inapplicable("main", *why);
  const int te = twice_e(kind);
  const Rational qq(q);
  const Rational u = half_power(pp, -(2 * r - te - 2));  // 1 / q^{r-e-1}
  const Rational v = half_power(pp, -(2 * r - 4));       // 1 / q^{r-2}
  const Rational rr(r);
  RadicalBound b;
  b.theorem = "main";
  b.a = -rr * (1 + 2 * u + v);
  b.radicand = rr * rr * (1 + u) * (1 + u) +
               4 * (qq - 2) * (rr - 1) *
                   (half_power(pp, te + 2) * (half_power(pp, 2 * r - 4) - 1) / (qq - 1) + half_power(pp, te) + 1);
  b.d = 2 * (qq - 1);
  b.applicable = true;
  b.uses_main_inequality = true;
  return b;
}

inline RadicalBound bound_asymptotic(SpaceKind kind, int r, std::uint64_t q) {
  const PrimePower pp = detail::bound_field(kind, r, q);
  const Rational qq(q);
  const Rational rr(r);
  RadicalBound b;
  b.theorem = "asymptotic";
  b.a = -rr;
  b.radicand = rr * rr + 4 * (rr - 1) * (qq - 2) * half_power(pp, 2 * r + twice_e(kind) - 4);
  b.d = 2 * (qq - 1);
  b.uses_main_inequality = true;
  if (auto why = main_bound_obstruction(kind, r, q)) {
    b.applicable = false;
    b.reason = *why;
  } else {
    b.applicable = true;
    b.reason = "limiting form; not a bound";
  }
  return b;
}

// Q-(7, q).
inline RadicalBound bound_q7(std::uint64_t q) {
  detail::bound_field(SpaceKind::kElliptic, 3, q);
  if (q <= 2) throw std::invalid_argument("bound_q7 requires q > 2");
  const Rational qq(q);
  RadicalBound b;
  b.theorem = "q7";
  b.a = -3 * (3 + 1 / qq);
  b.radicand = 36 + 8 * (qq - Rational(7, 3)) * (qq * qq * qq + qq * qq + 1);
  b.d = 2 * (qq - 1);
  b.applicable = true;
  b.uses_main_inequality = true;
  return b;
}

struct BoundEntry {
  RadicalBound bound;
  std::optional<BigInt> threshold;  // set when applicable
};

struct BoundReport {
  SpaceKind kind = SpaceKind::kSymplectic;
  int r = 0;
  std::uint64_t q = 0;
  std::vector<BoundEntry> entries;
  BigInt best = 0;  // max threshold over applicable bounds except asymptotic
  std::string best_theorem;
  BigInt best_without_main_inequality = 0;
  std::string best_without_main_inequality_theorem;
  std::vector<std::string> notes;

  const BoundEntry* find(const std::string& theorem) const {
    for (const auto& e : entries) {
      if (e.bound.theorem == theorem) return &e;
    }
    return nullptr;
  }
};

inline std::vector<RadicalBound> all_bounds(SpaceKind kind, int r, std::uint64_t q) {
  std::vector<RadicalBound> out = {bound_bklp(kind, r, q), bound_small_improv(kind, r, q)};
  if (kind == SpaceKind::kHermitian && r == 2) {
    out.push_back(bound_bds_h4(q));
  } else {
    out.push_back(detail::inapplicable("bds-h4", "only for H(4, q)"));
  }
  out.push_back(bound_main(kind, r, q));
  if (kind == SpaceKind::kElliptic && r == 3 && q > 2) {
    out.push_back(bound_q7(q));
  } else {
    out.push_back(detail::inapplicable("q7", kind == SpaceKind::kElliptic && r == 3 ? "requires q > 2" : "only for Q-(7, q)"));
  }
  out.push_back(bound_asymptotic(kind, r, q));
  return out;
}

inline BoundReport best_bound(SpaceKind kind, int r, std::uint64_t q) {
  BoundReport report;
  report.kind = kind;
  report.r = r;
  report.q = q;
  for (auto& b : all_bounds(kind, r, q)) {
    BoundEntry entry{b, std::nullopt};
    if (b.applicable) entry.threshold = b.threshold();
    if (entry.threshold && b.theorem != "asymptotic") {
      // Ties go to the later, sharper family.
      if (report.best_theorem.empty() || *entry.threshold >= report.best) {
        report.best = *entry.threshold;
        report.best_theorem = b.theorem;
      }
      if (!b.uses_main_inequality && (report.best_without_main_inequality_theorem.empty() ||
                                      *entry.threshold >= report.best_without_main_inequality)) {
        report.best_without_main_inequality = *entry.threshold;
        report.best_without_main_inequality_theorem = b.theorem;
      }
    }
    report.entries.push_back(std::move(entry));
  }
  if (report.best >= 2) report.notes.push_back("1-ovoids excluded (m >= " + to_string(report.best) + ")");
  if (kind == SpaceKind::kSymplectic && r == 2) {
    report.notes.push_back(std::string("W(3,q) has ovoids if and only if q is even") +
                           (q % 2 == 0 ? "; q is even" : "; q is odd, so m >= 2"));
  }
  if (report.best != report.best_without_main_inequality) {
    report.notes.push_back("best bound " + to_string(report.best) + " (" + report.best_theorem +
                           ") rests on the main quadratic inequality; without it the best bound is " +
                           to_string(report.best_without_main_inequality) + " (" +
                           report.best_without_main_inequality_theorem + ")");
  }
  return report;
}

// Three significant digits, round half to even on the exact decimal
// expansion, as "d.dde<exp>". Integers below 1000 are printed as is.
inline std::string scientific3(const BigInt& value) {
  if (value < 0) return "-" + scientific3(BigInt(-value));
  const std::string digits = to_string(value);
  if (digits.size() <= 3) return digits;
  BigInt head(digits.substr(0, 3));
  const char next = digits[3];
  const bool rest_zero = digits.find_first_not_of('0', 4) == std::string::npos;
  if (next > '5' || (next == '5' && (!rest_zero || head % 2 == 1))) ++head;
  int exponent = static_cast<int>(digits.size()) - 1;
  std::string h = to_string(head);
  if (h.size() == 4) {  // 999 rounded up
    h = h.substr(0, 3);
    ++exponent;
  }
  return h.substr(0, 1) + "." + h.substr(1) + "e" + std::to_string(exponent);
}

// Table cells: exact up to six digits, three significant digits beyond.
inline std::string table_display(const BigInt& value) {
  const std::string digits = to_string(value);
  return digits.size() <= 6 ? digits : scientific3(value);
}

struct TableRow {
  std::string key;  // r or q as printed
  BigInt first;     // main (Tables 3-5) or q7 (Table 6)
  BigInt second;    // small
};

struct Table {
  int number = 0;
  std::string title;
  std::string key_name;
  std::string first_name;
  std::string second_name;
  std::vector<TableRow> rows;
};

// Tables 3-6: W(2r-1,3), Q-(2r+1,3), H(2r,9) for r <= 7 and r = 100, and
// Q-(7,q) for q in {3, 4, 5, 7, 8, 243}.
inline Table emit_table(int which) {
  Table t;
  t.number = which;
  auto rank_rows = [&](SpaceKind kind, std::uint64_t q, int first_r) {
    t.key_name = "r";
    t.first_name = "main";
    t.second_name = "small";
    for (int r : {first_r, first_r + 1, first_r + 2, first_r + 3, first_r + 4, 100}) {
      if (r > 7 && r != 100) continue;
      t.rows.push_back({std::to_string(r), bound_main(kind, r, q).threshold(), bound_small_improv(kind, r, q).threshold()});
    }
  };
  switch (which) {
    case 3:
      t.title = "W(2r-1,3)";
      rank_rows(SpaceKind::kSymplectic, 3, 4);
      break;
    case 4:
      t.title = "Q-(2r+1,3)";
      rank_rows(SpaceKind::kElliptic, 3, 4);
      break;
    case 5:
      t.title = "H(2r,9)";
      rank_rows(SpaceKind::kHermitian, 9, 3);
      break;
    case 6:
      t.title = "Q-(7,q)";
      t.key_name = "q";
      t.first_name = "q7";
      t.second_name = "small";
      for (std::uint64_t q : {3, 4, 5, 7, 8, 243}) {
        t.rows.push_back({std::to_string(q), bound_q7(q).threshold(), bound_small_improv(SpaceKind::kElliptic, 3, q).threshold()});
      }
      break;
    default:
      throw std::invalid_argument("no table " + std::to_string(which) + "; expected 3, 4, 5 or 6");
  }
  return t;
}

// CSV with a header line; each cell appears as displayed and exactly.
inline std::string table_csv(const Table& t) {
  std::ostringstream out;
  out << "table," << t.key_name << "," << t.first_name << "," << t.second_name << "," << t.first_name << "_exact,"
      << t.second_name << "_exact\n";
  for (const auto& row : t.rows) {
    out << t.number << "," << row.key << "," << table_display(row.first) << "," << table_display(row.second) << ","
        << to_string(row.first) << "," << to_string(row.second) << "\n";
  }
  return out.str();
}

}  // namespace movoid
