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

// Point-set files (".pts"):
//
//   # optional comment lines
//   n=3 q=2
//   1,0,0,0
//   0,1,1,0
//
// The header gives the projective dimension and the field order; each
// further line is one point as n+1 comma-separated element encodings (the
// integer whose base-p digits, low to high, are the coordinates in the
// canonical basis). Points need not be normalized. Blank lines and lines
// starting with '#' are ignored.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "movoid/errors.hpp"
#include "movoid/projgeom.hpp"

namespace movoid {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::uint64_t parse_uint(std::string_view text, int line, const char* what) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(std::string("expected a non-negative integer for ") + what + ", got '" + std::string(text) + "'",
                     line);
  }
  return value;
}

}  // namespace detail

// Reads a point set of `space`. The header must match the space's
// dimension and field order. Returns sorted point indices; a repeated
// point is an error.
inline std::vector<PointIndex> read_pts(std::istream& in, const ProjectiveSpace& space) {
  const Field& f = space.field();
  std::vector<PointIndex> out;
  std::unordered_set<PointIndex> seen;
  bool have_header = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = detail::trim(raw);
    if (text.empty() || text.front() == '#') continue;
    if (!have_header) {
      const auto sp = text.find_first_of(" \t");
      if (text.substr(0, 2) != "n=" || sp == std::string_view::npos) {
        throw ParseError("expected header 'n=<n> q=<q>', got '" + std::string(text) + "'", line);
      }
      const std::string_view qpart = detail::trim(text.substr(sp));
      if (qpart.substr(0, 2) != "q=") throw ParseError("expected 'q=<q>' in the header", line);
      const auto n = detail::parse_uint(text.substr(2, sp - 2), line, "n");
      const auto q = detail::parse_uint(qpart.substr(2), line, "q");
      if (n != static_cast<std::uint64_t>(space.dim()) || q != f.order()) {
        throw ParseError("header n=" + std::to_string(n) + " q=" + std::to_string(q) + " does not match PG(" +
                             std::to_string(space.dim()) + "," + std::to_string(f.order()) + ")",
                         line);
      }
      have_header = true;
      continue;
    }
    Vector v;
    std::string_view rest = text;
    while (true) {
      const auto comma = rest.find(',');
      const auto value = detail::parse_uint(rest.substr(0, comma), line, "a coordinate");
      if (value >= f.order()) {
        throw ParseError("coordinate " + std::to_string(value) + " is not an element encoding below " +
                             std::to_string(f.order()),
                         line);
      }
      v.push_back(f.element(value));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (v.size() != static_cast<std::size_t>(space.dim() + 1)) {
      throw ParseError("expected " + std::to_string(space.dim() + 1) + " coordinates, got " + std::to_string(v.size()),
                       line);
    }
    const auto p = space.index_of(v);
    if (!p) throw ParseError("the zero vector is not a point", line);
    if (!seen.insert(*p).second) throw ParseError("duplicate point", line);
    out.push_back(*p);
  }
  if (!have_header) throw ParseError("missing header 'n=<n> q=<q>'", 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Writes normalized points in the given order after optional '#' comments.
inline void write_pts(std::ostream& out, const ProjectiveSpace& space, std::span<const PointIndex> points,
                      const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "n=" << space.dim() << " q=" << space.field().order() << '\n';
  for (PointIndex p : points) {
    const auto c = space.coords(p);
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << space.field().encode(c[i]);
    out << '\n';
  }
}

}  // namespace movoid
