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

// Exhaustive backtracking search for m-ovoids: point sets meeting every
// generator in exactly m points.
//
// Points are decided in a fixed order (decreasing number of generators,
// then index). Each generator keeps (in, undecided) counts; a branch dies
// when in > m or in + undecided < m, and a generator with in = m (or
// in + undecided = m) forces its undecided points out (or in). With
// symmetry breaking on, the first point is fixed inside O, which is sound
// because the isometry group is transitive on points.
//
// An EXHAUSTED_NONE outcome means the whole tree was traversed within the
// node budget.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "movoid/bounds.hpp"
#include "movoid/errors.hpp"
#include "movoid/ovoid.hpp"
#include "movoid/polar.hpp"

namespace movoid {

enum class SearchStatus { kSolutionsFound, kExhaustedNone, kBudgetExceeded };

inline std::string status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::kSolutionsFound:
      return "SOLUTIONS_FOUND";
    case SearchStatus::kExhaustedNone:
      return "EXHAUSTED_NONE";
    case SearchStatus::kBudgetExceeded:
      return "BUDGET_EXCEEDED";
  }
  return "UNKNOWN";
}

struct SearchOptions {
  std::uint64_t max_solutions = 1;  // 0: all solutions
  bool symmetry = true;
  std::uint64_t budget = 1'000'000'000;  // search nodes
  std::uint64_t seed = 0;                // 0: try "in" before "out" everywhere
  int workers = 1;
  std::uint64_t checkpoint_every = 0;  // nodes between progress lines; 0: none
  std::function<void(const std::string&)> progress;
};

struct SearchInstance {
  std::shared_ptr<const PolarSpace> space;
  std::uint64_t m = 0;
  std::uint64_t target_size = 0;  // m (q^{r+e-1} + 1)
  std::shared_ptr<const GeneratorIncidence> incidence;
  std::vector<std::uint32_t> order;  // local point indices in branching order
  SearchOptions options;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::kExhaustedNone;
  std::uint64_t m = 0;
  std::vector<std::vector<PointIndex>> solutions;  // ambient indices, sorted
  std::uint64_t nodes = 0;
  double seconds = 0;
  std::string certificate;  // FNV-1a over the instance and the outcome
};

inline SearchInstance make_search_instance(std::shared_ptr<const PolarSpace> space, std::uint64_t m,
                                           SearchOptions options = {},
                                           std::shared_ptr<const GeneratorIncidence> incidence = nullptr) {
  if (!space) throw std::invalid_argument("make_search_instance: null polar space");
  const PolarSpace& ps = *space;
  const BigInt generator_size = theta(ps.rank() - 1, ps.q());
  if (BigInt(m) > generator_size) {
    throw std::invalid_argument("infeasible target: m = " + std::to_string(m) + " exceeds the " +
                                to_string(generator_size) + " points of a generator of " + ps.name());
  }
  const BigInt target = BigInt(m) * (half_power_int(ps.prime_power(), 2 * ps.rank() + ps.twice_e() - 2) + 1);
  if (target > BigInt(ps.size())) {
    throw std::invalid_argument("infeasible target: " + to_string(target) + " points requested in " + ps.name());
  }
  if (options.workers < 1) throw std::invalid_argument("workers must be at least 1");
  SearchInstance inst;
  inst.space = std::move(space);
  inst.m = m;
  inst.target_size = static_cast<std::uint64_t>(target);
  inst.incidence = incidence ? std::move(incidence)
                             : std::make_shared<const GeneratorIncidence>(build_generator_incidence(*inst.space));
  for (const auto& pts : inst.incidence->points_of) {
    if (BigInt(pts.size()) != generator_size) throw ConsistencyError("generator with wrong number of points");
  }
  inst.order.resize(inst.space->size());
  for (std::uint32_t i = 0; i < inst.order.size(); ++i) inst.order[i] = i;
  const auto& gens_of = inst.incidence->generators_of;
  std::stable_sort(inst.order.begin(), inst.order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return gens_of[a].size() > gens_of[b].size(); });
  inst.options = std::move(options);
  return inst;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Fnv1a {
 public:
  void add(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (x >> (8 * i)) & 0xff;
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add(const std::string& s) {
    for (unsigned char c : s) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
    add(s.size());
  }
  std::string hex() const {
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << hash_;
    return out.str();
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

// Shared across the workers of one search.
struct SearchShared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> budget_hit{false};
  std::mutex progress_mutex;
};

class OvoidSolver {
 public:
  OvoidSolver(const SearchInstance& inst, SearchShared& shared)
      : inst_(inst),
        shared_(shared),
        state_(inst.space->size(), kUndecided),
        gen_in_(inst.incidence->points_of.size(), 0),
        gen_open_(inst.incidence->points_of.size(), 0),
        open_points_(inst.space->size()) {
    for (std::size_t g = 0; g < gen_open_.size(); ++g) {
      gen_open_[g] = static_cast<std::uint32_t>(inst.incidence->points_of[g].size());
    }
  }

  // Replays a sequence of branching decisions; false if they conflict.
  bool apply_prefix(const std::vector<std::uint8_t>& prefix) {
    for (std::uint8_t v : prefix) {
      const auto p = next_open();
      if (!p) return false;
      if (!assign(*p, v)) return false;
    }
    return true;
  }

  // The root decision: the first point is in O (symmetry) when m >= 1.
  bool apply_symmetry() {
    if (!inst_.options.symmetry || inst_.m == 0 || inst_.order.empty()) return true;
    return assign(inst_.order.front(), kIn);
  }

  // Collects all consistent decision prefixes of the given length.
  void collect_prefixes(std::size_t depth, std::vector<std::uint8_t>& prefix,
                        std::vector<std::vector<std::uint8_t>>& out) {
    const auto p = next_open();
    if (!p || prefix.size() == depth) {
      out.push_back(prefix);
      return;
    }
    for (std::uint8_t v : value_order(*p)) {
      const std::size_t mark = trail_.size();
      const std::size_t cursor = cursor_;
      count_node();
      prefix.push_back(v);
      if (assign(*p, v)) collect_prefixes(depth, prefix, out);
      prefix.pop_back();
      undo(mark);
      cursor_ = cursor;
    }
  }

  void search() {
    if (stopped()) return;
    const auto p = next_open();
    if (!p) {
      record_solution();
      return;
    }
    const std::size_t cursor = cursor_;
    for (std::uint8_t v : value_order(*p)) {
      if (stopped()) return;
      const std::size_t mark = trail_.size();
      if (!count_node()) return;
      if (assign(*p, v)) search();
      undo(mark);
      cursor_ = cursor;
    }
  }

  const std::vector<std::vector<std::uint32_t>>& solutions() const { return solutions_; }
  std::uint64_t local_nodes() const { return local_nodes_; }

 private:
  static constexpr std::uint8_t kOut = 0;
  static constexpr std::uint8_t kIn = 1;
  static constexpr std::uint8_t kUndecided = 2;

  bool stopped() const {
    const auto max = inst_.options.max_solutions;
    return shared_.budget_hit.load(std::memory_order_relaxed) || (max != 0 && solutions_.size() >= max);
  }

  bool count_node() {
    ++local_nodes_;
    const std::uint64_t n = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > inst_.options.budget) {
      shared_.budget_hit.store(true, std::memory_order_relaxed);
      return false;
    }
    const auto every = inst_.options.checkpoint_every;
    if (every != 0 && n % every == 0 && inst_.options.progress) {
      std::lock_guard<std::mutex> lock(shared_.progress_mutex);
      inst_.options.progress("checkpoint nodes=" + std::to_string(n) + " decided=" +
                             std::to_string(state_.size() - open_points_) + " solutions=" +
                             std::to_string(solutions_.size()));
    }
    return true;
  }

  std::array<std::uint8_t, 2> value_order(std::uint32_t p) const {
    const auto seed = inst_.options.seed;
    if (seed != 0 && (splitmix64(seed ^ (std::uint64_t{p} * 0x9e3779b97f4a7c15ULL)) & 1)) return {kOut, kIn};
    return {kIn, kOut};
  }

  std::optional<std::uint32_t> next_open() {
    while (cursor_ < inst_.order.size() && state_[inst_.order[cursor_]] != kUndecided) ++cursor_;
    if (cursor_ == inst_.order.size()) return std::nullopt;
    return inst_.order[cursor_];
  }

  // Sets p to v and propagates forced values. Returns false on conflict;
  // the trail records every change either way.
  bool assign(std::uint32_t p, std::uint8_t v) {
    std::vector<std::pair<std::uint32_t, std::uint8_t>> queue = {{p, v}};
    while (!queue.empty()) {
      const auto [x, value] = queue.back();
      queue.pop_back();
      if (state_[x] != kUndecided) {
        if (state_[x] != value) return false;
        continue;
      }
      state_[x] = value;
      trail_.push_back(x);
      --open_points_;
      if (value == kIn) ++total_in_;
      // Finish the bookkeeping for x before reporting a conflict, so undo()
      // reverses exactly what was done.
      bool conflict = total_in_ > inst_.target_size || total_in_ + open_points_ < inst_.target_size;
      for (std::uint32_t g : inst_.incidence->generators_of[x]) {
        --gen_open_[g];
        if (value == kIn) ++gen_in_[g];
        const std::uint64_t in = gen_in_[g];
        const std::uint64_t open = gen_open_[g];
        if (in > inst_.m || in + open < inst_.m) conflict = true;
        if (conflict || open == 0) continue;
        if (in == inst_.m || in + open == inst_.m) {
          const std::uint8_t forced = in == inst_.m ? kOut : kIn;
          for (std::uint32_t y : inst_.incidence->points_of[g]) {
            if (state_[y] == kUndecided) queue.emplace_back(y, forced);
          }
        }
      }
      if (conflict) return false;
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const std::uint32_t x = trail_.back();
      trail_.pop_back();
      const bool in = state_[x] == kIn;
      for (std::uint32_t g : inst_.incidence->generators_of[x]) {
        ++gen_open_[g];
        if (in) --gen_in_[g];
      }
      if (in) --total_in_;
      ++open_points_;
      state_[x] = kUndecided;
    }
  }

  void record_solution() {
    std::vector<std::uint32_t> sol;
    for (std::uint32_t i = 0; i < state_.size(); ++i) {
      if (state_[i] == kIn) sol.push_back(i);
    }
    solutions_.push_back(std::move(sol));
  }

  const SearchInstance& inst_;
  SearchShared& shared_;
  std::vector<std::uint8_t> state_;
  std::vector<std::uint32_t> gen_in_;
  std::vector<std::uint32_t> gen_open_;
  std::vector<std::uint32_t> trail_;
  std::size_t open_points_;
  std::uint64_t total_in_ = 0;
  std::size_t cursor_ = 0;
  std::uint64_t local_nodes_ = 0;
  std::vector<std::vector<std::uint32_t>> solutions_;
};

}  // namespace detail

inline SearchOutcome search_m_ovoids(const SearchInstance& inst) {
  const auto start = std::chrono::steady_clock::now();
  const PolarSpace& ps = *inst.space;
  detail::SearchShared shared;
  std::vector<std::vector<std::uint32_t>> found;

  if (inst.options.workers <= 1) {
    detail::OvoidSolver solver(inst, shared);
    if (solver.apply_symmetry()) solver.search();
    found = solver.solutions();
  } else {
    // Split at the first decisions below the root, deterministically; each
    // prefix is an independent subtree.
    std::vector<std::vector<std::uint8_t>> prefixes;
    {
      detail::OvoidSolver splitter(inst, shared);
      if (splitter.apply_symmetry()) {
        std::size_t depth = 0;
        while ((std::size_t{1} << depth) < static_cast<std::size_t>(inst.options.workers) * 8 && depth < 20) ++depth;
        std::vector<std::uint8_t> prefix;
        splitter.collect_prefixes(depth, prefix, prefixes);
      }
    }
    std::vector<std::vector<std::vector<std::uint32_t>>> per_prefix(prefixes.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next.fetch_add(1); i < prefixes.size(); i = next.fetch_add(1)) {
        detail::OvoidSolver solver(inst, shared);
        if (solver.apply_symmetry() && solver.apply_prefix(prefixes[i])) solver.search();
        per_prefix[i] = solver.solutions();
      }
    };
    std::vector<std::thread> threads;
    for (int w = 0; w < inst.options.workers; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
    for (auto& sols : per_prefix) {
      for (auto& s : sols) found.push_back(std::move(s));
    }
    if (inst.options.max_solutions != 0 && found.size() > inst.options.max_solutions) {
      found.resize(inst.options.max_solutions);
    }
  }

  SearchOutcome out;
  out.m = inst.m;
  out.nodes = std::min(shared.nodes.load(), inst.options.budget);
  for (const auto& sol : found) {
    std::vector<PointIndex> points;
    for (auto local : sol) points.push_back(ps.points()[local]);
    std::sort(points.begin(), points.end());
    const auto w = WeightFunction::from_points(inst.space, points);
    const auto cert = validate_m_ovoid(w, inst.m, inst.incidence.get());
    if (!cert.valid) throw ConsistencyError("search produced an invalid " + std::to_string(inst.m) + "-ovoid: " + cert.message);
    out.solutions.push_back(std::move(points));
  }
  if (!out.solutions.empty()) {
    out.status = SearchStatus::kSolutionsFound;
  } else if (shared.budget_hit.load()) {
    out.status = SearchStatus::kBudgetExceeded;
  } else {
    out.status = SearchStatus::kExhaustedNone;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  detail::Fnv1a h;
  h.add(ps.name());
  h.add(inst.m);
  h.add(inst.options.symmetry ? 1 : 0);
  h.add(inst.options.seed);
  h.add(inst.options.budget);
  h.add(inst.options.max_solutions);
  h.add(static_cast<std::uint64_t>(inst.options.workers));
  for (auto p : inst.order) h.add(p);
  h.add(status_name(out.status));
  h.add(out.nodes);
  for (const auto& s : out.solutions) {
    h.add(s.size());
    for (auto p : s) h.add(p);
  }
  out.certificate = h.hex();
  return out;
}

inline SearchOutcome search_m_ovoids(std::shared_ptr<const PolarSpace> space, std::uint64_t m,
                                     SearchOptions options = {}) {
  return search_m_ovoids(make_search_instance(std::move(space), m, std::move(options)));
}

struct SweepEntry {
  std::uint64_t m = 0;
  SearchOutcome outcome;
  BigInt bound;  // best_bound threshold for the space
  std::string bound_theorem;
};

// Searches each m in turn. A solution strictly below the best lower bound
// is a contradiction between the two modules and throws ConsistencyError
// with the data needed to reproduce it.
inline std::vector<SweepEntry> nonexistence_sweep(std::shared_ptr<const PolarSpace> space,
                                                  const std::vector<std::uint64_t>& m_values,
                                                  const SearchOptions& options = {}) {
  const PolarSpace& ps = *space;
  const BoundReport bounds = best_bound(ps.kind(), ps.rank(), ps.q());
  const auto incidence = std::make_shared<const GeneratorIncidence>(build_generator_incidence(ps));
  std::vector<SweepEntry> out;
  for (std::uint64_t m : m_values) {
    SweepEntry entry;
    entry.m = m;
    entry.bound = bounds.best;
    entry.bound_theorem = bounds.best_theorem;
    entry.outcome = search_m_ovoids(make_search_instance(space, m, options, incidence));
    if (m >= 1 && entry.outcome.status == SearchStatus::kSolutionsFound && BigInt(m) < bounds.best) {
      std::string points;
      for (auto p : entry.outcome.solutions.front()) points += (points.empty() ? "" : ",") + std::to_string(p);
      throw ConsistencyError("search found a " + std::to_string(m) + "-ovoid of " + ps.name() +
                             " below the lower bound " + to_string(bounds.best) + " (" + bounds.best_theorem +
                             "); options: symmetry=" + (options.symmetry ? "on" : "off") +
                             " seed=" + std::to_string(options.seed) + "; points: " + points);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace movoid
