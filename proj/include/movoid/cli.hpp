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

// The `movoid` command line: subcommands info, bounds, tables,
// verify-ovoid, check-identities, search and sweep.
//
// Exit codes: 0 success; 1 usage, configuration or input errors; 2 a
// validation failure (the set is not an m-ovoid, an identity check fails,
// or two modules contradict each other).
//
// Every flag that takes a value can also be set through an environment
// variable MOVOID_<FLAG> (e.g. MOVOID_BUDGET); a flag on the command line
// wins. JSON output has a fixed key order; big integers and fractions are
// emitted as exact decimal strings.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "movoid/bounds.hpp"
#include "movoid/errors.hpp"
#include "movoid/ovoid.hpp"
#include "movoid/polar.hpp"
#include "movoid/pts.hpp"
#include "movoid/search.hpp"

namespace movoid::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;

// Caps and defaults shared by the subcommands.
struct Config {
  std::uint64_t max_points = std::uint64_t{1} << 22;  // points of PG(n, q)
  std::uint64_t max_generators = 2'000'000;
  std::uint64_t max_theta = 1'000'000;  // identity sums over PG(n, q)
  std::uint64_t info_generator_cap = 100'000;  // enumerate in `info` up to this many
};

struct SpaceArgs {
  std::string space;
  std::uint64_t q = 0;
  int r = 0;
};

inline void add_space_options(CLI::App* sub, SpaceArgs& args) {
  sub->add_option("--space", args.space, "polar space kind: Q- (elliptic), W (symplectic) or H (hermitian)")
      ->required()
      ->envname("MOVOID_SPACE");
  sub->add_option("--q", args.q, "field order (a square for H)")->required()->envname("MOVOID_Q");
  sub->add_option("--r", args.r, "rank")->required()->envname("MOVOID_R");
}

inline void add_config_options(CLI::App* sub, Config& config) {
  sub->add_option("--max-points", config.max_points, "cap on points of PG(n, q)")
      ->envname("MOVOID_MAX_POINTS")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-generators", config.max_generators, "cap on enumerated generators")
      ->envname("MOVOID_MAX_GENERATORS")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-theta", config.max_theta, "cap on PG(n, q) points for identity sums")
      ->envname("MOVOID_MAX_THETA")
      ->check(CLI::PositiveNumber);
}

inline std::shared_ptr<const PolarSpace> build_space(const SpaceArgs& args, const Config& config) {
  PolarLimits limits;
  limits.projective.max_points = config.max_points;
  limits.max_generators = config.max_generators;
  return build_polar_space(parse_kind(args.space), args.r, args.q, limits);
}

inline std::string point_string(const ProjectiveSpace& pg, PointIndex p) {
  std::string out;
  for (FieldElement x : pg.coords(p)) out += (out.empty() ? "" : ",") + std::to_string(pg.field().encode(x));
  return out;
}

// "1,0,0,0;0,1,0,0": rows of element encodings separated by ';'.
inline Subspace parse_subspace(const std::string& text, const ProjectiveSpace& pg) {
  std::vector<Vector> rows;
  std::stringstream rows_in(text);
  std::string row;
  while (std::getline(rows_in, row, ';')) {
    std::istringstream one("n=" + std::to_string(pg.dim()) + " q=" + std::to_string(pg.field().order()) + "\n" + row);
    const auto pts = read_pts(one, pg);
    if (pts.size() != 1) throw std::invalid_argument("--pi: each row must be one point, got '" + row + "'");
    rows.push_back(pg.vector(pts.front()));
  }
  if (rows.empty()) throw std::invalid_argument("--pi: no rows given");
  return Subspace::from_rows(pg.field(), pg.dim(), std::move(rows));
}

inline WeightFunction load_point_set(const std::string& path, const std::shared_ptr<const PolarSpace>& space) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return WeightFunction::from_points(space, read_pts(in, space->ambient()));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

inline Json pairs_json(const std::vector<std::pair<std::string, std::string>>& pairs) {
  Json out = Json::object();
  for (const auto& [k, v] : pairs) out[k] = v;
  return out;
}

inline Json report_json(const IdentityReport& r) {
  Json j;
  j["id"] = r.id;
  j["inputs"] = pairs_json(r.inputs);
  j["relation"] = r.relation == Relation::kEqual ? "=" : ">=";
  j["evaluated"] = r.evaluated;
  if (r.evaluated) {
    j["lhs"] = to_string(r.lhs);
    j["rhs"] = to_string(r.rhs);
    j["residual"] = to_string(r.residual);
  } else {
    j["lhs"] = nullptr;
    j["rhs"] = nullptr;
    j["residual"] = nullptr;
  }
  j["pass"] = r.pass;
  j["note"] = r.note;
  j["details"] = pairs_json(r.details);
  return j;
}

inline Json bound_json(const BoundEntry& e) {
  Json j;
  j["theorem"] = e.bound.theorem;
  j["applicable"] = e.bound.applicable;
  if (e.bound.applicable) {
    j["A"] = to_string(e.bound.a);
    j["R"] = to_string(e.bound.radicand);
    j["D"] = to_string(e.bound.d);
    j["value"] = e.bound.decimal(4);
    j["threshold"] = to_string(*e.threshold);
  } else {
    j["A"] = nullptr;
    j["R"] = nullptr;
    j["D"] = nullptr;
    j["value"] = nullptr;
    j["threshold"] = nullptr;
  }
  j["uses_main_inequality"] = e.bound.uses_main_inequality;
  j["reason"] = e.bound.reason;
  return j;
}

// ---- subcommands ----------------------------------------------------------

inline int cmd_info(const SpaceArgs& args, const Config& config, std::ostream& out) {
  const SpaceKind kind = parse_kind(args.space);
  const auto pp = as_prime_power(args.q);
  if (!pp) throw std::invalid_argument("field order " + std::to_string(args.q) + " is not a prime power");
  const BigInt formula_points = polar_point_count(kind, args.r, *pp);
  const BigInt formula_generators = generator_count(kind, args.r, *pp);
  Json j;
  j["space"] = space_name(kind, args.r, args.q);
  j["kind"] = kind_symbol(kind);
  j["r"] = args.r;
  j["q"] = args.q;
  j["e"] = e_string(kind);
  j["n"] = ambient_dimension(kind, args.r);
  j["points"] = to_string(formula_points);
  j["generators"] = to_string(formula_generators);
  j["points_per_generator"] = to_string(theta(args.r - 1, args.q));
  const auto space = build_space(args, config);
  j["points_enumerated"] = space->size();
  if (formula_generators <= config.info_generator_cap) {
    j["generators_enumerated"] = build_generator_incidence(*space).generators.size();
  } else {
    j["generators_enumerated"] = nullptr;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

inline int cmd_bounds(const SpaceArgs& args, const std::string& theorem, const std::string& format, std::ostream& out) {
  const SpaceKind kind = parse_kind(args.space);
  const BoundReport report = best_bound(kind, args.r, args.q);
  std::vector<const BoundEntry*> chosen;
  for (const auto& e : report.entries) {
    if (theorem == "all" || e.bound.theorem == theorem) chosen.push_back(&e);
  }
  if (chosen.empty()) throw std::invalid_argument("unknown theorem '" + theorem + "'");
  const std::string name = space_name(kind, args.r, args.q);
  if (format == "json") {
    Json j;
    j["space"] = name;
    j["kind"] = kind_symbol(kind);
    j["r"] = args.r;
    j["q"] = args.q;
    j["e"] = e_string(kind);
    j["bounds"] = Json::array();
    for (const auto* e : chosen) j["bounds"].push_back(bound_json(*e));
    j["best"] = {{"threshold", to_string(report.best)}, {"theorem", report.best_theorem}};
    j["best_without_main_inequality"] = {{"threshold", to_string(report.best_without_main_inequality)},
                                         {"theorem", report.best_without_main_inequality_theorem}};
    j["notes"] = report.notes;
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    out << "space,theorem,applicable,A,R,D,threshold\n";
    for (const auto* e : chosen) {
      out << name << ',' << e->bound.theorem << ',' << (e->bound.applicable ? "yes" : "no");
      if (e->bound.applicable) {
        out << ',' << to_string(e->bound.a) << ',' << to_string(e->bound.radicand) << ',' << to_string(e->bound.d)
            << ',' << to_string(*e->threshold) << '\n';
      } else {
        out << ",,,,\n";
      }
    }
  } else {
    out << name << "  e=" << e_string(kind) << '\n';
    out << std::left << std::setw(12) << "theorem" << std::setw(12) << "threshold" << std::setw(16) << "value"
        << "remark\n";
    for (const auto* e : chosen) {
      out << std::setw(12) << e->bound.theorem;
      if (e->bound.applicable) {
        out << std::setw(12) << to_string(*e->threshold) << std::setw(16) << e->bound.decimal(4) << e->bound.reason;
      } else {
        out << std::setw(12) << "-" << std::setw(16) << "-" << e->bound.reason;
      }
      out << '\n';
    }
    out << "best: m >= " << to_string(report.best) << " (" << report.best_theorem << ")\n";
    for (const auto& n : report.notes) out << "note: " << n << '\n';
  }
  return kExitOk;
}

inline int cmd_tables(const std::string& which, std::ostream& out) {
  std::vector<int> numbers;
  if (which == "all") {
    numbers = {3, 4, 5, 6};
  } else {
    try {
      numbers = {std::stoi(which)};
    } catch (const std::exception&) {
      throw std::invalid_argument("--which must be 3, 4, 5, 6 or all");
    }
  }
  for (std::size_t i = 0; i < numbers.size(); ++i) {
    if (i) out << '\n';
    out << table_csv(emit_table(numbers[i]));
  }
  return kExitOk;
}

inline int cmd_verify(const SpaceArgs& args, const Config& config, std::uint64_t m, const std::string& input,
                      std::ostream& out) {
  const auto space = build_space(args, config);
  const WeightFunction w = load_point_set(input, space);
  const OvoidCertificate cert = validate_m_ovoid(w, m);
  IdentityOptions opts;
  opts.max_theta = config.max_theta;
  const PerpProfile profile = perp_profile(w, m, opts);
  Json j;
  j["space"] = space->name();
  j["input"] = input;
  j["m"] = m;
  j["valid"] = cert.valid;
  j["size"] = w.total();
  j["generators_checked"] = cert.checked;
  j["min_meet"] = cert.min_weight;
  j["max_meet"] = cert.max_weight;
  j["witness"] = cert.witness ? Json(*cert.witness) : Json(nullptr);
  j["message"] = cert.message;
  Json p;
  p["skipped"] = profile.skipped;
  p["note"] = profile.note;
  if (!profile.skipped) {
    p["agrees"] = profile.ok() == cert.valid;
    p["expected_in"] = to_string(profile.expected_in);
    p["expected_out"] = to_string(profile.expected_out);
    p["observed_in"] = profile.observed_in;
    p["observed_out"] = profile.observed_out;
    p["points_checked"] = profile.points_checked;
    p["violations"] = profile.violation_count;
  }
  j["perp_profile"] = p;
  out << j.dump(2) << '\n';
  if (!profile.skipped && profile.ok() != cert.valid) {
    throw ConsistencyError("generator check and perp profile disagree on " + input);
  }
  return cert.valid ? kExitOk : kExitInvalid;
}

inline int cmd_check_identities(const SpaceArgs& args, const Config& config, std::uint64_t m, const std::string& input,
                                const std::string& identity, const std::optional<std::string>& pi_text,
                                std::ostream& out) {
  static const std::vector<std::string> kIds = {"le1", "counting", "point-sums", "aid1", "aid2", "eqnew"};
  if (identity != "all" && std::find(kIds.begin(), kIds.end(), identity) == kIds.end()) {
    throw std::invalid_argument("unknown identity '" + identity + "'");
  }
  auto wants = [&](const std::string& id) { return identity == "all" || identity == id; };
  const auto space = build_space(args, config);
  const PolarSpace& ps = *space;
  const ProjectiveSpace& pg = ps.ambient();
  const WeightFunction w = load_point_set(input, space);
  IdentityOptions opts;
  opts.max_theta = config.max_theta;

  std::vector<IdentityReport> reports;
  if (pi_text) {
    const Subspace pi = parse_subspace(*pi_text, pg);
    const bool isotropic = ps.is_totally_isotropic(pi);
    const bool rank_minus_two = pi.dim() == ps.rank() - 2;
    if (wants("le1")) reports.push_back(check_le1(w, m, pi));
    if (wants("counting") && (isotropic || identity == "counting")) {
      reports.push_back(check_counting_identity(w, m, pi, opts));
    }
    if (wants("point-sums") && (pi.dim() == 0 || identity == "point-sums")) {
      if (pi.dim() != 0) throw std::invalid_argument("point-sums needs --pi to be a point");
      for (auto& r : check_point_sums(w, m, pg.points_in(pi).front())) reports.push_back(std::move(r));
    }
    const bool aid_shape = isotropic && rank_minus_two;
    if (wants("aid1") && (aid_shape || identity == "aid1")) reports.push_back(check_aid1(w, m, pi, opts));
    if (wants("aid2") && (aid_shape || identity == "aid2")) {
      for (auto& r : check_aid2(w, m, pi)) reports.push_back(std::move(r));
    }
    if (wants("eqnew") && (aid_shape || identity == "eqnew")) reports.push_back(check_main_inequality(w, m, pi));
  } else {
    // Default subspaces: a point p0 of O (or the first polar point), a
    // generator through p0, and a rich (r-2)-space.
    const auto support = w.support();
    const PointIndex p0 = support.empty() ? ps.points().front() : support.front();
    const Subspace point = pg.point(p0);
    const Subspace generator = ps.extend_to_generator(point);
    if (wants("le1")) {
      reports.push_back(check_le1(w, m, point));
      reports.push_back(check_le1(w, m, generator));
    }
    if (wants("counting")) {
      reports.push_back(check_counting_identity(w, m, point, opts));
      reports.push_back(check_counting_identity(w, m, generator, opts));
    }
    if (wants("point-sums")) {
      for (auto& r : check_point_sums(w, m, p0)) reports.push_back(std::move(r));
    }
    if (ps.rank() >= 2 && m >= 1 && !support.empty() && (wants("aid1") || wants("aid2") || wants("eqnew"))) {
      const Subspace rich = find_rich_subspace(w, m);
      if (wants("aid1")) reports.push_back(check_aid1(w, m, rich, opts));
      if (wants("aid2")) {
        for (auto& r : check_aid2(w, m, rich)) reports.push_back(std::move(r));
      }
      if (wants("eqnew")) reports.push_back(check_main_inequality(w, m, rich));
    }
  }
  Json j = Json::array();
  bool failed = false;
  for (const auto& r : reports) {
    j.push_back(report_json(r));
    failed = failed || (r.evaluated && !r.pass);
  }
  out << j.dump(2) << '\n';
  return failed ? kExitInvalid : kExitOk;
}

inline Json outcome_json(const PolarSpace& ps, const SearchInstance& inst, const SearchOutcome& o) {
  Json j;
  j["space"] = ps.name();
  j["status"] = status_name(o.status);
  j["m"] = o.m;
  j["target_size"] = inst.target_size;
  j["solution_count"] = o.solutions.size();
  j["solutions"] = Json::array();
  for (const auto& s : o.solutions) {
    Json pts = Json::array();
    for (auto p : s) pts.push_back(point_string(ps.ambient(), p));
    j["solutions"].push_back(pts);
  }
  j["nodes"] = o.nodes;
  j["seconds"] = o.seconds;
  j["certificate"] = o.certificate;
  j["options"] = {{"max_solutions", inst.options.max_solutions}, {"symmetry", inst.options.symmetry},
                  {"budget", inst.options.budget},               {"seed", inst.options.seed},
                  {"workers", inst.options.workers}};
  return j;
}

inline int cmd_search(const SpaceArgs& args, const Config& config, std::uint64_t m, SearchOptions options,
                      const std::optional<std::string>& emit, std::ostream& out, std::ostream& err) {
  const auto space = build_space(args, config);
  options.progress = [&err](const std::string& line) { err << line << '\n'; };
  const SearchInstance inst = make_search_instance(space, m, options);
  const SearchOutcome outcome = search_m_ovoids(inst);
  out << outcome_json(*space, inst, outcome).dump(2) << '\n';
  if (emit && !outcome.solutions.empty()) {
    std::ofstream file(*emit);
    if (!file) throw std::invalid_argument("cannot write '" + *emit + "'");
    write_pts(file, space->ambient(), outcome.solutions.front(),
              {std::to_string(m) + "-ovoid of " + space->name() + ", " + std::to_string(outcome.solutions.front().size()) +
               " points", "certificate " + outcome.certificate});
  }
  return kExitOk;
}

inline int cmd_sweep(const SpaceArgs& args, const Config& config, std::uint64_t m_from, std::optional<std::uint64_t> m_to,
                     SearchOptions options, std::ostream& out, std::ostream& err) {
  const auto space = build_space(args, config);
  const BigInt best = best_bound(space->kind(), space->rank(), space->q()).best;
  const std::uint64_t last = m_to ? *m_to : static_cast<std::uint64_t>(best);
  if (m_from > last) throw std::invalid_argument("empty m range");
  std::vector<std::uint64_t> ms;
  for (std::uint64_t m = m_from; m <= last; ++m) ms.push_back(m);
  options.progress = [&err](const std::string& line) { err << line << '\n'; };
  const auto sweep = nonexistence_sweep(space, ms, options);
  Json j;
  j["space"] = space->name();
  j["best_bound"] = to_string(best);
  j["results"] = Json::array();
  for (const auto& e : sweep) {
    Json r;
    r["m"] = e.m;
    r["status"] = status_name(e.outcome.status);
    r["below_bound"] = BigInt(e.m) < e.bound;
    r["solution_count"] = e.outcome.solutions.size();
    r["nodes"] = e.outcome.nodes;
    r["seconds"] = e.outcome.seconds;
    r["certificate"] = e.outcome.certificate;
    j["results"].push_back(r);
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- entry point ----------------------------------------------------------

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polar spaces, m-ovoids and their lower bounds", "movoid"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  Config config;
  SpaceArgs space_args;
  std::uint64_t m = 0;
  std::string input;
  std::string theorem = "all";
  std::string format = "table";
  std::string which = "all";
  std::string identity = "all";
  std::optional<std::string> pi;
  std::optional<std::string> emit;
  bool no_symmetry = false;
  std::uint64_t m_from = 1;
  std::optional<std::uint64_t> m_to;
  SearchOptions search;
  search.checkpoint_every = 0;

  auto* info = app.add_subcommand("info", "point and generator counts of a polar space (JSON)");
  add_space_options(info, space_args);
  add_config_options(info, config);
  info->add_option("--info-generator-cap", config.info_generator_cap, "enumerate generators up to this count")
      ->envname("MOVOID_INFO_GENERATOR_CAP");

  auto* bounds = app.add_subcommand("bounds", "lower bounds on m for m-ovoids");
  add_space_options(bounds, space_args);
  bounds->add_option("--theorem", theorem, "bklp|small|bds-h4|main|q7|asymptotic|all")
      ->envname("MOVOID_THEOREM")
      ->check(CLI::IsMember({"bklp", "small", "bds-h4", "main", "q7", "asymptotic", "all"}));
  bounds->add_option("--format", format, "table|json|csv")
      ->envname("MOVOID_FORMAT")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  auto* tables = app.add_subcommand("tables", "threshold tables as CSV");
  tables->add_option("--which", which, "3|4|5|6|all")->envname("MOVOID_WHICH")->check(CLI::IsMember({"3", "4", "5", "6", "all"}));
  tables->add_option("--format", format, "csv")->envname("MOVOID_FORMAT")->check(CLI::IsMember({"csv", "table"}));

  auto* verify = app.add_subcommand("verify-ovoid", "check that a .pts point set is an m-ovoid");
  add_space_options(verify, space_args);
  add_config_options(verify, config);
  verify->add_option("--m", m, "m")->required()->envname("MOVOID_M");
  verify->add_option("--input", input, ".pts file")->required()->envname("MOVOID_INPUT");

  auto* identities = app.add_subcommand("check-identities", "evaluate the counting identities on a point set");
  add_space_options(identities, space_args);
  add_config_options(identities, config);
  identities->add_option("--m", m, "m")->required()->envname("MOVOID_M");
  identities->add_option("--ovoid,--input", input, ".pts file")->required()->envname("MOVOID_INPUT");
  identities->add_option("--identity", identity, "le1|counting|point-sums|aid1|aid2|eqnew|all")
      ->envname("MOVOID_IDENTITY");
  identities->add_option("--pi", pi, "subspace as rows of element encodings, e.g. 1,0,0,0;0,0,1,0")
      ->envname("MOVOID_PI");

  auto add_search_options = [&](CLI::App* sub) {
    add_space_options(sub, space_args);
    add_config_options(sub, config);
    sub->add_option("--max-solutions", search.max_solutions, "stop after this many solutions (0: all)")
        ->envname("MOVOID_MAX_SOLUTIONS");
    sub->add_flag("--no-symmetry", no_symmetry, "do not fix the first point inside O")->envname("MOVOID_NO_SYMMETRY");
    sub->add_option("--budget", search.budget, "node budget")->envname("MOVOID_BUDGET")->check(CLI::PositiveNumber);
    sub->add_option("--seed", search.seed, "permutes the value order; 0 keeps in-before-out")->envname("MOVOID_SEED");
    sub->add_option("--workers", search.workers, "worker threads")->envname("MOVOID_WORKERS")->check(CLI::PositiveNumber);
    sub->add_option("--checkpoint", search.checkpoint_every, "print a progress line to stderr every N nodes")
        ->envname("MOVOID_CHECKPOINT");
  };
  auto* search_cmd = app.add_subcommand("search", "backtracking search for m-ovoids");
  add_search_options(search_cmd);
  search_cmd->add_option("--m", m, "m")->required()->envname("MOVOID_M");
  search_cmd->add_option("--emit", emit, "write the first solution to this .pts file")->envname("MOVOID_EMIT");

  auto* sweep = app.add_subcommand("sweep", "search a range of m and cross-check against the best lower bound");
  add_search_options(sweep);
  sweep->add_option("--m-from", m_from, "first m")->envname("MOVOID_M_FROM");
  sweep->add_option("--m-to", m_to, "last m (default: the best lower bound)")->envname("MOVOID_M_TO");

  if (!argv.empty() && !argv.front().empty() && argv.front().front() != '-') {
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == argv.front();
    if (!known) {
      err << "movoid: unknown subcommand '" << argv.front() << "'\n" << app.help();
      return kExitUsage;
    }
  }
  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  search.symmetry = !no_symmetry;
  try {
    if (*info) return cmd_info(space_args, config, out);
    if (*bounds) return cmd_bounds(space_args, theorem, format, out);
    if (*tables) return cmd_tables(which, out);
    if (*verify) return cmd_verify(space_args, config, m, input, out);
    if (*identities) return cmd_check_identities(space_args, config, m, input, identity, pi, out);
    if (*search_cmd) return cmd_search(space_args, config, m, search, emit, out, err);
    if (*sweep) return cmd_sweep(space_args, config, m_from, m_to, search, out, err);
  } catch (const ConsistencyError& e) {
    err << "movoid: consistency error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ParseError& e) {
    err << "movoid: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapExceeded& e) {
    err << "movoid: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "movoid: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace movoid::cli
