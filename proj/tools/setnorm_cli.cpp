// Batch experiment runner: every subsystem of the library behind one binary
// with reproducible seeds and JSON or tabular reports.
//
// Exit codes: 0 = all asserted properties hold, 1 = a property violation was
// found (report emitted), 2 = bad usage / parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "setnorm/families.hpp"
#include "setnorm/mr.hpp"
#include "setnorm/namba.hpp"
#include "setnorm/positional.hpp"
#include "setnorm/rho.hpp"
#include "setnorm/rng.hpp"
#include "setnorm/tsirelson.hpp"

using namespace setnorm;
using nlohmann::ordered_json;

namespace {

ordered_json rat_json(const Rat& r) {
  ordered_json j;
  j["rational"] = rat_string(r);
  j["decimal"] = decimal_string(r);
  return j;
}

ordered_json finset_json(const FinSet& s) {
  ordered_json a = ordered_json::array();
  for (std::uint32_t x : s.elems()) a.push_back(x);
  return a;
}

std::vector<FinSet> load_finsets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  ordered_json j = ordered_json::parse(in);
  std::vector<FinSet> out;
  for (const auto& item : j) {
    std::vector<std::uint32_t> v;
    for (const auto& x : item) v.push_back(x.get<std::uint32_t>());
    std::sort(v.begin(), v.end());
    out.push_back(FinSet(v));
  }
  return out;
}

QVector load_qvector(const std::string& spec) {
  // @file.json with {"coord": "p/q", ...} or [[coord, "p/q"], ...]
  std::string path = spec;
  if (!path.empty() && path[0] == '@') path = path.substr(1);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  ordered_json j = ordered_json::parse(in);
  std::vector<std::pair<std::uint32_t, Rat>> entries;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      entries.push_back({static_cast<std::uint32_t>(std::stoul(it.key())),
                         parse_rat(it.value().is_string()
                                       ? it.value().get<std::string>()
                                       : it.value().dump())});
  } else {
    for (const auto& e : j)
      entries.push_back({e.at(0).get<std::uint32_t>(),
                         parse_rat(e.at(1).is_string()
                                       ? e.at(1).get<std::string>()
                                       : e.at(1).dump())});
  }
  return QVector(entries);
}

void emit(const ordered_json& report, bool as_table) {
  if (!as_table) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  // flat table rendering: one line per top-level array entry or key
  for (auto it = report.begin(); it != report.end(); ++it) {
    if (it.value().is_array()) {
      for (const auto& row : it.value()) std::cout << it.key() << "\t" << row.dump() << "\n";
    } else {
      std::cout << it.key() << "\t" << it.value().dump() << "\n";
    }
  }
}

struct Violations {
  ordered_json list = ordered_json::array();
  void add(const std::string& invariant, const ordered_json& detail) {
    ordered_json v;
    v["invariant"] = invariant;
    v["detail"] = detail;
    list.push_back(v);
  }
  bool any() const { return !list.empty(); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"setnorm: finite combinatorics of set families and conditional norms"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string format = "json";
  std::string tol_str = "1/1099511627776";  // 2^-40
  app.add_option("--seed", seed, "seed for all randomized runs");
  app.add_option("--format", format, "json|table");
  app.add_option("--tolerance", tol_str, "certified-enclosure tolerance (p/q)");

  // rho-synthesize
  auto* rho_cmd = app.add_subcommand("rho-synthesize", "synthesize a rho-function table");
  std::uint32_t rho_n = 5, rho_m = 8;
  rho_cmd->add_option("--points", rho_n, "domain size N");
  rho_cmd->add_option("--colors", rho_m, "maximal range size");

  // coloring-audit
  auto* audit_cmd = app.add_subcommand(
      "coloring-audit", "audit the positional coloring on synthesized stacks");
  std::uint32_t audit_n = 1, audit_ground = 9, audit_stacks = 3;
  audit_cmd->add_option("--depth", audit_n, "recursion depth n");
  audit_cmd->add_option("--ground", audit_ground, "ground segment size");
  audit_cmd->add_option("--stacks", audit_stacks, "number of synthesized stacks");

  // mr-demo
  auto* mr_cmd = app.add_subcommand(
      "mr-demo", "conditionality witness bounds for the weighted norm");
  std::uint32_t mr_k = 8;
  mr_cmd->add_option("--k", mr_k, "witness length (sequence of k blocks)");

  // tnorm
  auto* tnorm_cmd = app.add_subcommand("tnorm", "exact Tsirelson-type norm");
  std::string tnorm_theta = "1/2", tnorm_family = "schreier", tnorm_vec;
  std::uint32_t tnorm_ground = 16;
  tnorm_cmd->add_option("--theta", tnorm_theta, "weight in (0,1), e.g. 1/2");
  tnorm_cmd->add_option("--family", tnorm_family, "family descriptor");
  tnorm_cmd->add_option("--vector", tnorm_vec, "@file.json with the vector")->required();
  tnorm_cmd->add_option("--ground", tnorm_ground, "ground segment size");

  // bellenot
  auto* bell_cmd = app.add_subcommand("bellenot", "partial-sum norm profile over cubes");
  std::string bell_theta = "1/2";
  std::uint32_t bell_n = 4, bell_m = 16;
  bell_cmd->add_option("--theta", bell_theta, "weight in (0,1)");
  bell_cmd->add_option("--n", bell_n, "cube size");
  bell_cmd->add_option("--m", bell_m, "profile length");

  // cb-rank
  auto* rank_cmd = app.add_subcommand("cb-rank", "Cantor-Bendixson rank of a descriptor");
  std::string rank_desc;
  rank_cmd->add_option("descriptor", rank_desc, "family descriptor")->required();

  // namba
  auto* namba_cmd = app.add_subcommand("namba", "solve the finite alternating game");
  std::string namba_family = "schreier";
  std::uint32_t namba_arena = 20, namba_rounds = 3, namba_alpha_max = 8;
  namba_cmd->add_option("--family", namba_family, "family descriptor");
  namba_cmd->add_option("--arena", namba_arena, "arena size N");
  namba_cmd->add_option("--rounds", namba_rounds, "rounds n");
  namba_cmd->add_option("--alpha-max", namba_alpha_max, "sweep bound for alpha");

  // projection-check
  auto* proj_cmd = app.add_subcommand(
      "projection-check", "norm equality under the least-upper projection");
  std::string proj_theta = "1/2", proj_family = "schreier";
  std::uint32_t proj_ground = 12, proj_samples = 20;
  proj_cmd->add_option("--theta", proj_theta, "weight in (0,1)");
  proj_cmd->add_option("--family", proj_family, "family descriptor");
  proj_cmd->add_option("--ground", proj_ground, "ground segment size");
  proj_cmd->add_option("--samples", proj_samples, "random triples to test");

  // ptak
  auto* ptak_cmd = app.add_subcommand(
      "ptak", "near-scalar functional against a family trace (exact LP)");
  std::string ptak_family = "schreier";
  std::string ptak_window = "[1,2,3,4,5,6,7,8]";
  ptak_cmd->add_option("--family", ptak_family, "family descriptor");
  ptak_cmd->add_option("--window", ptak_window, "window, e.g. [1,2,3]");

  CLI11_PARSE(app, argc, argv);

  bool as_table = format == "table";
  Rat tol;
  try {
    tol = parse_rat(tol_str);
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  } catch (const std::exception& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  }

  ordered_json report;
  report["schema"] = 1;
  report["seed"] = seed;
  Violations bad;

  try {
    if (rho_cmd->parsed()) {
      report["subcommand"] = "rho-synthesize";
      auto t = synthesize_rho(rho_n, rho_m, seed);
      if (!t) {
        report["result"] = nullptr;
      } else {
        ordered_json vals = ordered_json::array();
        for (std::uint32_t b = 1; b < t->domain_size(); ++b)
          for (std::uint32_t a = 0; a < b; ++a)
            vals.push_back(ordered_json::array({a, b, t->get(a, b)}));
        report["result"] = {{"N", t->domain_size()}, {"values", vals}};
        auto viol = verify_rho(*t);
        for (const auto& v : viol)
          bad.add("rho properties (a)-(c)", v.to_string());
      }
    } else if (audit_cmd->parsed()) {
      report["subcommand"] = "coloring-audit";
      ordered_json entries = ordered_json::array();
      for (std::uint32_t s = 0; s < audit_stacks; ++s) {
        FiTable fi(build_stack(audit_n, audit_ground, seed + s));
        AuditResult r = cn_good_coloring_audit(fi, audit_n);
        std::map<std::uint32_t, std::size_t> khist;
        for (std::uint32_t k : r.equal_color_k) ++khist[k];
        ordered_json h;
        for (const auto& [k, c] : khist) h[std::to_string(k)] = c;
        entries.push_back({{"stack", s},
                           {"violations", r.violations.size()},
                           {"delta_parameter_histogram", h}});
        for (const auto& v : r.violations)
          bad.add("good coloring (equal colors force Delta-position)",
                  ordered_json{{"s", finset_json(v.s)},
                               {"t", finset_json(v.t)},
                               {"color", v.color},
                               {"witness_k", v.witness_k}});
      }
      report["stacks"] = entries;
    } else if (mr_cmd->parsed()) {
      report["subcommand"] = "mr-demo";
      ordered_json rows = ordered_json::array();
      for (std::uint32_t k = 2; k <= mr_k; k *= 2) {
        MrInstance inst = k <= 2
                              ? MrInstance::bn_stack(build_stack(2, 10, seed), 2)
                              : MrInstance::segment_chain(2, k, Int(2));
        auto w = unconditionality_witness(inst, k, tol);
        ordered_json row;
        row["k"] = k;
        row["instance"] = k <= 2 ? "bn-stack" : "explicit table";
        row["norm_x"] = {{"lo", rat_json(w.report.norm_x.lo)},
                         {"hi", rat_json(w.report.norm_x.hi)}};
        row["norm_y"] = {{"lo", rat_json(w.report.norm_y.lo)},
                         {"hi", rat_json(w.report.norm_y.hi)}};
        row["suppression_lower"] = rat_json(w.report.suppression_lower);
        rows.push_back(row);
        if (!(w.report.norm_x.hi <= 4))
          bad.add("witness upper bound |x| <= 4", row);
        if (!(w.report.norm_y.lo >= Rat(Int(k), 2)))
          bad.add("witness lower bound |y| >= k/2", row);
        if (!(w.report.suppression_lower >= Rat(Int(k), 8)))
          bad.add("suppression constant >= k/8", row);
      }
      report["rows"] = rows;
    } else if (tnorm_cmd->parsed()) {
      report["subcommand"] = "tnorm";
      TNormInstance inst(parse_rat(tnorm_theta),
                         parse_descriptor(tnorm_family, load_finsets),
                         tnorm_ground);
      QVector x = load_qvector(tnorm_vec);
      Rat v = t_norm(x, inst);
      report["norm"] = rat_json(v);
    } else if (bell_cmd->parsed()) {
      report["subcommand"] = "bellenot";
      TNormInstance inst(parse_rat(bell_theta), Family::cube(bell_n),
                         bell_m + 2);
      ordered_json rows = ordered_json::array();
      for (const auto& row : bellenot_profile(inst, bell_m)) {
        ordered_json r;
        r["m"] = row.m;
        r["norm"] = rat_json(row.norm);
        if (row.p_hat) r["p_hat"] = *row.p_hat;
        rows.push_back(r);
      }
      report["rows"] = rows;
    } else if (rank_cmd->parsed()) {
      report["subcommand"] = "cb-rank";
      FamilyPtr f = parse_descriptor(rank_desc, load_finsets);
      report["rank"] = cb_rank(*f).to_string();
    } else if (namba_cmd->parsed()) {
      report["subcommand"] = "namba";
      FamilyPtr f = parse_descriptor(namba_family, load_finsets);
      GameResult g = solve(f, namba_arena, namba_rounds);
      report["winner"] = g.winner == Player::I ? "I" : "II";
      ordered_json table = ordered_json::array();
      for (const auto& [h, v] : g.strategy.table)
        table.push_back(ordered_json::array({finset_json(h), v}));
      report["strategy"] = table;
      ordered_json sweep = ordered_json::array();
      for (std::uint32_t n = 1; n <= namba_alpha_max && 2 * n - 1 <= namba_arena; ++n)
        sweep.push_back(ordered_json::array(
            {n, winner_of(f, namba_arena, n) == Player::I ? "I" : "II"}));
      report["alpha_sweep"] = sweep;
      report["alpha"] = alpha(f, namba_arena, namba_alpha_max);
      if (!strategy_wins_all(f, namba_arena, namba_rounds, g.strategy))
        bad.add("winning strategy beats every opponent line", report["winner"]);
      if (!monotonicity_check(f, namba_arena, namba_alpha_max))
        bad.add("round monotonicity of the winner", ordered_json{});
    } else if (proj_cmd->parsed()) {
      report["subcommand"] = "projection-check";
      FamilyPtr f = parse_descriptor(proj_family, load_finsets);
      TNormInstance inst(parse_rat(proj_theta), f, proj_ground);
      Rng rng(seed);
      Rng stream = rng.stream("projection-check");
      ordered_json rows = ordered_json::array();
      std::uint32_t done = 0;
      while (done < proj_samples) {
        FinSet gamma(stream.subset(proj_ground, 2, 3));
        if (gamma.size() < 2) continue;
        std::vector<std::pair<std::uint32_t, Rat>> entries;
        for (std::uint32_t g : gamma.elems())
          if (stream.coin())
            entries.push_back(
                {g, Rat(static_cast<int>(stream.below(9)) - 4, 1)});
        QVector x(entries);
        if (x.empty()) continue;
        auto [lhs, rhs] = projection_check(x, inst, gamma);
        rows.push_back({{"gamma", finset_json(gamma)},
                        {"lhs", rat_json(lhs)},
                        {"rhs", rat_json(rhs)}});
        if (lhs != rhs)
          bad.add("projection preserves the norm", rows.back());
        ++done;
      }
      report["rows"] = rows;
    } else if (ptak_cmd->parsed()) {
      report["subcommand"] = "ptak";
      FamilyPtr f = parse_descriptor(ptak_family, load_finsets);
      std::vector<std::uint32_t> v;
      {
        std::string w = ptak_window;
        for (char& c : w)
          if (c == '[' || c == ']' || c == ',') c = ' ';
        std::istringstream is(w);
        std::uint32_t x;
        while (is >> x) v.push_back(x);
        std::sort(v.begin(), v.end());
      }
      FinSet window(v);
      PtakWitness w = ptak_witness(*f, window);
      ordered_json mu = ordered_json::array();
      for (const auto& [g, c] : w.mu.entries())
        mu.push_back(ordered_json::array({g, rat_string(c)}));
      report["mu"] = mu;
      report["bound"] = rat_json(w.bound);
      ordered_json dual = ordered_json::array();
      for (const auto& [s, lam] : w.dual)
        dual.push_back(ordered_json::array({finset_json(s), rat_string(lam)}));
      report["dual"] = dual;
      if (!ptak_certificate_ok(*f, window, w))
        bad.add("LP duality certificate", report["bound"]);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  report["violations"] = bad.list;
  emit(report, as_table);
  return bad.any() ? 1 : 0;
}
