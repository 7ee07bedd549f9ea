// Batch front end for the Iwasawa-algebra verification sweeps.
//
// Subcommands:
//   roots      dump a root system and its highest-root data
//   prop31     leading-term verification sweep over the four commutator cases
//   pde        randomized derivative-expansion checks
//   normality  principal-right-ideal obstruction for a candidate series
//   chase      diagram-chase certificates on synthetic instances
//
// Exit codes: 0 success, 1 mathematical failure, 2 usage error, 3 inconclusive.

#include <CLI11.hpp>
#include <fstream>
#include <future>
#include <iostream>

#include "iwa/errors.hpp"
#include "iwa/json_io.hpp"

using namespace iwa;

namespace {

struct CommonOpts {
  std::string type;
  int rank = 0;
  long long p = 3;
  std::vector<int> rs{0};
  std::vector<int> ss{0};
  int trunc = -1;
  int precision = -1;
  unsigned seed = 1;
  int samples = 20;
  std::string input, out;
  std::string format = "table";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_p) {
  cmd->add_option("--type", o.type, "Lie type label (A..G, or compact like E8)")
      ->required();
  cmd->add_option("--rank", o.rank, "rank (may be embedded in --type)");
  if (needs_p) cmd->add_option("--p", o.p, "odd prime >= 3")->required();
  cmd->add_option("--out", o.out, "write the JSON report to this file");
  cmd->add_option("--format", o.format, "stdout format: table or json")
      ->check(CLI::IsMember({"table", "json"}));
}

void emit(const CommonOpts& o, const json& doc, const std::string& table) {
  if (o.format == "json")
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << table;
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    f << doc.dump(2) << "\n";
  }
}

int verdict_exit(const std::vector<VerificationReport>& reports) {
  bool fail = false, inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fail) fail = true;
    if (r.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  if (fail) return 1;
  if (inconclusive) return 3;
  return 0;
}

std::string summarize(const std::vector<VerificationReport>& reports) {
  int pass = 0, fail = 0, vac = 0, inc = 0, skip = 0;
  for (const auto& r : reports) switch (r.verdict) {
      case Verdict::Pass: ++pass; break;
      case Verdict::Fail: ++fail; break;
      case Verdict::Vacuous: ++vac; break;
      case Verdict::Inconclusive: ++inc; break;
      case Verdict::Skipped: ++skip; break;
    }
  std::ostringstream os;
  os << "cases=" << reports.size() << " pass=" << pass << " fail=" << fail
     << " vacuous=" << vac << " inconclusive=" << inc << " skipped=" << skip << "\n";
  return os.str();
}

int cmd_roots(const CommonOpts& o) {
  auto rs = RootSystem::build(o.type, o.rank);
  json doc = root_system_to_json(*rs);
  doc["max_highest_coeff"] = rs->max_highest_coeff();
  std::ostringstream table;
  table << rs->name() << ": " << rs->num_roots() << " roots, highest root height "
        << rs->highest_root().height << ", max coefficient "
        << rs->max_highest_coeff() << "\n";
  emit(o, doc, table.str());
  return 0;
}

int cmd_prop31(const CommonOpts& o) {
  if (o.p < 3) throw ConfigError("p must be >= 3");
  auto rs = RootSystem::build(o.type, o.rank);
  // cells (r, s) run in parallel; each sweep owns its model
  std::vector<std::pair<int, int>> cells;
  for (int r : o.rs)
    for (int s : o.ss) cells.emplace_back(r, s);
  std::vector<std::future<std::vector<VerificationReport>>> futs;
  for (auto [r, s] : cells)
    futs.push_back(std::async(std::launch::async, [rs, o, r = r, s = s] {
      return sweep_prop31(rs, o.p, r, s, o.trunc, o.precision);
    }));
  std::vector<VerificationReport> reports;
  for (auto& f : futs) {
    auto part = f.get();
    reports.insert(reports.end(), part.begin(), part.end());
  }
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  json doc{{"command", "prop31"},
           {"type", rs->name()},
           {"p", o.p},
           {"r", o.rs},
           {"s", o.ss},
           {"reports", arr}};
  std::ostringstream table;
  table << "prop31 " << rs->name() << " p=" << o.p << ": " << summarize(reports);
  for (const auto& r : reports)
    if (r.verdict != Verdict::Pass)
      table << "  [" << verdict_name(r.verdict) << "] " << r.case_desc << " "
            << r.note << "\n";
  emit(o, doc, table.str());
  return verdict_exit(reports);
}

int cmd_pde(const CommonOpts& o) {
  if (o.p < 3) throw ConfigError("p must be >= 3");
  auto rs = RootSystem::build(o.type, o.rank);
  std::vector<std::pair<int, int>> cells;
  for (int r : o.rs)
    for (int s : o.ss) cells.emplace_back(r, s);
  std::vector<std::future<std::vector<VerificationReport>>> futs;
  unsigned seed = o.seed;
  for (auto [r, s] : cells)
    futs.push_back(std::async(std::launch::async, [rs, o, r = r, s = s, seed] {
      return sweep_pde(rs, o.p, r, s, o.samples, seed, o.trunc, o.precision);
    }));
  std::vector<VerificationReport> reports;
  for (auto& f : futs) {
    auto part = f.get();
    reports.insert(reports.end(), part.begin(), part.end());
  }
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  json doc{{"command", "pde"},     {"type", rs->name()},      {"p", o.p},
           {"r", o.rs},            {"s", o.ss},               {"samples", o.samples},
           {"seed", o.seed},       {"reports", arr}};
  std::ostringstream table;
  table << "pde " << rs->name() << " p=" << o.p << " seed=" << o.seed << ": "
        << summarize(reports);
  for (const auto& r : reports)
    if (r.verdict != Verdict::Pass)
      table << "  [" << verdict_name(r.verdict) << "] " << r.case_desc << "\n";
  emit(o, doc, table.str());
  return verdict_exit(reports);
}

int cmd_normality(const CommonOpts& o) {
  if (o.p < 3) throw ConfigError("p must be >= 3");
  if (o.input.empty()) throw ConfigError("normality requires --input");
  auto rs = RootSystem::build(o.type, o.rank);
  int budget = o.trunc > 0 ? o.trunc : int(2 * o.p + 2);
  int prec = o.precision;
  if (prec < 0) {
    prec = 2;
    while (ipow(o.p, prec - 1) <= budget) ++prec;
  }
  auto model = Model::build(rs, o.p, prec);
  Ctx ctx = SeriesContext::make(model, budget);
  std::ifstream f(o.input);
  if (!f) throw ConfigError("cannot open input file " + o.input);
  json jin = json::parse(f);
  Series W = series_from_json(ctx, jin);
  if (is_zero(W)) throw ConfigError("candidate series is zero");
  ObstructionReport rep = normal_obstruction(W, budget);
  json doc = obstruction_to_json(*rs, rep);
  doc["command"] = "normality";
  doc["type"] = rs->name();
  doc["p"] = o.p;
  std::ostringstream table;
  table << "normality " << rs->name() << " p=" << o.p << " budget=" << budget << ": "
        << doc["verdict"].get<std::string>();
  if (rep.verdict == ObstructionReport::Verdict::Obstructed)
    table << " gamma=y[" << rs->var_name(rep.gamma_var) << "] degree=" << rep.degree;
  table << "\n";
  emit(o, doc, table.str());
  return rep.verdict == ObstructionReport::Verdict::Inconclusive ? 3 : 0;
}

int cmd_chase(const CommonOpts& o) {
  if (o.p < 3) throw ConfigError("p must be >= 3");
  auto rs = RootSystem::build(o.type, o.rank);
  int s = o.ss.empty() ? 0 : o.ss.front();
  std::mt19937 rng(o.seed);
  json arr = json::array();
  bool bad = false;
  for (int i = 0; i < o.samples; ++i) {
    ChaseInstance inst = random_chase_instance(*rs, int(o.p), s, rng);
    ChaseCertificate cert = diagram_chase(*rs, int(o.p), inst.wm, inst.wd, s);
    if (!cert.ok()) bad = true;
    json j = chase_to_json(*rs, cert);
    j["wm"] = hom_to_json(inst.wm);
    j["wd"] = hom_to_json(inst.wd);
    arr.push_back(std::move(j));
  }
  json doc{{"command", "chase"}, {"type", rs->name()}, {"p", o.p},
           {"s", s},             {"samples", o.samples}, {"seed", o.seed},
           {"certificates", arr}};
  std::ostringstream table;
  int flagged = 0;
  for (const auto& c : arr)
    if (!c["flags"].empty()) ++flagged;
  table << "chase " << rs->name() << " p=" << o.p << " s=" << s << ": samples="
        << o.samples << (bad ? " FAILURES PRESENT" : " all certificates ok")
        << " (instances with flagged targets: " << flagged << ")\n";
  emit(o, doc, table.str());
  return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for mod-p Iwasawa algebras of Chevalley kernels"};
  app.require_subcommand(1);

  CommonOpts ro, po, deo, no, co;
  CLI::App* roots = app.add_subcommand("roots", "dump a root system");
  add_common(roots, ro, false);

  CLI::App* prop31 = app.add_subcommand("prop31", "commutator leading-term sweep");
  add_common(prop31, po, true);
  prop31->add_option("--r", po.rs, "levels r (repeatable)");
  prop31->add_option("--s", po.ss, "levels s (repeatable)");
  prop31->add_option("--trunc", po.trunc, "truncation-degree override");
  prop31->add_option("--precision", po.precision, "ring precision override");
  po.rs = {0, 1};
  po.ss = {0, 1};

  CLI::App* pde = app.add_subcommand("pde", "derivative-expansion property sweep");
  add_common(pde, deo, true);
  pde->add_option("--r", deo.rs, "levels r (repeatable)");
  pde->add_option("--s", deo.ss, "levels s (repeatable)");
  pde->add_option("--samples", deo.samples, "instances per cell");
  pde->add_option("--seed", deo.seed, "RNG seed");
  pde->add_option("--trunc", deo.trunc, "truncation-degree override");
  pde->add_option("--precision", deo.precision, "ring precision override");

  CLI::App* normality = app.add_subcommand("normality", "obstruction check for a series");
  add_common(normality, no, true);
  normality->add_option("--input", no.input, "candidate series (JSON)")->required();
  normality->add_option("--trunc", no.trunc, "degree budget (default 2p+2)");
  normality->add_option("--precision", no.precision, "ring precision exponent N");

  CLI::App* chase = app.add_subcommand("chase", "diagram-chase certificates");
  add_common(chase, co, true);
  chase->add_option("--s", co.ss, "level s");
  chase->add_option("--samples", co.samples, "synthetic instances");
  chase->add_option("--seed", co.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (roots->parsed()) return cmd_roots(ro);
    if (prop31->parsed()) return cmd_prop31(po);
    if (pde->parsed()) return cmd_pde(deo);
    if (normality->parsed()) return cmd_normality(no);
    if (chase->parsed()) return cmd_chase(co);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ModelNotFaithfulError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
