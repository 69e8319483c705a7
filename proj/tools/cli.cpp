#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "uniprobe/discrimination.hpp"
#include "uniprobe/error.hpp"
#include "uniprobe/pairwise.hpp"
#include "uniprobe/probeopt.hpp"
#include "uniprobe/serialize.hpp"
#include "uniprobe/verify.hpp"

namespace uniprobe::cli {

namespace {

std::string g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string f4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

UnitaryEnsemble load(const RunConfig& cfg) {
  if (cfg.inputPath && cfg.builtin) {
    throw InputError("give either --input or --builtin, not both");
  }
  if (cfg.inputPath) return load_ensemble(*cfg.inputPath);
  if (cfg.builtin) return builtin_ensemble(*cfg.builtin);
  throw InputError("an ensemble is required: --input PATH or --builtin NAME");
}

UnitaryEnsemble load_pair(const RunConfig& cfg, const char* what) {
  UnitaryEnsemble e = load(cfg);
  if (e.size() != 2) {
    throw InputError(std::string(what) +
                     ": the ensemble must contain exactly 2 unitaries, got " +
                     std::to_string(e.size()));
  }
  return e;
}

SeesawConfig seesaw(const RunConfig& cfg) {
  SeesawConfig s;
  s.restarts = cfg.restarts;
  s.seed = cfg.seed;
  s.solverTol = cfg.tol;
  return s;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// Probe for commands that evaluate a fixed probe: a file, the constructed
// probe of a built-in family, the canonical maximally entangled state, or the
// see-saw optimum of the requested class.
ProbeSpec resolve_probe(const RunConfig& cfg, const UnitaryEnsemble& e) {
  if (cfg.probePath) return load_probe(*cfg.probePath);
  switch (cfg.probeClass) {
    case ProbeClass::maxEntangled:
      return probe_max_entangled(e.dim());
    case ProbeClass::arbitraryPure:
      if (cfg.builtin) {
        if (auto p = builtin_probe(*cfg.builtin)) return *p;
      }
      [[fallthrough]];
    case ProbeClass::product:
      break;
  }
  return optimize(e, cfg.probeClass, seesaw(cfg)).probe;
}

}  // namespace

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int d = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {d, d};
    }
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    const int a = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    const int b = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    if (a > b) throw InputError("--d: empty range " + text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw InputError("--d: expected LO..HI or a single integer, got '" + text + "'");
  }
}

int cmd_pairwise(const RunConfig& cfg, std::ostream& out) {
  const UnitaryEnsemble e = load_pair(cfg, "pairwise");
  if (std::abs(e.priors()[0] - 0.5) > 1e-12) {
    throw InputError("pairwise: closed forms need equal priors; use 'ensemble'");
  }
  const PairReport r = pair_report(e[0], e[1]);
  const double r2 = std::abs(r.traceOverD);
  if (cfg.format == Format::csv) {
    out << "dProduct,dMaxEnt,r1,r2,nmeAdvantage\n"
        << g9(r.dProduct) << "," << g9(r.dMaxEnt) << "," << g9(r.hull.minNorm)
        << "," << g9(r2) << "," << (r.nmeAdvantage ? "true" : "false") << "\n";
  } else {
    Json j = to_json(r);
    j["r1"] = round9(r.hull.minNorm);
    j["r2"] = round9(r2);
    emit_json(out, j);
  }
  return kOk;
}

int cmd_ensemble(const RunConfig& cfg, std::ostream& out) {
  const UnitaryEnsemble e = load(cfg);
  std::optional<ProbeOptResult> opt;
  std::optional<ProbeSpec> probe;
  std::optional<DiscriminationOutcome> outcome;
  if (cfg.probePath) {
    probe = load_probe(*cfg.probePath);
    outcome = evaluate(e, *probe, cfg.tol);
  } else {
    opt = optimize(e, cfg.probeClass, seesaw(cfg));
    probe = opt->probe;
    outcome = opt->outcome;
  }
  const auto& sc = probe->schmidt().coefficients;
  if (cfg.format == Format::csv) {
    out << "value,dual_gap,class,schmidt\n"
        << g9(outcome->successProb) << "," << g9(outcome->dualGap) << ","
        << to_string(probe->tag()) << ",";
    for (std::size_t i = 0; i < sc.size(); ++i) out << (i ? ";" : "") << g9(sc[i]);
    out << "\n";
    return kOk;
  }
  Json j = {{"value", round9(outcome->successProb)},
            {"dual_gap", round9(outcome->dualGap)},
            {"iterations", outcome->iterations},
            {"converged", outcome->converged},
            {"class", std::string(to_string(probe->tag()))},
            {"schmidt", Json::array()},
            {"probe", to_json(*probe)}};
  for (double c : sc) j["schmidt"].push_back(round9(c));
  if (opt) {
    Json rv = Json::array();
    for (double v : opt->restartValues) rv.push_back(round9(v));
    j["restart_values"] = rv;
    j["monotone"] = opt->monotone;
  }
  emit_json(out, j);
  return kOk;
}

int cmd_tables(const RunConfig& cfg, std::ostream& out) {
  const bool v = cfg.family == "v";
  if (!v && cfg.family != "w") {
    throw InputError("tables: --family must be 'v' or 'w'");
  }
  const int maxD = v ? 7 : 6;
  const int lo = cfg.dLo ? cfg.dLo : 3, hi = cfg.dHi ? cfg.dHi : maxD;
  if (lo < 3 || hi > maxD) {
    throw InputError("tables: --d must lie within 3.." + std::to_string(maxD) +
                     " for family " + cfg.family);
  }
  std::vector<int> dims;
  for (int d = lo; d <= hi; ++d) dims.push_back(d);
  const auto rows = v ? table_v(dims, seesaw(cfg), cfg.withArbitrary)
                      : table_w(dims, seesaw(cfg), cfg.withArbitrary);
  if (cfg.format == Format::csv) {
    out << "d,dP,dNME,dME" << (cfg.withArbitrary ? ",dArbitrary" : "") << "\n";
    for (const auto& r : rows) {
      out << r.d << "," << f4(r.dP.value) << "," << f4(r.dNME.value) << ","
          << f4(r.dME.value);
      if (r.dArbitrary) out << "," << f4(r.dArbitrary->value);
      out << "\n";
    }
  } else {
    Json j = Json::array();
    for (const auto& r : rows) j.push_back(to_json(r));
    emit_json(out, {{"family", cfg.family}, {"rows", j}});
  }
  return kOk;
}

int cmd_argand(const RunConfig& cfg, std::ostream& out) {
  const UnitaryEnsemble e = load_pair(cfg, "argand");
  const RelativeSpectrum rs = relative_spectrum(e[0], e[1]);
  const PairReport r = pair_report(e[0], e[1]);
  if (cfg.format == Format::csv) {
    out << "kind,x,y\n";
    for (const auto& z : rs.phases)
      out << "eigenvalue," << g9(z.real()) << "," << g9(z.imag()) << "\n";
    out << "r1," << g9(r.hull.witness.real()) << "," << g9(r.hull.witness.imag()) << "\n";
    out << "r2," << g9(r.traceOverD.real()) << "," << g9(r.traceOverD.imag()) << "\n";
    return kOk;
  }
  Json pts = Json::array();
  for (const auto& z : rs.phases) pts.push_back({round9(z.real()), round9(z.imag())});
  emit_json(out,
            {{"eigenvalues", pts},
             {"r1", {{"point", {round9(r.hull.witness.real()), round9(r.hull.witness.imag())}},
                     {"norm", round9(r.hull.minNorm)}}},
             {"r2", {{"point", {round9(r.traceOverD.real()), round9(r.traceOverD.imag())}},
                     {"norm", round9(std::abs(r.traceOverD))}}}});
  return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.trials < 1) throw InputError("simulate: --trials must be >= 1");
  const UnitaryEnsemble e = load(cfg);
  const ProbeSpec probe = resolve_probe(cfg, e);
  const StateEnsemble evolved = evolve(e, probe);
  const DiscriminationOutcome o = discriminate_optimal(evolved, cfg.tol);
  Rng rng(cfg.seed);
  const TrialStats s = sample_trials(evolved, o.povm, cfg.trials, rng);
  const double diff = s.frequency - o.successProb;
  // With a zero standard error the run is deterministic; agreement to the
  // solver tolerance counts as z = 0.
  const double z = s.stdError > 0 ? diff / s.stdError
                                  : (std::abs(diff) <= cfg.tol ? 0.0 : INFINITY);
  if (cfg.format == Format::csv) {
    out << "analytic,frequency,stderr,z,trials,successes\n"
        << g9(o.successProb) << "," << g9(s.frequency) << "," << g9(s.stdError)
        << "," << g9(z) << "," << s.trials << "," << s.successes << "\n";
  } else {
    emit_json(out, {{"analytic", round9(o.successProb)},
                    {"frequency", round9(s.frequency)},
                    {"stderr", round9(s.stdError)},
                    {"z", std::isfinite(z) ? Json(round9(z)) : Json("inf")},
                    {"trials", s.trials},
                    {"successes", s.successes},
                    {"class", std::string(to_string(probe.tag()))}});
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<CheckResult> results;
  try {
    results = run_checks(cfg.only, cfg.seed);
  } catch (const InvalidArgument& e) {
    throw InputError(e.what());
  }
  if (cfg.format == Format::csv) {
    out << "group,check,status,residual,threshold\n";
    for (const auto& r : results)
      out << r.group << ",\"" << r.name << "\","
          << (r.passed ? "pass" : (r.advisory ? "note" : "FAIL")) << ","
          << g9(r.residual) << "," << g9(r.threshold) << "\n";
  } else {
    Json j = Json::array();
    for (const auto& r : results) {
      Json item = {{"group", r.group},         {"check", r.name},
                   {"passed", r.passed},       {"residual", round9(r.residual)},
                   {"threshold", round9(r.threshold)}, {"advisory", r.advisory}};
      if (!r.detail.empty()) item["detail"] = r.detail;
      j.push_back(item);
    }
    emit_json(out, {{"checks", j}, {"all_passed", all_passed(results)}});
  }
  return all_passed(results) ? kOk : kVerificationFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-shot discrimination of unitary channels with product, "
               "maximally entangled and arbitrary pure probes.",
               "uniprobe"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string probe_class = "maxent", format = "json", range, only;

  auto ensemble_opts = [&](CLI::App* sub) {
    auto* in = sub->add_option("--input", cfg.inputPath, "Ensemble JSON file");
    auto* bi = sub->add_option("--builtin", cfg.builtin,
                               "Built-in ensemble: v:D, w:D, swapped:D, ttrio[:1|:2]");
    in->excludes(bi);
  };
  auto common_opts = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.outPath, "Write output to this file");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--tol", cfg.tol, "Solver tolerance")->check(CLI::PositiveNumber);
  };
  auto search_opts = [&](CLI::App* sub) {
    sub->add_option("--probe-class", probe_class, "Probe class")
        ->check(CLI::IsMember({"product", "maxent", "arbitrary"}));
    sub->add_option("--restarts", cfg.restarts, "See-saw restarts")
        ->check(CLI::PositiveNumber);
  };

  auto* pw = app.add_subcommand("pairwise", "Closed-form values for a pair of unitaries");
  ensemble_opts(pw);
  common_opts(pw);
  auto* en = app.add_subcommand("ensemble", "Best value over a probe class");
  ensemble_opts(en);
  common_opts(en);
  search_opts(en);
  en->add_option("--probe", cfg.probePath, "Evaluate this probe JSON file instead");
  auto* tb = app.add_subcommand("tables", "Probe-class tables for the V and W families");
  common_opts(tb);
  tb->add_option("--family", cfg.family, "v or w")->check(CLI::IsMember({"v", "w"}));
  tb->add_option("--d", range, "Dimension range LO..HI");
  tb->add_option("--restarts", cfg.restarts, "See-saw restarts")->check(CLI::PositiveNumber);
  tb->add_flag("--with-arbitrary", cfg.withArbitrary, "Add a see-saw column over all probes");
  auto* ar = app.add_subcommand("argand", "Relative eigenvalues with the r1 and r2 points");
  ensemble_opts(ar);
  common_opts(ar);
  auto* sm = app.add_subcommand("simulate", "Monte Carlo run of the guessing game");
  ensemble_opts(sm);
  common_opts(sm);
  search_opts(sm);
  sm->add_option("--probe", cfg.probePath, "Probe JSON file");
  sm->add_option("--trials", cfg.trials, "Number of rounds")->check(CLI::PositiveNumber);
  auto* vf = app.add_subcommand("verify", "Run the theorem checklist");
  common_opts(vf);
  vf->add_option("--only", only, "Comma-separated check groups");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  int (*cmd)(const RunConfig&, std::ostream&) = nullptr;
  if (pw->parsed()) cmd = cmd_pairwise, cfg.command = Command::pairwise;
  else if (en->parsed()) cmd = cmd_ensemble, cfg.command = Command::ensemble;
  else if (tb->parsed()) cmd = cmd_tables, cfg.command = Command::tables;
  else if (ar->parsed()) cmd = cmd_argand, cfg.command = Command::argand;
  else if (sm->parsed()) cmd = cmd_simulate, cfg.command = Command::simulate;
  else cmd = cmd_verify, cfg.command = Command::verify;

  try {
    cfg.probeClass = parse_probe_class(probe_class);
    cfg.format = format == "csv" ? Format::csv : Format::json;
    if (!range.empty()) std::tie(cfg.dLo, cfg.dHi) = parse_range(range);
    std::stringstream list(only);
    for (std::string item; std::getline(list, item, ',');)
      if (!item.empty()) cfg.only.push_back(item);

    std::ostringstream buf;
    const int code = cmd(cfg, buf);
    if (cfg.outPath) {
      std::ofstream f(*cfg.outPath);
      if (!f) throw InputError(*cfg.outPath + ": cannot open for writing");
      f << buf.str();
    } else {
      out << buf.str();
    }
    return code;
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const Error& e) {
    // Everything else the library throws traces back to the input.
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace uniprobe::cli
