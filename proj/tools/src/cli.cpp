#include "wiretap_cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wiretap/finite_alphabet.hpp"
#include "wiretap/kkt.hpp"
#include "wiretap/monte_carlo.hpp"
#include "wiretap/problem_io.hpp"
#include "wiretap/sweep.hpp"

namespace wiretap::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::string problem_path;
  std::string alphabet;
  std::string csi = "file";
  unsigned threads = 0;
};

struct RateArgs {
  double rd = 0.0;
  double rs = 0.0;
};

struct Loaded {
  ProblemFile file;
  CsiMode mode;
  RateModel model = RateModel::gaussian();
};

std::optional<Alphabet> resolve_alphabet(const std::string& spec, std::vector<std::string>& warnings) {
  if (spec.empty()) return std::nullopt;
  if (spec == "gaussian") return std::nullopt;
  if (spec == "bpsk" || spec == "qpsk" || spec == "8psk" || spec == "16qam") return Alphabet::builtin(spec);
  return load_alphabet(spec, &warnings);
}

Loaded load(const Common& c, std::ostream& err) {
  Loaded l;
  l.file = load_problem(c.problem_path);
  if (c.csi == "statistical") {
    l.mode = StatisticalCsi{};
  } else {
    l.mode = l.file.csi_mode;
  }
  std::optional<Alphabet> alphabet = l.file.alphabet;
  if (!c.alphabet.empty()) alphabet = resolve_alphabet(c.alphabet, l.file.warnings);
  if (alphabet) l.model = MiEvaluator(*alphabet).rate_model();
  for (const auto& w : l.file.warnings) err << "warning: " << w << "\n";
  return l;
}

Json complex_list(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v(i).real(), v(i).imag()}));
  return out;
}

Json duals_json(const DualVariables& d) {
  return Json{{"lambda", d.lambda}, {"mu", d.mu}, {"nu", d.nu}};
}

Json kkt_json(const KktReport& k, const RankBoundReport& rb) {
  Json j;
  j["primal_feasible"] = k.primal_feasible;
  j["primal_violation"] = k.primal_violation;
  j["dual_violation"] = k.dual_violation;
  j["compl_slack_W"] = k.compl_slack_W;
  j["slack_power"] = k.slack_power;
  j["slack_users"] = k.slack_users;
  j["slack_eaves"] = k.slack_eaves;
  j["stationarity_min_eig"] = k.stationarity_min_eig;
  j["scalar_identity"] = k.scalar_identity;
  j["rank_W"] = k.rank_W;
  j["rank_muH"] = k.rank_muH;
  j["max_residual"] = k.max_residual();
  j["rank_bound_ok"] = rb.ok();
  j["rank_bound_vacuous"] = rb.vacuous;
  j["rank_bound_violations"] = rb.violations;
  return j;
}

int status_exit(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return kOk;
    case SolveStatus::Infeasible:
    case SolveStatus::InfeasibleAtRank1: return kInfeasible;
    case SolveStatus::NumericalFailure: return kNumericalFailure;
  }
  return kNumericalFailure;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

constexpr double kKktTol = 1e-5;

int cmd_validate(const Common& c, std::ostream& out, std::ostream& err) {
  Json j;
  try {
    const Loaded l = load(c, err);
    const WiretapProblem& p = l.file.problem;
    j["valid"] = true;
    j["N"] = p.antennas;
    j["K"] = p.users();
    j["J"] = p.eavesdroppers();
    j["N0"] = p.noise_power;
    j["epsilon"] = p.epsilon;
    j["P_T"] = p.power_budget;
    j["csi_mode"] = csi_mode_name(l.mode);
    j["rate_model"] = l.model.name;
    j["diagonal"] = all_diagonal(p);
    j["warnings"] = l.file.warnings;
    emit(out, j);
    return kOk;
  } catch (const ProblemFormatError& e) {
    j["valid"] = false;
    j["error"] = e.what();
    emit(out, j);
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_solve(const Common& c, const RateArgs& r, const std::string& backend_name, std::ostream& out,
              std::ostream& err) {
  const Loaded l = load(c, err);
  const WiretapProblem& p = l.file.problem;
  const SolverBackend backend = parse_backend(backend_name);
  const RatePair rates{r.rd, r.rs};

  if (backend == SolverBackend::Lp) {
    PointOptions po;
    po.mode = l.mode;
    po.model = l.model;
    po.backend = backend;
    const PointOutcome o = solve_point(p, rates, po);
    if (!o.feasible()) {
      emit(out, Json{{"status", to_string(o.status)}});
      return status_exit(o.status);
    }
    Json j;
    j["status"] = to_string(o.status);
    j["power"] = o.power;
    j["w"] = complex_list(o.w);
    j["rank1_exact"] = o.rank1;
    j["duals"] = nullptr;
    j["kkt_residual_max"] = nullptr;
    j["backend"] = "lp";
    emit(out, j);
    return kOk;
  }

  const BeamformerSolution s = solve_general(p, rates, l.mode, l.model);
  if (!s.feasible()) {
    emit(out, Json{{"status", to_string(s.status)}});
    return status_exit(s.status);
  }
  const TraceConstraintSet cs = build_constraints(p, s.thresholds, l.mode);
  const KktReport k = check_kkt(cs, s.W, s.duals, kKktTol);
  Json j;
  j["status"] = to_string(s.status);
  j["power"] = s.power;
  j["w"] = complex_list(s.w);
  j["rank1_exact"] = s.rank1_exact;
  j["duals"] = duals_json(s.duals);
  j["kkt_residual_max"] = k.max_residual();
  j["backend"] = "sdp";
  j["rank_W"] = s.rank;
  j["thresholds"] = Json{{"floor", s.thresholds.floor},
                         {"ceiling", std::isfinite(s.thresholds.ceiling) ? Json(s.thresholds.ceiling) : Json(nullptr)},
                         {"per_link_prob", s.thresholds.per_link_prob}};
  emit(out, j);
  return kOk;
}

struct SweepArgs {
  double rd_min = 0.1;
  double rd_max = 8.0;
  double rd_step = 0.1;
  double rate_tol = 1e-3;
  std::string backend = "auto";
  std::string output;
};

int cmd_sweep(const Common& c, const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const Loaded l = load(c, err);
  SweepOptions opts;
  opts.point.mode = l.mode;
  opts.point.model = l.model;
  opts.point.backend = parse_backend(a.backend);
  opts.rate_tol = a.rate_tol;
  opts.threads = c.threads;
  const SweepResult result = sweep_region(l.file.problem, rate_grid(a.rd_min, a.rd_max, a.rd_step), opts);
  const std::string csv = to_csv(result);
  if (a.output.empty()) {
    out << csv;
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write " + a.output);
    f << csv;
  }
  return kOk;
}

struct MonteCarloArgs {
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
};

int cmd_montecarlo(const Common& c, const RateArgs& r, const MonteCarloArgs& a, std::ostream& out,
                   std::ostream& err) {
  const Loaded l = load(c, err);
  const WiretapProblem& p = l.file.problem;
  const RatePair rates{r.rd, r.rs};
  const BeamformerSolution s = solve_general(p, rates, l.mode, l.model);
  if (!s.feasible()) {
    emit(out, Json{{"status", to_string(s.status)}});
    return status_exit(s.status);
  }

  const ChannelSampler sampler(p, a.seed);
  MonteCarloOptions mc;
  mc.trials = a.trials;
  mc.threads = c.threads;
  const OutageEstimate joint = estimate_non_outage(p, rates, s.w, sampler, mc, l.model);
  const IndividualProbabilities ind = estimate_individual_probs(p, rates, s.w, sampler, mc, l.model);

  auto estimate_json = [](const OutageEstimate& e) {
    return Json{{"successes", e.successes}, {"p_hat", e.p_hat}, {"ci_halfwidth", e.ci_halfwidth}};
  };
  Json users = Json::array(), eaves = Json::array();
  for (const auto& e : ind.users) users.push_back(estimate_json(e));
  for (const auto& e : ind.eavesdroppers) eaves.push_back(estimate_json(e));

  Json j;
  j["status"] = "optimal";
  j["seed"] = a.seed;
  j["trials"] = joint.trials;
  j["power"] = s.power;
  j["target"] = 1.0 - p.epsilon;
  j["successes"] = joint.successes;
  j["p_hat"] = joint.p_hat;
  j["ci_halfwidth"] = joint.ci_halfwidth;
  j["per_link_target"] = s.thresholds.per_link_prob;
  j["users"] = users;
  j["eavesdroppers"] = eaves;
  emit(out, j);
  return kOk;
}

int cmd_kkt(const Common& c, const RateArgs& r, double tol, std::ostream& out, std::ostream& err) {
  const Loaded l = load(c, err);
  const WiretapProblem& p = l.file.problem;
  const BeamformerSolution s = solve_general(p, {r.rd, r.rs}, l.mode, l.model);
  if (!s.feasible()) {
    emit(out, Json{{"status", to_string(s.status)}});
    return status_exit(s.status);
  }
  const TraceConstraintSet cs = build_constraints(p, s.thresholds, l.mode);
  const KktReport k = check_kkt(cs, s.W, s.duals, tol);
  const RankBoundReport rb = rank_bound_check(cs, s.W, s.duals);
  Json j = kkt_json(k, rb);
  j["tolerance"] = tol;
  j["passes"] = k.passes(tol);
  emit(out, j);
  return k.passes(tol) && rb.ok() ? kOk : kNumericalFailure;
}

struct MiArgs {
  std::string alphabet = "qpsk";
  double db_min = -10.0;
  double db_max = 30.0;
  double db_step = 1.0;
  std::size_t order = 32;
};

int cmd_mi(const MiArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const std::optional<Alphabet> alphabet = resolve_alphabet(a.alphabet, warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  if (!alphabet) throw std::invalid_argument("mi needs a finite alphabet");
  if (!(a.db_step > 0.0) || a.db_max < a.db_min) throw std::invalid_argument("mi needs db-step > 0 and db-max >= db-min");
  const MiEvaluator mi(*alphabet, a.order);
  out << "rho,mi\n";
  const auto n = static_cast<std::size_t>(std::floor((a.db_max - a.db_min) / a.db_step + 1e-9)) + 1;
  char buf[96];
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = db_to_linear(a.db_min + static_cast<double>(i) * a.db_step);
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", rho, mi.mutual_info(rho));
    out << buf;
  }
  return kOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--problem", c.problem_path, "Problem JSON file")->required();
  sub->add_option("--alphabet", c.alphabet, "gaussian, bpsk, qpsk, 8psk, 16qam or a JSON symbol list file");
  sub->add_option("--csi", c.csi, "file (mode from the problem file) or statistical")
      ->check(CLI::IsMember({"file", "statistical"}));
  sub->add_option("--threads", c.threads, "Worker threads (0 = WIRETAP_THREADS or hardware)");
}

void add_rates(CLI::App* sub, RateArgs& r) {
  sub->add_option("--rd", r.rd, "Code rate R_D in bits per channel use")->required();
  sub->add_option("--rs", r.rs, "Secrecy rate R_s in bits per channel use")->required();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-power secure beamforming for slow-fading MISO wiretap channels", "wiretap"};
  app.require_subcommand(1);

  Common common;
  RateArgs rates;
  SweepArgs sweep;
  MonteCarloArgs mc;
  MiArgs mi;
  std::string solve_backend = "sdp";
  double kkt_tol = kKktTol;

  auto* validate = app.add_subcommand("validate", "Parse and check a problem file");
  add_common(validate, common);

  auto* solve = app.add_subcommand("solve", "Minimum-power beamformer for one rate pair");
  add_common(solve, common);
  add_rates(solve, rates);
  solve->add_option("--backend", solve_backend, "Solver backend")->check(CLI::IsMember({"sdp", "lp"}));

  auto* sw = app.add_subcommand("sweep", "Maximum secrecy rate and minimum power over a code-rate grid");
  add_common(sw, common);
  sw->add_option("--rd-min", sweep.rd_min, "First code rate");
  sw->add_option("--rd-max", sweep.rd_max, "Last code rate");
  sw->add_option("--rd-step", sweep.rd_step, "Code-rate step");
  sw->add_option("--rate-tol", sweep.rate_tol, "Secrecy-rate bisection tolerance in bits");
  sw->add_option("--backend", sweep.backend, "auto picks the LP for diagonal statistical instances")->check(CLI::IsMember({"auto", "sdp", "lp"}));
  sw->add_option("--output,-o", sweep.output, "CSV destination (default stdout)");

  auto* montecarlo = app.add_subcommand("montecarlo", "Empirical non-outage probability of the optimal beamformer");
  add_common(montecarlo, common);
  add_rates(montecarlo, rates);
  montecarlo->add_option("--trials", mc.trials, "Channel draws")->check(CLI::PositiveNumber);
  montecarlo->add_option("--seed", mc.seed, "Sampler seed");

  auto* kkt = app.add_subcommand("kkt", "Optimality residuals of the relaxed solution");
  add_common(kkt, common);
  add_rates(kkt, rates);
  kkt->add_option("--tol", kkt_tol, "Residual tolerance");

  auto* mi_cmd = app.add_subcommand("mi", "Tabulate finite-alphabet mutual information");
  mi_cmd->add_option("--alphabet", mi.alphabet, "bpsk, qpsk, 8psk, 16qam or a JSON symbol list file");
  mi_cmd->add_option("--db-min", mi.db_min, "First SNR in dB");
  mi_cmd->add_option("--db-max", mi.db_max, "Last SNR in dB");
  mi_cmd->add_option("--db-step", mi.db_step, "SNR step in dB");
  mi_cmd->add_option("--order", mi.order, "Gauss-Hermite nodes per dimension")->check(CLI::Range(2, 200));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (!e.get_name().empty() && e.get_name() != "RequiredError") err << app.help();
    return kInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(common, out, err);
    if (solve->parsed()) return cmd_solve(common, rates, solve_backend, out, err);
    if (sw->parsed()) return cmd_sweep(common, sweep, out, err);
    if (montecarlo->parsed()) return cmd_montecarlo(common, rates, mc, out, err);
    if (kkt->parsed()) return cmd_kkt(common, rates, kkt_tol, out, err);
    if (mi_cmd->parsed()) return cmd_mi(mi, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kInputError;
}

}  // namespace wiretap::cli
