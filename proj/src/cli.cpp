#include "tvwalk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <type_traits>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tvwalk/chain.hpp"
#include "tvwalk/csv.hpp"
#include "tvwalk/diagnostics.hpp"
#include "tvwalk/exact_group.hpp"
#include "tvwalk/funineq.hpp"
#include "tvwalk/gf2.hpp"
#include "tvwalk/parallel.hpp"
#include "tvwalk/protocol.hpp"

namespace tvwalk::cli {

namespace {

// Every option, in echo order. Options are long flags named after the key.
template <typename Config, typename Visitor>
void visit_fields(Config& c, Visitor&& v) {
  v("n", c.n, "matrix dimension");
  v("t", c.t, "number of steps");
  v("eps", c.eps, "distance threshold");
  v("trials", c.trials, "number of random trials");
  v("seed", c.seed, "master seed");
  v("lazy", c.lazy, "hold with probability 1/2 at each step");
  v("out", c.out, "output CSV path");
  v("threads", c.threads, "worker threads (0: available parallelism)");
  v("tmax", c.tmax, "last time written to the curve (0: automatic)");
  v("k", c.k, "number of tracked columns");
  v("points", c.points, "grid points");
  v("lo", c.lo, "first grid time, in units of n log n");
  v("hi", c.hi, "last grid time, in units of n log n");
  v("restarts", c.restarts, "random restarts of the ascent");
  v("iters", c.iters, "ascent iterations per start");
  v("suite", c.suite, "inequality suite, or all");
  v("d", c.d, "hypercube dimension");
  v("cls", c.cls, "log-Sobolev constant (0: estimate, n <= 3)");
  v("inv-abs-gap", c.inv_abs_gap, "inverse absolute spectral gap (0: compute, n <= 4)");
  v("key", c.key, "public key file");
  v("secret", c.secret, "secret trajectory file");
  v("challenge", c.challenge, "challenge bits, e.g. 0110");
  v("response", c.response, "response bits");
  v("bit-ops", c.bit_ops, "claimed bit operations");
  v("deadline", c.deadline, "bit-operation deadline");
  v("dishonest", c.dishonest, "answer from the public key only");
}

struct CommandSpec {
  std::string name;
  std::string help;
  std::set<std::string, std::less<>> keys;
  std::set<std::string, std::less<>> required;
  std::string default_out;
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = {
      {"order", "order of GL_n(F_2) and its density among all matrices", {"n"}, {"n"}, ""},
      {"walk", "run the walk from the identity", {"n", "t", "seed", "lazy", "key", "secret"}, {"n"}, ""},
      {"exact", "exact mixing times and distance curve (n <= 4)",
       {"n", "eps", "lazy", "tmax", "out", "threads"}, {"n"}, "exact_curve.csv"},
      {"spectrum", "spectrum of the transition matrix (n <= 4)", {"n", "out"}, {"n"}, "spectrum.csv"},
      {"lsi", "lower bound on the log-Sobolev constant (n <= 3)",
       {"n", "restarts", "iters", "seed", "out", "threads"}, {"n"}, "lsi.csv"},
      {"check", "randomized inequality suites", {"suite", "n", "d", "trials", "seed", "out", "threads"}, {"n"},
       "inequality_suite.csv"},
      {"cutoff", "Monte-Carlo cutoff curve for the first k columns",
       {"n", "k", "trials", "seed", "points", "lo", "hi", "out", "threads"}, {"n"}, "cutoff.csv"},
      {"bounds", "mixing upper bound and counting lower bound",
       {"n", "eps", "cls", "inv-abs-gap", "restarts", "iters", "seed", "threads"}, {"n"}, ""},
      {"protocol keygen", "generate a public key and secret trajectory",
       {"n", "t", "seed", "lazy", "key", "secret"}, {"n", "t", "key", "secret"}, ""},
      {"protocol prove", "answer a challenge", {"secret", "key", "challenge", "seed", "dishonest"}, {}, ""},
      {"protocol verify", "check a response against the public key",
       {"key", "challenge", "response", "bit-ops", "deadline"}, {"key", "challenge", "response", "deadline"}, ""},
      {"protocol report", "operation-count separation table", {"n", "t", "out"}, {"n", "t"}, ""},
  };
  return specs;
}

const CommandSpec& command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw CliError(2, "unknown subcommand: " + name);
}

std::string format_value(const std::string& v) { return v; }
std::string format_value(double v) { return fmt::format("{}", v); }
template <typename T>
std::string format_value(T v) {
  return std::to_string(v);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(2, "cannot read config file " + path);
  std::vector<std::string> args;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw CliError(2, fmt::format("{}:{}: expected key=value", path, lineno));
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

// Pulls "--config path" out of args and splices the file's flags in right
// after the subcommand words.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    std::size_t consumed = 0;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CliError(2, "--config needs a path");
      path = args[i + 1];
      consumed = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      consumed = 1;
    } else {
      continue;
    }
    auto lines = read_config_file(path);
    from_file.insert(from_file.end(), lines.begin(), lines.end());
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + consumed));
    --i;
  }
  if (from_file.empty()) return args;
  std::size_t words = 0;
  while (words < args.size() && words < 2 && !args[words].starts_with("-")) ++words;
  if (words == 2 && args[0] != "protocol") words = 1;
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(words), from_file.begin(), from_file.end());
  return args;
}

std::size_t resolve_threads(const ExperimentConfig& c) { return c.threads == 0 ? default_threads() : c.threads; }

void require_range(bool ok, const std::string& message) {
  if (!ok) throw CliError(2, message);
}

struct ExactModel {
  GroupTable gt;
  TransitionStructure ts;
};

ExactModel exact_model(std::size_t n) {
  require_range(n >= 2 && n <= kDefaultEnumerationCap,
                fmt::format("exact analysis needs 2 <= n <= {}", kDefaultEnumerationCap));
  GroupTable gt = enumerate_group(n);
  TransitionStructure ts = build_transition(gt);
  return {std::move(gt), std::move(ts)};
}

// ------------------------------------------------------------- subcommands

int cmd_order(const ExperimentConfig& c, std::ostream& out) {
  require_range(c.n >= 1, "order needs n >= 1");
  out << fmt::format("n = {}\n", c.n);
  if (c.n <= 8) {
    out << fmt::format("order = {}\n", group_order(c.n));
  } else {
    const long double lg = log_group_order(c.n);
    out << fmt::format("order = {:.6e}\n", static_cast<double>(std::exp(lg)));
  }
  out << fmt::format("log_order = {}\n", static_cast<double>(log_group_order(c.n)));
  out << fmt::format("ratio = {:.9f}\n", invertible_fraction(c.n));
  out << fmt::format("limit = {:.9f}\n", invertible_fraction(64));
  return 0;
}

int cmd_walk(const ExperimentConfig& c, std::ostream& out) {
  require_range(c.n >= 2 && c.n <= kMaxChainDim, "walk needs 2 <= n <= 65535");
  RunResult r = tvwalk::run(c.n, c.t, c.seed, c.lazy);
  out << fmt::format("n = {}\nsteps = {}\nactive_moves = {}\nweight = {}\nrank = {}\n", c.n, c.t,
                     r.trajectory.active_moves(), r.final_state.popcount(), rank(r.final_state));
  if (!c.key.empty()) save_matrix(c.key, r.final_state);
  if (!c.secret.empty()) save_trajectory(c.secret, r.trajectory);
  return 0;
}

int cmd_exact(const ExperimentConfig& c, std::ostream& out) {
  require_range(c.eps > 0 && c.eps < 1, "eps must lie in (0, 1)");
  const ExactModel m = exact_model(c.n);
  const std::size_t threads = resolve_threads(c);
  const int period = detect_period(m.ts);
  bool lazy = c.lazy;
  bool switched = false;
  if (period == 2 && !lazy) {
    lazy = true;
    switched = true;
    out << fmt::format("note: the walk is periodic (period 2) for n = {}; using the lazy kernel (P + I)/2\n", c.n);
  }
  const MixingTimes a = mixing_times(m.ts, m.gt, c.eps, lazy, 1'000'000, threads);
  if (!a.converged) throw std::runtime_error("distance did not reach eps within the time limit");
  std::optional<MixingTimes> b;
  if (2 * c.eps < 1) b = mixing_times(m.ts, m.gt, 2 * c.eps, lazy, 1'000'000, threads);

  const std::string kernel = lazy ? "lazy" : "plain";
  out << fmt::format("kernel = {}\n", kernel);
  out << fmt::format("t_mix({}) = {}\n", c.eps, *a.t_tv);
  out << fmt::format("t_mix2({}) = {}\n", c.eps, *a.t_l2);
  std::uint64_t horizon = std::max(*a.t_tv, *a.t_l2);
  if (b && b->converged) {
    out << fmt::format("t_mix2({}) = {}\n", 2 * c.eps, *b->t_l2);
    out << fmt::format("t_mix({}) <= t_mix2({}): {}\n", c.eps, 2 * c.eps,
                       *a.t_tv <= *b->t_l2 ? "holds" : "VIOLATED");
  }
  const std::uint64_t tmax = c.tmax != 0 ? c.tmax : 2 * horizon + 10;

  const auto curve = mixing_curve(m.ts, m.gt, tmax, lazy, threads);
  CsvWriter csv(c.out);
  csv.comment(echo(c));
  csv.comment(fmt::format("kernel {}{}", lazy ? "(P + I)/2" : "P", switched ? " (switched: period 2)" : ""));
  csv.header({"t", "tv", "l2", "lazy_flag"});
  for (const auto& p : curve) csv.row(p.t, p.tv, p.l2, lazy ? 1 : 0);
  csv.flush();
  out << fmt::format("wrote {}\n", c.out);
  return 0;
}

int cmd_spectrum(const ExperimentConfig& c, std::ostream& out) {
  const ExactModel m = exact_model(c.n);
  const SpectralReport s = spectral_report(m.ts);
  out << fmt::format("states = {}\ngap = {}\nabsolute_gap = {}\nlambda_second = {}\nlambda_min = {}\nperiod = {}\n",
                     m.gt.size(), s.gap, s.absolute_gap, s.lambda_second, s.lambda_min, s.period);
  CsvWriter csv(c.out);
  csv.comment(echo(c));
  if (!s.full_spectrum) csv.comment("iterative solve: extremal eigenvalues only (min, second, top)");
  csv.header({"index", "eigenvalue"});
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) csv.row(i, s.eigenvalues[i]);
  csv.flush();
  out << fmt::format("wrote {}\n", c.out);
  return 0;
}

int cmd_lsi(const ExperimentConfig& c, std::ostream& out) {
  require_range(c.n >= 2 && c.n <= kMaxLsiDim, fmt::format("lsi needs 2 <= n <= {}", kMaxLsiDim));
  const ExactModel m = exact_model(c.n);
  LsiOptions opt;
  opt.restarts = c.restarts;
  opt.iterations = c.iters;
  opt.seed = c.seed;
  opt.threads = resolve_threads(c);
  const LsiEstimate e = estimate_lsi_constant(m.ts, m.gt, opt);
  out << fmt::format("witness_ratio = {}\ntwo_over_gap = {}\nlower_bound = {}\nbest_start = {}\nlog_order = {}\n",
                     e.witness_ratio, e.two_over_gap, e.lower_bound, e.best_start,
                     static_cast<double>(log_group_order(c.n)));
  CsvWriter csv(c.out);
  csv.comment(echo(c));
  csv.header({"n", "restarts", "best_ratio", "two_over_gap"});
  csv.row(c.n, c.restarts, e.witness_ratio, e.two_over_gap);
  csv.flush();
  out << fmt::format("wrote {}\n", c.out);
  return 0;
}

int cmd_check(const ExperimentConfig& c, std::ostream& out) {
  std::vector<InequalitySuite> suites;
  const bool all = c.suite == "all";
  if (all) {
    suites = all_suites();
  } else if (auto s = parse_suite(c.suite)) {
    suites.push_back(*s);
  } else {
    throw CliError(2, "unknown suite: " + c.suite);
  }
  require_range(c.n >= 2 && c.n <= kDefaultEnumerationCap, "check needs 2 <= n <= 4");
  SuiteConfig sc;
  sc.n = c.n;
  sc.hypercube_dim = c.d;
  sc.trials = c.trials;
  sc.seed = c.seed;
  sc.threads = resolve_threads(c);

  CsvWriter csv(c.out);
  csv.comment(echo(c));
  csv.header({"check_name", "n", "trials", "violations", "min_slack"});
  std::size_t total = 0;
  for (InequalitySuite s : suites) {
    SuiteResult r;
    try {
      r = run_inequality_suite(s, sc);
    } catch (const std::invalid_argument& e) {
      if (!all) throw CliError(2, e.what());
      out << fmt::format("{}: skipped ({})\n", suite_name(s), e.what());
      continue;
    }
    csv.row(r.check_name, r.n, r.trials, r.violations, r.min_slack);
    out << fmt::format("{:<18} n={} trials={} violations = {} min_slack = {:.6g}\n", r.check_name, r.n, r.trials,
                       r.violations, r.min_slack);
    total += r.violations;
  }
  csv.flush();
  out << fmt::format("wrote {}\n", c.out);
  return total == 0 ? 0 : 1;
}

int cmd_cutoff(const ExperimentConfig& c, std::ostream& out) {
  require_range(c.n >= 2 && c.n <= kMaxChainDim, "cutoff needs 2 <= n <= 65535");
  require_range(c.k >= 1 && c.k <= c.n, "cutoff needs 1 <= k <= n");
  require_range(c.points >= 2, "cutoff needs at least two grid points");
  require_range(c.lo >= 0 && c.hi > c.lo, "cutoff needs 0 <= lo < hi");
  require_range(c.trials >= kMinDiagnosticTrials, "cutoff needs at least 1000 trials");
  std::vector<double> factors(c.points);
  for (std::size_t i = 0; i < c.points; ++i) {
    factors[i] = c.lo + (c.hi - c.lo) * static_cast<double>(i) / static_cast<double>(c.points - 1);
  }
  const auto grid = grid_from_factors(c.n, factors);
  const auto curve = cutoff_experiment(c.n, c.k, grid, c.trials, c.seed, resolve_threads(c));

  CsvWriter csv(c.out);
  csv.comment(echo(c));
  csv.header({"n", "k", "t", "t_over_nlogn", "tv_estimate", "noise_floor", "trials", "seed"});
  for (const auto& p : curve) {
    csv.row(c.n, c.k, p.t, p.t_over_nlogn, p.tv.estimate, p.tv.noise_floor, c.trials, c.seed);
  }
  csv.flush();
  const double nlogn = static_cast<double>(c.n) * std::log(static_cast<double>(c.n));
  if (auto x = crossover_locator(curve)) {
    out << fmt::format("crossing(1/2) = {:.4f} n log n (t = {:.1f})\n", *x / nlogn, *x);
  } else {
    out << "crossing(1/2) = not bracketed by the grid\n";
  }
  out << fmt::format("noise_floor = {:.4f}\n", curve.front().tv.noise_floor);
  out << fmt::format("wrote {}\n", c.out);
  return 0;
}

int cmd_bounds(const ExperimentConfig& c, std::ostream& out) {
  require_range(c.n >= 2, "bounds needs n >= 2");
  require_range(c.eps > 0 && c.eps < 1, "eps must lie in (0, 1)");
  double cls = c.cls;
  double inv_abs_gap = c.inv_abs_gap;
  std::optional<ExactModel> m;
  if ((cls == 0 || inv_abs_gap == 0) && c.n <= kDefaultEnumerationCap) m = exact_model(c.n);
  if (inv_abs_gap == 0) {
    require_range(m.has_value(), "supply --inv-abs-gap for n > 4");
    const SpectralReport s = spectral_report(m->ts);
    inv_abs_gap = s.absolute_gap > 0 ? 1.0 / s.absolute_gap : std::numeric_limits<double>::infinity();
    if (s.period == 2) out << "note: the plain walk is periodic; its absolute gap is 0\n";
  }
  if (cls == 0) {
    require_range(m.has_value() && c.n <= kMaxLsiDim, "supply --cls for n > 3");
    LsiOptions opt;
    opt.restarts = c.restarts;
    opt.iterations = c.iters;
    opt.seed = c.seed;
    opt.threads = resolve_threads(c);
    cls = estimate_lsi_constant(m->ts, m->gt, opt).lower_bound;
    out << "note: cls is the estimator's lower bound, not a certified upper bound\n";
  }
  out << fmt::format("log_log_inverse_pi_star = {}\ncls = {}\ninv_abs_gap = {}\n", log_log_inverse_pi_star(c.n), cls,
                     inv_abs_gap);
  out << fmt::format("mixing_bound({}) = {}\n", c.eps, mixing_bound(c.n, c.eps, cls, inv_abs_gap));
  out << fmt::format("counting_lower_bound({}) = {}\n", c.eps, counting_lower_bound(c.n, c.eps));
  if (m && detect_period(m->ts) == 1) {
    const MixingTimes mt = mixing_times(m->ts, m->gt, c.eps, false, 1'000'000, resolve_threads(c));
    if (mt.converged) out << fmt::format("exact t_mix({0}) = {1}\nexact t_mix2({0}) = {2}\n", c.eps, *mt.t_tv, *mt.t_l2);
  }
  return 0;
}

int cmd_keygen(const ExperimentConfig& c, std::ostream& out) {
  require_range(c.n >= 2 && c.n <= kMaxChainDim, "keygen needs 2 <= n <= 65535");
  const KeyPair kp = keygen(c.n, c.t, c.seed, c.lazy);
  save_matrix(c.key, kp.public_key);
  save_trajectory(c.secret, kp.secret);
  out << fmt::format("n = {}\nt = {}\nactive_moves = {}\nkey = {}\nsecret = {}\n", c.n, c.t,
                     kp.secret.active_moves(), c.key, c.secret);
  return 0;
}

int cmd_prove(const ExperimentConfig& c, std::ostream& out) {
  std::optional<Trajectory> secret;
  std::optional<BitMatrix> key;
  if (c.dishonest) {
    require_range(!c.key.empty(), "a dishonest prover needs --key");
    key = load_matrix(c.key);
  } else {
    require_range(!c.secret.empty(), "an honest prover needs --secret");
    secret = load_trajectory(c.secret);
  }
  const std::size_t n = secret ? secret->n : key->cols();
  Challenge ch;
  if (c.challenge.empty()) {
    Rng rng = make_rng(c.seed);
    ch = random_challenge(n, rng);
  } else {
    ch.x = BitVector::from_string(c.challenge);
  }
  require_range(ch.x.size() == n, "challenge length does not match the key");
  const Response r = secret ? respond_honest(*secret, ch) : respond_dishonest(*key, ch);
  out << fmt::format("challenge = {}\ny = {}\nbit_ops = {}\nword_ops = {}\nrole = {}\n", ch.x.to_string(),
                     r.y.to_string(), r.ops.bit_ops, r.ops.word_ops, c.dishonest ? "dishonest" : "honest");
  return 0;
}

int cmd_verify(const ExperimentConfig& c, std::ostream& out) {
  const BitMatrix key = load_matrix(c.key);
  const Challenge ch{BitVector::from_string(c.challenge)};
  Response r;
  r.y = BitVector::from_string(c.response);
  r.ops.bit_ops = c.bit_ops;
  const Verdict v = verify(key, ch, r, c.deadline);
  out << (v == Verdict::Accept ? "accept\n" : "reject\n");
  return v == Verdict::Accept ? 0 : 1;
}

int cmd_report(const ExperimentConfig& c, std::ostream& out) {
  require_range(c.n >= 1, "report needs n >= 1");
  const auto n = static_cast<std::uint64_t>(c.n);
  const double nn = static_cast<double>(n);
  // The requested t, then the n^2 break-even and the n^2 log n mixing scale.
  const std::vector<std::uint64_t> ts = {c.t, n * n, static_cast<std::uint64_t>(std::ceil(nn * nn * std::log(nn)))};
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + c.out + " for writing");
  }
  CsvWriter csv(c.out.empty() ? out : static_cast<std::ostream&>(file));
  csv.comment(echo(c));
  csv.header({"n", "t", "honest_bit_ops", "dishonest_bit_ops", "dishonest_word_ops", "ratio"});
  for (std::uint64_t t : ts) {
    const SeparationRow r = separation_report(c.n, t);
    csv.row(r.n, t, r.honest_bit_ops, r.dishonest_bit_ops, r.dishonest_word_ops, r.ratio);
  }
  csv.flush();
  return 0;
}

}  // namespace

ExperimentConfig parse_args(const std::vector<std::string>& raw) {
  const std::vector<std::string> args = expand_config(raw);
  ExperimentConfig config;
  CLI::App app{"Transvection walk on GL_n(F_2): exact analysis, inequality checks, diagnostics, protocol",
               "tvwalk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  std::map<CLI::App*, const CommandSpec*> leaves;
  CLI::App* protocol = app.add_subcommand("protocol", "time-based authentication protocol");
  protocol->require_subcommand(1);
  for (const CommandSpec& spec : commands()) {
    CLI::App* leaf = spec.name.starts_with("protocol ")
                         ? protocol->add_subcommand(spec.name.substr(9), spec.help)
                         : app.add_subcommand(spec.name, spec.help);
    leaves[leaf] = &spec;
    visit_fields(config, [&](std::string_view key, auto& field, const char* help) {
      if (!spec.keys.contains(key)) return;
      using T = std::remove_cvref_t<decltype(field)>;
      const std::string flag = "--" + std::string(key);
      CLI::Option* opt = nullptr;
      if constexpr (std::is_same_v<T, bool>) {
        opt = leaf->add_flag(flag, field, help);
      } else {
        opt = leaf->add_option(flag, field, help);
      }
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      if (spec.required.contains(key)) opt->required();
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream text;
    if (app.exit(e, text, text) == 0) throw CliError(0, text.str());
    throw CliError(2, e.what());
  }

  for (auto [leaf, spec] : leaves) {
    if (!leaf->parsed()) continue;
    config.subcommand = spec->name;
    if (config.out.empty()) config.out = spec->default_out;
  }
  return config;
}

std::vector<std::string> to_args(const ExperimentConfig& config) {
  const CommandSpec& spec = command(config.subcommand);
  std::vector<std::string> args;
  if (spec.name.starts_with("protocol ")) {
    args = {"protocol", spec.name.substr(9)};
  } else {
    args = {spec.name};
  }
  visit_fields(config, [&](std::string_view key, const auto& field, const char*) {
    if (!spec.keys.contains(key)) return;
    using T = std::remove_cvref_t<decltype(field)>;
    if constexpr (std::is_same_v<T, bool>) {
      if (field) args.push_back("--" + std::string(key));
    } else {
      args.push_back("--" + std::string(key));
      args.push_back(format_value(field));
    }
  });
  return args;
}

std::string echo(const ExperimentConfig& config) {
  std::string line = "tvwalk";
  for (const auto& a : to_args(config)) {
    line += ' ';
    const bool quote = a.empty() || a.find_first_of(" \t\"'") != std::string::npos;
    line += quote ? "'" + a + "'" : a;
  }
  return line;
}

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  try {
    const std::string& s = c.subcommand;
    if (s == "order") return cmd_order(c, out);
    if (s == "walk") return cmd_walk(c, out);
    if (s == "exact") return cmd_exact(c, out);
    if (s == "spectrum") return cmd_spectrum(c, out);
    if (s == "lsi") return cmd_lsi(c, out);
    if (s == "check") return cmd_check(c, out);
    if (s == "cutoff") return cmd_cutoff(c, out);
    if (s == "bounds") return cmd_bounds(c, out);
    if (s == "protocol keygen") return cmd_keygen(c, out);
    if (s == "protocol prove") return cmd_prove(c, out);
    if (s == "protocol verify") return cmd_verify(c, out);
    if (s == "protocol report") return cmd_report(c, out);
    err << "error: unknown subcommand '" << s << "'\n";
    return 2;
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = parse_args(args);
  } catch (const CliError& e) {
    if (e.code() == 0) {
      out << e.what();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return e.code();
  }
  return run(config, out, err);
}

}  // namespace tvwalk::cli
