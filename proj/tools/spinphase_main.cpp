// spinphase command-line tool.
//
// Subcommands:
//   second-moment   phase-space second moment of a state, selectable method
//   entanglement    concurrence-family measures of a state
//   husimi-grid     Husimi-function values on an angle grid (CSV)
//   ising-sweep     ground-state sweep of the tilted-field Ising chain (CSV)
//   validate        cross-method identity suite on random states
//   make-state      write a named state to a state file
//
// Exit codes: 0 success, 1 runtime or validation failure, 2 usage error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinphase/spinphase.hpp"

namespace {

using namespace spinphase;

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (values.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  return values;
}

// ---------------------------------------------------------------------------
// second-moment

struct SecondMomentArgs {
  std::string source;
  std::string method = "projector";
  int nodes_theta = 3;
  int nodes_phi = 5;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  int streams = 16;
};

int run_second_moment(const SecondMomentArgs& args) {
  const PureState state = load_state_source(args.source);
  SecondMomentReport report;
  if (args.method == "projector") {
    report = second_moment_projector(state);
  } else if (args.method == "purity") {
    report = second_moment_purity(state);
  } else if (args.method == "quadrature") {
    report = second_moment_quadrature(state, {args.nodes_theta, args.nodes_phi});
  } else if (args.method == "montecarlo") {
    report = second_moment_monte_carlo(state, {args.samples, args.seed, args.streams});
  } else {
    throw std::invalid_argument("unknown method: " + args.method);
  }
  std::cout << "state: " << args.source << "\n";
  std::cout << "n_spins: " << state.n_spins() << "\n";
  std::cout << "method: " << args.method << "\n";
  std::cout << "value: " << format_number(report.value) << "\n";
  if (report.std_error) {
    std::cout << "std_error: " << format_number(*report.std_error) << "\n";
    std::cout << "samples: " << report.samples_or_nodes << "\n";
  } else if (args.method == "quadrature") {
    std::cout << "nodes: " << report.samples_or_nodes << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// entanglement

int run_entanglement(const std::string& source, const std::string& measures) {
  const PureState state = load_state_source(source);
  const int n = state.n_spins();
  if (n < 2) throw std::invalid_argument("entanglement: need at least two spins");
  const bool all = measures == "all";
  auto wants = [&](const char* name) {
    return all || measures.find(name) != std::string::npos;
  };

  std::cout << "state: " << source << "\n";
  std::cout << "n_spins: " << n << "\n";
  if (wants("cn")) {
    const double cn = multipartite_concurrence(state);
    std::cout << "c_n: " << format_number(cn) << "\n";
    std::cout << "p_from_c_n: " << format_number(1.0 - 0.25 * cn * cn) << "\n";
  }
  if (wants("cbar")) {
    std::cout << "c_bar_sq: " << format_number(concurrence_vector_length_sq(state))
              << "\n";
  }
  if (n == 2 && (all || wants("pairwise"))) {
    const double c = concurrence_two_spin(state);
    std::cout << "concurrence: " << format_number(c) << "\n";
    std::cout << "p_from_concurrence: " << format_number(1.0 - 0.25 * c * c) << "\n";
  }
  if (wants("pairwise") && n >= 3) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        std::cout << "pairwise_c(" << (i + 1) << "," << (j + 1)
                  << "): " << format_number(concurrence_two_spin_pair(state, i, j))
                  << "\n";
  }
  if (wants("onevsrest")) {
    for (int s = 0; s < n; ++s)
      std::cout << "one_vs_rest_sq(" << (s + 1)
                << "): " << format_number(one_vs_rest_concurrence_sq(state, s))
                << "\n";
  }
  if (n == 3) {
    // Both three-spin decompositions of the second moment.
    const double tau = three_tangle(state);
    if (wants("tau")) std::cout << "tau: " << format_number(tau) << "\n";
    double pair_sq = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const double c = concurrence_two_spin_pair(state, i, j);
        pair_sq += c * c;
      }
    double rest_sq = 0.0;
    for (int s = 0; s < 3; ++s) rest_sq += one_vs_rest_concurrence_sq(state, s);
    std::cout << "p_from_pairwise_and_tangle: "
              << format_number(1.0 - 0.25 * pair_sq - 0.375 * tau) << "\n";
    std::cout << "p_from_one_vs_rest: " << format_number(1.0 - 0.125 * rest_sq)
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// husimi-grid

struct GridVar {
  int site = 0;  // 0-based
  bool is_theta = true;
};

GridVar parse_grid_var(const std::string& name, int n_spins) {
  GridVar var;
  std::string index;
  if (name.rfind("theta", 0) == 0) {
    var.is_theta = true;
    index = name.substr(5);
  } else if (name.rfind("phi", 0) == 0) {
    var.is_theta = false;
    index = name.substr(3);
  } else {
    throw std::invalid_argument("husimi-grid: unknown variable '" + name +
                                "' (use thetaK or phiK, K = 1..N)");
  }
  int k = 0;
  try {
    k = std::stoi(index);
  } catch (const std::exception&) {
    throw std::invalid_argument("husimi-grid: bad variable '" + name + "'");
  }
  if (k < 1 || k > n_spins)
    throw std::invalid_argument("husimi-grid: spin index out of range in '" + name + "'");
  var.site = k - 1;
  return var;
}

struct HusimiGridArgs {
  std::string source;
  std::string scan;
  std::vector<std::string> fixed;
  int res = 101;
  std::string out;
  std::string command_line;
};

int run_husimi_grid(const HusimiGridArgs& args) {
  const PureState state = load_state_source(args.source);
  const int n = state.n_spins();
  if (args.res < 2) throw std::invalid_argument("husimi-grid: --res must be >= 2");

  std::vector<std::string> scan_names;
  {
    std::istringstream in(args.scan);
    std::string item;
    while (std::getline(in, item, ',')) scan_names.push_back(item);
  }
  if (scan_names.empty() || scan_names.size() > 3)
    throw std::invalid_argument("husimi-grid: scan 1 to 3 variables");

  std::vector<GridVar> scan_vars;
  for (const auto& name : scan_names) {
    const GridVar v = parse_grid_var(name, n);
    for (const auto& seen : scan_vars)
      if (seen.site == v.site && seen.is_theta == v.is_theta)
        throw std::invalid_argument("husimi-grid: variable scanned twice: " + name);
    scan_vars.push_back(v);
  }

  std::vector<BlochAngles> base(n);  // fixed angles default to 0
  for (const auto& chunk : args.fixed) {
    std::istringstream in(chunk);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("husimi-grid: --fix expects name=value");
      const GridVar v = parse_grid_var(item.substr(0, eq), n);
      double value = 0.0;
      try {
        value = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("husimi-grid: bad value in '" + item + "'");
      }
      if (v.is_theta)
        base[v.site].theta = value;
      else
        base[v.site].phi = value;
    }
  }

  auto axis_value = [&](const GridVar& v, int step) {
    const double span = v.is_theta ? std::numbers::pi : 2.0 * std::numbers::pi;
    return span * step / (args.res - 1);
  };

  std::ostringstream out;
  out << manifest_comment_block(make_manifest("husimi-grid", args.command_line));
  for (std::size_t i = 0; i < scan_names.size(); ++i) out << scan_names[i] << ",";
  out << "H\n";

  std::vector<int> steps(scan_vars.size(), 0);
  const auto total = static_cast<std::size_t>(
      std::pow(static_cast<double>(args.res), scan_vars.size()));
  std::vector<BlochAngles> angles = base;
  for (std::size_t row = 0; row < total; ++row) {
    std::size_t rest = row;
    for (std::size_t d = scan_vars.size(); d-- > 0;) {
      steps[d] = static_cast<int>(rest % args.res);
      rest /= args.res;
    }
    angles = base;
    for (std::size_t d = 0; d < scan_vars.size(); ++d) {
      const double value = axis_value(scan_vars[d], steps[d]);
      if (scan_vars[d].is_theta)
        angles[scan_vars[d].site].theta = value;
      else
        angles[scan_vars[d].site].phi = value;
    }
    const double h = husimi(state, PhasePoint(angles));
    for (std::size_t d = 0; d < scan_vars.size(); ++d)
      out << format_number(axis_value(scan_vars[d], steps[d])) << ",";
    out << format_number(h) << "\n";
  }
  atomic_write(args.out, out.str());
  std::cout << "wrote " << args.out << " (" << total << " rows)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// ising-sweep

struct IsingSweepArgs {
  int n = 8;
  double j = 1.0;
  std::string theta_list_pi = "0,0.42,0.46,0.48,0.49,0.495,0.4975,0.4995,0.5";
  double g_min = 0.05;
  double g_max = 3.0;
  int g_steps = 60;
  std::string boundary = "periodic";
  int spot_check_every = 10;
  int threads = 0;
  std::string out;
  std::string command_line;
};

int run_ising_sweep(const IsingSweepArgs& args) {
  SweepConfig config;
  config.n_spins = args.n;
  config.j = args.j;
  if (args.boundary == "periodic")
    config.boundary = Boundary::Periodic;
  else if (args.boundary == "open")
    config.boundary = Boundary::Open;
  else
    throw std::invalid_argument("ising-sweep: boundary must be periodic or open");
  for (double t : parse_double_list(args.theta_list_pi, "--theta-list"))
    config.theta_list.push_back(t * std::numbers::pi);
  if (args.g_steps < 1) throw std::invalid_argument("ising-sweep: --g-steps must be >= 1");
  if (args.g_steps == 1) {
    config.g_grid.push_back(args.g_min);
  } else {
    for (int i = 0; i < args.g_steps; ++i)
      config.g_grid.push_back(args.g_min +
                              (args.g_max - args.g_min) * i / (args.g_steps - 1));
  }
  config.spot_check_every = args.spot_check_every;
  config.threads = args.threads;

  const SweepResult result = sweep(config);

  std::ostringstream out;
  out << manifest_comment_block(make_manifest("ising-sweep", args.command_line));
  out << "theta,g,energy,gap,P,cN\n";
  for (const auto& rec : result.records) {
    out << format_number(rec.theta) << "," << format_number(rec.g) << ","
        << format_number(rec.energy) << "," << format_number(rec.gap) << ","
        << format_number(rec.p) << "," << format_number(rec.c_n) << "\n";
  }
  atomic_write(args.out, out.str());
  std::cout << "wrote " << args.out << " (" << result.records.size() << " rows)\n";
  if (result.spot_checked > 0)
    std::cout << "projector cross-check: " << result.spot_checked
              << " points, max deviation "
              << format_number(result.spot_check_max_dev, 3) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// validate

int run_validate(int n_max, int trials, std::uint64_t seed) {
  const auto checks = run_identity_suite(n_max, trials, seed);
  std::printf("%-36s %8s %14s %10s  %s\n", "identity", "trials", "max_dev",
              "tolerance", "status");
  bool ok = true;
  for (const auto& c : checks) {
    std::printf("%-36s %8llu %14.3e %10.1e  %s\n", c.name.c_str(),
                static_cast<unsigned long long>(c.trials), c.max_deviation,
                c.tolerance, c.pass ? "ok" : "FAIL");
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space localization and entanglement measures for spin-1/2 systems"};
  app.set_version_flag("--version", std::string("spinphase ") + kVersion);
  app.require_subcommand(1);
  const std::string command_line = join_args(argc, argv);

  SecondMomentArgs sm;
  auto* sm_cmd = app.add_subcommand("second-moment",
                                    "Second moment of the Husimi function");
  sm_cmd->add_option("state", sm.source,
                     "State source: file path or ghz:N, w:N, bell, "
                     "product:theta,phi;...")->required();
  sm_cmd->add_option("--method", sm.method,
                     "projector | purity | quadrature | montecarlo");
  sm_cmd->add_option("--nodes-theta", sm.nodes_theta, "Quadrature theta nodes");
  sm_cmd->add_option("--nodes-phi", sm.nodes_phi, "Quadrature phi nodes");
  sm_cmd->add_option("--samples", sm.samples, "Monte Carlo samples");
  sm_cmd->add_option("--seed", sm.seed, "Monte Carlo seed");
  sm_cmd->add_option("--streams", sm.streams, "Monte Carlo streams");

  std::string ent_source, ent_measures = "all";
  auto* ent_cmd = app.add_subcommand("entanglement",
                                     "Concurrence-family measures");
  ent_cmd->add_option("state", ent_source, "State source")->required();
  ent_cmd->add_option("--measures", ent_measures,
                      "all or comma list of cn,cbar,pairwise,onevsrest,tau");

  HusimiGridArgs grid;
  grid.command_line = command_line;
  auto* grid_cmd = app.add_subcommand("husimi-grid",
                                      "Husimi function on an angle grid");
  grid_cmd->add_option("state", grid.source, "State source")->required();
  grid_cmd->add_option("--scan", grid.scan,
                       "1-3 comma-separated variables (thetaK or phiK, K=1..N)")
      ->required();
  grid_cmd->add_option("--fix", grid.fixed,
                       "Fixed angles, name=value (radians); default 0");
  grid_cmd->add_option("--res", grid.res, "Points per scanned axis");
  grid_cmd->add_option("--out", grid.out, "Output CSV path")->required();

  IsingSweepArgs sweep_args;
  sweep_args.command_line = command_line;
  auto* sweep_cmd = app.add_subcommand("ising-sweep",
                                       "Ground-state sweep of the tilted-field "
                                       "Ising chain");
  sweep_cmd->add_option("--n", sweep_args.n, "Number of spins");
  sweep_cmd->add_option("--j", sweep_args.j, "Coupling J");
  sweep_cmd->add_option("--theta-list", sweep_args.theta_list_pi,
                        "Field angles in units of pi, comma-separated");
  sweep_cmd->add_option("--g-min", sweep_args.g_min, "Smallest g");
  sweep_cmd->add_option("--g-max", sweep_args.g_max, "Largest g");
  sweep_cmd->add_option("--g-steps", sweep_args.g_steps, "Number of g points");
  sweep_cmd->add_option("--boundary", sweep_args.boundary, "periodic | open");
  sweep_cmd->add_option("--spot-check-every", sweep_args.spot_check_every,
                        "Cross-check every k-th point against the projector "
                        "route (0 disables)");
  sweep_cmd->add_option("--threads", sweep_args.threads,
                        "Worker threads (0 = SPINPHASE_THREADS or hardware)");
  sweep_cmd->add_option("--out", sweep_args.out, "Output CSV path")->required();

  int val_n_max = 8, val_trials = 100;
  std::uint64_t val_seed = 1;
  auto* val_cmd = app.add_subcommand("validate",
                                     "Cross-method identity suite on random states");
  val_cmd->add_option("--n-max", val_n_max, "Largest system size");
  val_cmd->add_option("--trials", val_trials, "Random states per identity and size");
  val_cmd->add_option("--seed", val_seed, "Random seed");

  std::string make_source, make_out;
  std::uint64_t make_seed = 1;
  auto* make_cmd = app.add_subcommand("make-state",
                                      "Write a named state to a state file");
  make_cmd->add_option("state", make_source, "Named state source")->required();
  make_cmd->add_option("--out", make_out, "Output path")->required();
  make_cmd->add_option("--seed", make_seed, "Recorded in the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sm_cmd->parsed()) return run_second_moment(sm);
    if (ent_cmd->parsed()) return run_entanglement(ent_source, ent_measures);
    if (grid_cmd->parsed()) return run_husimi_grid(grid);
    if (sweep_cmd->parsed()) return run_ising_sweep(sweep_args);
    if (val_cmd->parsed()) return run_validate(val_n_max, val_trials, val_seed);
    if (make_cmd->parsed()) {
      const PureState state = make_named_state(make_source);
      const RunManifest manifest = make_manifest("make-state", command_line, make_seed);
      write_state_file(make_out, state, &manifest);
      std::cout << "wrote " << make_out << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
