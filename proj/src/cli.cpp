// Copyright 2026 The conbound Authors. All Rights Reserved.
//
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
// =============================================================================
#include "conbound/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "conbound/classical.hpp"
#include "conbound/error.hpp"
#include "conbound/experiments.hpp"
#include "conbound/io.hpp"
#include "conbound/lambertw.hpp"
#include "conbound/portfolio.hpp"
#include "conbound/refined.hpp"

namespace conbound::cli {
namespace {

struct RunConfig {
  std::string seed_text;
  std::string format;
  double w_tolerance = WConfig{}.relative_tolerance;
  int w_max_iterations = WConfig{}.max_iterations;
  bool polish = false;

  std::uint64_t seed = 42;
  RefinedOptions refined;
};

struct BoundArgs {
  std::string input;
  std::string tail = "upper";
  double t = 0.0;
  std::string methods = "all";
};

struct PortfolioArgs {
  std::string input;
  std::optional<double> tau;
  std::optional<double> threshold_total;
  std::optional<double> t;
  std::optional<int> sweep;
  bool assess_only = false;
};

struct ExperimentArgs {
  std::string kind;
  double mu = 0.0;
  double sigma = 0.5;
  int points = 200;
  int n = 10;
  double z = 2.0;
  std::optional<int> trials;
  int instances = 100;
  int n_max = 10;
  unsigned threads = 0;
  std::string out;
};

struct LambertArgs {
  std::string form;
  double x = 0.0;
};

io::Format pick_format(const RunConfig& cfg, io::Format fallback) {
  return cfg.format.empty() ? fallback : io::parse_format(cfg.format);
}

// Writes into the named file, or `out` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn fn) {
  if (path.empty()) {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  fn(file);
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

std::vector<Method> parse_methods(const std::string& text) {
  if (text == "all") {
    return {Method::Refined, Method::Bennett, Method::Bernstein, Method::Hoeffding};
  }
  std::vector<Method> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_method(item));
  }
  if (out.empty()) throw DomainError("no methods selected");
  return out;
}

int cmd_bound(const BoundArgs& args, const RunConfig& cfg, std::ostream& out) {
  const auto data = io::read_csv_file(args.input);
  std::vector<VariableSpec> vars;
  if (io::is_investment_header(data.header)) {
    for (const auto& inv : io::parse_investments(data)) vars.push_back(inv.as_floor_spec());
  } else {
    vars = io::parse_variables(data);
  }
  if (args.tail != "upper" && args.tail != "lower") {
    throw DomainError("--tail must be upper or lower");
  }
  const bool lower = args.tail == "lower";
  std::vector<BoundResult> results;
  for (Method m : parse_methods(args.methods)) {
    if (m == Method::Hoeffding) {
      std::vector<RangeSpec> ranges;
      for (const auto& v : vars) {
        if ((v.bound_side == BoundSide::Floor) != lower) {
          throw DomainError(std::string(lower ? "lower" : "upper") +
                            "-tail bounds need " + (lower ? "floor" : "ceiling") +
                            "-sided variables");
        }
        ranges.push_back(optimistic_range(v));
      }
      results.push_back(hoeffding_upper(ranges, args.t));
    } else {
      results.push_back(lower ? lower_tail(m, vars, args.t, cfg.refined)
                              : upper_tail(m, vars, args.t, cfg.refined));
    }
  }
  io::write(out, io::bound_table(results), pick_format(cfg, io::Format::Table));
  return kOk;
}

int cmd_portfolio(const PortfolioArgs& args, const RunConfig& cfg, std::ostream& out) {
  const auto investments = io::parse_investments(io::read_csv_file(args.input));
  const auto format = pick_format(cfg, io::Format::Table);
  const int given = args.tau.has_value() + args.threshold_total.has_value() + args.t.has_value();

  if (args.assess_only) {
    if (args.tau || given != 1) {
      throw CLI::ValidationError("--assess-only needs exactly one of --threshold-total or --t");
    }
    double threshold = 0.0;
    if (args.threshold_total) {
      threshold = *args.threshold_total;
    } else {
      double mu_total = 0.0;
      for (const auto& inv : investments) mu_total += inv.mu;
      threshold = mu_total - static_cast<double>(investments.size()) * *args.t;
    }
    std::vector<BoundResult> results;
    for (Method m : parse_methods("all")) {
      results.push_back(underperformance_bound(investments, threshold, m, cfg.refined));
    }
    io::write(out, io::bound_table(results), format);
    return kOk;
  }

  if (args.sweep) {
    if (given != 0) throw CLI::ValidationError("--sweep takes no --tau, --t or --threshold-total");
    const auto grid = default_tau_grid(investments, *args.sweep);
    const auto entries = allocation_sweep(investments, grid, cfg.refined.w);
    io::write(out, io::sweep_table(entries, investments.size()), format);
    return kOk;
  }

  if (args.threshold_total) {
    throw CLI::ValidationError("--threshold-total applies only with --assess-only");
  }
  if (given != 1) throw CLI::ValidationError("give exactly one of --tau or --t");
  const auto result = args.tau ? allocate(investments, *args.tau, cfg.refined.w)
                               : allocate_for_deviation(investments, *args.t, cfg.refined.w);
  if (format == io::Format::Table) {
    io::Table t;
    t.columns = {"name", "alpha", "lambda"};
    for (std::size_t i = 0; i < investments.size(); ++i) {
      t.rows.push_back({investments[i].name, result.weights[i], result.lambdas[i]});
    }
    io::write(out, t, format);
    out << "tau " << result.tau << "  phi_bound " << result.phi_bound << '\n';
  } else {
    io::write(out, io::allocation_table(result), format);
  }
  return kOk;
}

int cmd_experiment(const ExperimentArgs& args, const RunConfig& cfg, std::ostream& out,
                   std::ostream& err) {
  const auto format = pick_format(cfg, io::Format::Csv);
  if (args.kind == "homogeneous") {
    const auto grid = default_t_grid(args.mu, args.points);
    const auto entries = homogeneous_sweep(args.mu, args.sigma, grid, cfg.refined);
    std::vector<ExperimentRecord> records;
    for (const auto& e : entries) {
      if (e.record) {
        records.push_back(*e.record);
      } else {
        err << "t = " << e.t << ": " << e.error << '\n';
      }
    }
    emit(args.out, out, [&](std::ostream& os) {
      io::write(os, io::experiment_table(records), format);
    });
    return kOk;
  }
  if (args.kind == "heterogeneous") {
    const auto records = heterogeneous_trials(args.n, args.z, args.trials.value_or(1000),
                                              cfg.seed, cfg.refined, args.threads);
    emit(args.out, out, [&](std::ostream& os) {
      io::write(os, io::experiment_table(records), format);
    });
    for (const auto& [m, rate] : refined_win_rates(records)) {
      err << "refined beats " << to_string(m) << " in " << rate * 100.0 << "% of trials\n";
    }
    return kOk;
  }
  // validate
  ValidationConfig vc;
  vc.instances = args.instances;
  vc.trials = args.trials.value_or(100000);
  vc.n_max = args.n_max;
  vc.seed = cfg.seed;
  vc.threads = args.threads;
  vc.refined = cfg.refined;
  const auto report = validate_bounds(vc);
  if (!args.out.empty()) {
    emit(args.out, out, [&](std::ostream& os) {
      io::write(os, io::validation_table(report.rows), format);
    });
  }
  out << report.violations << " violations in " << report.rows.size() << " checks\n";
  return report.violations == 0 ? kOk : kFailure;
}

int cmd_lambertw(const LambertArgs& args, const RunConfig& cfg, std::ostream& out) {
  double w = 0.0;
  double residual = 0.0;
  if (args.form == "direct") {
    w = lambert_w(args.x, cfg.refined.w);
    residual = w * std::exp(w) - args.x;
  } else {
    w = lambert_w_exp(args.x, cfg.refined.w);
    residual = w + std::log(w) - args.x;
  }
  io::Table t;
  t.columns = {"form", "x", "w", "residual"};
  t.rows.push_back({args.form, args.x, w, residual});
  const auto format = pick_format(cfg, io::Format::Table);
  if (format == io::Format::Table) {
    std::ostringstream line;
    line.precision(10);
    line << w << "  (residual " << residual << ")\n";
    out << line.str();
  } else {
    io::write(out, t, format);
  }
  return kOk;
}

}  // namespace

std::optional<std::uint64_t> parse_seed(std::string_view text) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
    base = 16;
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, base);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return v;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concentration bounds for sums of bounded random variables"};
  app.name("conbound");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  if (const char* env = std::getenv(kSeedEnv)) cfg.seed_text = env;
  app.add_option("--seed", cfg.seed_text,
                 std::string("Random seed, decimal or 0x hex (default 42, or $") + kSeedEnv +
                     ")");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  app.add_option("--w-tol", cfg.w_tolerance, "Lambert W relative tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--w-max-iter", cfg.w_max_iterations, "Lambert W iteration cap")
      ->check(CLI::PositiveNumber);
  app.add_flag("--polish", cfg.polish,
               "Refine the closed-form multiplier by a 1-D search and keep the tighter bound");

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Tail bounds for a list of variables");
  bound_cmd->add_option("input", bound.input, "CSV: mu,sigma,bound,side or name,mu,sigma,floor")
      ->required();
  bound_cmd->add_option("--tail", bound.tail, "upper or lower")
      ->check(CLI::IsMember({"upper", "lower"}));
  bound_cmd->add_option("--t", bound.t, "Deviation of the average from its mean")->required();
  bound_cmd->add_option("--methods", bound.methods,
                        "all, or a comma list of hoeffding,bennett,bernstein,refined");

  PortfolioArgs port;
  auto* port_cmd = app.add_subcommand("portfolio", "Underperformance bounds and allocation");
  port_cmd->add_option("input", port.input, "CSV: name,mu,sigma,floor")->required();
  port_cmd->add_option("--tau", port.tau, "Target return per unit budget");
  port_cmd->add_option("--threshold-total", port.threshold_total,
                       "Total payoff threshold (with --assess-only)");
  port_cmd->add_option("--t", port.t, "Tolerated deviation, in (0, min(mu_i - L_i))");
  port_cmd->add_option("--sweep", port.sweep, "Allocate on N targets across the admissible range")
      ->check(CLI::PositiveNumber);
  port_cmd->add_flag("--assess-only", port.assess_only,
                     "Bound the underperformance probability by every method");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Synthetic comparisons and validity checks");
  exp_cmd->add_option("kind", exp.kind, "homogeneous, heterogeneous or validate")
      ->required()
      ->check(CLI::IsMember({"homogeneous", "heterogeneous", "validate"}));
  exp_cmd->add_option("--mu", exp.mu, "Homogeneous mean (M = 1, L = -1)");
  exp_cmd->add_option("--sigma", exp.sigma, "Homogeneous standard deviation");
  exp_cmd->add_option("--points", exp.points, "Homogeneous t-grid size")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--n", exp.n, "Variables per heterogeneous instance")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--z", exp.z, "Variance shrink factor (>= 1)");
  exp_cmd->add_option("--trials", exp.trials,
                      "Heterogeneous instances (default 1000) or Monte Carlo draws per "
                      "validation instance (default 100000)")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--instances", exp.instances, "Validation instances")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--n-max", exp.n_max, "Largest n in validation")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--threads", exp.threads, "Worker threads (0: all cores)");
  exp_cmd->add_option("--out", exp.out, "Output file (default stdout)");

  LambertArgs lw;
  auto* lw_cmd = app.add_subcommand("lambertw", "Evaluate Lambert W");
  lw_cmd->add_option("form", lw.form, "direct: W(x); exp: W(exp(x))")
      ->required()
      ->check(CLI::IsMember({"direct", "exp"}));
  lw_cmd->add_option("x", lw.x, "Argument")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParse;
  }

  try {
    if (!cfg.seed_text.empty()) {
      const auto seed = parse_seed(cfg.seed_text);
      if (!seed) {
        err << "error: seed '" << cfg.seed_text << "' is not decimal or 0x hex\n";
        return kParse;
      }
      cfg.seed = *seed;
    }
    cfg.refined.polish = cfg.polish;
    cfg.refined.w.relative_tolerance = cfg.w_tolerance;
    cfg.refined.w.max_iterations = cfg.w_max_iterations;

    if (*bound_cmd) return cmd_bound(bound, cfg, out);
    if (*port_cmd) return cmd_portfolio(port, cfg, out);
    if (*exp_cmd) return cmd_experiment(exp, cfg, out, err);
    return cmd_lambertw(lw, cfg, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const DegenerateInputError& e) {
    err << "degenerate input: " << e.what() << '\n';
    return kDomain;
  } catch (const IterationError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace conbound::cli
