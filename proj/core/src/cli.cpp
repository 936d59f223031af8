#include "ucom2/cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "ucom2/baselines.hpp"
#include "ucom2/data_io.hpp"
#include "ucom2/errors.hpp"
#include "ucom2/solver.hpp"
#include "ucom2/verify.hpp"

namespace ucom2::cli {

namespace {

struct GenArgs {
  std::string kind;
  int n = 100;
  int m = 200;
  int k = -1;
  int c = 4;
  double edge_prob = 0.15;
  double hard_frac = 0.2;
  bool plant_colorable = false;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  std::string method = "ucom2";
  double lr = -1.0;
  double beta = -1.0;
  int iters = -1;
  int restarts = -1;
  std::uint64_t seed = 0;
  double time_budget = 1.0;
  int rounds = 0;
  std::string derand = "greedy";
  int samples = 1000;
  std::string out;
};

struct BenchArgs {
  std::vector<std::string> instances;
  std::vector<std::string> methods{"ucom2"};
  int trials = 1;
  std::uint64_t seed = 0;
  double time_budget = 1.0;
  int rounds = 0;
  std::string out;
};

struct VerifyArgs {
  std::string instance;
  int seeds = 5;
  double tol = 1e-9;
};

DerandMethod parse_derand(const std::string& name) {
  if (name == "greedy") return DerandMethod::kGreedy;
  if (name == "greedy-naive") return DerandMethod::kGreedyNaive;
  if (name == "iterative") return DerandMethod::kIterative;
  if (name == "sample") return DerandMethod::kSample;
  throw CLI::ValidationError("--derand", "unknown engine: " + name);
}

int cmd_gen(const GenArgs& args) {
  if (args.kind == "fl") {
    save_instance(args.out, gen_fl_random(args.n, args.seed, args.k));
  } else if (args.kind == "mc") {
    save_instance(args.out, gen_mc_random(args.n, args.m, args.seed, args.k));
  } else if (args.kind == "rc") {
    save_instance(args.out, gen_rc_random(args.n, args.c, args.edge_prob,
                                          args.hard_frac, args.seed,
                                          args.plant_colorable));
  } else {
    throw CLI::ValidationError("--kind", "unknown instance kind: " + args.kind);
  }
  std::cout << "wrote " << args.kind << " instance to " << args.out << "\n";
  return kExitOk;
}

void echo_common(ResultRecord& record, const SolveArgs& args,
                 const std::string& kind) {
  record.set("problem", kind);
  record.set("instance", args.instance);
  record.set("method", args.method);
  record.set("seed", static_cast<std::int64_t>(args.seed));
}

void record_report(ResultRecord& record, const DiscreteReport& report) {
  record.set("objective", report.objective);
  record.set("feasible", static_cast<std::int64_t>(report.feasible ? 1 : 0));
  for (const auto& [key, value] : report.details) record.set(key, value);
}

void record_decision(ResultRecord& record, const DiscreteDecision& decision) {
  std::string flat;
  for (std::size_t i = 0; i < decision.values.size(); ++i) {
    if (i) flat += ' ';
    flat += std::to_string(decision.values[i]);
  }
  record.set("decision", flat);
}

SolveOptions make_solve_options(const SolveArgs& args, SolveOptions opts) {
  if (args.lr > 0.0) opts.optim.learning_rate = args.lr;
  if (args.beta >= 0.0) opts.beta = args.beta;
  if (args.iters > 0) opts.optim.max_iters = args.iters;
  if (args.restarts > 0) opts.optim.restarts = args.restarts;
  opts.optim.seed = args.seed;
  opts.derand = parse_derand(args.derand);
  opts.samples = args.samples;
  return opts;
}

void echo_solve_options(ResultRecord& record, const SolveOptions& opts) {
  record.set("lr", opts.optim.learning_rate);
  record.set("beta", opts.beta);
  record.set("iters", static_cast<std::int64_t>(opts.optim.max_iters));
  record.set("restarts", static_cast<std::int64_t>(opts.optim.restarts));
  record.set("derand", [&] {
    switch (opts.derand) {
      case DerandMethod::kGreedy: return "greedy";
      case DerandMethod::kGreedyNaive: return "greedy-naive";
      case DerandMethod::kIterative: return "iterative";
      case DerandMethod::kSample: return "sample";
    }
    return "greedy";
  }());
  record.set("samples", static_cast<std::int64_t>(opts.samples));
}

Budget make_budget(double seconds, int rounds) {
  return rounds > 0 ? Budget::fixed_rounds(rounds) : Budget::wall_clock(seconds);
}

// Recomputes the objective of the final decision from scratch and embeds
// both values, so a result file carries its own consistency check.
template <class Inst>
void finish_record(ResultRecord& record, const Inst& inst,
                   const DiscreteDecision& decision) {
  record_decision(record, decision);
  record.set("objective_recheck", evaluate_discrete(inst, decision).objective);
}

int cmd_solve(const SolveArgs& args) {
  const Instance loaded = load_instance(args.instance);
  const std::string kind = instance_kind(loaded);

  ResultRecord record;
  echo_common(record, args, kind);

  if (args.method == "ucom2") {
    if (kind == "fl") {
      const auto& inst = std::get<FacilityInstance>(loaded);
      const SolveOptions opts = make_solve_options(args, SolveOptions::fl_defaults());
      const SolveOutcome outcome = solve_fl(inst, opts);
      echo_solve_options(record, opts);
      record_report(record, outcome.report);
      record.set("continuous_loss", outcome.continuous_loss);
      record.set("time_optimize_s", outcome.optimize_seconds);
      record.set("time_derand_s", outcome.derand_seconds);
      record.set("derand_steps", static_cast<std::int64_t>(outcome.trace.steps.size()));
      finish_record(record, inst, outcome.decision);
    } else if (kind == "mc") {
      const auto& inst = std::get<CoverageInstance>(loaded);
      const SolveOptions opts = make_solve_options(args, SolveOptions::mc_defaults());
      const SolveOutcome outcome = solve_mc(inst, opts);
      echo_solve_options(record, opts);
      record_report(record, outcome.report);
      record.set("continuous_loss", outcome.continuous_loss);
      record.set("time_optimize_s", outcome.optimize_seconds);
      record.set("time_derand_s", outcome.derand_seconds);
      record.set("derand_steps", static_cast<std::int64_t>(outcome.trace.steps.size()));
      finish_record(record, inst, outcome.decision);
    } else {
      const auto& inst = std::get<RobustColoringInstance>(loaded);
      const SolveOptions opts = make_solve_options(args, SolveOptions::rc_defaults());
      const SolveOutcome outcome = solve_rc(inst, opts);
      echo_solve_options(record, opts);
      record_report(record, outcome.report);
      record.set("continuous_loss", outcome.continuous_loss);
      record.set("time_optimize_s", outcome.optimize_seconds);
      record.set("time_derand_s", outcome.derand_seconds);
      record.set("derand_steps", static_cast<std::int64_t>(outcome.trace.steps.size()));
      finish_record(record, inst, outcome.decision);
    }
  } else if (args.method == "greedy") {
    if (kind == "fl") {
      const auto& inst = std::get<FacilityInstance>(loaded);
      const BaselineResult base = greedy_fl(inst);
      record_report(record, evaluate_discrete(inst, base.decision));
      record.set("time_total_s", base.wall_time_s);
      finish_record(record, inst, base.decision);
    } else if (kind == "mc") {
      const auto& inst = std::get<CoverageInstance>(loaded);
      const BaselineResult base = greedy_mc(inst);
      record_report(record, evaluate_discrete(inst, base.decision));
      record.set("time_total_s", base.wall_time_s);
      finish_record(record, inst, base.decision);
    } else {
      throw CLI::ValidationError("--method", "greedy supports fl and mc instances");
    }
  } else if (args.method == "greedy-rd") {
    if (kind != "rc") {
      throw CLI::ValidationError("--method", "greedy-rd needs an rc instance");
    }
    const auto& inst = std::get<RobustColoringInstance>(loaded);
    const BaselineResult base = greedy_rd_coloring(
        inst, make_budget(args.time_budget, args.rounds), args.seed);
    record_report(record, evaluate_discrete(inst, base.decision));
    record.set("time_total_s", base.wall_time_s);
    record.set("rounds_run", static_cast<std::int64_t>(base.rounds_run));
    finish_record(record, inst, base.decision);
  } else if (args.method == "random") {
    const Budget budget = make_budget(args.time_budget, args.rounds);
    if (kind == "fl") {
      const auto& inst = std::get<FacilityInstance>(loaded);
      const BaselineResult base = random_select(inst, budget, args.seed);
      record_report(record, evaluate_discrete(inst, base.decision));
      record.set("time_total_s", base.wall_time_s);
      record.set("rounds_run", static_cast<std::int64_t>(base.rounds_run));
      finish_record(record, inst, base.decision);
    } else if (kind == "mc") {
      const auto& inst = std::get<CoverageInstance>(loaded);
      const BaselineResult base = random_select(inst, budget, args.seed);
      record_report(record, evaluate_discrete(inst, base.decision));
      record.set("time_total_s", base.wall_time_s);
      record.set("rounds_run", static_cast<std::int64_t>(base.rounds_run));
      finish_record(record, inst, base.decision);
    } else {
      throw CLI::ValidationError("--method", "random supports fl and mc instances");
    }
  } else {
    throw CLI::ValidationError("--method", "unknown method: " + args.method);
  }

  if (!args.out.empty()) {
    record.write(args.out);
  } else {
    for (const auto& [key, value] : record.entries()) {
      std::cout << key << ' ' << value << "\n";
    }
  }
  return kExitOk;
}

void write_records(const std::string& path, const std::vector<ResultRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const auto& record : records) {
    out << "#UCOM2-RESULT 1\n";
    for (const auto& [key, value] : record.entries()) out << key << ' ' << value << "\n";
    out << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

int cmd_bench(const BenchArgs& args) {
  std::vector<ResultRecord> records;
  for (const std::string& path : args.instances) {
    const Instance loaded = load_instance(path);
    const std::string kind = instance_kind(loaded);
    for (const std::string& method : args.methods) {
      ResultRecord record;
      record.set("instance", path);
      record.set("problem", kind);
      record.set("method", method);
      record.set("trials", static_cast<std::int64_t>(args.trials));

      double sum_obj = 0.0;
      double sum_time = 0.0;
      bool all_feasible = true;
      for (int trial = 0; trial < args.trials; ++trial) {
        SolveArgs one;
        one.instance = path;
        one.method = method;
        one.seed = args.seed + static_cast<std::uint64_t>(trial);
        one.time_budget = args.time_budget;
        one.rounds = args.rounds;

        if (method == "ucom2") {
          if (kind == "fl") {
            const auto& inst = std::get<FacilityInstance>(loaded);
            SolveOptions opts = SolveOptions::fl_defaults();
            opts.optim.seed = one.seed;
            const SolveOutcome outcome = solve_fl(inst, opts);
            sum_obj += outcome.report.objective;
            sum_time += outcome.optimize_seconds + outcome.derand_seconds;
            all_feasible = all_feasible && outcome.report.feasible;
            if (trial == 0) {
              // Ablation hook: compare the derandomization twins on the
              // same optimized state.
              OptimResult opt = optimize_binary(build_fl(inst), opts.optim);
              const DerandTrace fast = greedy_derandomize(build_fl(inst), opt.best_p);
              const DerandTrace slow =
                  greedy_derandomize_naive(build_fl(inst), opt.best_p);
              record.set("derand_incremental_s", fast.wall_time_s);
              record.set("derand_naive_s", slow.wall_time_s);
              record.set("derand_speedup",
                         slow.wall_time_s / std::max(fast.wall_time_s, 1e-12));
              record.set("derand_finals_identical",
                         static_cast<std::int64_t>(
                             fast.final.values == slow.final.values ? 1 : 0));
            }
          } else if (kind == "mc") {
            const auto& inst = std::get<CoverageInstance>(loaded);
            SolveOptions opts = SolveOptions::mc_defaults();
            opts.optim.seed = one.seed;
            const SolveOutcome outcome = solve_mc(inst, opts);
            sum_obj += outcome.report.objective;
            sum_time += outcome.optimize_seconds + outcome.derand_seconds;
            all_feasible = all_feasible && outcome.report.feasible;
          } else {
            const auto& inst = std::get<RobustColoringInstance>(loaded);
            SolveOptions opts = SolveOptions::rc_defaults();
            opts.optim.seed = one.seed;
            const SolveOutcome outcome = solve_rc(inst, opts);
            sum_obj += outcome.report.objective;
            sum_time += outcome.optimize_seconds + outcome.derand_seconds;
            all_feasible = all_feasible && outcome.report.feasible;
          }
        } else if (method == "ucom2-iterative") {
          if (kind == "fl") {
            const auto& inst = std::get<FacilityInstance>(loaded);
            SolveOptions opts = SolveOptions::fl_defaults();
            opts.optim.seed = one.seed;
            opts.derand = DerandMethod::kIterative;
            const SolveOutcome outcome = solve_fl(inst, opts);
            sum_obj += outcome.report.objective;
            sum_time += outcome.optimize_seconds + outcome.derand_seconds;
            all_feasible = all_feasible && outcome.report.feasible;
          } else if (kind == "mc") {
            const auto& inst = std::get<CoverageInstance>(loaded);
            SolveOptions opts = SolveOptions::mc_defaults();
            opts.optim.seed = one.seed;
            opts.derand = DerandMethod::kIterative;
            const SolveOutcome outcome = solve_mc(inst, opts);
            sum_obj += outcome.report.objective;
            sum_time += outcome.optimize_seconds + outcome.derand_seconds;
            all_feasible = all_feasible && outcome.report.feasible;
          } else {
            const auto& inst = std::get<RobustColoringInstance>(loaded);
            SolveOptions opts = SolveOptions::rc_defaults();
            opts.optim.seed = one.seed;
            opts.derand = DerandMethod::kIterative;
            const SolveOutcome outcome = solve_rc(inst, opts);
            sum_obj += outcome.report.objective;
            sum_time += outcome.optimize_seconds + outcome.derand_seconds;
            all_feasible = all_feasible && outcome.report.feasible;
          }
        } else if (method == "greedy" && kind == "fl") {
          const auto& inst = std::get<FacilityInstance>(loaded);
          const BaselineResult base = greedy_fl(inst);
          sum_obj += base.objective;
          sum_time += base.wall_time_s;
          all_feasible = all_feasible && base.feasible;
        } else if (method == "greedy" && kind == "mc") {
          const auto& inst = std::get<CoverageInstance>(loaded);
          const BaselineResult base = greedy_mc(inst);
          sum_obj += base.objective;
          sum_time += base.wall_time_s;
          all_feasible = all_feasible && base.feasible;
        } else if (method == "greedy-rd" && kind == "rc") {
          const auto& inst = std::get<RobustColoringInstance>(loaded);
          const BaselineResult base = greedy_rd_coloring(
              inst, make_budget(args.time_budget, args.rounds), one.seed);
          sum_obj += base.objective;
          sum_time += base.wall_time_s;
          all_feasible = all_feasible && base.feasible;
        } else if (method == "random" && kind == "fl") {
          const auto& inst = std::get<FacilityInstance>(loaded);
          const BaselineResult base = random_select(
              inst, make_budget(args.time_budget, args.rounds), one.seed);
          sum_obj += base.objective;
          sum_time += base.wall_time_s;
          all_feasible = all_feasible && base.feasible;
        } else if (method == "random" && kind == "mc") {
          const auto& inst = std::get<CoverageInstance>(loaded);
          const BaselineResult base = random_select(
              inst, make_budget(args.time_budget, args.rounds), one.seed);
          sum_obj += base.objective;
          sum_time += base.wall_time_s;
          all_feasible = all_feasible && base.feasible;
        } else {
          throw CLI::ValidationError("--methods",
                                     "method '" + method + "' does not apply to '" +
                                         kind + "' instances");
        }
      }
      record.set("mean_objective", sum_obj / args.trials);
      record.set("mean_time_s", sum_time / args.trials);
      record.set("all_feasible", static_cast<std::int64_t>(all_feasible ? 1 : 0));
      records.push_back(std::move(record));
    }
  }

  if (!args.out.empty()) {
    write_records(args.out, records);
  } else {
    for (const auto& record : records) {
      for (const auto& [key, value] : record.entries()) {
        std::cout << key << ' ' << value << "\n";
      }
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args) {
  VerifySuiteOptions opts;
  opts.seeds = args.seeds;
  opts.tol = args.tol;

  std::vector<CheckResult> checks;
  if (args.instance.empty()) {
    checks = verify_bundled(opts);
  } else {
    checks = verify_instance(load_instance(args.instance), opts);
  }
  for (const auto& c : checks) {
    const char* tag = c.skipped ? "[SKIP]" : c.pass ? "[PASS]" : "[FAIL]";
    std::cout << tag << ' ' << c.name << ": " << c.detail << "\n";
  }
  return all_passed(checks) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"probabilistic-objective combinatorial optimization toolkit"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--kind", gen_args.kind, "instance kind: fl, mc, rc")->required();
  gen->add_option("--n", gen_args.n, "nodes / sets");
  gen->add_option("--m", gen_args.m, "items (mc)");
  gen->add_option("--k", gen_args.k, "selection budget (default n/10)");
  gen->add_option("--c", gen_args.c, "colors (rc)");
  gen->add_option("--edge-prob", gen_args.edge_prob, "edge probability (rc)");
  gen->add_option("--hard-frac", gen_args.hard_frac, "hard conflict fraction (rc)");
  gen->add_flag("--plant-colorable", gen_args.plant_colorable,
                "keep the hard subgraph c-colorable by construction (rc)");
  gen->add_option("--seed", gen_args.seed, "random seed");
  gen->add_option("--out", gen_args.out, "output path")->required();

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("--instance", solve_args.instance, "instance path")->required();
  solve->add_option("--method", solve_args.method,
                    "ucom2, greedy, random, greedy-rd");
  solve->add_option("--lr", solve_args.lr, "learning rate");
  solve->add_option("--beta", solve_args.beta, "constraint coefficient");
  solve->add_option("--iters", solve_args.iters, "max iterations");
  solve->add_option("--restarts", solve_args.restarts, "optimizer restarts");
  solve->add_option("--seed", solve_args.seed, "random seed");
  solve->add_option("--time-budget", solve_args.time_budget,
                    "wall-clock budget in seconds (sampling baselines)");
  solve->add_option("--rounds", solve_args.rounds,
                    "fixed round count (overrides --time-budget)");
  solve->add_option("--derand", solve_args.derand,
                    "greedy, greedy-naive, iterative, sample");
  solve->add_option("--samples", solve_args.samples, "samples for --derand sample");
  solve->add_option("--out", solve_args.out, "result path (stdout if omitted)");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "benchmark methods over trials");
  bench->add_option("--instance", bench_args.instances, "instance path (repeatable)")
      ->required();
  bench->add_option("--methods", bench_args.methods,
                    "comma-separated methods")
      ->delimiter(',');
  bench->add_option("--trials", bench_args.trials, "trials per method");
  bench->add_option("--seed", bench_args.seed, "base seed");
  bench->add_option("--time-budget", bench_args.time_budget,
                    "budget for sampling baselines");
  bench->add_option("--rounds", bench_args.rounds, "fixed rounds for baselines");
  bench->add_option("--out", bench_args.out, "table path (stdout if omitted)");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "run the correctness suites");
  verify->add_option("--instance", verify_args.instance,
                     "optional instance to verify");
  verify->add_option("--seeds", verify_args.seeds, "seeds per suite");
  verify->add_option("--tol", verify_args.tol, "tolerance");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen(gen_args);
    if (solve->parsed()) return cmd_solve(solve_args);
    if (bench->parsed()) return cmd_bench(bench_args);
    if (verify->parsed()) return cmd_verify(verify_args);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace ucom2::cli
