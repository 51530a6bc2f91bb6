// molp-solve: vertices and facets of the upper image of a multiobjective LP,
// or of the convex hull of a point set.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "molp/errors.hpp"
#include "molp/io.hpp"
#include "molp/solver.hpp"

namespace {

enum Exit { kSolved = 0, kInfeasible = 1, kUnbounded = 2, kParse = 3, kNumerical = 4 };

std::string read_all(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertices and facets of the upper image of a multiobjective linear program"};

  std::string input = "-";
  std::string output;
  std::string algorithm = "inner";
  std::string oracle = "strong";
  std::string strategy = "sequential";
  std::size_t pool_size = 10;
  int threads = 1;
  std::uint64_t seed = 1;
  double eps = 1e-8;
  bool stats_only = false;
  bool no_time = false;

  app.add_option("input", input, "problem file ('-' for stdin)");
  app.add_option("-o,--output", output, "write the listing here instead of stdout");
  app.add_option("--algorithm", algorithm, "inner, outer or hull")
      ->check(CLI::IsMember({"inner", "outer", "hull"}));
  auto* oracle_opt = app.add_option("--oracle", oracle, "weak, random or strong")
                         ->check(CLI::IsMember({"weak", "random", "strong"}));
  app.add_option("--strategy", strategy, "sequential, random or pool")
      ->check(CLI::IsMember({"sequential", "random", "pool"}));
  app.add_option("--pool-size", pool_size, "pool strategy size")->check(CLI::Range(10, 100));
  app.add_option("--threads", threads, "worker threads for the pair tests")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for the random strategy and the random oracle");
  app.add_option("--eps", eps, "side tolerance")->check(CLI::Range(1e-14, 1e-3));
  app.add_flag("--stats-only", stats_only, "print only the summary line");
  app.add_flag("--no-time", no_time, "print time=- so that runs compare byte for byte");

  CLI11_PARSE(app, argc, argv);

  if (algorithm == "hull" && oracle_opt->count() > 0) {
    std::cerr << "molp-solve: --oracle does not apply to --algorithm hull\n";
    return kParse;
  }

  molp::SolverOptions opts;
  opts.oracle.mode = oracle == "weak"     ? molp::OracleMode::WeakFixed
                     : oracle == "random" ? molp::OracleMode::WeakRandom
                                          : molp::OracleMode::Strong;
  opts.oracle.rng_seed = seed;
  opts.oracle.tol.eps_side = eps;
  opts.oracle.tol.eps_zero = std::min(opts.oracle.tol.eps_zero, eps);
  opts.strategy.kind = strategy == "random" ? molp::StrategyKind::Random
                       : strategy == "pool" ? molp::StrategyKind::Pool
                                            : molp::StrategyKind::Sequential;
  opts.strategy.pool_size = pool_size;
  opts.strategy.seed = seed;
  opts.engine.threads = threads;

  try {
    const std::string text = read_all(input);
    std::pair<molp::Solution, molp::RunStats> result;
    if (algorithm == "hull") {
      result = molp::convex_hull(molp::parse_points(text), opts);
    } else {
      std::vector<std::string> warnings;
      const molp::MolpProblem problem = molp::parse_problem(text, &warnings);
      for (const auto& w : warnings) std::cerr << "molp-solve: warning: " << w << '\n';
      result = algorithm == "outer" ? molp::solve_outer(problem, opts) : molp::solve_inner(problem, opts);
    }
    const molp::EmitOptions emit{stats_only, !no_time};
    if (output.empty()) {
      molp::emit_solution(result.first, result.second, std::cout, emit);
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + output);
      molp::emit_solution(result.first, result.second, out, emit);
    }
    return kSolved;
  } catch (const molp::InfeasibleError& e) {
    std::cerr << "molp-solve: infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const molp::UnboundedObjectiveError& e) {
    std::cerr << "molp-solve: unbounded objective " << e.index() + 1 << ": " << e.what() << '\n';
    return kUnbounded;
  } catch (const molp::ParseError& e) {
    std::cerr << "molp-solve: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const molp::DimensionError& e) {
    std::cerr << "molp-solve: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const molp::DegenerateInput& e) {
    std::cerr << "molp-solve: degenerate input: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "molp-solve: " << e.what() << '\n';
    return kNumerical;
  }
}
