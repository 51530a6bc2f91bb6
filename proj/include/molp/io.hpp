#pragma once

// Text formats.
//
// Problem files are line oriented; '#' starts a comment:
//
//     problem <m> <n> <p>
//     A <i> <j> <value>      1 <= i <= m, 1 <= j <= n
//     c <i> <value>
//     P <k> <j> <value>      1 <= k <= p
//     end
//
// Entries not mentioned are zero. A repeated entry overrides the earlier one.
// Point files for the convex hull use `points <count> <p>`, then one
// `pt <p values>` line per point, then `end`.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "molp/problem.hpp"
#include "molp/solver.hpp"

namespace molp {

/// Throws ParseError (with line number) or DimensionError. Duplicate entries
/// append a message to `warnings` when given.
MolpProblem parse_problem(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Inverse of parse_problem; values are written with round-trip precision.
std::string write_problem(const MolpProblem& problem);

std::vector<std::vector<double>> parse_points(std::string_view text);

/// 9 significant digits, locale independent; tiny values and -0 print as 0.
std::string format_number(double x);

struct EmitOptions {
  bool stats_only = false;
  bool show_time = true;
};

/// V (vertices), D (ideal directions) and F (facets) lines, each group sorted,
/// followed by the summary line.
void emit_solution(const Solution& solution, const RunStats& stats, std::ostream& out,
                   const EmitOptions& options = {});

}  // namespace molp
