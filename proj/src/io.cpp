#include "molp/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "molp/errors.hpp"

namespace molp {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double to_double(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError(line, "expected a number, got '" + std::string(tok) + "'");
  }
  return v;
}

long long to_int(std::string_view tok, std::size_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

std::size_t to_index(std::string_view tok, std::size_t limit, std::size_t line, const char* what) {
  const long long v = to_int(tok, line);
  if (v < 1 || static_cast<unsigned long long>(v) > limit) {
    throw DimensionError("line " + std::to_string(line) + ": " + what + " index " + std::string(tok) +
                         " outside 1.." + std::to_string(limit));
  }
  return static_cast<std::size_t>(v - 1);
}

void expect_count(const std::vector<std::string_view>& tok, std::size_t n, std::size_t line) {
  if (tok.size() != n) {
    throw ParseError(line, "'" + std::string(tok[0]) + "' expects " + std::to_string(n - 1) + " fields");
  }
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line;
    f(text.substr(pos, nl - pos), line);
    pos = nl + 1;
  }
}

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_list(std::span<const double> xs) {
  double scale = 1.0;
  for (double x : xs) scale = std::max(scale, std::abs(x));
  std::string s;
  for (double x : xs) {
    if (!s.empty()) s += ' ';
    s += format_number(std::abs(x) < 1e-9 * scale ? 0.0 : x);
  }
  return s;
}

struct Line {
  std::vector<double> key;
  std::string text;
};

std::vector<double> parse_key(const std::string& text) {
  std::vector<double> key;
  for (auto tok : tokenize(text)) {
    double v = 0.0;
    std::from_chars(tok.data(), tok.data() + tok.size(), v);
    key.push_back(v);
  }
  return key;
}

void emit_sorted(std::vector<std::string> bodies, char tag, std::ostream& out) {
  std::vector<Line> lines;
  for (auto& b : bodies) lines.push_back({parse_key(b), std::move(b)});
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.text < b.text;
  });
  for (const auto& l : lines) out << tag << ' ' << l.text << '\n';
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
  std::string s(buf, ptr);
  if (s == "-0") return "0";
  return s;
}

MolpProblem parse_problem(std::string_view text, std::vector<std::string>* warnings) {
  bool have_header = false;
  bool ended = false;
  std::size_t m = 0, n = 0, p = 0;
  std::map<std::pair<std::size_t, std::size_t>, double> a;
  std::vector<double> c;
  std::vector<double> P;
  std::vector<bool> c_seen, p_seen;
  std::size_t last_line = 0;

  auto warn = [&](std::size_t line, const std::string& what) {
    if (warnings) warnings->push_back("line " + std::to_string(line) + ": duplicate entry " + what + ", last one kept");
  };

  for_each_line(text, [&](std::string_view raw, std::size_t line) {
    last_line = line;
    const auto tok = tokenize(raw);
    if (tok.empty()) return;
    if (ended) throw ParseError(line, "content after 'end'");
    const std::string_view kw = tok[0];
    if (!have_header) {
      if (kw != "problem") throw ParseError(line, "expected 'problem <m> <n> <p>'");
      expect_count(tok, 4, line);
      const long long mm = to_int(tok[1], line), nn = to_int(tok[2], line), pp = to_int(tok[3], line);
      if (mm < 1 || nn < 1 || pp < 1) throw DimensionError("line " + std::to_string(line) + ": m, n and p must be at least 1");
      m = static_cast<std::size_t>(mm);
      n = static_cast<std::size_t>(nn);
      p = static_cast<std::size_t>(pp);
      c.assign(m, 0.0);
      c_seen.assign(m, false);
      P.assign(p * n, 0.0);
      p_seen.assign(p * n, false);
      have_header = true;
      return;
    }
    if (kw == "A") {
      expect_count(tok, 4, line);
      const std::size_t i = to_index(tok[1], m, line, "row");
      const std::size_t j = to_index(tok[2], n, line, "column");
      const double v = to_double(tok[3], line);
      if (!a.emplace(std::pair{i, j}, v).second) {
        a[{i, j}] = v;
        warn(line, "A " + std::string(tok[1]) + " " + std::string(tok[2]));
      }
    } else if (kw == "c") {
      expect_count(tok, 3, line);
      const std::size_t i = to_index(tok[1], m, line, "row");
      if (c_seen[i]) warn(line, "c " + std::string(tok[1]));
      c[i] = to_double(tok[2], line);
      c_seen[i] = true;
    } else if (kw == "P") {
      expect_count(tok, 4, line);
      const std::size_t k = to_index(tok[1], p, line, "objective");
      const std::size_t j = to_index(tok[2], n, line, "column");
      if (p_seen[k * n + j]) warn(line, "P " + std::string(tok[1]) + " " + std::string(tok[2]));
      P[k * n + j] = to_double(tok[3], line);
      p_seen[k * n + j] = true;
    } else if (kw == "end") {
      expect_count(tok, 1, line);
      ended = true;
    } else if (kw == "problem") {
      throw ParseError(line, "repeated 'problem' header");
    } else {
      throw ParseError(line, "unknown keyword '" + std::string(kw) + "'");
    }
  });
  if (!have_header) throw ParseError(last_line, "missing 'problem' header");
  if (!ended) throw ParseError(last_line, "missing 'end'");

  std::vector<Triplet> trip;
  trip.reserve(a.size());
  for (const auto& [ij, v] : a) trip.push_back({ij.first, ij.second, v});
  MolpProblem prob;
  prob.A = SparseMatrix::from_triplets(m, n, trip);
  prob.c = std::move(c);
  prob.P = std::move(P);
  prob.num_objectives = p;
  prob.validate();
  return prob;
}

std::string write_problem(const MolpProblem& problem) {
  std::ostringstream out;
  out << "problem " << problem.m() << ' ' << problem.n() << ' ' << problem.p() << '\n';
  auto trip = problem.A.triplets();
  std::sort(trip.begin(), trip.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  for (const auto& t : trip) out << "A " << t.row + 1 << ' ' << t.col + 1 << ' ' << shortest(t.value) << '\n';
  for (std::size_t i = 0; i < problem.m(); ++i) {
    if (problem.c[i] != 0.0) out << "c " << i + 1 << ' ' << shortest(problem.c[i]) << '\n';
  }
  for (std::size_t k = 0; k < problem.p(); ++k) {
    for (std::size_t j = 0; j < problem.n(); ++j) {
      const double v = problem.objective(k, j);
      if (v != 0.0) out << "P " << k + 1 << ' ' << j + 1 << ' ' << shortest(v) << '\n';
    }
  }
  out << "end\n";
  return out.str();
}

std::vector<std::vector<double>> parse_points(std::string_view text) {
  bool have_header = false;
  bool ended = false;
  std::size_t count = 0, p = 0;
  std::size_t last_line = 0;
  std::vector<std::vector<double>> pts;
  for_each_line(text, [&](std::string_view raw, std::size_t line) {
    last_line = line;
    const auto tok = tokenize(raw);
    if (tok.empty()) return;
    if (ended) throw ParseError(line, "content after 'end'");
    if (!have_header) {
      if (tok[0] != "points") throw ParseError(line, "expected 'points <count> <p>'");
      expect_count(tok, 3, line);
      const long long k = to_int(tok[1], line), d = to_int(tok[2], line);
      if (k < 1 || d < 1) throw DimensionError("line " + std::to_string(line) + ": count and p must be at least 1");
      count = static_cast<std::size_t>(k);
      p = static_cast<std::size_t>(d);
      have_header = true;
      return;
    }
    if (tok[0] == "pt") {
      expect_count(tok, p + 1, line);
      std::vector<double> y(p);
      for (std::size_t i = 0; i < p; ++i) y[i] = to_double(tok[i + 1], line);
      pts.push_back(std::move(y));
    } else if (tok[0] == "end") {
      expect_count(tok, 1, line);
      ended = true;
    } else {
      throw ParseError(line, "unknown keyword '" + std::string(tok[0]) + "'");
    }
  });
  if (!have_header) throw ParseError(last_line, "missing 'points' header");
  if (!ended) throw ParseError(last_line, "missing 'end'");
  if (pts.size() != count) {
    throw DimensionError("header announces " + std::to_string(count) + " points, found " + std::to_string(pts.size()));
  }
  return pts;
}

void emit_solution(const Solution& solution, const RunStats& stats, std::ostream& out, const EmitOptions& options) {
  if (!options.stats_only) {
    std::vector<std::string> v, d, f;
    for (const auto& sv : solution.vertices) v.push_back(format_list(sv.point));
    for (const auto& dir : solution.ideal_vertices) d.push_back(format_list(dir));
    for (const auto& h : solution.facets) {
      std::vector<double> row(h.normal().begin(), h.normal().end());
      row.push_back(h.intercept());
      f.push_back(format_list(row));
    }
    emit_sorted(std::move(v), 'V', out);
    emit_sorted(std::move(d), 'D', out);
    emit_sorted(std::move(f), 'F', out);
  }
  out << "S vertices=" << solution.vertices.size() << " facets=" << solution.facets.size()
      << " oracle_calls=" << stats.oracle_calls << " time=";
  if (options.show_time) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, stats.wall_time, std::chars_format::fixed, 3);
    out << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
  } else {
    out << '-';
  }
  out << '\n';
}

}  // namespace molp
