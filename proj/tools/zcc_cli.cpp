#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "zcc/zcc.h"

namespace {

struct ProblemDeleter {
  void operator()(zcc_problem* p) const { zcc_problem_free(p); }
};
using ProblemPtr = std::unique_ptr<zcc_problem, ProblemDeleter>;

struct StringDeleter {
  void operator()(char* s) const { zcc_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct Globals {
  std::string tol;
  std::string seed;
  std::string max_degree;
};

int fail(zcc_status st) {
  std::cerr << "zcc: " << zcc_last_error() << '\n';
  return static_cast<int>(st);
}

zcc_status apply_options(zcc_problem* p, const Globals& g) {
  const std::pair<const char*, const std::string*> opts[] = {
      {"tol", &g.tol}, {"seed", &g.seed}, {"max_degree", &g.max_degree}};
  for (const auto& [key, value] : opts) {
    if (value->empty()) continue;
    if (auto st = zcc_problem_set_option(p, key, value->c_str()); st != ZCC_OK) return st;
  }
  return ZCC_OK;
}

int write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "zcc: cannot write '" << path << "'\n";
    return ZCC_ERR_INPUT;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-cycle center analysis for polynomial deformations"};
  app.set_version_flag("--version", std::string(zcc_version()));
  app.require_subcommand(1);

  Globals g;
  app.add_option("--tol", g.tol, "Newton tolerance for path tracking");
  app.add_option("--seed", g.seed, "Seed for randomized stability checks");
  app.add_option("--max-degree", g.max_degree, "Largest accepted deg f (default 12)");

  std::string problem_path, out_path;
  auto* analyze = app.add_subcommand("analyze", "Write the JSON report for a problem file");
  analyze->fallthrough();
  analyze->add_option("file", problem_path, "Problem file")->required();
  analyze->add_option("--out", out_path, "Report path (default stdout)");

  std::string eps_range, t_seg, csv_path;
  double t_circle = 0.0;
  int t_points = 12;
  auto* grid = app.add_subcommand("grid", "Sample the displacement on a (t, eps) grid as CSV");
  grid->fallthrough();
  grid->add_option("file", problem_path, "Problem file")->required();
  grid->add_option("--eps", eps_range, "eps range start:stop:step")->required();
  auto* circle_opt = grid->add_option("--t-circle", t_circle, "t on the circle |t| = R")->check(CLI::PositiveNumber);
  auto* seg_opt = grid->add_option("--t-seg", t_seg, "t on the segment z1:z2");
  circle_opt->excludes(seg_opt);
  grid->add_option("--t-points", t_points, "Points along the t curve")->check(CLI::Range(1, 100000));
  grid->add_option("--csv", csv_path, "CSV path (default stdout)");

  int which = 0;
  auto* example = app.add_subcommand("example", "Run a built-in example and print a summary");
  example->fallthrough();
  example->add_option("which", which, "1 or 2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ZCC_ERR_INPUT;
  }

  zcc_problem* raw = nullptr;
  zcc_status st = ZCC_OK;
  if (*example)
    st = zcc_problem_builtin(which, &raw);
  else
    st = zcc_problem_from_file(problem_path.c_str(), &raw);
  if (st != ZCC_OK) return fail(st);
  ProblemPtr problem(raw);
  if ((st = apply_options(problem.get(), g)) != ZCC_OK) return fail(st);

  if (*analyze) {
    char* json = nullptr;
    if ((st = zcc_analyze(problem.get(), &json)) != ZCC_OK) return fail(st);
    OwnedString owned(json);
    return write_output(out_path, json);
  }

  if (*grid) {
    if (t_circle <= 0 && t_seg.empty()) {
      std::cerr << "zcc: grid needs --t-circle or --t-seg\n";
      return ZCC_ERR_INPUT;
    }
    char* csv = nullptr;
    char* warnings = nullptr;
    st = zcc_grid(problem.get(), eps_range.c_str(), t_circle, t_seg.c_str(), t_points, &csv, &warnings);
    if (st != ZCC_OK) return fail(st);
    OwnedString owned_csv(csv), owned_warnings(warnings);
    if (warnings && *warnings) std::cerr << warnings;
    return write_output(csv_path, csv);
  }

  char* text = nullptr;
  if ((st = zcc_summary(problem.get(), &text)) != ZCC_OK) return fail(st);
  OwnedString owned(text);
  return write_output("", text);
}
