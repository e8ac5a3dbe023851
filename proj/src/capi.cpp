#include "zcc/zcc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "zcc/analysis.hpp"
#include "zcc/error.hpp"

struct zcc_problem {
  zcc::Problem problem;
  zcc::AnalysisOptions options;
};

namespace {

thread_local std::string last_error;

zcc_status status_of(zcc::ErrorKind kind) {
  switch (kind) {
    case zcc::ErrorKind::Input: return ZCC_ERR_INPUT;
    case zcc::ErrorKind::Numeric: return ZCC_ERR_NUMERIC;
    case zcc::ErrorKind::Cap: return ZCC_ERR_CAP;
  }
  return ZCC_ERR_INTERNAL;
}

template <class F>
zcc_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return ZCC_OK;
  } catch (const zcc::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return ZCC_ERR_INTERNAL;
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* ptr, const char* what) {
  if (!ptr) throw zcc::Error(zcc::ErrorCode::InvalidInput, std::string(what) + " is null");
}

zcc_status make(zcc::Problem p, zcc_problem** out) {
  *out = new zcc_problem{std::move(p), {}};
  return ZCC_OK;
}

}  // namespace

extern "C" {

zcc_status zcc_problem_from_file(const char* path, zcc_problem** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    make(zcc::load_problem(path), out);
  });
}

zcc_status zcc_problem_from_string(const char* text, zcc_problem** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    make(zcc::parse_problem(text), out);
  });
}

zcc_status zcc_problem_builtin(int which, zcc_problem** out) {
  return guarded([&] {
    require(out, "out");
    make(zcc::builtin_problem(which), out);
  });
}

void zcc_problem_free(zcc_problem* p) { delete p; }

zcc_status zcc_problem_set_option(zcc_problem* p, const char* key, const char* value) {
  return guarded([&] {
    require(p, "problem");
    require(key, "key");
    require(value, "value");
    const std::string k = key, v = value;
    std::size_t used = 0;
    try {
      if (k == "tol") {
        const double tol = std::stod(v, &used);
        if (!(tol > 0)) throw std::invalid_argument("tol");
        if (used == v.size()) p->options.tol = tol;
      } else if (k == "seed") {
        const auto seed = std::stoull(v, &used);
        if (used == v.size()) p->options.seed = seed;
      } else if (k == "max_degree") {
        const int deg = std::stoi(v, &used);
        if (deg < 1) throw std::invalid_argument("max_degree");
        if (used == v.size()) p->options.max_degree = deg;
      } else {
        throw zcc::Error(zcc::ErrorCode::InvalidInput, "unknown option '" + k + "'");
      }
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != v.size()) throw zcc::Error(zcc::ErrorCode::InvalidInput, "bad value '" + v + "' for option '" + k + "'");
  });
}

zcc_status zcc_analyze(const zcc_problem* p, char** json_out) {
  return guarded([&] {
    require(p, "problem");
    require(json_out, "json_out");
    *json_out = copy_out(zcc::analyze_json(p->problem, p->options));
  });
}

zcc_status zcc_summary(const zcc_problem* p, char** text_out) {
  return guarded([&] {
    require(p, "problem");
    require(text_out, "text_out");
    *text_out = copy_out(zcc::summary_text(p->problem, p->options));
  });
}

zcc_status zcc_grid(const zcc_problem* p, const char* eps_range, double t_circle, const char* t_segment,
                    int t_points, char** csv_out, char** warnings_out) {
  return guarded([&] {
    require(p, "problem");
    require(eps_range, "eps_range");
    require(csv_out, "csv_out");
    zcc::GridSpec spec;
    zcc::parse_eps_range(eps_range, spec);
    if (t_circle > 0) {
      spec.radius = t_circle;
    } else {
      require(t_segment, "t_segment");
      zcc::parse_t_segment(t_segment, spec);
    }
    spec.t_points = t_points;
    const auto result = zcc::grid_csv(p->problem, spec, p->options);
    std::string warnings;
    for (const auto& w : result.warnings) warnings += w + "\n";
    char* csv = copy_out(result.csv);
    if (warnings_out) {
      try {
        *warnings_out = copy_out(warnings);
      } catch (...) {
        std::free(csv);
        throw;
      }
    }
    *csv_out = csv;
  });
}

void zcc_string_free(char* s) { std::free(s); }

const char* zcc_last_error(void) { return last_error.c_str(); }

const char* zcc_version(void) { return zcc::version_string; }

}  // extern "C"
