#include "zcc/problem.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "zcc/error.hpp"

namespace zcc {

namespace {

std::string_view trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

template <class T>
T parse_integer(std::string_view key, std::string_view s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidInput, std::string(key) + ": expected an integer, got '" + std::string(s) + "'");
  return value;
}

double parse_real(std::string_view key, std::string_view s) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !(value > 0.0))
    throw Error(ErrorCode::InvalidInput, std::string(key) + ": expected a positive number, got '" + std::string(s) + "'");
  return value;
}

GaussRational parse_literal(std::string_view key, std::string_view s) {
  try {
    return GaussRational::parse(s);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidInput, std::string(key) + ": " + e.what());
  }
}

std::vector<GaussRational> parse_literals(std::string_view key, std::string_view s) {
  std::vector<GaussRational> out;
  for (const auto& item : split_list(s)) out.push_back(parse_literal(key, item));
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
  return s;
}

}  // namespace

Problem parse_problem(std::string_view text) {
  std::map<std::string, std::string, std::less<>> table;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) + ": empty key");
    if (!table.emplace(key, value).second) throw Error(ErrorCode::InvalidInput, "duplicate key '" + key + "'");
  }

  Problem p;
  bool have_f = false, have_g = false, have_w = false;
  for (const auto& [key, value] : table) {
    if (key == "name") {
      p.name = value;
    } else if (key == "f.coeffs") {
      p.f = Polynomial(parse_literals(key, value));
      have_f = true;
    } else if (key == "g.coeffs") {
      p.g = Polynomial(parse_literals(key, value));
      have_g = true;
    } else if (key == "cycle.weights") {
      for (const auto& item : split_list(value)) p.weights.push_back(parse_integer<long>(key, item));
      have_w = true;
    } else if (key == "base.t0") {
      p.base_t0 = parse_literal(key, value);
    } else if (key == "seed") {
      p.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "melnikov.t") {
      p.melnikov_t = parse_literals(key, value);
    } else if (key == "melnikov.m2_reference") {
      p.m2_reference = parse_literal(key, value);
    } else if (key == "tracker.newton_tol") {
      p.tracker.newton_tol = parse_real(key, value);
    } else if (key == "tracker.initial_step") {
      p.tracker.initial_step = parse_real(key, value);
    } else if (key == "tracker.min_step") {
      p.tracker.min_step = parse_real(key, value);
    } else if (key == "tracker.collision_guard") {
      p.tracker.collision_guard = parse_real(key, value);
    } else if (key == "tracker.max_steps") {
      p.tracker.max_steps = parse_integer<long>(key, value);
    } else {
      throw Error(ErrorCode::InvalidInput, "unknown key '" + key + "'");
    }
  }
  if (!have_f || !have_g || !have_w)
    throw Error(ErrorCode::InvalidInput, "f.coeffs, g.coeffs and cycle.weights are required");
  p.tracker.validate();
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string to_text(const Problem& p) {
  std::ostringstream os;
  if (!p.name.empty()) os << "name = " << p.name << '\n';
  os << "f.coeffs = " << join(coefficient_strings(p.f)) << '\n';
  os << "g.coeffs = " << (p.g.is_zero() ? std::string("0") : join(coefficient_strings(p.g))) << '\n';
  std::vector<std::string> w;
  for (long x : p.weights) w.push_back(std::to_string(x));
  os << "cycle.weights = " << join(w) << '\n';
  if (p.base_t0) os << "base.t0 = " << p.base_t0->to_string() << '\n';
  if (!p.melnikov_t.empty()) {
    std::vector<std::string> ts;
    for (const auto& t : p.melnikov_t) ts.push_back(t.to_string());
    os << "melnikov.t = " << join(ts) << '\n';
  }
  if (p.m2_reference) os << "melnikov.m2_reference = " << p.m2_reference->to_string() << '\n';
  os << "seed = " << p.seed << '\n';
  return os.str();
}

Problem builtin_problem(int which) {
  const auto lit = [](const char* s) { return GaussRational::parse(s); };
  Problem p;
  if (which == 1) {
    p.name = "example 1";
    p.f = Polynomial::monomial(1, 6);
    p.g = Polynomial{0, 0, 1, 1};
    p.weights = {2, 1, -1, -2, -1, 1};
    p.melnikov_t = {lit("1"), lit("2"), lit("1+i")};
    p.m2_reference = lit("-17/12");
  } else if (which == 2) {
    p.name = "example 2";
    p.f = Polynomial::monomial(1, 4);
    p.g = Polynomial{lit("1/3"), 0, 1, 0, lit("1/2")};
    p.weights = {1, 1, -1, -1};
    p.melnikov_t = {lit("2"), lit("3")};
  } else {
    throw Error(ErrorCode::InvalidInput, "unknown example " + std::to_string(which) + " (expected 1 or 2)");
  }
  return p;
}

Setup build(const Problem& p, int max_degree) {
  if (p.f.degree() < 1) throw Error(ErrorCode::InvalidInput, "f must have degree at least 1");
  if (p.g.degree() > p.f.degree()) throw Error(ErrorCode::InvalidInput, "deg g must not exceed deg f");
  if (p.f.degree() > max_degree)
    throw Error(ErrorCode::DegreeCapExceeded,
                "degree " + std::to_string(p.f.degree()) + " exceeds --max-degree " + std::to_string(max_degree));
  Deformation d(p.f, p.g);
  const Complex t0 = p.base_t0 ? p.base_t0->to_complex() : default_base_t(d);
  LabeledFiber base;
  try {
    base = fiber(d, t0, 0.0, p.tracker);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OnDiscriminant) throw;
    throw Error(ErrorCode::InvalidInput, "base.t0 is a critical value of f");
  }
  ZeroCycle c = make_cycle(p.weights, std::move(base));
  return {std::move(d), std::move(c)};
}

}  // namespace zcc
