#include "zcc/analysis.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "zcc/error.hpp"

namespace zcc {

using json = nlohmann::ordered_json;

namespace {

constexpr double kM2Agreement = 1e-6;
constexpr double kReferenceTol = 1e-6;
constexpr double kBadEpsGuard = 1e-6;
constexpr int kFitOrder = 2;

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json partition_json(const Partition& p) {
  json out = json::array();
  for (const auto& b : p) out.push_back(b);
  return out;
}

TrackerConfig effective_tracker(const Problem& p, const AnalysisOptions& opt) {
  TrackerConfig cfg = p.tracker;
  if (opt.tol > 0) cfg.newton_tol = opt.tol;
  cfg.validate();
  return cfg;
}

std::uint64_t effective_seed(const Problem& p, const AnalysisOptions& opt) { return opt.seed.value_or(p.seed); }

// Everything the report and the summary are built from.
struct Analysis {
  explicit Analysis(Setup s) : setup(std::move(s)) {}

  Setup setup;
  TrackerConfig cfg;
  std::uint64_t seed = 0;
  BadEpsilonSet bad;
  LoopBasis basis0;
  std::optional<PermGroup> group;
  std::optional<GroupClass> group_class;
  std::string group_error;
  TangentialEvidence tangential;
  struct MelnikovRow {
    Complex t;
    Complex m1;
    Complex m2_formula;
    MelnikovSeries fit;
    bool agree = false;
  };
  std::vector<MelnikovRow> melnikov;
  CenterDecision decision;
};

Analysis run(const Problem& p, const AnalysisOptions& opt) {
  Analysis a(build(p, opt.max_degree));
  a.cfg = effective_tracker(p, opt);
  a.seed = effective_seed(p, opt);
  a.setup.cycle.fiber = fiber(a.setup.d, a.setup.cycle.fiber.base.t, 0.0, a.cfg);
  const Deformation& d = a.setup.d;
  const ZeroCycle& c = a.setup.cycle;

  a.bad = bad_epsilons(d);
  a.basis0 = loop_basis(critical_values(d, GaussRational(0)), 0.0);
  try {
    a.group = deformation_group(d, a.cfg);
    if (d.n() <= closure_max_n && !a.group->elements) a.group = closure(*a.group);
    a.group_class = classify(*a.group);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnexpectedPrimitive && e.code() != ErrorCode::ClosureCapExceeded) throw;
    a.group_error = e.what();
  }

  a.tangential = decide_tangential(d, c, a.cfg);

  std::vector<Complex> ts;
  for (const auto& t : p.melnikov_t) ts.push_back(t.to_complex());
  if (ts.empty()) ts.push_back(c.fiber.base.t);
  for (Complex t : ts) {
    Analysis::MelnikovRow row;
    row.t = t;
    row.m1 = melnikov1(d, c, t, a.cfg);
    row.m2_formula = melnikov2_formula(d, c, t, a.cfg);
    row.fit = melnikov_fit(d, c, t, kFitOrder, a.cfg);
    const double ref = std::max(std::abs(row.m2_formula), 1e-300);
    row.agree = std::abs(row.fit.coefficients[1] - row.m2_formula) <= kM2Agreement * ref ||
                std::abs(row.fit.coefficients[1] - row.m2_formula) <= 1e-9 * displacement_scale(c, t);
    a.melnikov.push_back(row);
  }

  a.decision = decide_infinitesimal(d, c, a.seed, a.cfg);
  return a;
}

json tracker_json(const TrackerConfig& cfg) {
  return {{"newton_tol", cfg.newton_tol},
          {"initial_step", cfg.initial_step},
          {"min_step", cfg.min_step},
          {"collision_guard", cfg.collision_guard},
          {"max_steps", cfg.max_steps}};
}

json group_json(const Analysis& a) {
  json g;
  if (!a.group) {
    g["error"] = a.group_error;
    return g;
  }
  const PermGroup& pg = *a.group;
  g["n"] = pg.n;
  g["eps"] = cjson(pg.base.eps);
  g["base_t"] = cjson(pg.base.t);
  json gens = json::array();
  for (const auto& s : pg.generators) gens.push_back(s.images());
  g["generators"] = gens;
  json labels = json::array();
  for (auto v : pg.labels) labels.push_back(cjson(v));
  g["encircled_values"] = labels;
  g["infinity"] = pg.infinity.images();
  g["order"] = pg.order() ? json(*pg.order()) : json(nullptr);
  if (a.group_class) {
    g["class"] = a.group_class->to_string();
    if (a.group_class->tag == GroupClass::Tag::Imprimitive) g["blocks"] = partition_json(a.group_class->blocks);
  } else {
    g["class"] = nullptr;
    g["error"] = a.group_error;
  }
  return g;
}

json decision_json(const Analysis& a) {
  json out;
  const auto& dec = a.decision;
  if (dec.verdict == CenterDecision::Verdict::Center) {
    const auto& cert = *dec.certificate;
    out["verdict"] = "Center";
    out["factor"] = to_string(cert.h);
    out["f_outer"] = to_string(cert.f_outer, "w");
    out["g_outer"] = to_string(cert.g_outer, "w");
    out["exact"] = "f = f_outer(factor) and g = g_outer(factor) verified in exact arithmetic";
    out["classes"] = partition_json(cert.projection.classes);
    out["class_weights"] = cert.projection.class_weights;
    json samples = json::array();
    for (const auto& s : cert.stability.samples) samples.push_back({{"t", cjson(s.t)}, {"eps", cjson(s.eps)}});
    out["stability"] = {{"samples", samples},
                        {"stable", cert.stability.stable},
                        {"assumption", "the class partition is locally constant off the discriminant"}};
  } else {
    const auto& w = *dec.witness;
    out["verdict"] = "NoCenter";
    json rejected = json::array();
    for (const auto& h : w.rejected_factors) rejected.push_back(to_string(h));
    out["rejected_factors"] = rejected;
    out["exact"] = "no common right factor of f and g trivializes the projected cycle";
    out["witness"] = {{"t", cjson(w.t)},
                      {"eps", cjson(w.eps)},
                      {"abs_delta", w.abs_delta},
                      {"scale", w.scale},
                      {"threshold", 1e-6 * w.scale}};
    out["group_class"] = w.group ? json(w.group->to_string()) : json(w.group_error);
  }
  return out;
}

std::string superscripts(const std::string& s) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '^') {
      while (i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) out += digits[s[++i] - '0'];
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

// Summary form: parts below 1e-9 print as 0 so the text does not carry rounding noise.
std::string fmt(Complex z) {
  const double re = std::abs(z.real()) < 1e-9 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-9 ? 0.0 : z.imag();
  if (im == 0.0) return fmt(re);
  const std::string mag = std::abs(im) == 1.0 ? std::string() : fmt(std::abs(im));
  if (re == 0.0) return (im < 0 ? "-" : "") + mag + "i";
  return fmt(re) + (im < 0 ? "-" : "+") + mag + "i";
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "empty complex literal");
  auto number = [&](const std::string& part, double def) {
    if (part.empty() || part == "+") return def;
    if (part == "-") return -def;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "bad complex literal '" + text + "'");
    }
    if (used != part.size()) throw Error(ErrorCode::InvalidInput, "bad complex literal '" + text + "'");
    return v;
  };
  if (s.back() != 'i') return {number(s, 0.0), 0.0};
  s.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  if (cut == std::string::npos) return {0.0, number(s, 1.0)};
  return {number(s.substr(0, cut), 0.0), number(s.substr(cut), 1.0)};
}

}  // namespace

std::string analyze_json(const Problem& p, const AnalysisOptions& opt) {
  const Analysis a = run(p, opt);
  const Deformation& d = a.setup.d;
  const ZeroCycle& c = a.setup.cycle;

  json r;
  r["tool"] = {{"name", "zcc"}, {"version", version_string}};
  r["input"] = {{"name", p.name},
                {"f", to_string(p.f)},
                {"g", to_string(p.g)},
                {"f_coeffs", coefficient_strings(p.f)},
                {"g_coeffs", coefficient_strings(p.g)},
                {"weights", p.weights},
                {"n", d.n()}};

  json lead = json::array();
  for (const auto& e : a.bad.leading_vanishing) lead.push_back(e.to_string());
  json degen = json::array();
  for (auto e : a.bad.degenerate) degen.push_back(cjson(e));
  r["bad_epsilons"] = {{"leading_vanishing", lead}, {"degenerate", degen}, {"dedupe_tol", 1e-9}};

  r["group"] = group_json(a);
  r["tangential"] = {{"verdict", a.tangential.vanishes},
                     {"max_m1", a.tangential.max_m1},
                     {"threshold", a.tangential.threshold},
                     {"sample_count", a.tangential.samples.size()},
                     {"radii", json::array({std::abs(c.fiber.base.t), 2 * std::abs(c.fiber.base.t)})}};

  json ts = json::array(), m1 = json::array(), m2f = json::array(), m2fit = json::array(), fits = json::array();
  for (const auto& row : a.melnikov) {
    ts.push_back(cjson(row.t));
    m1.push_back(cjson(row.m1));
    m2f.push_back(cjson(row.m2_formula));
    m2fit.push_back(cjson(row.fit.coefficients[1]));
    fits.push_back({{"eps0", row.fit.eps0},
                    {"residual", row.fit.residual},
                    {"truncation", row.fit.truncation},
                    {"m1_fit", cjson(row.fit.coefficients[0])},
                    {"formula_fit_agree", row.agree}});
  }
  json mel = {{"convention", "Delta(t,eps) = -(eps M1(t) + eps^2 M2(t) + ...), M1 = sum n_i g(z_i)"},
              {"t_samples", ts},
              {"M1", m1},
              {"M2_formula", m2f},
              {"M2_fit", m2fit},
              {"fit", fits},
              {"agreement_tol", kM2Agreement}};
  if (p.m2_reference && !a.melnikov.empty()) {
    const Complex ref = p.m2_reference->to_complex();
    const Complex got = a.melnikov.front().m2_formula;
    mel["reference_check"] = {{"t", cjson(a.melnikov.front().t)},
                              {"reference", p.m2_reference->to_string()},
                              {"computed", cjson(got)},
                              {"tol", kReferenceTol},
                              {"matches", std::abs(got - ref) <= kReferenceTol * std::max(1.0, std::abs(ref))}};
  }
  r["melnikov"] = mel;
  r["decision"] = decision_json(a);

  json petals = json::array();
  for (auto v : a.basis0.values) petals.push_back(cjson(v));
  json eps_samples = json::array();
  for (const auto& e : epsilon_samples(6)) eps_samples.push_back(e.to_string());
  r["provenance"] = {{"base_point", {{"t", cjson(c.fiber.base.t)}, {"eps", cjson(c.fiber.base.eps)}}},
                     {"fiber_order", "ascending argument in [0, 2pi), ties by modulus"},
                     {"base_fiber", [&] {
                        json f = json::array();
                        for (auto z : c.fiber.roots) f.push_back(cjson(z));
                        return f;
                      }()},
                     {"petal_order", petals},
                     {"eps_sample_sequence", eps_samples},
                     {"seed", a.seed},
                     {"tracker", tracker_json(a.cfg)},
                     {"tolerances",
                      {{"vanish", 1e-9},
                       {"nonvanish", 1e-6},
                       {"cluster", 1e-8},
                       {"identity", 1e-8},
                       {"bad_eps_guard", kBadEpsGuard}}},
                     {"version", version_string}};
  return r.dump(2) + "\n";
}

std::string summary_text(const Problem& p, const AnalysisOptions& opt) {
  const Analysis a = run(p, opt);
  const ZeroCycle& c = a.setup.cycle;
  std::ostringstream os;
  os << (p.name.empty() ? std::string("problem") : p.name) << ": f = " << superscripts(to_string(p.f))
     << ", g = " << superscripts(to_string(p.g)) << ", cycle (";
  for (std::size_t i = 0; i < p.weights.size(); ++i) os << (i ? "," : "") << p.weights[i];
  os << ")\n";
  os << "base point: t0 = " << fmt(c.fiber.base.t) << "\n";
  if (a.group_class) {
    os << "deformation group: " << a.group_class->to_string();
    if (a.group && a.group->order()) os << ", order " << *a.group->order();
    os << "\n";
  } else {
    os << "deformation group: unclassified (" << a.group_error << ")\n";
  }
  os << "max |M1| over " << a.tangential.samples.size() << " samples: "
     << (a.tangential.vanishes ? "below " + fmt(a.tangential.threshold, "%.0e") : fmt(a.tangential.max_m1, "%.3e"))
     << "\n";
  for (const auto& row : a.melnikov) {
    os << "M2(" << fmt(row.t) << "): formula " << fmt(row.m2_formula) << ", fit " << fmt(row.fit.coefficients[1])
       << (row.agree ? " (agree)" : " (DISAGREE)") << "\n";
  }
  if (p.m2_reference && !a.melnikov.empty()) {
    const Complex ref = p.m2_reference->to_complex();
    const bool match = std::abs(a.melnikov.front().m2_formula - ref) <= kReferenceTol * std::max(1.0, std::abs(ref));
    os << "reference M2(" << fmt(a.melnikov.front().t) << ") = " << p.m2_reference->to_string() << ": "
       << (match ? "matches" : "does not match") << " the computed value\n";
  }
  os << "tangential center: " << (a.tangential.vanishes ? "yes" : "no") << "; infinitesimal center: ";
  if (a.decision.verdict == CenterDecision::Verdict::Center) {
    os << "yes, factor " << superscripts(to_string(a.decision.certificate->h)) << "\n";
    os << "certificate: f = " << superscripts(to_string(a.decision.certificate->f_outer, "h"))
       << ", g = " << superscripts(to_string(a.decision.certificate->g_outer, "h")) << "\n";
  } else {
    const auto& w = *a.decision.witness;
    os << "no\n";
    os << "witness: |Delta| > " << fmt(1e-6 * w.scale, "%.0e") << " at t = " << fmt(w.t) << ", eps = " << fmt(w.eps)
       << "\n";
  }
  return os.str();
}

void parse_eps_range(const std::string& text, GridSpec& spec) {
  std::vector<double> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = text.find(':', start);
    const std::string piece = text.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "bad eps range '" + text + "' (expected a:b:c)");
    }
    if (used != piece.size()) throw Error(ErrorCode::InvalidInput, "bad eps range '" + text + "' (expected a:b:c)");
    parts.push_back(v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0])
    throw Error(ErrorCode::InvalidInput, "bad eps range '" + text + "' (expected a:b:c with c > 0 and a <= b)");
  spec.eps_start = parts[0];
  spec.eps_stop = parts[1];
  spec.eps_step = parts[2];
}

void parse_t_segment(const std::string& text, GridSpec& spec) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos)
    throw Error(ErrorCode::InvalidInput, "bad t segment '" + text + "' (expected z1:z2)");
  spec.radius = 0.0;
  spec.seg_from = parse_complex(text.substr(0, colon));
  spec.seg_to = parse_complex(text.substr(colon + 1));
}

GridResult grid_csv(const Problem& p, const GridSpec& spec, const AnalysisOptions& opt) {
  if (spec.t_points < 1) throw Error(ErrorCode::InvalidInput, "t-points must be positive");
  if (!(spec.eps_step > 0)) throw Error(ErrorCode::InvalidInput, "eps step must be positive");
  Setup s = build(p, opt.max_degree);
  const TrackerConfig cfg = effective_tracker(p, opt);
  const BadEpsilonSet bad = bad_epsilons(s.d);

  std::vector<Complex> ts;
  for (int k = 0; k < spec.t_points; ++k) {
    if (spec.radius > 0) {
      ts.push_back(std::polar(spec.radius, 2 * std::numbers::pi * k / spec.t_points));
    } else {
      const double u = spec.t_points == 1 ? 0.0 : static_cast<double>(k) / (spec.t_points - 1);
      ts.push_back(spec.seg_from + u * (spec.seg_to - spec.seg_from));
    }
  }
  const TPath how = spec.radius > 0 ? TPath::RadialArc : TPath::Straight;
  const long steps = std::lround(std::floor((spec.eps_stop - spec.eps_start) / spec.eps_step + 1e-9));

  GridResult out;
  std::ostringstream csv;
  csv.precision(17);
  csv << "re_t,im_t,re_eps,im_eps,re_delta,im_delta,abs_delta,flag\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (long j = 0; j <= steps; ++j) {
    const double eps = spec.eps_start + j * spec.eps_step;
    // eps = 0 is the unperturbed slice where Delta vanishes by definition, even if f itself is degenerate
    const bool near_bad = eps != 0.0 && bad.distance(eps) < kBadEpsGuard;
    if (near_bad) out.warnings.push_back("eps = " + fmt(eps) + " is within " + fmt(kBadEpsGuard) + " of a bad eps");
    for (Complex t : ts) {
      Complex delta{nan, nan};
      std::string flag;
      if (near_bad) {
        flag = "near_bad_eps";
      } else {
        try {
          delta = displacement(s.d, s.cycle, t, eps, cfg, how).value_g;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Numeric) throw;
          flag = std::string(to_string(e.code()));
          out.warnings.push_back("t = " + fmt(t) + ", eps = " + fmt(eps) + ": " + e.what());
        }
      }
      csv << t.real() << ',' << t.imag() << ',' << eps << ',' << 0.0 << ',' << delta.real() << ',' << delta.imag()
          << ',' << (flag.empty() ? std::abs(delta) : nan) << ',' << flag << '\n';
    }
  }
  out.csv = csv.str();
  return out;
}

}  // namespace zcc
