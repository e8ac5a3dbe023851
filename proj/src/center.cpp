#include "zcc/center.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "zcc/error.hpp"

namespace zcc {

namespace {

constexpr double kIdentityTol = 1e-8;
constexpr double kVanish = 1e-9;
constexpr double kNonvanish = 1e-6;

PathSpec path_to(const ZeroCycle& c, Complex t, Complex eps, TPath how) {
  const Complex t0 = c.fiber.base.t;
  const Complex e0 = c.fiber.base.eps;
  PathSpec path;
  if (eps != e0) path.append(Segment::line({t0, e0}, {t0, eps}));
  if (how == TPath::Straight) {
    if (t != t0) path.append(Segment::line({t0, eps}, {t, eps}));
  } else {
    path.append(radial_arc_path(t0, t, eps));
    if (!path.empty() && std::abs(path.end().t - t) > 0) path.append(Segment::line(path.end(), {t, eps}));
  }
  return path;
}

std::vector<Complex> roots_at(const Deformation& d, const ZeroCycle& c, Complex t, Complex eps,
                              const TrackerConfig& cfg, TPath how) {
  return track_fiber(d, path_to(c, t, eps, how), c.fiber, cfg).roots;
}

double weight_mass(const ZeroCycle& c) {
  double s = 0.0;
  for (long w : c.weights) s += std::abs(static_cast<double>(w));
  return s;
}

}  // namespace

double displacement_scale(const ZeroCycle& c, Complex t) {
  return std::max(1.0, std::abs(t)) * std::max(1.0, weight_mass(c));
}

Complex default_base_t(const Deformation& d) {
  return loop_basis(critical_values(d, GaussRational(0))).base_t;
}

void require_cycle_setting(const Deformation& d) {
  if (d.g().degree() > d.f().degree())
    throw Error(ErrorCode::InvalidInput, "cycles need deg g <= deg f so that the fiber of f has n points");
}

DisplacementSample displacement(const Deformation& d, const ZeroCycle& c, Complex t, Complex eps,
                                const TrackerConfig& cfg, TPath how) {
  require_cycle_setting(d);
  const auto z = roots_at(d, c, t, eps, cfg, how);
  DisplacementSample s{t, eps, {}, {}, displacement_scale(c, t)};
  Complex sum_g{};
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double w = static_cast<double>(c.weights[i]);
    s.value_f += w * horner(d.f_complex(), z[i]);
    sum_g += w * horner(d.g_complex(), z[i]);
  }
  s.value_g = -eps * sum_g;
  if (std::abs(s.value_f - s.value_g) > kIdentityTol * s.scale)
    throw Error(ErrorCode::IdentityViolated, "sum n f(z) and -eps sum n g(z) disagree");
  return s;
}

Complex melnikov1(const Deformation& d, const ZeroCycle& c, Complex t, const TrackerConfig& cfg, TPath how) {
  require_cycle_setting(d);
  const auto z = roots_at(d, c, t, 0.0, cfg, how);
  Complex sum{};
  for (std::size_t i = 0; i < z.size(); ++i) sum += static_cast<double>(c.weights[i]) * horner(d.g_complex(), z[i]);
  return sum;
}

Complex melnikov2_formula(const Deformation& d, const ZeroCycle& c, Complex t, const TrackerConfig& cfg,
                          TPath how) {
  require_cycle_setting(d);
  const auto z = roots_at(d, c, t, 0.0, cfg, how);
  const auto fp = to_complex(d.f().derivative());
  const auto gp = to_complex(d.g().derivative());
  Complex sum{};
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Complex df = horner(fp, z[i]);
    if (std::abs(df) < 1e-12 * std::max(1.0, std::abs(z[i])))
      throw Error(ErrorCode::CriticalFiber, "f' vanishes on the fiber");
    sum += static_cast<double>(c.weights[i]) * (-horner(d.g_complex(), z[i]) * horner(gp, z[i]) / df);
  }
  return sum;
}

MelnikovSeries melnikov_fit(const Deformation& d, const ZeroCycle& c, Complex t, int k, const TrackerConfig& cfg,
                            TPath how) {
  if (k < 1 || k > 6) throw Error(ErrorCode::InvalidInput, "melnikov_fit supports 1 <= k <= 6");
  const int samples = 2 * k + 3;
  const int degree = 2 * k + 1;
  const double scale = displacement_scale(c, t);

  double eps0 = 1e-2;
  for (int attempt = 0; attempt < 4; ++attempt, eps0 /= 2) {
    // fit in u = eps / eps0 so the Vandermonde columns stay O(1)..O(samples^degree)
    Eigen::MatrixXcd a(samples, degree);
    Eigen::VectorXcd y(samples);
    for (int j = 1; j <= samples; ++j) {
      const double u = j;
      double p = 1.0;
      for (int i = 0; i < degree; ++i) a(j - 1, i) = (p *= u);
      y(j - 1) = displacement(d, c, t, j * eps0, cfg, how).value_g;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-12 * sv(0)) continue;
    const Eigen::VectorXcd b = svd.solve(y);
    const double residual = (a * b - y).norm();
    if (residual > std::max(1e-12 * scale, 1e-8 * y.norm())) continue;

    MelnikovSeries out;
    out.t = t;
    out.method = "fit";
    out.eps0 = eps0;
    out.residual = residual;
    out.truncation = std::abs(b(degree - 1)) * std::pow(static_cast<double>(samples), degree);
    double p = 1.0;
    for (int i = 0; i < k; ++i) {
      p *= eps0;
      out.coefficients.push_back(-b(i) / p);
    }
    return out;
  }
  throw Error(ErrorCode::IllConditioned, "Melnikov fit failed at every eps0");
}

TangentialEvidence decide_tangential(const Deformation& d, const ZeroCycle& c, const TrackerConfig& cfg) {
  require_cycle_setting(d);
  const double r = std::abs(c.fiber.base.t);
  TangentialEvidence ev;
  double scale = 1.0;
  for (double radius : {r, 2 * r}) {
    for (int k = 0; k < 12; ++k) {
      const Complex t = std::polar(radius, 2 * std::numbers::pi * k / 12.0);
      ev.samples.push_back(t);
      ev.max_m1 = std::max(ev.max_m1, std::abs(melnikov1(d, c, t, cfg, TPath::RadialArc)));
      scale = std::max(scale, displacement_scale(c, t));
    }
  }
  ev.threshold = kVanish * scale;
  ev.vanishes = ev.max_m1 < ev.threshold;
  return ev;
}

CenterDecision decide_infinitesimal(const Deformation& d, const ZeroCycle& c, std::uint64_t seed,
                                    const TrackerConfig& cfg) {
  require_cycle_setting(d);
  CenterDecision out;
  const auto factors = common_right_factors(d.f(), d.g());
  for (const auto& h : factors) {
    ProjectedCycle p = project(c, h);
    if (!is_trivial(p)) continue;
    CenterCertificate cert;
    cert.h = h;
    cert.f_outer = express_in(d.f(), h).value();
    cert.g_outer = express_in(d.g(), h).value();
    if (!(compose(cert.f_outer, h) == d.f() && compose(cert.g_outer, h) == d.g()))
      throw Error(ErrorCode::IdentityViolated, "center certificate failed exact re-validation");
    cert.projection = std::move(p);
    cert.stability = check_projection_stability(d, c, h, seed, 5, cfg);
    if (!cert.stability.stable)
      throw Error(ErrorCode::InconsistentVerdict, "projection partition changes between sample points");
    out.verdict = CenterDecision::Verdict::Center;
    out.certificate = std::move(cert);
    return out;
  }

  NoCenterWitness w;
  w.rejected_factors = factors;
  try {
    const PermGroup g = deformation_group(d, cfg);
    w.group = classify(g);
    w.group_order = g.order();
  } catch (const Error& e) {
    w.group_error = e.what();
  }

  const BadEpsilonSet bad = bad_epsilons(d);
  const double r = std::abs(c.fiber.base.t);
  double best = -1.0, best_rel = 0.0;
  for (int k = 0; k < 5; ++k) {
    for (int j = 1; j <= 5; ++j) {
      const Complex t = std::polar(r, 2 * std::numbers::pi * k / 5.0);
      const Complex eps = 0.02 * j;
      if (bad.distance(eps) < 1e-6) continue;
      const auto s = displacement(d, c, t, eps, cfg, TPath::RadialArc);
      const double rel = std::abs(s.value_g) / s.scale;
      if (rel > best_rel || best < 0) {
        best_rel = rel;
        best = 1.0;
        w.t = t;
        w.eps = eps;
        w.abs_delta = std::abs(s.value_g);
        w.scale = s.scale;
      }
    }
  }
  if (best < 0 || best_rel < kVanish)
    throw Error(ErrorCode::InconsistentVerdict, "no common factor trivializes the cycle, yet the displacement vanishes");
  if (best_rel <= kNonvanish)
    throw Error(ErrorCode::Inconclusive, "largest displacement on the witness grid lies in the dead band");
  out.verdict = CenterDecision::Verdict::NoCenter;
  out.witness = std::move(w);
  return out;
}

}  // namespace zcc
