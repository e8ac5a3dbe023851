#include "zcc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "zcc/error.hpp"

namespace zcc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxStep = 0.125;

double scale_of(Complex z) { return std::max(1.0, std::abs(z)); }

// sum |a_k| |z|^k, the natural backward-error scale for a residual at z.
double abs_horner(std::span<const Complex> coeffs, double r) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

// p(z) and p'(z) in one Horner pass.
std::pair<Complex, Complex> horner2(std::span<const Complex> c, Complex z) {
  Complex p{0.0, 0.0};
  Complex dp{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

double min_separation(std::span<const Complex> roots) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) best = std::min(best, std::abs(roots[i] - roots[j]));
  return best;
}

double canonical_angle(Complex z) {
  double a = std::atan2(z.imag(), z.real());
  if (a < 0) a += kTwoPi;
  if (a > kTwoPi - 1e-9) a = 0.0;
  return a;
}

// Simultaneous Aberth iteration for a monic polynomial of degree >= 2.
std::vector<Complex> aberth(std::span<const Complex> c, double angle_offset) {
  const std::size_t n = c.size() - 1;
  // start on a circle around the centroid of the roots whose radius is the
  // largest |a_k|^(1/(n-k)) bound, with an angular offset breaking symmetry
  const Complex centroid = -c[n - 1] / static_cast<double>(n);
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(c[k]), 1.0 / static_cast<double>(n - k)));
  if (radius == 0.0) return std::vector<Complex>(n, Complex{});
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k)
    z[k] = centroid + std::polar(radius, kTwoPi * static_cast<double>(k) / static_cast<double>(n) + angle_offset);

  const int max_iter = 2000;
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      auto [p, dp] = horner2(c, z[k]);
      if (p == Complex{}) {
        done[k] = true;
        continue;
      }
      const Complex w = p / dp;
      Complex s{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      Complex dz = w / (1.0 - w * s);
      if (!std::isfinite(dz.real()) || !std::isfinite(dz.imag())) dz = w;
      z[k] -= dz;
      if (std::abs(dz) <= 1e-16 * scale_of(z[k]) ||
          std::abs(p) <= 1e-17 * abs_horner(c, std::abs(z[k])))
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }
  return z;
}

// A few guarded Newton steps, then the backward-error test on every root.
bool polish_and_check(std::span<const Complex> c, std::vector<Complex>& z) {
  for (auto& r : z) {
    for (int it = 0; it < 3; ++it) {
      auto [p, dp] = horner2(c, r);
      if (dp == Complex{}) break;
      const Complex next = r - p / dp;
      if (std::abs(horner(c, next)) < std::abs(p))
        r = next;
      else
        break;
    }
    const double res = std::abs(horner(c, r));
    if (!(res <= 1e-10 * abs_horner(c, std::abs(r)))) return false;
  }
  return true;
}

}  // namespace

void TrackerConfig::validate() const {
  if (!(newton_tol > 0) || !(collision_guard > 0) || !(min_step > 0) || !(initial_step > 0))
    throw Error(ErrorCode::InvalidInput, "tracker tolerances must be positive");
  if (min_step > initial_step) throw Error(ErrorCode::InvalidInput, "min_step exceeds initial_step");
  if (initial_step > 1.0) throw Error(ErrorCode::InvalidInput, "initial_step is a fraction of a segment");
  if (max_steps <= 0) throw Error(ErrorCode::InvalidInput, "max_steps must be positive");
}

// ------------------------------------------------------------------ paths

Segment Segment::line(BasePoint from, BasePoint to) {
  Segment s;
  s.kind_ = Kind::Line;
  s.from_ = from;
  s.to_ = to;
  return s;
}

Segment Segment::arc_t(Complex center, double radius, double theta0, double theta1, Complex eps) {
  Segment s;
  s.kind_ = Kind::ArcT;
  s.center_ = center;
  s.radius_ = radius;
  s.theta0_ = theta0;
  s.theta1_ = theta1;
  s.fixed_ = eps;
  return s;
}

Segment Segment::arc_eps(Complex center, double radius, double theta0, double theta1, Complex t) {
  Segment s = arc_t(center, radius, theta0, theta1, t);
  s.kind_ = Kind::ArcEps;
  return s;
}

BasePoint Segment::point(double s) const {
  switch (kind_) {
    case Kind::Line:
      return {from_.t + s * (to_.t - from_.t), from_.eps + s * (to_.eps - from_.eps)};
    case Kind::ArcT:
      return {center_ + std::polar(radius_, theta0_ + s * (theta1_ - theta0_)), fixed_};
    case Kind::ArcEps:
      return {fixed_, center_ + std::polar(radius_, theta0_ + s * (theta1_ - theta0_))};
  }
  return {};
}

BasePoint Segment::velocity(double s) const {
  const Complex i{0.0, 1.0};
  switch (kind_) {
    case Kind::Line:
      return {to_.t - from_.t, to_.eps - from_.eps};
    case Kind::ArcT:
      return {i * (theta1_ - theta0_) * std::polar(radius_, theta0_ + s * (theta1_ - theta0_)), 0.0};
    case Kind::ArcEps:
      return {0.0, i * (theta1_ - theta0_) * std::polar(radius_, theta0_ + s * (theta1_ - theta0_))};
  }
  return {};
}

Segment Segment::reversed() const {
  Segment s = *this;
  std::swap(s.from_, s.to_);
  std::swap(s.theta0_, s.theta1_);
  return s;
}

PathSpec::PathSpec(std::vector<Segment> segments) {
  for (const auto& s : segments) append(s);
}

BasePoint PathSpec::start() const {
  if (segments_.empty()) throw Error(ErrorCode::InvalidInput, "empty path has no start");
  return segments_.front().start();
}

BasePoint PathSpec::end() const {
  if (segments_.empty()) throw Error(ErrorCode::InvalidInput, "empty path has no end");
  return segments_.back().end();
}

PathSpec& PathSpec::append(const Segment& seg) {
  if (!segments_.empty()) {
    const BasePoint a = segments_.back().end();
    const BasePoint b = seg.start();
    const double gap = std::abs(a.t - b.t) + std::abs(a.eps - b.eps);
    if (gap > 1e-9 * (scale_of(a.t) + scale_of(a.eps)))
      throw Error(ErrorCode::InvalidInput, "path segments are not continuous");
  }
  segments_.push_back(seg);
  return *this;
}

PathSpec& PathSpec::append(const PathSpec& other) {
  for (const auto& s : other.segments_) append(s);
  return *this;
}

PathSpec PathSpec::reversed() const {
  PathSpec out;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) out.segments_.push_back(it->reversed());
  return out;
}

PathSpec radial_arc_path(Complex from, Complex to, Complex eps) {
  PathSpec path;
  const double r_from = std::abs(from);
  const double r_to = std::abs(to);
  const double a_from = std::arg(from);
  if (std::abs(r_to - r_from) > 1e-15 * scale_of(from)) {
    path.append(Segment::line({from, eps}, {std::polar(r_to, a_from), eps}));
  }
  double delta = std::arg(to) - a_from;
  while (delta > std::numbers::pi) delta -= kTwoPi;
  while (delta <= -std::numbers::pi) delta += kTwoPi;
  if (std::abs(delta) > 1e-15 && r_to > 0)
    path.append(Segment::arc_t(0.0, r_to, a_from, a_from + delta, eps));
  return path;
}

PathSpec eps_then(Complex t, Complex eps_from, Complex eps_to, const PathSpec& t_path) {
  PathSpec path;
  if (std::abs(eps_to - eps_from) > 0) path.append(Segment::line({t, eps_from}, {t, eps_to}));
  path.append(t_path);
  return path;
}

// ------------------------------------------------------------------ roots

std::vector<Complex> all_roots(std::span<const Complex> coeffs_in) {
  std::vector<Complex> c(coeffs_in.begin(), coeffs_in.end());
  while (!c.empty() && c.back() == Complex{}) c.pop_back();
  if (c.size() < 2) throw Error(ErrorCode::InvalidInput, "all_roots needs degree >= 1");
  // exact zero roots are split off; the relative residual test cannot certify them
  if (c.front() == Complex{}) {
    std::size_t zeros = 0;
    while (c[zeros] == Complex{}) ++zeros;
    std::vector<Complex> out(zeros, Complex{});
    if (c.size() - zeros >= 2) {
      auto rest = all_roots(std::span<const Complex>(c).subspan(zeros));
      out.insert(out.end(), rest.begin(), rest.end());
    }
    return out;
  }
  const std::size_t n = c.size() - 1;
  const Complex lead = c.back();
  for (auto& x : c) x /= lead;
  if (n == 1) return {-c[0]};

  for (double offset : {0.4, 1.3}) {
    auto z = aberth(c, offset);
    if (polish_and_check(c, z)) return z;
  }
  // Aberth occasionally loses a root on long, clustered inputs; companion
  // eigenvalues are slower but do not depend on a starting configuration.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    companion(0, static_cast<Eigen::Index>(k)) = -c[n - 1 - k];
    if (k + 1 < n) companion(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() == Eigen::Success) {
    std::vector<Complex> z(solver.eigenvalues().begin(), solver.eigenvalues().end());
    if (polish_and_check(c, z)) return z;
  }
  throw Error(ErrorCode::NonConvergence, "Aberth iteration did not converge");
}

void sort_canonical(std::vector<Complex>& roots) {
  std::vector<std::tuple<double, double, Complex>> keyed;
  keyed.reserve(roots.size());
  for (auto z : roots) keyed.emplace_back(canonical_angle(z), std::abs(z), z);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (std::abs(std::get<0>(a) - std::get<0>(b)) > 1e-9) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  for (std::size_t k = 0; k < roots.size(); ++k) roots[k] = std::get<2>(keyed[k]);
}

namespace {

// Newton refinement of every root of F(., eps) - t; throws OnDiscriminant
// when the fiber is not n distinct simple roots.
void polish_fiber(const Deformation& d, Complex t, Complex eps, std::vector<Complex>& roots,
                  const TrackerConfig& cfg) {
  auto c = d.at(eps);
  c[0] -= t;
  auto dc = d.derivative_at(eps);
  for (auto& z : roots) {
    for (int it = 0; it < 8; ++it) {
      const Complex dp = horner(dc, z);
      if (dp == Complex{}) break;
      const Complex step = horner(c, z) / dp;
      z -= step;
      if (std::abs(step) <= cfg.newton_tol * scale_of(z)) break;
    }
  }
  double scale = 1.0;
  for (auto z : roots) scale = std::max(scale, std::abs(z));
  if (min_separation(roots) <= cfg.collision_guard * scale)
    throw Error(ErrorCode::OnDiscriminant, "fiber has (nearly) repeated roots");
  for (auto z : roots) {
    const double res = std::abs(horner(c, z));
    if (!(res <= cfg.newton_tol * abs_horner(c, std::abs(z)) * 1e3))
      throw Error(ErrorCode::OnDiscriminant, "fiber residual above tolerance");
  }
}

}  // namespace

LabeledFiber fiber(const Deformation& d, Complex t, Complex eps, const TrackerConfig& cfg) {
  auto c = d.at(eps);
  c[0] -= t;
  double cmax = 0.0;
  for (auto x : c) cmax = std::max(cmax, std::abs(x));
  if (std::abs(c.back()) <= 1e-12 * cmax)
    throw Error(ErrorCode::OnDiscriminant, "leading coefficient c(eps) vanishes");
  std::vector<Complex> roots;
  try {
    roots = all_roots(c);
  } catch (const Error& e) {
    throw Error(ErrorCode::OnDiscriminant, e.what());
  }
  polish_fiber(d, t, eps, roots, cfg);
  sort_canonical(roots);
  return {{t, eps}, std::move(roots)};
}

LabeledFiber fiber_from_roots(const Deformation& d, BasePoint base, std::vector<Complex> roots,
                              const TrackerConfig& cfg) {
  if (roots.size() != static_cast<std::size_t>(d.n()))
    throw Error(ErrorCode::LengthMismatch, "fiber needs exactly n roots");
  polish_fiber(d, base.t, base.eps, roots, cfg);
  return {base, std::move(roots)};
}

// --------------------------------------------------------------- tracking

namespace {

enum class StepOutcome { Accepted, Rejected, Collision };

struct StepWork {
  std::vector<Complex> coeffs;
  std::vector<Complex> dcoeffs;
  std::vector<Complex> next;
};

StepOutcome try_step(const Deformation& d, const Segment& seg, double s, double h,
                     const std::vector<Complex>& z, const TrackerConfig& cfg, StepWork& w) {
  const BasePoint p0 = seg.point(s);
  const BasePoint v0 = seg.velocity(s);
  const BasePoint p1 = seg.point(s + h);
  const auto& gc = d.g_complex();
  const auto dc0 = d.derivative_at(p0.eps);
  w.coeffs = d.at(p1.eps);
  w.coeffs[0] -= p1.t;
  w.dcoeffs = d.derivative_at(p1.eps);
  w.next.resize(z.size());

  const std::size_t n = z.size();
  double scale = 1.0;
  for (auto r : z) scale = std::max(scale, std::abs(r));

  for (std::size_t i = 0; i < n; ++i) {
    // separation of root i from its nearest neighbour before the step
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sep = std::min(sep, std::abs(z[i] - z[j]));

    const Complex fz = horner(dc0, z[i]);
    if (fz == Complex{}) return StepOutcome::Rejected;
    // F(z, eps) = t  =>  F_z dz + g(z) deps - dt = 0
    const Complex dzds = (v0.t - horner(gc, z[i]) * v0.eps) / fz;
    Complex zi = z[i] + h * dzds;

    bool converged = false;
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 6; ++it) {
      const Complex dp = horner(w.dcoeffs, zi);
      if (dp == Complex{}) return StepOutcome::Rejected;
      const Complex step = horner(w.coeffs, zi) / dp;
      const double size = std::abs(step);
      if (!std::isfinite(size)) return StepOutcome::Rejected;
      if (it > 0 && size > 0.5 * prev) return StepOutcome::Rejected;
      zi -= step;
      prev = size;
      if (size <= cfg.newton_tol * scale_of(zi)) {
        converged = true;
        break;
      }
    }
    if (!converged) return StepOutcome::Rejected;
    if (std::abs(zi - z[i]) > 0.25 * sep) return StepOutcome::Rejected;
    w.next[i] = zi;
  }
  if (min_separation(w.next) <= cfg.collision_guard * scale) return StepOutcome::Collision;
  return StepOutcome::Accepted;
}

}  // namespace

LabeledFiber track_fiber(const Deformation& d, const PathSpec& path, const LabeledFiber& start,
                         const TrackerConfig& cfg, TrackStats* stats) {
  cfg.validate();
  if (path.empty()) return start;
  if (start.roots.size() != static_cast<std::size_t>(d.n()))
    throw Error(ErrorCode::LengthMismatch, "start fiber does not have n roots");
  const BasePoint p0 = path.start();
  if (std::abs(p0.t - start.base.t) > 1e-9 * scale_of(p0.t) ||
      std::abs(p0.eps - start.base.eps) > 1e-9 * scale_of(p0.eps))
    throw Error(ErrorCode::InvalidInput, "path does not start at the fiber's base point");

  TrackStats local;
  std::vector<Complex> z = start.roots;
  StepWork work;
  long steps = 0;
  for (const auto& seg : path.segments()) {
    double s = 0.0;
    double ds = cfg.initial_step;
    int clean = 0;
    while (s < 1.0) {
      if (++steps > cfg.max_steps) throw Error(ErrorCode::NonConvergence, "tracker exceeded max_steps");
      const double h = std::min(ds, 1.0 - s);
      const StepOutcome outcome = try_step(d, seg, s, h, z, cfg, work);
      if (outcome == StepOutcome::Accepted) {
        z.swap(work.next);
        s = (h == 1.0 - s) ? 1.0 : s + h;
        ++local.accepted;
        local.min_step_used = std::min(local.min_step_used, h);
        if (++clean >= 4) {
          ds = std::min(2.0 * ds, kMaxStep);
          clean = 0;
        }
        continue;
      }
      ++local.rejected;
      clean = 0;
      ds = h / 2.0;
      if (ds < cfg.min_step) {
        const BasePoint at = seg.point(s);
        const std::string where = " near t=(" + std::to_string(at.t.real()) + "," +
                                  std::to_string(at.t.imag()) + ") eps=(" + std::to_string(at.eps.real()) +
                                  "," + std::to_string(at.eps.imag()) + ")";
        if (outcome == StepOutcome::Collision)
          throw Error(ErrorCode::CollisionDetected, "two tracked roots collided" + where);
        throw Error(ErrorCode::PathTooCloseToSigma, "step size underflow" + where);
      }
    }
  }
  if (stats) *stats = local;
  return {path.end(), std::move(z)};
}

// -------------------------------------------------------- critical values

std::vector<Complex> dedupe(std::span<const Complex> values, double tol) {
  std::vector<Complex> out;
  for (auto v : values) {
    bool seen = false;
    for (auto u : out)
      if (std::abs(u - v) <= tol * std::max(scale_of(u), scale_of(v))) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(v);
  }
  return out;
}

namespace {

std::vector<Complex> values_at(const Deformation& d, Complex eps, std::span<const Complex> points) {
  const auto c = d.at(eps);
  std::vector<Complex> values;
  values.reserve(points.size());
  for (auto z : points) values.push_back(horner(c, z));
  auto out = dedupe(values, 1e-9);
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (std::abs(a.real() - b.real()) > 1e-9 * std::max(scale_of(a), scale_of(b))) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

}  // namespace

std::vector<Complex> critical_values(const Deformation& d, Complex eps) {
  const auto c = d.at(eps);
  double cmax = 0.0;
  for (auto x : c) cmax = std::max(cmax, std::abs(x));
  if (std::abs(c.back()) <= 1e-14 * cmax)
    throw Error(ErrorCode::LeadingCoefficientVanishes, "c(eps) vanishes");
  if (d.n() < 2) return {};
  const auto points = all_roots(d.derivative_at(eps));
  return values_at(d, eps, points);
}

std::vector<Complex> critical_values(const Deformation& d, const GaussRational& eps) {
  if (d.leading(eps).is_zero()) throw Error(ErrorCode::LeadingCoefficientVanishes, "c(eps) vanishes");
  if (d.n() < 2) return {};
  const Polynomial sq = squarefree_part(d.at(eps).derivative());
  if (sq.degree() < 1) return {};
  const auto points = all_roots(to_complex(sq));
  return values_at(d, eps.to_complex(), points);
}

// --------------------------------------------------------------- matching

std::vector<int> match_roots(std::span<const Complex> from, std::span<const Complex> to, double radius) {
  if (from.size() != to.size()) throw Error(ErrorCode::SizeMismatch, "root lists differ in length");
  const std::size_t n = from.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(std::abs(from[i] - to[j]), i, j);
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> out(n, -1);
  std::vector<bool> used(n, false);
  std::size_t assigned = 0;
  for (const auto& [dist, i, j] : pairs) {
    if (out[i] >= 0 || used[j]) continue;
    if (dist > radius * scale_of(to[j]))
      throw Error(ErrorCode::MatchingFailed, "no root within the acceptance radius");
    out[i] = static_cast<int>(j);
    used[j] = true;
    if (++assigned == n) break;
  }
  return out;
}

}  // namespace zcc
