#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "zcc/algebra.hpp"

namespace zcc {

struct TrackerConfig {
  double newton_tol = 1e-12;
  /// Initial step as a fraction of each segment's parameter range.
  double initial_step = 1e-2;
  double min_step = 1e-9;
  double collision_guard = 1e-8;
  long max_steps = 1'000'000;

  /// Throws InvalidInput unless 0 < min_step <= initial_step and tolerances are positive.
  void validate() const;
};

/// A point (t, eps) of the base space.
struct BasePoint {
  Complex t;
  Complex eps;
};

/// The n roots of F(z, eps) = t at `base`, in a fixed index order.
struct LabeledFiber {
  BasePoint base;
  std::vector<Complex> roots;

  std::size_t size() const { return roots.size(); }
};

/// One piece of a path in (t, eps) space, parametrized by s in [0, 1].
class Segment {
public:
  enum class Kind { Line, ArcT, ArcEps };

  static Segment line(BasePoint from, BasePoint to);
  /// Arc in the t-plane at fixed eps, angles in radians (direction from theta0 to theta1).
  static Segment arc_t(Complex center, double radius, double theta0, double theta1, Complex eps);
  /// Arc in the eps-plane at fixed t.
  static Segment arc_eps(Complex center, double radius, double theta0, double theta1, Complex t);

  Kind kind() const { return kind_; }
  BasePoint point(double s) const;
  /// d(point)/ds.
  BasePoint velocity(double s) const;
  BasePoint start() const { return point(0.0); }
  BasePoint end() const { return point(1.0); }
  Segment reversed() const;

  Complex center() const { return center_; }
  double radius() const { return radius_; }
  double theta0() const { return theta0_; }
  double theta1() const { return theta1_; }

private:
  Kind kind_ = Kind::Line;
  BasePoint from_{};
  BasePoint to_{};
  Complex center_{};
  double radius_ = 0.0;
  double theta0_ = 0.0;
  double theta1_ = 0.0;
  Complex fixed_{};
};

/// Continuous chain of segments.
class PathSpec {
public:
  PathSpec() = default;
  explicit PathSpec(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  BasePoint start() const;
  BasePoint end() const;

  PathSpec& append(const Segment& seg);
  PathSpec& append(const PathSpec& other);
  PathSpec reversed() const;

private:
  std::vector<Segment> segments_;
};

/// Path at fixed eps from t = from to t = to that first moves radially to
/// |to| and then follows the circle |t| = |to| through the shorter angle.
PathSpec radial_arc_path(Complex from, Complex to, Complex eps);

/// Straight in eps at fixed t, then `t_path` is appended (callers pass a path at the target eps).
PathSpec eps_then(Complex t, Complex eps_from, Complex eps_to, const PathSpec& t_path);

/// All deg p roots (with multiplicity) of an ascending coefficient list, by
/// Aberth-Ehrlich iteration and Newton polishing. Throws NonConvergence.
std::vector<Complex> all_roots(std::span<const Complex> coeffs);

/// Canonical fiber order: ascending argument in [0, 2pi), ties by modulus.
void sort_canonical(std::vector<Complex>& roots);

/// Fiber of F(., eps) = t in canonical order. Throws OnDiscriminant.
LabeledFiber fiber(const Deformation& d, Complex t, Complex eps, const TrackerConfig& cfg = {});

/// Validates caller-supplied roots (distinct, residual bound) as a labeled fiber.
LabeledFiber fiber_from_roots(const Deformation& d, BasePoint base, std::vector<Complex> roots,
                              const TrackerConfig& cfg = {});

struct TrackStats {
  long accepted = 0;
  long rejected = 0;
  double min_step_used = 1.0;
};

/// Analytic continuation of `start` along `path`; root i of the result
/// continues root i of `start`.
LabeledFiber track_fiber(const Deformation& d, const PathSpec& path, const LabeledFiber& start,
                         const TrackerConfig& cfg = {}, TrackStats* stats = nullptr);

/// Distinct critical values of F(., eps), deduplicated at 1e-9 and sorted by
/// ascending real part, then imaginary part.
std::vector<Complex> critical_values(const Deformation& d, Complex eps);
/// Same, with the critical points taken from the exact squarefree part of dF/dz.
std::vector<Complex> critical_values(const Deformation& d, const GaussRational& eps);

/// Greedy nearest matching from[i] -> to[result[i]] with a global injectivity
/// check; every matched pair must lie within radius*max(1,|z|). Throws MatchingFailed.
std::vector<int> match_roots(std::span<const Complex> from, std::span<const Complex> to,
                             double radius = 1e-8);

/// Values merged when within tol*max(1,|v|) of an earlier representative.
std::vector<Complex> dedupe(std::span<const Complex> values, double tol);

}  // namespace zcc
