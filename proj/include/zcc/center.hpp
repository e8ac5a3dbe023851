#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zcc/cycles.hpp"

namespace zcc {

/// How a sample point (t, eps) is reached from the cycle's base (t0, 0):
/// always straight in eps at t0 first, then in t either along the segment
/// or radially followed by the shorter arc around 0.
enum class TPath { Straight, RadialArc };

struct DisplacementSample {
  Complex t;
  Complex eps;
  /// sum n_i f(z_i)
  Complex value_f;
  /// -eps sum n_i g(z_i); the numerically preferred value
  Complex value_g;
  double scale = 1.0;
};

/// max(1, |t|) * max(1, sum |n_i|), the yardstick for displacement tolerances.
double displacement_scale(const ZeroCycle& c, Complex t);

/// Base t of the petal basis of f, the default base point for cycles.
Complex default_base_t(const Deformation& d);

/// Throws InvalidInput unless deg g <= deg f.
void require_cycle_setting(const Deformation& d);

/// Throws IdentityViolated when value_f and value_g differ by 1e-8*scale.
DisplacementSample displacement(const Deformation& d, const ZeroCycle& c, Complex t, Complex eps,
                                const TrackerConfig& cfg = {}, TPath how = TPath::Straight);

/// M1(t) = sum n_i g(z_i(t, 0)).
Complex melnikov1(const Deformation& d, const ZeroCycle& c, Complex t, const TrackerConfig& cfg = {},
                  TPath how = TPath::Straight);

/// M2(t) = sum n_i (-g g' / f')(z_i(t, 0)). Throws CriticalFiber.
Complex melnikov2_formula(const Deformation& d, const ZeroCycle& c, Complex t, const TrackerConfig& cfg = {},
                          TPath how = TPath::Straight);

struct MelnikovSeries {
  Complex t;
  /// M_1 .. M_k with Delta = -(eps M_1 + eps^2 M_2 + ...).
  std::vector<Complex> coefficients;
  std::string method;
  double eps0 = 0.0;
  double residual = 0.0;
  /// Magnitude of the highest fitted term at the largest sample, a proxy for the truncation error.
  double truncation = 0.0;
};

/// Least-squares fit of eps -> Delta(t, eps) on 2k+3 samples j*eps0.
/// Throws InvalidInput for k outside 1..6 and IllConditioned.
MelnikovSeries melnikov_fit(const Deformation& d, const ZeroCycle& c, Complex t, int k,
                            const TrackerConfig& cfg = {}, TPath how = TPath::Straight);

struct TangentialEvidence {
  bool vanishes = false;
  double max_m1 = 0.0;
  double threshold = 0.0;
  std::vector<Complex> samples;
};

/// Samples M1 at 12 angles on each of |t| = R and 2R, R = |t0|.
TangentialEvidence decide_tangential(const Deformation& d, const ZeroCycle& c, const TrackerConfig& cfg = {});

struct CenterCertificate {
  Polynomial h;
  Polynomial f_outer;
  Polynomial g_outer;
  ProjectedCycle projection;
  StabilityCheck stability;
};

struct NoCenterWitness {
  Complex t;
  Complex eps;
  double abs_delta = 0.0;
  double scale = 1.0;
  /// Classification of the deformation group, or the error that stopped it.
  std::optional<GroupClass> group;
  std::string group_error;
  std::optional<std::size_t> group_order;
  /// Common right factors tried, none of which trivializes the cycle.
  std::vector<Polynomial> rejected_factors;
};

struct CenterDecision {
  enum class Verdict { Center, NoCenter };
  Verdict verdict = Verdict::NoCenter;
  std::optional<CenterCertificate> certificate;
  std::optional<NoCenterWitness> witness;
};

/// Searches the common right factors of f and g for one that trivializes c.
/// Throws InconsistentVerdict / Inconclusive when the numeric witness
/// disagrees with or cannot corroborate a NoCenter outcome.
CenterDecision decide_infinitesimal(const Deformation& d, const ZeroCycle& c, std::uint64_t seed = 0,
                                    const TrackerConfig& cfg = {});

}  // namespace zcc
