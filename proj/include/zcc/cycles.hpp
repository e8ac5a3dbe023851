#pragma once

#include <cstdint>
#include <vector>

#include "zcc/monodromy.hpp"

namespace zcc {

/// Integer combination sum n_i z_i of the roots of one labeled fiber.
struct ZeroCycle {
  std::vector<long> weights;
  LabeledFiber fiber;
};

/// Throws LengthMismatch / WeightsDoNotSumToZero.
ZeroCycle make_cycle(std::vector<long> weights, LabeledFiber fiber);

/// weights'[i] = weights[sigma^-1(i)]. Throws SizeMismatch.
ZeroCycle act(const Permutation& sigma, const ZeroCycle& c);

struct ProjectedCycle {
  /// Blocks of indices with equal h-value, sorted, ordered by least index.
  Partition classes;
  std::vector<Complex> class_values;
  std::vector<long> class_weights;
};

/// Groups the roots of c's fiber by the value of h. The number of classes
/// must be n / deg h, otherwise CriticalFiber; an unclear gap between equal
/// and distinct values raises AmbiguousClustering.
ProjectedCycle project(const ZeroCycle& c, const Polynomial& h);

/// Every class weight is exactly zero.
bool is_trivial(const ProjectedCycle& p);

struct StabilityCheck {
  std::vector<BasePoint> samples;
  bool stable = true;
};

/// Re-clusters the fiber at `count` seeded regular points, carrying labels
/// from c's fiber, and compares the index partitions with the one at c's base.
StabilityCheck check_projection_stability(const Deformation& d, const ZeroCycle& c, const Polynomial& h,
                                          std::uint64_t seed, int count = 5, const TrackerConfig& cfg = {});

}  // namespace zcc
