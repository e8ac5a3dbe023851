#include "zcc/cycles.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

#include "zcc/error.hpp"

namespace zcc {

namespace {

constexpr double kClusterTol = 1e-8;
constexpr double kGap = 10.0;

}  // namespace

ZeroCycle make_cycle(std::vector<long> weights, LabeledFiber fiber) {
  if (weights.size() != fiber.size())
    throw Error(ErrorCode::LengthMismatch, "cycle has " + std::to_string(weights.size()) + " weights for a fiber of " +
                                               std::to_string(fiber.size()) + " roots");
  if (std::accumulate(weights.begin(), weights.end(), 0L) != 0)
    throw Error(ErrorCode::WeightsDoNotSumToZero, "cycle weights must sum to zero");
  return {std::move(weights), std::move(fiber)};
}

ZeroCycle act(const Permutation& sigma, const ZeroCycle& c) {
  if (static_cast<std::size_t>(sigma.size()) != c.weights.size())
    throw Error(ErrorCode::SizeMismatch, "permutation and cycle sizes differ");
  ZeroCycle out = c;
  for (int j = 0; j < sigma.size(); ++j) out.weights[sigma[j]] = c.weights[j];
  return out;
}

ProjectedCycle project(const ZeroCycle& c, const Polynomial& h) {
  if (h.degree() < 1) throw Error(ErrorCode::InvalidInput, "projection needs deg h >= 1");
  const int n = static_cast<int>(c.weights.size());
  std::vector<Complex> values(n);
  double scale = 1.0;
  for (int i = 0; i < n; ++i) {
    values[i] = eval(h, c.fiber.roots[i]);
    scale = std::max(scale, std::abs(values[i]));
  }
  const double threshold = kClusterTol * scale;

  // single-linkage clusters at the threshold
  std::vector<int> owner(n);
  std::iota(owner.begin(), owner.end(), 0);
  auto find = [&](int x) {
    while (owner[x] != x) x = owner[x] = owner[owner[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) < threshold) {
        const int a = find(i), b = find(j);
        owner[std::max(a, b)] = std::min(a, b);
      }

  double within = 0.0, between = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dist = std::abs(values[i] - values[j]);
      if (find(i) == find(j))
        within = std::max(within, dist);
      else
        between = std::min(between, dist);
    }
  if (between < kGap * std::max(within, threshold))
    throw Error(ErrorCode::AmbiguousClustering, "projected values do not separate cleanly");

  ProjectedCycle out;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.classes.size());
      out.classes.emplace_back();
      out.class_values.push_back(values[i]);
      out.class_weights.push_back(0);
    }
    out.classes[slot[r]].push_back(i);
    out.class_weights[slot[r]] += c.weights[i];
  }
  if (n % h.degree() != 0 || static_cast<int>(out.classes.size()) != n / h.degree())
    throw Error(ErrorCode::CriticalFiber, "expected " + std::to_string(n / std::max(1, h.degree())) +
                                              " classes, found " + std::to_string(out.classes.size()));
  return out;
}

bool is_trivial(const ProjectedCycle& p) {
  return std::all_of(p.class_weights.begin(), p.class_weights.end(), [](long w) { return w == 0; });
}

StabilityCheck check_projection_stability(const Deformation& d, const ZeroCycle& c, const Polynomial& h,
                                          std::uint64_t seed, int count, const TrackerConfig& cfg) {
  const Partition reference = project(c, h).classes;
  const BadEpsilonSet bad = bad_epsilons(d);
  const Complex eps0 = c.fiber.base.eps;
  double eps_radius = 0.1;
  for (const auto& e : bad.leading_vanishing)
    eps_radius = std::min(eps_radius, 0.5 * std::abs(e.to_complex() - eps0));
  const double r0 = std::abs(c.fiber.base.t);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StabilityCheck out;
  int attempts = 0;
  while (static_cast<int>(out.samples.size()) < count) {
    if (++attempts > 50 * count) throw Error(ErrorCode::CriticalFiber, "no regular sample points found");
    const Complex eps = eps0 + std::polar(eps_radius * std::sqrt(unit(rng)), 2 * std::numbers::pi * unit(rng));
    const Complex t = std::polar(r0 * (1.0 + unit(rng)), 2 * std::numbers::pi * unit(rng));
    const auto cv = critical_values(d, eps);
    double vmax = 0.0, gap = std::numeric_limits<double>::infinity();
    for (auto v : cv) {
      vmax = std::max(vmax, std::abs(v));
      gap = std::min(gap, std::abs(v - t));
    }
    // keep the transport corridor |t| >= r0 clear of critical values
    if (vmax > 0.75 * r0 || gap < 1e-3 * std::max(1.0, std::abs(t))) continue;
    ZeroCycle moved = c;
    try {
      moved.fiber = transport(d, c.fiber, {t, eps}, cfg);
      if (project(moved, h).classes != reference) out.stable = false;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CriticalFiber && e.code() != ErrorCode::AmbiguousClustering) throw;
      continue;
    }
    out.samples.push_back({t, eps});
  }
  return out;
}

}  // namespace zcc
