#include "zcc/monodromy.hpp"

#include <algorithm>
#include <deque>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "zcc/error.hpp"

namespace zcc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRotation = 1.0 / 7.0;
constexpr double kMatchRadius = 1e-7;
constexpr double kStemClearance = 1.25;

double distance_to_segment(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

Partition partition_of(UnionFind& uf, int n) {
  std::vector<std::vector<int>> by_root(n);
  for (int i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);
  Partition out;
  for (auto& b : by_root)
    if (!b.empty()) out.push_back(std::move(b));
  return out;
}

// Finest partition invariant under the generators with 0 and j in one block.
Partition minimal_block(const PermGroup& g, int j) {
  UnionFind uf(g.n);
  std::deque<std::pair<int, int>> queue;
  if (uf.unite(0, j)) queue.emplace_back(0, j);
  while (!queue.empty()) {
    const auto [a, b] = queue.front();
    queue.pop_front();
    for (const auto& s : g.generators)
      if (uf.unite(s[a], s[b])) queue.emplace_back(s[a], s[b]);
  }
  return partition_of(uf, g.n);
}

// Every block of `fine` sits inside a block of `coarse`.
bool refines(const Partition& fine, const Partition& coarse, int n) {
  std::vector<int> owner(n);
  for (std::size_t k = 0; k < coarse.size(); ++k)
    for (int i : coarse[k]) owner[i] = static_cast<int>(k);
  for (const auto& b : fine)
    for (int i : b)
      if (owner[i] != owner[b.front()]) return false;
  return true;
}

std::vector<Permutation> all_generators(const PermGroup& g) {
  std::vector<Permutation> gens = g.generators;
  if (g.infinity.size() == g.n && !g.infinity.is_identity()) gens.push_back(g.infinity);
  return gens;
}

Permutation permutation_along(const Deformation& d, const PathSpec& loop, const LabeledFiber& start,
                              const TrackerConfig& cfg) {
  const LabeledFiber end = track_fiber(d, loop, start, cfg);
  return Permutation(match_roots(end.roots, start.roots, kMatchRadius));
}

// Orbit/block signature used to compare groups too large to enumerate.
struct Signature {
  bool transitive;
  bool two_transitive;
  std::vector<Partition> blocks;
  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature(const PermGroup& g) {
  const bool tr = is_transitive(g);
  return {tr, is_two_transitive(g), tr ? block_systems(g) : std::vector<Partition>{}};
}

}  // namespace

// ------------------------------------------------------------ Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || x >= size() || seen[x]) throw Error(ErrorCode::InvalidInput, "not a permutation");
    seen[x] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::cycle(int n, const std::vector<int>& cyc) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    const int a = cyc[k];
    if (a < 0 || a >= n) throw Error(ErrorCode::InvalidInput, "cycle entry out of range");
    v[a] = cyc[(k + 1) % cyc.size()];
  }
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> v(images_.size());
  for (int i = 0; i < size(); ++i) v[images_[i]] = i;
  return Permutation(std::move(v));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<char> seen(images_.size(), 0);
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < size(); ++i) os << (i ? "," : "") << images_[i];
  os << ']';
  return os.str();
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw Error(ErrorCode::SizeMismatch, "permutation sizes differ");
  std::vector<int> v(inner.size());
  for (int i = 0; i < inner.size(); ++i) v[i] = outer[inner[i]];
  return Permutation(std::move(v));
}

// ------------------------------------------------------------- loop basis

LoopBasis loop_basis(const std::vector<Complex>& critical_vals, Complex eps) {
  const std::size_t k = critical_vals.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (std::abs(critical_vals[a] - critical_vals[b]) < 1e-9)
        throw Error(ErrorCode::DegenerateConfiguration, "critical values coincide");

  double vmax = 0.0;
  for (auto v : critical_vals) vmax = std::max(vmax, std::abs(v));
  const double big_r = 2.0 * (1.0 + vmax);

  // clearance radius of each petal, before the base point is known
  std::vector<double> sep(k, std::numeric_limits<double>::infinity());
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b) sep[a] = std::min(sep[a], std::abs(critical_vals[a] - critical_vals[b]));

  // Rotate the base clockwise until every stem keeps clear of the other
  // petals; shrink all petals if no rotation works.
  Complex base;
  std::vector<double> radius(k);
  bool clear = false;
  for (double shrink = 0.5; shrink > 0.01 && !clear; shrink /= 2) {
    for (int step = 0; step < 64 && !clear; ++step) {
      base = std::polar(big_r, -kRotation * step);
      clear = true;
      for (std::size_t a = 0; a < k; ++a)
        radius[a] = shrink * std::min(sep[a], std::abs(base - critical_vals[a]));
      for (std::size_t a = 0; a < k && clear; ++a) {
        const Complex v = critical_vals[a];
        const Complex stem_end = v + radius[a] * (base - v) / std::abs(base - v);
        for (std::size_t b = 0; b < k; ++b) {
          if (b == a) continue;
          if (distance_to_segment(critical_vals[b], base, stem_end) <= kStemClearance * radius[b]) {
            clear = false;
            break;
          }
        }
      }
    }
  }
  if (!clear) throw Error(ErrorCode::DegenerateConfiguration, "no admissible base point for the petal basis");

  // sweep order: angle of v - base measured from the direction toward the origin
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  auto sweep_key = [&](std::size_t a) {
    const Complex rel = (critical_vals[a] - base) / (-base);
    return std::pair{std::arg(rel), std::abs(critical_vals[a] - base)};
  };
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sweep_key(a) < sweep_key(b); });

  LoopBasis basis;
  basis.base_t = base;
  basis.eps = eps;
  for (std::size_t a : order) {
    const Complex v = critical_vals[a];
    const Complex dir = (base - v) / std::abs(base - v);
    const Complex stem_end = v + radius[a] * dir;
    const double theta = std::arg(dir);
    PathSpec petal;
    petal.append(Segment::line({base, eps}, {stem_end, eps}));
    petal.append(Segment::arc_t(v, radius[a], theta, theta + kTwoPi, eps));
    petal.append(Segment::line({stem_end, eps}, {base, eps}));
    basis.petals.push_back(std::move(petal));
    basis.values.push_back(v);
  }

  const Complex outer = 2.0 * base;
  const double theta = std::arg(base);
  basis.infinity.append(Segment::line({base, eps}, {outer, eps}));
  basis.infinity.append(Segment::arc_t(0.0, std::abs(outer), theta, theta - kTwoPi, eps));
  basis.infinity.append(Segment::line({outer, eps}, {base, eps}));
  return basis;
}

// ----------------------------------------------------------------- groups

bool PermGroup::contains(const Permutation& p) const {
  if (!elements) throw Error(ErrorCode::InvalidInput, "group has no enumerated elements");
  return std::binary_search(elements->begin(), elements->end(), p);
}

PermGroup make_group(int n, std::vector<Permutation> generators) {
  for (const auto& s : generators)
    if (s.size() != n) throw Error(ErrorCode::SizeMismatch, "generator acts on the wrong number of points");
  PermGroup g;
  g.n = n;
  g.generators = std::move(generators);
  g.infinity = Permutation::identity(n);
  return g;
}

PermGroup monodromy_at(const Deformation& d, Complex eps, const TrackerConfig& cfg) {
  if (std::abs(d.leading(eps)) < 1e-12)
    throw Error(ErrorCode::LeadingCoefficientVanishes, "leading coefficient vanishes at this eps");
  const LoopBasis basis = loop_basis(critical_values(d, eps), eps);
  const LabeledFiber start = fiber(d, basis.base_t, eps, cfg);

  PermGroup g = make_group(d.n(), {});
  g.base = start.base;
  g.labels = basis.values;
  Permutation product = Permutation::identity(d.n());
  for (const auto& petal : basis.petals) {
    Permutation s = permutation_along(d, petal, start, cfg);
    product = compose(s, product);
    g.generators.push_back(std::move(s));
  }
  g.infinity = permutation_along(d, basis.infinity, start, cfg);
  if (!compose(g.infinity, product).is_identity())
    throw Error(ErrorCode::InfinityRelationViolated,
                "loop at infinity " + g.infinity.to_string() + " does not invert the petal product " +
                    product.to_string());
  return g;
}

PermGroup closure(PermGroup g) {
  if (g.n > closure_max_n)
    throw Error(ErrorCode::ClosureCapExceeded, "closure is limited to n <= " + std::to_string(closure_max_n));
  const auto gens = all_generators(g);
  std::set<Permutation> seen;
  std::deque<Permutation> queue;
  const Permutation id = Permutation::identity(g.n);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    const Permutation x = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      Permutation y = compose(s, x);
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  g.elements.emplace(seen.begin(), seen.end());
  return g;
}

bool is_transitive(const PermGroup& g) {
  if (g.n <= 1) return true;
  const auto gens = all_generators(g);
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (const auto& s : gens)
      if (!seen[s[x]]) {
        seen[s[x]] = 1;
        ++count;
        stack.push_back(s[x]);
      }
  }
  return count == g.n;
}

bool is_two_transitive(const PermGroup& g) {
  if (g.n < 2) return true;
  const auto gens = all_generators(g);
  const int n = g.n;
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::pair<int, int>> stack{{0, 1}};
  seen[1] = 1;
  long count = 1;
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    for (const auto& s : gens) {
      const std::size_t key = static_cast<std::size_t>(s[a]) * n + s[b];
      if (!seen[key]) {
        seen[key] = 1;
        ++count;
        stack.emplace_back(s[a], s[b]);
      }
    }
  }
  return count == static_cast<long>(n) * (n - 1);
}

std::vector<Partition> block_systems(const PermGroup& g) {
  if (!is_transitive(g)) throw Error(ErrorCode::InvalidInput, "block systems need a transitive group");
  std::vector<Partition> found;
  const PermGroup full = make_group(g.n, all_generators(g));
  for (int j = 1; j < g.n; ++j) {
    Partition p = minimal_block(full, j);
    if (p.size() == 1) continue;
    if (std::find(found.begin(), found.end(), p) == found.end()) found.push_back(std::move(p));
  }
  std::vector<Partition> minimal;
  for (const auto& p : found) {
    bool is_min = true;
    for (const auto& q : found)
      if (&q != &p && q != p && refines(q, p, g.n)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(p);
  }
  return minimal;
}

std::string GroupClass::to_string() const {
  switch (tag) {
    case Tag::TwoTransitive: return "TwoTransitive";
    case Tag::CyclicPrime: return "CyclicPrime(" + std::to_string(p) + ")";
    case Tag::DihedralChebyshev: return "DihedralChebyshev(" + std::to_string(p) + ")";
    case Tag::Imprimitive: {
      std::string s = "Imprimitive(";
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        s += k ? ",{" : "{";
        for (std::size_t i = 0; i < blocks[k].size(); ++i) s += (i ? "," : "") + std::to_string(blocks[k][i]);
        s += "}";
      }
      return s + ")";
    }
  }
  return "Unknown";
}

GroupClass classify(const PermGroup& g) {
  if (!is_transitive(g)) throw Error(ErrorCode::InvalidInput, "classify needs a transitive group");
  GroupClass out;
  if (is_two_transitive(g)) return out;
  if (auto blocks = block_systems(g); !blocks.empty()) {
    out.tag = GroupClass::Tag::Imprimitive;
    out.blocks = std::move(blocks.front());
    return out;
  }

  const int n = g.n;
  const auto gens = all_generators(g);
  if (!is_prime(n)) throw Error(ErrorCode::UnexpectedPrimitive, "primitive group of composite degree");
  auto is_ncycle = [&](const Permutation& s) { return s.cycle_type() == std::vector<int>{n}; };
  std::optional<std::size_t> order;
  std::optional<PermGroup> full;
  if (n <= closure_max_n) {
    full = closure(g);
    order = full->order();
  }
  auto ncycle = std::find_if(gens.begin(), gens.end(), is_ncycle);
  std::optional<Permutation> found;
  if (ncycle != gens.end()) {
    found = *ncycle;
  } else if (full) {
    auto it = std::find_if(full->elements->begin(), full->elements->end(), is_ncycle);
    if (it != full->elements->end()) found = *it;
  }
  if (!found) throw Error(ErrorCode::UnexpectedPrimitive, "no n-cycle in the group");
  const Permutation c = *found;
  const Permutation c_inv = c.inverse();

  bool cyclic = true, dihedral = true;
  for (const auto& s : gens) {
    if (compose(s, c) == compose(c, s)) continue;
    cyclic = false;
    const bool involution = compose(s, s).is_identity();
    if (!involution || compose(compose(s, c), s) != c_inv) dihedral = false;
  }
  if (cyclic && (!order || *order == static_cast<std::size_t>(n))) {
    out.tag = GroupClass::Tag::CyclicPrime;
    out.p = n;
    return out;
  }
  if (!cyclic && dihedral && (!order || *order == static_cast<std::size_t>(2 * n))) {
    out.tag = GroupClass::Tag::DihedralChebyshev;
    out.p = n;
    return out;
  }
  throw Error(ErrorCode::UnexpectedPrimitive, "primitive group outside the cyclic and dihedral cases");
}

std::vector<GaussRational> epsilon_samples(std::size_t count) {
  std::vector<GaussRational> out;
  out.emplace_back(mpq_class(1, 7));
  if (count > 1) out.emplace_back(mpq_class(1, 5));
  for (int p = 11; out.size() < count; p += 2)
    if (is_prime(p)) out.emplace_back(mpq_class(1, p));
  out.resize(count, GaussRational(0));
  return out;
}

LabeledFiber transport(const Deformation& d, const LabeledFiber& from, BasePoint to, const TrackerConfig& cfg) {
  const double outer = 2.0 * std::max(std::abs(from.base.t), std::abs(to.t));
  const Complex far = std::polar(outer, std::arg(to.t));
  PathSpec path = radial_arc_path(from.base.t, far, from.base.eps);
  if (std::abs(to.eps - from.base.eps) > 0) path.append(Segment::line({far, from.base.eps}, {far, to.eps}));
  path.append(Segment::line({far, to.eps}, {to.t, to.eps}));
  return track_fiber(d, path, from, cfg);
}

PermGroup deformation_group(const Deformation& d, const TrackerConfig& cfg) {
  const BadEpsilonSet bad = bad_epsilons(d);
  std::vector<GaussRational> picked;
  const auto candidates = epsilon_samples(40);
  for (const auto& e : candidates) {
    if (bad.distance(e.to_complex()) > 1e-6) picked.push_back(e);
    if (picked.size() == 2) break;
  }
  if (picked.size() < 2) throw Error(ErrorCode::GroupMismatch, "no admissible eps samples");

  const Complex e1 = picked[0].to_complex(), e2 = picked[1].to_complex();
  PermGroup g1 = monodromy_at(d, e1, cfg);
  const PermGroup g2 = monodromy_at(d, e2, cfg);

  // relabel the second group through the transported fiber
  const LabeledFiber f2 = fiber(d, g2.base.t, g2.base.eps, cfg);
  const LabeledFiber f1 = fiber(d, g1.base.t, g1.base.eps, cfg);
  const LabeledFiber moved = transport(d, f2, g1.base, cfg);
  const Permutation tau(match_roots(moved.roots, f1.roots, kMatchRadius));
  const Permutation tau_inv = tau.inverse();
  std::vector<Permutation> conj;
  for (const auto& s : g2.generators) conj.push_back(compose(compose(tau, s), tau_inv));
  PermGroup g2t = make_group(d.n(), std::move(conj));
  g2t.infinity = compose(compose(tau, g2.infinity), tau_inv);

  bool same;
  if (d.n() <= closure_max_n) {
    g1 = closure(std::move(g1));
    same = *g1.elements == *closure(g2t).elements;
  } else {
    same = signature(g1) == signature(g2t);
  }
  if (!same) throw Error(ErrorCode::GroupMismatch, "groups at the two eps samples differ after transport");
  return g1;
}

}  // namespace zcc
