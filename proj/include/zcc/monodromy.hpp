#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zcc/numerics.hpp"

namespace zcc {

/// Bijection of 0..n-1 stored as its image list.
class Permutation {
public:
  Permutation() = default;
  /// Throws InvalidInput unless `images` is a bijection.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  /// Cycle notation on 0..n-1, e.g. cycle(4, {0, 1, 2, 3}).
  static Permutation cycle(int n, const std::vector<int>& cyc);

  int size() const { return static_cast<int>(images_.size()); }
  int operator[](int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  /// Lengths of the disjoint cycles, descending.
  std::vector<int> cycle_type() const;
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> images_;
};

/// (outer o inner)(i) = outer[inner[i]]. The loop "a then b" acts as compose(b, a).
Permutation compose(const Permutation& outer, const Permutation& inner);

struct LoopBasis {
  Complex base_t;
  Complex eps;
  /// One counterclockwise petal per critical value, in sweep order.
  std::vector<PathSpec> petals;
  std::vector<Complex> values;
  /// Clockwise circle |t| = 2|base_t| reached radially from base_t.
  PathSpec infinity;
};

/// Petal basis for pi_1 of the t-plane minus `critical_vals`, at fixed eps.
/// Throws DegenerateConfiguration for coinciding values.
LoopBasis loop_basis(const std::vector<Complex>& critical_vals, Complex eps = {0.0, 0.0});

struct PermGroup {
  int n = 0;
  std::vector<Permutation> generators;
  /// Critical value encircled by each generator.
  std::vector<Complex> labels;
  /// Permutation of the clockwise loop at infinity (identity when unknown).
  Permutation infinity;
  BasePoint base{};
  /// Every element, when closure() has run.
  std::optional<std::vector<Permutation>> elements;

  std::optional<std::size_t> order() const {
    if (!elements) return std::nullopt;
    return elements->size();
  }
  bool contains(const Permutation& p) const;
};

/// Generators as a group on n points with no closure and no base point.
PermGroup make_group(int n, std::vector<Permutation> generators);

/// Petal permutations at a fixed eps with the canonical fiber at the basis
/// base point. Checks the relation at infinity; throws InfinityRelationViolated.
PermGroup monodromy_at(const Deformation& d, Complex eps, const TrackerConfig& cfg = {});

/// Largest n for which closure() enumerates elements.
inline constexpr int closure_max_n = 9;

/// Breadth-first product closure. Throws ClosureCapExceeded for n > closure_max_n.
PermGroup closure(PermGroup g);

bool is_transitive(const PermGroup& g);
bool is_two_transitive(const PermGroup& g);

using Partition = std::vector<std::vector<int>>;

/// Minimal nontrivial block systems of a transitive group, each as sorted
/// blocks sorted by least element. Empty iff primitive.
std::vector<Partition> block_systems(const PermGroup& g);

struct GroupClass {
  enum class Tag { TwoTransitive, CyclicPrime, DihedralChebyshev, Imprimitive };
  Tag tag = Tag::TwoTransitive;
  /// The prime for CyclicPrime / DihedralChebyshev.
  int p = 0;
  Partition blocks;

  std::string to_string() const;
};

/// Throws InvalidInput for an intransitive group and UnexpectedPrimitive
/// outside the three primitive cases.
GroupClass classify(const PermGroup& g);

/// Sample values 1/7, 1/5, 1/11, 1/13, 1/17, ... in order.
std::vector<GaussRational> epsilon_samples(std::size_t count);

/// The group of F at the first admissible sample eps, checked against the
/// second after transporting its labels. Throws GroupMismatch.
PermGroup deformation_group(const Deformation& d, const TrackerConfig& cfg = {});

/// Fiber at (to.t, to.eps) whose root i continues root i of `from` along a
/// path that stays outside the disc holding the critical values.
LabeledFiber transport(const Deformation& d, const LabeledFiber& from, BasePoint to,
                       const TrackerConfig& cfg = {});

}  // namespace zcc
