#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <Eigen/Core>

namespace leftinv {

using Index = Eigen::Index;

/// Basis index set of an l2 space together with its fixed enumeration onto
/// the naturals.
///
///  * Naturals: the identity.
///  * Integers: 0, 1, -1, 2, -2, ...
///  * DisjointSum(X, Y): round-robin blocks of density(X) positions from X
///    followed by density(Y) positions from Y, where density counts how many
///    enumerated positions one "step" of the space consumes (Naturals 1,
///    Integers 2). For two summands of equal density this is the plain
///    even/odd interleave; for N + Z it keeps shift-like maps between the
///    summands banded.
class IndexSpace {
 public:
  enum class Kind { Naturals, Integers, DisjointSum };
  enum class Side { Left = 0, Right = 1 };

  struct Split {
    Side side;
    Index child;
  };

  static IndexSpace naturals();
  static IndexSpace integers();
  static IndexSpace disjoint_sum(const IndexSpace& left, const IndexSpace& right);

  Kind kind() const { return node_->kind; }
  const IndexSpace& left() const;
  const IndexSpace& right() const;
  int density() const { return node_->density; }

  Split split(Index position) const;
  Index join(Side side, Index child) const;

  static Index position_of_integer(std::int64_t k) { return k > 0 ? 2 * k - 1 : -2 * k; }
  static std::int64_t integer_at(Index position) {
    return position % 2 == 1 ? (position + 1) / 2 : -(position / 2);
  }

  std::string describe() const;

  friend bool operator==(const IndexSpace& a, const IndexSpace& b);

 private:
  struct Node {
    Kind kind;
    int density;
    std::shared_ptr<const IndexSpace> left;
    std::shared_ptr<const IndexSpace> right;
  };
  explicit IndexSpace(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace leftinv
