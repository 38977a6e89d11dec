#include "leftinv/index_space.hpp"

#include <stdexcept>

namespace leftinv {

IndexSpace IndexSpace::naturals() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Naturals, 1, nullptr, nullptr});
  return IndexSpace(node);
}

IndexSpace IndexSpace::integers() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Integers, 2, nullptr, nullptr});
  return IndexSpace(node);
}

IndexSpace IndexSpace::disjoint_sum(const IndexSpace& left, const IndexSpace& right) {
  return IndexSpace(std::make_shared<const Node>(Node{Kind::DisjointSum,
                                                      left.density() + right.density(),
                                                      std::make_shared<const IndexSpace>(left),
                                                      std::make_shared<const IndexSpace>(right)}));
}

const IndexSpace& IndexSpace::left() const {
  if (kind() != Kind::DisjointSum) throw std::logic_error("left() on a non-sum index space");
  return *node_->left;
}

const IndexSpace& IndexSpace::right() const {
  if (kind() != Kind::DisjointSum) throw std::logic_error("right() on a non-sum index space");
  return *node_->right;
}

IndexSpace::Split IndexSpace::split(Index position) const {
  const Index wl = left().density();
  const Index wr = right().density();
  const Index block = wl + wr;
  const Index q = position / block;
  const Index r = position % block;
  if (r < wl) return {Side::Left, q * wl + r};
  return {Side::Right, q * wr + (r - wl)};
}

Index IndexSpace::join(Side side, Index child) const {
  const Index wl = left().density();
  const Index wr = right().density();
  const Index block = wl + wr;
  if (side == Side::Left) return (child / wl) * block + child % wl;
  return (child / wr) * block + wl + child % wr;
}

std::string IndexSpace::describe() const {
  switch (kind()) {
    case Kind::Naturals: return "N";
    case Kind::Integers: return "Z";
    case Kind::DisjointSum: return "(" + left().describe() + " + " + right().describe() + ")";
  }
  return "?";
}

bool operator==(const IndexSpace& a, const IndexSpace& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() != IndexSpace::Kind::DisjointSum) return true;
  return a.left() == b.left() && a.right() == b.right();
}

}  // namespace leftinv
