#pragma once
// Static centered interval tree over closed intervals [lo, hi] with integer
// payloads. Supports stabbing and overlap queries.

#include <memory>
#include <vector>

#include "sampvis/geometry.hpp"

namespace sampvis {

class IntervalIndex {
 public:
  struct Item {
    Scalar lo;
    Scalar hi;
    int id;
  };

  IntervalIndex() = default;
  explicit IntervalIndex(std::vector<Item> items);

  // Ids of intervals containing x, ascending.
  std::vector<int> stab(const Scalar& x) const;
  // Ids of intervals meeting [lo, hi], ascending.
  std::vector<int> overlap(const Scalar& lo, const Scalar& hi) const;
  std::size_t size() const { return size_; }

 private:
  struct Node {
    Scalar center;
    std::vector<Item> by_lo;  // ascending lo
    std::vector<Item> by_hi;  // descending hi
    std::unique_ptr<Node> left;
    std::unique_ptr<Node> right;
  };

  static std::unique_ptr<Node> build(std::vector<Item> items);
  static void stab(const Node* node, const Scalar& x, std::vector<int>& out);
  static void overlap(const Node* node, const Scalar& lo, const Scalar& hi, std::vector<int>& out);

  std::unique_ptr<Node> root_;
  std::size_t size_ = 0;
};

}  // namespace sampvis
