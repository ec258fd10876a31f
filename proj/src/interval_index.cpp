#include "sampvis/interval_index.hpp"

#include <algorithm>

namespace sampvis {

IntervalIndex::IntervalIndex(std::vector<Item> items) : size_(items.size()) {
  for (const auto& it : items) {
    if (it.hi < it.lo) throw PreconditionError("interval with hi < lo");
  }
  root_ = build(std::move(items));
}

std::unique_ptr<IntervalIndex::Node> IntervalIndex::build(std::vector<Item> items) {
  if (items.empty()) return nullptr;
  std::vector<const Scalar*> ends;
  ends.reserve(2 * items.size());
  for (const auto& it : items) {
    ends.push_back(&it.lo);
    ends.push_back(&it.hi);
  }
  auto mid = ends.begin() + ends.size() / 2;
  std::nth_element(ends.begin(), mid, ends.end(),
                   [](const Scalar* a, const Scalar* b) { return *a < *b; });
  auto node = std::make_unique<Node>();
  node->center = **mid;

  std::vector<Item> left, right;
  for (auto& it : items) {
    if (it.hi < node->center) left.push_back(std::move(it));
    else if (it.lo > node->center) right.push_back(std::move(it));
    else node->by_lo.push_back(std::move(it));
  }
  node->by_hi = node->by_lo;
  std::sort(node->by_lo.begin(), node->by_lo.end(),
            [](const Item& a, const Item& b) { return a.lo < b.lo; });
  std::sort(node->by_hi.begin(), node->by_hi.end(),
            [](const Item& a, const Item& b) { return a.hi > b.hi; });
  node->left = build(std::move(left));
  node->right = build(std::move(right));
  return node;
}

void IntervalIndex::stab(const Node* node, const Scalar& x, std::vector<int>& out) {
  while (node) {
    if (x < node->center) {
      for (const auto& it : node->by_lo) {
        if (it.lo > x) break;
        out.push_back(it.id);
      }
      node = node->left.get();
    } else if (x > node->center) {
      for (const auto& it : node->by_hi) {
        if (it.hi < x) break;
        out.push_back(it.id);
      }
      node = node->right.get();
    } else {
      for (const auto& it : node->by_lo) out.push_back(it.id);
      return;
    }
  }
}

void IntervalIndex::overlap(const Node* node, const Scalar& lo, const Scalar& hi,
                            std::vector<int>& out) {
  if (!node) return;
  if (hi < node->center) {
    for (const auto& it : node->by_lo) {
      if (it.lo > hi) break;
      out.push_back(it.id);
    }
    overlap(node->left.get(), lo, hi, out);
  } else if (lo > node->center) {
    for (const auto& it : node->by_hi) {
      if (it.hi < lo) break;
      out.push_back(it.id);
    }
    overlap(node->right.get(), lo, hi, out);
  } else {
    for (const auto& it : node->by_lo) out.push_back(it.id);
    overlap(node->left.get(), lo, hi, out);
    overlap(node->right.get(), lo, hi, out);
  }
}

std::vector<int> IntervalIndex::stab(const Scalar& x) const {
  std::vector<int> out;
  stab(root_.get(), x, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> IntervalIndex::overlap(const Scalar& lo, const Scalar& hi) const {
  std::vector<int> out;
  if (hi < lo) return out;
  overlap(root_.get(), lo, hi, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sampvis
