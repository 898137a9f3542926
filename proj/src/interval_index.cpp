/*
Copyright 2026, the etdeconv authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include "etdeconv/interval_index.hpp"

#include <algorithm>

#include "etdeconv/composition.hpp"

namespace etdeconv {

IntervalIndex::IntervalIndex(std::vector<Interval> intervals) {
  for (const Interval& iv : intervals) {
    if (!(iv.lo < iv.hi)) throw ValidationError("interval must satisfy lo < hi");
  }
  size_ = intervals.size();
  nodes_.reserve(2 * intervals.size() + 1);
  if (!intervals.empty()) root_ = build(std::move(intervals));
}

int IntervalIndex::build(std::vector<Interval> intervals) {
  // median of endpoints as the split point
  std::vector<double> endpoints;
  endpoints.reserve(2 * intervals.size());
  for (const Interval& iv : intervals) {
    endpoints.push_back(iv.lo);
    endpoints.push_back(iv.hi);
  }
  auto mid = endpoints.begin() + static_cast<std::ptrdiff_t>(endpoints.size() / 2);
  std::nth_element(endpoints.begin(), mid, endpoints.end());
  const double center = *mid;

  std::vector<Interval> left, right, here;
  for (Interval& iv : intervals) {
    if (iv.hi < center) {
      left.push_back(iv);
    } else if (iv.lo > center) {
      right.push_back(iv);
    } else {
      here.push_back(iv);
    }
  }

  const int index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  nodes_[static_cast<std::size_t>(index)].center = center;
  {
    Node& n = nodes_[static_cast<std::size_t>(index)];
    n.by_lo = here;
    std::sort(n.by_lo.begin(), n.by_lo.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    n.by_hi = std::move(here);
    std::sort(n.by_hi.begin(), n.by_hi.end(),
              [](const Interval& a, const Interval& b) { return a.hi > b.hi; });
  }
  if (!left.empty()) {
    const int child = build(std::move(left));
    nodes_[static_cast<std::size_t>(index)].left = child;
  }
  if (!right.empty()) {
    const int child = build(std::move(right));
    nodes_[static_cast<std::size_t>(index)].right = child;
  }
  return index;
}

void IntervalIndex::stab(double x, std::vector<int>& out) const {
  int node = root_;
  while (node >= 0) {
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    if (x < n.center) {
      for (const Interval& iv : n.by_lo) {
        if (iv.lo > x) break;
        out.push_back(iv.id);
      }
      node = n.left;
    } else if (x > n.center) {
      for (const Interval& iv : n.by_hi) {
        if (iv.hi < x) break;
        out.push_back(iv.id);
      }
      node = n.right;
    } else {
      for (const Interval& iv : n.by_lo) out.push_back(iv.id);
      break;
    }
  }
  std::sort(out.begin(), out.end());
}

std::vector<int> IntervalIndex::stab(double x) const {
  std::vector<int> out;
  stab(x, out);
  return out;
}

}  // namespace etdeconv
