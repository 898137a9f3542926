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
#pragma once

#include <vector>

namespace etdeconv {

/// Static centered interval tree over closed intervals [lo, hi].
/// stab(x) returns all interval ids containing x in O(log n + k).
class IntervalIndex {
 public:
  struct Interval {
    double lo = 0;
    double hi = 0;
    int id = 0;
  };

  IntervalIndex() = default;
  explicit IntervalIndex(std::vector<Interval> intervals);

  /// Ids of intervals containing x, ascending.
  std::vector<int> stab(double x) const;
  void stab(double x, std::vector<int>& out) const;

  std::size_t size() const { return size_; }

 private:
  struct Node {
    double center = 0;
    int left = -1;
    int right = -1;
    std::vector<Interval> by_lo;  // ascending lo
    std::vector<Interval> by_hi;  // descending hi
  };

  int build(std::vector<Interval> intervals);

  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t size_ = 0;
};

}  // namespace etdeconv
