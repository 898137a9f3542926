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

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "etdeconv/composition.hpp"

namespace etdeconv {

struct Peak {
  double mz = 0;
  double intensity = 0;
  bool operator==(const Peak&) const = default;
};

/// Immutable list of peaks with strictly increasing m/z. Construction sorts
/// and sums exact-duplicate m/z values.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<Peak> peaks);

  /// Two-column text: `mz<sep>intensity` per line, '#' comments,
  /// whitespace or comma separated. Parse errors name the line number.
  static Spectrum parse(std::istream& in);
  static Spectrum load(const std::string& path);

  void write(std::ostream& out, int decimal_places) const;
  void save(const std::string& path, int decimal_places) const;

  const std::vector<Peak>& peaks() const { return peaks_; }
  std::size_t size() const { return peaks_.size(); }
  bool empty() const { return peaks_.empty(); }
  double total_intensity() const;

  bool operator==(const Spectrum&) const = default;

 private:
  std::vector<Peak> peaks_;
};

/// Keeps peaks with intensity >= cutoff; second element is the removed
/// intensity (original total minus kept total).
std::pair<Spectrum, double> trim_by_intensity(const Spectrum& s, double cutoff);

/// Keeps the smallest set of highest peaks whose joint intensity reaches
/// `fraction` of the total; ties at the cutoff intensity are all kept.
/// Second element is the implicit cutoff (min kept intensity, +inf when
/// nothing is kept).
std::pair<Spectrum, double> trim_by_joint_coverage(const Spectrum& s, double fraction);

/// Rounds m/z half-away-from-zero to `decimal_places` and merges equal
/// rounded values, summing intensity.
Spectrum round_and_aggregate(const Spectrum& s, int decimal_places);

/// Granularity rule: one decimal place more than the leading digit of the
/// tolerance, ceil(-log10(tol)) + 1. tol = 0.05 gives 3.
int decimal_places_for_tolerance(double tol);

double round_half_away(double x, int decimal_places);

}  // namespace etdeconv
