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
#include "etdeconv/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace etdeconv {

Spectrum::Spectrum(std::vector<Peak> peaks) : peaks_(std::move(peaks)) {
  for (const Peak& p : peaks_) {
    if (!(p.mz > 0)) throw ValidationError("peak m/z must be positive");
    if (p.intensity < 0) throw ValidationError("peak intensity must be nonnegative");
    if (!std::isfinite(p.mz) || !std::isfinite(p.intensity)) {
      throw ValidationError("peak values must be finite");
    }
  }
  std::sort(peaks_.begin(), peaks_.end(),
            [](const Peak& a, const Peak& b) { return a.mz < b.mz; });
  // merge exact-duplicate m/z
  std::vector<Peak> merged;
  merged.reserve(peaks_.size());
  for (const Peak& p : peaks_) {
    if (!merged.empty() && merged.back().mz == p.mz) {
      merged.back().intensity += p.intensity;
    } else {
      merged.push_back(p);
    }
  }
  peaks_ = std::move(merged);
}

Spectrum Spectrum::parse(std::istream& in) {
  std::vector<Peak> peaks;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    }
    if (line.find_first_not_of(' ') == std::string::npos) continue;
    std::istringstream ls(line);
    double mz, intensity;
    if (!(ls >> mz) || !(ls >> intensity)) {
      throw ParseError("line " + std::to_string(lineno) + ": expected `mz intensity`");
    }
    std::string rest;
    if (ls >> rest) {
      throw ParseError("line " + std::to_string(lineno) + ": trailing content '" + rest + "'");
    }
    if (intensity < 0) {
      throw ValidationError("line " + std::to_string(lineno) + ": negative intensity");
    }
    if (!(mz > 0)) {
      throw ValidationError("line " + std::to_string(lineno) + ": m/z must be positive");
    }
    peaks.push_back({mz, intensity});
  }
  return Spectrum(std::move(peaks));
}

Spectrum Spectrum::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open spectrum file '" + path + "'");
  return parse(in);
}

void Spectrum::write(std::ostream& out, int decimal_places) const {
  out << std::fixed << std::setprecision(decimal_places);
  for (const Peak& p : peaks_) {
    out << p.mz << ' ' << std::setprecision(8) << p.intensity << '\n';
    out << std::setprecision(decimal_places);
  }
}

void Spectrum::save(const std::string& path, int decimal_places) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write spectrum file '" + path + "'");
  write(out, decimal_places);
}

double Spectrum::total_intensity() const {
  return std::accumulate(peaks_.begin(), peaks_.end(), 0.0,
                         [](double acc, const Peak& p) { return acc + p.intensity; });
}

std::pair<Spectrum, double> trim_by_intensity(const Spectrum& s, double cutoff) {
  if (cutoff < 0) throw ValidationError("intensity cutoff must be >= 0");
  std::vector<Peak> kept;
  for (const Peak& p : s.peaks()) {
    if (p.intensity >= cutoff) kept.push_back(p);
  }
  Spectrum out(std::move(kept));
  return {out, s.total_intensity() - out.total_intensity()};
}

std::pair<Spectrum, double> trim_by_joint_coverage(const Spectrum& s, double fraction) {
  if (fraction < 0 || fraction > 1) throw ValidationError("coverage fraction must lie in [0,1]");
  const double total = s.total_intensity();
  std::vector<Peak> by_height(s.peaks());
  std::sort(by_height.begin(), by_height.end(),
            [](const Peak& a, const Peak& b) { return a.intensity > b.intensity; });

  const double target = fraction * total - 1e-12 * total;
  double cum = 0;
  std::size_t n = 0;
  while (n < by_height.size() && cum < target) {
    cum += by_height[n].intensity;
    ++n;
  }
  if (n == 0) {
    return {Spectrum(), std::numeric_limits<double>::infinity()};
  }
  const double cutoff = by_height[n - 1].intensity;
  // ties at the cutoff are all kept
  while (n < by_height.size() && by_height[n].intensity == cutoff) ++n;
  std::vector<Peak> kept(by_height.begin(), by_height.begin() + static_cast<std::ptrdiff_t>(n));
  return {Spectrum(std::move(kept)), cutoff};
}

double round_half_away(double x, int decimal_places) {
  const double scale = std::pow(10.0, decimal_places);
  return std::round(x * scale) / scale;
}

Spectrum round_and_aggregate(const Spectrum& s, int decimal_places) {
  if (decimal_places < 0) throw ValidationError("decimal_places must be >= 0");
  const double scale = std::pow(10.0, decimal_places);
  std::map<long long, double> bins;
  for (const Peak& p : s.peaks()) {
    bins[std::llround(p.mz * scale)] += p.intensity;
  }
  std::vector<Peak> peaks;
  peaks.reserve(bins.size());
  for (const auto& [key, intensity] : bins) {
    peaks.push_back({static_cast<double>(key) / scale, intensity});
  }
  return Spectrum(std::move(peaks));
}

int decimal_places_for_tolerance(double tol) {
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  return static_cast<int>(std::ceil(-std::log10(tol) - 1e-9)) + 1;
}

}  // namespace etdeconv
