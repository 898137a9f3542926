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
#include "etdeconv/isotopes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "etdeconv/spectrum.hpp"

namespace etdeconv {

void IsotopeTable::insert(const std::string& element, std::vector<Isotope> isotopes) {
  std::sort(isotopes.begin(), isotopes.end(),
            [](const Isotope& a, const Isotope& b) { return a.mass < b.mass; });
  elements_[element] = std::move(isotopes);
}

void IsotopeTable::validate() const {
  for (const auto& [el, isos] : elements_) {
    if (isos.empty()) throw ValidationError("element " + el + " has no isotopes");
    double sum = 0;
    for (std::size_t i = 0; i < isos.size(); ++i) {
      if (!(isos[i].abundance > 0)) {
        throw ValidationError("element " + el + ": abundances must be positive");
      }
      if (i > 0 && !(isos[i].mass > isos[i - 1].mass)) {
        throw ValidationError("element " + el + ": isotope masses must strictly increase");
      }
      sum += isos[i].abundance;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ValidationError("element " + el + ": abundances sum to " + std::to_string(sum));
    }
  }
}

const IsotopeTable& IsotopeTable::defaults() {
  static const IsotopeTable table = [] {
    IsotopeTable t;
    t.insert("H", {{1.00782503207, 0.999885}, {2.01410177785, 0.000115}});
    t.insert("C", {{12.0, 0.9893}, {13.00335483507, 0.0107}});
    t.insert("N", {{14.00307400443, 0.99636}, {15.00010889888, 0.00364}});
    t.insert("O", {{15.99491461957, 0.99757}, {16.99913175650, 0.00038}, {17.99915961286, 0.00205}});
    t.insert("S", {{31.9720711744, 0.9499},
                   {32.9714589098, 0.0075},
                   {33.967867004, 0.0425},
                   {35.96708071, 0.0001}});
    t.insert("P", {{30.97376199842, 1.0}});
    t.insert("F", {{18.99840316273, 1.0}});
    t.insert("Na", {{22.9897692820, 1.0}});
    t.insert("Cl", {{34.968852682, 0.7576}, {36.965902602, 0.2424}});
    t.validate();
    return t;
  }();
  return table;
}

IsotopeTable IsotopeTable::from_stream(std::istream& in) {
  std::map<std::string, std::vector<Isotope>> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string el;
    if (!(ls >> el)) continue;
    double mass, abundance;
    if (!(ls >> mass >> abundance)) {
      throw ParseError("isotope table line " + std::to_string(lineno) +
                       ": expected `element mass abundance`");
    }
    raw[el].push_back({mass, abundance});
  }
  IsotopeTable t;
  for (auto& [el, isos] : raw) t.insert(el, std::move(isos));
  t.validate();
  return t;
}

IsotopeTable IsotopeTable::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open isotope table '" + path + "'");
  return from_stream(in);
}

bool IsotopeTable::contains(const std::string& element) const {
  return elements_.count(element) > 0;
}

const std::vector<Isotope>& IsotopeTable::isotopes(const std::string& element) const {
  auto it = elements_.find(element);
  if (it == elements_.end()) {
    throw ValidationError("element " + element + " missing from isotope table");
  }
  return it->second;
}

double IsotopeTable::monoisotopic_mass(const ElementalComposition& c) const {
  c.validate_species("monoisotopic_mass");
  double m = 0;
  for (const auto& [el, n] : c.counts()) {
    m += n * isotopes(el).front().mass;
  }
  return m;
}

namespace {

// All multinomial outcomes for n atoms of one element: the counts per isotope
// are not materialized, only the outcome mass and probability. Probabilities
// use log-space factorials for stability. Outcomes below kFloor are dropped;
// their total is bounded by #outcomes * kFloor which keeps any coverage up to
// 1 - 1e-9 reachable.
constexpr double kFloor = 1e-15;

struct OutcomeList {
  std::vector<double> mass;
  std::vector<double> prob;  // sorted descending, ties by ascending mass
};

void enumerate_outcomes(const std::vector<Isotope>& isos, int n, std::size_t iso_index,
                        int remaining, double log_prob_part, double mass_part,
                        double log_n_factorial, OutcomeList& out) {
  if (iso_index + 1 == isos.size()) {
    const int k = remaining;
    const double lp = log_prob_part + k * std::log(isos[iso_index].abundance) -
                      std::lgamma(static_cast<double>(k) + 1.0);
    const double p = std::exp(log_n_factorial + lp);
    if (p >= kFloor) {
      out.mass.push_back(mass_part + k * isos[iso_index].mass);
      out.prob.push_back(p);
    }
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    const double lp = log_prob_part + k * std::log(isos[iso_index].abundance) -
                      std::lgamma(static_cast<double>(k) + 1.0);
    enumerate_outcomes(isos, n, iso_index + 1, remaining - k, lp,
                       mass_part + k * isos[iso_index].mass, log_n_factorial, out);
  }
}

OutcomeList element_outcomes(const std::vector<Isotope>& isos, int n) {
  OutcomeList out;
  const double log_n_factorial = std::lgamma(static_cast<double>(n) + 1.0);
  enumerate_outcomes(isos, n, 0, n, 0.0, 0.0, log_n_factorial, out);
  std::vector<std::size_t> order(out.mass.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&out](std::size_t a, std::size_t b) {
    if (out.prob[a] != out.prob[b]) return out.prob[a] > out.prob[b];
    return out.mass[a] < out.mass[b];
  });
  OutcomeList sorted;
  sorted.mass.reserve(order.size());
  sorted.prob.reserve(order.size());
  for (std::size_t i : order) {
    sorted.mass.push_back(out.mass[i]);
    sorted.prob.push_back(out.prob[i]);
  }
  return sorted;
}

struct LatticeState {
  double prob;
  double mass;
  std::vector<int> idx;
};

struct LatticeStateLess {
  bool operator()(const LatticeState& a, const LatticeState& b) const {
    if (a.prob != b.prob) return a.prob < b.prob;
    if (a.mass != b.mass) return a.mass > b.mass;
    return a.idx > b.idx;  // deterministic tie-break
  }
};

}  // namespace

std::vector<FinePeak> fine_structure(const ElementalComposition& c, const IsotopeTable& table,
                                     double coverage) {
  if (!(coverage > 0) || !(coverage < 1)) {
    throw ValidationError("isotope coverage must lie in (0, 1)");
  }
  c.validate_species("fine_structure");

  std::vector<OutcomeList> lists;
  for (const auto& [el, n] : c.counts()) {
    if (n == 0) continue;
    lists.push_back(element_outcomes(table.isotopes(el), n));
  }
  const std::size_t e = lists.size();

  // Descending-probability traversal of the product lattice. A state is an
  // index tuple into the per-element outcome lists; its unique parent
  // decrements the first nonzero coordinate, so no visited set is needed.
  std::priority_queue<LatticeState, std::vector<LatticeState>, LatticeStateLess> heap;
  LatticeState origin;
  origin.idx.assign(e, 0);
  origin.prob = 1.0;
  origin.mass = 0.0;
  for (std::size_t j = 0; j < e; ++j) {
    origin.prob *= lists[j].prob[0];
    origin.mass += lists[j].mass[0];
  }
  heap.push(origin);

  std::vector<FinePeak> peaks;
  double cum = 0;
  bool covered = false;
  double tie_floor = 0;
  while (!heap.empty()) {
    LatticeState s = heap.top();
    heap.pop();
    if (covered && s.prob < tie_floor) break;
    peaks.push_back({s.mass, s.prob});
    cum += s.prob;
    if (!covered && cum >= coverage) {
      covered = true;
      tie_floor = s.prob * (1.0 - 1e-12);  // boundary ties are all included
    }
    for (std::size_t j = 0; j < e; ++j) {
      if (static_cast<std::size_t>(s.idx[j]) + 1 < lists[j].prob.size()) {
        LatticeState child = s;
        child.idx[j] += 1;
        child.prob = s.prob / lists[j].prob[static_cast<std::size_t>(s.idx[j])] *
                     lists[j].prob[static_cast<std::size_t>(child.idx[j])];
        child.mass = s.mass - lists[j].mass[static_cast<std::size_t>(s.idx[j])] +
                     lists[j].mass[static_cast<std::size_t>(child.idx[j])];
        heap.push(std::move(child));
      }
      if (s.idx[j] != 0) break;  // increments allowed only past all-zero prefixes
    }
  }
  if (!covered) {
    throw ValidationError("fine structure cannot reach requested coverage " +
                          std::to_string(coverage));
  }
  return peaks;
}

Envelope envelope(const MolecularSpecies& sp, const IsotopeTable& table, double coverage,
                  int decimal_places) {
  if (sp.q < 1) throw ValidationError("species charge must be >= 1");
  const auto fine = fine_structure(sp.composition, table, coverage);
  const double scale = std::pow(10.0, decimal_places);
  std::map<long long, double> bins;
  for (const FinePeak& p : fine) {
    const double mz = (p.mass + sp.q * kProtonMass) / sp.q;
    bins[std::llround(mz * scale)] += p.probability;
  }
  Envelope env;
  env.species_id = sp.id();
  env.isotopologues.reserve(bins.size());
  for (const auto& [key, prob] : bins) {
    env.isotopologues.emplace_back(static_cast<double>(key) / scale, prob);
    env.coverage += prob;
  }
  return env;
}

}  // namespace etdeconv
