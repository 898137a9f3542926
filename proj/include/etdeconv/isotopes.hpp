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
#include <map>
#include <string>
#include <vector>

#include "etdeconv/chemistry.hpp"
#include "etdeconv/composition.hpp"

namespace etdeconv {

inline constexpr double kProtonMass = 1.007276466;

struct Isotope {
  double mass = 0;       // [u]
  double abundance = 0;  // probability
};

/// Per-element isotope masses and abundances. Masses strictly increase
/// within an element; abundances sum to 1 +- 1e-9.
class IsotopeTable {
 public:
  /// Embedded NIST/CIAAW values for H, C, N, O, S, P, F, Na, Cl.
  static const IsotopeTable& defaults();

  /// Override file: lines `element isotope_mass abundance`.
  static IsotopeTable from_stream(std::istream& in);
  static IsotopeTable from_file(const std::string& path);

  bool contains(const std::string& element) const;
  const std::vector<Isotope>& isotopes(const std::string& element) const;

  /// Mass with every atom at its lightest isotope.
  double monoisotopic_mass(const ElementalComposition& c) const;

  const std::map<std::string, std::vector<Isotope>>& elements() const { return elements_; }

 private:
  void insert(const std::string& element, std::vector<Isotope> isotopes);
  void validate() const;
  std::map<std::string, std::vector<Isotope>> elements_;
};

struct FinePeak {
  double mass = 0;         // neutral isotopologue mass [u]
  double probability = 0;  // exact product of multinomial element terms
};

/// Isotopologue set with total probability >= coverage, produced in
/// descending-probability order (ties at the cut boundary all included).
std::vector<FinePeak> fine_structure(const ElementalComposition& c, const IsotopeTable& table,
                                     double coverage = 0.999);

/// Coarse-grained charged-species envelope: (m/z, probability) pairs with
/// strictly increasing m/z.
struct Envelope {
  std::string species_id;
  std::vector<std::pair<double, double>> isotopologues;
  double coverage = 0;
};

/// Fine structure of the species composition (quenched hydrogens already
/// included there), mapped to m/z = (m + q*m_proton)/q, rounded to
/// decimal_places and aggregated.
Envelope envelope(const MolecularSpecies& sp, const IsotopeTable& table, double coverage,
                  int decimal_places);

}  // namespace etdeconv
