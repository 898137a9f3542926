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
#include "etdeconv/chemistry.hpp"

#include <array>
#include <sstream>

namespace etdeconv {

std::string to_string(SpeciesKind k) {
  switch (k) {
    case SpeciesKind::precursor: return "precursor";
    case SpeciesKind::c: return "c";
    case SpeciesKind::z: return "z";
  }
  return "?";
}

SpeciesKind species_kind_from_string(const std::string& s) {
  if (s == "precursor") return SpeciesKind::precursor;
  if (s == "c") return SpeciesKind::c;
  if (s == "z") return SpeciesKind::z;
  throw ValidationError("unknown species kind '" + s + "'");
}

namespace {

const std::map<char, ElementalComposition>& residue_table() {
  static const std::map<char, ElementalComposition> table = [] {
    std::map<char, ElementalComposition> t;
    auto put = [&t](char c, const char* f) { t[c] = ElementalComposition::parse(f); };
    put('A', "C3H5NO");
    put('R', "C6H12N4O");
    put('N', "C4H6N2O2");
    put('D', "C4H5NO3");
    put('C', "C3H5NOS");
    put('E', "C5H7NO3");
    put('Q', "C5H8N2O2");
    put('G', "C2H3NO");
    put('H', "C6H7N3O");
    put('I', "C6H11NO");
    put('L', "C6H11NO");
    put('K', "C6H12N2O");
    put('M', "C5H9NOS");
    put('F', "C9H9NO");
    put('P', "C5H7NO");
    put('S', "C3H5NO2");
    put('T', "C4H7NO2");
    put('W', "C11H10N2O");
    put('Y', "C9H9NO2");
    put('V', "C5H9NO");
    return t;
  }();
  return table;
}

const ElementalComposition kWater = ElementalComposition::parse("H2O");
const ElementalComposition kAmmonia = ElementalComposition::parse("NH3");
const ElementalComposition kHydrogen = ElementalComposition::parse("H");

}  // namespace

const ElementalComposition& residue_composition(char letter) {
  const auto& t = residue_table();
  auto it = t.find(letter);
  if (it == t.end()) {
    throw ValidationError(std::string("unknown amino-acid code '") + letter + "'");
  }
  return it->second;
}

void PrecursorSpec::validate() const {
  if (sequence.empty()) throw ValidationError("precursor sequence is empty");
  for (char c : sequence) residue_composition(c);
  if (charge < 1) throw ValidationError("precursor charge Q must be >= 1");
  for (const auto& [idx, delta] : modifications) {
    (void)delta;
    if (idx < 1 || idx > length()) {
      throw ValidationError("modification index " + std::to_string(idx) +
                            " outside sequence of length " + std::to_string(length()));
    }
  }
}

ElementalComposition precursor_composition(const PrecursorSpec& p) {
  p.validate();
  ElementalComposition comp;
  for (char c : p.sequence) comp += residue_composition(c);
  comp += kWater;
  for (const auto& [idx, delta] : p.modifications) {
    (void)idx;
    comp += delta;
  }
  comp.validate_species("precursor " + p.sequence);
  return comp;
}

ElementalComposition fragment_composition(const PrecursorSpec& p, int site, SpeciesKind kind) {
  p.validate();
  const int K = p.length();
  if (site < 1 || site > K - 1) {
    throw ValidationError("cleavage site " + std::to_string(site) + " out of range for sequence of length " +
                          std::to_string(K));
  }
  if (p.sequence[static_cast<std::size_t>(site)] == 'P') {
    throw ValidationError("cleavage at site " + std::to_string(site) +
                          " rejected: N-terminal bond to proline");
  }
  ElementalComposition c_frag;
  for (int i = 0; i < site; ++i) c_frag += residue_composition(p.sequence[static_cast<std::size_t>(i)]);
  c_frag += kAmmonia;
  for (const auto& [idx, delta] : p.modifications) {
    if (idx <= site) c_frag += delta;
  }
  if (kind == SpeciesKind::c) {
    c_frag.validate_species("c fragment");
    return c_frag;
  }
  if (kind != SpeciesKind::z) {
    throw ValidationError("fragment kind must be c or z");
  }
  ElementalComposition z_frag = precursor_composition(p) + kHydrogen - c_frag;
  z_frag.validate_species("z fragment");
  return z_frag;
}

std::vector<int> eligible_sites(const std::string& sequence) {
  std::vector<int> sites;
  const int K = static_cast<int>(sequence.size());
  for (int k = 1; k <= K - 1; ++k) {
    if (sequence[static_cast<std::size_t>(k)] != 'P') sites.push_back(k);
  }
  return sites;
}

int max_fragment_charge(int residue_count, int max_q_per_block) {
  if (max_q_per_block < 1) throw ValidationError("charge distance must be >= 1");
  return residue_count / max_q_per_block + 1;
}

std::string MolecularSpecies::id() const {
  std::ostringstream os;
  switch (kind) {
    case SpeciesKind::precursor: os << "prec"; break;
    case SpeciesKind::c: os << "c" << site; break;
    case SpeciesKind::z: os << "z" << sequence_length; break;
  }
  os << "_q" << q << "_g" << g;
  return os.str();
}

std::vector<MolecularSpecies> generate_species(const PrecursorSpec& p, int max_q_per_block) {
  p.validate();
  const int Q = p.charge;
  const int K = p.length();
  std::vector<MolecularSpecies> out;

  const ElementalComposition prec = precursor_composition(p);
  for (int q = 1; q <= Q; ++q) {
    for (int g = 0; g <= Q - q; ++g) {
      MolecularSpecies sp;
      sp.kind = SpeciesKind::precursor;
      sp.site = 0;
      sp.q = q;
      sp.g = g;
      sp.sequence_length = K;
      sp.composition = prec;
      for (int i = 0; i < g; ++i) sp.composition += kHydrogen;
      out.push_back(std::move(sp));
    }
  }

  for (int k : eligible_sites(p.sequence)) {
    for (SpeciesKind kind : {SpeciesKind::c, SpeciesKind::z}) {
      const int len = kind == SpeciesKind::c ? k : K - k;
      const int qmax = std::min(Q - 1, max_fragment_charge(len, max_q_per_block));
      const ElementalComposition base = fragment_composition(p, k, kind);
      for (int q = 1; q <= qmax; ++q) {
        const int gmin = kind == SpeciesKind::c ? -1 : 0;
        for (int g = gmin; g <= Q - 1 - q; ++g) {
          MolecularSpecies sp;
          sp.kind = kind;
          sp.site = k;
          sp.q = q;
          sp.g = g;
          sp.sequence_length = len;
          sp.composition = g >= 0 ? base : base - kHydrogen;
          for (int i = 0; i < g; ++i) sp.composition += kHydrogen;
          out.push_back(std::move(sp));
        }
      }
    }
  }
  return out;
}

}  // namespace etdeconv
