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

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "etdeconv/composition.hpp"

namespace etdeconv {

enum class SpeciesKind { precursor, c, z };

std::string to_string(SpeciesKind k);
SpeciesKind species_kind_from_string(const std::string& s);

/// Precursor selected in MS1: sequence, charge Q, optional per-residue
/// composition deltas (1-based residue index).
struct PrecursorSpec {
  std::string sequence;
  int charge = 1;  // Q
  std::map<int, ElementalComposition> modifications;

  void validate() const;
  int length() const { return static_cast<int>(sequence.size()); }
};

/// One candidate reaction product. For fragments, `site` is the cleavage
/// index k: the c fragment holds residues 1..k, the z fragment k+1..K.
/// The composition already includes the quenched-charge hydrogens
/// (composition + g*H for g >= 0, composition - H for g = -1).
struct MolecularSpecies {
  SpeciesKind kind = SpeciesKind::precursor;
  int site = 0;
  ElementalComposition composition;
  int q = 1;
  int g = 0;
  int sequence_length = 0;  // residue count of this species

  std::string id() const;
};

/// Water-free monomer formula of a proteinogenic residue.
/// Throws ValidationError for unknown letters.
const ElementalComposition& residue_composition(char letter);

/// Residues + H2O + modification deltas.
ElementalComposition precursor_composition(const PrecursorSpec& p);

/// c_k = residues 1..k + NH3 (+ mods in 1..k);
/// z_{K-k} = precursor + H - c_k.
/// Cleavage N-terminal to proline is rejected.
ElementalComposition fragment_composition(const PrecursorSpec& p, int site, SpeciesKind kind);

/// Cleavage sites k in 1..K-1 whose acceptor residue (k+1) is not proline.
std::vector<int> eligible_sites(const std::string& sequence);

/// Charge-density rule: largest charge allowed on a fragment of
/// `residue_count` residues, floor(L / max_q_per_block) + 1.
int max_fragment_charge(int residue_count, int max_q_per_block = 5);

/// Exhaustive list of candidate species:
///   precursor: q in [1,Q], g in [0, Q-q];
///   fragments at every eligible site: q in [1, Q-1] subject to the
///   charge-density rule, g in [-1 (c only) or 0, Q-1-q].
std::vector<MolecularSpecies> generate_species(const PrecursorSpec& p, int max_q_per_block = 5);

}  // namespace etdeconv
