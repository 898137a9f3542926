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

#include <string>
#include <vector>

#include "etdeconv/interval_index.hpp"
#include "etdeconv/isotopes.hpp"
#include "etdeconv/spectrum.hpp"

namespace etdeconv {

struct SpeciesNode {
  int species_index = 0;  // position in the generated species list
  std::string species_id;
  double supported_probability = 0;  // sum of p over isotopologues in the graph
  double envelope_coverage = 0;      // sum of p over the full envelope
  std::vector<int> isotopologue_ids;
};

struct IsotopologueNode {
  int id = 0;
  int species_index = 0;
  double mz = 0;
  double probability = 0;
  std::vector<int> grouping_ids;
};

struct GroupingNode {
  int id = 0;
  double intensity = 0;
  std::vector<int> peak_indices;  // into the rounded spectrum
  std::vector<int> isotopologue_ids;
  double mz_lo = 0;
  double mz_hi = 0;
};

/// Tripartite species / isotopologue / grouping graph. Only isotopologues
/// covering at least one grouping appear; every grouping keeps at least one
/// isotopologue neighbor.
struct DeconvolutionGraph {
  std::vector<SpeciesNode> species;
  std::vector<IsotopologueNode> isotopologues;
  std::vector<GroupingNode> groupings;
  double unexplained_intensity = 0;

  const IsotopologueNode& isotopologue(int id) const;
  const GroupingNode& grouping(int id) const;
  double explainable_intensity() const;
  bool empty() const { return species.empty(); }

  void export_csv(const std::string& nodes_path, const std::string& edges_path) const;

  // id -> index lookups, rebuilt by finalize()
  std::vector<int> iso_index_of_id;
  std::vector<int> grouping_index_of_id;
  void finalize();
};

IntervalIndex build_interval_tree(const std::vector<Envelope>& envelopes, double tol);

/// Assigns every rounded experimental peak to the tolerance intervals that
/// cover it. Peaks sharing an identical covering set form one grouping;
/// uncovered peaks are tallied as unexplained intensity.
DeconvolutionGraph build_graph(const std::vector<Envelope>& envelopes, const Spectrum& spectrum,
                               double tol);

/// Drops species whose grouping-adjacent isotopologues hold total probability
/// below P, iterated to a fixed point. Orphaned groupings move to
/// unexplained intensity.
DeconvolutionGraph prune_unsupported(const DeconvolutionGraph& g, double min_probability = 0.7);

std::vector<DeconvolutionGraph> connected_components(const DeconvolutionGraph& g);

}  // namespace etdeconv
