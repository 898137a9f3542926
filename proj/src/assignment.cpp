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
#include "etdeconv/assignment.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>

namespace etdeconv {

const IsotopologueNode& DeconvolutionGraph::isotopologue(int id) const {
  return isotopologues[static_cast<std::size_t>(iso_index_of_id[static_cast<std::size_t>(id)])];
}

const GroupingNode& DeconvolutionGraph::grouping(int id) const {
  return groupings[static_cast<std::size_t>(grouping_index_of_id[static_cast<std::size_t>(id)])];
}

double DeconvolutionGraph::explainable_intensity() const {
  double total = 0;
  for (const GroupingNode& g : groupings) total += g.intensity;
  return total;
}

void DeconvolutionGraph::finalize() {
  int max_iso = -1, max_grp = -1;
  for (const auto& i : isotopologues) max_iso = std::max(max_iso, i.id);
  for (const auto& g : groupings) max_grp = std::max(max_grp, g.id);
  iso_index_of_id.assign(static_cast<std::size_t>(max_iso + 1), -1);
  grouping_index_of_id.assign(static_cast<std::size_t>(max_grp + 1), -1);
  for (std::size_t i = 0; i < isotopologues.size(); ++i) {
    iso_index_of_id[static_cast<std::size_t>(isotopologues[i].id)] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < groupings.size(); ++i) {
    grouping_index_of_id[static_cast<std::size_t>(groupings[i].id)] = static_cast<int>(i);
  }
}

IntervalIndex build_interval_tree(const std::vector<Envelope>& envelopes, double tol) {
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  std::vector<IntervalIndex::Interval> intervals;
  int id = 0;
  for (const Envelope& env : envelopes) {
    for (const auto& [mz, prob] : env.isotopologues) {
      (void)prob;
      intervals.push_back({mz - tol, mz + tol, id++});
    }
  }
  return IntervalIndex(std::move(intervals));
}

DeconvolutionGraph build_graph(const std::vector<Envelope>& envelopes, const Spectrum& spectrum,
                               double tol) {
  // flat isotopologue ids in envelope order, matching build_interval_tree
  struct IsoRef {
    int species_index;
    double mz;
    double probability;
  };
  std::vector<IsoRef> isos;
  for (std::size_t s = 0; s < envelopes.size(); ++s) {
    for (const auto& [mz, prob] : envelopes[s].isotopologues) {
      isos.push_back({static_cast<int>(s), mz, prob});
    }
  }
  const IntervalIndex index = build_interval_tree(envelopes, tol);

  DeconvolutionGraph graph;
  std::map<std::vector<int>, std::vector<int>> peaks_by_cover;  // covering set -> peak indices
  std::vector<int> cover;
  for (std::size_t p = 0; p < spectrum.peaks().size(); ++p) {
    cover.clear();
    index.stab(spectrum.peaks()[p].mz, cover);
    if (cover.empty()) {
      graph.unexplained_intensity += spectrum.peaks()[p].intensity;
    } else {
      peaks_by_cover[cover].push_back(static_cast<int>(p));
    }
  }

  // deterministic grouping order: by first (lowest-m/z) member peak
  std::vector<const std::pair<const std::vector<int>, std::vector<int>>*> entries;
  entries.reserve(peaks_by_cover.size());
  for (const auto& kv : peaks_by_cover) entries.push_back(&kv);
  std::sort(entries.begin(), entries.end(),
            [](const auto* a, const auto* b) { return a->second.front() < b->second.front(); });

  std::set<int> supported;
  for (const auto* entry : entries) {
    GroupingNode g;
    g.id = static_cast<int>(graph.groupings.size());
    g.isotopologue_ids = entry->first;
    g.peak_indices = entry->second;
    g.mz_lo = spectrum.peaks()[static_cast<std::size_t>(g.peak_indices.front())].mz;
    g.mz_hi = spectrum.peaks()[static_cast<std::size_t>(g.peak_indices.back())].mz;
    for (int p : g.peak_indices) {
      g.intensity += spectrum.peaks()[static_cast<std::size_t>(p)].intensity;
    }
    for (int iso : g.isotopologue_ids) supported.insert(iso);
    graph.groupings.push_back(std::move(g));
  }

  std::unordered_map<int, std::size_t> iso_slot;
  std::vector<char> species_present(envelopes.size(), 0);
  for (int iso_id : supported) {
    IsotopologueNode node;
    node.id = iso_id;
    node.species_index = isos[static_cast<std::size_t>(iso_id)].species_index;
    node.mz = isos[static_cast<std::size_t>(iso_id)].mz;
    node.probability = isos[static_cast<std::size_t>(iso_id)].probability;
    iso_slot[iso_id] = graph.isotopologues.size();
    species_present[static_cast<std::size_t>(node.species_index)] = 1;
    graph.isotopologues.push_back(std::move(node));
  }
  for (const GroupingNode& g : graph.groupings) {
    for (int iso_id : g.isotopologue_ids) {
      graph.isotopologues[iso_slot[iso_id]].grouping_ids.push_back(g.id);
    }
  }

  std::vector<std::size_t> species_slot(envelopes.size(), 0);
  for (std::size_t s = 0; s < envelopes.size(); ++s) {
    if (!species_present[s]) continue;
    SpeciesNode node;
    node.species_index = static_cast<int>(s);
    node.species_id = envelopes[s].species_id;
    node.envelope_coverage = envelopes[s].coverage;
    species_slot[s] = graph.species.size();
    graph.species.push_back(std::move(node));
  }
  for (const IsotopologueNode& iso : graph.isotopologues) {
    SpeciesNode& sp = graph.species[species_slot[static_cast<std::size_t>(iso.species_index)]];
    sp.isotopologue_ids.push_back(iso.id);
    sp.supported_probability += iso.probability;
  }

  graph.finalize();
  return graph;
}

DeconvolutionGraph prune_unsupported(const DeconvolutionGraph& input, double min_probability) {
  if (!(min_probability > 0) || min_probability > 1) {
    throw ValidationError("pruning threshold must lie in (0, 1]");
  }
  DeconvolutionGraph graph = input;
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<int> dropped_isos;
    std::vector<SpeciesNode> kept_species;
    for (SpeciesNode& sp : graph.species) {
      if (sp.supported_probability < min_probability) {
        changed = true;
        for (int iso : sp.isotopologue_ids) dropped_isos.insert(iso);
      } else {
        kept_species.push_back(std::move(sp));
      }
    }
    if (!changed) break;
    graph.species = std::move(kept_species);
    std::erase_if(graph.isotopologues,
                  [&](const IsotopologueNode& iso) { return dropped_isos.count(iso.id) > 0; });
    std::vector<GroupingNode> kept_groupings;
    for (GroupingNode& g : graph.groupings) {
      std::erase_if(g.isotopologue_ids, [&](int id) { return dropped_isos.count(id) > 0; });
      if (g.isotopologue_ids.empty()) {
        graph.unexplained_intensity += g.intensity;
      } else {
        kept_groupings.push_back(std::move(g));
      }
    }
    graph.groupings = std::move(kept_groupings);
    // dropping a whole grouping removes no surviving edge, so support sums
    // are unchanged; iterate anyway until stable
  }
  graph.finalize();
  return graph;
}

std::vector<DeconvolutionGraph> connected_components(const DeconvolutionGraph& graph) {
  std::vector<DeconvolutionGraph> components;
  if (graph.species.empty()) return components;

  // union-find over species slots joined through shared groupings
  std::vector<int> parent(graph.species.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };

  std::unordered_map<int, int> species_of_iso;
  for (std::size_t s = 0; s < graph.species.size(); ++s) {
    for (int iso_id : graph.species[s].isotopologue_ids) {
      species_of_iso[iso_id] = static_cast<int>(s);
    }
  }
  std::unordered_map<int, int> first_owner;  // grouping id -> species slot
  for (const IsotopologueNode& iso : graph.isotopologues) {
    const int s = species_of_iso.at(iso.id);
    for (int g_id : iso.grouping_ids) {
      auto [it, inserted] = first_owner.emplace(g_id, s);
      if (!inserted) unite(s, it->second);
    }
  }

  std::map<int, DeconvolutionGraph> by_root;  // ordered: components sorted by first species slot
  for (std::size_t s = 0; s < graph.species.size(); ++s) {
    by_root[find(static_cast<int>(s))].species.push_back(graph.species[s]);
  }
  for (const IsotopologueNode& iso : graph.isotopologues) {
    by_root[find(species_of_iso.at(iso.id))].isotopologues.push_back(iso);
  }
  for (auto& [root, comp] : by_root) {
    (void)root;
    std::set<int> my_groupings;
    for (const IsotopologueNode& iso : comp.isotopologues) {
      for (int g_id : iso.grouping_ids) my_groupings.insert(g_id);
    }
    for (int g_id : my_groupings) comp.groupings.push_back(graph.grouping(g_id));
    comp.finalize();
    components.push_back(std::move(comp));
  }
  return components;
}

void DeconvolutionGraph::export_csv(const std::string& nodes_path,
                                    const std::string& edges_path) const {
  std::ofstream nodes(nodes_path);
  if (!nodes) throw ValidationError("cannot write '" + nodes_path + "'");
  nodes << "node_type,node_id,label,value\n";
  for (const SpeciesNode& sp : species) {
    nodes << "species," << sp.species_index << ',' << sp.species_id << ','
          << sp.supported_probability << '\n';
  }
  for (const IsotopologueNode& iso : isotopologues) {
    nodes << "isotopologue," << iso.id << ',' << iso.mz << ',' << iso.probability << '\n';
  }
  for (const GroupingNode& g : groupings) {
    nodes << "grouping," << g.id << ',' << g.mz_lo << '-' << g.mz_hi << ',' << g.intensity << '\n';
  }
  std::ofstream edges(edges_path);
  if (!edges) throw ValidationError("cannot write '" + edges_path + "'");
  edges << "edge_type,from,to,weight\n";
  for (const IsotopologueNode& iso : isotopologues) {
    edges << "species_isotopologue," << iso.species_index << ',' << iso.id << ','
          << iso.probability << '\n';
    for (int g_id : iso.grouping_ids) {
      edges << "isotopologue_grouping," << iso.id << ',' << g_id << ",0\n";
    }
  }
}

}  // namespace etdeconv
