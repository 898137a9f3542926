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
#include "etdeconv/solver.hpp"

#include <cmath>
#include <unordered_map>

namespace etdeconv {

DeconvolutionSolution solve_component(const DeconvolutionGraph& component,
                                      const Penalties& penalties) {
  if (component.species.empty()) throw ValidationError("solve_component: empty component");
  if (penalties.l1x < 0 || penalties.l1a < 0 || penalties.l2x < 0 || penalties.l2a < 0) {
    throw ValidationError("penalties must be nonnegative");
  }

  // variable layout: one alpha per species, then one x per edge of every
  // isotopologue touching >= 2 groupings; single-grouping isotopologues are
  // substituted as x = p * alpha
  const int n_species = static_cast<int>(component.species.size());
  std::unordered_map<int, int> species_var;  // species_index -> variable
  for (int s = 0; s < n_species; ++s) {
    species_var[component.species[static_cast<std::size_t>(s)].species_index] = s;
  }

  struct Edge {
    int iso_id;
    int grouping_id;
    int var;  // -1 when substituted
  };
  std::vector<Edge> edges;
  int n_vars = n_species;
  std::vector<int> multi_iso_row;  // constraint row per multi-grouping isotopologue
  int n_rows = 0;
  for (const IsotopologueNode& iso : component.isotopologues) {
    const bool multi = iso.grouping_ids.size() > 1;
    for (int g_id : iso.grouping_ids) {
      edges.push_back({iso.id, g_id, multi ? n_vars++ : -1});
    }
    if (multi) multi_iso_row.push_back(n_rows++);
  }

  // normalize intensities so the QP sees O(1) data; L1 weights rescale with
  // gamma, L2 weights are scale free
  double gamma = 0;
  for (const GroupingNode& g : component.groupings) gamma = std::max(gamma, g.intensity);
  if (gamma <= 0) gamma = 1;
  const double l1x = penalties.l1x / gamma;
  const double l1a = penalties.l1a / gamma;

  QpProblem qp;
  qp.P = Eigen::MatrixXd::Zero(n_vars, n_vars);
  qp.q = Eigen::VectorXd::Zero(n_vars);
  qp.A = Eigen::MatrixXd::Zero(n_rows, n_vars);
  qp.b = Eigen::VectorXd::Zero(n_rows);

  // data term: one residual per grouping
  std::unordered_map<int, std::vector<std::pair<int, double>>> grouping_terms;
  for (const Edge& e : edges) {
    const IsotopologueNode& iso = component.isotopologue(e.iso_id);
    if (e.var >= 0) {
      grouping_terms[e.grouping_id].push_back({e.var, 1.0});
    } else {
      grouping_terms[e.grouping_id].push_back(
          {species_var.at(iso.species_index), iso.probability});
    }
  }
  for (const GroupingNode& g : component.groupings) {
    const auto& terms = grouping_terms[g.id];
    const double target = g.intensity / gamma;
    for (const auto& [vi, ci] : terms) {
      qp.q[vi] += -2.0 * target * ci;
      for (const auto& [vj, cj] : terms) {
        qp.P(vi, vj) += 2.0 * ci * cj;
      }
    }
  }

  // penalties
  for (const Edge& e : edges) {
    const IsotopologueNode& iso = component.isotopologue(e.iso_id);
    if (e.var >= 0) {
      qp.q[e.var] += l1x;
      qp.P(e.var, e.var) += 2.0 * penalties.l2x;
    } else {
      const int av = species_var.at(iso.species_index);
      qp.q[av] += l1x * iso.probability;
      qp.P(av, av) += 2.0 * penalties.l2x * iso.probability * iso.probability;
    }
  }
  for (int s = 0; s < n_species; ++s) {
    qp.q[s] += l1a;
    qp.P(s, s) += 2.0 * penalties.l2a;
  }

  // equality rows: sum_G x = p * alpha for multi-grouping isotopologues
  {
    int row = 0;
    for (const IsotopologueNode& iso : component.isotopologues) {
      if (iso.grouping_ids.size() <= 1) continue;
      for (const Edge& e : edges) {
        if (e.iso_id == iso.id) qp.A(row, e.var) = 1.0;
      }
      qp.A(row, species_var.at(iso.species_index)) = -iso.probability;
      ++row;
    }
  }

  const QpResult qr = solve_qp_nonneg(qp);

  DeconvolutionSolution sol;
  sol.status = qr.status;
  for (const SpeciesNode& sp : component.species) {
    const double a = gamma * qr.v[species_var.at(sp.species_index)];
    sol.alpha[sp.species_id] = a;
    sol.alpha_by_species_index[sp.species_index] = a;
  }
  for (const Edge& e : edges) {
    const IsotopologueNode& iso = component.isotopologue(e.iso_id);
    const double x = e.var >= 0
                         ? gamma * qr.v[e.var]
                         : iso.probability * sol.alpha_by_species_index.at(iso.species_index);
    sol.flows[{e.iso_id, e.grouping_id}] = x;
  }

  // objective в raw units, data term plus penalties
  double obj = 0;
  for (const GroupingNode& g : component.groupings) {
    double outflow = 0;
    for (int iso_id : g.isotopologue_ids) outflow += sol.flows.at({iso_id, g.id});
    obj += (g.intensity - outflow) * (g.intensity - outflow);
  }
  for (const auto& [key, x] : sol.flows) obj += penalties.l1x * x + penalties.l2x * x * x;
  for (const auto& [id, a] : sol.alpha) obj += penalties.l1a * a + penalties.l2a * a * a;
  sol.objective = obj;
  return sol;
}

FitDiagnostics fit_diagnostics(const DeconvolutionSolution& sol, const DeconvolutionGraph& graph,
                               double tic, double explainable) {
  if (explainable < 0 || tic < explainable) {
    throw ValidationError("fit_diagnostics requires tic >= explainable >= 0");
  }
  FitDiagnostics d;
  for (const GroupingNode& g : graph.groupings) {
    double outflow = 0;
    for (int iso_id : g.isotopologue_ids) {
      auto it = sol.flows.find({iso_id, g.id});
      if (it != sol.flows.end()) outflow += it->second;
    }
    const double r = outflow - g.intensity;
    if (r > 0) {
      d.overestimates += r;
    } else {
      d.underestimates += -r;
    }
  }
  d.abs_error = d.overestimates + d.underestimates;
  if (tic <= 0) {
    d.tic_was_zero = true;
  } else {
    d.abs_error_over_tic = d.abs_error / tic;
    d.abs_error_over_explainable = explainable > 0 ? d.abs_error / explainable : 0;
  }
  return d;
}

double l1_mismatch(const std::map<double, double>& p, const std::map<double, double>& q) {
  double diff = 0, total = 0;
  auto ip = p.begin();
  auto iq = q.begin();
  while (ip != p.end() || iq != q.end()) {
    if (iq == q.end() || (ip != p.end() && ip->first < iq->first)) {
      diff += std::abs(ip->second);
      total += ip->second;
      ++ip;
    } else if (ip == p.end() || iq->first < ip->first) {
      diff += std::abs(iq->second);
      total += iq->second;
      ++iq;
    } else {
      diff += std::abs(ip->second - iq->second);
      total += ip->second + iq->second;
      ++ip;
      ++iq;
    }
  }
  return total > 0 ? diff / total : 0.0;
}

}  // namespace etdeconv
