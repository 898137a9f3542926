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

#include <map>
#include <string>
#include <utility>

#include "etdeconv/assignment.hpp"
#include "etdeconv/qp.hpp"

namespace etdeconv {

struct Penalties {
  double l1x = 0.001;
  double l1a = 0.001;
  double l2x = 0.001;
  double l2a = 0.001;
};

struct DeconvolutionSolution {
  std::map<std::string, double> alpha;                 // species_id -> intensity
  std::map<int, double> alpha_by_species_index;        // species_index -> intensity
  std::map<std::pair<int, int>, double> flows;         // (isotopologue id, grouping id) -> x
  double objective = 0;                                // data term + penalties
  SolveStatus status = SolveStatus::optimal;
};

/// Minimizes sum_G (G_intensity - sum x)^2 plus L1/L2 penalties subject to
/// alpha_M p_M^I = sum_G x_G^I and x, alpha >= 0. Isotopologues adjacent to a
/// single grouping are substituted out before the QP.
DeconvolutionSolution solve_component(const DeconvolutionGraph& component,
                                      const Penalties& penalties = {});

struct FitDiagnostics {
  double abs_error = 0;
  double overestimates = 0;
  double underestimates = 0;
  double abs_error_over_tic = 0;
  double abs_error_over_explainable = 0;
  bool tic_was_zero = false;
};

FitDiagnostics fit_diagnostics(const DeconvolutionSolution& sol, const DeconvolutionGraph& graph,
                               double tic, double explainable);

/// Normalized l1 distance between intensity maps:
/// sum |p_k - q_k| / (sum p_k + sum q_k); 0 when both empty.
double l1_mismatch(const std::map<double, double>& p, const std::map<double, double>& q);

}  // namespace etdeconv
