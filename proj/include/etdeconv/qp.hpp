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

#include <Eigen/Dense>

namespace etdeconv {

enum class SolveStatus { optimal, max_iterations, infeasible };

/// Convex quadratic program in standard form:
///   min 1/2 v'Pv + q'v   s.t.  Av = b,  v >= 0
/// P must be positive semidefinite; A (possibly empty) full row rank.
struct QpProblem {
  Eigen::MatrixXd P;
  Eigen::VectorXd q;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

struct QpResult {
  Eigen::VectorXd v;
  SolveStatus status = SolveStatus::max_iterations;
  int iterations = 0;
  double objective = 0;
};

/// Mehrotra predictor-corrector path following. `tol` bounds the relative
/// primal/dual residuals and the complementarity gap.
QpResult solve_qp_nonneg(const QpProblem& prob, int max_iterations = 200, double tol = 1e-8);

}  // namespace etdeconv
