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
#include "etdeconv/qp.hpp"

#include <cmath>

#include "etdeconv/composition.hpp"

namespace etdeconv {

namespace {

// Factorization of the reduced KKT system via the Schur complement:
//   [P+D  A'] [dv]   [f]
//   [A    0 ] [dy] = [g]
// with D > 0 diagonal, so P+D is positive definite and S = A(P+D)^-1 A' too.
struct KktSolver {
  Eigen::LLT<Eigen::MatrixXd> llt_m;
  Eigen::LLT<Eigen::MatrixXd> llt_s;
  const Eigen::MatrixXd* a = nullptr;

  bool factor(const Eigen::MatrixXd& p, const Eigen::VectorXd& d, const Eigen::MatrixXd& a_in) {
    a = &a_in;
    Eigen::MatrixXd m = p;
    m.diagonal() += d;
    double ridge = 0;
    for (int attempt = 0; attempt < 4; ++attempt) {
      if (attempt > 0) {
        ridge = ridge == 0 ? 1e-12 * (1.0 + m.diagonal().maxCoeff()) : ridge * 1e3;
        m.diagonal().array() += ridge;
      }
      llt_m.compute(m);
      if (llt_m.info() != Eigen::Success) continue;
      if (a->rows() == 0) return true;
      Eigen::MatrixXd s = (*a) * llt_m.solve(a->transpose());
      llt_s.compute(s);
      if (llt_s.info() == Eigen::Success) return true;
    }
    return false;
  }

  void solve(const Eigen::VectorXd& f, const Eigen::VectorXd& g, Eigen::VectorXd& dv,
             Eigen::VectorXd& dy) const {
    if (a->rows() == 0) {
      dv = llt_m.solve(f);
      dy.resize(0);
      return;
    }
    const Eigen::VectorXd w = llt_m.solve(f);
    dy = llt_s.solve((*a) * w - g);
    dv = llt_m.solve(f - a->transpose() * dy);
  }
};

double step_to_boundary(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
  double alpha = 1.0;
  for (int i = 0; i < x.size(); ++i) {
    if (dx[i] < 0) alpha = std::min(alpha, -x[i] / dx[i]);
  }
  return alpha;
}

}  // namespace

QpResult solve_qp_nonneg(const QpProblem& prob, int max_iterations, double tol) {
  const int n = static_cast<int>(prob.q.size());
  const int m = static_cast<int>(prob.A.rows());
  if (prob.P.rows() != n || prob.P.cols() != n) throw ValidationError("qp: P shape mismatch");
  if (m > 0 && prob.A.cols() != n) throw ValidationError("qp: A shape mismatch");
  if (prob.b.size() != m) throw ValidationError("qp: b shape mismatch");
  if (n == 0) {
    QpResult empty;
    empty.status = SolveStatus::optimal;
    return empty;
  }

  const double qs = 1.0 + prob.q.lpNorm<Eigen::Infinity>();
  const double bs = 1.0 + (m > 0 ? prob.b.lpNorm<Eigen::Infinity>() : 0.0);
  const double start = std::max(1.0, std::sqrt(qs + bs));

  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, start);
  Eigen::VectorXd z = Eigen::VectorXd::Constant(n, start);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  QpResult result;
  KktSolver kkt;
  Eigen::VectorXd dv_aff(n), dz_aff(n), dy_aff(m), dv(n), dz(n), dy(m);

  for (int iter = 0; iter < max_iterations; ++iter) {
    const Eigen::VectorXd pv = prob.P * v;
    Eigen::VectorXd r_d = pv + prob.q - z;
    if (m > 0) r_d += prob.A.transpose() * y;
    const Eigen::VectorXd r_p = m > 0 ? Eigen::VectorXd(prob.A * v - prob.b) : Eigen::VectorXd();
    const double mu = v.dot(z) / n;

    const double rd_norm = r_d.lpNorm<Eigen::Infinity>() / (qs + pv.lpNorm<Eigen::Infinity>());
    const double rp_norm = m > 0 ? r_p.lpNorm<Eigen::Infinity>() / bs : 0.0;
    const double gap = mu / (1.0 + std::abs(v.dot(pv) / 2 + prob.q.dot(v)) / n);
    result.iterations = iter;
    if (rd_norm <= tol && rp_norm <= tol && gap <= tol) {
      result.status = SolveStatus::optimal;
      break;
    }

    const Eigen::VectorXd d = (z.array() / v.array()).matrix();
    if (!kkt.factor(prob.P, d, prob.A)) {
      result.status = SolveStatus::max_iterations;
      break;
    }

    // affine scaling (predictor) direction
    const Eigen::VectorXd f_aff = -r_d - z;
    const Eigen::VectorXd g_aff = m > 0 ? Eigen::VectorXd(-r_p) : Eigen::VectorXd();
    kkt.solve(f_aff, g_aff, dv_aff, dy_aff);
    dz_aff = (-z.array() - (z.array() / v.array()) * dv_aff.array()).matrix();

    const double ap_aff = step_to_boundary(v, dv_aff);
    const double ad_aff = step_to_boundary(z, dz_aff);
    const double mu_aff = (v + ap_aff * dv_aff).dot(z + ad_aff * dz_aff) / n;
    const double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);

    // corrector with Mehrotra second-order term
    const Eigen::VectorXd rc =
        (v.array() * z.array() + dv_aff.array() * dz_aff.array() - sigma * mu).matrix();
    const Eigen::VectorXd f = -r_d - (rc.array() / v.array()).matrix();
    kkt.solve(f, g_aff, dv, dy);
    dz = (-(rc.array() / v.array()) - (z.array() / v.array()) * dv.array()).matrix();

    const double eta = 0.995;
    const double ap = std::min(1.0, eta * step_to_boundary(v, dv));
    const double ad = std::min(1.0, eta * step_to_boundary(z, dz));
    if (!std::isfinite(ap) || !std::isfinite(ad) || (ap < 1e-14 && ad < 1e-14)) {
      result.status = SolveStatus::max_iterations;
      break;
    }
    v += ap * dv;
    z += ad * dz;
    if (m > 0) y += ad * dy;
  }

  if (!v.allFinite()) {
    result.status = SolveStatus::infeasible;
    v = Eigen::VectorXd::Zero(n);
  }
  result.v = v.cwiseMax(0.0);
  result.objective = 0.5 * result.v.dot(prob.P * result.v) + prob.q.dot(result.v);
  return result;
}

}  // namespace etdeconv
