/*
 * Copyright 2026 The radar_slam Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "radar_slam/pose_graph.h"

#include <cmath>
#include <stdexcept>

#include "Eigen/Sparse"
#include "Eigen/SparseCholesky"

namespace radar_slam {
namespace {

using Matrix3x6 = Eigen::Matrix<double, 3, 6>;

// Jacobian of EdgeResidual w.r.t. (x_from, y_from, yaw_from, x_to, y_to,
// yaw_to).
Matrix3x6 EdgeJacobian(const PoseGraphEdge& edge,
                       const std::vector<Pose2>& poses) {
  const Pose2& from = poses[edge.from];
  const Pose2& to = poses[edge.to];
  const Eigen::Matrix2d rz_t = edge.measurement.rotation().transpose();
  const Eigen::Matrix2d ri_t = from.rotation().transpose();
  const double c = std::cos(from.yaw());
  const double s = std::sin(from.yaw());
  Eigen::Matrix2d dri_t;
  dri_t << -s, c, -c, -s;
  const Eigen::Vector2d dt = to.translation() - from.translation();

  Matrix3x6 j = Matrix3x6::Zero();
  j.block<2, 2>(0, 0) = -rz_t * ri_t;
  j.block<2, 1>(0, 2) = rz_t * dri_t * dt;
  j.block<2, 2>(0, 3) = rz_t * ri_t;
  j(2, 2) = -1.0;
  j(2, 5) = 1.0;
  return j;
}

}  // namespace

Eigen::Vector3d InformationFromSigmas(double sigma_xy, double sigma_yaw) {
  const double ixy = 1.0 / (sigma_xy * sigma_xy);
  return {ixy, ixy, 1.0 / (sigma_yaw * sigma_yaw)};
}

int PoseGraph::AddNode(const Pose2& pose) {
  nodes.push_back(pose);
  return static_cast<int>(nodes.size()) - 1;
}

void PoseGraph::AddEdge(const PoseGraphEdge& edge) {
  const int n = static_cast<int>(nodes.size());
  if (edge.from < 0 || edge.from >= n || edge.to < 0 || edge.to >= n ||
      edge.from == edge.to) {
    throw std::invalid_argument("PoseGraph::AddEdge: bad node index");
  }
  edges.push_back(edge);
}

std::size_t PoseGraph::loop_edge_count() const {
  std::size_t count = 0;
  for (const auto& e : edges) count += e.kind == PoseGraphEdge::Kind::kLoop;
  return count;
}

Eigen::Vector3d EdgeResidual(const PoseGraphEdge& edge,
                             const std::vector<Pose2>& poses) {
  const Pose2 error =
      edge.measurement.inverse() * Between(poses[edge.from], poses[edge.to]);
  return {error.x(), error.y(), error.yaw()};
}

double GraphCost(const PoseGraph& graph, const std::vector<Pose2>& poses) {
  double cost = 0.0;
  for (const auto& edge : graph.edges) {
    const Eigen::Vector3d r = EdgeResidual(edge, poses);
    cost += r.dot(edge.information.cwiseProduct(r));
  }
  return cost;
}

OptimizationResult OptimizePoseGraph(const PoseGraph& graph,
                                     const OptimizerOptions& options) {
  OptimizationResult result;
  result.poses = graph.nodes;
  result.initial_cost = GraphCost(graph, graph.nodes);
  result.final_cost = result.initial_cost;
  const int n = static_cast<int>(graph.nodes.size());
  if (n <= 1 || graph.edges.empty()) {
    result.success = true;
    result.message = "nothing to optimize";
    return result;
  }
  {
    // Every node must be tied to the gauge, or the normal equations are
    // singular.
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (const auto& edge : graph.edges) parent[find(edge.from)] = find(edge.to);
    for (int i = 1; i < n; ++i) {
      if (find(i) != find(0)) {
        result.message = "singular normal equations: node " +
                         std::to_string(i) + " is not connected to node 0";
        return result;
      }
    }
  }
  const int dim = 3 * (n - 1);  // node 0 is the gauge
  auto column = [](int node) { return 3 * (node - 1); };

  std::vector<Pose2> poses = graph.nodes;
  double cost = result.initial_cost;
  double lambda = 0.0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  bool pattern_analyzed = false;

  for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(graph.edges.size() * 36 + dim);
    Eigen::VectorXd gradient = Eigen::VectorXd::Zero(dim);
    for (const auto& edge : graph.edges) {
      const Eigen::Vector3d r = EdgeResidual(edge, poses);
      const Matrix3x6 j = EdgeJacobian(edge, poses);
      const Eigen::Matrix3d w = edge.information.asDiagonal();
      const Eigen::Matrix<double, 6, 6> h = j.transpose() * w * j;
      const Eigen::Matrix<double, 6, 1> g = j.transpose() * w * r;
      const int nodes_of_edge[2] = {edge.from, edge.to};
      for (int a = 0; a < 2; ++a) {
        if (nodes_of_edge[a] == 0) continue;
        const int ca = column(nodes_of_edge[a]);
        gradient.segment<3>(ca) += g.segment<3>(3 * a);
        for (int b = 0; b < 2; ++b) {
          if (nodes_of_edge[b] == 0) continue;
          const int cb = column(nodes_of_edge[b]);
          for (int r_i = 0; r_i < 3; ++r_i) {
            for (int c_i = 0; c_i < 3; ++c_i) {
              triplets.emplace_back(ca + r_i, cb + c_i,
                                    h(3 * a + r_i, 3 * b + c_i));
            }
          }
        }
      }
    }
    Eigen::SparseMatrix<double> hessian(dim, dim);
    hessian.setFromTriplets(triplets.begin(), triplets.end());
    const Eigen::VectorXd diagonal = hessian.diagonal();

    bool accepted = false;
    Eigen::VectorXd step;
    for (int attempt = 0; attempt < 12 && !accepted; ++attempt) {
      Eigen::SparseMatrix<double> damped = hessian;
      if (lambda > 0.0) {
        for (int i = 0; i < dim; ++i) {
          damped.coeffRef(i, i) += lambda * std::max(diagonal[i], 1e-12);
        }
      }
      if (!pattern_analyzed) {
        solver.analyzePattern(damped);
        pattern_analyzed = true;
      }
      solver.factorize(damped);
      if (solver.info() != Eigen::Success) {
        result.message = "singular normal equations";
        result.poses = graph.nodes;
        result.final_cost = result.initial_cost;
        result.iterations = iteration;
        return result;
      }
      step = solver.solve(-gradient);
      const double pivot_floor = 1e-12 * std::max(diagonal.maxCoeff(), 1e-300);
      if (!step.allFinite() || (solver.vectorD().array() <= pivot_floor).any()) {
        result.message = "singular normal equations";
        result.poses = graph.nodes;
        result.final_cost = result.initial_cost;
        result.iterations = iteration;
        return result;
      }
      std::vector<Pose2> candidate = poses;
      for (int node = 1; node < n; ++node) {
        const int c = column(node);
        const Pose2& p = poses[node];
        candidate[node] =
            Pose2(p.x() + step[c], p.y() + step[c + 1], p.yaw() + step[c + 2]);
      }
      const double candidate_cost = GraphCost(graph, candidate);
      if (candidate_cost <= cost) {
        poses = std::move(candidate);
        cost = candidate_cost;
        accepted = true;
        lambda = lambda > 0.0 ? lambda / 10.0 : 0.0;
        if (lambda < 1e-9) lambda = 0.0;
      } else {
        lambda = lambda > 0.0 ? lambda * 10.0 : 1e-4;
      }
    }
    result.iterations = iteration;
    if (!accepted) break;
    if (step.norm() < options.step_tolerance) break;
  }
  result.poses = std::move(poses);
  result.final_cost = cost;
  result.success = true;
  if (result.message.empty()) result.message = "ok";
  return result;
}

}  // namespace radar_slam
