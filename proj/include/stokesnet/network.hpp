#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "stokesnet/network_spec.hpp"
#include "stokesnet/scattering.hpp"

namespace stokesnet {

struct ComponentLibrary {
  std::map<std::string, ComponentGeometry> geometries;
  std::map<std::string, ScatteringMatrix> matrices;
  std::map<std::string, ComponentBasis> bases;  // needed for reconstruction

  const ScatteringMatrix& matrix_for(const std::string& component) const;
  const ComponentGeometry& geometry_for(const std::string& component) const;
};

/// Network with per-port resolution tables; construction enforces the
/// NetworkSpec invariants (every port joined or external, zero net external
/// flux, coincident opposed interfaces, equal widths).
struct ValidatedNetwork {
  NetworkSpec spec;
  std::vector<int> port_counts;                  // per instance
  std::vector<std::vector<int>> port_interface;  // [inst][port] -> idx or -1
  std::vector<std::vector<int>> port_external;   // [inst][port] -> idx or -1
};

ValidatedNetwork validate_network(const NetworkSpec& spec,
                                  const ComponentLibrary& library);

/// Instances as nodes, interfaces as (multi-)edges, BFS spanning tree and
/// one fundamental cycle per non-tree edge.
struct ConnectivityGraph {
  struct DirectedEdge {
    int edge = 0;
    bool forward = true;  // traversed a -> b
  };
  int node_count = 0;
  int root = 0;
  std::vector<int> parent_node;  // -1 at root
  std::vector<int> parent_edge;
  std::vector<char> edge_in_tree;
  std::vector<std::vector<DirectedEdge>> cycles;
};

ConnectivityGraph build_connectivity(const ValidatedNetwork& net,
                                     int root = 0);

std::vector<std::vector<ConnectivityGraph::DirectedEdge>> fundamental_cycles(
    const ValidatedNetwork& net, int root = 0);

/// One conservation row per instance plus one pressure-continuity row per
/// fundamental cycle; unknowns are the signed interface fluxes (a -> b
/// positive, column order = declaration order).
struct AssemblySystem {
  Eigen::MatrixXd A;  // (instances + cycles) x interfaces
  Eigen::VectorXd rhs;
  int instances = 0;
  int cycle_count = 0;
  int interface_count = 0;
  ConnectivityGraph graph;
};

AssemblySystem assemble(const ValidatedNetwork& net,
                        const ComponentLibrary& library, int root = 0);

struct AssemblySolveStats {
  bool least_squares_path = true;
  double cross_check_diff = 0.0;  // LS vs square-reduced solution
  double residual = 0.0;          // full-system relative residual
  int factorizations = 0;
};

Eigen::VectorXd solve_assembly(const AssemblySystem& system,
                               AssemblySolveStats* stats = nullptr);

/// Leaf-to-root recursion for acyclic networks; pure arithmetic, no
/// factorization. Throws NotAcyclic when cycles are present.
Eigen::VectorXd acyclic_solve(const ValidatedNetwork& net,
                              AssemblySolveStats* stats = nullptr);

struct NetworkSolution {
  Eigen::VectorXd interface_flux;
  std::vector<Eigen::VectorXd> outflow;  // per instance, ports 1..m-1
  std::vector<double> instance_offset;   // pressure constant per instance
  std::vector<double> external_pressure; // per external entry, ref = 0
  std::vector<double> interface_pressure;
  double max_cycle_residual = 0.0;
  int reference_external = 0;
};

/// Assign pressures by walking the spanning tree with the per-instance
/// scattering relations; the first external port is pinned to zero.
NetworkSolution propagate_pressures(const ValidatedNetwork& net,
                                    const ComponentLibrary& library,
                                    const Eigen::VectorXd& fluxes,
                                    int root = 0);

struct ConditionNumbers {
  double rectangular = 0.0;
  double square_reduced = 0.0;
};

ConditionNumbers condition_number(const AssemblySystem& system);

/// Field reconstruction from the per-instance basis superpositions. Points
/// must lie inside some instance; velocities are rotated back to the global
/// frame and pressures shifted by the instance constants.
std::vector<FieldSample> reconstruct_field(const ValidatedNetwork& net,
                                           const ComponentLibrary& library,
                                           const NetworkSolution& solution,
                                           const std::vector<Complex>& points,
                                           const SolverConfig& cfg);

/// Evaluate inside a specific instance (used for interface-jump checks where
/// the point lies on a shared port plane).
FieldSample reconstruct_at(const ValidatedNetwork& net,
                           const ComponentLibrary& library,
                           const NetworkSolution& solution, Complex z,
                           int instance, const SolverConfig& cfg);

/// n x n lattice of 4-port crosses (ports E,N,W,S). Perimeter ports are
/// external with zero flux except the drive: inflow 1 at the top-left N
/// port, outflow 1 at the bottom-right S port.
NetworkSpec grid_builder(int n, const std::string& cross_component,
                         double pitch);

}  // namespace stokesnet
