#include "stokesnet/network.hpp"

#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <deque>

#include "stokesnet/errors.hpp"

namespace stokesnet {

const ScatteringMatrix& ComponentLibrary::matrix_for(
    const std::string& component) const {
  auto it = matrices.find(component);
  if (it == matrices.end())
    fail(ErrorCode::MissingScatteringMatrix,
         "no scattering matrix for component '" + component + "'");
  return it->second;
}

const ComponentGeometry& ComponentLibrary::geometry_for(
    const std::string& component) const {
  auto it = geometries.find(component);
  if (it == geometries.end())
    fail(ErrorCode::MissingScatteringMatrix,
         "no geometry for component '" + component + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// validate_network
// ---------------------------------------------------------------------------

ValidatedNetwork validate_network(const NetworkSpec& spec,
                                  const ComponentLibrary& library) {
  ValidatedNetwork net;
  net.spec = spec;
  const int V = static_cast<int>(spec.instances.size());
  if (V == 0) fail(ErrorCode::ParseError, "network has no instances");

  net.port_counts.resize(V);
  net.port_interface.resize(V);
  net.port_external.resize(V);
  for (int i = 0; i < V; ++i) {
    const ComponentGeometry& g =
        library.geometry_for(spec.instances[i].component);
    net.port_counts[i] = static_cast<int>(g.ports.size());
    net.port_interface[i].assign(net.port_counts[i], -1);
    net.port_external[i].assign(net.port_counts[i], -1);
  }

  auto claim = [&](int inst, int port, std::vector<std::vector<int>>& table,
                   int idx, const char* what) {
    if (inst < 0 || inst >= V)
      fail(ErrorCode::ParseError, std::string(what) + ": bad instance index");
    if (port < 0 || port >= net.port_counts[inst])
      fail(ErrorCode::ParseError, std::string(what) + ": bad port index");
    if (net.port_interface[inst][port] >= 0 ||
        net.port_external[inst][port] >= 0)
      fail(ErrorCode::ParseError,
           std::string(what) + ": port assigned more than once");
    table[inst][port] = idx;
  };
  for (size_t k = 0; k < spec.interfaces.size(); ++k) {
    const InterfaceSpec& f = spec.interfaces[k];
    claim(f.inst_a, f.port_a, net.port_interface, static_cast<int>(k),
          "interface");
    claim(f.inst_b, f.port_b, net.port_interface, static_cast<int>(k),
          "interface");
  }
  for (size_t k = 0; k < spec.externals.size(); ++k)
    claim(spec.externals[k].inst, spec.externals[k].port, net.port_external,
          static_cast<int>(k), "external");

  for (int i = 0; i < V; ++i)
    for (int p = 0; p < net.port_counts[i]; ++p)
      if (net.port_interface[i][p] < 0 && net.port_external[i][p] < 0)
        fail(ErrorCode::DanglingPort,
             "instance " + std::to_string(i) + " port " + std::to_string(p) +
                 " is neither joined nor external");

  // External fluxes must balance.
  double net_flux = 0.0, max_flux = 0.0;
  for (const ExternalSpec& e : spec.externals) {
    net_flux += e.flux;
    max_flux = std::max(max_flux, std::abs(e.flux));
  }
  if (std::abs(net_flux) > 1e-12 * std::max(max_flux, 1e-30))
    fail(ErrorCode::FluxImbalance,
         "external fluxes sum to " + std::to_string(net_flux));

  // Geometric interface checks on the placed ports.
  for (const InterfaceSpec& f : spec.interfaces) {
    const ComponentGeometry& ga =
        library.geometry_for(spec.instances[f.inst_a].component);
    const ComponentGeometry& gb =
        library.geometry_for(spec.instances[f.inst_b].component);
    const Port& pa = ga.ports.at(f.port_a);
    const Port& pb = gb.ports.at(f.port_b);
    const double W = 2.0 * pa.half_width;
    if (std::abs(pa.half_width - pb.half_width) > 1e-10 * pa.half_width)
      fail(ErrorCode::WidthMismatch, "joined ports have different widths");
    const Placement& Pa = spec.instances[f.inst_a].placement;
    const Placement& Pb = spec.instances[f.inst_b].placement;
    const Complex ca = Pa.apply(pa.center), cb = Pb.apply(pb.center);
    const Complex aa = Pa.apply_vector(pa.axis), ab = Pb.apply_vector(pb.axis);
    if (std::abs(ca - cb) > 1e-10 * W || std::abs(aa + ab) > 1e-10)
      fail(ErrorCode::MisalignedInterface,
           "joined port planes do not coincide with opposed axes");
  }
  return net;
}

// ---------------------------------------------------------------------------
// connectivity
// ---------------------------------------------------------------------------

ConnectivityGraph build_connectivity(const ValidatedNetwork& net, int root) {
  ConnectivityGraph g;
  const int V = static_cast<int>(net.spec.instances.size());
  const int E = static_cast<int>(net.spec.interfaces.size());
  g.node_count = V;
  g.root = root;
  g.parent_node.assign(V, -1);
  g.parent_edge.assign(V, -1);
  g.edge_in_tree.assign(E, 0);

  std::vector<std::vector<std::pair<int, int>>> adj(V);  // (other, edge)
  for (int k = 0; k < E; ++k) {
    adj[net.spec.interfaces[k].inst_a].push_back(
        {net.spec.interfaces[k].inst_b, k});
    adj[net.spec.interfaces[k].inst_b].push_back(
        {net.spec.interfaces[k].inst_a, k});
  }
  std::vector<char> seen(V, 0);
  std::deque<int> queue{root};
  seen[root] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (auto [u, k] : adj[v]) {
      if (seen[u]) continue;
      seen[u] = 1;
      g.parent_node[u] = v;
      g.parent_edge[u] = k;
      g.edge_in_tree[k] = 1;
      queue.push_back(u);
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != V)
    fail(ErrorCode::DisconnectedNetwork,
         "network connectivity graph is disconnected");

  // One fundamental cycle per non-tree edge: a -(e)-> b, then tree path back.
  auto path_to_root = [&](int v) {
    std::vector<int> nodes{v};
    while (g.parent_node[nodes.back()] >= 0)
      nodes.push_back(g.parent_node[nodes.back()]);
    return nodes;
  };
  for (int k = 0; k < E; ++k) {
    if (g.edge_in_tree[k]) continue;
    const int a = net.spec.interfaces[k].inst_a;
    const int b = net.spec.interfaces[k].inst_b;
    std::vector<int> pa = path_to_root(a), pb = path_to_root(b);
    // strip the common tail above the least common ancestor
    while (pa.size() > 1 && pb.size() > 1 &&
           pa[pa.size() - 2] == pb[pb.size() - 2]) {
      pa.pop_back();
      pb.pop_back();
    }
    std::vector<ConnectivityGraph::DirectedEdge> cycle;
    cycle.push_back({k, true});  // a -> b
    // b up to LCA
    for (size_t t = 0; t + 1 < pb.size(); ++t) {
      const int child = pb[t];
      const int e = g.parent_edge[child];
      cycle.push_back({e, net.spec.interfaces[e].inst_a == child});
    }
    // LCA down to a
    for (size_t t = pa.size() - 1; t-- > 0;) {
      const int child = pa[t];
      const int e = g.parent_edge[child];
      cycle.push_back({e, net.spec.interfaces[e].inst_b == child});
    }
    g.cycles.push_back(std::move(cycle));
  }
  return g;
}

std::vector<std::vector<ConnectivityGraph::DirectedEdge>> fundamental_cycles(
    const ValidatedNetwork& net, int root) {
  return build_connectivity(net, root).cycles;
}

// ---------------------------------------------------------------------------
// assembly
// ---------------------------------------------------------------------------

namespace {

// Pressure drop Delta_v(q) of instance v at port q as a linear form in the
// unknown interface fluxes plus a known part: row(col) += signed S terms.
struct LinearForm {
  std::map<int, double> coeff;  // interface column -> coefficient
  double known = 0.0;
};

void add_delta(const ValidatedNetwork& net, const ComponentLibrary& lib,
               int inst, int q, double sign, LinearForm& form) {
  if (q == 0) return;
  const ScatteringMatrix& sm =
      lib.matrix_for(net.spec.instances[inst].component);
  const int m = net.port_counts[inst];
  for (int l = 1; l < m; ++l) {
    const double s = sm.S(q - 1, l - 1) * sign;
    const int fidx = net.port_interface[inst][l];
    if (fidx >= 0) {
      const double orient =
          (net.spec.interfaces[fidx].inst_a == inst &&
           net.spec.interfaces[fidx].port_a == l)
              ? 1.0
              : -1.0;
      form.coeff[fidx] += s * orient;
    } else {
      const int eidx = net.port_external[inst][l];
      form.known += s * net.spec.externals[eidx].flux;
    }
  }
}

int port_on_edge(const ValidatedNetwork& net, int edge, int inst) {
  const InterfaceSpec& f = net.spec.interfaces[edge];
  if (f.inst_a == inst) return f.port_a;
  if (f.inst_b == inst) return f.port_b;
  fail(ErrorCode::ParseError, "internal: instance not on edge");
}

}  // namespace

AssemblySystem assemble(const ValidatedNetwork& net,
                        const ComponentLibrary& library, int root) {
  AssemblySystem sys;
  const int V = static_cast<int>(net.spec.instances.size());
  const int E = static_cast<int>(net.spec.interfaces.size());
  for (const InstanceSpec& inst : net.spec.instances)
    library.matrix_for(inst.component);  // fail early when entries are absent
  sys.graph = build_connectivity(net, root);
  const int C = static_cast<int>(sys.graph.cycles.size());
  sys.instances = V;
  sys.cycle_count = C;
  sys.interface_count = E;
  sys.A = Eigen::MatrixXd::Zero(V + C, E);
  sys.rhs = Eigen::VectorXd::Zero(V + C);

  // conservation rows
  for (int k = 0; k < E; ++k) {
    sys.A(net.spec.interfaces[k].inst_a, k) += 1.0;
    sys.A(net.spec.interfaces[k].inst_b, k) -= 1.0;
  }
  for (const ExternalSpec& e : net.spec.externals) sys.rhs[e.inst] -= e.flux;

  // cycle rows: sum over traversed instances of Delta(exit) - Delta(enter)
  for (int c = 0; c < C; ++c) {
    const auto& cycle = sys.graph.cycles[c];
    const int L = static_cast<int>(cycle.size());
    LinearForm row;
    for (int t = 0; t < L; ++t) {
      const auto& arrive = cycle[t];
      const auto& depart = cycle[(t + 1) % L];
      const InterfaceSpec& fa = net.spec.interfaces[arrive.edge];
      const InterfaceSpec& fd = net.spec.interfaces[depart.edge];
      const int v = arrive.forward ? fa.inst_b : fa.inst_a;
      const int p_in = arrive.forward ? fa.port_b : fa.port_a;
      const int p_out = depart.forward ? fd.port_a : fd.port_b;
      add_delta(net, library, v, p_out, +1.0, row);
      add_delta(net, library, v, p_in, -1.0, row);
    }
    for (auto [col, val] : row.coeff) sys.A(V + c, col) = val;
    sys.rhs[V + c] = -row.known;
  }
  return sys;
}

Eigen::VectorXd solve_assembly(const AssemblySystem& sys,
                               AssemblySolveStats* stats) {
  const int E = sys.interface_count;
  AssemblySolveStats local;
  if (E == 0) {
    if (stats) *stats = local;
    return Eigen::VectorXd();
  }

  Eigen::VectorXd x;
  if (E <= 2000) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys.A);
    local.factorizations = 1;
    if (qr.rank() < E)
      fail(ErrorCode::RankDeficient,
           "assembly matrix rank " + std::to_string(qr.rank()) + " < " +
               std::to_string(E) + " unknowns");
    x = qr.solve(sys.rhs);

    // cross-check: drop the last conservation row (it is dependent)
    const int rows = static_cast<int>(sys.A.rows());
    Eigen::MatrixXd Asq(rows - 1, E);
    Eigen::VectorXd bsq(rows - 1);
    Asq.topRows(sys.instances - 1) = sys.A.topRows(sys.instances - 1);
    Asq.bottomRows(sys.cycle_count) = sys.A.bottomRows(sys.cycle_count);
    bsq.head(sys.instances - 1) = sys.rhs.head(sys.instances - 1);
    bsq.tail(sys.cycle_count) = sys.rhs.tail(sys.cycle_count);
    Eigen::VectorXd xsq = Asq.fullPivLu().solve(bsq);
    local.factorizations = 2;
    local.cross_check_diff = (x - xsq).lpNorm<Eigen::Infinity>() /
                             std::max(1.0, x.lpNorm<Eigen::Infinity>());
    local.least_squares_path = true;
  } else {
    // large grids: sparse LU on the square-reduced system
    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> trips;
    const int rows = static_cast<int>(sys.A.rows());
    Eigen::VectorXd bsq(rows - 1);
    int r = 0;
    for (int i = 0; i < rows; ++i) {
      if (i == sys.instances - 1) continue;  // dropped conservation row
      for (int k = 0; k < E; ++k)
        if (sys.A(i, k) != 0.0) trips.emplace_back(r, k, sys.A(i, k));
      bsq[r] = sys.rhs[i];
      ++r;
    }
    Eigen::SparseMatrix<double> Asq(rows - 1, E);
    Asq.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(Asq);
    local.factorizations = 1;
    if (lu.info() != Eigen::Success)
      fail(ErrorCode::RankDeficient, "sparse assembly factorization failed");
    x = lu.solve(bsq);
    local.least_squares_path = false;
  }

  local.residual = (sys.A * x - sys.rhs).norm() /
                   std::max(1e-300, sys.rhs.norm());
  if (stats) *stats = local;
  return x;
}

Eigen::VectorXd acyclic_solve(const ValidatedNetwork& net,
                              AssemblySolveStats* stats) {
  const int V = static_cast<int>(net.spec.instances.size());
  const int E = static_cast<int>(net.spec.interfaces.size());
  {
    const ConnectivityGraph g = build_connectivity(net, 0);
    if (!g.cycles.empty())
      fail(ErrorCode::NotAcyclic, "network has " +
                                      std::to_string(g.cycles.size()) +
                                      " independent cycles");
  }

  Eigen::VectorXd flux = Eigen::VectorXd::Zero(E);
  std::vector<char> resolved(E, 0);
  std::vector<int> unresolved(V, 0);
  std::vector<double> known_out(V, 0.0);
  for (const ExternalSpec& e : net.spec.externals) known_out[e.inst] += e.flux;
  for (int k = 0; k < E; ++k) {
    ++unresolved[net.spec.interfaces[k].inst_a];
    ++unresolved[net.spec.interfaces[k].inst_b];
  }
  std::deque<int> leaves;
  for (int v = 0; v < V; ++v)
    if (unresolved[v] == 1) leaves.push_back(v);

  int solved = 0;
  while (!leaves.empty()) {
    const int v = leaves.front();
    leaves.pop_front();
    if (unresolved[v] != 1) continue;
    int edge = -1;
    for (int k = 0; k < E; ++k) {
      if (resolved[k]) continue;
      if (net.spec.interfaces[k].inst_a == v ||
          net.spec.interfaces[k].inst_b == v) {
        edge = k;
        break;
      }
    }
    if (edge < 0) break;
    const bool a_side = net.spec.interfaces[edge].inst_a == v;
    // conservation at v: sigma * f + known_out = 0
    flux[edge] = a_side ? -known_out[v] : known_out[v];
    resolved[edge] = 1;
    ++solved;
    const int u = a_side ? net.spec.interfaces[edge].inst_b
                         : net.spec.interfaces[edge].inst_a;
    known_out[u] += (net.spec.interfaces[edge].inst_a == u) ? flux[edge]
                                                            : -flux[edge];
    --unresolved[v];
    if (--unresolved[u] == 1) leaves.push_back(u);
  }
  if (solved != E)
    fail(ErrorCode::NotAcyclic, "leaf elimination stalled");
  if (stats) {
    *stats = AssemblySolveStats{};
    stats->least_squares_path = false;
    stats->factorizations = 0;
  }
  return flux;
}

// ---------------------------------------------------------------------------
// pressures
// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXd instance_outflow(const ValidatedNetwork& net,
                                 const Eigen::VectorXd& flux, int inst) {
  const int m = net.port_counts[inst];
  Eigen::VectorXd out(m - 1);
  for (int l = 1; l < m; ++l) {
    const int fidx = net.port_interface[inst][l];
    if (fidx >= 0) {
      const bool a_side = net.spec.interfaces[fidx].inst_a == inst &&
                          net.spec.interfaces[fidx].port_a == l;
      out[l - 1] = a_side ? flux[fidx] : -flux[fidx];
    } else {
      out[l - 1] = net.spec.externals[net.port_external[inst][l]].flux;
    }
  }
  return out;
}

double delta_at(const ComponentLibrary& lib, const ValidatedNetwork& net,
                int inst, int q, const Eigen::VectorXd& outflow) {
  if (q == 0) return 0.0;
  const ScatteringMatrix& sm =
      lib.matrix_for(net.spec.instances[inst].component);
  return sm.S.row(q - 1).dot(outflow);
}

}  // namespace

NetworkSolution propagate_pressures(const ValidatedNetwork& net,
                                    const ComponentLibrary& library,
                                    const Eigen::VectorXd& fluxes, int root) {
  NetworkSolution sol;
  sol.interface_flux = fluxes;
  const int V = static_cast<int>(net.spec.instances.size());
  const int E = static_cast<int>(net.spec.interfaces.size());

  for (int v = 0; v < V; ++v)
    sol.outflow.push_back(instance_outflow(net, fluxes, v));

  const ConnectivityGraph g = build_connectivity(net, root);
  sol.instance_offset.assign(V, 0.0);
  // BFS order: parents before children.
  {
    std::vector<int> order{g.root};
    std::vector<char> seen(V, 0);
    seen[g.root] = 1;
    for (size_t qi = 0; qi < order.size(); ++qi) {
      for (int u = 0; u < V; ++u)
        if (!seen[u] && g.parent_node[u] == order[qi]) {
          seen[u] = 1;
          order.push_back(u);
        }
    }
    for (int u : order) {
      if (g.parent_node[u] < 0) continue;
      const int v = g.parent_node[u];
      const int e = g.parent_edge[u];
      const int pv = port_on_edge(net, e, v);
      const int pu = port_on_edge(net, e, u);
      sol.instance_offset[u] = sol.instance_offset[v] +
                               delta_at(library, net, v, pv, sol.outflow[v]) -
                               delta_at(library, net, u, pu, sol.outflow[u]);
    }
  }

  sol.interface_pressure.assign(E, 0.0);
  for (int k = 0; k < E; ++k) {
    const InterfaceSpec& f = net.spec.interfaces[k];
    const double va = sol.instance_offset[f.inst_a] +
                      delta_at(library, net, f.inst_a, f.port_a,
                               sol.outflow[f.inst_a]);
    const double vb = sol.instance_offset[f.inst_b] +
                      delta_at(library, net, f.inst_b, f.port_b,
                               sol.outflow[f.inst_b]);
    sol.interface_pressure[k] = va;
    sol.max_cycle_residual = std::max(sol.max_cycle_residual,
                                      std::abs(va - vb));
  }

  sol.external_pressure.assign(net.spec.externals.size(), 0.0);
  for (size_t k = 0; k < net.spec.externals.size(); ++k) {
    const ExternalSpec& e = net.spec.externals[k];
    sol.external_pressure[k] =
        sol.instance_offset[e.inst] +
        delta_at(library, net, e.inst, e.port, sol.outflow[e.inst]);
  }
  if (!sol.external_pressure.empty()) {
    const double ref = sol.external_pressure[0];
    sol.reference_external = 0;
    for (double& p : sol.external_pressure) p -= ref;
    for (double& p : sol.interface_pressure) p -= ref;
    for (double& p : sol.instance_offset) p -= ref;
  }
  return sol;
}

ConditionNumbers condition_number(const AssemblySystem& sys) {
  ConditionNumbers out;
  if (sys.interface_count == 0) return out;
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.A);
    const auto& s = svd.singularValues();
    out.rectangular = s[0] / s[s.size() - 1];
  }
  {
    const int rows = static_cast<int>(sys.A.rows());
    Eigen::MatrixXd Asq(rows - 1, sys.interface_count);
    Asq.topRows(sys.instances - 1) = sys.A.topRows(sys.instances - 1);
    Asq.bottomRows(sys.cycle_count) = sys.A.bottomRows(sys.cycle_count);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Asq);
    const auto& s = svd.singularValues();
    out.square_reduced = s[0] / s[s.size() - 1];
  }
  return out;
}

// ---------------------------------------------------------------------------
// reconstruction
// ---------------------------------------------------------------------------

namespace {

struct InstanceFrame {
  ComponentGeometry placed;
  double pressure_gamma = 0.0;  // aligns the basis pressure constant
};

InstanceFrame make_frame(const ValidatedNetwork& net,
                         const ComponentLibrary& lib,
                         const NetworkSolution& sol, int inst,
                         const SolverConfig& cfg) {
  const std::string& comp = net.spec.instances[inst].component;
  const ComponentGeometry& local = lib.geometry_for(comp);
  auto bit = lib.bases.find(comp);
  if (bit == lib.bases.end())
    fail(ErrorCode::MissingScatteringMatrix,
         "no basis solutions stored for component '" + comp + "'");
  InstanceFrame frame{apply_placement(local, net.spec.instances[inst].placement),
                      0.0};
  // Local basis pressure at port 0 vs the network's value there (= offset).
  const FieldSample f0 = local_field(local, bit->second, sol.outflow[inst],
                                     local.ports.at(0).center, cfg.mu, cfg);
  frame.pressure_gamma = sol.instance_offset[inst] - f0.pressure;
  return frame;
}

FieldSample eval_in_instance(const ValidatedNetwork& net,
                             const ComponentLibrary& lib,
                             const NetworkSolution& sol, int inst,
                             const InstanceFrame& frame,
                             const std::vector<Complex>& pts_global,
                             std::vector<FieldSample>& out,
                             const SolverConfig& cfg, bool check) {
  const std::string& comp = net.spec.instances[inst].component;
  const ComponentGeometry& local = lib.geometry_for(comp);
  const ComponentBasis& basis = lib.bases.at(comp);
  const Placement place = net.spec.instances[inst].placement;
  const Placement inv = place.inverse();
  std::vector<Complex> pts_local(pts_global.size());
  for (size_t i = 0; i < pts_global.size(); ++i)
    pts_local[i] = inv.apply(pts_global[i]);
  out = local_fields(local, basis, sol.outflow[inst], pts_local, cfg.mu, cfg,
                     check);
  const Complex rot = place.rotor();
  for (FieldSample& f : out) {
    f.velocity *= rot;
    f.pressure += frame.pressure_gamma;
  }
  return out.empty() ? FieldSample{} : out.front();
}

}  // namespace

std::vector<FieldSample> reconstruct_field(const ValidatedNetwork& net,
                                           const ComponentLibrary& library,
                                           const NetworkSolution& solution,
                                           const std::vector<Complex>& points,
                                           const SolverConfig& cfg) {
  const int V = static_cast<int>(net.spec.instances.size());
  std::vector<InstanceFrame> frames;
  frames.reserve(V);
  for (int v = 0; v < V; ++v)
    frames.push_back(make_frame(net, library, solution, v, cfg));

  // Group points by owning instance.
  std::vector<int> owner(points.size(), -1);
  for (size_t i = 0; i < points.size(); ++i) {
    for (int v = 0; v < V; ++v)
      if (point_in_domain(frames[v].placed, points[i])) {
        owner[i] = v;
        break;
      }
    if (owner[i] < 0)
      fail(ErrorCode::PointOutsideDomain,
           "point is not inside any network instance");
    check_eval_point(frames[owner[i]].placed, points[i],
                     cfg.near_exclusion_factor);
  }
  std::vector<FieldSample> result(points.size());
  for (int v = 0; v < V; ++v) {
    std::vector<Complex> mine;
    std::vector<size_t> idx;
    for (size_t i = 0; i < points.size(); ++i)
      if (owner[i] == v) {
        mine.push_back(points[i]);
        idx.push_back(i);
      }
    if (mine.empty()) continue;
    std::vector<FieldSample> vals;
    eval_in_instance(net, library, solution, v, frames[v], mine, vals, cfg,
                     false);
    for (size_t k = 0; k < idx.size(); ++k) result[idx[k]] = vals[k];
  }
  return result;
}

FieldSample reconstruct_at(const ValidatedNetwork& net,
                           const ComponentLibrary& library,
                           const NetworkSolution& solution, Complex z,
                           int instance, const SolverConfig& cfg) {
  const InstanceFrame frame =
      make_frame(net, library, solution, instance, cfg);
  std::vector<FieldSample> vals;
  eval_in_instance(net, library, solution, instance, frame, {z}, vals, cfg,
                   false);
  return vals.front();
}

// ---------------------------------------------------------------------------
// grid builder
// ---------------------------------------------------------------------------

NetworkSpec grid_builder(int n, const std::string& cross_component,
                         double pitch) {
  if (n < 1) fail(ErrorCode::ParseError, "grid size must be >= 1");
  NetworkSpec spec;
  spec.name = "grid" + std::to_string(n);
  auto idx = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      spec.instances.push_back(
          {cross_component,
           Placement{0.0, Complex(j * pitch, -i * pitch)}});
  // ports: 0 = E, 1 = N, 2 = W, 3 = S (arm declaration order of the cross)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j + 1 < n; ++j)
      spec.interfaces.push_back({idx(i, j), 0, idx(i, j + 1), 2});
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j < n; ++j)
      spec.interfaces.push_back({idx(i, j), 3, idx(i + 1, j), 1});
  for (int j = 0; j < n; ++j) {
    spec.externals.push_back({idx(0, j), 1, (j == 0) ? -1.0 : 0.0});
    spec.externals.push_back({idx(n - 1, j), 3, (j == n - 1) ? 1.0 : 0.0});
  }
  for (int i = 0; i < n; ++i) {
    spec.externals.push_back({idx(i, 0), 2, 0.0});
    spec.externals.push_back({idx(i, n - 1), 0, 0.0});
  }
  return spec;
}

}  // namespace stokesnet
