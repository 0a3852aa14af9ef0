#include "stokesnet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <set>

#include "stokesnet/errors.hpp"
#include "stokesnet/quadrature.hpp"

namespace stokesnet {

namespace {

double cross(Complex a, Complex b) { return std::imag(std::conj(a) * b); }

struct VertexItem {
  Complex dir;      // unit, pointing away from the vertex
  double angle;     // atan2 of dir
  bool is_arm;
  int arm_index;    // valid if is_arm
  int other_vertex; // valid if edge
};

struct CornerInfo {
  bool passthrough = false;
  Complex q;            // wall intersection point
  double t_in = 0.0;    // wall parameter of q along the incoming left wall
  double t_out = 0.0;   // wall parameter of q along the outgoing right wall
  double exit_adv = 0.0;
  std::shared_ptr<MollifiedCorner> arc;
};

struct Feature {
  std::shared_ptr<const Curve> curve;
  PieceKind kind;
  int port_id;       // for caps of open ports
  int arm_index;     // for caps
  Complex entry, exit;
};

// Walk-state: we have just arrived at `vertex` along direction `dir`
// (walking inbound on the left wall of the channel pointing along dir).
struct WalkState {
  int vertex;
  int item;  // index in the per-vertex sorted item list
  bool operator==(const WalkState& o) const {
    return vertex == o.vertex && item == o.item;
  }
};

int find_item(const std::vector<VertexItem>& items, Complex dir) {
  for (size_t k = 0; k < items.size(); ++k)
    if (std::abs(items[k].dir - dir) < 1e-9) return static_cast<int>(k);
  fail(ErrorCode::InvalidSkeleton, "internal: vertex item lookup failed");
}

}  // namespace

// ---------------------------------------------------------------------------
// Panelization
// ---------------------------------------------------------------------------

namespace {

void panelize_chain(const CurveChain& chain, double width, int ppw, int refine,
                    int q, ComponentGeometry& out) {
  const GaussRule& gl = gauss_legendre(q);
  const double h_wall = width / ppw;
  const int first_node = out.node_count();
  for (const ChainPiece& piece : chain) {
    const std::vector<double> breaks = piece.curve->panel_breaks(h_wall, refine);
    for (size_t b = 0; b + 1 < breaks.size(); ++b) {
      const double t0 = breaks[b], t1 = breaks[b + 1];
      BoundaryPanel panel{out.node_count(), q};
      for (int k = 0; k < q; ++k) {
        const double t = t0 + 0.5 * (t1 - t0) * (gl.x[k] + 1.0);
        PanelNode n;
        Complex z, dz, ddz;
        piece.curve->eval(t, z, dz, ddz);
        n.z = z;
        n.dz = dz * (0.5 * (t1 - t0));   // derivative w.r.t. GL parameter
        n.ddz = ddz * (0.25 * (t1 - t0) * (t1 - t0));
        n.weight = gl.w[k];
        const double a = std::abs(n.dz);
        n.normal = Complex(0.0, -1.0) * n.dz / a;
        n.curvature = std::imag(std::conj(n.dz) * n.ddz) / (a * a * a);
        out.nodes.push_back(n);
        out.cap_port_of.push_back(piece.kind == PieceKind::Cap ? piece.port_id
                                                               : -1);
        out.kind_of.push_back(piece.kind);
      }
      out.panels.push_back(panel);
    }
  }
  out.contour_ranges.emplace_back(first_node, out.node_count());
}

ComponentGeometry panelize(std::vector<CurveChain> chains,
                           std::vector<Port> ports,
                           std::vector<Complex> hole_points, double width,
                           int ppw, int refine, std::string name) {
  ComponentGeometry g;
  g.name = std::move(name);
  g.width = width;
  g.panels_per_width = ppw;
  g.refine = refine;
  g.chains = std::move(chains);
  g.ports = std::move(ports);
  g.hole_points = std::move(hole_points);
  for (const CurveChain& chain : g.chains)
    panelize_chain(chain, width, ppw, refine, g.panel_order, g);
  return g;
}

}  // namespace

ComponentGeometry geometry_from_chains(std::vector<CurveChain> chains,
                                       std::vector<Port> ports,
                                       std::vector<Complex> hole_points,
                                       double width, int panels_per_width,
                                       int refine, std::string name) {
  return panelize(std::move(chains), std::move(ports), std::move(hole_points),
                  width, panels_per_width, refine, std::move(name));
}

double ComponentGeometry::perimeter() const {
  double len = 0.0;
  for (const PanelNode& n : nodes) len += std::abs(n.dz) * n.weight;
  return len;
}

double ComponentGeometry::diameter() const {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const PanelNode& n : nodes) {
    xmin = std::min(xmin, n.z.real());
    xmax = std::max(xmax, n.z.real());
    ymin = std::min(ymin, n.z.imag());
    ymax = std::max(ymax, n.z.imag());
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

double ComponentGeometry::signed_area(int contour) const {
  const auto [lo, hi] = contour_ranges.at(contour);
  double area = 0.0;
  for (int i = lo; i < hi; ++i)
    area += 0.5 * std::imag(std::conj(nodes[i].z) * nodes[i].dz) *
            nodes[i].weight;
  return area;
}

std::uint64_t ComponentGeometry::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(width);
  for (const PanelNode& n : nodes) {
    mix(n.z.real());
    mix(n.z.imag());
  }
  for (const Port& p : ports) {
    mix(p.center.real());
    mix(p.center.imag());
    mix(p.axis.real());
    mix(p.axis.imag());
    mix(p.half_width);
  }
  return h;
}

// ---------------------------------------------------------------------------
// build_component
// ---------------------------------------------------------------------------

ComponentGeometry build_component(const SkeletonSpec& spec_in) {
  SkeletonSpec spec = spec_in;
  const double W = spec.width;
  if (!(W > 0.0)) fail(ErrorCode::InvalidSkeleton, "width must be positive");
  if (spec.delta < 0.0) spec.delta = W / 4.0;
  if (spec.delta == 0.0)
    fail(ErrorCode::SmoothingOverlap,
         "corners must be smoothed: delta = 0 is not supported");
  if (spec.cap_blend <= 0.0) spec.cap_blend = W / 8.0;
  if (spec.min_straight_run < 0.0) spec.min_straight_run = 4.0 * W;
  if (spec.vertices.empty())
    fail(ErrorCode::InvalidSkeleton, "skeleton needs at least one vertex");
  if (spec.arms.empty())
    fail(ErrorCode::InvalidSkeleton, "skeleton needs at least one arm");
  const int V = static_cast<int>(spec.vertices.size());

  // The skeleton graph must be a connected tree.
  if (static_cast<int>(spec.edges.size()) != V - 1)
    fail(ErrorCode::InvalidSkeleton, "skeleton edges must form a tree");
  {
    std::vector<int> parent(V, -1), stack{0};
    std::vector<std::vector<int>> adj(V);
    for (auto [a, b] : spec.edges) {
      if (a < 0 || a >= V || b < 0 || b >= V || a == b)
        fail(ErrorCode::InvalidSkeleton, "bad edge endpoints");
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<char> seen(V, 0);
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : adj[v])
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != V)
      fail(ErrorCode::InvalidSkeleton, "skeleton is disconnected");
  }

  // Incident items per vertex, sorted counterclockwise.
  std::vector<std::vector<VertexItem>> items(V);
  for (auto [a, b] : spec.edges) {
    const Complex d = spec.vertices[b] - spec.vertices[a];
    const double len = std::abs(d);
    if (len < 1e-12) fail(ErrorCode::InvalidSkeleton, "zero-length edge");
    items[a].push_back({d / len, std::arg(d / len), false, -1, b});
    items[b].push_back({-d / len, std::arg(-d / len), false, -1, a});
  }
  for (size_t ai = 0; ai < spec.arms.size(); ++ai) {
    ArmSpec& arm = spec.arms[ai];
    const double n = std::abs(arm.direction);
    if (n < 1e-12) fail(ErrorCode::InvalidSkeleton, "zero arm direction");
    arm.direction /= n;
    if (!(arm.length > 0.0))
      fail(ErrorCode::InvalidSkeleton, "arm length must be positive");
    if (arm.vertex < 0 || arm.vertex >= V)
      fail(ErrorCode::InvalidSkeleton, "bad arm vertex");
    items[arm.vertex].push_back({arm.direction, std::arg(arm.direction), true,
                                 static_cast<int>(ai), -1});
  }
  for (int v = 0; v < V; ++v) {
    if (items[v].size() < 2)
      fail(ErrorCode::InvalidSkeleton,
           "every vertex needs at least two incident channels");
    std::sort(items[v].begin(), items[v].end(),
              [](const VertexItem& a, const VertexItem& b) {
                return a.angle < b.angle;
              });
  }

  // Corners between counterclockwise-consecutive directions.
  std::vector<std::vector<CornerInfo>> corners(V);
  for (int v = 0; v < V; ++v) {
    const int k = static_cast<int>(items[v].size());
    corners[v].resize(k);
    for (int i = 0; i < k; ++i) {
      const VertexItem& it_in = items[v][i];
      const VertexItem& it_out = items[v][(i + 1) % k];
      double gap = it_out.angle - it_in.angle;
      if (gap <= 0.0) gap += 2.0 * M_PI;
      CornerInfo& c = corners[v][i];
      if (std::abs(gap - M_PI) < 1e-9) {
        c.passthrough = true;
        continue;
      }
      if (gap < 0.2 || gap > 2.0 * M_PI - 0.2)
        fail(ErrorCode::InvalidSkeleton,
             "channel directions at a vertex are too close");
      const Complex vz = spec.vertices[v];
      const Complex P1 = vz + 0.5 * W * Complex(0, 1) * it_in.dir;
      const Complex P2 = vz - 0.5 * W * Complex(0, 1) * it_out.dir;
      const double den = cross(it_in.dir, it_out.dir);
      c.t_in = cross(P2 - P1, it_out.dir) / den;
      c.t_out = cross(P2 - P1, it_in.dir) / den;
      c.q = P1 + c.t_in * it_in.dir;
      const double theta_in = std::arg(-it_in.dir);
      const double dtheta = gap - M_PI;
      const Complex entry = c.q + spec.delta * it_in.dir;
      c.arc = std::make_shared<MollifiedCorner>(entry, theta_in, dtheta,
                                                spec.delta);
      c.exit_adv = c.arc->exit_advance();
    }
  }

  // Boundary walk collecting caps and corner arcs in traversal order.
  // Port ids follow the arm declaration order, not the walk order.
  std::vector<Feature> feats;
  std::vector<int> port_id_of_arm(spec.arms.size(), -1);
  int open_arms = 0;
  for (size_t ai = 0; ai < spec.arms.size(); ++ai)
    if (spec.arms[ai].open) port_id_of_arm[ai] = open_arms++;
  std::vector<Port> ports(open_arms);
  std::vector<int> cap_feature_of_arm(spec.arms.size(), -1);

  auto append_cap = [&](int arm_index) {
    const ArmSpec& arm = spec.arms[arm_index];
    const Complex vz = spec.vertices[arm.vertex];
    const Complex d = arm.direction;
    const Complex center = vz + arm.length * d;
    const Complex right_end = center - 0.5 * W * Complex(0, 1) * d;
    const Complex left_end = center + 0.5 * W * Complex(0, 1) * d;
    std::shared_ptr<const Curve> cap;
    if (arm.cap == CapStyle::Semicircle)
      cap = std::make_shared<SemicircleCap>(right_end, std::arg(d), W);
    else
      cap = std::make_shared<BlendedCap>(right_end, std::arg(d), W,
                                         spec.cap_blend);
    Feature f;
    f.curve = cap;
    f.kind = PieceKind::Cap;
    f.arm_index = arm_index;
    f.port_id = -1;
    f.entry = right_end;
    f.exit = left_end;
    if (arm.open) {
      f.port_id = port_id_of_arm[arm_index];
      ports[f.port_id] = Port{f.port_id, center, d, 0.5 * W, 0.0};
    }
    cap_feature_of_arm[arm_index] = static_cast<int>(feats.size());
    feats.push_back(std::move(f));
  };

  // Start by arriving along arm 0.
  const int v0 = spec.arms[0].vertex;
  append_cap(0);
  WalkState cur{v0, find_item(items[v0], spec.arms[0].direction)};
  bool closed_loop = false;
  for (int guard = 0; guard < 4 * static_cast<int>(spec.edges.size()) +
                                  2 * static_cast<int>(spec.arms.size()) + 4;
       ++guard) {
    const int k = static_cast<int>(items[cur.vertex].size());
    const int jn = (cur.item + 1) % k;
    const CornerInfo& c = corners[cur.vertex][cur.item];
    if (!c.passthrough) {
      Feature f;
      f.curve = c.arc;
      f.kind = PieceKind::Corner;
      f.port_id = -1;
      f.arm_index = -1;
      f.entry = c.arc->start();
      f.exit = c.arc->endpoint();
      feats.push_back(std::move(f));
    }
    const VertexItem& next = items[cur.vertex][jn];
    if (next.is_arm) {
      if (next.arm_index == 0 && cur.vertex == v0) {
        closed_loop = true;
        break;
      }
      append_cap(next.arm_index);
      cur = WalkState{cur.vertex, jn};
    } else {
      const int u = next.other_vertex;
      cur = WalkState{u, find_item(items[u], -next.dir)};
    }
  }
  if (!closed_loop)
    fail(ErrorCode::InvalidSkeleton, "boundary walk did not close");
  for (int a = 0; a < static_cast<int>(spec.arms.size()); ++a)
    if (cap_feature_of_arm[a] < 0)
      fail(ErrorCode::InvalidSkeleton, "boundary walk missed an arm");

  // Join consecutive features with straight walls; validate collinearity.
  CurveChain chain;
  const int nf = static_cast<int>(feats.size());
  std::vector<double> join_len(nf, 0.0);
  for (int i = 0; i < nf; ++i) {
    const Feature& a = feats[i];
    const Feature& b = feats[(i + 1) % nf];
    const Complex gap = b.entry - a.exit;
    Complex z, dz, ddz;
    a.curve->eval(1.0, z, dz, ddz);
    const Complex dir = dz / std::abs(dz);
    const double along = std::real(std::conj(dir) * gap);
    const double perp = std::abs(std::imag(std::conj(dir) * gap));
    if (perp > 1e-9 * W)
      fail(ErrorCode::InvalidSkeleton, "wall join is not collinear");
    if (along < -1e-9 * W)
      fail(ErrorCode::SmoothingOverlap,
           "smoothing regions overlap on a wall of '" + spec.name + "'");
    join_len[i] = along;
    chain.push_back({a.curve, a.kind, a.port_id});
    if (along > 1e-12 * W)
      chain.push_back({std::make_shared<LineSegment>(a.exit, b.entry),
                       PieceKind::Wall, -1});
  }

  // Straight runs: the wall pieces adjacent to each open cap.
  for (int i = 0; i < nf; ++i) {
    if (feats[i].kind != PieceKind::Cap || feats[i].port_id < 0) continue;
    const double run_left = join_len[i];                  // wall after the cap
    const double run_right = join_len[(i + nf - 1) % nf]; // wall before
    Port& p = ports[feats[i].port_id];
    p.straight_run = std::min(run_left, run_right);
    if (p.straight_run < spec.min_straight_run - 1e-12)
      fail(ErrorCode::ArmTooShort,
           "port " + std::to_string(p.id) + " of '" + spec.name +
               "' has straight run " + std::to_string(p.straight_run) +
               " < required " + std::to_string(spec.min_straight_run));
  }

  ComponentGeometry geom =
      panelize({std::move(chain)}, std::move(ports), {}, W,
               spec.panels_per_width, 1, spec.name);

  // Self-intersection scan on a coarse polyline (skip adjacent segments).
  {
    std::vector<Complex> poly;
    for (size_t i = 0; i < geom.nodes.size(); i += 4) poly.push_back(geom.nodes[i].z);
    const int n = static_cast<int>(poly.size());
    auto seg_intersect = [](Complex a, Complex b, Complex c, Complex d) {
      // proper crossings only; collinear chords along one wall are fine
      const double scale = std::abs(b - a) *
                           std::max(std::abs(c - a), std::abs(d - a));
      const double tol = 1e-12 * std::max(scale, 1e-300);
      auto side = [tol](double v) { return v > tol ? 1 : (v < -tol ? -1 : 0); };
      const int d1 = side(cross(b - a, c - a)), d2 = side(cross(b - a, d - a));
      const int d3 = side(cross(d - c, a - c)), d4 = side(cross(d - c, b - c));
      return d1 * d2 < 0 && d3 * d4 < 0;
    };
    for (int i = 0; i < n; ++i) {
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (seg_intersect(poly[i], poly[(i + 1) % n], poly[j],
                          poly[(j + 1) % n]))
          fail(ErrorCode::SelfIntersection,
               "offset walls of '" + spec.name + "' cross");
      }
    }
  }
  return geom;
}

ComponentGeometry discretize_settings(const ComponentGeometry& geom,
                                      int panels_per_width, int refine) {
  if (panels_per_width < 2)
    fail(ErrorCode::InvalidSkeleton, "panels_per_width must be >= 2");
  return panelize(geom.chains, geom.ports, geom.hole_points, geom.width,
                  panels_per_width, refine, geom.name);
}

ComponentGeometry apply_placement(const ComponentGeometry& geom,
                                  const Placement& placement) {
  ComponentGeometry g = geom;
  const Complex r = placement.rotor();
  for (PanelNode& n : g.nodes) {
    n.z = r * n.z + placement.c;
    n.dz *= r;
    n.ddz *= r;
    n.normal *= r;
  }
  for (Port& p : g.ports) {
    p.center = placement.apply(p.center);
    p.axis = placement.apply_vector(p.axis);
  }
  for (Complex& zk : g.hole_points) zk = placement.apply(zk);
  for (CurveChain& chain : g.chains)
    for (ChainPiece& piece : chain)
      piece.curve = std::make_shared<PlacedCurve>(piece.curve, placement);
  return g;
}

bool point_in_domain(const ComponentGeometry& geom, Complex z) {
  Complex winding = 0.0;
  for (const PanelNode& n : geom.nodes)
    winding += n.weight * n.dz / (n.z - z);
  winding /= Complex(0.0, 2.0 * M_PI);
  return std::abs(winding - 1.0) < 0.5;
}

// ---------------------------------------------------------------------------
// merge_network_boundary
// ---------------------------------------------------------------------------

ComponentGeometry merge_network_boundary(
    const NetworkSpec& net,
    const std::map<std::string, ComponentGeometry>& library,
    int panels_per_width, int refine) {
  struct Segment {
    std::vector<ChainPiece> pieces;
    Complex start, end;
  };
  std::vector<Segment> segments;
  std::vector<Port> ext_ports;
  std::vector<CurveChain> closed;  // instances with no joined port
  double W = 0.0;

  std::set<std::pair<int, int>> joined;
  for (const InterfaceSpec& f : net.interfaces) {
    joined.insert({f.inst_a, f.port_a});
    joined.insert({f.inst_b, f.port_b});
  }

  for (size_t ii = 0; ii < net.instances.size(); ++ii) {
    const InstanceSpec& inst = net.instances[ii];
    auto it = library.find(inst.component);
    if (it == library.end())
      fail(ErrorCode::MissingScatteringMatrix,
           "no geometry for component '" + inst.component + "'");
    const ComponentGeometry placed =
        apply_placement(it->second, inst.placement);
    if (W == 0.0) W = placed.width;
    if (std::abs(placed.width - W) > 1e-10 * W)
      fail(ErrorCode::WidthMismatch, "instances have differing widths");
    for (const Port& p : placed.ports)
      if (!joined.count({static_cast<int>(ii), p.id})) {
        Port q = p;
        q.id = static_cast<int>(ext_ports.size());
        ext_ports.push_back(q);
      }

    const CurveChain& chain = placed.chains.at(0);
    const int n = static_cast<int>(chain.size());
    std::vector<int> removed_idx;
    for (int k = 0; k < n; ++k)
      if (chain[k].kind == PieceKind::Cap && chain[k].port_id >= 0 &&
          joined.count({static_cast<int>(ii), chain[k].port_id}))
        removed_idx.push_back(k);
    if (removed_idx.empty()) {
      closed.push_back(chain);
      continue;
    }
    // Split the cyclic chain at removed caps into open segments.
    for (size_t r = 0; r < removed_idx.size(); ++r) {
      const int from = removed_idx[r] + 1;
      const int to = removed_idx[(r + 1) % removed_idx.size()];
      Segment seg;
      for (int k = from; (k % n) != to; ++k) seg.pieces.push_back(chain[k % n]);
      if (seg.pieces.empty()) continue;
      seg.start = seg.pieces.front().curve->start();
      seg.end = seg.pieces.back().curve->endpoint();
      segments.push_back(std::move(seg));
    }
  }

  // Stitch segments into closed contours by matching endpoints.
  const double tol = 1e-7 * W;
  std::vector<char> used(segments.size(), 0);
  std::vector<CurveChain> contours = std::move(closed);
  for (size_t s0 = 0; s0 < segments.size(); ++s0) {
    if (used[s0]) continue;
    CurveChain contour;
    size_t cur = s0;
    const Complex loop_start = segments[s0].start;
    for (;;) {
      used[cur] = 1;
      for (const ChainPiece& p : segments[cur].pieces) contour.push_back(p);
      const Complex tail = segments[cur].end;
      if (std::abs(tail - loop_start) < tol) break;
      bool found = false;
      for (size_t s1 = 0; s1 < segments.size(); ++s1) {
        if (used[s1]) continue;
        if (std::abs(segments[s1].start - tail) < tol) {
          cur = s1;
          found = true;
          break;
        }
      }
      if (!found)
        fail(ErrorCode::MisalignedInterface,
             "boundary stitching failed: no wall continues the open end");
    }
    contours.push_back(std::move(contour));
  }

  // Classify contours (outer vs holes) by signed area of a probe paneling.
  std::vector<double> areas(contours.size());
  for (size_t c = 0; c < contours.size(); ++c) {
    ComponentGeometry probe;
    probe.width = W;
    panelize_chain(contours[c], W, 2, 1, 8, probe);
    areas[c] = probe.signed_area(0);
  }
  int outer = -1;
  for (size_t c = 0; c < contours.size(); ++c)
    if (areas[c] > 0.0) {
      if (outer >= 0)
        fail(ErrorCode::DisconnectedNetwork,
             "merge produced more than one outer contour");
      outer = static_cast<int>(c);
    }
  if (outer < 0)
    fail(ErrorCode::MisalignedInterface, "merge produced no outer contour");
  std::vector<CurveChain> ordered;
  ordered.push_back(std::move(contours[outer]));
  for (size_t c = 0; c < contours.size(); ++c)
    if (static_cast<int>(c) != outer) ordered.push_back(std::move(contours[c]));

  ComponentGeometry merged = panelize(std::move(ordered), std::move(ext_ports),
                                      {}, W, panels_per_width, refine,
                                      net.name.empty() ? "merged" : net.name);

  // One interior point per hole: offset inward from a hole node (the normal
  // points out of the fluid, i.e. into the hole), verified by winding number.
  for (int hc = 1; hc <= merged.hole_count(); ++hc) {
    const auto [lo, hi] = merged.contour_ranges[hc];
    Complex zk;
    bool ok = false;
    for (double f : {0.45, 0.25, 0.8, 0.1}) {
      for (int i = lo; i < hi && !ok; i += 7) {
        zk = merged.nodes[i].z + f * W * merged.nodes[i].normal;
        Complex wind = 0.0;
        for (int j = lo; j < hi; ++j)
          wind += merged.nodes[j].weight * merged.nodes[j].dz /
                  (merged.nodes[j].z - zk);
        wind /= Complex(0.0, 2.0 * M_PI);
        ok = std::abs(wind + 1.0) < 0.2;
      }
      if (ok) break;
    }
    if (!ok)
      fail(ErrorCode::InvalidSkeleton, "could not place a point inside a hole");
    merged.hole_points.push_back(zk);
  }
  return merged;
}

}  // namespace stokesnet
