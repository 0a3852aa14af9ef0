#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stokesnet/curves.hpp"
#include "stokesnet/network_spec.hpp"

namespace stokesnet {

enum class CapStyle { Smooth, Semicircle };

/// Inlet/outlet cross-section where components join. `axis` is the unit
/// vector pointing out of the component along the channel centerline;
/// the port plane is the chord of length 2*half_width through `center`
/// perpendicular to `axis`.
struct Port {
  int id = 0;
  Complex center;
  Complex axis;
  double half_width = 0.0;
  double straight_run = 0.0;
};

struct ArmSpec {
  int vertex = 0;
  Complex direction;  // normalized internally
  double length = 0.0;
  bool open = true;  // open port; closed arms end in a no-slip cap
  CapStyle cap = CapStyle::Smooth;
};

/// Centerline skeleton: an embedded tree of vertices joined by straight
/// edges, with terminal arms carrying the ports. All channels share one
/// width; interior corners are mollified with half-width delta.
struct SkeletonSpec {
  std::string name;
  double width = 1.0;
  double delta = -1.0;             // corner smoothing half-width; default W/4
  double cap_blend = -1.0;         // cap blend length; default W/8
  std::vector<Complex> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<ArmSpec> arms;
  int panels_per_width = 4;
  double min_straight_run = -1.0;  // default 4W; strict mode passes 8W
};

/// One composite Gauss-Legendre quadrature node on the boundary.
struct PanelNode {
  Complex z;
  Complex dz;      // derivative w.r.t. the panel parameter
  Complex ddz;     // second derivative
  Complex normal;  // unit, pointing out of the fluid
  double curvature = 0.0;
  double weight = 0.0;  // parameter weight; arclength measure = |dz| * weight
};

struct BoundaryPanel {
  int first = 0;
  int count = 0;
};

/// Discretized domain boundary: contour 0 is the outer curve (counter-
/// clockwise); contours 1..M bound holes (clockwise), so the fluid always
/// lies to the left and normals point out of the fluid.
struct ComponentGeometry {
  std::string name;
  double width = 0.0;
  int panel_order = 16;
  int panels_per_width = 4;
  int refine = 1;

  std::vector<CurveChain> chains;  // construction pieces per contour
  std::vector<Port> ports;
  std::vector<Complex> hole_points;  // one interior point per hole

  std::vector<PanelNode> nodes;  // flattened, contour-major
  std::vector<BoundaryPanel> panels;
  std::vector<int> cap_port_of;                      // per node; -1 = wall
  std::vector<PieceKind> kind_of;                    // per node
  std::vector<std::pair<int, int>> contour_ranges;   // node ranges per chain

  int hole_count() const { return static_cast<int>(chains.size()) - 1; }
  int node_count() const { return static_cast<int>(nodes.size()); }
  double perimeter() const;
  double diameter() const;
  double signed_area(int contour) const;
  /// FNV-1a over node coordinates, ports and width; stable for identical
  /// inputs on one platform.
  std::uint64_t hash() const;
};

ComponentGeometry build_component(const SkeletonSpec& spec);

/// Panelize explicit contours (contour 0 = outer). Used by the merge path
/// and by tests that work with analytic curves.
ComponentGeometry geometry_from_chains(std::vector<CurveChain> chains,
                                       std::vector<Port> ports,
                                       std::vector<Complex> hole_points,
                                       double width, int panels_per_width,
                                       int refine, std::string name);

/// Re-panel an existing geometry. `refine` divides every target panel
/// length (refine=2 halves panel sizes everywhere).
ComponentGeometry discretize_settings(const ComponentGeometry& geom,
                                      int panels_per_width, int refine = 1);

ComponentGeometry apply_placement(const ComponentGeometry& geom,
                                  const Placement& placement);

/// Winding-number point classification against all contours:
/// 1 = inside the fluid, 0 = outside (or in a hole).
bool point_in_domain(const ComponentGeometry& geom, Complex z);

/// Merge the placed instances of a validated network into one full-domain
/// geometry: joined caps are removed and the collinear walls concatenated;
/// the result has one outer contour and one hole per independent cycle.
ComponentGeometry merge_network_boundary(
    const NetworkSpec& net,
    const std::map<std::string, ComponentGeometry>& library,
    int panels_per_width = 4, int refine = 1);

}  // namespace stokesnet
