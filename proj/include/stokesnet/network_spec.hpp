#pragma once

#include <string>
#include <vector>

#include "stokesnet/curves.hpp"

namespace stokesnet {

/// A placed component instance. `component` names a library entry.
struct InstanceSpec {
  std::string component;
  Placement placement;
};

/// Joins (instance a, port i) to (instance b, port j); flux is oriented a->b.
struct InterfaceSpec {
  int inst_a = 0;
  int port_a = 0;
  int inst_b = 0;
  int port_b = 0;
};

/// Prescribed flux at an unjoined port; positive = out of the network.
struct ExternalSpec {
  int inst = 0;
  int port = 0;
  double flux = 0.0;
};

struct NetworkSpec {
  std::string name;
  std::vector<InstanceSpec> instances;
  std::vector<InterfaceSpec> interfaces;
  std::vector<ExternalSpec> externals;
};

}  // namespace stokesnet
