#include "stokesnet/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stokesnet/errors.hpp"

namespace stokesnet {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  out << text;
}

namespace {

int line_of_offset(const std::string& text, size_t offset) {
  int line = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

json parse_json(const std::string& text, const std::string& filename) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError,
         filename + ":" + std::to_string(line_of_offset(text, e.byte)) + ": " +
             e.what());
  }
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      fail(ErrorCode::ParseError,
           where + ": unknown key '" + item.key() + "'");
}

double num_field(const json& j, const std::string& key,
                 const std::string& where, bool required,
                 double fallback = 0.0) {
  if (!j.contains(key)) {
    if (required)
      fail(ErrorCode::ParseError, where + ": missing field '" + key + "'");
    return fallback;
  }
  if (!j[key].is_number())
    fail(ErrorCode::ParseError, where + ": field '" + key + "' must be a number");
  return j[key].get<double>();
}

Complex point_field(const json& j, const std::string& key,
                    const std::string& where) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 ||
      !j[key][0].is_number() || !j[key][1].is_number())
    fail(ErrorCode::ParseError,
         where + ": field '" + key + "' must be a [x, y] pair");
  return Complex(j[key][0].get<double>(), j[key][1].get<double>());
}

}  // namespace

// ---------------------------------------------------------------------------
// component files
// ---------------------------------------------------------------------------

SkeletonSpec parse_component_json(const std::string& text,
                                  const std::string& filename) {
  const json j = parse_json(text, filename);
  check_keys(j,
             {"name", "width", "smoothing_delta", "cap_blend",
              "panels_per_width", "min_straight_run", "vertices", "edges",
              "arms"},
             filename);
  SkeletonSpec spec;
  if (!j.contains("name") || !j["name"].is_string())
    fail(ErrorCode::ParseError, filename + ": missing string field 'name'");
  spec.name = j["name"].get<std::string>();
  spec.width = num_field(j, "width", filename, true);
  spec.delta = num_field(j, "smoothing_delta", filename, false, -1.0);
  spec.cap_blend = num_field(j, "cap_blend", filename, false, -1.0);
  spec.min_straight_run =
      num_field(j, "min_straight_run", filename, false, -1.0);
  if (j.contains("panels_per_width"))
    spec.panels_per_width = j["panels_per_width"].get<int>();

  if (!j.contains("vertices") || !j["vertices"].is_array())
    fail(ErrorCode::ParseError, filename + ": missing array field 'vertices'");
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2)
      fail(ErrorCode::ParseError, filename + ": vertices must be [x, y] pairs");
    spec.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2)
        fail(ErrorCode::ParseError, filename + ": edges must be [i, j] pairs");
      spec.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  if (!j.contains("arms") || !j["arms"].is_array() || j["arms"].empty())
    fail(ErrorCode::ParseError, filename + ": missing array field 'arms'");
  int arm_no = 0;
  for (const auto& a : j["arms"]) {
    const std::string where =
        filename + ": arms[" + std::to_string(arm_no++) + "]";
    check_keys(a, {"vertex", "direction", "length", "port", "cap"}, where);
    ArmSpec arm;
    arm.vertex = static_cast<int>(num_field(a, "vertex", where, false, 0.0));
    arm.direction = point_field(a, "direction", where);
    arm.length = num_field(a, "length", where, true);
    arm.open = a.contains("port") ? a["port"].get<bool>() : true;
    if (a.contains("cap")) {
      const std::string cap = a["cap"].get<std::string>();
      if (cap == "smooth")
        arm.cap = CapStyle::Smooth;
      else if (cap == "semicircle")
        arm.cap = CapStyle::Semicircle;
      else
        fail(ErrorCode::ParseError, where + ": cap must be 'smooth' or "
                                            "'semicircle', got '" + cap + "'");
    }
    spec.arms.push_back(arm);
  }
  return spec;
}

SkeletonSpec read_component_file(const std::string& path) {
  return parse_component_json(read_text_file(path), path);
}

// ---------------------------------------------------------------------------
// network files
// ---------------------------------------------------------------------------

NetworkSpec parse_network_json(const std::string& text,
                               const std::string& filename) {
  const json j = parse_json(text, filename);
  check_keys(j, {"name", "instances", "interfaces", "externals"}, filename);
  NetworkSpec spec;
  if (j.contains("name")) spec.name = j["name"].get<std::string>();
  if (!j.contains("instances") || !j["instances"].is_array())
    fail(ErrorCode::ParseError, filename + ": missing array 'instances'");
  int no = 0;
  for (const auto& inst : j["instances"]) {
    const std::string where =
        filename + ": instances[" + std::to_string(no++) + "]";
    check_keys(inst, {"component", "theta", "c"}, where);
    InstanceSpec is;
    if (!inst.contains("component") || !inst["component"].is_string())
      fail(ErrorCode::ParseError, where + ": missing string 'component'");
    is.component = inst["component"].get<std::string>();
    is.placement.theta = num_field(inst, "theta", where, false, 0.0);
    if (inst.contains("c")) is.placement.c = point_field(inst, "c", where);
    spec.instances.push_back(is);
  }
  no = 0;
  if (j.contains("interfaces")) {
    for (const auto& f : j["interfaces"]) {
      const std::string where =
          filename + ": interfaces[" + std::to_string(no++) + "]";
      check_keys(f, {"a", "b"}, where);
      auto pair_of = [&](const char* key) {
        if (!f.contains(key) || !f[key].is_array() || f[key].size() != 2)
          fail(ErrorCode::ParseError,
               where + ": '" + key + "' must be [instance, port]");
        return std::pair<int, int>(f[key][0].get<int>(), f[key][1].get<int>());
      };
      const auto [ia, pa] = pair_of("a");
      const auto [ib, pb] = pair_of("b");
      spec.interfaces.push_back({ia, pa, ib, pb});
    }
  }
  no = 0;
  if (j.contains("externals")) {
    for (const auto& e : j["externals"]) {
      const std::string where =
          filename + ": externals[" + std::to_string(no++) + "]";
      check_keys(e, {"instance", "port", "flux"}, where);
      ExternalSpec ext;
      ext.inst = static_cast<int>(num_field(e, "instance", where, true));
      ext.port = static_cast<int>(num_field(e, "port", where, true));
      ext.flux = num_field(e, "flux", where, true);
      spec.externals.push_back(ext);
    }
  }
  return spec;
}

NetworkSpec read_network_file(const std::string& path) {
  return parse_network_json(read_text_file(path), path);
}

// ---------------------------------------------------------------------------
// scattering library files
// ---------------------------------------------------------------------------

void write_scattering_library(const std::string& path,
                              const std::vector<ScatteringMatrix>& entries) {
  json j;
  j["entries"] = json::array();
  for (const ScatteringMatrix& sm : entries) {
    json e;
    e["component"] = sm.component;
    char hash[20];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, sm.geometry_hash);
    e["geometry_hash"] = hash;
    e["mu"] = sm.mu;
    e["solve_tol"] = sm.solve_tol;
    e["ports"] = json::array();
    for (size_t p = 0; p < sm.port_widths.size(); ++p) {
      json pj;
      pj["width"] = sm.port_widths[p];
      pj["straight_run"] = sm.port_straight_runs[p];
      e["ports"].push_back(pj);
    }
    e["matrix"] = json::array();
    for (int r = 0; r < sm.S.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < sm.S.cols(); ++c)
        row.push_back(format_double(sm.S(r, c)));
      e["matrix"].push_back(row);
    }
    j["entries"].push_back(e);
  }
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<ScatteringMatrix> read_scattering_library(
    const std::string& path) {
  const std::string text = read_text_file(path);
  const json j = parse_json(text, path);
  check_keys(j, {"entries"}, path);
  std::vector<ScatteringMatrix> out;
  if (!j.contains("entries") || !j["entries"].is_array())
    fail(ErrorCode::ParseError, path + ": missing array 'entries'");
  for (const auto& e : j["entries"]) {
    check_keys(e, {"component", "geometry_hash", "mu", "solve_tol", "ports",
                   "matrix"},
               path);
    ScatteringMatrix sm;
    sm.component = e["component"].get<std::string>();
    sm.geometry_hash =
        std::strtoull(e["geometry_hash"].get<std::string>().c_str(), nullptr,
                      16);
    sm.mu = e["mu"].get<double>();
    sm.solve_tol = e["solve_tol"].get<double>();
    for (const auto& pj : e["ports"]) {
      sm.port_widths.push_back(pj["width"].get<double>());
      sm.port_straight_runs.push_back(pj["straight_run"].get<double>());
    }
    const auto& mat = e["matrix"];
    const int m = static_cast<int>(mat.size());
    sm.S.resize(m, m);
    for (int r = 0; r < m; ++r) {
      if (static_cast<int>(mat[r].size()) != m)
        fail(ErrorCode::ParseError, path + ": matrix is not square");
      for (int c = 0; c < m; ++c)
        sm.S(r, c) = std::strtod(mat[r][c].get<std::string>().c_str(), nullptr);
    }
    out.push_back(std::move(sm));
  }
  return out;
}

}  // namespace stokesnet
