// stokesnet: scattering-matrix solver for Stokes flow in branched
// channel networks.
//
// Subcommands: scatter, assemble, rtp-decay, validate, cond-scaling,
// grid-demo. All outputs are plain text / CSV with full-precision numbers;
// identical inputs produce identical outputs.

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>

#include "stokesnet/biharmonic.hpp"
#include "stokesnet/errors.hpp"
#include "stokesnet/experiments.hpp"
#include "stokesnet/io.hpp"
#include "stokesnet/network.hpp"
#include "stokesnet/scattering.hpp"
#include "stokesnet/simd.hpp"

using namespace stokesnet;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
      return 2;
    case ErrorCode::InvalidSkeleton:
    case ErrorCode::ArmTooShort:
    case ErrorCode::SelfIntersection:
    case ErrorCode::SmoothingOverlap:
    case ErrorCode::WidthMismatch:
    case ErrorCode::MisalignedInterface:
    case ErrorCode::DanglingPort:
    case ErrorCode::FluxImbalance:
    case ErrorCode::DisconnectedNetwork:
    case ErrorCode::NotAcyclic:
    case ErrorCode::RankDeficient:
    case ErrorCode::MissingScatteringMatrix:
      return 3;
    case ErrorCode::IncompatibleData:
    case ErrorCode::NoConvergence:
    case ErrorCode::DimensionMismatch:
      return 4;
    default:
      return 5;
  }
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

ComponentLibrary load_components(const std::vector<std::string>& files,
                                 int ppw_override) {
  ComponentLibrary lib;
  for (const std::string& f : files) {
    SkeletonSpec spec = read_component_file(f);
    if (ppw_override > 0) spec.panels_per_width = ppw_override;
    ComponentGeometry g = build_component(spec);
    lib.geometries[g.name] = std::move(g);
  }
  return lib;
}

void print_matrix(const Eigen::MatrixXd& S) {
  for (int r = 0; r < S.rows(); ++r) {
    std::printf("   ");
    for (int c = 0; c < S.cols(); ++c)
      std::printf(" %s", format_double(S(r, c)).c_str());
    std::printf("\n");
  }
}

// --------------------------------------------------------------------------

int cmd_scatter(const std::string& component_file, const std::string& out,
                double tol, double mu, int ppw, bool strict) {
  SkeletonSpec spec = read_component_file(component_file);
  if (ppw > 0) spec.panels_per_width = ppw;
  if (strict) spec.min_straight_run = 8.0 * spec.width;
  const ComponentGeometry geom = build_component(spec);
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.mu = mu;
  auto [sm, basis] = compute_scattering_matrix(geom, cfg);

  std::printf("component %s: %d ports, %d boundary nodes\n",
              geom.name.c_str(), static_cast<int>(geom.ports.size()),
              geom.node_count());
  std::printf("scattering matrix (pressure drop per unit outlet flux):\n");
  print_matrix(sm.S);
  const double asym =
      (sm.S - sm.S.transpose()).norm() / std::max(sm.S.norm(), 1e-300);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (sm.S + sm.S.transpose()));
  std::printf("reciprocity defect |S - S^T|/|S|: %s\n",
              format_double(asym).c_str());
  std::printf("largest eigenvalue (must be < 0): %s\n",
              format_double(es.eigenvalues().maxCoeff()).c_str());
  double worst = 0.0;
  for (size_t j = 0; j < basis.densities.size(); ++j)
    for (size_t p = 0; p < geom.ports.size(); ++p) {
      const double expect =
          (p == 0) ? -1.0 : (static_cast<int>(p) == static_cast<int>(j) + 1
                                 ? 1.0
                                 : 0.0);
      const double f =
          port_flux(geom, basis.densities[j], geom.ports[p], cfg);
      worst = std::max(worst, std::abs(f - expect));
    }
  std::printf("worst basis-flux residual: %s\n", format_double(worst).c_str());

  // merge into the library file
  std::vector<ScatteringMatrix> entries;
  if (std::filesystem::exists(out)) entries = read_scattering_library(out);
  entries.erase(std::remove_if(entries.begin(), entries.end(),
                               [&](const ScatteringMatrix& e) {
                                 return e.component == sm.component;
                               }),
                entries.end());
  entries.push_back(sm);
  write_scattering_library(out, entries);
  std::printf("library written: %s\n", out.c_str());
  return 0;
}

int cmd_assemble(const std::string& network_file,
                 const std::string& library_file,
                 const std::vector<std::string>& component_files,
                 const std::string& field_csv, int grid_nx, int grid_ny,
                 std::vector<double> bbox, double tol) {
  const NetworkSpec spec = read_network_file(network_file);
  ComponentLibrary lib = load_components(component_files, -1);
  for (ScatteringMatrix& sm : read_scattering_library(library_file))
    lib.matrices[sm.component] = std::move(sm);

  // Geometries are needed for validation; when only the library file is
  // given, synthesize placement data from component files is required.
  if (lib.geometries.empty())
    fail(ErrorCode::ParseError,
         "assemble needs --components for the instance geometries");

  const ValidatedNetwork net = validate_network(spec, lib);
  const auto t0 = std::chrono::steady_clock::now();
  const AssemblySystem sys = assemble(net, lib);
  AssemblySolveStats stats;
  const Eigen::VectorXd flux = solve_assembly(sys, &stats);
  const NetworkSolution sol = propagate_pressures(net, lib, flux);
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::printf("network %s: %zu instances, %d interfaces, %d cycles\n",
              spec.name.c_str(), spec.instances.size(), sys.interface_count,
              sys.cycle_count);
  std::printf("assembly + solve: %s s  (full-system residual %s)\n",
              format_double(dt).c_str(), format_double(stats.residual).c_str());
  if (sys.interface_count > 0 && sys.interface_count <= 600) {
    const ConditionNumbers kappa = condition_number(sys);
    std::printf("condition number: square-reduced %s, rectangular %s\n",
                format_double(kappa.square_reduced).c_str(),
                format_double(kappa.rectangular).c_str());
  }
  std::printf("max cycle pressure residual: %s\n",
              format_double(sol.max_cycle_residual).c_str());
  for (int k = 0; k < flux.size(); ++k) {
    const InterfaceSpec& f = spec.interfaces[k];
    std::printf("interface %d (%d:%d -> %d:%d): flux %s\n", k, f.inst_a,
                f.port_a, f.inst_b, f.port_b, format_double(flux[k]).c_str());
  }
  for (size_t x = 0; x < spec.externals.size(); ++x) {
    const ExternalSpec& e = spec.externals[x];
    std::printf("external %zu (inst %d port %d, flux %s): pressure %s\n", x,
                e.inst, e.port, format_double(e.flux).c_str(),
                format_double(sol.external_pressure[x]).c_str());
  }

  if (!field_csv.empty()) {
    SolverConfig cfg;
    cfg.tol = tol;
    for (const InstanceSpec& inst : spec.instances)
      ensure_scattering(lib, inst.component, cfg);
    std::string csv = "x,y,u,v,p,zeta\n";
    for (int j = 0; j < grid_ny; ++j)
      for (int i = 0; i < grid_nx; ++i) {
        const double x = bbox[0] + (bbox[2] - bbox[0]) * i /
                                       std::max(1, grid_nx - 1);
        const double y = bbox[1] + (bbox[3] - bbox[1]) * j /
                                       std::max(1, grid_ny - 1);
        try {
          const auto f =
              reconstruct_field(net, lib, sol, {Complex(x, y)}, cfg).front();
          csv += format_double(x) + "," + format_double(y) + "," +
                 format_double(f.velocity.real()) + "," +
                 format_double(f.velocity.imag()) + "," +
                 format_double(f.pressure) + "," +
                 format_double(f.vorticity) + "\n";
        } catch (const Error&) {
          // outside the network or too close to a wall: omitted
        }
      }
    write_text_file(field_csv, csv);
    std::printf("field written: %s\n", field_csv.c_str());
  }
  return 0;
}

int cmd_rtp_decay(const std::string& out_dir, std::uint64_t seed, int modes,
                  double width, double length, int ppw, double tol,
                  bool skip_long) {
  ensure_dir(out_dir);
  RtpOptions opt;
  opt.out_dir = out_dir;
  opt.seed = seed;
  opt.modes = modes;
  opt.width = width;
  opt.length = length;
  opt.panels_per_width = ppw;
  opt.tol = tol;
  opt.long_channel_check = !skip_long;
  const RtpResult res = run_rtp_decay(opt);
  std::printf("fitted slopes on [%g, %g]: velocity %s, vorticity %s, "
              "pressure %s\n",
              opt.fit_lo, opt.fit_hi, format_double(res.fit_u.slope).c_str(),
              format_double(res.fit_z.slope).c_str(),
              format_double(res.fit_p.slope).c_str());
  std::printf("expected rate -%s\n",
              format_double(decay_rate(width)).c_str());
  if (!skip_long)
    std::printf("length-doubled discrepancy on [0, %g]: %s\n", opt.window_hi,
                format_double(res.long_channel_discrepancy).c_str());
  return 0;
}

int cmd_validate(const std::string& network_file,
                 const std::vector<std::string>& component_files,
                 const std::string& out_dir, int ppw, double tol,
                 double tol_global, int max_unknowns) {
  ensure_dir(out_dir);
  const NetworkSpec spec = read_network_file(network_file);
  ComponentLibrary lib = load_components(component_files, ppw);
  ValidateOptions opt;
  opt.panels_per_width = ppw > 0 ? ppw : 4;
  opt.tol_components = tol;
  opt.tol_global = tol_global;
  opt.max_unknowns = max_unknowns;
  opt.out_dir = out_dir;
  const ValidateResult res = run_validation(spec, lib, opt);
  std::printf("full-domain nodes: %d, probes: %d\n", res.full_domain_nodes,
              res.probe_count);
  std::printf("relative L2 velocity error:   %s\n",
              format_double(res.l2_velocity_error).c_str());
  std::printf("relative pressure-drop error: %s\n",
              format_double(res.pressure_drop_error).c_str());
  std::printf("max cycle residual: %s\n",
              format_double(res.max_cycle_residual).c_str());
  std::printf("seconds: full %s, network %s\n",
              format_double(res.seconds_full).c_str(),
              format_double(res.seconds_network).c_str());
  return 0;
}

int cmd_cond_scaling(int n_min, int n_max, int time_n,
                     const std::string& out_csv) {
  // Synthetic but physically shaped library: resistor-form cross matrix.
  ComponentLibrary lib;
  {
    SkeletonSpec cs;
    cs.name = "cross";
    cs.width = 1.0;
    cs.panels_per_width = 2;
    cs.vertices = {Complex(0.0, 0.0)};
    cs.arms.push_back({0, Complex(1.0, 0.0), 5.5, true});
    cs.arms.push_back({0, Complex(0.0, 1.0), 5.5, true});
    cs.arms.push_back({0, Complex(-1.0, 0.0), 5.5, true});
    cs.arms.push_back({0, Complex(0.0, -1.0), 5.5, true});
    lib.geometries["cross"] = build_component(cs);
    ScatteringMatrix sm;
    sm.component = "cross";
    const double R = 33.0;  // straight-channel resistance of one arm pair
    sm.S = Eigen::MatrixXd::Constant(3, 3, -R);
    for (int i = 0; i < 3; ++i) sm.S(i, i) -= R;
    sm.port_widths.assign(4, 1.0);
    sm.port_straight_runs.assign(4, 4.0);
    lib.matrices["cross"] = sm;
  }

  const CondScalingResult res = run_cond_scaling(n_min, n_max, lib, "cross",
                                                 11.0);
  std::string csv = "n,kappa_square,kappa_rect\n";
  for (size_t k = 0; k < res.n.size(); ++k) {
    csv += std::to_string(res.n[k]) + "," +
           format_double(res.kappa_square[k]) + "," +
           format_double(res.kappa_rect[k]) + "\n";
    std::printf("n = %2d: kappa %s (square), %s (rectangular)\n", res.n[k],
                format_double(res.kappa_square[k]).c_str(),
                format_double(res.kappa_rect[k]).c_str());
  }
  if (!out_csv.empty()) write_text_file(out_csv, csv);
  std::printf("quadratic fit: %s n^2 + %s n + %s  (R^2 = %s)\n",
              format_double(res.c2).c_str(), format_double(res.c1).c_str(),
              format_double(res.c0).c_str(),
              format_double(res.r_squared).c_str());
  if (time_n > 0) {
    double residual = 0.0;
    const double dt = time_grid_solve(time_n, lib, "cross", 11.0, &residual);
    std::printf("n = %d assembly + solve: %s s (residual %s)\n", time_n,
                format_double(dt).c_str(), format_double(residual).c_str());
  }
  return 0;
}

int cmd_grid_demo(int n, const std::string& cross_file,
                  const std::string& out_dir, double tol) {
  ensure_dir(out_dir);
  ComponentLibrary lib = load_components({cross_file}, -1);
  const std::string cross = lib.geometries.begin()->first;
  SolverConfig cfg;
  cfg.tol = tol;
  ensure_scattering(lib, cross, cfg);
  const ComponentGeometry& g = lib.geometries.at(cross);
  const double pitch = 2.0 * std::abs(g.ports.at(0).center);

  const NetworkSpec spec = grid_builder(n, cross, pitch);
  const ValidatedNetwork net = validate_network(spec, lib);
  const AssemblySystem sys = assemble(net, lib);
  const Eigen::VectorXd flux = solve_assembly(sys);
  const NetworkSolution sol = propagate_pressures(net, lib, flux);

  std::printf("grid %dx%d: %zu pieces, %d junctions, %d cycles\n", n, n,
              spec.instances.size(), sys.interface_count, sys.cycle_count);
  std::printf("max cycle residual: %s\n",
              format_double(sol.max_cycle_residual).c_str());
  std::string report = "external_port,instance,port,flux,pressure\n";
  for (size_t x = 0; x < spec.externals.size(); ++x) {
    const ExternalSpec& e = spec.externals[x];
    report += std::to_string(x) + "," + std::to_string(e.inst) + "," +
              std::to_string(e.port) + "," + format_double(e.flux) + "," +
              format_double(sol.external_pressure[x]) + "\n";
  }
  if (!out_dir.empty()) {
    write_text_file(out_dir + "/grid_pressures.csv", report);
    std::printf("report written: %s/grid_pressures.csv\n", out_dir.c_str());
  }
  const double drive_drop =
      sol.external_pressure[2 * (n - 1) + 1] - sol.external_pressure[0];
  std::printf("pressure drop inlet -> outlet: %s\n",
              format_double(drive_drop).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stokes flow in branched channel networks via component "
               "scattering matrices"};
  app.require_subcommand(1);

  std::string component_file, network_file, library_file = "scattering.json";
  std::string out_dir = "out", out_csv, field_csv;
  std::vector<std::string> component_files;
  double tol = 1e-13, tol_global = 1e-11, mu = 1.0;
  int ppw = -1, modes = 6, n = 5, n_min = 2, n_max = 16, time_n = 0;
  int grid_nx = 0, grid_ny = 0, max_unknowns = 20000;
  std::vector<double> bbox;
  std::uint64_t seed = 1234;
  double width = 1.0, length = 10.0;
  bool strict = false, skip_long = false;

  auto* scatter = app.add_subcommand(
      "scatter", "compute a component scattering matrix");
  scatter->add_option("component", component_file)->required();
  scatter->add_option("-o,--out", library_file, "library file to update");
  scatter->add_option("--tol", tol);
  scatter->add_option("--mu", mu);
  scatter->add_option("--ppw", ppw, "panels per channel width");
  scatter->add_flag("--strict", strict, "require 8W straight runs");

  auto* assemble_cmd = app.add_subcommand(
      "assemble", "solve a network from a scattering library");
  assemble_cmd->add_option("network", network_file)->required();
  assemble_cmd->add_option("library", library_file)->required();
  assemble_cmd->add_option("--components", component_files,
                           "component files (geometry + reconstruction)");
  assemble_cmd->add_option("--field-csv", field_csv);
  assemble_cmd->add_option("--grid", grid_nx, "field grid nx")->needs("--field-csv");
  assemble_cmd->add_option("--grid-y", grid_ny);
  assemble_cmd->add_option("--bbox", bbox, "x0 y0 x1 y1")->expected(4);
  assemble_cmd->add_option("--tol", tol);

  auto* rtp = app.add_subcommand("rtp-decay",
                                 "return-to-Poiseuille decay experiment");
  rtp->add_option("-o,--out", out_dir);
  rtp->add_option("--seed", seed);
  rtp->add_option("--modes", modes);
  rtp->add_option("--width", width);
  rtp->add_option("--length", length);
  rtp->add_option("--ppw", ppw);
  rtp->add_option("--tol", tol);
  rtp->add_flag("--skip-long", skip_long, "skip the doubled-length rerun");

  auto* validate = app.add_subcommand(
      "validate", "compare network solution against a full-domain solve");
  validate->add_option("network", network_file)->required();
  validate->add_option("--components", component_files)->required();
  validate->add_option("-o,--out", out_dir);
  validate->add_option("--ppw", ppw);
  validate->add_option("--tol", tol);
  validate->add_option("--tol-global", tol_global);
  validate->add_option("--max-unknowns", max_unknowns);

  auto* cond = app.add_subcommand("cond-scaling",
                                  "assembly condition number vs grid size");
  cond->add_option("--nmin", n_min);
  cond->add_option("--nmax", n_max);
  cond->add_option("--time-n", time_n, "also time one large grid");
  cond->add_option("-o,--out", out_csv);

  auto* demo = app.add_subcommand("grid-demo",
                                  "n x n cross-grid pressure-drop demo");
  demo->add_option("--n", n);
  demo->add_option("--cross", component_file)->required();
  demo->add_option("-o,--out", out_dir);
  demo->add_option("--tol", tol);

  CLI11_PARSE(app, argc, argv);

  try {
    if (scatter->parsed())
      return cmd_scatter(component_file, library_file, tol, mu, ppw, strict);
    if (assemble_cmd->parsed()) {
      if (grid_ny == 0) grid_ny = grid_nx;
      if (bbox.empty()) bbox = {0.0, 0.0, 1.0, 1.0};
      return cmd_assemble(network_file, library_file, component_files,
                          field_csv, grid_nx, grid_ny, bbox, tol);
    }
    if (rtp->parsed())
      return cmd_rtp_decay(out_dir, seed, modes, width, length,
                           ppw > 0 ? ppw : 4, tol, skip_long);
    if (validate->parsed())
      return cmd_validate(network_file, component_files, out_dir, ppw, tol,
                          tol_global, max_unknowns);
    if (cond->parsed()) return cmd_cond_scaling(n_min, n_max, time_n, out_csv);
    if (demo->parsed()) return cmd_grid_demo(n, component_file, out_dir, tol);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: Internal: %s\n", e.what());
    return 1;
  }
  return 0;
}
