#include "stokesnet/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "stokesnet/biharmonic.hpp"
#include "stokesnet/errors.hpp"
#include "stokesnet/io.hpp"

namespace stokesnet {

namespace {

double seconds_since(
    const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

SkeletonSpec closed_channel(double width, double length, int ppw) {
  SkeletonSpec s;
  s.name = "rtp_channel";
  s.width = width;
  s.panels_per_width = ppw;
  s.vertices = {Complex(0.5 * length, 0.0)};
  s.arms.push_back({0, Complex(-1.0, 0.0), 0.5 * length, true});
  s.arms.push_back({0, Complex(1.0, 0.0), 0.5 * length, false});
  s.min_straight_run = std::min(4.0 * width, 0.4 * length);
  return s;
}

struct RtpSamples {
  std::vector<double> umax, zmax, pref;
};

RtpSamples sample_channel(double length, const RtpOptions& opt,
                          const ZeroFluxProfile& profile) {
  ComponentGeometry g =
      build_component(closed_channel(opt.width, length, opt.panels_per_width));
  SolverConfig cfg;
  cfg.tol = opt.tol;

  BoundaryData data;
  data.h.assign(g.node_count(), Complex(0, 0));
  for (int i = 0; i < g.node_count(); ++i) {
    if (g.cap_port_of[i] != 0) continue;
    const double u = profile.velocity(g.nodes[i].z.imag());
    data.h[i] = Complex(0, 1) * Complex(u, 0.0);
  }
  SLDensity den = solve_bvp(g, data, cfg);

  const double L = 0.5 * opt.width;
  const double ref_x = std::min(length, 10.0) - 0.5 * opt.width;
  const double p_ref =
      eval_field(g, den, Complex(ref_x, 0.0), cfg.mu, cfg).pressure;

  RtpSamples out;
  for (int k = 0; k < opt.stations; ++k) {
    const double x = opt.window_hi * k / (opt.stations - 1.0);
    std::vector<Complex> pts;
    for (int t = 0; t < opt.transverse_samples; ++t) {
      const double y =
          -0.8 * L + 1.6 * L * t / (opt.transverse_samples - 1.0);
      pts.emplace_back(x, y);
    }
    const auto fields = eval_fields(g, den, pts, cfg.mu, cfg);
    double umax = 0.0, zmax = 0.0, pmax = 0.0;
    for (const FieldSample& f : fields) {
      umax = std::max(umax, std::abs(f.velocity));
      zmax = std::max(zmax, std::abs(f.vorticity));
      pmax = std::max(pmax, std::abs(f.pressure - p_ref));
    }
    out.umax.push_back(umax);
    out.zmax.push_back(zmax);
    out.pref.push_back(pmax);
  }
  return out;
}

ExponentialFit fit_window(const std::vector<double>& xs,
                          const std::vector<double>& vals, double lo,
                          double hi) {
  std::vector<double> fx, fv;
  for (size_t k = 0; k < xs.size(); ++k)
    if (xs[k] >= lo - 1e-12 && xs[k] <= hi + 1e-12) {
      fx.push_back(xs[k]);
      fv.push_back(vals[k]);
    }
  return fit_exponential(fx, fv);
}

double window_discrepancy(const std::vector<double>& a,
                          const std::vector<double>& b) {
  double diff = 0.0, scale = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    diff = std::max(diff, std::abs(a[k] - b[k]));
    scale = std::max(scale, std::abs(a[k]));
  }
  return diff / std::max(scale, 1e-300);
}

}  // namespace

RtpResult run_rtp_decay(const RtpOptions& opt) {
  const ZeroFluxProfile profile =
      random_zero_flux_profile(0.5 * opt.width, opt.seed, opt.modes);

  RtpResult res;
  for (int k = 0; k < opt.stations; ++k)
    res.x.push_back(opt.window_hi * k / (opt.stations - 1.0));

  const RtpSamples base = sample_channel(opt.length, opt, profile);
  res.umax = base.umax;
  res.zmax = base.zmax;
  res.pref = base.pref;
  res.fit_u = fit_window(res.x, res.umax, opt.fit_lo, opt.fit_hi);
  res.fit_z = fit_window(res.x, res.zmax, opt.fit_lo, opt.fit_hi);
  res.fit_p = fit_window(res.x, res.pref, opt.fit_lo, opt.fit_hi);

  if (opt.long_channel_check) {
    const RtpSamples longer = sample_channel(2.0 * opt.length, opt, profile);
    res.long_channel_discrepancy =
        std::max({window_discrepancy(base.umax, longer.umax),
                  window_discrepancy(base.zmax, longer.zmax),
                  window_discrepancy(base.pref, longer.pref)});
  }

  if (!opt.out_dir.empty()) {
    std::string csv = "x,umax,zeta_max,p_ref\n";
    for (size_t k = 0; k < res.x.size(); ++k)
      csv += format_double(res.x[k]) + "," + format_double(res.umax[k]) +
             "," + format_double(res.zmax[k]) + "," +
             format_double(res.pref[k]) + "\n";
    write_text_file(opt.out_dir + "/rtp_decay.csv", csv);
    std::string summary;
    summary += "fitted decay slopes on [" + format_double(opt.fit_lo) + ", " +
               format_double(opt.fit_hi) + "]\n";
    summary += "velocity:  " + format_double(res.fit_u.slope) + "\n";
    summary += "vorticity: " + format_double(res.fit_z.slope) + "\n";
    summary += "pressure:  " + format_double(res.fit_p.slope) + "\n";
    summary += "length-doubled max window-relative discrepancy: " +
               format_double(res.long_channel_discrepancy) + "\n";
    write_text_file(opt.out_dir + "/rtp_summary.txt", summary);
  }
  return res;
}

// ---------------------------------------------------------------------------

void ensure_scattering(ComponentLibrary& lib, const std::string& component,
                       const SolverConfig& cfg) {
  if (lib.matrices.count(component) && lib.bases.count(component)) return;
  const ComponentGeometry& geom = lib.geometry_for(component);
  auto [sm, basis] = compute_scattering_matrix(geom, cfg);
  lib.matrices[component] = std::move(sm);
  lib.bases[component] = std::move(basis);
}

std::vector<Complex> centerline_probes(const ValidatedNetwork& net,
                                       const ComponentLibrary& lib,
                                       const ComponentGeometry& merged,
                                       const SolverConfig& cfg) {
  std::vector<Complex> probes;
  for (const InstanceSpec& inst : net.spec.instances) {
    const ComponentGeometry& local = lib.geometry_for(inst.component);
    const ComponentGeometry placed = apply_placement(local, inst.placement);
    for (const Port& p : placed.ports) {
      for (double d : {1.0, 2.0, 3.2}) {
        const Complex z = p.center - d * placed.width * p.axis;
        try {
          check_eval_point(placed, z, cfg.near_exclusion_factor);
          check_eval_point(merged, z, cfg.near_exclusion_factor);
        } catch (const Error&) {
          continue;
        }
        probes.push_back(z);
      }
    }
  }
  return probes;
}

ValidateResult run_validation(const NetworkSpec& spec, ComponentLibrary& lib,
                              const ValidateOptions& opt) {
  ValidateResult res;
  ValidatedNetwork net = validate_network(spec, lib);

  SolverConfig comp_cfg;
  comp_cfg.tol = opt.tol_components;
  for (const InstanceSpec& inst : spec.instances)
    ensure_scattering(lib, inst.component, comp_cfg);

  // Reduced-order path.
  auto t0 = std::chrono::steady_clock::now();
  AssemblySystem sys = assemble(net, lib);
  const Eigen::VectorXd flux = solve_assembly(sys);
  NetworkSolution sol = propagate_pressures(net, lib, flux);
  res.seconds_network = seconds_since(t0);
  res.max_cycle_residual = sol.max_cycle_residual;

  // Full-domain path.
  ComponentGeometry merged =
      merge_network_boundary(spec, lib.geometries, opt.panels_per_width);
  res.full_domain_nodes = merged.node_count();
  if (2 * merged.node_count() > opt.max_unknowns)
    fail(ErrorCode::DimensionMismatch,
         "full-domain validation needs " +
             std::to_string(2 * merged.node_count()) +
             " unknowns, above the cap of " + std::to_string(opt.max_unknowns) +
             "; raise --max-unknowns or coarsen --ppw");

  // Map network externals onto merged ports and impose Poiseuille data.
  std::vector<double> port_flux_merged(merged.ports.size(), 0.0);
  std::vector<int> ext_to_port(spec.externals.size(), -1);
  for (size_t x = 0; x < spec.externals.size(); ++x) {
    const ExternalSpec& e = spec.externals[x];
    const ComponentGeometry& local =
        lib.geometry_for(spec.instances[e.inst].component);
    const Complex center =
        spec.instances[e.inst].placement.apply(local.ports.at(e.port).center);
    for (size_t p = 0; p < merged.ports.size(); ++p)
      if (std::abs(merged.ports[p].center - center) < 1e-8 * merged.width) {
        ext_to_port[x] = static_cast<int>(p);
        port_flux_merged[p] = e.flux;
        break;
      }
    if (ext_to_port[x] < 0)
      fail(ErrorCode::MisalignedInterface,
           "external port not found on the merged boundary");
  }
  BoundaryData data;
  data.h.assign(merged.node_count(), Complex(0, 0));
  for (int i = 0; i < merged.node_count(); ++i) {
    const int pid = merged.cap_port_of[i];
    if (pid < 0 || port_flux_merged[pid] == 0.0) continue;
    const Port& p = merged.ports[pid];
    PoiseuilleProfile prof{p.half_width, port_flux_merged[pid], comp_cfg.mu};
    const double y =
        std::imag(std::conj(p.axis) * (merged.nodes[i].z - p.center));
    data.h[i] = Complex(0, 1) * prof.velocity(y) * p.axis;
  }

  SolverConfig glob_cfg;
  glob_cfg.tol = opt.tol_global;
  glob_cfg.max_iter = 1200;
  t0 = std::chrono::steady_clock::now();
  SLDensity den = solve_bvp(merged, data, glob_cfg);
  res.seconds_full = seconds_since(t0);

  // Field comparison on centerline probes.
  const std::vector<Complex> probes =
      centerline_probes(net, lib, merged, glob_cfg);
  res.probe_count = static_cast<int>(probes.size());
  const auto full = eval_fields(merged, den, probes, comp_cfg.mu, glob_cfg);
  const auto recon = reconstruct_field(net, lib, sol, probes, comp_cfg);
  double num = 0.0, den2 = 0.0;
  for (size_t k = 0; k < probes.size(); ++k) {
    num += std::norm(full[k].velocity - recon[k].velocity);
    den2 += std::norm(full[k].velocity);
  }
  res.l2_velocity_error = std::sqrt(num / std::max(den2, 1e-300));

  // External pressure drops, both ways, relative to the same reference port.
  if (!spec.externals.empty()) {
    std::vector<double> p_full(spec.externals.size());
    for (size_t x = 0; x < spec.externals.size(); ++x) {
      const Port& p = merged.ports[ext_to_port[x]];
      p_full[x] = eval_field(merged, den, p.center, comp_cfg.mu, glob_cfg)
                      .pressure;
    }
    double max_err = 0.0, scale = 0.0;
    for (size_t x = 0; x < spec.externals.size(); ++x) {
      const double drop_full = p_full[x] - p_full[0];
      const double drop_net =
          sol.external_pressure[x] - sol.external_pressure[0];
      max_err = std::max(max_err, std::abs(drop_full - drop_net));
      scale = std::max(scale, std::abs(drop_full));
    }
    res.pressure_drop_error = max_err / std::max(scale, 1e-300);
  }

  if (!opt.out_dir.empty()) {
    std::string report;
    report += "network: " + spec.name + "\n";
    report += "full-domain nodes: " + std::to_string(res.full_domain_nodes) +
              "  probes: " + std::to_string(res.probe_count) + "\n";
    report += "relative L2 velocity error: " +
              format_double(res.l2_velocity_error) + "\n";
    report += "relative pressure-drop error: " +
              format_double(res.pressure_drop_error) + "\n";
    report += "cycle residual: " + format_double(res.max_cycle_residual) + "\n";
    report += "seconds (full / network): " + format_double(res.seconds_full) +
              " / " + format_double(res.seconds_network) + "\n";
    write_text_file(opt.out_dir + "/validate_report.txt", report);
  }
  return res;
}

// ---------------------------------------------------------------------------

CondScalingResult run_cond_scaling(int n_min, int n_max,
                                   const ComponentLibrary& lib,
                                   const std::string& cross, double pitch) {
  CondScalingResult out;
  for (int n = n_min; n <= n_max; ++n) {
    const NetworkSpec spec = grid_builder(n, cross, pitch);
    const ValidatedNetwork net = validate_network(spec, lib);
    const AssemblySystem sys = assemble(net, lib);
    const ConditionNumbers kappa = condition_number(sys);
    out.n.push_back(n);
    out.kappa_square.push_back(kappa.square_reduced);
    out.kappa_rect.push_back(kappa.rectangular);
  }
  const int m = static_cast<int>(out.n.size());
  Eigen::MatrixXd V(m, 3);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    V(i, 0) = 1.0;
    V(i, 1) = out.n[i];
    V(i, 2) = double(out.n[i]) * out.n[i];
    b[i] = out.kappa_square[i];
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(b);
  out.c0 = c[0];
  out.c1 = c[1];
  out.c2 = c[2];
  const double ss_res = (b - V * c).squaredNorm();
  const double ss_tot = (b.array() - b.mean()).square().sum();
  out.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
  return out;
}

double time_grid_solve(int n, const ComponentLibrary& lib,
                       const std::string& cross, double pitch,
                       double* residual) {
  const NetworkSpec spec = grid_builder(n, cross, pitch);
  const ValidatedNetwork net = validate_network(spec, lib);
  const auto t0 = std::chrono::steady_clock::now();
  const AssemblySystem sys = assemble(net, lib);
  AssemblySolveStats stats;
  const Eigen::VectorXd flux = solve_assembly(sys, &stats);
  const double dt = seconds_since(t0);
  if (residual) *residual = stats.residual;
  return dt;
}

}  // namespace stokesnet
