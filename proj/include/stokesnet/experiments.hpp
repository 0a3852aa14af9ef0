#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stokesnet/network.hpp"
#include "stokesnet/poiseuille.hpp"

namespace stokesnet {

/// Return-to-Poiseuille decay experiment: a straight channel with a closed
/// far end and a random zero-flux inlet profile; downstream decay of the
/// velocity, vorticity and referenced pressure is fitted on a log scale.
struct RtpOptions {
  double width = 1.0;
  double length = 10.0;
  std::uint64_t seed = 1234;
  int modes = 6;
  int panels_per_width = 4;
  double tol = 1e-13;
  double fit_lo = 1.0;
  double fit_hi = 6.0;
  double window_hi = 8.0;      // comparison window for the length-20 rerun
  int stations = 25;           // on [0, window_hi]
  int transverse_samples = 11; // on |y| <= 0.8 L
  bool long_channel_check = true;
  std::string out_dir;         // when set: rtp_decay.csv + rtp_summary.txt
};

struct RtpResult {
  std::vector<double> x;
  std::vector<double> umax, zmax, pref;
  ExponentialFit fit_u, fit_z, fit_p;
  /// max over the three quantities of max_k |v_L - v_2L| / max_k |v_L|.
  double long_channel_discrepancy = 0.0;
};

RtpResult run_rtp_decay(const RtpOptions& opt);

/// Full-domain validation: solve the merged multiply connected problem and
/// compare it against the assembled-and-reconstructed network solution.
struct ValidateOptions {
  int panels_per_width = 4;
  double tol_components = 1e-13;
  double tol_global = 1e-11;
  int max_unknowns = 20000;
  std::string out_dir;
};

struct ValidateResult {
  double l2_velocity_error = 0.0;        // relative, over the probe set
  double pressure_drop_error = 0.0;      // relative to the largest drop
  int full_domain_nodes = 0;
  int probe_count = 0;
  double seconds_full = 0.0;
  double seconds_network = 0.0;
  double max_cycle_residual = 0.0;
};

/// `library` must contain geometries for every instance type; missing
/// scattering matrices and bases are computed and stored in place.
ValidateResult run_validation(const NetworkSpec& spec, ComponentLibrary& lib,
                              const ValidateOptions& opt);

/// Ensure the library holds a scattering matrix + basis for `component`.
void ensure_scattering(ComponentLibrary& lib, const std::string& component,
                       const SolverConfig& cfg);

/// Condition-number scaling of n x n cross-grid assembly matrices.
struct CondScalingResult {
  std::vector<int> n;
  std::vector<double> kappa_square;
  std::vector<double> kappa_rect;
  double c2 = 0.0, c1 = 0.0, c0 = 0.0;  // quadratic fit of kappa_square(n)
  double r_squared = 0.0;
};

CondScalingResult run_cond_scaling(int n_min, int n_max,
                                   const ComponentLibrary& lib,
                                   const std::string& cross, double pitch);

/// Assembly + solve wall time (seconds) for an n x n grid.
double time_grid_solve(int n, const ComponentLibrary& lib,
                       const std::string& cross, double pitch,
                       double* residual = nullptr);

/// Probe points (global frame) spread along every instance's channel
/// centerlines, valid for both the instance and the merged geometry.
std::vector<Complex> centerline_probes(const ValidatedNetwork& net,
                                       const ComponentLibrary& lib,
                                       const ComponentGeometry& merged,
                                       const SolverConfig& cfg);

}  // namespace stokesnet
