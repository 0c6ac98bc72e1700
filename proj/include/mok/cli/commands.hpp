#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mok/cli/dataset.hpp"
#include "mok/kernel3d.hpp"
#include "mok/quad.hpp"

namespace mok::cli {

enum class OutputFormat { csv, json };

struct RunConfig {
  std::optional<double> beta;
  std::optional<double> tesla;
  /// Sweep axes in command order (fig1: x then z; fig2/fig3: beta; fig4: rho).
  std::vector<GridAxis> grids;
  std::vector<double> d;
  std::optional<double> tol;
  std::optional<long> nmax;
  Point3 point{0.5, 0.0, 0.5};
  bool direct_moments = false;
  int threads = 1;
  bool quick = false;
  double a0_shift = 0.0;
  OutputFormat format = OutputFormat::csv;
  std::string out;

  /// Throws std::invalid_argument if both beta and tesla are set or a value is out of range.
  void validate() const;
  /// The single requested field, or `defaults` when none was given.
  std::vector<double> betas(const std::vector<double>& defaults) const;
  FieldParams field(double beta) const;
  SeriesPolicy policy(SeriesPolicy base = {}) const;
};

// Columns: beta,x,z,gamma1_re,gamma1_im,terms_used,flags (y = 0 plane, lambda_c^-3).
Dataset cmd_fig1(const RunConfig& cfg);
// Columns: beta,w1,w1_rho,w1_z,w1_tilde,method,flags (lambda_c^2).
Dataset cmd_fig2(const RunConfig& cfg);
// Columns: beta,d,z_plus,z_minus,z_g,flags (lambda_c^2).
Dataset cmd_fig3(const RunConfig& cfg);
// Columns: beta,rho,g1_abs,flags (rho in lambda_c, g1_abs in lambda_c^-2).
Dataset cmd_fig4(const RunConfig& cfg);
// Columns: beta,x,y,z,quantity,re,im,terms_used,flags.
Dataset cmd_eval(const RunConfig& cfg);

std::vector<double> fig1_default_betas();
std::vector<double> fig4_default_betas();

/// Extent of the region gamma1_re >= level along the x row and the z column
/// closest to the axes, from fig1 data for one beta.
struct LevelExtents {
  double x_extent = 0.0;
  double z_extent = 0.0;
  double ellipticity() const;
};
LevelExtents level_extents(const Dataset& fig1, double beta, double level);

/// Radius beyond the maximum of rho |G1| where it falls to half that maximum.
double half_max_radius(const Dataset& fig4, double beta);

}  // namespace mok::cli
