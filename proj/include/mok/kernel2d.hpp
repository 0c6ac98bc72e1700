#pragma once

#include "mok/kernel3d.hpp"
#include "mok/quad.hpp"

namespace mok {

/// Windowed-mean policy for the slowly convergent planar sums.
SeriesPolicy default_planar_policy();

// Landau-level sums for the planar kernel elements. The terms decay like
// n^{-1/2} times an oscillating Laguerre factor, so results at finite n_max
// are flagged as truncated; at rho = 0 the G1 sum diverges outright.
SeriesResult<cplx> g1_series(const Point2& p, const FieldParams& fp, const SeriesPolicy& policy = default_planar_policy());
SeriesResult<cplx> g2_series(const Point2& p, const FieldParams& fp, const SeriesPolicy& policy = default_planar_policy());
SeriesResult<cplx> g1_tilde_series(const Point2& p, const FieldParams& fp,
                                   const SeriesPolicy& policy = default_planar_policy());
SeriesResult<cplx> g2_tilde_series(const Point2& p, const FieldParams& fp,
                                   const SeriesPolicy& policy = default_planar_policy());

// The same quantities through the Laguerre generating function, as integrals
// over q with t = exp(-eta^2 q^2). rho = 0 is a domain error.
cplx g1_integral(const Point2& p, const FieldParams& fp, const QuadConfig& cfg = {1e-11, 1e-15});
cplx g2_integral(const Point2& p, const FieldParams& fp, const QuadConfig& cfg = {1e-11, 1e-15});
cplx g1_tilde_integral(const Point2& p, const FieldParams& fp, const QuadConfig& cfg = {1e-11, 1e-15});
cplx g2_tilde_integral(const Point2& p, const FieldParams& fp, const QuadConfig& cfg = {1e-11, 1e-15});

KernelMatrix kernel2d_matrix(const Point2& p, const FieldParams& fp, const QuadConfig& cfg, Branch sign);

}  // namespace mok
