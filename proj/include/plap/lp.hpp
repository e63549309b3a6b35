#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace plap {

// Dense linear programs in 1 to 3 variables, solved by randomized incremental
// constraint insertion with explicit projection onto tight constraints.
// Geometry needs nothing larger; the solve is exact up to roundoff because
// the optimum is reconstructed from the final tight basis.
//
// maximize c.x  subject to  rows[i].head(n).x <= rows[i](n),  lo <= x <= hi.
// Boxes must be bounded.  Returns nullopt when infeasible.

std::optional<double> lp_max_1(const std::vector<Eigen::Vector2d>& rows, double c,
                               double lo, double hi);

std::optional<Eigen::Vector2d> lp_max_2(const std::vector<Eigen::Vector3d>& rows,
                                        const Eigen::Vector2d& c,
                                        const Eigen::Vector2d& lo,
                                        const Eigen::Vector2d& hi);

std::optional<Eigen::Vector3d> lp_max_3(const std::vector<Eigen::Vector4d>& rows,
                                        const Eigen::Vector3d& c,
                                        const Eigen::Vector3d& lo,
                                        const Eigen::Vector3d& hi);

}  // namespace plap
