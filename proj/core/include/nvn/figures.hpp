#pragma once

#include <string>

namespace nvn {

// One figure-reproduction job. Figures are emitted as long-format CSV grids
// (axis1, axis2, value):
//   1: mutation3 position density p(t, x) at the critical feedback strength
//   2: mutation3 density at the origin p(t, 0) over (t, h)
//   3: organism reduced entropies (t, particle, S)
//   4: switching ratio F(t) over (t, t1) at t0 = 150
//   5: switching ratio F1(t) over (t, t1) at t0 = 150
//   6: uncertainty bound over (t, t0) at t1 = 0
struct FigureJob {
  int figure_id = 1;  // 1..6
  int grid_rows = 201;
  int grid_cols = 201;
  std::string out_dir = ".";
};

// Writes the grid CSV and returns its path. Throws ValidationError on a bad
// job, std::ios_base::failure on I/O trouble.
std::string reproduce_figure(const FigureJob& job);

}  // namespace nvn
