#include "nvn/figures.hpp"

#include <cmath>
#include <filesystem>
#include <vector>

#include "nvn/csv.hpp"
#include "nvn/exact_solutions.hpp"
#include "nvn/observables.hpp"
#include "nvn/scenario.hpp"

namespace nvn {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(lo + (hi - lo) * i / static_cast<double>(n - 1));
  return out;
}

}  // namespace

std::string reproduce_figure(const FigureJob& job) {
  if (job.figure_id < 1 || job.figure_id > 6)
    throw ValidationError("figure id must be 1..6");
  if (job.grid_rows < 2 || job.grid_cols < 2)
    throw ValidationError("figure grid must be at least 2x2");

  std::error_code ec;
  std::filesystem::create_directories(job.out_dir, ec);
  if (ec)
    throw std::ios_base::failure("cannot create output directory " +
                                 job.out_dir);
  const std::string path =
      job.out_dir + "/fig" + std::to_string(job.figure_id) + ".csv";
  CsvWriter csv(path);

  const double h0 = MutationParams::critical_strength();

  switch (job.figure_id) {
    case 1: {
      // p(t, x) for the oscillation-free three-level switch.
      MutationParams p;
      p.feedback_strength = h0;
      csv.comment("figure=1 model=mutation3 feedback_strength=" +
                  format_double(h0) + " alpha=1 level=0 t=[-40,40] x=[-8,8]");
      csv.header({"t", "x", "p"});
      OscillatorBasis basis;
      basis.level_offset = 0;
      basis.x_grid = linspace(-8.0, 8.0, job.grid_cols);
      for (const double t : linspace(-40.0, 40.0, job.grid_rows)) {
        const std::vector<double> dens = position_density(mutation3(p, t), basis);
        for (int i = 0; i < job.grid_cols; ++i)
          csv.row({t, basis.x_grid[static_cast<size_t>(i)],
                   dens[static_cast<size_t>(i)]});
      }
      break;
    }
    case 2: {
      // density at the origin as a function of t and feedback strength
      csv.comment("figure=2 model=mutation3 alpha=1 level=0 t=[-40,40] h=[h0,2.45]");
      csv.header({"t", "h", "p0"});
      OscillatorBasis origin;
      origin.level_offset = 0;
      origin.x_grid = {0.0};
      const auto hs = linspace(h0, 2.45, job.grid_cols);
      for (const double t : linspace(-40.0, 40.0, job.grid_rows))
        for (const double h : hs) {
          MutationParams p;
          p.feedback_strength = h;
          csv.row({t, h, position_density(mutation3(p, t), origin)[0]});
        }
      break;
    }
    case 3: {
      csv.comment("figure=3 model=organism t=[-10,10]");
      csv.header({"t", "particle", "entropy"});
      const CompositeLayout layout = organism_layout();
      for (const double t : linspace(-10.0, 10.0, job.grid_rows)) {
        const DensityState st = organism_solution(t);
        csv.row({t, 1.0,
                 von_neumann_entropy(partial_trace(st, layout, 0))});
        csv.row({t, 2.0,
                 von_neumann_entropy(partial_trace(st, layout, 1))});
      }
      break;
    }
    case 4:
    case 5: {
      const bool first = job.figure_id == 4;
      csv.comment("figure=" + std::to_string(job.figure_id) +
                  " switching t0=150 t=[0,300] t1=[0,300]");
      csv.header({"t", "t1", first ? "F" : "F1"});
      for (const double t : linspace(0.0, 300.0, job.grid_rows))
        for (const double t1 : linspace(0.0, 300.0, job.grid_cols)) {
          const SwitchingValues v = switching_functions(t, {150.0, t1});
          csv.row({t, t1, first ? v.f : v.f1});
        }
      break;
    }
    case 6: {
      // uncertainty bound of the worked example propositions, t1 = 0
      csv.comment("figure=6 model=multispecies(worked example) t1=0 "
                  "t=[-40,60] t0=[0,150]");
      csv.header({"t", "t0", "bound"});
      const Proposition p = superposition_projector(4, 0, 2);
      const Proposition p1 = superposition_projector(4, 0, 1);
      for (const double t : linspace(-40.0, 60.0, job.grid_rows))
        for (const double t0 : linspace(0.0, 150.0, job.grid_cols)) {
          const MultiSpeciesConfig cfg = species_example_config(t0, 0.0);
          const DensityState reduced = multispecies_reduce_species1(
              cfg, multispecies_solution(cfg, t));
          csv.row({t, t0, uncertainty_bound(p, p1, reduced)});
        }
      break;
    }
    default:
      break;
  }
  return path;
}

}  // namespace nvn
