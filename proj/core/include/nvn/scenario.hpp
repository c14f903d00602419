#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nvn/operator_matrix.hpp"

namespace nvn {

// Scenario or configuration rejected before any computation starts.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key-value scenario with [model], [run] and [output] sections.
// Complex values are written as "re+imj".
struct Scenario {
  std::string model;  // mutation3 | organism | multispecies
  std::map<std::string, std::string> model_params;

  std::string mode = "closed_form";  // closed_form | integrate
  double t_start = 0.0;
  double t_end = 0.0;
  double t_step = 0.0;
  double dt = 1e-3;        // integrate mode
  int sample_stride = 10;  // integrate mode

  std::vector<std::string> outputs;
  std::string output_dir = ".";
};

Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

// Throws ValidationError when the scenario violates its contract or the
// model preconditions.
void validate(const Scenario& scenario);

// Evaluates the scenario and writes one CSV per requested observable plus
// the conservation report. Throws ValidationError, PositivityError /
// std::runtime_error (numerical) or std::ios_base::failure (I/O).
// Returns the written file paths.
std::vector<std::string> run_scenario(const Scenario& scenario);

Complex parse_complex(const std::string& text);

// Exit-code contract shared by the command line tool:
// 0 pass, 1 verify failure, 2 validation, 3 numerical, 4 I/O.
int exit_code_for(const std::exception& error);

}  // namespace nvn
