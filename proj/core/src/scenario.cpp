#include "nvn/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "nvn/csv.hpp"
#include "nvn/exact_solutions.hpp"
#include "nvn/integrator.hpp"
#include "nvn/observables.hpp"

namespace nvn {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(v)) throw std::exception();
    return v;
  } catch (...) {
    throw ValidationError("bad numeric value for '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::exception();
    return v;
  } catch (...) {
    throw ValidationError("bad integer value for '" + key + "': " + value);
  }
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw ValidationError("empty complex literal");
  if (s.back() != 'j' && s.back() != 'J') {
    return Complex(parse_double("complex", s), 0.0);
  }
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not an exponent sign and not leading.
  size_t split = std::string::npos;
  for (size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') &&
        body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  std::string re = "0", im;
  if (split == std::string::npos) {
    im = body;
  } else {
    re = body.substr(0, split);
    im = body.substr(split);
  }
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return Complex(parse_double("complex", re), parse_double("complex", im));
}

Scenario parse_scenario_text(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "run" && section != "output")
        throw ValidationError("unknown section [" + section + "]");
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("line " + std::to_string(lineno) +
                            ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == "model") {
      if (key == "name")
        sc.model = value;
      else
        sc.model_params[key] = value;
    } else if (section == "run") {
      if (key == "mode")
        sc.mode = value;
      else if (key == "t_start")
        sc.t_start = parse_double(key, value);
      else if (key == "t_end")
        sc.t_end = parse_double(key, value);
      else if (key == "t_step")
        sc.t_step = parse_double(key, value);
      else if (key == "dt")
        sc.dt = parse_double(key, value);
      else if (key == "sample_stride")
        sc.sample_stride = parse_int(key, value);
      else
        throw ValidationError("unknown [run] key: " + key);
    } else if (section == "output") {
      if (key == "directory")
        sc.output_dir = value;
      else if (key == "observables")
        sc.outputs = split_list(value);
      else
        throw ValidationError("unknown [output] key: " + key);
    } else {
      throw ValidationError("key outside any section: " + key);
    }
  }
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

namespace {

// A scenario resolved into the dynamical data every observable needs.
struct ModelInstance {
  OperatorMatrix hamiltonian;
  FeedbackPolynomial feedback{std::vector<double>{0.0, 1.0}};
  std::function<DensityState(double)> state_at;
  std::string stamp;  // reproducibility comment

  // model-specific handles, empty when unused
  std::function<std::pair<double, double>(const DensityState&)> entropies;
  std::function<std::vector<double>(const DensityState&)> density;
  std::vector<double> density_grid;
  std::function<std::vector<double>(const DensityState&)> probabilities;
};

double require_param(const Scenario& sc, const std::string& key) {
  const auto it = sc.model_params.find(key);
  if (it == sc.model_params.end())
    throw ValidationError("model parameter '" + key + "' is required");
  return parse_double(key, it->second);
}

double optional_param(const Scenario& sc, const std::string& key,
                      double fallback) {
  const auto it = sc.model_params.find(key);
  return it == sc.model_params.end() ? fallback
                                     : parse_double(key, it->second);
}

ModelInstance make_mutation3(const Scenario& sc) {
  MutationParams p;
  p.feedback_strength = require_param(sc, "feedback_strength");
  p.alpha = optional_param(sc, "alpha", 1.0);
  p.level = static_cast<int>(optional_param(sc, "level", 0.0));
  if (p.level < 0) throw ValidationError("level must be >= 0");

  ModelInstance mi;
  mi.hamiltonian = mutation3_hamiltonian(p.level);
  mi.feedback = FeedbackPolynomial::quadratic_mix(p.feedback_strength);
  mi.state_at = [p](double t) { return mutation3(p, t); };
  mi.stamp = "model=mutation3 feedback_strength=" +
             format_double(p.feedback_strength) +
             " alpha=" + format_double(p.alpha) +
             " level=" + std::to_string(p.level);
  const OscillatorBasis basis = OscillatorBasis::default_grid(p.level);
  mi.density_grid = basis.x_grid;
  mi.density = [basis](const DensityState& st) {
    return position_density(st, basis);
  };
  return mi;
}

ModelInstance make_organism(const Scenario& sc) {
  if (!sc.model_params.empty())
    throw ValidationError("organism model takes no parameters");
  ModelInstance mi;
  mi.hamiltonian = organism_hamiltonian();
  mi.feedback = FeedbackPolynomial::square();
  mi.state_at = [](double t) { return organism_solution(t); };
  mi.stamp = "model=organism";
  const CompositeLayout layout = organism_layout();
  mi.entropies = [layout](const DensityState& st) {
    return std::make_pair(von_neumann_entropy(partial_trace(st, layout, 0)),
                          von_neumann_entropy(partial_trace(st, layout, 1)));
  };
  return mi;
}

MultiSpeciesConfig multispecies_config_from(const Scenario& sc) {
  MultiSpeciesConfig cfg;
  cfg.a = require_param(sc, "a");
  cfg.b = require_param(sc, "b");
  cfg.m = static_cast<int>(require_param(sc, "m"));
  cfg.k = static_cast<int>(require_param(sc, "k"));
  cfg.l = static_cast<int>(require_param(sc, "l"));
  cfg.h = require_param(sc, "h");
  for (int j = 0; j <= cfg.l; ++j) {
    const std::string ka = "alpha" + std::to_string(j);
    const std::string kb = "beta" + std::to_string(j);
    const auto ita = sc.model_params.find(ka);
    const auto itb = sc.model_params.find(kb);
    if (ita == sc.model_params.end() || itb == sc.model_params.end())
      throw ValidationError("multispecies needs " + ka + " and " + kb);
    cfg.alphas.push_back(parse_complex(ita->second));
    cfg.betas.push_back(parse_complex(itb->second));
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  return cfg;
}

ModelInstance make_multispecies(const Scenario& sc) {
  const MultiSpeciesConfig cfg = multispecies_config_from(sc);
  ModelInstance mi;
  mi.hamiltonian = multispecies_hamiltonian(cfg);
  mi.feedback = FeedbackPolynomial::quadratic_mix(cfg.h);
  mi.state_at = [cfg](double t) { return multispecies_solution(cfg, t); };
  std::string stamp = "model=multispecies a=" + format_double(cfg.a) +
                      " b=" + format_double(cfg.b) +
                      " m=" + std::to_string(cfg.m) +
                      " k=" + std::to_string(cfg.k) +
                      " l=" + std::to_string(cfg.l) +
                      " h=" + format_double(cfg.h);
  for (int j = 0; j <= cfg.l; ++j) {
    stamp += " alpha" + std::to_string(j) + "=" +
             format_double(cfg.alphas[static_cast<size_t>(j)].real()) + "+" +
             format_double(cfg.alphas[static_cast<size_t>(j)].imag()) + "j";
    stamp += " beta" + std::to_string(j) + "=" +
             format_double(cfg.betas[static_cast<size_t>(j)].real()) + "+" +
             format_double(cfg.betas[static_cast<size_t>(j)].imag()) + "j";
  }
  mi.stamp = stamp;

  mi.entropies = [cfg](const DensityState& st) {
    return std::make_pair(
        von_neumann_entropy(multispecies_reduce_species1(cfg, st)),
        von_neumann_entropy(multispecies_reduce_species2(cfg, st)));
  };
  const OscillatorBasis basis = OscillatorBasis::default_grid(0);
  mi.density_grid = basis.x_grid;
  mi.density = [cfg, basis](const DensityState& st) {
    return position_density(multispecies_reduce_species1(cfg, st), basis);
  };
  if (cfg.k + 2 * cfg.m + 1 == 4) {
    const Proposition p = superposition_projector(4, 0, 2);
    const Proposition p1 = superposition_projector(4, 0, 1);
    mi.probabilities = [cfg, p, p1](const DensityState& st) {
      const DensityState reduced = multispecies_reduce_species1(cfg, st);
      return std::vector<double>{proposition_probability(p, reduced),
                                 proposition_probability(p1, reduced),
                                 uncertainty_bound(p, p1, reduced)};
    };
  }
  return mi;
}

ModelInstance make_model(const Scenario& sc) {
  if (sc.model == "mutation3") return make_mutation3(sc);
  if (sc.model == "organism") return make_organism(sc);
  if (sc.model == "multispecies") return make_multispecies(sc);
  throw ValidationError("unknown model: " + sc.model);
}

std::vector<double> time_grid(const Scenario& sc) {
  const long long n =
      std::llround(std::floor((sc.t_end - sc.t_start) / sc.t_step + 1e-9));
  std::vector<double> ts;
  ts.reserve(static_cast<size_t>(n) + 1);
  for (long long i = 0; i <= n; ++i)
    ts.push_back(sc.t_start + static_cast<double>(i) * sc.t_step);
  return ts;
}

}  // namespace

void validate(const Scenario& sc) {
  if (sc.model != "mutation3" && sc.model != "organism" &&
      sc.model != "multispecies")
    throw ValidationError("unknown model: '" + sc.model + "'");
  if (!(sc.t_start < sc.t_end))
    throw ValidationError("need t_start < t_end");
  if (!(sc.t_step > 0.0)) throw ValidationError("need t_step > 0");
  if (sc.mode != "closed_form" && sc.mode != "integrate")
    throw ValidationError("mode must be closed_form or integrate");
  if (sc.mode == "integrate") {
    if (!(sc.dt > 0.0)) throw ValidationError("need dt > 0");
    if (sc.sample_stride < 1) throw ValidationError("need sample_stride >= 1");
  }
  if (sc.outputs.empty())
    throw ValidationError("no observables requested");

  const ModelInstance mi = make_model(sc);  // validates model params
  for (const std::string& o : sc.outputs) {
    if (o == "conservation") continue;
    if (o == "entropy" && mi.entropies) continue;
    if (o == "density" && mi.density) continue;
    if (o == "probabilities" && mi.probabilities) continue;
    throw ValidationError("observable '" + o + "' not available for model " +
                          sc.model);
  }
}

std::vector<std::string> run_scenario(const Scenario& sc) {
  validate(sc);
  const ModelInstance mi = make_model(sc);

  std::error_code ec;
  std::filesystem::create_directories(sc.output_dir, ec);
  if (ec)
    throw std::ios_base::failure("cannot create output directory " +
                                 sc.output_dir);

  // Sample times and states, from the closed form or the integrator.
  std::vector<double> times;
  std::vector<DensityState> states;
  if (sc.mode == "closed_form") {
    times = time_grid(sc);
    states.reserve(times.size());
    for (const double t : times) states.push_back(mi.state_at(t));
  } else {
    const Trajectory traj =
        integrate(mi.state_at(sc.t_start), mi.hamiltonian, mi.feedback,
                  sc.t_start, sc.t_end, sc.dt,
                  IntegrateOptions{sc.sample_stride, 1e-6});
    times = traj.times;
    states = traj.states;
  }

  const std::string run_stamp =
      mi.stamp + " mode=" + sc.mode + " t_start=" + format_double(sc.t_start) +
      " t_end=" + format_double(sc.t_end) +
      (sc.mode == "closed_form" ? " t_step=" + format_double(sc.t_step)
                                : " dt=" + format_double(sc.dt));

  std::vector<std::string> written;
  for (const std::string& obs : sc.outputs) {
    const std::string path = sc.output_dir + "/" + obs + ".csv";
    CsvWriter csv(path);
    csv.comment(run_stamp);
    if (obs == "conservation") {
      csv.header({"t", "energy", "c1", "c2", "c3", "c4"});
      double e0 = 0.0;
      std::array<double, 4> m0{};
      double worst_e = 0.0, worst_m = 0.0;
      for (size_t i = 0; i < times.size(); ++i) {
        const double e = conserved_energy(states[i], mi.hamiltonian, mi.feedback);
        const auto mom = conserved_moments(states[i], 4);
        if (i == 0) {
          e0 = e;
          for (int n = 0; n < 4; ++n) m0[static_cast<size_t>(n)] = mom[static_cast<size_t>(n)];
        }
        worst_e = std::max(worst_e, std::abs(e - e0) / std::max(1e-300, std::abs(e0)));
        for (int n = 0; n < 4; ++n)
          worst_m = std::max(worst_m,
                             std::abs(mom[static_cast<size_t>(n)] - m0[static_cast<size_t>(n)]) /
                                 std::max(1e-300, std::abs(m0[static_cast<size_t>(n)])));
        csv.row({times[i], e, mom[0], mom[1], mom[2], mom[3]});
      }
      csv.comment("max_relative_drift_energy=" + format_double(worst_e));
      csv.comment("max_relative_drift_moments=" + format_double(worst_m));
    } else if (obs == "entropy") {
      csv.header({"t", "entropy_particle1", "entropy_particle2"});
      for (size_t i = 0; i < times.size(); ++i) {
        const auto [s1, s2] = mi.entropies(states[i]);
        csv.row({times[i], s1, s2});
      }
    } else if (obs == "density") {
      csv.header({"t", "x", "p"});
      for (size_t i = 0; i < times.size(); ++i) {
        const std::vector<double> p = mi.density(states[i]);
        for (size_t g = 0; g < p.size(); ++g)
          csv.row({times[i], mi.density_grid[g], p[g]});
      }
    } else if (obs == "probabilities") {
      csv.header({"t", "p", "p1", "uncertainty_bound"});
      for (size_t i = 0; i < times.size(); ++i) {
        const std::vector<double> v = mi.probabilities(states[i]);
        csv.row({times[i], v[0], v[1], v[2]});
      }
    }
    written.push_back(path);
  }
  return written;
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ValidationError*>(&error) ||
      dynamic_cast<const std::invalid_argument*>(&error))
    return 2;
  if (dynamic_cast<const std::ios_base::failure*>(&error)) return 4;
  return 3;
}

}  // namespace nvn
