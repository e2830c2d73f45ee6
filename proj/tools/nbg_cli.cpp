// Command-line front end: reads a JSON problem description (or inline
// flags), dispatches to the library, and emits JSON or CSV results.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbodygeom/central.hpp"
#include "nbodygeom/configuration.hpp"
#include "nbodygeom/invariants.hpp"
#include "nbodygeom/jacobi.hpp"
#include "nbodygeom/masses.hpp"
#include "nbodygeom/rootsys.hpp"
#include "nbodygeom/shape.hpp"

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchemaVersion = "1.0";
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitUsage = 64;

// Serializes with every float at 17 significant digits so values
// round-trip through the text layer exactly.
void dump17(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump17(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ',';
        dump17(j[k], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json matrix_rows_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i)));
  return rows;
}

// Bodies as rows on the wire, bodies as columns internally.
Json bodies_json(const Eigen::MatrixXd& m) { return matrix_rows_json(m.transpose()); }

struct ParsedInput {
  std::optional<nbg::MassDistribution> masses;
  int dim = 3;
  std::optional<Eigen::MatrixXd> positions;   // d x n
  std::optional<Eigen::MatrixXd> velocities;  // d x n
  std::optional<Eigen::MatrixXd> matrix;
  Json options = Json::object();
};

struct ValidationFailure : std::runtime_error {
  std::vector<std::string> messages;
  explicit ValidationFailure(std::vector<std::string> msgs)
      : std::runtime_error(msgs.empty() ? "invalid input" : msgs.front()),
        messages(std::move(msgs)) {}
};

std::optional<Eigen::MatrixXd> parse_rows(const Json& doc, const std::string& key,
                                          std::vector<std::string>& errors) {
  if (!doc.contains(key)) return std::nullopt;
  const Json& rows = doc[key];
  if (!rows.is_array() || rows.empty()) {
    errors.push_back(key + " must be a nonempty array of rows");
    return std::nullopt;
  }
  const std::size_t width = rows[0].is_array() ? rows[0].size() : 0;
  Eigen::MatrixXd m(rows.size(), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != width) {
      errors.push_back(key + " row " + std::to_string(r) + " has the wrong width");
      return std::nullopt;
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (!rows[r][c].is_number()) {
        errors.push_back(key + " row " + std::to_string(r) + " contains a non-number");
        return std::nullopt;
      }
      const double v = rows[r][c].get<double>();
      if (!std::isfinite(v)) {
        errors.push_back(key + " row " + std::to_string(r) + " contains NaN or Inf");
        return std::nullopt;
      }
      m(r, c) = v;
    }
  }
  return m;
}

// Validates the whole document in one pass, reporting every problem found.
ParsedInput parse_input_document(const Json& doc) {
  std::vector<std::string> errors;
  ParsedInput in;

  if (!doc.is_object()) throw ValidationFailure({"input document must be a JSON object"});

  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() < 1)
      errors.push_back("dim must be a positive integer");
    else
      in.dim = doc["dim"].get<int>();
  }

  std::size_t n = 0;
  if (doc.contains("masses")) {
    const Json& ms = doc["masses"];
    if (!ms.is_array() || ms.size() < 2) {
      errors.push_back("masses must be an array of at least 2 numbers");
    } else {
      std::vector<double> values;
      bool ok = true;
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if (!ms[i].is_number() || !(ms[i].get<double>() > 0.0) ||
            !std::isfinite(ms[i].get<double>())) {
          errors.push_back("mass " + std::to_string(i) + " must be positive and finite");
          ok = false;
        } else {
          values.push_back(ms[i].get<double>());
        }
      }
      if (ok) {
        n = values.size();
        in.masses.emplace(std::move(values));
      }
    }
  }

  auto rows_to_bodies = [&](const std::string& key) -> std::optional<Eigen::MatrixXd> {
    auto m = parse_rows(doc, key, errors);
    if (!m) return std::nullopt;
    if (n && m->rows() != static_cast<int>(n))
      errors.push_back(key + " must have one row per mass");
    if (m->cols() != in.dim)
      errors.push_back(key + " rows must have dim = " + std::to_string(in.dim) + " entries");
    return m->transpose();
  };
  in.positions = rows_to_bodies("positions");
  if (doc.contains("velocities")) in.velocities = rows_to_bodies("velocities");
  if (doc.contains("matrix")) in.matrix = parse_rows(doc, "matrix", errors);

  if (doc.contains("options")) {
    if (!doc["options"].is_object())
      errors.push_back("options must be an object");
    else
      in.options = doc["options"];
  }

  if (!errors.empty()) throw ValidationFailure(std::move(errors));
  return in;
}

struct CommonFlags {
  std::string input_path;
  std::string output_path;
  std::string format = "json";
  std::string masses_inline;
  std::optional<int> n_check;
  double tol = 1e-12;
  int max_iter = 100000;
  bool center = false;
  std::optional<unsigned long long> seed;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--input", flags.input_path, "JSON input file (default: stdin)");
  cmd->add_option("--output", flags.output_path, "output file (default: stdout)");
  cmd->add_option("--format", flags.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--masses", flags.masses_inline, "inline comma-separated masses");
  cmd->add_option("--n", [&flags](const std::vector<std::string>& v) {
        flags.n_check = std::stoi(v[0]);
        return true;
      }, "expected body count (consistency check)");
  cmd->add_option("--tol", flags.tol, "solver tolerance");
  cmd->add_option("--max-iter", flags.max_iter, "solver iteration cap");
  cmd->add_flag("--center", flags.center, "translate the barycenter to the origin first");
  cmd->add_option("--seed", [&flags](const std::vector<std::string>& v) {
        flags.seed = std::stoull(v[0]);
        return true;
      }, "seed for randomized start perturbation");
}

// Pulls together inline flags and the JSON document (read lazily, only
// when something beyond the inline flags is required).
struct InputSource {
  const CommonFlags& flags;
  bool need_document;
  ParsedInput parsed;

  explicit InputSource(const CommonFlags& f, bool need_doc) : flags(f), need_document(need_doc) {
    if (!flags.masses_inline.empty()) {
      std::vector<double> values;
      std::stringstream ss(flags.masses_inline);
      std::string item;
      std::vector<std::string> errors;
      while (std::getline(ss, item, ',')) {
        try {
          values.push_back(std::stod(item));
        } catch (const std::exception&) {
          errors.push_back("--masses entry '" + item + "' is not a number");
        }
      }
      for (std::size_t i = 0; i < values.size(); ++i)
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
          errors.push_back("mass " + std::to_string(i) + " must be positive and finite");
      if (values.size() < 2) errors.push_back("--masses needs at least 2 entries");
      if (!errors.empty()) throw ValidationFailure(std::move(errors));
      parsed.masses.emplace(std::move(values));
    }
    // read the document when the command needs more than inline flags
    if (need_document || !parsed.masses) {
      std::string text;
      if (!flags.input_path.empty()) {
        std::ifstream f(flags.input_path);
        if (!f) throw ValidationFailure({"cannot open input file " + flags.input_path});
        std::stringstream buf;
        buf << f.rdbuf();
        text = buf.str();
      } else {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
      }
      Json doc;
      try {
        doc = Json::parse(text);
      } catch (const Json::parse_error& e) {
        throw ValidationFailure({std::string("malformed JSON: ") + e.what()});
      }
      ParsedInput from_doc = parse_input_document(doc);
      if (!parsed.masses) parsed.masses = std::move(from_doc.masses);
      parsed.dim = from_doc.dim;
      parsed.positions = std::move(from_doc.positions);
      parsed.velocities = std::move(from_doc.velocities);
      parsed.matrix = std::move(from_doc.matrix);
      parsed.options = std::move(from_doc.options);
    }
    if (flags.n_check && parsed.masses && parsed.masses->size() != *flags.n_check)
      throw ValidationFailure({"--n does not match the number of masses"});
  }

  const nbg::MassDistribution& masses() const {
    if (!parsed.masses) throw ValidationFailure({"masses are required"});
    return *parsed.masses;
  }

  nbg::CenteredConfiguration centered_positions() const {
    if (!parsed.positions) throw ValidationFailure({"positions are required"});
    nbg::Configuration config(masses(), *parsed.positions);
    if (flags.center) return nbg::center(config).first;
    try {
      return nbg::CenteredConfiguration(std::move(config));
    } catch (const std::invalid_argument&) {
      throw ValidationFailure({"configuration is not centered (pass --center to recenter)"});
    }
  }
};

void emit(const CommonFlags& flags, const std::string& text) {
  if (flags.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(flags.output_path);
    if (!f) throw ValidationFailure({"cannot open output file " + flags.output_path});
    f << text;
  }
}

void emit_json(const CommonFlags& flags, const std::string& command, Json results,
               Json diagnostics = Json::object()) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["results"] = std::move(results);
  doc["diagnostics"] = std::move(diagnostics);
  std::string text;
  dump17(doc, text);
  text += '\n';
  emit(flags, text);
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_jacobi(const CommonFlags& flags) {
  InputSource in(flags, true);
  auto config = in.centered_positions();
  auto coeffs = nbg::standard_coefficients(in.masses());
  auto x = nbg::forward(coeffs, config);
  auto back = nbg::inverse(coeffs, x);
  const double roundtrip =
      (back.positions() - config.positions()).cwiseAbs().maxCoeff();

  Json results;
  results["zetas"] = vector_json(coeffs.zetas);
  results["forward_matrix"] = matrix_rows_json(coeffs.forward_matrix);
  results["inverse_matrix"] = matrix_rows_json(coeffs.inverse_matrix);
  results["jacobi_vectors"] = bodies_json(x.columns);
  if (in.parsed.velocities) {
    nbg::ConfigurationState state(config.config(), *in.parsed.velocities);
    auto kin = nbg::kinematic_quantities(state);
    Json k;
    k["moment_I"] = kin.moment_I;
    k["kinetic_T"] = kin.kinetic_T;
    k["angular"] = matrix_rows_json(kin.angular);
    if (config.dim() == 3) k["omega"] = vector_json(kin.omega_vector());
    k["linear_momentum"] = vector_json(kin.linear_momentum);
    results["kinematics"] = std::move(k);
  }
  Json diag;
  diag["roundtrip_error"] = roundtrip;
  emit_json(flags, "jacobi", std::move(results), std::move(diag));
  return kExitOk;
}

int run_invariants(const CommonFlags& flags) {
  InputSource in(flags, true);
  auto config = in.centered_positions();
  auto inv = nbg::mass_weighted_invariants(config);

  Json results;
  results["invariants"] = Json::array();
  for (double v : inv.values) results["invariants"].push_back(v);
  if (config.bodies() == 3) results["area"] = nbg::triangle_area(config);
  if (config.bodies() == 4 && config.dim() == 3)
    results["volume"] = nbg::tetra_volume(config);
  emit_json(flags, "invariants", std::move(results));
  return kExitOk;
}

int run_roots(const CommonFlags& flags) {
  InputSource in(flags, false);
  const auto& masses = in.masses();
  auto roots = nbg::standard_roots(masses);
  const int n = masses.size();

  Json results;
  results["roots"] = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Json entry;
      entry["i"] = i;
      entry["j"] = j;
      entry["mu"] = masses.reduced(i, j);
      entry["w"] = vector_json(roots.root(i, j));
      entry["u"] = vector_json(roots.normalized(i, j));
      results["roots"].push_back(std::move(entry));
    }
  if (n == 3) {
    auto angles = nbg::shape_circle_angles(masses);
    results["betas"] = Json::array({angles.betas[0], angles.betas[1], angles.betas[2]});
    results["alphas"] = Json::array({angles.alphas[0], angles.alphas[1], angles.alphas[2]});
  }
  emit_json(flags, "roots", std::move(results));
  return kExitOk;
}

int run_canon(const CommonFlags& flags) {
  InputSource in(flags, true);
  Eigen::MatrixXd x;
  if (in.parsed.matrix) {
    x = *in.parsed.matrix;
  } else {
    auto config = in.centered_positions();
    x = nbg::forward(nbg::standard_coefficients(in.masses()), config).columns;
  }
  auto form = nbg::canonical_form(x);
  auto sig = nbg::subrank(form);
  auto iso = nbg::isotropy_descriptor(sig, form.d, form.m);

  if (flags.format == "csv") {
    std::string text = "r,lambda\n";
    for (int i = 0; i < form.r.size(); ++i)
      text += csv_number(form.r[i]) + "," + csv_number(form.lambda[i]) + "\n";
    emit(flags, text);
    return kExitOk;
  }
  Json results;
  results["r"] = vector_json(form.r);
  results["lambda"] = vector_json(form.lambda);
  Json sub;
  sub["rank"] = sig.rank;
  sub["kappa"] = sig.kappa;
  results["subrank"] = std::move(sub);
  Json isoj;
  isoj["factors"] = iso.factors;
  isoj["dimension"] = iso.dimension;
  results["isotropy"] = std::move(isoj);
  Json diag;
  diag["subrank_tol"] = sig.tol;
  emit_json(flags, "canon", std::move(results), std::move(diag));
  return kExitOk;
}

int run_strata(const CommonFlags& flags, int d) {
  Json results;
  results["d"] = d;
  results["multistrata"] = nbg::stratum_census(d);
  emit_json(flags, "strata", std::move(results));
  return kExitOk;
}

int run_collision(const CommonFlags& flags) {
  InputSource in(flags, true);
  auto config = in.centered_positions();
  const int n = config.bodies();

  Json results;
  results["distances"] = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Json entry;
      entry["i"] = i;
      entry["j"] = j;
      entry["delta"] = nbg::collision_distance(config, i, j);
      results["distances"].push_back(std::move(entry));
    }
  emit_json(flags, "collision", std::move(results));
  return kExitOk;
}

Json solution_json(const nbg::CollinearSolution& s, double lifted_residual) {
  Json entry;
  entry["order"] = s.chamber.order;
  entry["rank"] = s.chamber.rank();
  entry["x"] = vector_json(s.x);
  entry["positions"] = vector_json(s.positions);
  entry["gaps"] = vector_json(s.gaps);
  entry["potential"] = s.potential;
  entry["lambda"] = s.lambda;
  entry["residual"] = s.residual;
  entry["central_residual"] = lifted_residual;
  entry["iterations"] = s.iterations;
  return entry;
}

int run_central(const CommonFlags& flags) {
  InputSource in(flags, false);
  const auto& masses = in.masses();
  nbg::DescentOptions opts;
  opts.tol = flags.tol;
  opts.max_iter = flags.max_iter;

  std::vector<nbg::CollinearSolution> solutions;
  if (!flags.seed) {
    solutions = nbg::moulton_solve_all(masses, opts);
  } else {
    // Seeded mode: perturb each deterministic chamber start inside its
    // chamber before descending.
    auto roots = nbg::standard_roots(masses);
    std::mt19937_64 rng(*flags.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = masses.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
      std::vector<int> reversed(perm.rbegin(), perm.rend());
      if (!std::lexicographical_compare(perm.begin(), perm.end(), reversed.begin(),
                                        reversed.end()))
        continue;
      nbg::ChamberSpec chamber{perm};
      Eigen::VectorXd start = nbg::chamber_start(chamber, roots);
      Eigen::VectorXd noise(n - 1);
      for (int k = 0; k < n - 1; ++k) noise[k] = gauss(rng);
      double scale = 0.05;
      while (scale > 1e-8) {
        Eigen::VectorXd candidate = (start + scale * noise).normalized();
        try {
          if (nbg::chamber_of(candidate, roots) == chamber) {
            start = candidate;
            break;
          }
        } catch (const std::domain_error&) {
        }
        scale *= 0.5;
      }
      solutions.push_back(nbg::spherical_descent(start, roots, opts));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(solutions.begin(), solutions.end(),
              [](const nbg::CollinearSolution& a, const nbg::CollinearSolution& b) {
                return a.chamber.rank() < b.chamber.rank();
              });
  }

  if (flags.format == "csv") {
    std::string text = "rank,order,potential,lambda,residual,central_residual,iterations,positions\n";
    for (const auto& s : solutions) {
      auto lifted = nbg::lift_collinear(s, masses);
      text += std::to_string(s.chamber.rank()) + ",\"";
      for (std::size_t k = 0; k < s.chamber.order.size(); ++k)
        text += (k ? " " : "") + std::to_string(s.chamber.order[k]);
      text += "\"," + csv_number(s.potential) + "," + csv_number(s.lambda) + "," +
              csv_number(s.residual) + "," +
              csv_number(nbg::central_residual(lifted).first) + "," +
              std::to_string(s.iterations) + ",\"";
      for (int k = 0; k < s.positions.size(); ++k)
        text += (k ? " " : "") + csv_number(s.positions[k]);
      text += "\"\n";
    }
    emit(flags, text);
    return kExitOk;
  }

  Json results;
  results["solutions"] = Json::array();
  int total_iterations = 0;
  double worst_residual = 0.0;
  for (const auto& s : solutions) {
    auto lifted = nbg::lift_collinear(s, masses);
    const double lifted_residual = nbg::central_residual(lifted).first;
    worst_residual = std::max(worst_residual, lifted_residual);
    total_iterations += s.iterations;
    results["solutions"].push_back(solution_json(s, lifted_residual));
  }
  Json diag;
  diag["tol"] = opts.tol;
  diag["max_iter"] = opts.max_iter;
  diag["count"] = solutions.size();
  diag["total_iterations"] = total_iterations;
  diag["worst_central_residual"] = worst_residual;
  emit_json(flags, "central", std::move(results), std::move(diag));
  return kExitOk;
}

int run_quintic(const CommonFlags& flags) {
  InputSource in(flags, false);
  const auto& masses = in.masses();
  if (masses.size() != 3) throw ValidationFailure({"quintic requires exactly 3 masses"});
  auto q = nbg::euler_quintic(masses);

  double value = 0.0;
  for (int k = 5; k >= 0; --k) value = value * q.omega + q.coefficients[k];

  Json results;
  results["coefficients"] = Json::array();
  for (double c : q.coefficients) results["coefficients"].push_back(c);
  results["omega"] = q.omega;
  results["gap_ratio"] = q.omega / (1.0 - q.omega);
  Json diag;
  diag["polynomial_residual"] = value;
  emit_json(flags, "quintic", std::move(results), std::move(diag));
  return kExitOk;
}

int run_embed(const CommonFlags& flags) {
  InputSource in(flags, true);
  if (!in.parsed.matrix) throw ValidationFailure({"embed requires a \"matrix\" field"});
  Eigen::MatrixXd y0;
  try {
    y0 = nbg::linear_model_embed(*in.parsed.matrix);
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure({e.what()});
  }

  Json results;
  results["y0"] = matrix_rows_json(y0);
  results["norm"] = y0.norm();
  try {
    results["boundary"] = matrix_rows_json(nbg::boundary_model_map(*in.parsed.matrix));
    results["on_boundary"] = true;
  } catch (const std::invalid_argument&) {
    results["boundary"] = nullptr;
    results["on_boundary"] = false;
  }
  emit_json(flags, "embed", std::move(results));
  return kExitOk;
}

void emit_error(const CommonFlags& flags, const std::string& command,
                const std::string& code, const std::vector<std::string>& messages) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  Json err;
  err["code"] = code;
  err["messages"] = messages;
  doc["error"] = std::move(err);
  std::string text;
  dump17(doc, text);
  text += '\n';
  emit(flags, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-body configuration geometry toolkit"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cmd;
    CommonFlags flags;
  };
  std::map<std::string, Sub> subs;
  for (const char* name : {"jacobi", "invariants", "roots", "canon", "strata",
                           "collision", "central", "quintic", "embed"}) {
    Sub& sub = subs[name];
    sub.cmd = app.add_subcommand(name);
    add_common_flags(sub.cmd, sub.flags);
  }
  int strata_d = 3;
  subs["strata"].cmd->add_option("--d", strata_d, "shape space row dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::string command;
  for (auto& [name, sub] : subs)
    if (sub.cmd->parsed()) command = name;
  CommonFlags& flags = subs[command].flags;

  try {
    if (command == "jacobi") return run_jacobi(flags);
    if (command == "invariants") return run_invariants(flags);
    if (command == "roots") return run_roots(flags);
    if (command == "canon") return run_canon(flags);
    if (command == "strata") return run_strata(flags, strata_d);
    if (command == "collision") return run_collision(flags);
    if (command == "central") return run_central(flags);
    if (command == "quintic") return run_quintic(flags);
    if (command == "embed") return run_embed(flags);
  } catch (const ValidationFailure& e) {
    emit_error(flags, command, "validation", e.messages);
    return kExitValidation;
  } catch (const nbg::NonConvergenceError& e) {
    std::vector<std::string> messages = {e.what()};
    emit_error(flags, command, "non_convergence", messages);
    return kExitNonConvergence;
  } catch (const std::invalid_argument& e) {
    emit_error(flags, command, "validation", {e.what()});
    return kExitValidation;
  } catch (const std::domain_error& e) {
    emit_error(flags, command, "validation", {e.what()});
    return kExitValidation;
  }
  return kExitUsage;
}
