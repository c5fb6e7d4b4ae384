#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "gstatics/dynamics.hpp"
#include "gstatics/io.hpp"
#include "gstatics/lifting.hpp"
#include "gstatics/reciprocal.hpp"
#include "gstatics/render.hpp"
#include "gstatics/statics.hpp"

using namespace gstatics;

namespace {

constexpr int kSchema = 1;
constexpr int kValidation = 2;
constexpr int kNumerical = 3;

struct Args {
  std::string input;
  Index stress_index = 0;
  std::string convention = "cremona";
  double alpha = 1.0;
  Index steps = 50;
  unsigned long seed = 0;
  std::string output;
};

void emit(const Args& a, const std::string& text) {
  if (a.output.empty() || a.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(a.output, std::ios::binary);
  if (!out) throw StaticsError(ErrorCode::InvalidArgument, "cannot write '" + a.output + "'");
  out << text;
}

DiagramFile load_valid(const Args& a) {
  auto file = read_diagram(a.input);
  const auto report = validate(file.diagram);
  if (!report.passed()) throw StaticsError(ErrorCode::ValidationFailed, report.summary());
  return file;
}

Vector chosen_stress(const Diagram& dg, Index k, const Tolerance& tol) {
  const auto s = self_stresses(dg, tol);
  if (k < 0 || k >= static_cast<Index>(s.size()))
    throw StaticsError(ErrorCode::InvalidArgument, "stress index " + std::to_string(k) + " out of range (" +
                                                       std::to_string(s.size()) + " self stresses)");
  return s[k].values;
}

int run_validate(const Args& a) {
  const auto file = read_diagram(a.input);
  const auto report = validate(file.diagram);
  emit(a, report.passed() ? std::string("valid\n") : report.summary() + "\n");
  return report.passed() ? 0 : kValidation;
}

int run_analyze(const Args& a, const Tolerance& tol) {
  const auto file = load_valid(a);
  emit(a, dump(analyze(file.diagram, tol)));
  return 0;
}

int run_reciprocal(const Args& a, const Tolerance& tol) {
  const auto file = load_valid(a);
  const auto& dg = file.diagram;
  const auto q = reciprocal_diagram(dg, chosen_stress(dg, a.stress_index, tol), parse_convention(a.convention), tol);
  if (dg.complex().closed()) {
    emit(a, dump(diagram_to_json(dual_diagram(dg, q))));
  } else {
    Json pts = Json::object();
    for (Index f = 0; f < dg.complex().count(2); ++f)
      pts[dg.complex().id(2, f)] = Json::array({q.points[f].x(), q.points[f].y()});
    emit(a, dump({{"convention", to_string(q.convention)}, {"points", pts}}));
  }
  return 0;
}

int run_lift(const Args& a, const Tolerance& tol) {
  const auto file = load_valid(a);
  const auto lift = polyhedral_lift(file.diagram, chosen_stress(file.diagram, a.stress_index, tol), tol);
  emit(a, lift_to_obj(file.diagram, lift));
  return 0;
}

int run_diffuse(const Args& a, const Tolerance& tol) {
  const auto file = load_valid(a);
  const Matrix k = stiffness_matrix(file.diagram, file.springs);
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector xi0(k.rows());
  for (Index i = 0; i < xi0.size(); ++i) xi0(i) = u(rng);
  DiffusionOptions opt;
  opt.alpha = a.alpha;
  opt.steps = a.steps;
  emit(a, trace_to_csv(diffuse(k, xi0, opt, tol)));
  return 0;
}

int run_render(const Args& a, const Tolerance& tol) {
  const auto file = load_valid(a);
  const auto& dg = file.diagram;
  RenderOptions opt;
  const auto stresses = self_stresses(dg, tol);
  if (!stresses.empty()) {
    opt.stress = chosen_stress(dg, a.stress_index, tol);
    if (dg.complex().closed()) {
      try {
        const auto q = reciprocal_diagram(dg, *opt.stress, parse_convention(a.convention), tol);
        opt.dual = q;
        const auto mech = mechanisms(dg, tol);
        if (!mech.empty()) opt.rotations = transfer_mechanism(dg, q, mech.front(), tol).values;
      } catch (const StaticsError& e) {
        if (e.code() != ErrorCode::NotACycle) throw;
        std::cerr << "statics: stress " << a.stress_index << " has no reciprocal; drawing the form only\n";
      }
    }
  }
  emit(a, render_svg(dg, opt));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graphic statics with cellular sheaves"};
  app.require_subcommand(1);
  Args args;

  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", args.input, "Diagram JSON file")->required();
    sub->add_option("-o,--output", args.output, "Output path (stdout when omitted)");
    return sub;
  };
  auto* validate_cmd = add("validate", "Check combinatorial and geometric rules");
  auto* analyze_cmd = add("analyze", "Homology dimensions, Maxwell report, bases and genus bounds");
  auto* reciprocal_cmd = add("reciprocal", "Reciprocal force diagram of a self stress");
  auto* lift_cmd = add("lift", "Polyhedral lift of a self stress as an OBJ mesh");
  auto* diffuse_cmd = add("diffuse", "Heat-equation trace of a random displacement (CSV)");
  auto* render_cmd = add("render", "SVG drawing of the form and force diagrams");
  for (auto* sub : {reciprocal_cmd, lift_cmd, render_cmd})
    sub->add_option("--stress-index", args.stress_index, "Self stress basis vector")->check(CLI::NonNegativeNumber);
  for (auto* sub : {reciprocal_cmd, render_cmd})
    sub->add_option("--convention", args.convention, "cremona or maxwell")
        ->check(CLI::IsMember({"cremona", "maxwell"}));
  diffuse_cmd->add_option("--alpha", args.alpha, "Diffusion rate")->check(CLI::PositiveNumber);
  diffuse_cmd->add_option("--steps", args.steps, "Number of recorded steps")->check(CLI::PositiveNumber);
  diffuse_cmd->add_option("--seed", args.seed, "Seed of the initial displacement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const Tolerance tol = Tolerance::from_env();
    if (validate_cmd->parsed()) return run_validate(args);
    if (analyze_cmd->parsed()) return run_analyze(args, tol);
    if (reciprocal_cmd->parsed()) return run_reciprocal(args, tol);
    if (lift_cmd->parsed()) return run_lift(args, tol);
    if (diffuse_cmd->parsed()) return run_diffuse(args, tol);
    if (render_cmd->parsed()) return run_render(args, tol);
  } catch (const StaticsError& e) {
    std::cerr << "statics: " << e.what() << "\n";
    if (e.code() == ErrorCode::SchemaError) return kSchema;
    return e.is_numerical() ? kNumerical : kValidation;
  } catch (const std::exception& e) {
    std::cerr << "statics: " << e.what() << "\n";
    return kSchema;
  }
  return 0;
}
