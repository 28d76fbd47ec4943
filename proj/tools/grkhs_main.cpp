// grkhs: validate groupoid projects, build kernels from representations,
// inspect the induced Hilbert-space models, reconstruct representations
// from kernels, and run the kernel-distance optimization harness.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grkhs/applications.hpp"
#include "grkhs/groupoid.hpp"
#include "grkhs/kernel.hpp"
#include "grkhs/project_io.hpp"
#include "grkhs/reconstruction.hpp"
#include "grkhs/representation.hpp"
#include "grkhs/rkhs.hpp"
#include "grkhs/types.hpp"

using namespace grkhs;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string format_complex(const Complex& z) {
  std::ostringstream out;
  out.precision(12);
  if (z.imag() == 0.0) {
    out << z.real();
  } else if (z.real() == 0.0) {
    out << z.imag() << "i";
  } else {
    out << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  }
  return out.str();
}

void print_matrix(std::ostream& out, const Matrix& m,
                  const std::vector<std::string>& labels) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "  " << labels[i] << ": [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ", ";
      out << format_complex(m(i, j));
    }
    out << "]\n";
  }
}

json matrix_report(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> arrow_legend(const FiniteGroupoid& g) {
  std::vector<std::string> legend;
  for (int a = 0; a < g.arrow_count(); ++a) legend.push_back(g.arrow_name(a));
  return legend;
}

void emit(const json& report, bool as_json) {
  if (as_json) std::cout << report.dump() << "\n";
}

struct ProjectArgs {
  std::string path;
  bool as_json = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("project", path, "Project file (JSON)")->required();
    cmd->add_flag("--json", as_json, "Machine-readable JSON report");
  }
};

const GroupoidKernel& kernel_or_usage(const Project& project, const std::string& id) {
  const GroupoidKernel* kernel = project.find_kernel(id);
  if (!kernel) throw CLI::ValidationError("--kernel", "no kernel '" + id + "' in the project");
  return *kernel;
}

std::vector<std::string> nodes_or_all(const Project& project,
                                      const std::vector<std::string>& nodes) {
  if (!nodes.empty()) return nodes;
  return arrow_legend(*project.groupoid);
}

// ---------------------------------------------------------------- validate

int cmd_validate(const ProjectArgs& args, double tol) {
  GroupoidData data = load_groupoid_data(args.path);
  ValidationReport groupoid_report = validate_groupoid(data);

  json report;
  report["command"] = "validate";
  report["groupoid"] = {{"passed", groupoid_report.passed()}};
  bool all_passed = groupoid_report.passed();

  if (!groupoid_report.passed()) {
    json violations = json::array();
    for (const auto& v : groupoid_report.violations)
      violations.push_back({{"rule", v.rule}, {"witness", v.witness}});
    report["groupoid"]["violations"] = std::move(violations);
    if (!args.as_json) {
      std::cout << "groupoid: FAIL\n" << groupoid_report.summary() << "\n";
    }
    emit(report, args.as_json);
    return kExitFail;
  }

  Project project = load_project(args.path);
  if (!args.as_json) std::cout << "groupoid: PASS (" << project.groupoid->arrow_count()
                               << " arrows over " << project.groupoid->base_count()
                               << " base points)\n";

  json reps = json::array();
  for (const auto& named : project.representations) {
    ValidationReport r = validate_representation(named.value, tol);
    all_passed = all_passed && r.passed();
    json entry{{"id", named.id}, {"passed", r.passed()}};
    if (!r.passed()) {
      json violations = json::array();
      for (const auto& v : r.violations)
        violations.push_back({{"rule", v.rule}, {"witness", v.witness}, {"deviation", v.deviation}});
      entry["violations"] = std::move(violations);
    }
    if (!args.as_json)
      std::cout << "representation '" << named.id << "': " << (r.passed() ? "PASS" : "FAIL")
                << "\n" << (r.passed() ? "" : r.summary() + "\n");
    reps.push_back(std::move(entry));
  }
  report["representations"] = std::move(reps);

  json haars = json::array();
  for (const auto& named : project.haar_systems) {
    ValidationReport r = validate_haar(*project.groupoid, named.value, tol);
    all_passed = all_passed && r.passed();
    haars.push_back({{"id", named.id}, {"passed", r.passed()}});
    if (!args.as_json)
      std::cout << "haar system '" << named.id << "': " << (r.passed() ? "PASS" : "FAIL") << "\n";
  }
  report["haar"] = std::move(haars);

  json kernels = json::array();
  for (const auto& named : project.kernels) {
    double dev = (named.value.values() - named.value.values().adjoint()).cwiseAbs().maxCoeff();
    bool hermitian = dev <= 1e-12;
    all_passed = all_passed && hermitian;
    kernels.push_back({{"id", named.id}, {"hermitian", hermitian}, {"deviation", dev}});
    if (!args.as_json)
      std::cout << "kernel '" << named.id << "': " << (hermitian ? "Hermitian" : "NOT Hermitian")
                << "\n";
  }
  report["kernels"] = std::move(kernels);
  report["passed"] = all_passed;

  emit(report, args.as_json);
  if (!args.as_json) std::cout << (all_passed ? "PASS" : "FAIL") << "\n";
  return all_passed ? kExitPass : kExitFail;
}

// ------------------------------------------------------------ build-kernel

int cmd_build_kernel(const ProjectArgs& args, const std::string& rep_id,
                     const std::string& field_id, const std::string& character_id,
                     const std::string& convolution_id, double weight,
                     const std::string& kernel_id, const std::string& out_path) {
  int modes = (!rep_id.empty() ? 1 : 0) + (!character_id.empty() ? 1 : 0) +
              (!convolution_id.empty() ? 1 : 0);
  if (modes != 1)
    throw CLI::ValidationError("build-kernel",
                               "exactly one of --rep, --character, --convolution is required");
  if (!rep_id.empty() && field_id.empty())
    throw CLI::ValidationError("build-kernel", "--rep requires --field");

  Project project = load_project(args.path);
  if (!project.groupoid) throw StructuralError("project has no groupoid section");

  std::optional<GroupoidKernel> kernel;
  if (!rep_id.empty()) {
    const UnitaryRepresentation* rep = project.find_representation(rep_id);
    if (!rep) throw CLI::ValidationError("--rep", "no representation '" + rep_id + "'");
    const VectorField* field = project.find_vector_field(field_id);
    if (!field) throw CLI::ValidationError("--field", "no vector field '" + field_id + "'");
    kernel = kernel_from_representation(*rep, *field);
  } else if (!character_id.empty()) {
    const UnitaryRepresentation* rep = project.find_representation(character_id);
    if (!rep) throw CLI::ValidationError("--character", "no representation '" + character_id + "'");
    for (int b = 0; b < project.groupoid->base_count(); ++b)
      if (rep->dim(b) != 1)
        throw CLI::ValidationError("--character",
                                   "representation must be one-dimensional on every fiber");
    Vector k(project.groupoid->arrow_count());
    for (int a = 0; a < project.groupoid->arrow_count(); ++a) k(a) = rep->matrix(a)(0, 0);
    kernel = character_kernel(project.groupoid, k);
  } else {
    const VectorField* field = project.find_vector_field(convolution_id);
    if (!field) throw CLI::ValidationError("--convolution", "no vector field '" + convolution_id + "'");
    if (field->values.size() != 1)
      throw CLI::ValidationError("--convolution", "convolution requires a single-base field");
    kernel = convolution_kernel(project.groupoid, field->values[0], weight);
  }

  SpectralReport psd = check_positive_definite(*kernel);
  json report;
  report["command"] = "build-kernel";
  report["kernel"] = kernel_id;
  report["size"] = kernel->size();
  report["psd"] = {{"passed", psd.passed},
                   {"min_eigenvalue", psd.min_eigenvalue},
                   {"max_eigenvalue", psd.max_eigenvalue}};
  if (!args.as_json) {
    std::cout << "built kernel '" << kernel_id << "' (" << kernel->size() << "x" << kernel->size()
              << "), min eigenvalue " << psd.min_eigenvalue << "\n";
  }

  if (!out_path.empty()) {
    Project updated = project;
    updated.kernels.push_back({kernel_id, *kernel});
    save_project(out_path, updated);
    report["written"] = out_path;
    if (!args.as_json) std::cout << "written to " << out_path << "\n";
  }
  emit(report, args.as_json);
  return kExitPass;
}

// ------------------------------------------------------------- spectral ops

int cmd_check_psd(const ProjectArgs& args, const std::string& kernel_id, double tol) {
  Project project = load_project(args.path);
  SpectralReport psd = check_positive_definite(kernel_or_usage(project, kernel_id), tol);

  json report{{"command", "check-psd"},
              {"kernel", kernel_id},
              {"passed", psd.passed},
              {"min_eigenvalue", psd.min_eigenvalue},
              {"max_eigenvalue", psd.max_eigenvalue},
              {"tolerance", tol}};
  if (!args.as_json)
    std::cout << "kernel '" << kernel_id << "': " << (psd.passed ? "PSD" : "NOT PSD")
              << " (eigenvalues in [" << psd.min_eigenvalue << ", " << psd.max_eigenvalue
              << "])\n";
  emit(report, args.as_json);
  return psd.passed ? kExitPass : kExitFail;
}

int cmd_check_invariance(const ProjectArgs& args, const std::string& kernel_id, double tol) {
  Project project = load_project(args.path);
  InvarianceReport inv = check_invariance(kernel_or_usage(project, kernel_id), tol);

  json report{{"command", "check-invariance"},
              {"kernel", kernel_id},
              {"passed", inv.passed},
              {"max_deviation", inv.max_deviation},
              {"tolerance", tol}};
  if (!inv.passed) report["witness"] = inv.detail;
  if (!args.as_json) {
    std::cout << "kernel '" << kernel_id << "': "
              << (inv.passed ? "translation invariant" : "NOT invariant") << " (max deviation "
              << inv.max_deviation << ")\n";
    if (!inv.passed) std::cout << "  " << inv.detail << "\n";
  }
  emit(report, args.as_json);
  return inv.passed ? kExitPass : kExitFail;
}

int cmd_build_rkhs(const ProjectArgs& args, const std::string& kernel_id, double rank_tol) {
  Project project = load_project(args.path);
  const GroupoidKernel& kernel = kernel_or_usage(project, kernel_id);
  RkhsModel model = RkhsModel::build(kernel, rank_tol);
  FiberDecompositionReport fibers = model.fiber_decomposition_check(1e-12);

  json report{{"command", "build-rkhs"}, {"kernel", kernel_id}, {"rank", model.rank()}};
  json fiber_ranks = json::object();
  for (int b = 0; b < project.groupoid->base_count(); ++b)
    fiber_ranks[project.groupoid->base_name(b)] = model.fiber_ranks()[b];
  report["fiber_ranks"] = std::move(fiber_ranks);
  report["fiber_decomposition_passed"] = fibers.passed;
  report["legend"] = arrow_legend(*project.groupoid);

  if (!args.as_json) {
    std::cout << "H(K) for kernel '" << kernel_id << "': rank " << model.rank() << "\n";
    for (int b = 0; b < project.groupoid->base_count(); ++b)
      std::cout << "  fiber '" << project.groupoid->base_name(b)
                << "': rank " << model.fiber_ranks()[b] << "\n";
    std::cout << "fiber decomposition: " << (fibers.passed ? "PASS" : "FAIL") << "\n";
  }
  emit(report, args.as_json);
  return fibers.passed ? kExitPass : kExitFail;
}

int cmd_parseval(const ProjectArgs& args, const std::string& kernel_id, double tol) {
  Project project = load_project(args.path);
  RkhsModel model = RkhsModel::build(kernel_or_usage(project, kernel_id));
  ParsevalReport parseval = model.parseval_check(model.onb_functions(), tol);

  json report{{"command", "parseval-check"},
              {"kernel", kernel_id},
              {"rank", model.rank()},
              {"passed", parseval.passed},
              {"max_deviation", parseval.max_deviation}};
  if (!args.as_json)
    std::cout << "Parseval check on the computed basis (" << model.rank()
              << " functions): " << (parseval.passed ? "PASS" : "FAIL") << " (max deviation "
              << parseval.max_deviation << ")\n";
  emit(report, args.as_json);
  return parseval.passed ? kExitPass : kExitFail;
}

// ------------------------------------------------------------ reconstruction

int cmd_reconstruct(const ProjectArgs& args, const std::string& kernel_id, double tol,
                    const std::string& emit_path) {
  Project project = load_project(args.path);
  ReconstructedRepresentation rec = reconstruct(kernel_or_usage(project, kernel_id), tol);
  ValidationReport rep_report = validate_representation(rec.representation, 1e-9);

  json report{{"command", "reconstruct"},
              {"kernel", kernel_id},
              {"max_residual", rec.max_residual},
              {"representation_passed", rep_report.passed()}};
  json ranks = json::object();
  for (int b = 0; b < project.groupoid->base_count(); ++b)
    ranks[project.groupoid->base_name(b)] = rec.fiber_ranks[b];
  report["fiber_ranks"] = std::move(ranks);

  if (!args.as_json) {
    std::cout << "reconstructed a representation from kernel '" << kernel_id
              << "' (well-definedness residual " << rec.max_residual << ")\n"
              << "unitarity/homomorphism check: " << (rep_report.passed() ? "PASS" : "FAIL")
              << "\n";
  }

  if (!emit_path.empty()) {
    Project out;
    out.groupoid = project.groupoid;
    out.representations.push_back({kernel_id + "-reconstructed", rec.representation});
    out.vector_fields.push_back({kernel_id + "-retrieval", rec.retrieval_field});
    save_project(emit_path, out);
    report["written"] = emit_path;
    if (!args.as_json) std::cout << "written to " << emit_path << "\n";
  }
  emit(report, args.as_json);
  return rep_report.passed() ? kExitPass : kExitFail;
}

int cmd_round_trip(const ProjectArgs& args, const std::string& kernel_id, double tol) {
  Project project = load_project(args.path);
  RoundTripReport rt = round_trip(kernel_or_usage(project, kernel_id), tol);

  json report{{"command", "round-trip"},
              {"kernel", kernel_id},
              {"max_deviation", rt.max_deviation},
              {"tolerance", tol},
              {"passed", rt.passed}};
  if (!args.as_json)
    std::cout << "round trip for kernel '" << kernel_id << "': max deviation " << rt.max_deviation
              << " <= " << tol << ": " << (rt.passed ? "PASS" : "FAIL") << "\n";
  emit(report, args.as_json);
  return rt.passed ? kExitPass : kExitFail;
}

// -------------------------------------------------------------- applications

int cmd_distance_matrix(const ProjectArgs& args, const std::string& kernel_id,
                        const std::vector<std::string>& nodes) {
  Project project = load_project(args.path);
  const GroupoidKernel& kernel = kernel_or_usage(project, kernel_id);
  DistanceMatrix d = distance_matrix(kernel, nodes_or_all(project, nodes));

  json report{{"command", "distance-matrix"}, {"kernel", kernel_id}, {"labels", d.labels}};
  json rows = json::array();
  for (int i = 0; i < d.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < d.size(); ++j) row.push_back(d.d(i, j));
    rows.push_back(std::move(row));
  }
  report["d"] = std::move(rows);

  if (!args.as_json) {
    std::cout << "distance matrix over " << d.size() << " nodes:\n";
    for (int i = 0; i < d.size(); ++i) {
      std::cout << "  " << d.labels[i] << ":";
      for (int j = 0; j < d.size(); ++j) std::cout << " " << d.d(i, j);
      std::cout << "\n";
    }
  }
  emit(report, args.as_json);
  return kExitPass;
}

int cmd_tsp(const ProjectArgs& args, const std::string& kernel_id, const std::string& mode,
            const std::vector<std::string>& nodes, std::uint64_t seed, int restarts) {
  Project project = load_project(args.path);
  const GroupoidKernel& kernel = kernel_or_usage(project, kernel_id);
  DistanceMatrix d = distance_matrix(kernel, nodes_or_all(project, nodes));
  Tour tour = solve_tsp(d, mode == "exact" ? TspMode::exact : TspMode::heuristic, seed, restarts);

  std::vector<std::string> visit;
  for (int i : tour.order) visit.push_back(d.labels[i]);
  json report{{"command", "tsp"},
              {"kernel", kernel_id},
              {"mode", mode},
              {"tour", visit},
              {"length", tour.length}};
  if (!args.as_json) {
    std::cout << mode << " tour of length " << tour.length << ":\n  ";
    for (std::size_t i = 0; i < visit.size(); ++i)
      std::cout << (i ? " -> " : "") << visit[i];
    std::cout << "\n";
  }
  emit(report, args.as_json);
  return kExitPass;
}

int cmd_select_kernel(const ProjectArgs& args, std::vector<std::string> kernel_ids,
                      const std::string& objective, const std::vector<std::string>& nodes) {
  Project project = load_project(args.path);
  if (kernel_ids.empty())
    for (const auto& named : project.kernels) kernel_ids.push_back(named.id);
  std::vector<GroupoidKernel> candidates;
  for (const auto& id : kernel_ids) candidates.push_back(kernel_or_usage(project, id));

  KernelObjective obj = objective == "min_tour" ? KernelObjective::min_tour
                                                : KernelObjective::max_min_distance;
  auto ranking = select_kernel(candidates, nodes_or_all(project, nodes), obj);

  json entries = json::array();
  for (const auto& r : ranking)
    entries.push_back({{"kernel", kernel_ids[r.index]}, {"objective", r.objective}});
  json report{{"command", "select-kernel"}, {"objective", objective}, {"ranking", entries}};
  if (!args.as_json) {
    std::cout << "ranking by " << objective << ":\n";
    for (std::size_t i = 0; i < ranking.size(); ++i)
      std::cout << "  " << (i + 1) << ". " << kernel_ids[ranking[i].index] << " ("
                << ranking[i].objective << ")\n";
  }
  emit(report, args.as_json);
  return kExitPass;
}

// ---------------------------------------------------------------- demo-qubit

int cmd_demo_qubit(bool as_json, std::vector<double> lambda, std::vector<double> v_plus,
                   std::vector<double> v_minus) {
  Complex l(lambda[0], lambda[1]), vp(v_plus[0], v_plus[1]), vm(v_minus[0], v_minus[1]);
  if (std::abs(std::abs(l) - 1.0) > 1e-9)
    throw CLI::ValidationError("--lambda", "must lie on the unit circle");

  GroupoidPtr g = std::make_shared<FiniteGroupoid>(pair_groupoid({"+", "-"}));
  std::vector<Matrix> mats(4, Matrix::Identity(1, 1));
  mats[g->arrow_index("(-,+)")](0, 0) = l;
  mats[g->arrow_index("(+,-)")](0, 0) = std::conj(l);
  UnitaryRepresentation rep(g, HilbertFamily{{1, 1}}, mats);

  VectorField field;
  field.values = {Vector::Constant(1, vp), Vector::Constant(1, vm)};
  GroupoidKernel kernel = kernel_from_representation(rep, field);

  json report{{"command", "demo-qubit"},
              {"lambda", {l.real(), l.imag()}},
              {"v_plus", {vp.real(), vp.imag()}},
              {"v_minus", {vm.real(), vm.imag()}},
              {"legend", arrow_legend(*g)},
              {"kernel", matrix_report(kernel.values())}};
  if (!as_json) {
    std::cout << "qubit kernel for lambda=" << format_complex(l) << ", v+=" << format_complex(vp)
              << ", v-=" << format_complex(vm) << "\n"
              << "arrow order: (+,+) = e(+), (+,-) = a^-1, (-,+) = a, (-,-) = e(-)\n";
    print_matrix(std::cout, kernel.values(), arrow_legend(*g));
  }
  emit(report, as_json);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"groupoid representations, reproducing kernels, and kernel-distance tools"};
  app.require_subcommand(1);

  // validate
  ProjectArgs validate_args;
  double validate_tol = defaults::representation_tol;
  CLI::App* validate = app.add_subcommand("validate", "Check groupoid axioms and representations");
  validate_args.attach(validate);
  validate->add_option("--tol", validate_tol, "Entrywise tolerance");

  // build-kernel
  ProjectArgs build_args;
  std::string build_rep, build_field, build_character, build_convolution;
  std::string build_id = "kernel";
  std::string build_out;
  double build_weight = 1.0;
  CLI::App* build = app.add_subcommand("build-kernel", "Construct a kernel and optionally save it");
  build_args.attach(build);
  build->add_option("--rep", build_rep, "Representation id (with --field)");
  build->add_option("--field", build_field, "Vector field id");
  build->add_option("--character", build_character, "One-dimensional representation id used as a multiplicative map");
  build->add_option("--convolution", build_convolution, "Vector field id holding a function on a group");
  build->add_option("--weight", build_weight, "Haar weight for the convolution");
  build->add_option("--id", build_id, "Id for the new kernel");
  build->add_option("-o,--out", build_out, "Write the project with the new kernel here");

  // check-psd
  ProjectArgs psd_args;
  std::string psd_kernel;
  double psd_tol = defaults::psd_tol;
  CLI::App* psd = app.add_subcommand("check-psd", "Positive definiteness of a kernel");
  psd_args.attach(psd);
  psd->add_option("--kernel", psd_kernel, "Kernel id")->required();
  psd->add_option("--tol", psd_tol, "Relative eigenvalue tolerance");

  // check-invariance
  ProjectArgs inv_args;
  std::string inv_kernel;
  double inv_tol = defaults::invariance_tol;
  CLI::App* inv = app.add_subcommand("check-invariance", "Translation invariance of a kernel");
  inv_args.attach(inv);
  inv->add_option("--kernel", inv_kernel, "Kernel id")->required();
  inv->add_option("--tol", inv_tol, "Entrywise tolerance");

  // build-rkhs
  ProjectArgs rkhs_args;
  std::string rkhs_kernel;
  double rkhs_rank_tol = defaults::rank_tol;
  CLI::App* rkhs = app.add_subcommand("build-rkhs", "Rank and fiber decomposition of H(K)");
  rkhs_args.attach(rkhs);
  rkhs->add_option("--kernel", rkhs_kernel, "Kernel id")->required();
  rkhs->add_option("--rank-tol", rkhs_rank_tol, "Relative eigenvalue cutoff");

  // parseval-check
  ProjectArgs parseval_args;
  std::string parseval_kernel;
  double parseval_tol = 1e-9;
  CLI::App* parseval = app.add_subcommand("parseval-check", "Frame identity for the computed basis");
  parseval_args.attach(parseval);
  parseval->add_option("--kernel", parseval_kernel, "Kernel id")->required();
  parseval->add_option("--tol", parseval_tol, "Entrywise tolerance");

  // reconstruct
  ProjectArgs rec_args;
  std::string rec_kernel, rec_emit;
  double rec_tol = defaults::reconstruction_tol;
  CLI::App* rec = app.add_subcommand("reconstruct", "Rebuild a representation from a kernel");
  rec_args.attach(rec);
  rec->add_option("--kernel", rec_kernel, "Kernel id")->required();
  rec->add_option("--tol", rec_tol, "Well-definedness tolerance");
  rec->add_option("--emit", rec_emit, "Write the reconstructed representation here");

  // round-trip
  ProjectArgs rt_args;
  std::string rt_kernel;
  double rt_tol = defaults::reconstruction_tol;
  CLI::App* rt = app.add_subcommand("round-trip", "Kernel -> representation -> kernel deviation");
  rt_args.attach(rt);
  rt->add_option("--kernel", rt_kernel, "Kernel id")->required();
  rt->add_option("--tol", rt_tol, "Max allowed deviation");

  // distance-matrix
  ProjectArgs dist_args;
  std::string dist_kernel;
  std::vector<std::string> dist_nodes;
  CLI::App* dist = app.add_subcommand("distance-matrix", "Kernel-induced distances");
  dist_args.attach(dist);
  dist->add_option("--kernel", dist_kernel, "Kernel id")->required();
  dist->add_option("--nodes", dist_nodes, "Arrow labels (default: all)")->delimiter(',');

  // tsp
  ProjectArgs tsp_args;
  std::string tsp_kernel, tsp_mode = "heuristic";
  std::vector<std::string> tsp_nodes;
  std::uint64_t tsp_seed = 0;
  int tsp_restarts = 0;
  CLI::App* tsp = app.add_subcommand("tsp", "Shortest cyclic tour under the kernel distance");
  tsp_args.attach(tsp);
  tsp->add_option("--kernel", tsp_kernel, "Kernel id")->required();
  tsp->add_option("--mode", tsp_mode, "exact | heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  tsp->add_option("--nodes", tsp_nodes, "Arrow labels (default: all)")->delimiter(',');
  tsp->add_option("--seed", tsp_seed, "Seed for heuristic restarts");
  tsp->add_option("--restarts", tsp_restarts, "Extra shuffled 2-opt starts");

  // select-kernel
  ProjectArgs select_args;
  std::vector<std::string> select_kernels, select_nodes;
  std::string select_objective = "min_tour";
  CLI::App* select = app.add_subcommand("select-kernel", "Rank kernels by a distance objective");
  select_args.attach(select);
  select->add_option("--kernels", select_kernels, "Kernel ids (default: all)")->delimiter(',');
  select->add_option("--objective", select_objective, "min_tour | max_min_distance")
      ->check(CLI::IsMember({"min_tour", "max_min_distance"}));
  select->add_option("--nodes", select_nodes, "Arrow labels (default: all)")->delimiter(',');

  // demo-qubit
  bool demo_json = false;
  std::vector<double> demo_lambda{0.0, 1.0}, demo_vp{1.0, 0.0}, demo_vm{2.0, 0.0};
  CLI::App* demo = app.add_subcommand("demo-qubit", "Kernel of the two-point example");
  demo->add_flag("--json", demo_json, "Machine-readable JSON report");
  demo->add_option("--lambda", demo_lambda, "Unimodular scalar (re im)")->expected(2);
  demo->add_option("--v-plus", demo_vp, "Field value at + (re im)")->expected(2);
  demo->add_option("--v-minus", demo_vm, "Field value at - (re im)")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(validate_args, validate_tol);
    if (*build)
      return cmd_build_kernel(build_args, build_rep, build_field, build_character,
                              build_convolution, build_weight, build_id, build_out);
    if (*psd) return cmd_check_psd(psd_args, psd_kernel, psd_tol);
    if (*inv) return cmd_check_invariance(inv_args, inv_kernel, inv_tol);
    if (*rkhs) return cmd_build_rkhs(rkhs_args, rkhs_kernel, rkhs_rank_tol);
    if (*parseval) return cmd_parseval(parseval_args, parseval_kernel, parseval_tol);
    if (*rec) return cmd_reconstruct(rec_args, rec_kernel, rec_tol, rec_emit);
    if (*rt) return cmd_round_trip(rt_args, rt_kernel, rt_tol);
    if (*dist) return cmd_distance_matrix(dist_args, dist_kernel, dist_nodes);
    if (*tsp) return cmd_tsp(tsp_args, tsp_kernel, tsp_mode, tsp_nodes, tsp_seed, tsp_restarts);
    if (*select)
      return cmd_select_kernel(select_args, select_kernels, select_objective, select_nodes);
    if (*demo) return cmd_demo_qubit(demo_json, demo_lambda, demo_vp, demo_vm);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
