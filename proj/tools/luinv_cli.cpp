// Command-line front end: dimension tables, graph listings, evaluation and
// self-verification.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "luinv/cosets.hpp"
#include "luinv/dimensions.hpp"
#include "luinv/errors.hpp"
#include "luinv/graphs.hpp"
#include "luinv/invariants.hpp"
#include "luinv/state_io.hpp"
#include "luinv/verify.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerify = 4;

struct Budgets {
  double coset = 1e7;
  double contract = 1e8;
  int enumerate = 28;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw luinv::ParseError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw luinv::ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw luinv::ArgumentError("cannot write '" + path.string() + "'");
  out << text;
}

int cmd_dims(const std::string& spec_text, int max_degree, unsigned workers) {
  const auto spec = luinv::parse_spec(spec_text);
  const auto d = luinv::stable_dims(spec, max_degree, workers);
  std::cout << "m,d\n";
  for (std::size_t i = 0; i < d.size(); ++i) std::cout << i + 1 << ',' << d[i].get_str() << '\n';
  return 0;
}

int cmd_free_gens(const std::string& spec_text, int max_degree, unsigned workers) {
  const auto spec = luinv::parse_spec(spec_text);
  const auto a = luinv::free_gen_counts(spec, max_degree, workers);
  std::cout << "m,a\n";
  for (std::size_t i = 0; i < a.size(); ++i) std::cout << i + 1 << ',' << a[i].get_str() << '\n';
  return 0;
}

enum class Vanishing { no, yes, unknown };

const char* to_str(Vanishing v) {
  switch (v) {
    case Vanishing::no:
      return "no";
    case Vanishing::yes:
      return "yes";
    default:
      return "unknown";
  }
}

// Exact stabilizer test first; past its budget, the numeric test.
Vanishing decide_vanishing(const luinv::GraphClass& g, const luinv::ParticleSpec& spec, const Budgets& b,
                           unsigned workers, bool& warned) {
  if (!spec.bose_fermi_only()) {
    if (!warned) std::cerr << "note: vanishing is only decided for boson/fermion specs\n";
    warned = true;
    return Vanishing::unknown;
  }
  try {
    luinv::CosetOptions co;
    co.budget = b.coset;
    co.workers = workers;
    return luinv::stabilizer_signs(luinv::CosetRep{spec, g.m(), luinv::graph_to_perm_tuple(g)}, co) ==
                   luinv::StabilizerSigns::mixed
               ? Vanishing::yes
               : Vanishing::no;
  } catch (const luinv::BudgetError& e) {
    if (!warned)
      std::cerr << "note: exact stabilizer tier skipped (" << e.what() << "); using the numeric test\n";
    warned = true;
  }
  luinv::EvalOptions eo;
  eo.budget = b.contract;
  return luinv::numerically_vanishing(g, spec, 3, 1, 1e-8, eo) ? Vanishing::yes : Vanishing::no;
}

int cmd_graphs(const std::string& spec_text, int degree, bool only_connected, bool only_nonvanishing,
               const std::string& dot_dir, const std::string& json_path, const Budgets& b, unsigned workers) {
  const auto spec = luinv::parse_spec(spec_text);
  luinv::EnumerateOptions eo;
  eo.budget = b.enumerate;
  const auto graphs = luinv::enumerate_graphs(spec.line_sums(), degree, eo);

  struct Row {
    const luinv::GraphClass* g;
    bool connected;
    Vanishing vanishing;
  };
  std::vector<Row> rows;
  bool warned = false;
  int n_connected = 0, n_vanishing = 0;
  for (const auto& g : graphs) {
    Row r{&g, luinv::is_connected(g), decide_vanishing(g, spec, b, workers, warned)};
    n_connected += r.connected;
    n_vanishing += r.vanishing == Vanishing::yes;
    if (only_connected && !r.connected) continue;
    if (only_nonvanishing && r.vanishing == Vanishing::yes) continue;
    rows.push_back(r);
  }

  std::cout << "graph_id,connected,vanishing\n";
  for (const auto& r : rows)
    std::cout << '"' << r.g->id() << "\"," << (r.connected ? "yes" : "no") << ',' << to_str(r.vanishing) << '\n';
  std::cerr << graphs.size() << " classes, " << n_connected << " connected, " << n_vanishing << " vanishing\n";

  if (!dot_dir.empty()) {
    std::filesystem::create_directories(dot_dir);
    for (std::size_t i = 0; i < rows.size(); ++i)
      write_file(std::filesystem::path(dot_dir) / ("graph_" + std::to_string(i + 1) + ".dot"),
                 luinv::export_dot(*rows[i].g));
  }
  if (!json_path.empty()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
      auto j = luinv::to_json(*r.g);
      j["connected"] = r.connected;
      j["vanishing"] = to_str(r.vanishing);
      out.push_back(std::move(j));
    }
    write_file(json_path, out.dump(2) + "\n");
  }
  return 0;
}

int cmd_eval(const std::string& state_path, bool density, std::optional<int> degree,
             const std::vector<std::string>& graph_ids, const Budgets& b) {
  if (!degree && graph_ids.empty()) throw luinv::ArgumentError("eval: give --degree or at least one --graph");
  const auto doc = read_json_file(state_path);
  luinv::EvalOptions eo;
  eo.budget = b.contract;

  std::optional<luinv::StateTensor> psi;
  std::optional<luinv::DensityTensor> rho;
  luinv::ParticleSpec target;
  if (density) {
    rho = luinv::density_from_json(doc);
    target = luinv::mixed_spec(rho->spec);
  } else {
    psi = luinv::state_from_json(doc);
    target = psi->spec;
    if (psi->norm() == 0) std::cerr << "warning: the state is zero; every invariant evaluates to 0\n";
  }

  std::vector<luinv::GraphClass> graphs;
  if (degree) {
    luinv::EnumerateOptions en;
    en.budget = b.enumerate;
    graphs = luinv::enumerate_graphs(target.line_sums(), *degree, en);
  }
  for (const auto& id : graph_ids) {
    auto g = luinv::graph_from_id(id);
    if (g.line_sums() != target.line_sums())
      throw luinv::ArgumentError("graph " + id + " does not match the spec " + luinv::format_spec(target));
    graphs.push_back(std::move(g));
  }

  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : graphs) {
    const auto v = density ? luinv::evaluate_mixed(g, *rho, eo) : luinv::evaluate(g, *psi, eo);
    out.push_back(luinv::evaluation_record(g, v));
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_verify(const std::string& level, const std::string& out_path, unsigned workers) {
  luinv::VerifyOptions vo;
  vo.level = level == "full" ? luinv::VerifyLevel::full : luinv::VerifyLevel::quick;
  vo.workers = workers;
  const auto report = luinv::run_verify(vo);
  const auto text = report.to_json().dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  for (const auto& c : report.checks)
    std::cerr << (c.passed ? "PASS " : (c.gating ? "FAIL " : "MISS ")) << c.name << ": " << c.detail << '\n';
  return report.passed() ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local unitary invariants of bosons and fermions"};
  app.require_subcommand(1);
  app.fallthrough();
  Budgets budgets;
  unsigned workers = 0;
  app.add_option("--budget-coset", budgets.coset, "Largest wreath product scanned for stabilizer signs")
      ->capture_default_str();
  app.add_option("--budget-contract", budgets.contract, "Largest contraction cost in multiply-adds")
      ->capture_default_str();
  app.add_option("--budget-enum", budgets.enumerate, "Largest sum of l_j * m for graph enumeration")
      ->capture_default_str();
  app.add_option("--workers", workers, "Worker threads (0 = hardware concurrency)")->capture_default_str();

  std::string spec;
  int max_degree = 5;
  auto* dims = app.add_subcommand("dims", "Stable dimensions d_1..d_M as CSV");
  dims->add_option("spec", spec, "Particle spec, e.g. b3, f4, p2,1, b2,f2, f1+mixed")->required();
  dims->add_option("-M,--max", max_degree, "Largest degree")->capture_default_str()->check(CLI::PositiveNumber);

  auto* free = app.add_subcommand("free-gens", "Numbers of free generators a_1..a_M as CSV");
  free->add_option("spec", spec, "Particle spec (bosons and fermions only)")->required();
  free->add_option("-M,--max", max_degree, "Largest degree")->capture_default_str()->check(CLI::PositiveNumber);

  int degree = 1;
  bool connected = false, nonvanishing = false;
  std::string dot_dir, json_path;
  auto* graphs = app.add_subcommand("graphs", "List the graph classes of one degree");
  graphs->add_option("spec", spec, "Particle spec")->required();
  graphs->add_option("-m,--degree", degree, "Degree")->required()->check(CLI::NonNegativeNumber);
  graphs->add_flag("--connected", connected, "Only connected classes");
  graphs->add_flag("--nonvanishing", nonvanishing, "Drop classes whose invariant vanishes");
  graphs->add_option("--dot", dot_dir, "Write one DOT file per listed class into this directory");
  graphs->add_option("--json", json_path, "Write the listed classes as JSON to this file");

  std::string state_path;
  bool density = false;
  std::optional<int> eval_degree;
  std::vector<std::string> graph_ids;
  auto* eval = app.add_subcommand("eval", "Evaluate invariants on a state file");
  eval->add_option("state", state_path, "State JSON file")->required();
  eval->add_flag("--density", density, "The file holds a density matrix (mixed-state invariants)");
  eval->add_option("-m,--degree", eval_degree, "Evaluate every class of this degree");
  eval->add_option("-g,--graph", graph_ids, "Graph id, e.g. 1,1;1,1 (repeatable)");

  std::string level = "quick", out_path;
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("--level", level, "quick or full")
      ->capture_default_str()
      ->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("-o,--out", out_path, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*dims) return cmd_dims(spec, max_degree, workers);
    if (*free) return cmd_free_gens(spec, max_degree, workers);
    if (*graphs) return cmd_graphs(spec, degree, connected, nonvanishing, dot_dir, json_path, budgets, workers);
    if (*eval) return cmd_eval(state_path, density, eval_degree, graph_ids, budgets);
    if (*verify) return cmd_verify(level, out_path, workers);
  } catch (const luinv::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what()
              << "\n(raise --budget-coset, --budget-contract or --budget-enum to go further)\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
