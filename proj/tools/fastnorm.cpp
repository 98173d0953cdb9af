#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fastnorm/cli/commands.hpp"
#include "fastnorm/error_lab.hpp"

namespace {

using fastnorm::Index;
using fastnorm::cli::RunSettings;

struct RunFlags {
  std::string dims;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::optional<double> grid_step;
  std::optional<std::uint64_t> cap;
  std::optional<std::uint64_t> samples;
  unsigned jobs = 0;
  bool fast = false;
  std::string out;

  void attach(CLI::App* cmd, bool with_grid, bool with_samples) {
    cmd->add_option("--dims,--dim", dims, "Dimensions, e.g. 2..8 or 2,4,8");
    cmd->add_option("--seed", seed, "RNG seed (default: $FASTNORM_SEED or 42)");
    cmd->add_option("--epsilon", epsilon, "Convergence threshold (default 1e-5)");
    cmd->add_option("--cap", cap, "Maximum number of sphere samples (default 2^28)");
    if (with_grid) cmd->add_option("--grid-step", grid_step, "Grid step for delta search (default 1e-6)");
    if (with_samples) cmd->add_option("--samples", samples, "Gaussian samples for the Seol-Cheun fit (default 1e5)");
    cmd->add_option("--jobs", jobs, "Dimensions evaluated concurrently (default: all cores)");
    cmd->add_flag("--fast", fast, "2^16 initial samples and epsilon 1e-4");
    cmd->add_option("--out", out, "Write CSV here (plus <out>.manifest.json) instead of stdout");
  }

  RunSettings settings() const {
    RunSettings s = RunSettings::defaults(fast);
    if (!dims.empty()) s.dims = fastnorm::cli::parse_dims(dims);
    if (seed) s.seed = *seed;
    if (epsilon) s.convergence.epsilon = *epsilon;
    if (grid_step) s.grid_step = *grid_step;
    if (cap) s.convergence.sample_cap = *cap;
    if (samples) s.calibration_samples = *samples;
    s.jobs = jobs;
    return s;
  }
};

void emit(const std::string& text, const std::string& out, const std::string* manifest) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + out);
  file << text;
  if (manifest != nullptr) {
    std::ofstream side(out + ".manifest.json", std::ios::binary);
    side << *manifest;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast Euclidean norm approximations and their error analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fastnorm::cli::kVersion));

  RunFlags t2;
  auto* table2 = app.add_subcommand("table2", "Average/maximum errors of D_ab, D_B, D_M-hat and D_M");
  t2.attach(table2, false, true);

  RunFlags t3;
  auto* table3 = app.add_subcommand("table3", "Errors of D_M-hat at delta* and at the grid-searched delta");
  t3.attach(table3, true, false);

  Index n_max = 100;
  std::string fig_out;
  auto* figure1 = app.add_subcommand("figure1", "Theoretical maximum errors of D_M and D_B");
  figure1->add_option("--n-max", n_max, "Largest dimension (default 100)");
  figure1->add_option("--out", fig_out, "Write CSV here instead of stdout");

  RunFlags cal;
  std::string target;
  bool no_evaluate = false;
  auto* calibrate = app.add_subcommand("calibrate", "Fit Seol-Cheun (a, b) or grid-search delta");
  calibrate->add_option("target", target, "seol-cheun | delta")->required()->check(CLI::IsMember({"seol-cheun", "delta"}));
  calibrate->add_flag("--no-evaluate", no_evaluate, "Skip the converged error run of the fitted D_ab");
  cal.attach(calibrate, true, true);

  std::string bench_norms = "dinf,d1,d2,seol-cheun,tcost,barni,mukherjee";
  std::string bench_dims = "2,4,8,64";
  int trials = 10;
  Index batch = 100000;
  std::uint64_t bench_seed = 1;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Operation counts and throughput per norm");
  bench->add_option("--norms", bench_norms, "Comma-separated norm names");
  bench->add_option("--dims", bench_dims, "Dimensions");
  bench->add_option("--trials", trials, "Timed trials (median reported, >= 3)");
  bench->add_option("--batch", batch, "Evaluations per trial");
  bench->add_option("--seed", bench_seed, "Seed for the random inputs");
  bench->add_option("--out", bench_out, "Write CSV here instead of stdout");

  std::string eval_norm;
  std::string eval_vector;
  std::string eval_file;
  fastnorm::NormParams params;
  auto* eval = app.add_subcommand("eval", "Evaluate a norm on vectors");
  eval->add_option("norm", eval_norm, "Norm name")->required();
  eval->add_option("vector", eval_vector, "Comma-separated components, e.g. \"3,4\"");
  eval->add_option("--file", eval_file, "File with one comma-separated vector per line ('#' comments)");
  eval->add_option("--p", params.p, "Exponent for lp");
  eval->add_option("--t", params.t, "t for tcost");
  eval->add_option("--a", params.a, "a for seol-cheun");
  eval->add_option("--b", params.b, "b for seol-cheun");
  eval->add_option("--delta", params.delta, "delta for mukherjee-hat (default delta*)");

  CLI11_PARSE(app, argc, argv);

  try {
    namespace cli = fastnorm::cli;
    if (table2->parsed()) {
      const RunSettings s = t2.settings();
      const std::string manifest = cli::manifest_json("table2", s);
      emit(cli::table2_csv(s), t2.out, &manifest);
    } else if (table3->parsed()) {
      const RunSettings s = t3.settings();
      const std::string manifest = cli::manifest_json("table3", s);
      emit(cli::table3_csv(s), t3.out, &manifest);
    } else if (figure1->parsed()) {
      emit(cli::figure1_csv(n_max), fig_out, nullptr);
    } else if (calibrate->parsed()) {
      RunSettings s = cal.settings();
      if (cal.dims.empty() && target == "seol-cheun") s.dims = {2};
      const std::string command = "calibrate-" + target;
      const std::string manifest = cli::manifest_json(command, s);
      emit(target == "seol-cheun" ? cli::calibrate_seol_cheun_csv(s, !no_evaluate) : cli::calibrate_delta_csv(s),
           cal.out, &manifest);
    } else if (bench->parsed()) {
      std::vector<std::string> names;
      std::string current;
      for (char c : bench_norms + ",") {
        if (c == ',') {
          if (!current.empty()) names.push_back(current);
          current.clear();
        } else {
          current += c;
        }
      }
      emit(cli::bench_csv(names, cli::parse_dims(bench_dims), trials, batch, bench_seed), bench_out, nullptr);
    } else if (eval->parsed()) {
      const fastnorm::NormKind kind = fastnorm::parse_norm_kind(eval_norm);
      std::vector<fastnorm::Vector> vectors;
      if (!eval_file.empty()) {
        std::ifstream in(eval_file);
        if (!in) throw std::runtime_error("cannot read " + eval_file);
        vectors = cli::parse_vector_file(in);
      }
      if (!eval_vector.empty()) vectors.push_back(cli::parse_vector(eval_vector));
      if (vectors.empty()) throw std::invalid_argument("eval needs a vector or --file");
      std::cout << cli::eval_output(kind, vectors, params);
    }
  } catch (const std::exception& e) {
    std::cerr << "fastnorm: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
