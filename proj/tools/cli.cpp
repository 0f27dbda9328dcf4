// Copyright 2026 The Subspace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subspace/clifford.hpp"
#include "subspace/compound_sve.hpp"
#include "subspace/det_sampling.hpp"
#include "subspace/errors.hpp"
#include "subspace/givens.hpp"
#include "subspace/kernels.hpp"
#include "subspace/matrix_io.hpp"
#include "subspace/random.hpp"
#include "subspace/simulator.hpp"
#include "subspace/tda.hpp"
#include "verify.hpp"

using namespace subspace;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kSchema = 1;

// Everything a run depends on. Echoed verbatim into the report.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> inputs;
  std::uint64_t seed = 1;
  std::size_t shots = 0;
  std::map<std::string, std::string> flags;
  std::string out;

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["inputs"] = Json::object();
    for (const auto& [k, v] : inputs)
      if (!v.empty()) j["inputs"][k] = v;
    j["seed"] = seed;
    j["shots"] = shots;
    j["flags"] = Json::object();
    for (const auto& [k, v] : flags) j["flags"][k] = v;
    j["out"] = out;
    return j;
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

Json report_header(const RunConfig& cfg) {
  Json j;
  j["schema"] = kSchema;
  j["config"] = cfg.to_json();
  return j;
}

void emit(const Json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + out);
  f << text;
}

Vector read_vector(const std::string& path) {
  const Matrix m = read_matrix(std::filesystem::path(path));
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw InvalidArgument("vector file must hold a single row or column");
}

std::vector<Subset> parse_subsets(const std::string& text, int n) {
  std::vector<Subset> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<int> positions;
    std::stringstream items(group);
    std::string item;
    while (std::getline(items, item, ',')) {
      try {
        positions.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw InvalidArgument("bad subset entry '" + item + "'");
      }
    }
    out.push_back(Subset::from_positions(n, positions));
  }
  if (out.empty()) throw InvalidArgument("no subsets given");
  return out;
}

Json sample_list(const std::vector<Subset>& samples) {
  Json j = Json::array();
  for (const auto& s : samples) j.push_back(s.to_string());
  return j;
}

Json stats_json(const SampleStatistics& m, int n) {
  Json e;
  e["method"] = m.method;
  e["tv_distance"] = m.tv_distance;
  e["chi_square"] = m.chi_square;
  e["dof"] = m.dof;
  e["p_value"] = m.p_value;
  e["counts"] = counts_json(m.counts, n);
  return e;
}

// ---------------------------------------------------------------- detsample

struct DetOptions {
  std::string matrix, method = "all", loader = "linear";
};

Json run_detsample(const RunConfig& cfg, const DetOptions& o) {
  const Matrix a = read_matrix(std::filesystem::path(o.matrix));
  const LoaderMode mode = parse_loader_mode(o.loader);
  if (cfg.shots < 1) throw InvalidArgument("--shots must be at least 1");
  Json j = report_header(cfg);
  if (o.method == "all") {
    const auto r = sampler_report(a, cfg.shots, cfg.seed, mode);
    const Json body = to_json(r);
    for (const auto& [k, v] : body.items()) j[k] = v;
    return j;
  }
  const OrthonormalFrame x = orthogonalize(a);
  const DetDistribution dist = exact_distribution(a);
  std::vector<Subset> samples;
  Json circuit;
  const auto start = Clock::now();
  if (o.method == "exact") {
    samples = exact_sample(dist, cfg.shots, derive_seed(cfg.seed, 1));
  } else if (o.method == "classical") {
    samples = classical_dpp_sample(x, cfg.shots, derive_seed(cfg.seed, 2));
  } else if (o.method == "quantum") {
    auto q = quantum_det_sample(x, cfg.shots, derive_seed(cfg.seed, 3), mode);
    samples = std::move(q.samples);
    circuit = {{"depth", q.circuit.depth()},
               {"gates", q.circuit.gate_count()},
               {"loader_depth", q.loader_depth},
               {"amplitude_residual", q.amplitude_residual},
               {"leakage", q.leakage}};
  } else {
    throw InvalidArgument("unknown method '" + o.method + "' (exact, classical, quantum, all)");
  }
  const double elapsed = seconds_since(start);
  j["n"] = x.n();
  j["d"] = x.d();
  j["shots"] = cfg.shots;
  j["seed"] = cfg.seed;
  j["loader"] = loader_mode_name(mode);
  j["methods"] = Json::array({stats_json(compare_samples(o.method, samples, dist), x.n())});
  if (!circuit.is_null()) j["quantum_circuit"] = circuit;
  if (cfg.shots <= 1000) j["samples"] = sample_list(samples);
  j["timing"] = {{o.method + "_seconds_per_sample", elapsed / static_cast<double>(cfg.shots)}};
  return j;
}

// ---------------------------------------------------------------- decompose

struct DecomposeOptions {
  std::string matrix, method = "pyramid", emit;
};

Json run_decompose(const RunConfig& cfg, const DecomposeOptions& o) {
  const Matrix u = read_matrix(std::filesystem::path(o.matrix));
  const GivensMethod method = parse_givens_method(o.method);
  const auto dec = decompose(u, method);
  const Circuit c = dec.to_circuit();
  const Circuit lowered = lower_fbs(c);
  Json j = report_header(cfg);
  j["n"] = u.rows();
  j["d"] = u.cols();
  j["qubits"] = dec.n;
  j["method"] = method == GivensMethod::kPyramid ? "pyramid" : "csd";
  j["rotations"] = dec.rotations.size();
  j["circuit"] = {{"depth", c.depth()},
                  {"gates", c.gate_count()},
                  {"rbs", c.gate_count(GateKind::kRBS)},
                  {"fbs", c.gate_count(GateKind::kFBS)}};
  j["lowered"] = {{"depth", lowered.depth()},
                  {"gates", lowered.gate_count()},
                  {"cx", lowered.gate_count(GateKind::kCX)},
                  {"cz", lowered.gate_count(GateKind::kCZ)}};
  j["reconstruction_residual"] = (dec.reconstruct().topLeftCorner(u.rows(), u.cols()) - u).cwiseAbs().maxCoeff();
  j["decomposition"] = to_json(dec);
  if (!o.emit.empty()) emit(to_json(c), o.emit);
  return j;
}

// ---------------------------------------------------------------- loader

struct LoaderOptions {
  std::string vector, mode = "linear", emit;
};

Json run_loader(const RunConfig& cfg, const LoaderOptions& o) {
  Vector x = read_vector(o.vector);
  const double norm = x.norm();
  if (!(norm > 0.0)) throw DegenerateInput("input vector is zero");
  x /= norm;
  const LoaderMode mode = parse_loader_mode(o.mode);
  const Circuit c = clifford_loader(x, mode);
  Json j = report_header(cfg);
  j["n"] = x.size();
  j["qubits"] = c.n();
  j["mode"] = loader_mode_name(mode);
  j["input_norm"] = norm;
  j["depth"] = c.depth();
  j["gates"] = c.gate_count();
  j["gate_counts"] = {{"rbs", c.gate_count(GateKind::kRBS)},
                      {"x", c.gate_count(GateKind::kX)},
                      {"z", c.gate_count(GateKind::kZ)},
                      {"cz", c.gate_count(GateKind::kCZ)},
                      {"cx", c.gate_count(GateKind::kCX)}};
  if (mode == LoaderMode::kLog) {
    Vector padded = Vector::Zero(c.n());
    padded.head(x.size()) = x;
    j["unloader_depth"] = log_unloader(padded).depth();
    if (c.n() >= 4) j["unloader_depth_formula"] = 4 * (std::bit_width(static_cast<unsigned>(c.n())) - 2);
  }
  if (c.n() <= 8) {
    Vector padded = Vector::Zero(c.n());
    padded.head(x.size()) = x;
    j["gamma_residual"] = (circuit_unitary(c) - gamma_dense(padded).matrix).cwiseAbs().maxCoeff();
  }
  if (!o.emit.empty()) emit(to_json(c), o.emit);
  return j;
}

// ---------------------------------------------------------------- sve

struct SveOptions {
  std::string matrix, subsets;
  int block = 0, k = 1, bits = 8;
};

Json run_sve(const RunConfig& cfg, const SveOptions& o) {
  const Matrix m = read_matrix(std::filesystem::path(o.matrix));
  if (m.rows() != m.cols()) throw InvalidArgument("sve needs a square matrix");
  // With --block the file is the orthogonal embedding; otherwise it is A.
  const Matrix u = o.block > 0 ? m : block_embedding(m);
  const int block = o.block > 0 ? o.block : static_cast<int>(m.rows());
  const SveProblem problem(u, block, o.k);
  const auto subsets = o.subsets.empty() ? std::vector<Subset>{Subset::first(block, o.k)}
                                         : parse_subsets(o.subsets, block);
  const std::vector<double> alphas(subsets.size(), 1.0);
  if (cfg.shots < 1) throw InvalidArgument("--shots must be at least 1");
  const auto start = Clock::now();
  const auto res = subspace_sve(problem, subsets, alphas, o.bits, cfg.shots, cfg.seed);
  const double elapsed = seconds_since(start);

  const double tol = 2 * 2 * M_PI / static_cast<double>(1 << o.bits);
  Json j = report_header(cfg);
  j["n"] = problem.n();
  j["block"] = problem.block();
  j["k"] = problem.k();
  j["bits"] = o.bits;
  j["sigma"] = std::vector<double>(problem.sigma().data(), problem.sigma().data() + problem.sigma().size());
  j["success_tolerance"] = tol;
  Json inputs = Json::array();
  for (const auto& s : subsets) {
    std::map<int, std::size_t> hist;
    std::size_t hits = 0, total = 0;
    double mean = 0.0;
    for (const auto& e : res.estimates) {
      if (e.s != s) continue;
      ++total;
      ++hist[e.outcome];
      mean += std::cos(e.theta);
      if (std::abs(std::cos(e.theta) - problem.product_sigma(s)) <= tol) ++hits;
    }
    Json h = Json::object();
    for (const auto& [outcome, count] : hist) h[std::to_string(outcome)] = count;
    inputs.push_back({{"subset", s.to_string()},
                      {"product_sigma", problem.product_sigma(s)},
                      {"shots", total},
                      {"mean_cos_estimate", total ? mean / static_cast<double>(total) : 0.0},
                      {"success_rate", total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0},
                      {"outcomes", h}});
  }
  j["inputs"] = inputs;
  auto peaks = res.peaks;
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const SvePeak& a, const SvePeak& b) { return a.probability > b.probability; });
  if (peaks.size() > 20) peaks.resize(20);
  Json pj = Json::array();
  for (const auto& p : peaks) {
    const double phase = 2 * M_PI * p.outcome / static_cast<double>(1 << o.bits);
    pj.push_back({{"subset", p.s.to_string()},
                  {"outcome", p.outcome},
                  {"cos_theta", std::cos(std::min(phase, 2 * M_PI - phase) / 2)},
                  {"probability", p.probability}});
  }
  j["peaks"] = pj;
  j["timing"] = {{"seconds", elapsed}};
  return j;
}

// ---------------------------------------------------------------- tda

struct TdaOptions {
  std::string complex, points;
  int complete = 0, max_dim = -1;
  double scale = 0.0;
  bool close = false, betti = false, embedding = false, laplacian = false;
};

Json run_tda(const RunConfig& cfg, const TdaOptions& o) {
  const int sources = !o.complex.empty() + !o.points.empty() + (o.complete > 0);
  if (sources != 1) throw InvalidArgument("give exactly one of --complex, --points, --complete");
  const int cap = o.max_dim < 0 ? -1 : o.max_dim + 1;
  SimplicialComplex c = [&] {
    if (!o.complex.empty()) {
      std::ifstream f(o.complex);
      if (!f) throw InvalidArgument("cannot read " + o.complex);
      nlohmann::json j;
      try {
        f >> j;
      } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("complex JSON: ") + e.what());
      }
      return complex_from_json(j, o.close);
    }
    if (!o.points.empty()) return vietoris_rips(read_matrix(std::filesystem::path(o.points)), o.scale, cap);
    return complete_complex(o.complete);
  }();
  Json j = report_header(cfg);
  j["n"] = c.n();
  j["rank"] = c.rank();
  Json sizes = Json::array();
  for (int s = 0; s <= c.rank() + 1; ++s) sizes.push_back(c.count_of_size(s));
  j["simplices_by_size"] = sizes;
  if (o.betti) {
    const auto b = betti_numbers(c);
    j["betti"] = b.betti;
    j["reduced_betti0"] = b.reduced_beta0;
    j["betti_from_ranks"] = b.betti_from_ranks;
  }
  if (o.laplacian) {
    const auto r = laplacian_check(c);
    j["laplacian"] = {{"diagonal_residual", r.diagonal_residual},
                      {"square_residual", r.square_residual},
                      {"off_diagonal_values", r.off_diagonal_values},
                      {"off_diagonal_counterexample", r.off_diagonal_counterexample}};
  }
  if (o.embedding) j["embedding_residual"] = embedding_check(c);
  return j;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string suite = "all";
  int max_n = 6;
};

Json run_verify(const RunConfig& cfg, const VerifyOptions& o, bool& all_pass) {
  const auto start = Clock::now();
  const auto checks = cli::run_suites(o.suite, o.max_n, cfg.seed);
  std::cerr << cli::format_table(checks);
  Json j = report_header(cfg);
  Json list = Json::array();
  all_pass = true;
  for (const auto& c : checks) {
    list.push_back(cli::to_json(c));
    all_pass = all_pass && c.pass;
  }
  j["checks"] = list;
  j["all_pass"] = all_pass;
  j["timing"] = {{"seconds", seconds_since(start)}};
  return j;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  std::string suite = "loaders";
  int n = 8, reps = 3;
};

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t = Clock::now();
    f();
    best = std::min(best, seconds_since(t));
  }
  return best;
}

Json run_bench(const RunConfig& cfg, const BenchOptions& o) {
  if (o.suite != "loaders" && o.suite != "kernels" && o.suite != "all") {
    throw InvalidArgument("unknown bench suite '" + o.suite + "' (loaders, kernels, all)");
  }
  if (o.n < 2) throw InvalidArgument("--n must be at least 2");
  Json j = report_header(cfg);
  Json timing = Json::object();
  CounterRng rng(cfg.seed, 0);
  if (o.suite != "kernels") {
    Json rows = Json::array();
    for (int n = 2; n <= o.n; n *= 2) {
      const Vector x = random_unit_vector(n, rng);
      const Circuit lin = linear_loader(x), log = log_loader(x);
      Json row = {{"n", n},
                  {"linear_depth", lin.depth()},
                  {"linear_gates", lin.gate_count()},
                  {"log_depth", log.depth()},
                  {"log_unloader_depth", log_unloader(x).depth()},
                  {"log_gates", log.gate_count()}};
      if (n >= 4) row["log_unloader_depth_formula"] = 4 * (std::bit_width(static_cast<unsigned>(n)) - 2);
      rows.push_back(row);
    }
    j["loaders"] = rows;
  }
  if (o.suite != "loaders") {
    const int q = std::clamp(o.n, 2, limits().dense_qubits);
    std::vector<Gate> gates;
    for (int g = 0; g < 64; ++g) {
      const int i = 1 + static_cast<int>(rng.uniform() * (q - 1)) % (q - 1);
      const int jj = i + 1 + static_cast<int>(rng.uniform() * (q - i)) % (q - i);
      gates.push_back(Gate::fbs(i, jj, rng.uniform() * M_PI));
    }
    std::vector<double> a(std::size_t{1} << q, 0.0), b = a;
    a[0b1] = b[0b1] = 1.0;
    const double tp = best_of(o.reps, [&] { for (const auto& g : gates) kernels::apply_dense(a, q, g); });
    const double ts = best_of(o.reps, [&] { for (const auto& g : gates) kernels::serial::apply_dense(b, q, g); });
    j["kernels"] = {{"qubits", q}, {"gates", gates.size()}, {"reps", o.reps}, {"outputs_identical", a == b}};
    timing["apply_dense_parallel_seconds"] = tp;
    timing["apply_dense_serial_seconds"] = ts;
    const Matrix m = random_gaussian(q, q, rng);
    const int k = std::min(3, q);
    if (binomial(q, k) <= limits().compound_dim) {
      timing["compound_parallel_seconds"] = best_of(o.reps, [&] { (void)compound(m, k); });
      timing["compound_serial_seconds"] = best_of(o.reps, [&] { (void)serial::compound(m, k); });
    }
  }
  j["timing"] = timing;
  return j;
}

void print_error(const std::string& kind, const std::string& message) {
  Json j;
  j["schema"] = kSchema;
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace-state linear algebra: circuits, sampling, compound spectra and simplicial operators"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint64_t seed = 1;
  std::size_t shots = 1000;
  std::string out;

  auto common = [&](CLI::App* sub, bool with_shots) {
    sub->add_option("--seed", seed, "64-bit seed for every random draw");
    if (with_shots) sub->add_option("--shots", shots, "number of samples");
    sub->add_option("--out", out, "report path (stdout if omitted)");
  };

  DetOptions det;
  auto* detsample = app.add_subcommand("detsample", "sample |det(A_S)|^2 exactly, classically and by simulated circuit");
  detsample->add_option("--matrix", det.matrix, "n x d matrix file")->required();
  detsample->add_option("--method", det.method, "exact|classical|quantum|all");
  detsample->add_option("--loader", det.loader, "linear|log");
  common(detsample, true);

  DecomposeOptions dc;
  auto* decomp = app.add_subcommand("decompose", "compile an orthogonal matrix or frame into Givens rotations");
  decomp->add_option("--matrix", dc.matrix, "n x n or n x d matrix file")->required();
  decomp->add_option("--method", dc.method, "pyramid|csd");
  decomp->add_option("--emit", dc.emit, "write the circuit JSON here");
  common(decomp, false);

  LoaderOptions lo;
  auto* loader = app.add_subcommand("loader", "build a Clifford loader circuit for a vector");
  loader->add_option("--vector", lo.vector, "vector file (one row or column)")->required();
  loader->add_option("--mode", lo.mode, "linear|log");
  loader->add_option("--emit", lo.emit, "write the circuit JSON here");
  common(loader, false);

  SveOptions sv;
  auto* sve = app.add_subcommand("sve", "subspace singular value estimation by sector phase estimation");
  sve->add_option("--matrix", sv.matrix, "square block A (or the orthogonal embedding with --block)")->required();
  sve->add_option("--block", sv.block, "treat the matrix as an orthogonal embedding with this corner size");
  sve->add_option("--k", sv.k, "subspace dimension");
  sve->add_option("--bits", sv.bits, "phase register bits");
  sve->add_option("--subsets", sv.subsets, "input subsets, e.g. \"1,2;2,3\" (uniform superposition)");
  common(sve, true);

  TdaOptions td;
  auto* tda = app.add_subcommand("tda", "simplicial complexes, Dirac operators and Betti numbers");
  tda->add_option("--complex", td.complex, "complex JSON {\"n\":..,\"simplices\":[[..],..]}");
  tda->add_option("--points", td.points, "point cloud (one point per row) for Vietoris-Rips");
  tda->add_option("--scale", td.scale, "Vietoris-Rips distance scale");
  tda->add_option("--complete", td.complete, "complete complex on this many vertices");
  tda->add_option("--max-dim", td.max_dim, "cap simplex dimension for generated complexes");
  tda->add_flag("--close", td.close, "take the downward closure of the input list");
  tda->add_flag("--betti", td.betti, "report Betti numbers");
  tda->add_flag("--verify-embedding", td.embedding, "check D(C) against the uniform Clifford loader");
  tda->add_flag("--laplacian", td.laplacian, "check the Laplacian entries");
  common(tda, false);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "run the invariant suites and print a pass/fail table");
  verify->add_option("--suite", vo.suite, "all or one suite name");
  verify->add_option("--max-n", vo.max_n, "largest problem size");
  common(verify, false);

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "loader depths and serial vs parallel kernel timings");
  bench->add_option("--suite", bo.suite, "loaders|kernels|all");
  bench->add_option("--n", bo.n, "largest size");
  bench->add_option("--reps", bo.reps, "timing repetitions");
  common(bench, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    std::cerr << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  cfg.seed = seed;
  cfg.out = out;
  try {
    set_limits(limits_from_env());
    Json report;
    int code = 0;
    if (chosen == detsample) {
      cfg.shots = shots;
      cfg.inputs["matrix"] = det.matrix;
      cfg.flags = {{"method", det.method}, {"loader", det.loader}};
      report = run_detsample(cfg, det);
    } else if (chosen == decomp) {
      cfg.inputs["matrix"] = dc.matrix;
      cfg.flags = {{"method", dc.method}, {"emit", dc.emit}};
      report = run_decompose(cfg, dc);
    } else if (chosen == loader) {
      cfg.inputs["vector"] = lo.vector;
      cfg.flags = {{"mode", lo.mode}, {"emit", lo.emit}};
      report = run_loader(cfg, lo);
    } else if (chosen == sve) {
      cfg.shots = shots;
      cfg.inputs["matrix"] = sv.matrix;
      cfg.flags = {{"block", std::to_string(sv.block)}, {"k", std::to_string(sv.k)},
                   {"bits", std::to_string(sv.bits)}, {"subsets", sv.subsets}};
      report = run_sve(cfg, sv);
    } else if (chosen == tda) {
      cfg.inputs = {{"complex", td.complex}, {"points", td.points}};
      std::ostringstream scale;
      scale << td.scale;
      cfg.flags = {{"complete", std::to_string(td.complete)}, {"scale", scale.str()},
                   {"max_dim", std::to_string(td.max_dim)}, {"close", td.close ? "true" : "false"},
                   {"betti", td.betti ? "true" : "false"}, {"verify_embedding", td.embedding ? "true" : "false"},
                   {"laplacian", td.laplacian ? "true" : "false"}};
      report = run_tda(cfg, td);
    } else if (chosen == verify) {
      cfg.flags = {{"suite", vo.suite}, {"max_n", std::to_string(vo.max_n)}};
      bool all_pass = true;
      report = run_verify(cfg, vo, all_pass);
      code = all_pass ? 0 : 1;
    } else {
      cfg.flags = {{"suite", bo.suite}, {"n", std::to_string(bo.n)}, {"reps", std::to_string(bo.reps)}};
      report = run_bench(cfg, bo);
    }
    emit(report, out);
    return code;
  } catch (const Error& e) {
    print_error(std::string(to_string(e.kind())), e.what());
  } catch (const std::exception& e) {
    print_error("internal", e.what());
  }
  return 1;
}
