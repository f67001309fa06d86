#include "rankbar_cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "rankbar/barrier_lab.hpp"
#include "rankbar/decomposition.hpp"
#include "rankbar/depth3.hpp"
#include "rankbar/error.hpp"
#include "rankbar/json_io.hpp"
#include "rankbar/random.hpp"
#include "rankbar/rank_methods.hpp"

namespace rankbar::cli {
namespace {

using io::Json;

struct RunConfig {
  std::string field_text = "rational";
  std::uint64_t seed = 0;
  std::size_t trials = 20;
  std::uint64_t sample_range = 0;  // 0: derive from the matrix
  std::string output = "json";
  std::size_t max_m = 64;
  double max_monomials = 1e6;

  Field field() const {
    if (field_text == "rational") return Field::rational();
    if (field_text.rfind("prime:", 0) == 0) {
      const std::string p = field_text.substr(6);
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(p, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != p.size()) throw InputError("--field prime:P needs a decimal prime P");
      try {
        return Field::prime(v);
      } catch (const ContractViolation& e) {
        throw InputError(std::string("--field: ") + e.what());
      }
    }
    throw InputError("--field must be \"rational\" or \"prime:P\"");
  }
};

void render_text(const Json& j, std::ostream& out, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      const std::string key = prefix.empty() ? k : prefix + "." + k;
      if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_structured())) {
        render_text(v, out, key);
      } else {
        out << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], out, prefix + "[" + std::to_string(i + 1) + "]");
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Json& j, const RunConfig& cfg, std::ostream& out) {
  if (cfg.output == "text") {
    render_text(j, out, "");
  } else {
    out << io::dump(j);
  }
}

double binom_estimate(double n, double k) {
  double r = 1;
  for (double i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void guard_monomials(double estimate, const RunConfig& cfg, const std::string& what) {
  if (estimate > cfg.max_monomials) {
    std::ostringstream ss;
    ss << what << ": estimated dense monomial count " << static_cast<long long>(estimate) << " exceeds the limit "
       << static_cast<long long>(cfg.max_monomials);
    throw ResourceRefusal(ss.str());
  }
}

/// Bareiss intermediates reach degree rank * deg; bound their dense size.
void guard_matrix(const PolyMatrix& m, const RunConfig& cfg, const std::string& what) {
  if (m.rows() > cfg.max_m || m.cols() > cfg.max_m) {
    throw ResourceRefusal(what + ": matrix dimension exceeds the limit " + std::to_string(cfg.max_m));
  }
  const double nv = static_cast<double>(m.num_vars());
  const double deg = std::max(0, m.max_degree());
  const double top = static_cast<double>(std::min(m.rows(), m.cols())) * deg;
  guard_monomials(static_cast<double>(m.rows() * m.cols()) * binom_estimate(nv + top, nv), cfg, what);
}

PolyMatrix load_matrix(const std::string& path, const Field& f) {
  return io::poly_matrix_from_json(io::parse(io::read_file(path)), f);
}

// ---------------------------------------------------------------------------

int cmd_rank(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const Field f = cfg.field();
  const PolyMatrix m = load_matrix(path, f);
  guard_matrix(m, cfg, "rank");
  const std::uint64_t range = cfg.sample_range ? cfg.sample_range : default_sample_range(m);
  if (cfg.sample_range == 1) throw InputError("--sample-range must be at least 2");
  const std::size_t exact = exact_symbolic_rank(m);
  const std::size_t randomized = randomized_symbolic_rank(m, range, kDefaultRankTrials, cfg.seed);
  Json j;
  j["field"] = f.name();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["exact_rank"] = exact;
  j["randomized_rank"] = randomized;
  j["agree"] = exact == randomized;
  j["sample_range"] = range;
  j["rank_trials"] = kDefaultRankTrials;
  j["seed"] = cfg.seed;
  emit(j, cfg, out);
  return kOk;
}

struct LowerBoundArgs {
  std::string input;
  std::optional<std::size_t> catalecticant;
  std::vector<std::size_t> modes;
  std::string map_file;
  std::optional<std::size_t> mu_s;
};

int cmd_lower_bound(const LowerBoundArgs& a, const RunConfig& cfg, std::ostream& out) {
  const Field f = cfg.field();
  const Json in = io::parse(io::read_file(a.input));
  const bool is_tensor = in.is_object() && in.contains("entries") && !in.contains("vars");
  MapInput input = is_tensor ? MapInput(io::tensor_from_json(in, f)) : MapInput(io::polynomial_from_json(in, f));

  const int selected = (a.catalecticant ? 1 : 0) + (a.modes.empty() ? 0 : 1) + (a.map_file.empty() ? 0 : 1);
  if (selected != 1) throw InputError("choose exactly one of --catalecticant, --mode, --map");

  std::optional<LinearMap> map;
  std::string method;
  std::size_t mu_s = 1;
  bool mu_analytic = true;
  if (a.catalecticant) {
    const auto* p = std::get_if<Polynomial>(&input);
    if (!p) throw InputError("--catalecticant needs a polynomial input");
    if (p->is_zero()) throw InputError("--catalecticant needs a nonzero polynomial");
    const int d = p->degree();
    if (!p->is_homogeneous_of(d)) throw InputError("--catalecticant needs a homogeneous polynomial");
    if (*a.catalecticant > static_cast<std::size_t>(d)) throw InputError("--catalecticant k exceeds the degree");
    if (d == 0) throw InputError("--catalecticant needs degree at least 1");
    const double rows = binom_estimate(p->num_vars() + *a.catalecticant - 1.0, static_cast<double>(*a.catalecticant));
    const double cols = binom_estimate(p->num_vars() + (d - *a.catalecticant) - 1.0,
                                       static_cast<double>(d - *a.catalecticant));
    guard_monomials(rows * cols, cfg, "lower-bound");
    map = catalecticant_map(p->num_vars(), static_cast<std::size_t>(d), *a.catalecticant);
    method = "catalecticant k=" + std::to_string(*a.catalecticant);
  } else if (!a.modes.empty()) {
    const auto* t = std::get_if<Tensor>(&input);
    if (!t) throw InputError("--mode needs a tensor input");
    std::vector<std::size_t> zero_based;
    for (auto s : a.modes) {
      if (s < 1 || s > t->d()) throw InputError("--mode entries must lie in 1.." + std::to_string(t->d()));
      zero_based.push_back(s - 1);
    }
    const BlockSet s = BlockSet::of(zero_based);
    if (s.size() == t->d()) throw InputError("--mode must be a proper subset of the modes");
    guard_monomials(std::pow(static_cast<double>(t->n()), static_cast<double>(t->d())), cfg, "lower-bound");
    map = mode_flattening_map(t->n(), t->d(), s);
    method = "mode flattening";
  } else {
    map = io::linear_map_from_json(io::parse(io::read_file(a.map_file)), f);
    method = "linear map";
    if ((map->family() == Family::waring) != std::holds_alternative<Polynomial>(input)) {
      throw InputError("the map's family (" + to_string(map->family()) + ") does not match the input");
    }
    if (map->m() > cfg.max_m) throw ResourceRefusal("map dimension m exceeds the limit " + std::to_string(cfg.max_m));
    mu_analytic = false;
  }
  if (a.mu_s) {
    mu_s = *a.mu_s;
    mu_analytic = true;
  } else if (!mu_analytic) {
    mu_s = estimate_r(*map, cfg.seed);
  }
  if (mu_s == 0) throw InputError("mu_S is 0: the map vanishes on every simple element, no bound follows");

  LowerBoundResult res;
  try {
    res = lower_bound(*map, input, mu_s);
  } catch (const ContractViolation& e) {
    throw InputError(e.what());
  }
  Json j;
  j["method"] = method;
  j["family"] = to_string(map->family());
  j["n"] = map->n();
  j["d"] = map->d();
  j["mu_s_source"] = mu_analytic ? "analytic" : "empirical";
  const Json res_json = io::to_json(res);
  for (const auto& [k, v] : res_json.items()) j[k] = v;
  j["field"] = f.name();
  emit(j, cfg, out);
  return kOk;
}

struct BarrierArgs {
  std::string family = "waring";
  std::size_t n = 2;
  std::size_t d = 2;
  std::size_t m = 4;
  std::size_t maps = 1;
  double density = 1.0;
  unsigned threads = 1;
};

int cmd_barrier_check(const BarrierArgs& a, const RunConfig& cfg, std::ostream& out) {
  const Field f = cfg.field();
  const Family family = family_from_string(a.family);
  if (a.n < 1 || a.d < 1 || a.m < 1) throw InputError("n, d and m must be positive");
  if (!(a.density > 0.0 && a.density <= 1.0)) throw InputError("--density must lie in (0, 1]");
  if (cfg.trials < 1) throw InputError("--trials must be at least 1");
  if (a.m > cfg.max_m) throw ResourceRefusal("m = " + std::to_string(a.m) + " exceeds the limit " + std::to_string(cfg.max_m));
  const double basis = family == Family::waring
                           ? binom_estimate(static_cast<double>(a.n + a.d), static_cast<double>(a.d))
                           : std::pow(static_cast<double>(a.n), static_cast<double>(a.d));
  guard_monomials(basis * static_cast<double>(a.m * a.m), cfg, "barrier-check");

  Json reports = Json::array();
  bool all_pass = true;
  for (std::size_t k = 0; k < a.maps; ++k) {
    const std::uint64_t map_seed = Rng::stream(cfg.seed, 2 * k).next();
    const std::uint64_t trial_seed = Rng::stream(cfg.seed, 2 * k + 1).next();
    const LinearMap l = random_linear_map(family, a.n, a.d, a.m, a.density, map_seed, f);
    const BarrierReport rep = verify_barrier(l, cfg.trials, trial_seed, BarrierOptions{a.threads});
    all_pass = all_pass && rep.pass;
    Json r = io::to_json(rep);
    r["map_seed"] = map_seed;
    reports.push_back(std::move(r));
  }
  Json j;
  j["family"] = to_string(family);
  j["n"] = a.n;
  j["d"] = a.d;
  j["m"] = a.m;
  j["maps"] = a.maps;
  j["trials"] = cfg.trials;
  j["density"] = a.density;
  j["seed"] = cfg.seed;
  j["field"] = f.name();
  j["per_unit_barrier"] = barrier_bound(family, a.n, a.d);
  j["all_pass"] = all_pass;
  j["reports"] = std::move(reports);
  emit(j, cfg, out);
  return all_pass ? kOk : kBarrierViolated;
}

struct DecomposeArgs {
  std::string input;
  std::string mode = "hom";
  std::string partition_file;
  std::size_t blocks = 0;
  std::optional<int> degree;
  std::string out_file;
};

int cmd_decompose(const DecomposeArgs& a, const RunConfig& cfg, std::ostream& out) {
  const Field f = cfg.field();
  const PolyMatrix m = load_matrix(a.input, f);
  guard_matrix(m, cfg, "decompose");
  const int d = a.degree ? *a.degree : std::max(0, m.max_degree());
  DecomposeOptions opts;
  opts.shift.seed = cfg.seed;

  Json dec;
  Json summary;
  summary["mode"] = a.mode;
  summary["degree"] = d;
  try {
    if (a.mode == "symbolic") {
      const SymbolicDecomposition sd = symbolic_decompose(m, d, opts);
      dec = io::to_json(sd);
      summary["symbolic_rank"] = sd.pairs.size();
      summary["terms"] = sd.pairs.size();
      summary["bound"] = sd.pairs.size();
      summary["verified"] = true;
    } else if (a.mode == "hom") {
      const HomDecomposition hd = hom_rank_decompose(m, d, opts);
      dec = io::to_json(hd);
      summary["symbolic_rank"] = hd.symbolic_rank;
      summary["terms"] = hd.terms.size();
      summary["bound"] = hd.bound();
      summary["verified"] = static_cast<bool>(verify_decomposition(m, hd));
    } else if (a.mode == "sm") {
      VariablePartition part;
      if (!a.partition_file.empty()) {
        part = io::partition_from_json(io::parse(io::read_file(a.partition_file)));
      } else if (a.blocks > 0) {
        if (m.num_vars() % a.blocks != 0) throw InputError("--blocks must divide the number of variables");
        part = VariablePartition::uniform(a.blocks, m.num_vars() / a.blocks);
      } else {
        throw InputError("mode sm needs --partition FILE or --blocks B");
      }
      const SMDecomposition sm = sm_rank_decompose(m, part, opts);
      dec = io::to_json(sm);
      summary["symbolic_rank"] = sm.symbolic_rank;
      summary["terms"] = sm.terms.size();
      summary["bound"] = sm.bound();
      summary["verified"] = static_cast<bool>(verify_decomposition(m, sm, part));
    } else {
      throw InputError("--mode must be symbolic, hom or sm");
    }
  } catch (const ContractViolation& e) {
    throw InputError(e.what());
  }

  if (!a.out_file.empty()) {
    std::ofstream file(a.out_file, std::ios::binary);
    if (!file) throw InputError("cannot write " + a.out_file);
    file << io::dump(dec);
    summary["output"] = a.out_file;
    emit(summary, cfg, out);
  } else {
    Json j;
    j["summary"] = std::move(summary);
    j["decomposition"] = std::move(dec);
    emit(j, cfg, out);
  }
  return kOk;
}

struct Depth3Args {
  std::size_t n = 1;
  std::size_t D = 1;
  std::size_t d = 1;
  std::string input;
};

void guard_depth3(const Depth3Args& a, const RunConfig& cfg) {
  if (a.n < 1 || a.d < 1) throw InputError("n and d must be positive");
  if (a.D < a.d) throw InputError("D must be at least d");
  // D!/(D-d)! products per polarized monomial, C(n+d-1, d) monomials.
  double per = 1;
  for (std::size_t i = 0; i < a.d; ++i) per *= static_cast<double>(a.D - i);
  guard_monomials(per * binom_estimate(static_cast<double>(a.n + a.d - 1), static_cast<double>(a.d)), cfg, "depth3");
}

int cmd_depth3_psi(const Depth3Args& a, const RunConfig& cfg, std::ostream& out) {
  guard_depth3(a, cfg);
  emit(io::to_json(build_psi(a.n, a.D, a.d)), cfg, out);
  return kOk;
}

int cmd_depth3_validate(const Depth3Args& a, const RunConfig& cfg, std::ostream& out) {
  guard_depth3(a, cfg);
  const PolyMatrix m = load_matrix(a.input, cfg.field());
  const VerificationResult res = validate_rank_method(m, a.n, a.D, a.d);
  Json j;
  j["n"] = a.n;
  j["D"] = a.D;
  j["d"] = a.d;
  j["valid"] = res.ok;
  if (!res.ok) j["diagnostic"] = res.diagnostic;
  emit(j, cfg, out);
  return kOk;
}

struct GapArgs {
  std::vector<std::size_t> n{3};
  std::vector<std::size_t> d{3};
};

int cmd_gap_report(const GapArgs& a, const RunConfig& cfg, std::ostream& out) {
  auto range = [](const std::vector<std::size_t>& v, const char* name) {
    if (v.empty() || v.size() > 2) throw InputError(std::string("--") + name + " takes one value or a range LO HI");
    const std::size_t lo = v.front();
    const std::size_t hi = v.back();
    if (lo < 1 || hi < lo) throw InputError(std::string("--") + name + " range must satisfy 1 <= LO <= HI");
    if (hi - lo > 1000) throw ResourceRefusal(std::string("--") + name + " range is too long");
    return std::pair{lo, hi};
  };
  const auto [n0, n1] = range(a.n, "n");
  const auto [d0, d1] = range(a.d, "d");
  Json rows = Json::array();
  for (std::size_t n = n0; n <= n1; ++n) {
    for (std::size_t d = d0; d <= d1; ++d) {
      try {
        rows.push_back(io::to_json(gap_report(n, d)));
      } catch (const ContractViolation& e) {
        throw ResourceRefusal(std::string("gap-report: ") + e.what());
      }
    }
  }
  Json j;
  j["rows"] = std::move(rows);
  emit(j, cfg, out);
  return kOk;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  Json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  j["error"]["exit_code"] = code;
  err << j.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact rank methods, barrier checks and symbolic-matrix decompositions", "rankbar"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--field", cfg.field_text, "rational or prime:P")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for every randomized step")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Random inputs per map in barrier-check")->capture_default_str();
  app.add_option("--sample-range", cfg.sample_range, "Evaluation range for randomized rank (0: automatic)");
  app.add_option("--output", cfg.output, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--max-m", cfg.max_m, "Largest matrix dimension accepted")->capture_default_str();
  app.add_option("--max-monomials", cfg.max_monomials, "Largest estimated dense monomial count accepted");

  std::string rank_file;
  auto* rank = app.add_subcommand("rank", "Exact and randomized symbolic rank of a polynomial matrix");
  rank->add_option("matrix", rank_file, "PolyMatrix JSON file")->required();

  LowerBoundArgs lb;
  auto* lower = app.add_subcommand("lower-bound", "rank(L(f)) / mu_S for a flattening or a linear map");
  lower->add_option("input", lb.input, "Polynomial or Tensor JSON file")->required();
  lower->add_option("--catalecticant", lb.catalecticant, "Catalecticant of order k");
  lower->add_option("--mode", lb.modes, "Mode flattening with row modes S (1-based)")->delimiter(',');
  lower->add_option("--map", lb.map_file, "LinearMap JSON file");
  lower->add_option("--mu-s", lb.mu_s, "Maximum rank on simple elements (default: 1 for flattenings, estimated for maps)");

  BarrierArgs ba;
  auto* barrier = app.add_subcommand("barrier-check", "Test the barrier inequality on random linear maps");
  barrier->add_option("--family", ba.family, "waring or tensor")->capture_default_str();
  barrier->add_option("--n", ba.n)->capture_default_str();
  barrier->add_option("--d", ba.d)->capture_default_str();
  barrier->add_option("--m", ba.m)->capture_default_str();
  barrier->add_option("--maps", ba.maps, "Number of random maps")->capture_default_str();
  barrier->add_option("--density", ba.density, "Nonzero density of map entries")->capture_default_str();
  barrier->add_option("--threads", ba.threads, "Worker threads per map (0: all cores)")->capture_default_str();

  DecomposeArgs da;
  auto* decompose = app.add_subcommand("decompose", "Decompose a homogeneous polynomial matrix into rank-one terms");
  decompose->add_option("matrix", da.input, "PolyMatrix JSON file")->required();
  decompose->add_option("--mode", da.mode, "symbolic, hom or sm")->capture_default_str();
  decompose->add_option("--partition", da.partition_file, "Variable partition JSON (mode sm)");
  decompose->add_option("--blocks", da.blocks, "Uniform partition into B consecutive blocks (mode sm)");
  decompose->add_option("--degree", da.degree, "Common degree of the entries (default: maximum degree)");
  decompose->add_option("--out", da.out_file, "Write the decomposition here and print a summary");

  Depth3Args d3;
  auto* depth3 = app.add_subcommand("depth3", "Depth-3 structures");
  depth3->require_subcommand(1);
  auto* psi = depth3->add_subcommand("psi", "Coordinates of the map psi");
  auto* validate = depth3->add_subcommand("validate", "Check that a matrix has entries in the polarization span");
  for (auto* sub : {psi, validate}) {
    sub->add_option("--n", d3.n)->required();
    sub->add_option("--D", d3.D)->required();
    sub->add_option("--d", d3.d)->required();
  }
  validate->add_option("matrix", d3.input, "PolyMatrix JSON file in the D*n variables y")->required();

  GapArgs ga;
  auto* gap = app.add_subcommand("gap-report", "Barrier values next to known bounds");
  gap->add_option("--n", ga.n, "n or a range LO HI")->expected(1, 2);
  gap->add_option("--d", ga.d, "d or a range LO HI")->expected(1, 2);

  for (auto* sub : {rank, lower, barrier, decompose, depth3, psi, validate, gap}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what(), kInputError);
    return kInputError;
  }

  try {
    if (*rank) return cmd_rank(rank_file, cfg, out);
    if (*lower) return cmd_lower_bound(lb, cfg, out);
    if (*barrier) return cmd_barrier_check(ba, cfg, out);
    if (*decompose) return cmd_decompose(da, cfg, out);
    if (*psi) return cmd_depth3_psi(d3, cfg, out);
    if (*validate) return cmd_depth3_validate(d3, cfg, out);
    if (*gap) return cmd_gap_report(ga, cfg, out);
  } catch (const InputError& e) {
    report_error(err, "input", e.what(), kInputError);
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    report_error(err, "input", e.what(), kInputError);
    return kInputError;
  } catch (const ResourceRefusal& e) {
    report_error(err, "resource", e.what(), kResourceRefusal);
    return kResourceRefusal;
  } catch (const ContractViolation& e) {
    report_error(err, "input", e.what(), kInputError);
    return kInputError;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what(), kInternalError);
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace rankbar::cli
