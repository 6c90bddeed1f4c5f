#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

#include "negdep/audit.hpp"
#include "negdep/bounds.hpp"
#include "negdep/errors.hpp"
#include "negdep/io.hpp"
#include "negdep/kernels.hpp"
#include "negdep/linalg.hpp"
#include "negdep/montecarlo.hpp"
#include "negdep/sampler.hpp"
#include "negdep/statistic.hpp"
#include "negdep/version.hpp"
#include "acceptance.hpp"

namespace fs = std::filesystem;
using namespace negdep;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitHypothesis = 3;

struct CommonOpts {
  std::string dist_file;
  std::vector<std::string> matrix_files;
  std::string tgrid = "0:1:100";
  std::uint64_t n = 100'000;
  std::uint64_t seed = 0;
  double constant_c_big = bounds::kDefaultC;
  double constant_c_small = bounds::kDefaultLittleC;
  bool clamp = false;
  std::string out_dir = "out";
  std::string format = "csv";
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  std::string simd = "auto";
  double alpha = 0.001;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_dist) {
  auto* dist = cmd->add_option("--dist", o.dist_file, "distribution spec file");
  if (needs_dist) dist->required();
  cmd->add_option("--matrix", o.matrix_files, "matrix file (repeatable; files may hold lists)");
  cmd->add_option("--tgrid", o.tgrid, "t grid as min:max:steps")->capture_default_str();
  cmd->add_option("--n", o.n, "Monte Carlo replicates")->capture_default_str();
  cmd->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
  cmd->add_option("--constant-C", o.constant_c_big, "absolute constant C")->capture_default_str();
  cmd->add_option("--constant-c", o.constant_c_small, "absolute constant c")->capture_default_str();
  cmd->add_flag("--clamp", o.clamp, "clamp bounds to 1");
  cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--format", o.format, "csv or structured")
      ->check(CLI::IsMember({"csv", "structured"}))
      ->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker count (speed only)")->capture_default_str();
  cmd->add_option("--simd", o.simd, "kernel backend: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "CI significance level")->capture_default_str();
}

std::vector<double> parse_tgrid(const std::string& text) {
  double lo = 0.0, hi = 0.0;
  int steps = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1 || !(hi > lo))
    throw InputError("--tgrid expects min:max:steps with max > min, steps >= 1");
  return mc::t_grid(lo, hi, steps);
}

// All artifacts land under --out; the run manifest records input digests and
// the full parameter block, which together reproduce every output byte.
class RunContext {
 public:
  RunContext(const std::string& subcommand, const CommonOpts& opts)
      : subcommand_(subcommand), opts_(opts), start_(std::chrono::steady_clock::now()) {
    fs::create_directories(opts.out_dir);
    kernels::Backend requested = kernels::Backend::Auto;
    if (opts.simd == "scalar") requested = kernels::Backend::Scalar;
    if (opts.simd == "avx2") requested = kernels::Backend::Avx2;
    backend_ = kernels::set_backend(requested);
  }

  std::string path(const std::string& name) const { return (fs::path(opts_.out_dir) / name).string(); }

  void note_input(const std::string& file) { inputs_.push_back(file); }
  void note_output(const std::string& file) { outputs_.push_back(file); }
  void set_param(const std::string& key, const std::string& value) { params_[key] = value; }

  std::ofstream open_report(const std::string& name) {
    const std::string p = path(name);
    note_output(p);
    std::ofstream os(p, std::ios::binary);
    if (!os) throw InputError("cannot write " + p);
    os << "# negdep " << subcommand_ << " report\n";
    os << "subcommand=" << subcommand_ << "\n";
    return os;
  }

  std::ofstream open_csv(const std::string& name, const std::string& header) {
    const std::string p = path(name);
    note_output(p);
    std::ofstream os(p, std::ios::binary);
    if (!os) throw InputError("cannot write " + p);
    os << header << "\n";
    return os;
  }

  void write_manifest() {
    std::ofstream os(path("run_manifest.txt"), std::ios::binary);
    os << "tool=negdep\n";
    os << "version=" << kVersion << "\n";
    os << "subcommand=" << subcommand_ << "\n";
    os << "seed=" << opts_.seed << "\n";
    os << "n=" << opts_.n << "\n";
    os << "alpha=" << io::format_double(opts_.alpha) << "\n";
    os << "constant_C=" << io::format_double(opts_.constant_c_big) << "\n";
    os << "constant_c=" << io::format_double(opts_.constant_c_small) << "\n";
    os << "tgrid=" << opts_.tgrid << "\n";
    os << "threads=" << opts_.threads << "\n";
    os << "simd=" << kernels::backend_name(backend_) << "\n";
    os << "format=" << opts_.format << "\n";
    os << "clamp=" << (opts_.clamp ? 1 : 0) << "\n";
    os << "caps.table=" << CubeDistribution::kDefaultCap << "\n";
    os << "caps.audit_one=" << audit::AuditCaps{}.one_sided << "\n";
    os << "caps.audit_two=" << audit::AuditCaps{}.two_sided << "\n";
    for (const auto& [k, v] : params_) os << "param." << k << "=" << v << "\n";
    for (const auto& f : inputs_)
      os << "input." << fs::path(f).filename().string() << ".sha256=" << io::sha256_file_hex(f)
         << "\n";
    for (const auto& f : outputs_)
      os << "output." << fs::path(f).filename().string() << ".sha256=" << io::sha256_file_hex(f)
         << "\n";
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    os << "wall_clock_s=" << io::format_double(wall) << "\n";
  }

  const CommonOpts& opts() const { return opts_; }

 private:
  std::string subcommand_;
  CommonOpts opts_;
  std::chrono::steady_clock::time_point start_;
  kernels::Backend backend_ = kernels::Backend::Scalar;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::map<std::string, std::string> params_;
};

SamplerSpec load_spec(RunContext& ctx, const std::string& file) {
  ctx.note_input(file);
  return io::read_sampler_spec(file);
}

std::vector<RectMatrix> load_matrices(RunContext& ctx) {
  std::vector<RectMatrix> all;
  for (const auto& f : ctx.opts().matrix_files) {
    ctx.note_input(f);
    auto ms = io::read_matrix_list(f);
    all.insert(all.end(), std::make_move_iterator(ms.begin()), std::make_move_iterator(ms.end()));
  }
  if (all.empty()) throw InputError("at least one --matrix file is required");
  return all;
}

std::vector<SymMatrix> as_symmetric(const std::vector<RectMatrix>& ms) {
  std::vector<SymMatrix> out;
  out.reserve(ms.size());
  for (const auto& m : ms) {
    if (m.rows() != m.cols()) throw InputError("expected square matrices");
    out.emplace_back(m);
  }
  return out;
}

void write_tail_rows(RunContext& ctx, const std::string& base, const mc::TailReport& rep,
                     const std::vector<char>* valid, std::ofstream& report) {
  const bool has_bound = !rep.bound.empty();
  auto row = [&](std::size_t i) {
    std::ostringstream os;
    os << io::format_double(rep.t_grid[i]) << "," << io::format_double(rep.estimate[i]) << ","
       << io::format_double(rep.ci_lo[i]) << "," << io::format_double(rep.ci_hi[i]) << ",";
    if (has_bound)
      os << io::format_double(rep.bound[i]) << "," << int(rep.dominated[i]);
    else
      os << ",";
    if (valid) os << "," << int((*valid)[i]);
    return os.str();
  };
  const std::string header = valid ? "t,estimate,ci_lo,ci_hi,bound,dominated,valid"
                                   : "t,estimate,ci_lo,ci_hi,bound,dominated";
  if (ctx.opts().format == "csv") {
    auto csv = ctx.open_csv(base + ".csv", header);
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i) csv << row(i) << "\n";
  } else {
    report << "data.header=" << header << "\n";
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i)
      report << "data.row." << i << "=" << row(i) << "\n";
  }
}

void write_tail_meta(std::ofstream& report, const mc::TailReport& rep) {
  report << "exact=" << (rep.exact ? 1 : 0) << "\n";
  report << "mode=" << (rep.mode == mc::TailMode::Centered ? "centered" : "raw") << "\n";
  if (!rep.exact) {
    report << "n_replicates=" << rep.n_replicates << "\n";
    report << "seed=" << rep.seed << "\n";
    report << "alpha=" << io::format_double(rep.alpha) << "\n";
  }
  report << "center_norm=" << io::format_double(rep.center_norm) << "\n";
  if (rep.mode == mc::TailMode::Centered)
    report << "center_source=" << (rep.center_exact ? "table" : "first_pass_estimate") << "\n";
}

// ---------------------------------------------------------------------------
// audit

int cmd_audit(RunContext& ctx) {
  const auto spec = load_spec(ctx, ctx.opts().dist_file);
  const auto d = build_distribution(spec);
  audit::AuditCaps caps;
  caps.threads = ctx.opts().threads;
  const auto rep = audit::run_audit(d, caps);

  auto os = ctx.open_report("audit_report.txt");
  os << "n=" << d.n() << "\n";
  os << "homogeneous=" << (d.homogeneity() ? 1 : 0) << "\n";
  if (d.homogeneity()) os << "homogeneity_k=" << *d.homogeneity() << "\n";
  auto dump_d = [&](const char* name, const audit::DependenceValue& v, bool sigma) {
    os << name << "=" << io::format_double(v.value) << "\n";
    os << name << "_witness_lambda=" << io::mask_to_string(v.lambda, d.n()) << "\n";
    if (sigma) os << name << "_witness_sigma=" << io::mask_to_string(v.sigma, d.n()) << "\n";
    os << name << "_witness_row=" << v.row << "\n";
  };
  if (rep.one_sided) dump_d("one_sided_D", *rep.one_sided, false);
  if (rep.two_sided) dump_d("two_sided_D", *rep.two_sided, true);
  if (rep.avmax) os << "avmax_pass=" << (rep.avmax->pass ? 1 : 0) << "\n";
  if (rep.na) {
    os << "na_pass=" << (rep.na->pass ? 1 : 0) << "\n";
    if (rep.na->witness) {
      os << "na_witness_block=" << io::mask_to_string(rep.na->witness->block, d.n()) << "\n";
      os << "na_witness_covariance=" << io::format_double(rep.na->witness->covariance) << "\n";
    }
  }
  if (rep.scp) {
    os << "scp_pass=" << (rep.scp->pass ? 1 : 0) << "\n";
    if (rep.scp->witness) {
      const int nl = std::popcount(rep.scp->witness->lambda);
      os << "scp_witness_lambda=" << io::mask_to_string(rep.scp->witness->lambda, d.n()) << "\n";
      os << "scp_witness_x=" << io::mask_to_string(rep.scp->witness->x_pattern, nl) << "\n";
      os << "scp_witness_y=" << io::mask_to_string(rep.scp->witness->y_pattern, nl) << "\n";
    }
  }
  if (rep.rayleigh) {
    os << "rayleigh_pass=" << (rep.rayleigh->pass ? 1 : 0) << "\n";
    os << "rayleigh_points=" << rep.rayleigh->points_checked << "\n";
    if (rep.rayleigh->witness)
      os << "rayleigh_witness_ij=" << rep.rayleigh->witness->i << "," << rep.rayleigh->witness->j
         << "\n";
  }
  for (const auto& [name, ok] : rep.lemma_checks)
    os << "check." << name << "=" << (ok ? 1 : 0) << "\n";
  for (const auto& [name, sec] : rep.runtimes_s)
    os << "runtime_s." << name << "=" << io::format_double(sec) << "\n";
  os.close();  // manifest hashes the outputs
  ctx.write_manifest();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bound

int cmd_bound(RunContext& ctx, const std::string& kind, const std::string& d_source,
              double declared_d, bool centered, const std::string& stat_kind,
              const std::vector<double>& explicit_p) {
  const auto ts = parse_tgrid(ctx.opts().tgrid);
  const double big_c = ctx.opts().constant_c_big;

  // Either a distribution spec (table, marginals, audited D) or an explicit
  // inclusion-probability vector with a declared D.
  std::optional<CubeDistribution> d;
  std::vector<double> p = explicit_p;
  std::optional<int> homogeneity;
  if (!ctx.opts().dist_file.empty()) {
    const auto spec = load_spec(ctx, ctx.opts().dist_file);
    d = build_distribution(spec);
    p = d->inclusion_probabilities();
    homogeneity = d->homogeneity();
  } else if (p.empty()) {
    throw InputError("bound: provide --dist or --p");
  } else if (d_source == "audit") {
    throw InputError("bound: --p requires --D (declared) or --D-source scp");
  }

  auto os = ctx.open_report("bound_report.txt");
  os << "kind=" << kind << "\n";
  int exit_code = kExitOk;

  double big_d = 1.0;
  auto resolve_d = [&]() {
    std::string d_origin;
    if (d_source == "declared") {
      big_d = declared_d;
      d_origin = "declared";
    } else if (d_source == "scp") {
      big_d = 2.0;
      d_origin = "scp_constant";
    } else {
      audit::AuditCaps caps;
      caps.threads = ctx.opts().threads;
      const auto side = homogeneity ? audit::Side::One : audit::Side::Two;
      big_d = audit::ell_inf_D(*d, side, caps).value;
      d_origin = side == audit::Side::One ? "audited_one_sided" : "audited_two_sided";
    }
    os << "D=" << io::format_double(big_d) << "\n";
    os << "D_source=" << d_origin << "\n";
    ctx.set_param("D_source", d_origin);
  };

  std::vector<double> curve(ts.size());
  std::vector<char> valid(ts.size(), 1);

  if (kind == "bernstein" || kind == "psd") {
    const auto a = as_symmetric(load_matrices(ctx));
    if (a.size() != p.size())
      throw InputError("bound: need one coefficient matrix per coordinate");
    resolve_d();
    if (kind == "bernstein") {
      const auto params = bounds::bernstein_params(p, a, centered, homogeneity, big_d, big_c);
      os << "sigma2=" << io::format_double(params.sigma2) << "\n";
      os << "R=" << io::format_double(params.r) << "\n";
      os << "dim=" << params.dim << "\n";
      os << "centered=" << (centered ? 1 : 0) << "\n";
      for (std::size_t i = 0; i < ts.size(); ++i)
        curve[i] = bounds::bernstein_tail(ts[i], params, ctx.opts().clamp);
    } else {
      // PSD hypothesis violation is a scientific result: partial outputs,
      // exit 3.
      bool all_psd = true;
      for (const auto& m : a)
        all_psd = all_psd && psd_leq(SymMatrix(m.dim()), m, kDefaultPsdTol).holds;
      os << "all_psd=" << (all_psd ? 1 : 0) << "\n";
      if (!all_psd) exit_code = kExitHypothesis;
      SymMatrix ez(a.front().dim());
      double r = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        SymMatrix term = a[i];
        term *= p[i];
        ez += term;
        r = std::max(r, spectral_norm(a[i]));
      }
      const double ez_norm = spectral_norm(ez);
      os << "EZ_norm=" << io::format_double(ez_norm) << "\n";
      os << "R=" << io::format_double(r) << "\n";
      for (std::size_t i = 0; i < ts.size(); ++i) {
        curve[i] = bounds::psd_tail(ts[i], ez_norm, r, big_d, a.front().dim(), big_c);
        if (ctx.opts().clamp) curve[i] = std::min(1.0, curve[i]);
      }
    }
  } else if (kind == "lipschitz") {
    const auto c = as_symmetric(load_matrices(ctx));
    const auto a = stat_kind == "chain" ? bounds::chain_increment_coefficients(c)
                                        : bounds::linear_increment_coefficients(c);
    const auto f = stat_kind == "chain" ? bounds::chain_statistic_table(c)
                                        : bounds::linear_statistic_table(c);
    if (f.n != static_cast<int>(p.size()))
      throw InputError("bound: statistic does not match the distribution size");
    const auto inc = bounds::increment_domination_check(f, a);
    os << "increment_check=" << (inc.pass ? 1 : 0) << "\n";
    if (!inc.pass) exit_code = kExitHypothesis;
    const auto params = bounds::bernstein_params(p, a, false, std::nullopt, 1.0, big_c);
    os << "sigma2=" << io::format_double(params.sigma2) << "\n";
    os << "R=" << io::format_double(params.r) << "\n";
    os << "dim=" << params.dim << "\n";
    os << "stat=" << stat_kind << "\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      curve[i] = bounds::lipschitz_tail(ts[i], params.sigma2, params.r, params.dim, big_c);
      if (ctx.opts().clamp) curve[i] = std::min(1.0, curve[i]);
    }
  } else {  // submatrix
    const auto ms = load_matrices(ctx);
    if (ms.size() != 1) throw InputError("bound --kind submatrix expects exactly one matrix (H)");
    const SymMatrix h(ms.front());
    const auto params = bounds::submatrix_params(h, p, big_c, ctx.opts().constant_c_small);
    os << "norm_php=" << io::format_double(params.nphp) << "\n";
    os << "norm_l1_l2=" << io::format_double(params.n12) << "\n";
    os << "norm_l2_linf=" << io::format_double(params.n2inf) << "\n";
    os << "norm_l1_linf=" << io::format_double(params.n1inf) << "\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto bt = bounds::submatrix_tail(ts[i], params, h.dim());
      curve[i] = ctx.opts().clamp ? std::min(1.0, bt.bound) : bt.bound;
      valid[i] = bt.valid ? 1 : 0;
    }
  }

  os << "C=" << io::format_double(big_c) << "\n";
  os << "c=" << io::format_double(ctx.opts().constant_c_small) << "\n";
  if (ctx.opts().format == "csv") {
    auto csv = ctx.open_csv("bound_data.csv", "t,bound,validity_flag");
    for (std::size_t i = 0; i < ts.size(); ++i)
      csv << io::format_double(ts[i]) << "," << io::format_double(curve[i]) << ","
          << int(valid[i]) << "\n";
  } else {
    os << "data.header=t,bound,validity_flag\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
      os << "data.row." << i << "=" << io::format_double(ts[i]) << ","
         << io::format_double(curve[i]) << "," << int(valid[i]) << "\n";
  }
  os.close();  // manifest hashes the outputs
  ctx.write_manifest();
  return exit_code;
}

// ---------------------------------------------------------------------------
// tail

int cmd_tail(RunContext& ctx, const std::string& stat_kind, const std::string& mode_name,
             bool exact) {
  const auto ts = parse_tgrid(ctx.opts().tgrid);
  const auto spec = load_spec(ctx, ctx.opts().dist_file);
  const mc::TailMode mode = mode_name == "raw" ? mc::TailMode::Raw : mc::TailMode::Centered;

  StatisticSpec stat = [&]() -> StatisticSpec {
    if (stat_kind == "submatrix") {
      const auto ms = load_matrices(ctx);
      if (ms.size() != 1) throw InputError("tail --stat submatrix expects exactly one matrix (H)");
      return StatisticSpec{SubmatrixStatistic{SymMatrix(ms.front())}};
    }
    const auto c = as_symmetric(load_matrices(ctx));
    if (stat_kind == "chain") return StatisticSpec{bounds::chain_statistic_table(c)};
    return StatisticSpec{LinearStatistic{c}};
  }();

  mc::RunConfig cfg;
  cfg.n = ctx.opts().n;
  cfg.seed = ctx.opts().seed;
  cfg.alpha = ctx.opts().alpha;
  cfg.threads = ctx.opts().threads;

  mc::TailReport rep = exact
                           ? mc::exact_tail(build_distribution(spec), stat, ts, mode, cfg.threads)
                           : mc::mc_tail(spec, stat, ts, cfg, mode);

  // Domination pipeline: a linear statistic whose table fits under the caps
  // gets the Bernstein curve with the audited D attached.
  std::string bound_note = "none";
  if (std::holds_alternative<LinearStatistic>(stat) &&
      scheme_coords(spec) <= audit::AuditCaps{}.two_sided) {
    const auto d = build_distribution(spec);
    const auto side = d.homogeneity() ? audit::Side::One : audit::Side::Two;
    const double big_d = audit::ell_inf_D(d, side).value;
    auto params = bounds::bernstein_params(d.inclusion_probabilities(),
                                           std::get<LinearStatistic>(stat).coeffs, false,
                                           std::nullopt, big_d, ctx.opts().constant_c_big);
    const bool clamp = ctx.opts().clamp;
    mc::attach_bound(rep, [&](double t) { return bounds::bernstein_tail(t, params, clamp); });
    bound_note = d.homogeneity() ? "bernstein_audited_one_sided" : "bernstein_audited_two_sided";
  }

  auto os = ctx.open_report("tail_report.txt");
  write_tail_meta(os, rep);
  os << "stat=" << stat_kind << "\n";
  os << "bound=" << bound_note << "\n";
  write_tail_rows(ctx, "tail_data", rep, nullptr, os);
  os.close();  // manifest hashes the outputs
  ctx.write_manifest();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// decouple

int cmd_decouple(RunContext& ctx, const std::string& coeff_kind) {
  const auto ts = parse_tgrid(ctx.opts().tgrid);
  const auto spec = load_spec(ctx, ctx.opts().dist_file);
  const auto d = build_distribution(spec);
  const auto ms = load_matrices(ctx);
  if (ms.size() != 1) throw InputError("decouple expects exactly one coefficient matrix file");

  mc::DecouplingCoeffs coeffs = coeff_kind == "scalar"
                                    ? mc::scalar_coeffs(ms.front())
                                    : mc::submatrix_coeffs(SymMatrix(ms.front()));

  mc::RunConfig cfg;
  cfg.n = ctx.opts().n;
  cfg.seed = ctx.opts().seed;
  cfg.alpha = ctx.opts().alpha;
  cfg.threads = ctx.opts().threads;

  const auto rep = mc::decoupling_check(d, coeffs, ts, cfg);
  if (!rep.homogeneous)
    std::cerr << "warning: distribution is not k-homogeneous; the conditioning identity "
                 "is expected to fail\n";

  auto os = ctx.open_report("decouple_report.txt");
  os << "coeff_kind=" << coeff_kind << "\n";
  os << "homogeneous=" << (rep.homogeneous ? 1 : 0) << "\n";
  os << "monotone_checked=" << (rep.monotone_checked ? 1 : 0) << "\n";
  os << "monotone=" << (rep.monotone ? 1 : 0) << "\n";
  if (rep.monotone_witness) {
    os << "monotone_witness_x=" << io::mask_to_string(rep.monotone_witness->x, d.n()) << "\n";
    os << "monotone_witness_y=" << io::mask_to_string(rep.monotone_witness->y, d.n()) << "\n";
    os << "monotone_witness_coord=" << rep.monotone_witness->coord << "\n";
    os << "monotone_witness_side=" << (rep.monotone_witness->in_x ? "x" : "y") << "\n";
  }
  os << "identity_quarter_pass=" << (rep.identity_quarter_pass ? 1 : 0) << "\n";
  os << "identity_quarter_dev=" << io::format_double(rep.identity_quarter_dev) << "\n";
  os << "identity_conditioning_pass=" << (rep.identity_conditioning_pass ? 1 : 0) << "\n";
  os << "identity_conditioning_dev=" << io::format_double(rep.identity_conditioning_dev) << "\n";
  for (std::size_t i = 0; i < rep.c0_grid.size(); ++i)
    os << "c0_ok." << io::format_double(rep.c0_grid[i]) << "=" << int(rep.c0_ok[i]) << "\n";
  os << "smallest_c0=" << (rep.smallest_c0 ? io::format_double(*rep.smallest_c0) : "none") << "\n";
  write_tail_rows(ctx, "decouple_coupled", rep.coupled, nullptr, os);
  write_tail_rows(ctx, "decouple_decoupled", rep.decoupled, nullptr, os);
  os.close();  // manifest hashes the outputs
  ctx.write_manifest();
  return rep.monotone ? kExitOk : kExitHypothesis;
}

// ---------------------------------------------------------------------------
// submatrix

int cmd_submatrix(RunContext& ctx) {
  const auto ts = parse_tgrid(ctx.opts().tgrid);
  const auto spec = load_spec(ctx, ctx.opts().dist_file);
  const auto ms = load_matrices(ctx);
  if (ms.size() != 1) throw InputError("submatrix expects exactly one matrix (H)");
  const SymMatrix h(ms.front());

  mc::RunConfig cfg;
  cfg.n = ctx.opts().n;
  cfg.seed = ctx.opts().seed;
  cfg.alpha = ctx.opts().alpha;
  cfg.threads = ctx.opts().threads;

  const auto rep = mc::submatrix_experiment(h, spec, ts, cfg, ctx.opts().constant_c_big,
                                            ctx.opts().constant_c_small);

  auto os = ctx.open_report("submatrix_report.txt");
  write_tail_meta(os, rep.tail);
  os << "norm_php=" << io::format_double(rep.params.nphp) << "\n";
  os << "norm_l1_l2=" << io::format_double(rep.params.n12) << "\n";
  os << "norm_l2_linf=" << io::format_double(rep.params.n2inf) << "\n";
  os << "norm_l1_linf=" << io::format_double(rep.params.n1inf) << "\n";
  os << "exact_inclusion=" << (rep.exact_inclusion ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < rep.inclusion.size(); ++i)
    os << "p." << i << "=" << io::format_double(rep.inclusion[i]) << "\n";
  write_tail_rows(ctx, "submatrix_data", rep.tail, &rep.valid, os);
  os.close();  // manifest hashes the outputs
  ctx.write_manifest();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(RunContext& ctx, const std::string& table_out) {
  const auto spec = load_spec(ctx, ctx.opts().dist_file);
  validate_spec(spec);
  const int n = scheme_coords(spec);

  auto os = ctx.open_report("sample_report.txt");
  os << "n=" << n << "\n";
  os << "draws=" << ctx.opts().n << "\n";
  os << "seed=" << ctx.opts().seed << "\n";

  auto csv = ctx.open_csv("samples.csv", "draw,bitmask");
  for (std::uint64_t i = 0; i < ctx.opts().n; ++i) {
    RngStream rng(ctx.opts().seed, i);
    csv << i << "," << io::mask_to_string(sample(spec, rng), n) << "\n";
  }
  if (!table_out.empty()) {
    const auto d = build_distribution(spec);
    const std::string p = ctx.path(table_out);
    io::write_table_csv(p, d);
    ctx.note_output(p);
    os << "table=" << table_out << "\n";
  }
  csv.close();
  os.close();  // manifest hashes the outputs
  ctx.write_manifest();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"negative-dependence matrix concentration toolkit"};
  app.require_subcommand(1);

  CommonOpts audit_opts, bound_opts, tail_opts, dec_opts, sub_opts, sample_opts, self_opts;

  auto* c_audit = app.add_subcommand("audit", "dependence audit of a distribution");
  add_common(c_audit, audit_opts, true);

  auto* c_bound = app.add_subcommand("bound", "evaluate a tail bound over a t grid");
  add_common(c_bound, bound_opts, false);
  std::string bound_kind = "bernstein", d_source = "audit", bound_stat = "linear";
  std::vector<double> explicit_p;
  double declared_d = 1.0;
  bool centered = false;
  c_bound->add_option("--p", explicit_p, "explicit inclusion probabilities (alternative to --dist)")
      ->delimiter(',');
  c_bound->add_option("--kind", bound_kind, "bernstein, psd, lipschitz, submatrix")
      ->check(CLI::IsMember({"bernstein", "psd", "lipschitz", "submatrix"}))
      ->capture_default_str();
  c_bound->add_option("--D", declared_d, "declared dependence parameter (implies --D-source declared)");
  c_bound->add_option("--D-source", d_source, "audit, declared, scp")
      ->check(CLI::IsMember({"audit", "declared", "scp"}))
      ->capture_default_str();
  c_bound->add_flag("--centered", centered, "centered variance proxy (homogeneous input)");
  c_bound->add_option("--stat", bound_stat, "lipschitz statistic: linear or chain")
      ->check(CLI::IsMember({"linear", "chain"}))
      ->capture_default_str();

  auto* c_tail = app.add_subcommand("tail", "exact or Monte Carlo tail of a statistic");
  add_common(c_tail, tail_opts, true);
  std::string tail_stat = "linear", tail_mode = "centered";
  bool tail_exact = false;
  c_tail->add_option("--stat", tail_stat, "linear, chain, submatrix")
      ->check(CLI::IsMember({"linear", "chain", "submatrix"}))
      ->capture_default_str();
  c_tail->add_option("--mode", tail_mode, "centered or raw")
      ->check(CLI::IsMember({"centered", "raw"}))
      ->capture_default_str();
  c_tail->add_flag("--exact", tail_exact, "full enumeration instead of sampling");

  auto* c_dec = app.add_subcommand("decouple", "decoupling identities and measured constant");
  add_common(c_dec, dec_opts, true);
  std::string coeff_kind = "submatrix";
  c_dec->add_option("--coeff-kind", coeff_kind, "submatrix or scalar")
      ->check(CLI::IsMember({"submatrix", "scalar"}))
      ->capture_default_str();

  auto* c_sub = app.add_subcommand("submatrix", "random submatrix norm experiment");
  add_common(c_sub, sub_opts, true);

  auto* c_sample = app.add_subcommand("sample", "draw samples from a scheme");
  add_common(c_sample, sample_opts, true);
  std::string table_out;
  c_sample->add_option("--table-out", table_out, "also export the exact table CSV (n <= cap)");

  auto* c_self = app.add_subcommand("selftest", "run the full acceptance suite");
  add_common(c_self, self_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (c_audit->parsed()) {
      RunContext ctx("audit", audit_opts);
      return cmd_audit(ctx);
    }
    if (c_bound->parsed()) {
      if (c_bound->count("--D") && !c_bound->count("--D-source")) d_source = "declared";
      RunContext ctx("bound", bound_opts);
      return cmd_bound(ctx, bound_kind, d_source, declared_d, centered, bound_stat, explicit_p);
    }
    if (c_tail->parsed()) {
      RunContext ctx("tail", tail_opts);
      return cmd_tail(ctx, tail_stat, tail_mode, tail_exact);
    }
    if (c_dec->parsed()) {
      RunContext ctx("decouple", dec_opts);
      return cmd_decouple(ctx, coeff_kind);
    }
    if (c_sub->parsed()) {
      RunContext ctx("submatrix", sub_opts);
      return cmd_submatrix(ctx);
    }
    if (c_sample->parsed()) {
      RunContext ctx("sample", sample_opts);
      return cmd_sample(ctx, table_out);
    }
    if (c_self->parsed()) {
      RunContext ctx("selftest", self_opts);
      const int failures = negdep::acceptance::run_and_print(argv[0], ctx.path("acceptance"));
      ctx.write_manifest();
      return failures == 0 ? kExitOk : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const RangeError& e) {
    std::cerr << "numeric range error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
