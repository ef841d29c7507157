#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmtgap/asymptotics.hpp"
#include "rmtgap/gap.hpp"
#include "rmtgap/marginals.hpp"
#include "rmtgap/mc.hpp"
#include "rmtgap/quadrature.hpp"

using namespace rmtgap;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitPrecision = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Job {
  std::string ensemble = "goe";
  int n = 0;
  std::string a;
  std::string s;
  std::string s_grid;
  std::string scaled_s;
  int k = 0;
  int digits = 16;
  int bits = 0;
  int max_escalations = 3;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 1;
  long samples = 1000000;
  int jobs = 1;
  // Subcommand-specific.
  std::string centering;
  std::vector<int> offsets;
  int root = 1;
  std::string table;
  bool extended = false;
};

struct Output {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  int bits_used = 0;
  std::string residual = "n/a";
};

int g_digits = 16;

std::string num(const Real& x) { return x.to_string(g_digits); }

std::string num(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(std::min(g_digits, 17)) << x;
  return os.str();
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

EnsembleSpec spec_of(const Job& job) {
  if (job.n < 1) throw UsageError("--n must be a positive integer");
  if (job.ensemble == "goe") {
    if (!job.a.empty()) throw UsageError("--a applies to the LOE only");
    return EnsembleSpec::goe(job.n);
  }
  if (job.ensemble == "loe") {
    if (job.a.empty()) throw UsageError("the LOE requires --a");
    char* end = nullptr;
    double a = std::strtod(job.a.c_str(), &end);
    if (end == job.a.c_str() || *end != '\0' || !(a > -1.0))
      throw UsageError("--a must be a number greater than -1");
    return EnsembleSpec::loe(job.n, a);
  }
  throw UsageError("--ensemble must be goe or loe");
}

PrecisionContext context_of(const Job& job, const EnsembleSpec& spec) {
  PrecisionContext ctx = PrecisionContext::for_size(spec.N, job.digits);
  if (job.bits > 0) ctx.bits = job.bits;
  ctx.max_escalations = job.max_escalations;
  ctx.workers = job.jobs;
  ctx.validate();
  return ctx;
}

Real parse_real(const std::string& text, const char* flag) {
  try {
    return Real(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + " expects a decimal number, got '" + text + "'");
  }
}

// Thresholds from --s, --scaled-s or --s-grid (at most one is accepted by the parser).
std::vector<Real> thresholds(const Job& job, const EnsembleSpec& spec, bool allow_auto = false) {
  if (!job.s.empty()) {
    if (job.s == "auto") {
      if (!allow_auto) throw UsageError("--s auto is only accepted by mc-validate");
      return {spec.is_goe() ? Real(0) : Real(spec.N)};
    }
    return {parse_real(job.s, "--s")};
  }
  if (!job.scaled_s.empty()) {
    if (!spec.is_loe()) throw UsageError("--scaled-s applies to the LOE only");
    return {Real(spec.N) * parse_real(job.scaled_s, "--scaled-s")};
  }
  if (!job.s_grid.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(job.s_grid);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("--s-grid expects lo:hi:steps");
    Real lo = parse_real(parts[0], "--s-grid");
    Real hi = parse_real(parts[1], "--s-grid");
    char* end = nullptr;
    long steps = std::strtol(parts[2].c_str(), &end, 10);
    if (*end != '\0' || steps < 1 || steps > 100000) throw UsageError("--s-grid steps must be in 1..100000");
    if (!(hi > lo)) throw UsageError("--s-grid needs lo < hi");
    return uniform_grid(lo, hi, static_cast<int>(steps));
  }
  throw UsageError("a threshold is required: --s, --scaled-s or --s-grid");
}

void require_k(const Job& job, const EnsembleSpec& spec) {
  if (job.k < 1 || job.k > spec.N) throw UsageError("--k must lie in 1..N");
}

void take_diagnostics(Output& out) {
  GapDiagnostics d = gap_diagnostics();
  if (d.calls == 0) return;
  out.bits_used = std::max(out.bits_used, d.max_bits);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", d.max_residual);
  out.residual = buf;
  out.meta.emplace_back("escalations", std::to_string(d.escalations));
}

// ---- subcommands ----

Output gap_probs(const Job& job) {
  EnsembleSpec spec = spec_of(job);
  PrecisionContext ctx = context_of(job, spec);
  PrecisionGuard guard(ctx.bits);
  Output out;
  out.columns = {"s", "k", "E"};
  for (const Real& s : thresholds(job, spec)) {
    GapDistribution d = gap_distribution(spec, s, ctx);
    for (int k = 0; k <= spec.N; ++k) out.rows.push_back({num(s), std::to_string(k), num(d.E[k])});
  }
  return out;
}

Output marginal(const Job& job, bool density) {
  EnsembleSpec spec = spec_of(job);
  require_k(job, spec);
  PrecisionContext ctx = context_of(job, spec);
  PrecisionGuard guard(ctx.bits);
  std::vector<Real> grid = thresholds(job, spec);
  Output out;
  if (!density) {
    out.columns = {"s", "F"};
    std::vector<Real> F = marginal_cdf(spec, job.k, grid, ctx);
    for (std::size_t i = 0; i < grid.size(); ++i) out.rows.push_back({num(grid[i]), num(F[i])});
    return out;
  }
  out.columns = {"s", "F", "f"};
  MarginalGrid g = grid.size() > 1 ? marginal_pdf(spec, job.k, grid, ctx) : MarginalGrid{};
  if (grid.size() == 1) {
    g.s = grid;
    g.F = marginal_cdf(spec, job.k, grid, ctx);
    g.f = {marginal_pdf_at(spec, job.k, grid[0], Real(1), ctx)};
  }
  for (std::size_t i = 0; i < g.s.size(); ++i) out.rows.push_back({num(g.s[i]), num(g.F[i]), num(g.f[i])});
  return out;
}

void cumulant_rows(Output& out, const std::vector<CumulantSummary>& rows) {
  for (const CumulantSummary& c : rows)
    out.rows.push_back({std::to_string(c.spec.N), std::to_string(c.k), num(c.mu), num(c.sigma),
                        num(c.gamma[0]), num(c.gamma[1]), num(c.gamma[2]), num(c.gamma[3])});
}

Output cumulants_cmd(const Job& job) {
  EnsembleSpec spec = spec_of(job);
  PrecisionContext ctx = context_of(job, spec);
  PrecisionGuard guard(ctx.bits);
  Output out;
  out.columns = {"N", "k", "mu", "sigma", "gamma1", "gamma2", "gamma3", "gamma4"};
  if (job.k != 0) {
    require_k(job, spec);
    cumulant_rows(out, {cumulants(spec, job.k, ctx)});
  } else {
    cumulant_rows(out, cumulant_table(spec, ctx));
  }
  return out;
}

Output counting(const Job& job) {
  EnsembleSpec spec = spec_of(job);
  PrecisionContext ctx = context_of(job, spec);
  PrecisionGuard guard(ctx.bits);
  Output out;
  out.columns = {"N", "s", "mean", "variance"};
  for (const Real& s : thresholds(job, spec)) {
    CountingStats c = counting_stats(spec, s, ctx);
    out.rows.push_back({std::to_string(spec.N), num(s), num(c.mean), num(c.variance)});
  }
  return out;
}

Centering centering_of(const Job& job, const EnsembleSpec& spec) {
  if (job.centering.empty()) return spec.is_goe() ? Centering::HalfN : Centering::FloorMean;
  if (job.centering == "half-n") return Centering::HalfN;
  if (job.centering == "floor-mean") return Centering::FloorMean;
  if (job.centering == "mean") return Centering::Mean;
  throw UsageError("--centering must be half-n, floor-mean or mean");
}

void local_clt_rows(Output& out, const LocalCltTable& t) {
  for (const LocalCltRow& r : t.rows)
    out.rows.push_back({std::to_string(t.stats.spec.N), std::to_string(r.k), num(r.p_exact),
                        num(r.p_approx), num(r.delta)});
}

Output local_clt(const Job& job) {
  EnsembleSpec spec = spec_of(job);
  PrecisionContext ctx = context_of(job, spec);
  PrecisionGuard guard(ctx.bits);
  std::vector<Real> s = thresholds(job, spec);
  if (s.size() != 1) throw UsageError("local-clt takes a single threshold");
  std::vector<int> offsets = job.offsets.empty() ? std::vector<int>{0, 1, 2, 3} : job.offsets;
  LocalCltTable t = local_clt_table(spec, s[0], offsets, centering_of(job, spec), ctx);
  Output out;
  out.meta = {{"s", num(s[0])}, {"center", std::to_string(t.center)},
              {"mean", num(t.stats.mean)}, {"variance", num(t.stats.variance)}};
  out.columns = {"N", "k", "p_exact", "p_approx", "delta"};
  local_clt_rows(out, t);
  return out;
}

void large_dev_row(Output& out, const LargeDeviationRow& r) {
  out.bits_used = std::max(out.bits_used, r.bits_used);
  out.rows.push_back({std::to_string(r.N), num(r.exact), num(r.predicted), num(r.delta)});
}

Output large_dev(const Job& job) {
  if (job.ensemble != "goe") throw UsageError("large-dev applies to the GOE only");
  EnsembleSpec spec = spec_of(job);
  PrecisionContext ctx = context_of(job, spec);
  PrecisionGuard guard(ctx.bits);
  Output out;
  out.columns = {"N", "log_E0", "predicted", "delta"};
  large_dev_row(out, large_deviation_check(spec.N, ctx));
  return out;
}

Output bulk_probe(const Job& job) {
  if (job.ensemble != "goe") throw UsageError("bulk-probe applies to the GOE only");
  EnsembleSpec spec = spec_of(job);
  if (spec.N < 3 || spec.N % 2 == 0) throw UsageError("bulk-probe needs odd --n >= 3");
  PrecisionContext ctx = context_of(job, spec);
  PrecisionGuard guard(ctx.bits);
  Job j = job;
  if (j.s.empty() && j.s_grid.empty()) j.s_grid = "-3:3:12";
  BulkProbe p = bulk_probe_goe(spec.N, thresholds(j, spec), ctx);
  Output out;
  out.meta = {{"k", std::to_string(p.k)}, {"scale", num(p.scale)}, {"c", num(p.c)}};
  out.columns = {"X", "density", "gaussian", "difference", "shape"};
  for (std::size_t i = 0; i < p.X.size(); ++i)
    out.rows.push_back({num(p.X[i]), num(p.density[i]), num(p.gaussian[i]), num(p.difference[i]),
                        num(p.shape[i])});
  return out;
}

Output bulk_law(const Job& job) {
  Job j = job;
  if (j.ensemble != "loe") throw UsageError("bulk-law-loe needs --ensemble loe");
  EnsembleSpec spec = spec_of(j);
  require_k(j, spec);
  if (j.s.empty() && j.s_grid.empty()) j.s_grid = "-4:4:16";
  PrecisionContext ctx = context_of(j, spec);
  PrecisionGuard guard(ctx.bits);
  BulkLawReport r = bulk_law_loe(spec.N, spec.a, j.k, thresholds(j, spec), ctx);
  Output out;
  out.meta = {{"l", std::to_string(r.l)},         {"mean", num(r.mean)},
              {"sd", num(r.sd)},                  {"gamma_l", num(r.gamma_l)},
              {"max_deviation", num(r.max_deviation)}};
  out.columns = {"z", "density", "normal"};
  for (std::size_t i = 0; i < r.z.size(); ++i) {
    Real normal = exp(-r.z[i] * r.z[i] / Real(2)) / sqrt(Real(2) * pi());
    out.rows.push_back({num(r.z[i]), num(r.density[i]), num(normal)});
  }
  return out;
}

Output interlace(const Job& job) {
  EnsembleSpec spec = spec_of(job);
  PrecisionContext ctx = context_of(job, spec);
  PrecisionGuard guard(ctx.bits);
  InterlacingReport r = interlacing_report(spec, ctx);
  Output out;
  out.meta = {{"checked", std::to_string(r.checked)}, {"chain", yes_no(r.chain)},
              {"partial_sums", yes_no(r.partial_sums)}};
  out.columns = {"k", "mean", "zero"};
  for (int k = 0; k < spec.N; ++k)
    out.rows.push_back({std::to_string(k + 1), num(r.means[k]), num(r.zeros[k])});
  return out;
}

Output trace_xi(const Job& job) {
  EnsembleSpec spec = spec_of(job);
  if (job.s_grid.empty()) throw UsageError("trace-xi needs --s-grid");
  if (job.root < 0 || job.root > spec.N) throw UsageError("--root must lie in 0..N");
  PrecisionContext ctx = context_of(job, spec);
  PrecisionGuard guard(ctx.bits);
  std::vector<Real> grid = thresholds(job, spec);
  Real angle = Real(2) * pi() * Real(job.root) / Real(spec.N + 1);
  Complex zeta(cos(angle), sin(angle));
  auto pts = trace_xi_curve(spec, zeta, grid.front(), grid.back(), static_cast<int>(grid.size()) - 1, ctx);
  Output out;
  out.bits_used = ctx.bits;
  out.meta = {{"root", std::to_string(job.root)}};
  out.columns = {"s", "xi_re", "xi_im", "xi_squared_re", "xi_squared_im"};
  for (const auto& p : pts)
    out.rows.push_back({num(p.s), num(p.xi.re), num(p.xi.im), num(p.xi_squared.re), num(p.xi_squared.im)});
  return out;
}

Output mc_validate(const Job& job) {
  EnsembleSpec spec = spec_of(job);
  PrecisionContext ctx = context_of(job, spec);
  PrecisionGuard guard(ctx.bits);
  Job j = job;
  if (j.s.empty() && j.s_grid.empty() && j.scaled_s.empty()) j.s = "auto";
  std::vector<Real> s = thresholds(j, spec, true);
  if (s.size() != 1) throw UsageError("mc-validate takes a single threshold");
  if (job.samples < 1) throw UsageError("--samples must be positive");
  GapDistribution d = gap_distribution(spec, s[0], ctx);
  SamplerConfig cfg{spec, job.samples, job.seed, job.jobs};
  EmpiricalGap g = empirical_gap_distribution(cfg, s[0].to_double());
  Output out;
  out.columns = {"k", "exact", "empirical", "standard_error", "z"};
  const double M = static_cast<double>(job.samples);
  double max_z = 0;
  for (int k = 0; k <= spec.N; ++k) {
    double p = d.E[k].to_double();
    double se = std::max(std::sqrt(p * (1 - p) / M), 1.0 / M);
    double z = std::abs(g.frequency[k] - p) / se;
    max_z = std::max(max_z, z);
    out.rows.push_back({std::to_string(k), num(d.E[k]), num(g.frequency[k]), num(se), num(z)});
  }
  out.meta = {{"s", num(s[0])}, {"max_z", num(max_z)}, {"all_within_3_sigma", yes_no(max_z <= 3.0)}};
  return out;
}

// ---- repro ----

PrecisionContext repro_context(const Job& job, int N) {
  PrecisionContext ctx = PrecisionContext::for_size(N, job.digits);
  if (job.bits > 0) ctx.bits = job.bits;
  ctx.max_escalations = job.max_escalations;
  ctx.workers = job.jobs;
  return ctx;
}

Output repro(const Job& job) {
  const std::string& t = job.table;
  Output out;
  out.meta = {{"table", t}};
  if (t == "table1") {
    out.columns = {"N", "variance"};
    std::vector<int> Ns = {10, 20, 30, 40, 50};
    if (job.extended) Ns.insert(Ns.end(), {60, 70, 80, 90, 100});
    for (int N : Ns) {
      PrecisionContext ctx = repro_context(job, N);
      PrecisionGuard guard(ctx.bits);
      CountingStats c = counting_stats(EnsembleSpec::goe(N), Real(0), ctx);
      out.rows.push_back({std::to_string(N), num(c.variance)});
    }
  } else if (t == "table2" || t == "table6") {
    const bool goe = t == "table2";
    out.columns = {"N", "k", "p_exact", "p_approx", "delta"};
    for (int N : goe ? std::vector<int>{70, 100} : std::vector<int>{60, 90}) {
      PrecisionContext ctx = repro_context(job, N);
      PrecisionGuard guard(ctx.bits);
      EnsembleSpec spec = goe ? EnsembleSpec::goe(N) : EnsembleSpec::loe(N, 1.0);
      local_clt_rows(out, local_clt_table(spec, goe ? Real(0) : Real(N), {0, 1, 2, 3},
                                          goe ? Centering::HalfN : Centering::FloorMean, ctx));
    }
  } else if (t == "table3") {
    out.columns = {"N", "log_E0", "predicted", "delta"};
    for (int N : {10, 20, 30}) {
      PrecisionContext ctx = repro_context(job, N);
      PrecisionGuard guard(ctx.bits);
      large_dev_row(out, large_deviation_check(N, ctx));
    }
  } else if (t == "table4" || t == "table5") {
    const bool means = t == "table4";
    out.columns = means ? std::vector<std::string>{"N", "mean", "N_mu_tilde"}
                        : std::vector<std::string>{"N", "variance", "delta"};
    std::vector<int> Ns = {20, 40};
    if (job.extended) Ns.insert(Ns.end(), {60, 80});
    for (int N : Ns) {
      PrecisionContext ctx = repro_context(job, N);
      PrecisionGuard guard(ctx.bits);
      CountingStats c = counting_stats(EnsembleSpec::loe(N, 1.0), Real(N), ctx);
      if (means) {
        out.rows.push_back({std::to_string(N), num(c.mean), num(Real(N) * MPLaw{}.tail_mass(Real(1)))});
      } else {
        Real delta = c.variance - log(Real(N)) / (pi() * pi());
        out.rows.push_back({std::to_string(N), num(c.variance), num(delta)});
      }
    }
  } else if (t == "table7") {
    out.columns = {"a", "N", "k", "mean"};
    for (double a : {4.0, 3.5}) {
      for (int N = 2; N <= 6; ++N) {
        PrecisionContext ctx = repro_context(job, N);
        PrecisionGuard guard(ctx.bits);
        for (const CumulantSummary& c : cumulant_table(EnsembleSpec::loe(N, a), ctx))
          out.rows.push_back({num(a), std::to_string(N), std::to_string(c.k), num(c.mu)});
      }
    }
  } else if (t == "appendix") {
    out.columns = {"N", "k", "mu", "sigma", "gamma1", "gamma2", "gamma3", "gamma4"};
    for (int N = 8; N <= 12; ++N) {
      PrecisionContext ctx = repro_context(job, N);
      PrecisionGuard guard(ctx.bits);
      std::vector<CumulantSummary> rows = cumulant_table(EnsembleSpec::goe(N), ctx);
      rows.resize((N + 1) / 2);
      cumulant_rows(out, rows);
    }
  } else {
    throw UsageError("unknown table '" + t + "' (table1..table7, appendix)");
  }
  return out;
}

// ---- output ----

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render(const Output& out, const std::string& subcommand,
                   const std::vector<std::pair<std::string, std::string>>& flags,
                   const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    Json j;
    j["tool"] = "rmtgap";
    j["version"] = RMTGAP_VERSION;
    j["subcommand"] = subcommand;
    Json f = Json::object();
    for (const auto& [k, v] : flags) f[k] = v;
    j["flags"] = f;
    j["bits_used"] = std::to_string(out.bits_used);
    j["residual"] = out.residual;
    Json m = Json::object();
    for (const auto& [k, v] : out.meta) m[k] = v;
    j["meta"] = m;
    j["columns"] = out.columns;
    Json rows = Json::array();
    for (const auto& r : out.rows) {
      Json row = Json::object();
      for (std::size_t i = 0; i < r.size(); ++i) row[out.columns[i]] = r[i];
      rows.push_back(row);
    }
    j["rows"] = rows;
    os << j.dump(2) << "\n";
    return os.str();
  }
  os << "# tool: rmtgap " << RMTGAP_VERSION << "\n";
  os << "# subcommand: " << subcommand << "\n";
  os << "# flags:";
  for (const auto& [k, v] : flags) os << " " << k << "=" << v;
  os << "\n# bits_used: " << out.bits_used << "\n# residual: " << out.residual << "\n";
  for (const auto& [k, v] : out.meta) os << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < out.columns.size(); ++i) os << (i ? "," : "") << csv_cell(out.columns[i]);
  os << "\n";
  for (const auto& r : out.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << "\n";
  }
  return os.str();
}

std::vector<std::pair<std::string, std::string>> flag_set(const CLI::App& app, const CLI::App* sub) {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&](const CLI::App& a) {
    for (const CLI::Option* opt : a.get_options()) {
      std::string name = opt->get_name(false, true);
      if (name == "--help" || name == "-h,--help" || name == "--version" || name.empty()) continue;
      std::string value;
      if (opt->count() > 0) {
        const auto& res = opt->results();
        for (std::size_t i = 0; i < res.size(); ++i) value += (i ? " " : "") + res[i];
        if (res.empty()) value = "true";
      } else {
        value = opt->get_default_str();
      }
      out.emplace_back(opt->get_name(), value);
    }
  };
  add(app);
  if (sub) add(*sub);
  return out;
}

int default_digits() {
  const char* env = std::getenv("RMT_GAP_DIGITS");
  if (!env || !*env) return 16;
  char* end = nullptr;
  long d = std::strtol(env, &end, 10);
  if (*end != '\0') return -1;
  return static_cast<int>(d);
}

}  // namespace

int main(int argc, char** argv) {
  Job job;
  job.digits = default_digits();

  CLI::App app{"Gap probabilities and marginals for the GOE and LOE"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(RMTGAP_VERSION));
  app.add_option("--ensemble", job.ensemble, "goe or loe")->capture_default_str();
  app.add_option("--n", job.n, "matrix size N")->capture_default_str();
  app.add_option("--a", job.a, "Laguerre parameter (LOE)");
  auto* s_opt = app.add_option("--s", job.s, "threshold s");
  auto* grid_opt = app.add_option("--s-grid", job.s_grid, "lo:hi:steps");
  auto* scaled_opt = app.add_option("--scaled-s", job.scaled_s, "LOE threshold in units of N");
  s_opt->excludes(grid_opt)->excludes(scaled_opt);
  grid_opt->excludes(scaled_opt);
  app.add_option("--k", job.k, "order index (1 = largest)")->capture_default_str();
  app.add_option("--digits", job.digits, "target decimal digits (>= 6)")->capture_default_str();
  app.add_option("--bits", job.bits, "starting precision in bits (0 = size based)")->capture_default_str();
  app.add_option("--max-escalations", job.max_escalations)->capture_default_str();
  app.add_option("--format", job.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", job.out, "output path (default stdout)");
  app.add_option("--seed", job.seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--samples", job.samples, "Monte Carlo draws")->capture_default_str();
  app.add_option("--jobs", job.jobs, "worker threads (0 = all cores)")->capture_default_str();

  struct Entry {
    CLI::App* app;
    std::function<Output(const Job&)> run;
  };
  std::vector<Entry> entries;
  auto sub = [&](const char* name, const char* help, std::function<Output(const Job&)> run) {
    CLI::App* a = app.add_subcommand(name, help);
    entries.push_back({a, std::move(run)});
    return a;
  };
  sub("gap-probs", "E_N(k; (s, inf)) for k = 0..N", gap_probs);
  sub("marginal-cdf", "CDF of the k-th largest eigenvalue", [](const Job& j) { return marginal(j, false); });
  sub("marginal-pdf", "density of the k-th largest eigenvalue", [](const Job& j) { return marginal(j, true); });
  sub("cumulants", "mean, sd and scaled cumulants of the marginals", cumulants_cmd);
  sub("counting", "mean and variance of the eigenvalue count above s", counting);
  CLI::App* clt = sub("local-clt", "counting distribution against its Gaussian approximation", local_clt);
  clt->add_option("--centering", job.centering, "half-n, floor-mean or mean");
  clt->add_option("--offsets", job.offsets, "offsets k from the centre");
  sub("large-dev", "log E_N(0; (0, inf)) against its large-N expansion", large_dev);
  sub("bulk-probe", "central GOE eigenvalue against its normal limit", bulk_probe);
  sub("bulk-law-loe", "standardized LOE marginal against the normal density", bulk_law);
  sub("interlace", "marginal means against polynomial zeros", interlace);
  CLI::App* tr = sub("trace-xi", "Xi and Xi^2 along an s sweep at a root of unity", trace_xi);
  tr->add_option("--root", job.root, "zeta = exp(2 pi i root / (N+1))")->capture_default_str();
  sub("mc-validate", "Monte Carlo check of the gap probabilities", mc_validate);
  CLI::App* rp = sub("repro", "regenerate a published table", repro);
  rp->add_option("table", job.table, "table1..table7 or appendix")->required();
  rp->add_flag("--extended", job.extended, "include the larger sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const Entry* chosen = nullptr;
  for (const Entry& e : entries)
    if (e.app->parsed()) chosen = &e;

  std::string text;
  try {
    if (job.digits < 6) throw UsageError("digits must be at least 6 (--digits or RMT_GAP_DIGITS)");
    if (job.jobs < 0) throw UsageError("--jobs must be non-negative");
    g_digits = job.digits;
    reset_gap_diagnostics();
    Output out = chosen->run(job);
    take_diagnostics(out);
    text = render(out, chosen->app->get_name(), flag_set(app, chosen->app), job.format);
  } catch (const UsageError& e) {
    std::cerr << "rmtgap: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rmtgap: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "rmtgap: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "rmtgap: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const std::exception& e) {
    // Quadrature or support-window failures: numerical, not usage.
    std::cerr << "rmtgap: " << e.what() << "\n";
    return kExitPrecision;
  }

  if (job.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return std::cout ? 0 : kExitIo;
  }
  std::ofstream f(job.out, std::ios::binary);
  if (!f) {
    std::cerr << "rmtgap: cannot open " << job.out << "\n";
    return kExitIo;
  }
  f << text;
  f.close();
  if (!f) {
    std::cerr << "rmtgap: write failed for " << job.out << "\n";
    return kExitIo;
  }
  return 0;
}
