#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "rmtgap/asymptotics.hpp"
#include "rmtgap/gap.hpp"
#include "rmtgap/marginals.hpp"
#include "rmtgap/mc.hpp"

namespace py = pybind11;
using namespace rmtgap;

namespace {

// High-precision values cross the boundary as decimal strings.
EnsembleSpec make_spec(const std::string& ensemble, int n, std::optional<double> a) {
  if (ensemble == "goe") {
    if (a) throw std::invalid_argument("a applies to the LOE only");
    return EnsembleSpec::goe(n);
  }
  if (ensemble == "loe") {
    if (!a) throw std::invalid_argument("the LOE requires a");
    return EnsembleSpec::loe(n, *a);
  }
  throw std::invalid_argument("ensemble must be 'goe' or 'loe'");
}

PrecisionContext make_ctx(int n, int digits, int bits) {
  PrecisionContext ctx = PrecisionContext::for_size(n, digits);
  if (bits > 0) ctx.bits = bits;
  ctx.workers = 1;
  return ctx;
}

std::string str(const Real& x, int digits) { return x.to_string(digits); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GOE/LOE gap probabilities via Pfaffians";
  m.attr("__version__") = RMTGAP_VERSION;

  py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted", PyExc_ArithmeticError);

  m.def(
      "gap_probabilities",
      [](const std::string& ensemble, int n, const std::string& s, std::optional<double> a,
         int digits, int bits, int max_escalations) {
        EnsembleSpec spec = make_spec(ensemble, n, a);
        PrecisionContext ctx = make_ctx(n, digits, bits);
        ctx.max_escalations = max_escalations;
        PrecisionGuard guard(ctx.bits);
        GapDistribution d = gap_distribution(spec, Real(s), ctx);
        py::list E;
        for (const Real& e : d.E) E.append(str(e, digits));
        py::dict out;
        out["E"] = E;
        out["bits_used"] = d.bits_used;
        out["residual"] = d.residual.to_double();
        return out;
      },
      py::arg("ensemble"), py::arg("n"), py::arg("s"), py::arg("a") = py::none(),
      py::arg("digits") = 16, py::arg("bits") = 0, py::arg("max_escalations") = 3,
      "E_N(k; (s, inf)) for k = 0..N as decimal strings, with bits used and residual.");

  m.def(
      "marginal_cdf",
      [](const std::string& ensemble, int n, int k, const std::string& s, std::optional<double> a,
         int digits) {
        EnsembleSpec spec = make_spec(ensemble, n, a);
        PrecisionContext ctx = make_ctx(n, digits, 0);
        PrecisionGuard guard(ctx.bits);
        return str(marginal_cdf_at(spec, k, Real(s), ctx), digits);
      },
      py::arg("ensemble"), py::arg("n"), py::arg("k"), py::arg("s"), py::arg("a") = py::none(),
      py::arg("digits") = 16);

  m.def(
      "marginal_pdf",
      [](const std::string& ensemble, int n, int k, const std::string& s, std::optional<double> a,
         int digits) {
        EnsembleSpec spec = make_spec(ensemble, n, a);
        PrecisionContext ctx = make_ctx(n, digits, 0);
        PrecisionGuard guard(ctx.bits);
        return str(marginal_pdf_at(spec, k, Real(s), Real(1), ctx), digits);
      },
      py::arg("ensemble"), py::arg("n"), py::arg("k"), py::arg("s"), py::arg("a") = py::none(),
      py::arg("digits") = 16);

  m.def(
      "cumulants",
      [](const std::string& ensemble, int n, int k, std::optional<double> a, int digits) {
        EnsembleSpec spec = make_spec(ensemble, n, a);
        PrecisionContext ctx = make_ctx(n, digits, 0);
        PrecisionGuard guard(ctx.bits);
        CumulantSummary c = cumulants(spec, k, ctx);
        py::dict out;
        out["mu"] = str(c.mu, digits);
        out["sigma"] = str(c.sigma, digits);
        py::list g;
        for (const Real& x : c.gamma) g.append(str(x, digits));
        out["gamma"] = g;
        return out;
      },
      py::arg("ensemble"), py::arg("n"), py::arg("k"), py::arg("a") = py::none(),
      py::arg("digits") = 10);

  m.def(
      "counting_stats",
      [](const std::string& ensemble, int n, const std::string& s, std::optional<double> a,
         int digits) {
        EnsembleSpec spec = make_spec(ensemble, n, a);
        PrecisionContext ctx = make_ctx(n, digits, 0);
        PrecisionGuard guard(ctx.bits);
        CountingStats c = counting_stats(spec, Real(s), ctx);
        py::dict out;
        out["mean"] = str(c.mean, digits);
        out["variance"] = str(c.variance, digits);
        out["bits_used"] = c.bits_used;
        return out;
      },
      py::arg("ensemble"), py::arg("n"), py::arg("s"), py::arg("a") = py::none(),
      py::arg("digits") = 16);

  m.def(
      "large_deviation",
      [](int n, int digits) {
        PrecisionContext ctx = make_ctx(n, digits, 0);
        PrecisionGuard guard(ctx.bits);
        LargeDeviationRow r = large_deviation_check(n, ctx);
        py::dict out;
        out["exact"] = str(r.exact, digits + 4);
        out["predicted"] = str(r.predicted, digits + 4);
        out["delta"] = str(r.delta, digits);
        return out;
      },
      py::arg("n"), py::arg("digits") = 12, "log E_N(0; (0, inf)) for the GOE and its expansion.");

  m.def(
      "mp_tail_mass",
      [](const std::string& x, double c, int digits) {
        PrecisionGuard guard(128);
        MPLaw law{c};
        return str(law.tail_mass(Real(x)), digits);
      },
      py::arg("x"), py::arg("c") = 1.0, py::arg("digits") = 16);

  m.def(
      "mc_gap_probabilities",
      [](const std::string& ensemble, int n, double s, std::optional<double> a, long samples,
         std::uint64_t seed) {
        SamplerConfig cfg{make_spec(ensemble, n, a), samples, seed, 1};
        EmpiricalGap g = empirical_gap_distribution(cfg, s);
        py::dict out;
        out["frequency"] = g.frequency;
        out["standard_error"] = g.standard_error;
        return out;
      },
      py::arg("ensemble"), py::arg("n"), py::arg("s"), py::arg("a") = py::none(),
      py::arg("samples") = 100000, py::arg("seed") = 1);
}
