// anires: command-line front end for coefficient tables, reference values, resummation,
// crossover diagnostics and variational perturbation theory.

#include <CLI11.hpp>
#include <json.hpp>

#include <anires/anires.hpp>

#include <algorithm>
#include <charconv>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace anires;

namespace {

struct RunConfig {
  std::optional<double> g_over_4;
  std::optional<double> g_raw;
  std::optional<double> delta;
  std::string delta_range;
  int order = 8;
  std::vector<int> orders;
  double sigma = qm::kDefaultSigma;
  int kmax = 12;
  std::optional<double> tol;
  std::string format = "csv";
  std::string out;
  unsigned jobs = 0;
  int reference_order = 9;
  std::string select = "w";
  std::string omega_range = "0.5:3:0.01";
  std::string out_dir = "figures";
};

// ---------------------------------------------------------------------------
// parameter plumbing

std::vector<double> parse_range(const std::string& spec) {
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(spec);
  if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !is.eof())
    throw CLI::ValidationError("range", "expected start:stop:step, got '" + spec + "'");
  if (!(step > 0.0)) throw CLI::ValidationError("range", "step must be positive");
  if (b < a) throw CLI::ValidationError("range", "empty range '" + spec + "'");
  const long count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> v;
  for (long i = 0; i < count; ++i) {
    double x = a + static_cast<double>(i) * step;
    if (std::fabs(x) < 1e-12 * step) x = 0.0;
    v.push_back(x);
  }
  return v;
}

std::vector<double> deltas(const RunConfig& c) {
  if (!c.delta_range.empty()) return parse_range(c.delta_range);
  if (c.delta) return {*c.delta};
  return {0.0};
}

double coupling_g4(const RunConfig& c, double fallback) {
  if (c.g_over_4 && c.g_raw) throw CLI::ValidationError("--g4/--g", "give the coupling once");
  if (c.g_raw) return *c.g_raw / 4.0;
  return c.g_over_4.value_or(fallback);
}

std::string num(double x);

std::string coupling_note(const RunConfig& c, double g4) {
  return "g_over_4=" + num(g4) + " (entered as " + (c.g_raw ? "raw g" : "g/4") + ")";
}

std::vector<int> orders(const RunConfig& c) { return c.orders.empty() ? std::vector<int>{c.order} : c.orders; }

QuadratureSpec quadrature(const RunConfig& c) {
  QuadratureSpec q;
  if (const char* env = std::getenv("ANIRES_QUAD_TOL")) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (end == env || !(t > 0.0)) throw CLI::ValidationError("ANIRES_QUAD_TOL", "must be a positive number");
    q.rel_tol = t;
  }
  if (c.tol) {
    if (!(*c.tol > 0.0)) throw CLI::ValidationError("--tol", "must be positive");
    q.rel_tol = *c.tol;
  }
  q.abs_tol = std::min(q.abs_tol, q.rel_tol * 1e-2);
  return q;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    stream().precision(17);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------
// work pool: results land in input order whatever the completion order

struct PointResult {
  std::vector<std::string> rows;
  std::string error;
};

std::vector<PointResult> run_pool(std::size_t count, unsigned jobs, const std::function<std::vector<std::string>(std::size_t)>& task) {
  std::vector<PointResult> results(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i].rows = task(i);
      } catch (const std::exception& e) {
        results[i].error = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs ? jobs : std::thread::hardware_concurrency(),
                                                     static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

int emit(std::ostream& os, const std::vector<PointResult>& results, const std::vector<std::string>& labels) {
  int failures = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].error.empty()) {
      ++failures;
      std::cerr << "anires: point " << labels[i] << " failed: " << results[i].error << '\n';
      continue;
    }
    for (const auto& r : results[i].rows) os << r << '\n';
  }
  if (failures) std::cerr << "anires: " << failures << " of " << results.size() << " points failed\n";
  return failures ? 1 : 0;
}

// Shortest representation that round-trips.
std::string num(double x) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// ---------------------------------------------------------------------------
// commands

void write_table(std::ostream& os, const CoefficientTable& t, const std::string& format, const char* convention) {
  if (format == "fraction") {
    t.write_fraction_csv(os);
  } else if (format == "json") {
    nlohmann::ordered_json j;
    j["convention"] = convention;
    j["kmax"] = t.kmax();
    auto rows = nlohmann::ordered_json::array();
    for (int k = 0; k <= t.kmax(); ++k)
      for (int n = 0; n <= k; ++n)
        rows.push_back({{"k", k}, {"n", n}, {"numerator", t.at(k, n).get_num().get_str()},
                        {"denominator", t.at(k, n).get_den().get_str()}});
    j["coefficients"] = std::move(rows);
    os << j.dump(2) << '\n';
  } else {
    t.write_csv(os);
  }
}

int cmd_model_coeffs(const RunConfig& c) {
  if (c.kmax < 0) throw CLI::ValidationError("--kmax", "must be >= 0");
  Output out(c.out);
  write_table(out.stream(), model::coefficients(c.kmax), c.format, "Z_kn multiplies g^k delta^n");
  return 0;
}

int cmd_qm_coeffs(const RunConfig& c) {
  if (c.kmax < 0) throw CLI::ValidationError("--kmax", "must be >= 0");
  Output out(c.out);
  write_table(out.stream(), bw::build(c.kmax).energies(), c.format, "E_kn multiplies (g/4)^k (2 delta)^n");
  return 0;
}

int cmd_model_eval(const RunConfig& c) {
  const double g4 = coupling_g4(c, 0.25);
  const auto ds = deltas(c);
  const QuadratureSpec q = quadrature(c);
  Output out(c.out);
  out.stream() << "# model reference integral, " << coupling_note(c, g4) << '\n'
               << "g_over_4,delta,z_reference,error_estimate\n";
  std::vector<std::string> labels;
  for (double d : ds) labels.push_back("delta=" + num(d));
  const auto results = run_pool(ds.size(), c.jobs, [&](std::size_t i) {
    const QuadratureResult r = model::z_reference_result(4.0 * g4, ds[i], q);
    return std::vector<std::string>{num(g4) + "," + num(ds[i]) + "," + num(r.value) + "," + num(r.error_estimate)};
  });
  return emit(out.stream(), results, labels);
}

int cmd_model_crossover(const RunConfig& c) {
  const double d = c.delta.value_or(1e-2);
  const int kmax = c.kmax == 12 ? 4096 : c.kmax;
  if (kmax < 16) throw CLI::ValidationError("--kmax", "crossover needs kmax >= 16");
  const auto grid = geometric_grid(16, kmax);
  const CrossoverReport r = local_exponent(
      [d](int k) {
        const ScaledValue z = model::z_coeff_delta_legendre(k, d);
        return SignedLog{z.sign(), z.log_abs()};
      },
      4.0, grid);
  Output out(c.out);
  out.stream() << "# delta=" << num(d) << " sigma=4 threshold=" << num(r.threshold)
               << " k_cross=" << (r.k_cross ? std::to_string(*r.k_cross) : std::string("none")) << '\n';
  r.write_csv(out.stream());
  return 0;
}

int resum_command(const RunConfig& c, bool oscillator) {
  const double g4 = coupling_g4(c, oscillator ? 0.1 : 0.25);
  if (!(g4 > 0.0)) throw CLI::ValidationError("--g4", "coupling must be positive");
  const auto ds = deltas(c);
  const auto Ns = orders(c);
  const int kmax = *std::max_element(Ns.begin(), Ns.end());
  const QuadratureSpec q = quadrature(c);
  if (!(c.sigma > 0.0)) throw CLI::ValidationError("--sigma", "must be positive");

  const auto table = std::make_shared<const CoefficientTable>(oscillator ? bw::build(std::max(kmax, c.reference_order)).energies()
                                                                          : model::coefficients(kmax));
  std::vector<ResummedApproximant> approximants;
  for (int N : Ns)
    approximants.push_back(oscillator ? qm::make_approximant(table, N, BigRational(c.sigma))
                                      : ResummedApproximant::build(table, model::large_order_params(N), N));

  Output out(c.out);
  if (c.format == "json") {
    out.stream() << "[\n";
    for (std::size_t i = 0; i < approximants.size(); ++i)
      out.stream() << approximants[i].to_json() << (i + 1 < approximants.size() ? ",\n" : "\n");
    out.stream() << "]\n";
    return 0;
  }

  out.stream() << "# " << (oscillator ? "oscillator energy" : "model integral") << " resummation, "
               << coupling_note(c, g4) << (oscillator ? ", sigma=" + num(c.sigma) + " (in g/4)" : std::string())
               << (oscillator ? ", reference=VPT W_" + std::to_string(c.reference_order) : std::string(", reference=quadrature"))
               << '\n'
               << "g_over_4,delta,N,resummed,reference,abs_error\n";
  std::vector<std::string> labels;
  for (double d : ds) labels.push_back("delta=" + num(d));
  const auto results = run_pool(ds.size(), c.jobs, [&](std::size_t i) {
    const double d = ds[i];
    std::optional<double> ref;
    if (oscillator) {
      if (c.reference_order > 0) ref = vpt::vpt_energy(*table, c.reference_order, g4, d).W();
    } else {
      ref = model::z_reference(4.0 * g4, d, q);
    }
    std::vector<std::string> rows;
    for (std::size_t j = 0; j < Ns.size(); ++j) {
      const double v = oscillator ? qm::resum_energy(approximants[j], g4, d, q) : resum(approximants[j], 4.0 * g4, d, q);
      rows.push_back(num(g4) + "," + num(d) + "," + std::to_string(Ns[j]) + "," + num(v) + "," +
                     (ref ? num(*ref) : std::string()) + "," + (ref ? num(std::fabs(v - *ref)) : std::string()));
    }
    return rows;
  });
  return emit(out.stream(), results, labels);
}

vpt::Selection selection(const RunConfig& c) {
  if (c.select == "w") return vpt::Selection::smallest_w;
  if (c.select == "omega") return vpt::Selection::smallest_omega;
  throw CLI::ValidationError("--select", "expected 'w' or 'omega'");
}

int cmd_vpt(const RunConfig& c) {
  const double g4 = coupling_g4(c, 0.1);
  const auto ds = deltas(c);
  const std::vector<int> ks = c.orders.empty() ? std::vector<int>{1, 3, 5, 7, 9, 11} : c.orders;
  const int kmax = *std::max_element(ks.begin(), ks.end());
  const CoefficientTable table = bw::build(std::max(kmax, 0)).energies();
  const vpt::Selection sel = selection(c);
  Output out(c.out);
  out.stream() << "# variational perturbation theory, " << coupling_note(c, g4) << ", selection=" << c.select << '\n'
               << "k,delta,g_over_4,omega_k,W_k,candidate_kind\n";
  std::vector<std::pair<int, double>> points;
  std::vector<std::string> labels;
  for (double d : ds)
    for (int k : ks) {
      points.emplace_back(k, d);
      labels.push_back("k=" + std::to_string(k) + " delta=" + num(d));
    }
  const auto results = run_pool(points.size(), c.jobs, [&](std::size_t i) {
    const auto [k, d] = points[i];
    const vpt::VptOrderResult r = vpt::vpt_energy(table, k, g4, d, sel);
    return std::vector<std::string>{std::to_string(k) + "," + num(d) + "," + num(g4) + "," + num(r.omega()) + "," +
                                    num(r.W()) + "," + vpt::to_string(r.kind())};
  });
  return emit(out.stream(), results, labels);
}

int cmd_vpt_curve(const RunConfig& c) {
  const double g4 = coupling_g4(c, 0.1);
  const double d = c.delta.value_or(0.5);
  const int k = c.orders.empty() ? 5 : c.orders.front();
  const vpt::LaurentInOmega w = vpt::w_laurent(bw::build(k).energies(), k, g4, d);
  Output out(c.out);
  out.stream() << "# W_" << k << " at delta=" << num(d) << ", " << coupling_note(c, g4) << '\n' << "omega,W\n";
  for (double om : parse_range(c.omega_range))
    if (om > 0.0) out.stream() << num(om) << ',' << num(w(om)) << '\n';
  return 0;
}

int cmd_figures(const RunConfig& base) {
  namespace fs = std::filesystem;
  fs::create_directories(base.out_dir);
  int status = 0;
  auto with = [&](const std::string& file, auto&& tweak) {
    RunConfig c = base;
    c.out = (fs::path(base.out_dir) / file).string();
    c.g_raw.reset();
    tweak(c);
    return c;
  };
  status |= cmd_qm_coeffs(with("energy_coefficients.csv", [](RunConfig& c) { c.kmax = 12; c.format = "fraction"; }));
  for (const auto& [file, d] : {std::pair{"crossover_delta_1e-2.csv", 1e-2}, std::pair{"crossover_delta_1e-4.csv", 1e-4},
                                std::pair{"crossover_delta_1.csv", 1.0}})
    status |= cmd_model_crossover(with(file, [d = d](RunConfig& c) { c.delta = d; c.kmax = d == 1e-4 ? 8192 : 4096; }));
  status |= resum_command(with("model_resum.csv", [](RunConfig& c) {
    c.g_over_4 = 0.25; c.delta_range = "-1:1.5:0.05"; c.orders = {2, 4, 6, 8}; c.format = "csv"; }), false);
  for (const auto& [file, g4] : {std::pair{"qm_resum_g4_0.1.csv", 0.1}, std::pair{"qm_resum_g4_1.0.csv", 1.0}})
    status |= resum_command(with(file, [g4 = g4](RunConfig& c) {
      c.g_over_4 = g4; c.delta_range = "-0.5:2:0.05"; c.orders = {2, 4, 6, 8}; c.sigma = 3.0; c.format = "csv"; }), true);
  for (const auto& [file, k] : {std::pair{"vpt_curve_w5.csv", 5}, std::pair{"vpt_curve_w6.csv", 6}})
    for (double d : {-1.5, -0.5, 0.5, 1.5}) {
      const std::string name = std::string(file).insert(std::string(file).size() - 4, "_delta_" + num(d));
      status |= cmd_vpt_curve(with(name, [k = k, d](RunConfig& c) { c.g_over_4 = 0.1; c.delta = d; c.orders = {k}; }));
    }
  for (const auto& [file, sigma] : {std::pair{"qm_resum_sigma_3.csv", 3.0}, std::pair{"qm_resum_sigma_4.csv", 4.0}})
    status |= resum_command(with(file, [sigma = sigma](RunConfig& c) {
      c.g_over_4 = 0.1; c.delta_range = "-2.5:2:0.05"; c.orders = {6}; c.sigma = sigma; c.format = "csv"; }), true);
  for (const auto& [file, g4] : {std::pair{"vpt_energies_g4_0.1.csv", 0.1}, std::pair{"vpt_energies_g4_1.0.csv", 1.0}})
    status |= cmd_vpt(with(file, [g4 = g4](RunConfig& c) {
      c.g_over_4 = g4; c.delta_range = "-2.5:1.5:1"; c.orders = {1, 3, 5, 7, 9, 11}; }));
  std::cerr << "anires: figure data written to " << base.out_dir << '\n';
  return status;
}

void add_output(CLI::App* sub, RunConfig& c, bool formats) {
  sub->add_option("--out,-o", c.out, "Output file (default stdout)");
  if (formats) sub->add_option("--format", c.format, "csv|json|fraction")->check(CLI::IsMember({"csv", "json", "fraction"}));
}

void add_coupling(CLI::App* sub, RunConfig& c) {
  sub->add_option("--g4", c.g_over_4, "Coupling entered as g/4");
  sub->add_option("--g", c.g_raw, "Coupling entered as raw g");
}

void add_delta(CLI::App* sub, RunConfig& c) {
  sub->add_option("--delta", c.delta, "Anisotropy");
  sub->add_option("--delta-range", c.delta_range, "Anisotropy grid start:stop:step");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resummation of divergent series with cubic anisotropy"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--tol", c.tol, "Relative quadrature tolerance (overrides ANIRES_QUAD_TOL)");
  app.add_option("--jobs,-j", c.jobs, "Worker threads (default: hardware concurrency)");

  auto* model_coeffs = app.add_subcommand("model-coeffs", "Exact Z_kn table of the model integral");
  model_coeffs->add_option("--kmax", c.kmax, "Highest order");
  add_output(model_coeffs, c, true);

  auto* model_eval = app.add_subcommand("model-eval", "Reference values of the model integral by quadrature");
  add_coupling(model_eval, c);
  add_delta(model_eval, c);
  add_output(model_eval, c, false);

  auto* crossover = app.add_subcommand("model-crossover", "Local large-order exponent of Z_k(delta)");
  crossover->add_option("--delta", c.delta, "Anisotropy (default 0.01)");
  crossover->add_option("--kmax", c.kmax, "Largest order of the doubling grid from 16 (default 4096)");
  add_output(crossover, c, false);

  auto* model_resum = app.add_subcommand("model-resum", "Borel resummation of the model integral");
  add_coupling(model_resum, c);
  add_delta(model_resum, c);
  model_resum->add_option("--order,-N", c.order, "Resummation order");
  model_resum->add_option("--orders", c.orders, "Several orders")->delimiter(',');
  add_output(model_resum, c, true);

  auto* qm_coeffs = app.add_subcommand("qm-coeffs", "Exact E_kn of the oscillator ground state (Bender-Wu)");
  qm_coeffs->alias("benderwu");
  qm_coeffs->add_option("--kmax", c.kmax, "Highest order");
  add_output(qm_coeffs, c, true);

  auto* qm_resum = app.add_subcommand("qm-resum", "Borel resummation of the oscillator ground-state energy");
  add_coupling(qm_resum, c);
  add_delta(qm_resum, c);
  qm_resum->add_option("--order,-N", c.order, "Resummation order");
  qm_resum->add_option("--orders", c.orders, "Several orders")->delimiter(',');
  qm_resum->add_option("--sigma", c.sigma, "Large-order growth constant in g/4 (default 3)");
  qm_resum->add_option("--reference-order", c.reference_order, "VPT order of the reference column (0: none)");
  add_output(qm_resum, c, true);

  auto* vpt_cmd = app.add_subcommand("vpt", "Variational perturbation theory W_k at the optimal Omega");
  add_coupling(vpt_cmd, c);
  add_delta(vpt_cmd, c);
  vpt_cmd->add_option("--orders,-k", c.orders, "Orders k (default 1,3,5,7,9,11)")->delimiter(',');
  vpt_cmd->add_option("--select", c.select, "Candidate rule: w (lowest W) or omega (smallest Omega)");
  bool curve = false;
  vpt_cmd->add_flag("--curve", curve, "Write W_k(Omega) on --omega-range instead");
  vpt_cmd->add_option("--omega-range", c.omega_range, "Omega grid start:stop:step for --curve");
  add_output(vpt_cmd, c, false);

  auto* figures = app.add_subcommand("figures", "Write every figure and table data set");
  figures->add_option("--out-dir", c.out_dir, "Directory for the CSV files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*model_coeffs) return cmd_model_coeffs(c);
    if (*model_eval) return cmd_model_eval(c);
    if (*crossover) return cmd_model_crossover(c);
    if (*model_resum) return resum_command(c, false);
    if (*qm_coeffs) return cmd_qm_coeffs(c);
    if (*qm_resum) return resum_command(c, true);
    if (*vpt_cmd) return curve ? cmd_vpt_curve(c) : cmd_vpt(c);
    if (*figures) return cmd_figures(c);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "anires: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
