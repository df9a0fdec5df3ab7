// qbrach: passage-time tables, residual-curve data, ad-hoc solves, parameter
// sweeps, and a self-check suite for the two-level passage-time library.
//
// Output is a single document per invocation, CSV (default) or JSON, written
// to stdout or --out. Documents are deterministic byte-for-byte given the
// same configuration; the JSON metadata block (which carries a timestamp) can
// be dropped with --no-meta to make JSON output deterministic as well.
//
// Exit codes: 0 success; 1 parameter/validation error (or a failed check in
// `validate`); 2 when a solve that must produce a root reports that the
// amplitude never reaches the requested level.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbrach/brachistochrone.hpp"
#include "qbrach/errors.hpp"
#include "qbrach/evolution.hpp"
#include "qbrach/linalg2.hpp"
#include "qbrach/metric.hpp"
#include "qbrach/models.hpp"

namespace {

using json = nlohmann::ordered_json;
using qbrach::BrachistochroneProblem;
using qbrach::Complex;
using qbrach::Formulation;
using qbrach::Matrix2;
using qbrach::Vector2;

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------------------
// Output document: named columns, rows of cells, optional metadata (JSON
// only). CSV renders numbers with 17 significant digits; JSON keeps native
// numbers (non-finite values become null).
// ---------------------------------------------------------------------------

struct Document {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json metadata;  // null unless set

  void add_row(std::vector<json> cells) { rows.push_back(std::move(cells)); }
};

std::string render_cell_csv(const json& cell) {
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_number_integer()) return std::to_string(cell.get<long long>());
  if (cell.is_number()) return fmt17(cell.get<double>());
  if (cell.is_null()) return "nan";
  return cell.dump();
}

std::string render_csv(const Document& doc) {
  std::string out;
  for (size_t c = 0; c < doc.columns.size(); ++c) {
    if (c) out += ',';
    out += doc.columns[c];
  }
  out += '\n';
  for (const auto& row : doc.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += render_cell_csv(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Document& doc, bool no_meta) {
  json root;
  if (!no_meta && !doc.metadata.is_null()) root["metadata"] = doc.metadata;
  root["columns"] = doc.columns;
  json rows = json::array();
  for (const auto& row : doc.rows) {
    json obj;
    for (size_t c = 0; c < row.size() && c < doc.columns.size(); ++c) {
      obj[doc.columns[c]] = row[c];
    }
    rows.push_back(std::move(obj));
  }
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

int emit(const Document& doc, const std::string& format,
         const std::string& out_path, bool no_meta) {
  const std::string text =
      format == "json" ? render_json(doc, no_meta) : render_csv(doc);
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file " << out_path << "\n";
    return 1;
  }
  f << text;
  return 0;
}

// ---------------------------------------------------------------------------
// Configuration: one flat flag set shared by all commands; per-model defaults
// are resolved only where a flag was not given explicitly.
// ---------------------------------------------------------------------------

struct Options {
  std::string model = "pt";
  double r = kNaN, s = kNaN, theta = kNaN;
  double E = kNaN, eps = kNaN;
  double lambda_re = kNaN, lambda_im = kNaN;
  double phi_re = kNaN, phi_im = kNaN;
  std::string formulation;
  double level = 1.0;
  double t_max = kNaN;  // default: problem.default_t_max()
  int grid_n = 4096;
  std::string format = "csv";
  std::string out_path;
  bool no_meta = false;

  int figure_id = 1;

  std::string sweep_param;
  double sweep_min = kNaN, sweep_max = kNaN;
  int sweep_n = 25;
  double omega_re = kNaN, omega_im = kNaN;
  double level_min = kNaN, level_max = kNaN;
  int level_n = 1;

  double pick(double flag_value, double fallback) const {
    return std::isnan(flag_value) ? fallback : flag_value;
  }
};

Formulation parse_formulation(const std::string& name) {
  static const std::map<std::string, Formulation> table = {
      {"qb", Formulation::QB},     {"bc2", Formulation::BC2},
      {"bc", Formulation::BC},     {"df", Formulation::DF},
      {"df2", Formulation::DF2},   {"qbnh", Formulation::QBNH},
      {"gh", Formulation::GH},     {"trans", Formulation::TRANS},
  };
  const auto it = table.find(name);
  if (it == table.end()) {
    throw std::invalid_argument("unknown formulation: " + name);
  }
  return it->second;
}

qbrach::PtModel make_pt(const Options& o) {
  return qbrach::pt_model(o.pick(o.r, 1.0), o.pick(o.s, 2.0),
                          o.pick(o.theta, kPi / 4.0));
}

qbrach::DissipativeRealModel make_real(const Options& o) {
  return qbrach::dissipative_real_model(
      o.pick(o.E, 1.0), o.pick(o.eps, 1.0), o.pick(o.r, 0.5),
      o.pick(o.s, 0.5), o.pick(o.theta, 0.0), o.pick(o.lambda_re, 0.5));
}

qbrach::DissipativeComplexModel make_complex(const Options& o) {
  return qbrach::dissipative_complex_model(
      o.pick(o.E, 2.0), o.pick(o.eps, 2.5),
      Complex(o.pick(o.lambda_re, 3.5), o.pick(o.lambda_im, 0.0)),
      Complex(o.pick(o.phi_re, 0.2), o.pick(o.phi_im, 0.0)));
}

double resolved_t_max(const Options& o, const BrachistochroneProblem& p) {
  return std::isnan(o.t_max) ? p.default_t_max() : o.t_max;
}

// Analytic tau where a formula exists, NaN otherwise.
double analytic_or_nan(const BrachistochroneProblem& p) {
  try {
    return qbrach::passage_time_analytic(p).tau;
  } catch (const qbrach::NoClosedForm&) {
    return kNaN;
  }
}

void append_solve_row(Document& doc, const std::string& scenario,
                      const std::string& formulation,
                      const std::string& formula,
                      const BrachistochroneProblem& problem, double t_max,
                      int grid_n) {
  const double analytic = analytic_or_nan(problem);
  double numeric = kNaN;
  double residual = kNaN;
  std::string status = "ok";
  try {
    const auto res = qbrach::passage_time_numeric(problem, t_max, grid_n);
    numeric = res.tau;
    residual = res.residual;
  } catch (const qbrach::NoRoot& e) {
    status = "no_root";
    residual = e.min_abs_f();
  }
  const double diff = std::abs(analytic - numeric);
  doc.add_row({scenario, formulation, formula, analytic, numeric,
               std::isnan(diff) ? json() : json(diff),
               std::isnan(residual) ? json() : json(residual), status});
}

// ---------------------------------------------------------------------------
// table1 / table2: the four passage-time scenarios of each family.
// ---------------------------------------------------------------------------

int run_table1(const Options& o) {
  const auto m = make_pt(o);
  Document doc;
  doc.columns = {"scenario",    "formulation", "formula",  "analytic_tau",
                 "numeric_tau", "abs_diff",    "residual", "status"};
  const struct {
    const char* scenario;
    const char* name;
    Formulation f;
    const char* formula;
  } rows[] = {
      {"Phi->Phi", "qb", Formulation::QB, "2*asin(level)/omega"},
      {"phi->phi", "bc2", Formulation::BC2, "(pi + 2*alpha)/omega"},
      {"phi->Phi", "df", Formulation::DF, "(2*pi + alpha)/omega"},
      {"Phi->phi", "df2", Formulation::DF2, "(2*pi + alpha)/omega"},
  };
  for (const auto& row : rows) {
    BrachistochroneProblem p(m, row.f, o.level);
    append_solve_row(doc, row.scenario, row.name, row.formula, p,
                     resolved_t_max(o, p), o.grid_n);
  }
  doc.metadata = {{"command", "table1"},
                  {"parameters",
                   {{"r", m.r},
                    {"s", m.s},
                    {"theta", m.theta},
                    {"level", o.level},
                    {"grid_n", o.grid_n}}},
                  {"timestamp", iso_timestamp()}};
  return emit(doc, o.format, o.out_path, o.no_meta);
}

int run_table2(const Options& o) {
  const auto m = make_real(o);
  Document doc;
  doc.columns = {"scenario",    "formulation", "formula",  "analytic_tau",
                 "numeric_tau", "abs_diff",    "residual", "status"};
  const struct {
    const char* scenario;
    const char* name;
    Formulation f;
  } rows[] = {
      {"Phi~->Phi~", "qbnh", Formulation::QBNH},
      {"phi~->phi~", "gh", Formulation::GH},
      {"phi~->Phi~", "df", Formulation::DF},
      {"Phi~->phi~", "df2", Formulation::DF2},
  };
  for (const auto& row : rows) {
    BrachistochroneProblem p(m, row.f, o.level);
    append_solve_row(doc, row.scenario, row.name, "pi/omega", p,
                     resolved_t_max(o, p), o.grid_n);
  }
  doc.metadata = {{"command", "table2"},
                  {"parameters",
                   {{"E", m.E},
                    {"eps", m.eps},
                    {"r", m.r},
                    {"s", m.s},
                    {"theta", m.theta},
                    {"lambda", m.lambda},
                    {"level", o.level},
                    {"grid_n", o.grid_n}}},
                  {"timestamp", iso_timestamp()}};
  return emit(doc, o.format, o.out_path, o.no_meta);
}

// ---------------------------------------------------------------------------
// figure: residual curves of the transcendental equation for the built-in
// parameter sets, with the recomputed frequency and the smallest root of
// each curve.
// ---------------------------------------------------------------------------

struct CurveSet {
  double eps;
  Complex lambda;
  Complex phi;
};

int run_figure(const Options& o) {
  if (o.figure_id != 1 && o.figure_id != 2) {
    throw std::invalid_argument("--id must be 1 or 2");
  }
  const double E = o.pick(o.E, 2.0);
  std::vector<CurveSet> sets;
  Complex published_omega;
  if (o.figure_id == 1) {
    const double eps = o.pick(o.eps, 2.5);
    published_omega = Complex(4.87, -3.31);
    sets = {{eps, {3.5, 0.0}, {0.2, 0.0}},
            {eps, {3.73, 0.2}, {0.3, 0.0}},
            {eps, {3.87, 0.34}, {0.35, 0.0}},
            {eps, {4.02, 0.52}, {0.4, 0.0}}};
  } else {
    const Complex phi(o.pick(o.phi_re, 0.2), o.pick(o.phi_im, 0.0));
    published_omega = Complex(6.99, -0.46);
    sets = {{9.0, {1.85, -14.84}, phi},
            {9.5, {2.72, -16.32}, phi},
            {9.9, {3.41, -17.29}, phi},
            {11.0, {5.01, -19.62}, phi}};
  }

  Document doc;
  doc.columns = {"set", "kind", "x", "y"};
  constexpr int kSamples = 256;
  for (size_t i = 0; i < sets.size(); ++i) {
    const int set_id = static_cast<int>(i) + 1;
    const auto m = qbrach::dissipative_complex_model(E, sets[i].eps,
                                                     sets[i].lambda,
                                                     sets[i].phi);
    BrachistochroneProblem p(m, Formulation::TRANS);
    const double t_max = resolved_t_max(o, p);
    doc.add_row({set_id, "omega_recomputed", m.omega.real(), m.omega.imag()});
    doc.add_row(
        {set_id, "omega_published", published_omega.real(), published_omega.imag()});
    doc.add_row({set_id, "omega_abs_diff",
                 std::abs(m.omega.real() - published_omega.real()),
                 std::abs(m.omega.imag() - published_omega.imag())});
    for (int k = 1; k <= kSamples; ++k) {
      const double t = t_max * k / kSamples;
      doc.add_row({set_id, "sample", t, qbrach::trans_residual(m, t)});
    }
    try {
      const auto res = qbrach::passage_time_numeric(p, t_max, o.grid_n);
      doc.add_row({set_id, "root", res.tau, res.residual});
    } catch (const qbrach::NoRoot& e) {
      doc.add_row({set_id, "no_root", e.min_abs_f(), e.t_at_min()});
    }
  }
  doc.metadata = {{"command", "figure"},
                  {"parameters",
                   {{"id", o.figure_id},
                    {"E", E},
                    {"grid_n", o.grid_n},
                    {"samples", kSamples}}},
                  {"timestamp", iso_timestamp()}};
  return emit(doc, o.format, o.out_path, o.no_meta);
}

// ---------------------------------------------------------------------------
// solve: one problem end-to-end. A missing root here is an error (exit 2).
// ---------------------------------------------------------------------------

int run_solve(const Options& o) {
  Document doc;
  doc.columns = {"model",        "formulation", "level",
                 "rhs",          "analytic_tau", "numeric_tau",
                 "abs_diff",     "residual",    "bracket_lo",
                 "bracket_hi"};

  std::string formulation = o.formulation;
  std::optional<BrachistochroneProblem> problem;
  if (o.model == "pt") {
    if (formulation.empty()) formulation = "qb";
    problem.emplace(make_pt(o), parse_formulation(formulation), o.level);
  } else if (o.model == "dissipative-real") {
    if (formulation.empty()) formulation = "qbnh";
    problem.emplace(make_real(o), parse_formulation(formulation), o.level);
  } else if (o.model == "dissipative-complex") {
    if (formulation.empty()) formulation = "qb";
    problem.emplace(make_complex(o), parse_formulation(formulation));
  } else {
    throw std::invalid_argument("unknown model: " + o.model);
  }

  const double analytic = analytic_or_nan(*problem);
  const auto res = qbrach::passage_time_numeric(
      *problem, resolved_t_max(o, *problem), o.grid_n);
  const double diff = std::abs(analytic - res.tau);
  doc.add_row({o.model, formulation, problem->level(), problem->rhs(),
               analytic, res.tau, std::isnan(diff) ? json() : json(diff),
               res.residual, res.bracket_lo, res.bracket_hi});
  doc.metadata = {{"command", "solve"},
                  {"parameters",
                   {{"model", o.model},
                    {"formulation", formulation},
                    {"level", problem->level()},
                    {"grid_n", o.grid_n}}},
                  {"timestamp", iso_timestamp()}};
  return emit(doc, o.format, o.out_path, o.no_meta);
}

// ---------------------------------------------------------------------------
// sweep: tabulate tau over a parameter axis at a fixed transition frequency.
//   pt model:                  alpha axis (theta = pi/2, s and r solved from
//                              omega and alpha), optional level axis.
//   dissipative-complex model: eps axis, coupling reconstructed per cell to
//                              hold the complex frequency fixed.
// ---------------------------------------------------------------------------

int run_sweep(const Options& o) {
  Document doc;
  std::string param = o.sweep_param;
  if (param.empty()) {
    param = (o.model == "dissipative-complex") ? "eps" : "alpha";
  }

  if (o.model == "pt") {
    if (param != "alpha") {
      throw std::invalid_argument(
          "the pt sweep supports only --sweep-param alpha");
    }
    const double omega = o.pick(o.omega_re, 2.0);
    const double lo = o.pick(o.sweep_min, -1.4);
    const double hi = o.pick(o.sweep_max, 1.4);
    const int n = o.sweep_n;
    if (n < 2 || !(hi > lo)) {
      throw std::invalid_argument("sweep needs --sweep-n >= 2 and max > min");
    }
    std::vector<double> levels;
    if (!std::isnan(o.level_min) && o.level_n >= 1) {
      const double lmax = o.pick(o.level_max, o.level_min);
      for (int j = 0; j < o.level_n; ++j) {
        levels.push_back(o.level_n == 1 ? o.level_min
                                        : o.level_min +
                                              (lmax - o.level_min) * j /
                                                  (o.level_n - 1));
      }
    } else {
      levels.push_back(o.level);
    }
    const std::string formulation =
        o.formulation.empty() ? "bc2" : o.formulation;
    const Formulation f = parse_formulation(formulation);

    doc.columns = {"alpha", "level", "r", "s", "tau", "residual", "status"};
    for (int i = 0; i < n; ++i) {
      const double alpha = lo + (hi - lo) * i / (n - 1);
      for (const double level : levels) {
        const double s = omega / (2.0 * std::cos(alpha));
        const double r = s * std::sin(alpha);
        try {
          const auto m = qbrach::pt_model(r, s, 0.5 * kPi);
          BrachistochroneProblem p(m, f, level);
          const auto res = qbrach::passage_time_numeric(
              p, resolved_t_max(o, p), o.grid_n);
          doc.add_row({alpha, level, r, s, res.tau, res.residual, "ok"});
        } catch (const qbrach::NoRoot& e) {
          doc.add_row({alpha, level, r, s, json(), e.min_abs_f(), "no_root"});
        } catch (const std::exception& e) {
          doc.add_row({alpha, level, r, s, json(), json(), e.what()});
        }
      }
    }
    doc.metadata = {{"command", "sweep"},
                    {"parameters",
                     {{"model", o.model},
                      {"param", param},
                      {"omega", omega},
                      {"formulation", formulation},
                      {"grid_n", o.grid_n}}},
                    {"timestamp", iso_timestamp()}};
  } else if (o.model == "dissipative-complex") {
    if (param != "eps") {
      throw std::invalid_argument(
          "the dissipative-complex sweep supports only --sweep-param eps");
    }
    const Complex omega(o.pick(o.omega_re, 6.99), o.pick(o.omega_im, -0.46));
    const Complex phi(o.pick(o.phi_re, 0.2), o.pick(o.phi_im, 0.0));
    const double E = o.pick(o.E, 2.0);
    const double lo = o.pick(o.sweep_min, 9.0);
    const double hi = o.pick(o.sweep_max, 11.0);
    const int n = o.sweep_n;
    if (n < 2 || !(hi > lo)) {
      throw std::invalid_argument("sweep needs --sweep-n >= 2 and max > min");
    }
    const std::string formulation =
        o.formulation.empty() ? "trans" : o.formulation;
    const Formulation f = parse_formulation(formulation);

    doc.columns = {"eps",      "lambda_re", "lambda_im", "tau",
                   "residual", "status"};
    for (int i = 0; i < n; ++i) {
      const double eps = lo + (hi - lo) * i / (n - 1);
      const Complex lambda = qbrach::lambda_from_omega(eps, phi, omega).first;
      try {
        const auto m = qbrach::dissipative_complex_model(E, eps, lambda, phi);
        BrachistochroneProblem p(m, f);
        const auto res =
            qbrach::passage_time_numeric(p, resolved_t_max(o, p), o.grid_n);
        doc.add_row({eps, lambda.real(), lambda.imag(), res.tau, res.residual,
                     "ok"});
      } catch (const qbrach::NoRoot& e) {
        doc.add_row({eps, lambda.real(), lambda.imag(), json(),
                     e.min_abs_f(), "no_root"});
      } catch (const std::exception& e) {
        doc.add_row(
            {eps, lambda.real(), lambda.imag(), json(), json(), e.what()});
      }
    }
    doc.metadata = {{"command", "sweep"},
                    {"parameters",
                     {{"model", o.model},
                      {"param", param},
                      {"omega_re", omega.real()},
                      {"omega_im", omega.imag()},
                      {"E", E},
                      {"formulation", formulation},
                      {"grid_n", o.grid_n}}},
                    {"timestamp", iso_timestamp()}};
  } else {
    throw std::invalid_argument(
        "sweep supports --model pt or dissipative-complex");
  }
  return emit(doc, o.format, o.out_path, o.no_meta);
}

// ---------------------------------------------------------------------------
// validate: deterministic self-consistency checks over fixed parameter sets,
// one [PASS]/[FAIL] line each.
// ---------------------------------------------------------------------------

struct CheckReport {
  int failures = 0;
  void line(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
  }
};

int run_validate() {
  CheckReport report;

  // Metric roots: determinant, inverse, square.
  {
    double worst = 0.0;
    for (const double alpha : {-1.3, -0.7, 0.0, 0.4, 0.9, 1.3}) {
      const auto eta = qbrach::eta_from_alpha(alpha);
      worst = std::max(worst, std::abs(eta.matrix().det() + 1.0));
      worst = std::max(
          worst, qbrach::inf_norm(eta.matrix() * eta.inverse_matrix() -
                                  Matrix2::identity()));
      const double c = std::cos(alpha);
      const Matrix2 expected{1.0 / c, Complex(0.0, -std::sin(alpha) / c),
                             Complex(0.0, std::sin(alpha) / c), 1.0 / c};
      worst = std::max(worst, qbrach::inf_norm(eta.squared() - expected));
    }
    report.line("metric root determinant/inverse/square", worst <= 1e-11,
                "max deviation " + fmt17(worst));
  }

  // Balanced family: similarity to a Hermitian partner, real spectrum.
  {
    double worst = 0.0;
    const double params[][3] = {
        {1.0, 2.0, kPi / 4}, {0.5, 1.5, 1.0}, {1.8, 2.2, -0.8}, {0.0, 1.0, 0.0}};
    for (const auto& q : params) {
      const auto m = qbrach::pt_model(q[0], q[1], q[2]);
      const auto sim = qbrach::similarity_transform(m.eta, m.hamiltonian);
      worst = std::max(worst, sim.hermiticity_residual);
      worst = std::max(
          worst, qbrach::inf_norm(sim.transformed - m.transformed_hamiltonian));
      const auto eig = qbrach::eigen2(m.hamiltonian);
      worst = std::max(worst, std::abs(eig.val_plus.imag()));
      worst = std::max(worst, std::abs(eig.val_plus - Complex(m.eps_plus)));
    }
    report.line("balanced family similarity and spectrum", worst <= 1e-11,
                "max deviation " + fmt17(worst));
  }

  // Decaying family: diagonalization and level decay.
  {
    double worst = 0.0;
    const double params[][6] = {{1.0, 1.2, 0.6, 0.8, 0.4, 0.7},
                                {0.0, 2.0, 0.5, 1.0, -0.5, 0.3},
                                {2.0, 1.5, 1.0, 0.5, 0.0, 1.0}};
    for (const auto& q : params) {
      const auto m = qbrach::dissipative_real_model(q[0], q[1], q[2], q[3],
                                                    q[4], q[5]);
      worst = std::max(worst, std::abs(m.transformed_hamiltonian.m01));
      worst = std::max(worst, std::abs(m.transformed_hamiltonian.m10));
      worst = std::max(worst,
                       std::abs(m.eps_plus.imag() + 0.5 * m.gamma));
      const auto st = m.states();
      const Vector2 evolved = qbrach::evolve(m.hamiltonian, 1.0, st.Phi_plus);
      worst = std::max(worst,
                       std::abs(qbrach::norm(evolved) -
                                std::exp(-0.5 * m.gamma) *
                                    qbrach::norm(st.Phi_plus)));
    }
    report.line("decaying family diagonalization and width", worst <= 1e-10,
                "max deviation " + fmt17(worst));
  }

  // Complex-coupling family: published frequency and biorthonormal frame.
  {
    const auto m =
        qbrach::dissipative_complex_model(2.0, 2.5, {3.5, 0.0}, {0.2, 0.0});
    const bool omega_ok = std::abs(m.omega.real() - 4.87) <= 0.01 &&
                          std::abs(m.omega.imag() + 3.31) <= 0.01;
    report.line("complex-coupling frequency vs published value", omega_ok,
                "omega = " + fmt17(m.omega.real()) + " + " +
                    fmt17(m.omega.imag()) + "i");
    const auto st = m.states();
    const Vector2 ep = m.eta->apply(st.Phi_plus);
    const Vector2 em = m.eta->apply(st.Phi_minus);
    const double worst = std::max(
        {std::abs(qbrach::std_inner(ep, ep) - 1.0),
         std::abs(qbrach::std_inner(em, em) - 1.0),
         std::abs(qbrach::std_inner(ep, em))});
    report.line("complex-coupling biorthonormal frame", worst <= 1e-11,
                "max deviation " + fmt17(worst));
  }

  // Closed-form amplitudes against the matrix-exponential route.
  {
    double worst = 0.0;
    const auto pt = qbrach::pt_model(1.0, 2.0, kPi / 2.0);
    for (const auto f : {Formulation::QB, Formulation::BC2, Formulation::DF,
                         Formulation::DF2}) {
      BrachistochroneProblem p(pt, f, 1.0);
      for (int k = 0; k <= 200; ++k) {
        const double t = p.default_t_max() * k / 200.0;
        worst = std::max(worst,
                         std::abs(p.amplitude(t) - p.amplitude_closed(t)));
      }
    }
    const auto re = qbrach::dissipative_real_model(1.0, 1.2, 0.6, 0.8, 0.4,
                                                   0.7);
    BrachistochroneProblem q(re, Formulation::GH, 1.0);
    for (int k = 0; k <= 200; ++k) {
      const double t = q.default_t_max() * k / 200.0;
      worst =
          std::max(worst, std::abs(q.amplitude(t) - q.amplitude_closed(t)));
    }
    report.line("closed-form amplitudes vs exponential route", worst <= 1e-11,
                "max deviation " + fmt17(worst));
  }

  // Numeric roots against analytic ones.
  {
    double worst = 0.0;
    const auto pt = qbrach::pt_model(0.8, 1.7, 0.9);
    for (const auto f : {Formulation::QB, Formulation::BC2, Formulation::DF,
                         Formulation::DF2}) {
      BrachistochroneProblem p(pt, f, 1.0);
      worst = std::max(worst,
                       std::abs(qbrach::passage_time_numeric(p).tau -
                                qbrach::passage_time_analytic(p).tau));
    }
    const auto re = qbrach::dissipative_real_model(1.0, 1.5, 0.4, 0.9, -0.3,
                                                   0.8);
    for (const auto f : {Formulation::QBNH, Formulation::GH}) {
      BrachistochroneProblem p(re, f, 1.0);
      worst = std::max(worst, std::abs(qbrach::passage_time_numeric(p).tau -
                                       kPi / re.omega));
    }
    report.line("numeric vs analytic passage times", worst <= 1e-9,
                "max |numeric - analytic| " + fmt17(worst));
  }

  // Exponential kernel sanity.
  {
    double worst = 0.0;
    const Matrix2 samples[] = {
        {Complex(0.3, -0.2), Complex(1.1, 0.4), Complex(-0.7, 0.9),
         Complex(0.0, 0.5)},
        {Complex(0.0, 0.0), Complex(2.0, 1.0), Complex(0.0, 0.0),
         Complex(0.0, 0.0)},
        {Complex(-1.0, 0.1), Complex(0.2, -0.3), Complex(0.4, 0.5),
         Complex(0.8, -0.6)}};
    for (const auto& m : samples) {
      worst = std::max(worst,
                       qbrach::inf_norm(qbrach::exp_matrix(m) *
                                            qbrach::exp_matrix(-m) -
                                        Matrix2::identity()));
    }
    report.line("exponential kernel inverse identity", worst <= 1e-11,
                "max deviation " + fmt17(worst));
  }

  std::cout << (report.failures == 0 ? "all checks passed\n"
                                     : std::to_string(report.failures) +
                                           " check(s) failed\n");
  return report.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{
      "Passage times for two-level Hamiltonians: closed-form tables, "
      "residual curves, ad-hoc solves, parameter sweeps."};
  app.set_config("--config", "", "Flat key=value config file; flags override");
  app.require_subcommand(1);

  app.add_option("--model", o.model,
                 "Model family: pt | dissipative-real | dissipative-complex")
      ->check(CLI::IsMember({"pt", "dissipative-real", "dissipative-complex"}));
  app.add_option("--r", o.r, "Gain/loss magnitude r");
  app.add_option("--s", o.s, "Coupling s");
  app.add_option("--theta", o.theta, "Gain/loss phase theta");
  app.add_option("--E", o.E, "Level midpoint E");
  app.add_option("--eps", o.eps, "Level half-splitting eps");
  app.add_option("--lambda-re", o.lambda_re, "Coupling strength, real part");
  app.add_option("--lambda-im", o.lambda_im,
                 "Coupling strength, imaginary part");
  app.add_option("--phi-re", o.phi_re, "Mixing angle, real part");
  app.add_option("--phi-im", o.phi_im, "Mixing angle, imaginary part");
  app.add_option("--formulation", o.formulation,
                 "qb | bc2 | bc | df | df2 | qbnh | gh | trans")
      ->check(CLI::IsMember(
          {"qb", "bc2", "bc", "df", "df2", "qbnh", "gh", "trans"}));
  app.add_option("--level", o.level, "Target overlap level in [0, 1]");
  app.add_option("--t-max", o.t_max, "Search window (default: 8 periods)");
  app.add_option("--grid-n", o.grid_n, "Root-scan grid size (>= 64)");
  app.add_option("--format", o.format, "Output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out_path, "Output path (default: stdout)");
  app.add_flag("--no-meta", o.no_meta, "Drop the JSON metadata block");

  CLI::App* table1 = app.add_subcommand(
      "table1", "Four passage-time scenarios of the balanced family");
  CLI::App* table2 = app.add_subcommand(
      "table2", "Four passage-time scenarios of the decaying family");
  CLI::App* figure = app.add_subcommand(
      "figure", "Residual curves for the built-in parameter sets");
  figure->add_option("--id", o.figure_id, "Figure id: 1 | 2");
  CLI::App* solve =
      app.add_subcommand("solve", "Solve one passage-time problem");
  CLI::App* validate =
      app.add_subcommand("validate", "Run the self-consistency checks");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Tabulate tau over a parameter axis at fixed frequency");
  sweep->add_option("--sweep-param", o.sweep_param,
                    "Axis: alpha (pt) | eps (dissipative-complex)");
  sweep->add_option("--sweep-min", o.sweep_min, "Axis start");
  sweep->add_option("--sweep-max", o.sweep_max, "Axis end");
  sweep->add_option("--sweep-n", o.sweep_n, "Axis sample count");
  sweep->add_option("--omega-re", o.omega_re, "Fixed frequency, real part");
  sweep->add_option("--omega-im", o.omega_im,
                    "Fixed frequency, imaginary part");
  sweep->add_option("--level-min", o.level_min, "Optional level axis start");
  sweep->add_option("--level-max", o.level_max, "Optional level axis end");
  sweep->add_option("--level-n", o.level_n, "Level axis sample count");

  for (CLI::App* sub : {table1, table2, figure, solve, validate, sweep}) {
    sub->fallthrough(true);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (table1->parsed()) return run_table1(o);
    if (table2->parsed()) return run_table2(o);
    if (figure->parsed()) return run_figure(o);
    if (solve->parsed()) return run_solve(o);
    if (validate->parsed()) return run_validate();
    if (sweep->parsed()) return run_sweep(o);
  } catch (const qbrach::NoRoot& e) {
    std::cerr << "error: no root — " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
