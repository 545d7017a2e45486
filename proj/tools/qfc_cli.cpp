// qfc: command-line front end for the diamond-type telecom frequency
// converter model.  Every subcommand writes plot-ready CSV/JSON artifacts
// plus a run record that is sufficient to reproduce them.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfc/channel.hpp"
#include "qfc/coupling.hpp"
#include "qfc/errors.hpp"
#include "qfc/io.hpp"
#include "qfc/optimize.hpp"
#include "qfc/parallel.hpp"
#include "qfc/qubit.hpp"
#include "qfc/transfer.hpp"

namespace fs = std::filesystem;
using qfc::json;

namespace {

struct CommonOpts {
  std::string out_dir;
  int threads = 0;
};

fs::path out_path(const CommonOpts& c, const std::string& name) {
  fs::path dir = c.out_dir.empty() ? fs::path(".") : fs::path(c.out_dir);
  fs::create_directories(dir);
  return dir / name;
}

std::vector<double> parse_grid(const std::string& spec) {
  // "a:b:step" inclusive, or a single value
  std::vector<double> grid;
  const auto c1 = spec.find(':');
  if (c1 == std::string::npos) {
    grid.push_back(std::stod(spec));
    return grid;
  }
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw qfc::ConfigError("grid '" + spec + "': expected start:stop:step");
  const double a = std::stod(spec.substr(0, c1));
  const double b = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  const double h = std::stod(spec.substr(c2 + 1));
  if (h <= 0.0 || b < a) throw qfc::ConfigError("grid '" + spec + "': need stop >= start, step > 0");
  const int count = static_cast<int>(std::floor((b - a) / h + 1e-9)) + 1;
  for (int k = 0; k < count; ++k) grid.push_back(std::min(a + k * h, b));
  return grid;
}

qfc::InputState parse_input_state(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  std::vector<double> v;
  {
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
  }
  if (kind == "fock") {
    if (v.size() != 1) throw qfc::ConfigError("input 'fock:n'");
    return qfc::FockInput{static_cast<int>(v[0])};
  }
  if (kind == "coherent") {
    if (v.size() == 1) return qfc::CoherentInput{{v[0], 0.0}};
    if (v.size() == 2) return qfc::CoherentInput{{v[0], v[1]}};
    throw qfc::ConfigError("input 'coherent:re[,im]'");
  }
  if (kind == "squeezed") {
    if (v.size() != 4) throw qfc::ConfigError("input 'squeezed:alpha_re,alpha_im,r,phi'");
    return qfc::SqueezedCoherentInput{{v[0], v[1]}, v[2], v[3]};
  }
  if (kind == "file") {
    std::ifstream in(rest);
    if (!in) throw qfc::ConfigError("cannot open state file " + rest);
    return qfc::state_from_json(json::parse(in));
  }
  throw qfc::ConfigError("unknown input state '" + spec + "'");
}

std::string input_state_name(const qfc::InputState& s) {
  if (std::holds_alternative<qfc::FockInput>(s))
    return "fock:" + std::to_string(std::get<qfc::FockInput>(s).n);
  if (std::holds_alternative<qfc::CoherentInput>(s)) {
    const auto b = std::get<qfc::CoherentInput>(s).beta;
    return "coherent:" + qfc::format_double(b.real()) + "," + qfc::format_double(b.imag());
  }
  if (std::holds_alternative<qfc::SqueezedCoherentInput>(s)) {
    const auto& q = std::get<qfc::SqueezedCoherentInput>(s);
    return "squeezed:r=" + qfc::format_double(q.r) + ",phi=" + qfc::format_double(q.phi);
  }
  return "density-matrix";
}

// Point-parameter bundle shared by ce/coupling/optimize/sweep.
struct PointOpts {
  std::string band = "e1367";
  double od = 0.0;
  std::vector<double> params;  // delta_p, delta_c, delta, omega_c, omega_d
  double gamma_deph = 0.0;
  std::string convention = "linewidth";
  std::string scheme_file;
  double alpha_c_override = -1.0;
  double alpha_s_override = -1.0;

  qfc::OperatingPoint build() const {
    qfc::GammaConvention conv;
    if (convention == "linewidth") conv = qfc::GammaConvention::FineStructureWidths;
    else if (convention == "branch") conv = qfc::GammaConvention::BranchRates;
    else throw qfc::ConfigError("gamma convention must be 'linewidth' or 'branch'");

    qfc::OperatingPoint pt;
    if (!scheme_file.empty()) {
      std::ifstream in(scheme_file);
      if (!in) throw qfc::ConfigError("cannot open scheme file " + scheme_file);
      const qfc::SchemeOverrides ov = qfc::scheme_from_json(json::parse(in));
      pt.scheme = ov.scheme;
      pt.gamma = qfc::decoherence_rates(ov.scheme, gamma_deph + ov.gamma_deph, conv);
      pt.alpha_c_override = ov.alpha_c_override;
      pt.alpha_s_override = ov.alpha_s_override;
    } else {
      pt.scheme = qfc::build_scheme(qfc::parse_band(band));
      pt.gamma = qfc::decoherence_rates(pt.scheme, gamma_deph, conv);
    }
    if (alpha_c_override >= 0.0) pt.alpha_c_override = alpha_c_override;
    if (alpha_s_override >= 0.0) pt.alpha_s_override = alpha_s_override;
    pt.alpha = od;
    if (!params.empty()) {
      if (params.size() != 5)
        throw qfc::ConfigError("--params needs 5 values: delta_p,delta_c,delta,omega_c,omega_d");
      pt.delta_p = params[0];
      pt.delta_c = params[1];
      pt.delta = params[2];
      pt.omega_c0 = params[3];
      pt.omega_d = params[4];
    }
    return pt;
  }

  json config() const {
    json j{{"band", band},         {"od", od},
           {"params", params},     {"gamma_deph", gamma_deph},
           {"convention", convention}};
    if (!scheme_file.empty()) j["scheme_file"] = scheme_file;
    if (alpha_c_override >= 0.0) j["alpha_c_override"] = alpha_c_override;
    if (alpha_s_override >= 0.0) j["alpha_s_override"] = alpha_s_override;
    return j;
  }
};

void add_point_opts(CLI::App* cmd, PointOpts& p, bool with_params) {
  cmd->add_option("--band", p.band, "conversion scheme: e1367 or c1529");
  cmd->add_option("--od", p.od, "probe optical depth")->required();
  if (with_params)
    cmd->add_option("--params", p.params,
                    "delta_p,delta_c,delta,omega_c,omega_d (units of Gamma)")
        ->delimiter(',');
  cmd->add_option("--gamma-deph", p.gamma_deph, "extra uniform dephasing (Gamma)");
  cmd->add_option("--gamma-convention", p.convention, "linewidth | branch");
  cmd->add_option("--scheme-file", p.scheme_file, "JSON scheme override file");
  cmd->add_option("--alpha-c", p.alpha_c_override, "override coupling OD");
  cmd->add_option("--alpha-s", p.alpha_s_override, "override signal OD");
}

long long run_and_record(const CommonOpts& common, qfc::RunRecord rec,
                         const std::string& record_name,
                         const std::function<void(qfc::RunRecord&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body(rec);
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const fs::path p = out_path(common, record_name);
  rec.outputs.push_back(p.string());
  rec.write(p);
  return 0;
}

// ---- subcommands -----------------------------------------------------------

int cmd_ce(const CommonOpts& common, const PointOpts& popt, const std::string& method_tag,
           bool nonabsorbing, double tol) {
  const qfc::OperatingPoint pt = popt.build();
  qfc::PropagationControls controls;
  controls.tol = tol;
  const qfc::PropagationMethod method = qfc::parse_method(method_tag);
  const qfc::TransferMatrix t = nonabsorbing ? qfc::nonabsorbing_transfer(pt, method, controls)
                                             : qfc::transfer_matrix(pt, method, controls);
  const qfc::ConversionMetrics m = qfc::conversion_metrics(t);

  qfc::CsvWriter csv({"od", "eta_d", "eta_u", "T_d", "T_u", "delta_p", "delta_c", "delta",
                      "omega_c", "omega_d", "method"});
  csv.cell(pt.alpha).cell(m.eta_d).cell(m.eta_u).cell(m.T_d).cell(m.T_u)
     .cell(pt.delta_p).cell(pt.delta_c).cell(pt.delta).cell(pt.omega_c0).cell(pt.omega_d)
     .cell(qfc::method_name(method));
  csv.end_row();
  csv.write(out_path(common, "ce.csv"));

  std::cout << "eta_d=" << qfc::format_double(m.eta_d) << " T_d=" << qfc::format_double(m.T_d)
            << " eta_u=" << qfc::format_double(m.eta_u) << " T_u=" << qfc::format_double(m.T_u)
            << "\n";

  qfc::RunRecord rec;
  rec.command = "ce";
  rec.config = popt.config();
  rec.config["method"] = method_tag;
  rec.config["nonabsorbing"] = nonabsorbing;
  rec.config["tol"] = tol;
  rec.outputs.push_back(out_path(common, "ce.csv").string());
  rec.result_summary = {{"eta_d", m.eta_d}, {"T_d", m.T_d}, {"eta_u", m.eta_u}, {"T_u", m.T_u},
                        {"slices", t.slices}, {"refinement_error", t.refinement_error}};
  return run_and_record(common, std::move(rec), "ce_run.json", [](qfc::RunRecord&) {});
}

int cmd_optimize(const CommonOpts& common, PointOpts popt, const std::string& bounds_tag,
                 long long budget, int restarts, std::uint64_t rng_seed) {
  qfc::OperatingPoint pt = popt.build();

  qfc::OptProblem pr;
  pr.scheme = pt.scheme;
  pr.gamma = pt.gamma;
  pr.alpha = pt.alpha;
  pr.bounds = bounds_tag == "capped" ? qfc::BoundsMode::Capped50 : qfc::BoundsMode::Unbounded;
  if (bounds_tag != "capped" && bounds_tag != "unbounded")
    throw qfc::ConfigError("--bounds must be 'capped' or 'unbounded'");
  pr.eval_budget = static_cast<int>(budget);
  pr.restarts = restarts;
  pr.rng_seed = rng_seed;
  pr.threads = common.threads;
  if (!popt.params.empty())
    pr.seeds.push_back({popt.params[0], popt.params[1], popt.params[2], popt.params[3],
                        popt.params[4]});

  const qfc::OptResult res = qfc::maximize_ce(pr);
  const qfc::OperatingPoint best = res.point(pr);
  const qfc::ConversionMetrics m =
      qfc::conversion_metrics(qfc::transfer_matrix(best, qfc::PropagationMethod::ExactSliced));

  qfc::CsvWriter csv({"od", "eta_d", "eta_u", "T_d", "delta_p", "delta_c", "delta", "omega_c",
                      "omega_d", "branch", "method", "evals"});
  const auto row = [&](const qfc::Params& p, const std::string& branch) {
    csv.cell(res.od).cell(m.eta_d).cell(m.eta_u).cell(m.T_d).cell(p[0]).cell(p[1]).cell(p[2])
       .cell(p[3]).cell(p[4]).cell(branch).cell(std::string("exact-sliced")).cell(res.evals);
    csv.end_row();
  };
  row(res.best_params, "+");
  row(qfc::branch_mirror(res.best_params), "-");
  csv.write(out_path(common, "optimize.csv"));

  std::cout << "od=" << res.od << " eta_d=" << qfc::format_double(res.eta_d)
            << " evals=" << res.evals << (res.no_improvement ? " (no improvement over seed)" : "")
            << "\n";

  qfc::RunRecord rec;
  rec.command = "optimize";
  rec.config = popt.config();
  rec.config["bounds"] = bounds_tag;
  rec.config["budget"] = budget;
  rec.config["restarts"] = restarts;
  rec.config["rng_seed"] = rng_seed;
  rec.outputs.push_back(out_path(common, "optimize.csv").string());
  rec.result_summary = {{"eta_d", res.eta_d},
                        {"params", res.best_params},
                        {"evals", res.evals},
                        {"restarts_run", res.restarts_run},
                        {"degenerate", res.degenerate},
                        {"no_improvement", res.no_improvement},
                        {"wall_seconds", res.wall_seconds}};
  return run_and_record(common, std::move(rec), "optimize_run.json", [](qfc::RunRecord&) {});
}

int cmd_sweep(const CommonOpts& common, PointOpts popt, const std::string& bounds_tag,
              const std::string& grid_spec, long long budget, int restarts,
              std::uint64_t rng_seed, double warm_radius, bool overlay) {
  const std::vector<double> grid = parse_grid(grid_spec);
  qfc::OperatingPoint pt0 = popt.build();

  qfc::OptProblem pr;
  pr.scheme = pt0.scheme;
  pr.gamma = pt0.gamma;
  pr.bounds = bounds_tag == "capped" ? qfc::BoundsMode::Capped50 : qfc::BoundsMode::Unbounded;
  if (bounds_tag != "capped" && bounds_tag != "unbounded")
    throw qfc::ConfigError("--bounds must be 'capped' or 'unbounded'");
  pr.eval_budget = static_cast<int>(budget);
  pr.restarts = restarts;
  pr.rng_seed = rng_seed;
  pr.threads = common.threads;
  if (!popt.params.empty()) {
    pr.seeds.push_back({popt.params[0], popt.params[1], popt.params[2], popt.params[3],
                        popt.params[4]});
    pr.trust = qfc::TrustRegion(pr.seeds.front(), warm_radius);
  }
  qfc::SweepSettings settings;
  settings.warm_radius_frac = warm_radius;

  const std::vector<qfc::OptResult> curve = qfc::sweep_od(pr, grid, settings);

  const auto emit = [&](const std::string& name, qfc::PropagationMethod method,
                        bool absorbing) {
    qfc::CsvWriter csv({"od", "eta_d", "eta_u", "T_d", "delta_p", "delta_c", "delta", "omega_c",
                        "omega_d", "branch", "method", "evals"});
    for (const auto& r : curve) {
      qfc::OperatingPoint p = r.point(pr);
      const qfc::TransferMatrix t =
          absorbing ? qfc::transfer_matrix(p, method) : qfc::nonabsorbing_transfer(p, method);
      const qfc::ConversionMetrics m = qfc::conversion_metrics(t);
      for (const bool mirror : {false, true}) {
        const qfc::Params pp = mirror ? qfc::branch_mirror(r.best_params) : r.best_params;
        csv.cell(r.od).cell(m.eta_d).cell(m.eta_u).cell(m.T_d).cell(pp[0]).cell(pp[1])
           .cell(pp[2]).cell(pp[3]).cell(pp[4]).cell(std::string(mirror ? "-" : "+"))
           .cell(qfc::method_name(method)).cell(r.evals);
        csv.end_row();
      }
    }
    csv.write(out_path(common, name));
  };

  emit("sweep.csv", qfc::PropagationMethod::ExactSliced, true);
  if (overlay) {
    emit("sweep_magnus2.csv", qfc::PropagationMethod::Magnus2, true);
    // re-optimize the nonabsorbing model under the same protocol
    qfc::OptProblem na = pr;
    na.absorbing = false;
    const std::vector<qfc::OptResult> na_curve = qfc::sweep_od(na, grid, settings);
    qfc::CsvWriter csv({"od", "eta_d", "eta_u", "T_d", "delta_p", "delta_c", "delta", "omega_c",
                        "omega_d", "branch", "method", "evals"});
    for (const auto& r : na_curve) {
      qfc::OperatingPoint p = r.point(na);
      const qfc::ConversionMetrics m = qfc::conversion_metrics(
          qfc::nonabsorbing_transfer(p, qfc::PropagationMethod::ExactSliced));
      for (const bool mirror : {false, true}) {
        const qfc::Params pp = mirror ? qfc::branch_mirror(r.best_params) : r.best_params;
        csv.cell(r.od).cell(m.eta_d).cell(m.eta_u).cell(m.T_d).cell(pp[0]).cell(pp[1])
           .cell(pp[2]).cell(pp[3]).cell(pp[4]).cell(std::string(mirror ? "-" : "+"))
           .cell(qfc::method_name(qfc::PropagationMethod::ExactSliced)).cell(r.evals);
        csv.end_row();
      }
    }
    csv.write(out_path(common, "sweep_nonabsorbing.csv"));
  }

  for (const auto& r : curve)
    std::cout << "od=" << r.od << " eta_d=" << qfc::format_double(r.eta_d)
              << " evals=" << r.evals << "\n";

  qfc::RunRecord rec;
  rec.command = "sweep";
  rec.config = popt.config();
  rec.config["bounds"] = bounds_tag;
  rec.config["od_grid"] = grid_spec;
  rec.config["budget"] = budget;
  rec.config["restarts"] = restarts;
  rec.config["rng_seed"] = rng_seed;
  rec.config["warm_radius"] = warm_radius;
  rec.config["overlay"] = overlay;
  rec.outputs.push_back(out_path(common, "sweep.csv").string());
  json pts = json::array();
  for (const auto& r : curve) pts.push_back({{"od", r.od}, {"eta_d", r.eta_d}});
  rec.result_summary = {{"curve", pts}};
  return run_and_record(common, std::move(rec), "sweep_run.json", [](qfc::RunRecord&) {});
}

int cmd_coupling(const CommonOpts& common, const PointOpts& popt, int grid_size) {
  const qfc::OperatingPoint pt = popt.build();
  const qfc::CouplingProfileGrid g = qfc::coupling_profile_grid(pt, grid_size);

  qfc::CsvWriter csv({"zeta", "re_omega_c", "im_omega_c", "u"});
  for (std::size_t k = 0; k < g.zeta.size(); ++k) {
    csv.cell(g.zeta[k]).cell(g.omega_c[k].real()).cell(g.omega_c[k].imag()).cell(g.u[k]);
    csv.end_row();
  }
  csv.write(out_path(common, "coupling.csv"));

  qfc::RunRecord rec;
  rec.command = "coupling";
  rec.config = popt.config();
  rec.config["grid_size"] = grid_size;
  rec.outputs.push_back(out_path(common, "coupling.csv").string());
  rec.result_summary = {{"u_exit", g.u.back()}, {"u_entry", g.u.front()}};
  return run_and_record(common, std::move(rec), "coupling_run.json", [](qfc::RunRecord&) {});
}

int cmd_variances(const CommonOpts& common, const std::string& input_spec,
                  const std::string& eta_grid, bool uncorrected,
                  const std::vector<double>& coeff) {
  const qfc::InputState input = parse_input_state(input_spec);

  qfc::CsvWriter csv({"eta", "var_x", "var_y"});
  if (!coeff.empty()) {
    if (coeff.size() != 2) throw qfc::ConfigError("--coeff needs two values: re,im");
    const qfc::ChannelCoeff c{{coeff[0], coeff[1]}, !uncorrected};
    const qfc::QuadratureResult v = qfc::output_variances(input, c);
    csv.cell(c.eta()).cell(v.var_x).cell(v.var_y);
    csv.end_row();
  } else {
    for (double eta : parse_grid(eta_grid)) {
      const qfc::QuadratureResult v =
          qfc::output_variances(input, qfc::ChannelCoeff::from_eta(eta, !uncorrected));
      csv.cell(eta).cell(v.var_x).cell(v.var_y);
      csv.end_row();
    }
  }
  csv.write(out_path(common, "variances.csv"));

  qfc::RunRecord rec;
  rec.command = "variances";
  rec.config = {{"input", input_spec}, {"eta_grid", eta_grid}, {"uncorrected", uncorrected},
                {"coeff", coeff}};
  rec.outputs.push_back(out_path(common, "variances.csv").string());
  rec.result_summary = json::object();
  return run_and_record(common, std::move(rec), "variances_run.json", [](qfc::RunRecord&) {});
}

int cmd_convert(const CommonOpts& common, const std::string& input_spec, double eta,
                bool uncorrected, int nmax, bool fidelity_curve, const std::string& eta_grid,
                const std::vector<double>& coeff_arg) {
  qfc::RunRecord rec;
  rec.command = "convert";
  rec.config = {{"input", input_spec}, {"eta", eta}, {"uncorrected", uncorrected},
                {"nmax", nmax}, {"fidelity_curve", fidelity_curve}, {"eta_grid", eta_grid},
                {"coeff", coeff_arg}};

  if (fidelity_curve) {
    const std::vector<double> etas = parse_grid(eta_grid);
    qfc::CsvWriter csv({"eta", "F_fock1", "F_coh1", "F_coh10"});
    for (double e : etas) {
      const double f_fock = std::sqrt(e);  // sqrt(eta)^q at q = 1
      const double f_c1 = std::exp(-0.5 * 1.0 * std::pow(1.0 - std::sqrt(e), 2));
      const double f_c10 = std::exp(-0.5 * 10.0 * std::pow(1.0 - std::sqrt(e), 2));
      csv.cell(e).cell(f_fock).cell(f_c1).cell(f_c10);
      csv.end_row();
    }
    csv.write(out_path(common, "fidelity.csv"));
    rec.outputs.push_back(out_path(common, "fidelity.csv").string());
    rec.result_summary = {{"rows", etas.size()}};
    return run_and_record(common, std::move(rec), "convert_run.json", [](qfc::RunRecord&) {});
  }

  const qfc::InputState input = parse_input_state(input_spec);
  qfc::ChannelCoeff coeff = qfc::ChannelCoeff::from_eta(eta, !uncorrected);
  if (!coeff_arg.empty()) {
    if (coeff_arg.size() != 2) throw qfc::ConfigError("--coeff needs two values: re,im");
    coeff = qfc::ChannelCoeff{{coeff_arg[0], coeff_arg[1]}, !uncorrected};
  }

  qfc::DensityMatrix rho_in(0);
  if (std::holds_alternative<qfc::FockInput>(input)) {
    const int n = std::get<qfc::FockInput>(input).n;
    rho_in = qfc::DensityMatrix::fock(n, nmax > 0 ? std::max(nmax, n) : std::max(16, n));
  } else if (std::holds_alternative<qfc::CoherentInput>(input)) {
    const auto beta = std::get<qfc::CoherentInput>(input).beta;
    const int m = nmax > 0 ? nmax : qfc::convert_coherent(beta, coeff).nmax();
    rho_in = qfc::DensityMatrix::coherent(beta, m);
  } else if (std::holds_alternative<qfc::DensityMatrix>(input)) {
    rho_in = std::get<qfc::DensityMatrix>(input);
  } else {
    throw qfc::ConfigError("convert: squeezed inputs are supported by 'variances' only");
  }

  const qfc::DensityMatrix rho_out = qfc::convert_state(rho_in, coeff);
  const double fid = [&] {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_in.matrix());
    Eigen::VectorXcd psi = es.eigenvectors().col(rho_in.dim() - 1);
    return qfc::fidelity(rho_out, psi);
  }();

  std::ofstream out(out_path(common, "state.json"), std::ios::binary | std::ios::trunc);
  out << qfc::state_to_json(rho_out).dump(2) << '\n';
  rec.outputs.push_back(out_path(common, "state.json").string());

  std::cout << "trace=" << qfc::format_double(rho_out.trace_real())
            << " fidelity=" << qfc::format_double(fid) << "\ndiag=";
  for (int n = 0; n < rho_out.dim(); ++n)
    std::cout << (n ? "," : "") << qfc::format_double(rho_out(n, n).real());
  std::cout << "\n";

  rec.result_summary = {{"trace", rho_out.trace_real()}, {"fidelity_vs_input", fid}};
  return run_and_record(common, std::move(rec), "convert_run.json", [](qfc::RunRecord&) {});
}

int cmd_qubit(const CommonOpts& common, const std::string& encoding,
              const std::vector<double>& state, double eta_d, double eta_u, bool uncorrected) {
  if (state.size() != 4)
    throw qfc::ConfigError("--state needs 4 reals: re0,im0,re1,im1 of a pure qubit");
  Eigen::Vector2cd psi;
  psi << std::complex<double>(state[0], state[1]), std::complex<double>(state[2], state[3]);
  if (psi.norm() == 0.0) throw qfc::ConfigError("--state must be nonzero");
  psi.normalize();
  const Eigen::Matrix2cd rho = psi * psi.adjoint();

  const qfc::ChannelCoeff cd_ = qfc::ChannelCoeff::from_eta(eta_d, !uncorrected);
  const qfc::ChannelCoeff cu_ = qfc::ChannelCoeff::from_eta(eta_u, !uncorrected);

  json summary;
  Eigen::MatrixXcd rho_out;
  double leakage = 0.0;
  if (encoding == "single-rail") {
    const qfc::QubitChannelResult r = qfc::single_rail_channel(rho, cd_);
    rho_out = r.rho;
    leakage = r.leakage;
  } else if (encoding == "path") {
    const qfc::TwoModeState r = qfc::path_channel(rho, cd_, cu_);
    rho_out = r.rho;
    leakage = r.vacuum_population();
  } else if (encoding == "polarization") {
    const qfc::QubitChannelResult r = qfc::polarization_channel(rho, cd_, cu_);
    rho_out = r.rho;
    leakage = r.leakage;
  } else {
    throw qfc::ConfigError("--encoding must be single-rail, path or polarization");
  }

  std::ofstream out(out_path(common, "qubit.json"), std::ios::binary | std::ios::trunc);
  out << qfc::state_to_json(qfc::DensityMatrix(Eigen::MatrixXcd(rho_out))).dump(2) << '\n';
  std::cout << "leakage=" << qfc::format_double(leakage) << "\n";

  qfc::RunRecord rec;
  rec.command = "qubit";
  rec.config = {{"encoding", encoding}, {"state", state}, {"eta_d", eta_d},
                {"eta_u", eta_u}, {"uncorrected", uncorrected}};
  rec.outputs.push_back(out_path(common, "qubit.json").string());
  rec.result_summary = {{"leakage", leakage}};
  return run_and_record(common, std::move(rec), "qubit_run.json", [](qfc::RunRecord&) {});
}

int cmd_epr(const CommonOpts& common, const std::vector<double>& etas,
            const std::string& grid_spec) {
  qfc::RunRecord rec;
  rec.command = "epr";

  if (!grid_spec.empty()) {
    const std::vector<double> grid = parse_grid(grid_spec);
    qfc::CsvWriter csv({"eta_bar_a", "eta_bar_b", "F", "S"});
    for (double ea : grid) {
      for (double eb : grid) {
        if (ea == 0.0 && eb == 0.0) continue;
        const qfc::EprResult r = qfc::epr_postselect(ea, ea, eb, eb);
        csv.cell(r.eta_bar_a).cell(r.eta_bar_b).cell(r.fidelity).cell(r.bell_s);
        csv.end_row();
      }
    }
    csv.write(out_path(common, "epr.csv"));
    rec.config = {{"grid", grid_spec}};
    rec.outputs.push_back(out_path(common, "epr.csv").string());
    rec.result_summary = {{"rows", grid.size() * grid.size()}};
    return run_and_record(common, std::move(rec), "epr_run.json", [](qfc::RunRecord&) {});
  }

  if (etas.size() != 4)
    throw qfc::ConfigError("--etas needs 4 values: eta_a1,eta_a2,eta_b1,eta_b2");
  const qfc::EprResult r = qfc::epr_postselect(etas[0], etas[1], etas[2], etas[3]);
  qfc::CsvWriter csv({"eta_bar_a", "eta_bar_b", "F", "S", "P_c", "branch"});
  csv.cell(r.eta_bar_a).cell(r.eta_bar_b).cell(r.fidelity).cell(r.bell_s)
     .cell(r.coincidence_probability).cell(static_cast<long long>(r.branch));
  csv.end_row();
  csv.write(out_path(common, "epr.csv"));

  std::cout << "F=" << qfc::format_double(r.fidelity) << " S=" << qfc::format_double(r.bell_s)
            << " P_c=" << qfc::format_double(r.coincidence_probability) << "\n";

  rec.config = {{"etas", etas}};
  rec.outputs.push_back(out_path(common, "epr.csv").string());
  rec.result_summary = {{"F", r.fidelity}, {"S", r.bell_s}, {"P_c", r.coincidence_probability}};
  return run_and_record(common, std::move(rec), "epr_run.json", [](qfc::RunRecord&) {});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diamond-type telecom quantum frequency converter model"};
  app.require_subcommand(1);

  CommonOpts common;
  if (const char* env = std::getenv("QFC_OUT_DIR")) common.out_dir = env;
  app.add_option("--out-dir", common.out_dir, "output directory (env QFC_OUT_DIR)");
  app.add_option("--threads", common.threads, "worker threads (0 = all cores)");

  // ce
  PointOpts ce_p;
  std::string ce_method = "exact-sliced";
  bool ce_nonabs = false;
  double ce_tol = 1e-8;
  CLI::App* ce = app.add_subcommand("ce", "transfer matrix and CE at one operating point");
  add_point_opts(ce, ce_p, true);
  ce->add_option("--method", ce_method, "exact-sliced | magnus1 | magnus2");
  ce->add_flag("--nonabsorbing", ce_nonabs, "freeze the coupling field at its entry value");
  ce->add_option("--tol", ce_tol, "refinement tolerance");

  // optimize
  PointOpts opt_p;
  std::string opt_bounds = "unbounded";
  long long opt_budget = 20000;
  int opt_restarts = 6;
  std::uint64_t opt_seed = 0;
  CLI::App* opt = app.add_subcommand("optimize", "maximize CE at fixed OD");
  add_point_opts(opt, opt_p, true);
  opt->add_option("--bounds", opt_bounds, "capped | unbounded");
  opt->add_option("--budget", opt_budget, "total objective evaluations");
  opt->add_option("--restarts", opt_restarts, "Latin-hypercube restarts");
  opt->add_option("--rng-seed", opt_seed, "restart sampler seed");

  // sweep
  PointOpts sw_p;
  std::string sw_bounds = "unbounded", sw_grid;
  long long sw_budget = 6000;
  int sw_restarts = 2;
  std::uint64_t sw_seed = 0;
  double sw_radius = 0.10;
  bool sw_overlay = false;
  CLI::App* sw = app.add_subcommand("sweep", "warm-started optimized-CE curve over an OD grid");
  sw->add_option("--band", sw_p.band, "conversion scheme: e1367 or c1529");
  sw->add_option("--od", sw_grid, "OD grid start:stop:step")->required();
  sw->add_option("--params", sw_p.params, "seed point for the first OD")->delimiter(',');
  sw->add_option("--gamma-deph", sw_p.gamma_deph, "extra uniform dephasing (Gamma)");
  sw->add_option("--gamma-convention", sw_p.convention, "linewidth | branch");
  sw->add_option("--scheme-file", sw_p.scheme_file, "JSON scheme override file");
  sw->add_option("--bounds", sw_bounds, "capped | unbounded");
  sw->add_option("--budget", sw_budget, "objective evaluations per OD");
  sw->add_option("--restarts", sw_restarts, "fresh restarts per OD");
  sw->add_option("--rng-seed", sw_seed, "restart sampler seed");
  sw->add_option("--warm-radius", sw_radius, "continuation trust radius (fraction)");
  sw->add_flag("--overlay", sw_overlay, "also emit magnus2 and nonabsorbing-model curves");

  // coupling
  PointOpts cp_p;
  int cp_grid = 65;
  CLI::App* cp = app.add_subcommand("coupling", "coupling-field attenuation profile");
  add_point_opts(cp, cp_p, true);
  cp->add_option("--grid-size", cp_grid, "number of zeta samples");

  // variances
  std::string var_input = "fock:1", var_grid = "0:1:0.01";
  bool var_uncorr = false;
  std::vector<double> var_coeff;
  CLI::App* var = app.add_subcommand("variances", "output quadrature variances vs CE");
  var->add_option("--input", var_input, "fock:n | coherent:re[,im] | squeezed:re,im,r,phi | file:x.json");
  var->add_option("--eta-grid", var_grid, "CE grid start:stop:step");
  var->add_option("--coeff", var_coeff, "complex conversion coefficient re,im")->delimiter(',');
  var->add_flag("--uncorrected", var_uncorr, "skip the output phase shifter");

  // convert
  std::string cv_input = "fock:1", cv_grid = "0:1:0.01";
  double cv_eta = 1.0;
  bool cv_uncorr = false, cv_curve = false;
  int cv_nmax = -1;
  std::vector<double> cv_coeff;
  CLI::App* cv = app.add_subcommand("convert", "converted quantum state and fidelity");
  cv->add_option("--input", cv_input, "fock:n | coherent:re[,im] | file:x.json");
  cv->add_option("--eta", cv_eta, "conversion efficiency");
  cv->add_option("--coeff", cv_coeff, "complex conversion coefficient re,im")->delimiter(',');
  cv->add_option("--nmax", cv_nmax, "Fock truncation (default: auto)");
  cv->add_flag("--uncorrected", cv_uncorr, "skip the output phase shifter");
  cv->add_flag("--fidelity-curve", cv_curve, "emit fidelity-vs-CE curves instead");
  cv->add_option("--eta-grid", cv_grid, "CE grid for --fidelity-curve");

  // qubit
  std::string qb_enc = "single-rail";
  std::vector<double> qb_state{1.0, 0.0, 1.0, 0.0};
  double qb_eta_d = 1.0, qb_eta_u = 1.0;
  bool qb_uncorr = false;
  CLI::App* qb = app.add_subcommand("qubit", "encoded-qubit conversion maps");
  qb->add_option("--encoding", qb_enc, "single-rail | path | polarization");
  qb->add_option("--state", qb_state, "pure qubit re0,im0,re1,im1")->delimiter(',');
  qb->add_option("--eta-d", qb_eta_d, "down-path CE");
  qb->add_option("--eta-u", qb_eta_u, "up-path CE");
  qb->add_flag("--uncorrected", qb_uncorr, "keep channel phases");

  // epr
  std::vector<double> epr_etas;
  std::string epr_grid;
  CLI::App* epr = app.add_subcommand("epr", "entangled-pair conversion and CHSH");
  epr->add_option("--etas", epr_etas, "eta_a1,eta_a2,eta_b1,eta_b2")->delimiter(',');
  epr->add_option("--grid", epr_grid, "eta grid start:stop:step for the fidelity surface");

  try {
    app.parse(argc, argv);
    if (ce->parsed()) return cmd_ce(common, ce_p, ce_method, ce_nonabs, ce_tol);
    if (opt->parsed())
      return cmd_optimize(common, opt_p, opt_bounds, opt_budget, opt_restarts, opt_seed);
    if (sw->parsed())
      return cmd_sweep(common, sw_p, sw_bounds, sw_grid, sw_budget, sw_restarts, sw_seed,
                       sw_radius, sw_overlay);
    if (cp->parsed()) return cmd_coupling(common, cp_p, cp_grid);
    if (var->parsed()) return cmd_variances(common, var_input, var_grid, var_uncorr, var_coeff);
    if (cv->parsed())
      return cmd_convert(common, cv_input, cv_eta, cv_uncorr, cv_nmax, cv_curve, cv_grid,
                         cv_coeff);
    if (qb->parsed()) return cmd_qubit(common, qb_enc, qb_state, qb_eta_d, qb_eta_u, qb_uncorr);
    if (epr->parsed()) return cmd_epr(common, epr_etas, epr_grid);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const qfc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qfc::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
