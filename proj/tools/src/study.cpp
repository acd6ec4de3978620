// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#include <fermicorr/cli/study.hpp>
#include <fermicorr/errors.hpp>
#include <fermicorr/integrals.hpp>
#include <fermicorr/limits.hpp>
#include <fermicorr/rdm.hpp>
#include <fermicorr/solver.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <regex>
#include <sstream>

namespace fermicorr::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string StateSelection::label() const {
  switch (kind) {
    case StateKind::gs:
      return "gs";
    case StateKind::thermal:
      return "thermal";
    case StateKind::eigenstate:
      return "eig:" + std::to_string(index);
  }
  return {};
}

StateSelection parse_state(const std::string& text) {
  if (text == "gs") return {StateKind::gs, 0};
  if (text == "thermal") return {StateKind::thermal, 0};
  static const std::regex eig(R"(eig:(\d+))");
  std::smatch m;
  if (std::regex_match(text, m, eig)) return {StateKind::eigenstate, std::stoi(m[1].str())};
  throw DomainError("unknown state selection '" + text + "' (expected gs, thermal or eig:<k>)");
}

void ScanConfig::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive and finite");
  if (n_roots < 1) throw DomainError("n_roots must be at least 1");
  if (states.empty()) throw DomainError("no states selected");
  if (!(weight_cutoff >= 0.0 && weight_cutoff < 1.0))
    throw DomainError("weight cutoff must lie in [0, 1)");
  if (n_up.has_value() != n_down.has_value())
    throw DomainError("sector override needs both n_up and n_down");
}

std::optional<double> geometry_tag(const fs::path& file) {
  static const std::regex pattern(R"(_R([0-9]+(?:\.[0-9]*)?)\.fcidump$)");
  const std::string name = file.filename().string();
  std::smatch m;
  if (!std::regex_search(name, m, pattern)) return std::nullopt;
  return std::stod(m[1].str());
}

std::vector<fs::path> collect_inputs(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      for (const auto& e : fs::directory_iterator(in))
        if (e.is_regular_file() && e.path().extension() == ".fcidump") files.push_back(e.path());
    } else {
      files.push_back(in);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

namespace {

std::string fnv1a64(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    h ^= static_cast<unsigned char>(*it);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class F>
auto with_file_context(const fs::path& file, F&& f) {
  const std::string prefix = file.string() + ": ";
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(prefix + e.what(), e.line());
  } catch (const CapacityError& e) {
    throw CapacityError(prefix + e.what(), e.requested(), e.limit());
  } catch (const DomainError& e) {
    throw DomainError(prefix + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(prefix + e.what());
  }
}

}  // namespace

SolveResult solve_file(const fs::path& file, const ScanConfig& config) {
  config.validate();
  return with_file_context(file, [&] {
    const IntegralTable table = parse_fcidump_file(file);
    SolveResult r;
    r.file = file;
    r.tag = config.tag ? config.tag : geometry_tag(file);
    r.fnv1a64 = fnv1a64(file);
    r.n_spatial = table.n_spatial();
    r.n_up = config.n_up.value_or(table.n_up());
    r.n_down = config.n_down.value_or(table.n_down());
    const BasisPtr basis = make_basis(r.n_spatial, r.n_up, r.n_down);
    r.dimension = basis->size();

    const Eigenpairs pairs = eigensolve(build_hamiltonian(*basis, table, config.dense_limit));
    const auto n_e = std::min<Eigen::Index>(config.n_roots, pairs.values.size());
    r.energies.assign(pairs.values.data(), pairs.values.data() + n_e);

    for (const auto& sel : config.states) {
      switch (sel.kind) {
        case StateKind::gs:
          r.states.push_back({sel, report(eigenstate(pairs, 0, basis), sel.label(), config.dense_limit)});
          break;
        case StateKind::eigenstate:
          r.states.push_back({sel, report(eigenstate(pairs, static_cast<std::size_t>(sel.index), basis),
                                          sel.label(), config.dense_limit)});
          break;
        case StateKind::thermal:
          r.states.push_back(
              {sel, report(thermal_ensemble(pairs, basis, config.beta, config.weight_cutoff),
                           sel.label(), config.dense_limit)});
          break;
      }
    }
    return r;
  });
}

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json report_json(const MeasureReport& r) {
  ordered_json j;
  j["label"] = r.tag;
  j["pure"] = r.pure;
  j["E_updown"] = r.e_updown;
  j["S_rho_up"] = r.s_rho_up;
  j["S_rho_down"] = r.s_rho_down;
  j["S_rho"] = r.s_full;
  j["I_updown"] = r.i_updown;
  j["E1"] = r.e1;
  j["S_rdm1_up"] = r.s_rdm1_up;
  j["S_rdm1_down"] = r.s_rdm1_down;
  j["E2"] = r.e2;
  j["S_rdm2_upup"] = r.s_rdm2_upup;
  j["S_rdm2_downdown"] = r.s_rdm2_downdown;
  j["S_rdm2_updown"] = r.s_rdm2_updown;
  j["I2_updown"] = r.i2_updown;
  j["N_updown"] = r.n_updown;
  j["N2_updown"] = r.n2_updown;
  j["N2_upup"] = r.n2_upup;
  j["N2_downdown"] = r.n2_downdown;
  j["lambda_max_r2ud"] = r.lambda_max_r2ud;
  j["beta"] = opt(r.beta);
  j["S_p"] = opt(r.s_p);
  j["S_q"] = opt(r.s_q);
  j["weights"] = r.weights;
  j["schmidt_rank"] = r.schmidt_rank;
  j["schmidt_values"] = r.schmidt_values;
  j["normalized_entropies"] = {{"rho_up", opt(r.normalized.rho_up)},
                               {"rdm1_up", opt(r.normalized.rdm1_up)},
                               {"rdm1_down", opt(r.normalized.rdm1_down)},
                               {"rdm2_upup", opt(r.normalized.rdm2_upup)},
                               {"rdm2_downdown", opt(r.normalized.rdm2_downdown)},
                               {"rdm2_updown", opt(r.normalized.rdm2_updown)}};
  j["spectra"] = {{"rho_up", to_vector(r.spectra.rho_up)},
                  {"rho_down", to_vector(r.spectra.rho_down)},
                  {"rdm1_up", to_vector(r.spectra.rdm1_up)},
                  {"rdm1_down", to_vector(r.spectra.rdm1_down)},
                  {"rdm2_upup", to_vector(r.spectra.rdm2_upup)},
                  {"rdm2_downdown", to_vector(r.spectra.rdm2_downdown)},
                  {"rdm2_updown", to_vector(r.spectra.rdm2_updown)}};
  return j;
}

}  // namespace

std::string to_json(const SolveResult& result, const ScanConfig& config) {
  ordered_json doc;
  doc["schema"] = 1;
  doc["file"] = result.file.string();
  doc["fnv1a64"] = result.fnv1a64;
  doc["tag"] = opt(result.tag);
  ordered_json cfg;
  cfg["beta"] = config.beta;
  cfg["n_roots"] = config.n_roots;
  std::vector<std::string> states;
  for (const auto& s : config.states) states.push_back(s.label());
  cfg["states"] = states;
  cfg["weight_cutoff"] = config.weight_cutoff;
  cfg["dense_limit"] = config.dense_limit;
  cfg["sector_override"] = config.n_up ? ordered_json::array({*config.n_up, *config.n_down})
                                       : ordered_json(nullptr);
  doc["config"] = cfg;
  doc["sector"] = {{"n_spatial", result.n_spatial},
                   {"n_up", result.n_up},
                   {"n_down", result.n_down},
                   {"dimension", result.dimension}};
  doc["energies"] = result.energies;
  ordered_json reports = ordered_json::array();
  for (const auto& s : result.states) reports.push_back(report_json(s.report));
  doc["states"] = reports;
  return doc.dump(2) + "\n";
}

std::vector<std::string> csv_columns(int n_roots) {
  std::vector<std::string> c{"R", "state"};
  for (int k = 0; k < n_roots; ++k) c.push_back("E" + std::to_string(k));
  for (const char* name :
       {"E_updown", "I_updown", "I2_updown", "N_updown", "N2_updown", "N2_upup", "E_1body", "E_2body",
        "lambda_max_r2ud", "S_p", "S_q", "Snorm_rho_up", "Snorm_rdm1_up", "Snorm_rdm2_upup",
        "Snorm_rdm2_updown", "file", "error"})
    c.emplace_back(name);
  return c;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string{}; }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

struct Row {
  std::optional<double> r;
  std::size_t order;
  std::vector<std::string> cells;
};

}  // namespace

std::string scan_csv(const ScanConfig& config) {
  config.validate();
  const auto files = collect_inputs(config.inputs);
  if (files.empty()) throw DomainError("no FCIDUMP inputs found");
  const auto columns = csv_columns(config.n_roots);

  std::vector<Row> rows;
  for (std::size_t f = 0; f < files.size(); ++f) {
    ScanConfig one = config;
    if (files.size() > 1) one.tag.reset();
    const std::optional<double> tag = one.tag ? one.tag : geometry_tag(files[f]);
    try {
      const SolveResult res = solve_file(files[f], one);
      for (std::size_t s = 0; s < res.states.size(); ++s) {
        const MeasureReport& m = res.states[s].report;
        std::vector<std::string> c{fmt(tag), m.tag};
        for (int k = 0; k < config.n_roots; ++k)
          c.push_back(k < static_cast<int>(res.energies.size()) ? fmt(res.energies[k]) : "");
        for (double v : {m.e_updown, m.i_updown, m.i2_updown, m.n_updown, m.n2_updown, m.n2_upup,
                         m.e1, m.e2, m.lambda_max_r2ud})
          c.push_back(fmt(v));
        c.push_back(fmt(m.s_p));
        c.push_back(fmt(m.s_q));
        c.push_back(fmt(m.normalized.rho_up));
        c.push_back(fmt(m.normalized.rdm1_up));
        c.push_back(fmt(m.normalized.rdm2_upup));
        c.push_back(fmt(m.normalized.rdm2_updown));
        c.push_back(csv_quote(files[f].string()));
        c.emplace_back();
        rows.push_back({tag, f * 64 + s, std::move(c)});
      }
    } catch (const std::exception& e) {
      std::vector<std::string> c(columns.size());
      c[0] = fmt(tag);
      c[columns.size() - 2] = csv_quote(files[f].string());
      c[columns.size() - 1] = csv_quote(e.what());
      rows.push_back({tag, f * 64, std::move(c)});
    }
  }
  // Untagged files go last, in input order.
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.r.has_value() != b.r.has_value()) return a.r.has_value();
    if (a.r && *a.r != *b.r) return *a.r < *b.r;
    return a.order < b.order;
  });

  std::ostringstream os;
  for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << columns[k];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.cells.size(); ++k) os << (k ? "," : "") << row.cells[k];
    os << '\n';
  }
  return os.str();
}

std::string scan_json(const ScanConfig& config) {
  config.validate();
  const auto files = collect_inputs(config.inputs);
  if (files.empty()) throw DomainError("no FCIDUMP inputs found");
  struct Doc {
    std::optional<double> r;
    ordered_json body;
  };
  std::vector<Doc> docs;
  for (const auto& f : files) {
    ScanConfig one = config;
    if (files.size() > 1) one.tag.reset();
    const std::optional<double> tag = one.tag ? one.tag : geometry_tag(f);
    try {
      docs.push_back({tag, ordered_json::parse(to_json(solve_file(f, one), one))});
    } catch (const std::exception& e) {
      docs.push_back({tag, {{"file", f.string()}, {"tag", opt(tag)}, {"error", e.what()}}});
    }
  }
  std::stable_sort(docs.begin(), docs.end(), [](const Doc& a, const Doc& b) {
    if (a.r.has_value() != b.r.has_value()) return a.r.has_value();
    return a.r && *a.r < *b.r;
  });
  ordered_json out = ordered_json::array();
  for (auto& d : docs) out.push_back(std::move(d.body));
  return out.dump(2) + "\n";
}

bool Check::pass() const { return std::abs(actual - expected) <= tolerance; }

bool LimitsReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

std::string LimitsReport::table() const {
  std::ostringstream os;
  os << std::left << std::setw(6) << "" << std::setw(40) << "check" << std::right << std::setw(18)
     << "expected" << std::setw(18) << "actual" << std::setw(12) << "diff" << '\n';
  for (const auto& c : checks) {
    os << std::left << std::setw(6) << (c.pass() ? "PASS" : "FAIL") << std::setw(40) << c.name
       << std::right << std::setprecision(10) << std::setw(18) << c.expected << std::setw(18)
       << c.actual << std::setprecision(3) << std::setw(12) << std::abs(c.actual - c.expected)
       << '\n';
  }
  return os.str();
}

namespace {

// Largest elementwise deviation of two ascending spectra; +inf on size mismatch.
double max_deviation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) return INFINITY;
  return a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
}

void spectra_checks(LimitsReport& out, const std::string& prefix, const MeasureReport& r,
                    const ReferenceSpectra& ref, double tol) {
  const auto add = [&](const char* name, const Eigen::VectorXd& got, const ReferenceRow& row) {
    out.checks.push_back({prefix + " " + name + " spectrum (max dev)", 0.0,
                          max_deviation(got, expand(row, static_cast<std::size_t>(got.size()))),
                          tol});
  };
  add("rho_up", r.spectra.rho_up, ref.rho_up);
  add("rho_down", r.spectra.rho_down, ref.rho_up);
  add("rdm1_up", r.spectra.rdm1_up, ref.rdm1_up);
  add("rdm1_down", r.spectra.rdm1_down, ref.rdm1_up);
  add("rdm2_upup", r.spectra.rdm2_upup, ref.rdm2_upup);
  add("rdm2_downdown", r.spectra.rdm2_downdown, ref.rdm2_upup);
  add("rdm2_updown", r.spectra.rdm2_updown, ref.rdm2_updown);
}

void scalar_checks(LimitsReport& out, const std::string& prefix, const MeasureReport& r,
                   const ReferenceScalars& ref, double tol) {
  out.checks.push_back({prefix + " N_updown", ref.n_updown, r.n_updown, tol});
  out.checks.push_back({prefix + " N2_updown", ref.n2_updown, r.n2_updown, tol});
  out.checks.push_back({prefix + " N2_upup", ref.n2_upup, r.n2_upup, tol});
  out.checks.push_back({prefix + " N2_downdown", ref.n2_upup, r.n2_downdown, tol});
  out.checks.push_back({prefix + " I_updown", ref.i_updown, r.i_updown, tol});
  out.checks.push_back({prefix + " I2_updown", ref.i2_updown, r.i2_updown, tol});
}

void negative_pt_checks(LimitsReport& out, const std::string& prefix, const Ensemble& state,
                        const ReferenceRow& ref, double tol) {
  const Eigen::VectorXd ev = spectrum(full_density_and_pt(state).rho_pt);
  std::vector<double> neg;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev(k) < -tol) neg.push_back(ev(k));
  std::vector<double> w;
  for (const auto& e : ref) w.insert(w.end(), static_cast<std::size_t>(e.count), e.value());
  std::sort(w.begin(), w.end());
  out.checks.push_back({prefix + " negative PT eigenvalue count", static_cast<double>(w.size()),
                        static_cast<double>(neg.size()), 0.0});
  double dev = 0.0;
  if (neg.size() == w.size())
    for (std::size_t k = 0; k < w.size(); ++k) dev = std::max(dev, std::abs(neg[k] - w[k]));
  else
    dev = INFINITY;
  out.checks.push_back({prefix + " negative PT eigenvalues (max dev)", 0.0, dev, tol});
}

}  // namespace

LimitsReport check_limits_analytic(double tolerance) {
  const AsymptoticSpec& ref = dissociation_reference();
  const BasisPtr basis = make_basis(7, 5, 5);
  LimitsReport out;

  const WaveFunction gs = asymptotic_gs(basis);
  const MeasureReport g = report(gs, "gs");
  spectra_checks(out, "gs", g, ref.gs, tolerance);
  scalar_checks(out, "gs", g, ref.gs_scalars, tolerance);
  negative_pt_checks(out, "gs", as_ensemble(gs), ref.gs_scalars.pt_negative, tolerance);
  out.checks.push_back({"gs E_updown", 0.5 * ref.gs_scalars.i_updown, g.e_updown, tolerance});
  out.checks.push_back({"gs Schmidt rank", 6.0, static_cast<double>(g.schmidt_rank), 0.0});
  {
    Eigen::VectorXd sq(static_cast<Eigen::Index>(g.schmidt_values.size()));
    for (std::size_t k = 0; k < g.schmidt_values.size(); ++k)
      sq(static_cast<Eigen::Index>(k)) = g.schmidt_values[k] * g.schmidt_values[k];
    std::sort(sq.data(), sq.data() + sq.size());
    out.checks.push_back({"gs Schmidt values squared (max dev)", 0.0,
                          max_deviation(sq, expand(ref.gs_schmidt_squared, static_cast<std::size_t>(sq.size()))),
                          tolerance});
  }
  {
    // Active (orbitals 3..6) part of the up-down block.
    const Rdm2 r2 = two_body(gs);
    Eigen::MatrixXd act(16, 16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            act(i * 4 + j, k * 4 + l) = r2.updown((i + 3) * 7 + (j + 3), (k + 3) * 7 + (l + 3));
    out.checks.push_back({"gs active up-down pair spectrum (max dev)", 0.0,
                          max_deviation(spectrum(act), expand(ref.gs_pair_sigma_squared, 16)),
                          tolerance});
  }
  const WaveFunction from_band = asymptotic_gs_from_band(basis);
  out.checks.push_back({"gs equals band superposition (|overlap|)", 1.0,
                        std::abs(gs.coeffs.dot(from_band.coeffs)), tolerance});

  const Ensemble thermal = asymptotic_thermal(basis);
  const MeasureReport t = report(thermal, "thermal");
  spectra_checks(out, "thermal", t, ref.thermal, tolerance);
  scalar_checks(out, "thermal", t, ref.thermal_scalars, tolerance);
  negative_pt_checks(out, "thermal", thermal, ref.thermal_scalars.pt_negative, tolerance);
  out.checks.push_back({"thermal S(p)", std::log2(12.0), t.s_p.value_or(NAN), tolerance});
  return out;
}

LimitsReport check_limits_file(const fs::path& file, const ScanConfig& config, double tolerance) {
  ScanConfig cfg = config;
  cfg.states = {{StateKind::gs, 0}, {StateKind::thermal, 0}};
  const SolveResult res = solve_file(file, cfg);
  if (res.n_spatial != 7 || res.n_up != 5 || res.n_down != 5)
    throw DomainError(file.string() + ": dissociation-limit checks need sector (7, 5, 5)");
  const AsymptoticSpec& ref = dissociation_reference();
  LimitsReport out;
  spectra_checks(out, "gs", res.states[0].report, ref.gs, tolerance);
  spectra_checks(out, "thermal", res.states[1].report, ref.thermal, tolerance);
  out.checks.push_back(
      {"thermal S(p)", std::log2(12.0), res.states[1].report.s_p.value_or(NAN), tolerance});
  return out;
}

}  // namespace fermicorr::cli
