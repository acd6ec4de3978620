// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner: one PASS/FAIL line per suite, details indented below.
// Usage: acceptance [water_fixture_dir]

#include <fermicorr/cli/study.hpp>
#include <fermicorr/errors.hpp>
#include <fermicorr/integrals.hpp>
#include <fermicorr/limits.hpp>
#include <fermicorr/measures.hpp>
#include <fermicorr/rdm.hpp>
#include <fermicorr/solver.hpp>

#include "oracle.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace fc = fermicorr;
namespace ft = fermicorr::testing;

namespace {

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}

  void check(const std::string& what, bool ok, const std::string& detail = {}) {
    ok_ = ok_ && ok;
    lines_.push_back("    " + std::string(ok ? "ok   " : "BAD  ") + what +
                     (detail.empty() ? "" : "  [" + detail + "]"));
  }
  void near(const std::string& what, double actual, double expected, double tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.10g vs %.10g, tol %.1e", actual, expected, tol);
    check(what, std::isfinite(actual) && std::abs(actual - expected) <= tol, buf);
  }

  bool run(const std::function<void(Suite&)>& body, double limit_s) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(*this);
    } catch (const std::exception& e) {
      check("no exception", false, e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s < %.0f s", dt, limit_s);
    check("runtime", dt < limit_s, buf);
    std::printf("%s  %s (%.2f s)\n", ok_ ? "PASS" : "FAIL", name_.c_str(), dt);
    for (const auto& l : lines_) std::printf("%s\n", l.c_str());
    std::fflush(stdout);
    return ok_;
  }

 private:
  std::string name_;
  bool ok_ = true;
  std::vector<std::string> lines_;
};

void analytic(Suite& s) {
  const auto report = fc::cli::check_limits_analytic(1e-9);
  for (const auto& c : report.checks) s.near(c.name, c.actual, c.expected, c.tolerance);
}

struct Point {
  double r;
  std::vector<double> energies;
  fc::MeasureReport gs;
  fc::MeasureReport thermal;
};

// Index of the largest value; interior means not at either end of the grid.
std::size_t argmax(const std::vector<Point>& pts, const std::function<double(const Point&)>& f) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < pts.size(); ++k)
    if (f(pts[k]) > f(pts[best])) best = k;
  return best;
}

void fixtures(Suite& s, const std::filesystem::path& dir) {
  fc::cli::ScanConfig cfg;
  cfg.beta = 1000.0;
  cfg.n_roots = 13;
  std::vector<Point> pts;
  for (const auto& f : fc::cli::collect_inputs({dir})) {
    const auto res = fc::cli::solve_file(f, cfg);
    if (!res.tag) continue;
    pts.push_back({*res.tag, res.energies, res.states.at(0).report, res.states.at(1).report});
  }
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.r < b.r; });
  s.check("19-point grid", pts.size() == 19, std::to_string(pts.size()) + " files");
  if (pts.size() < 3) return;
  const auto interior = [&](std::size_t k) { return k > 0 && k + 1 < pts.size(); };

  const std::size_t emin = argmax(pts, [](const Point& p) { return -p.energies[0]; });
  s.near("E0 minimum position", pts[emin].r, 1.025, 0.2);

  const auto at4 = std::find_if(pts.begin(), pts.end(), [](const Point& p) { return p.r == 4.0; });
  s.check("R = 4 present", at4 != pts.end());
  if (at4 == pts.end()) return;
  const Point& far = *at4;
  s.near("E0(R=4)", far.energies[0], -74.737, 5e-3);
  s.check("twelve levels at R = 4 span < 1e-4", far.energies[11] - far.energies[0] < 1e-4,
          std::to_string(far.energies[11] - far.energies[0]));
  s.near("gap to level 13 at R = 4", far.energies[12] - far.energies[11], 0.095, 0.01);
  s.near("thermal S(p) at R = 4", *far.thermal.s_p, std::log2(12.0), 0.01);

  const std::size_t lmax = argmax(pts, [](const Point& p) { return p.gs.lambda_max_r2ud; });
  s.near("max lambda_max of rho2 updown", pts[lmax].gs.lambda_max_r2ud, 1.021, 0.005);
  s.near("lambda_max peak position", pts[lmax].r, 1.5, 0.2);

  const std::size_t n2 = argmax(pts, [](const Point& p) { return p.gs.n2_upup; });
  s.check("N2 upup maximum is interior", interior(n2));
  s.near("N2 upup peak position", pts[n2].r, 1.25, 0.2);

  const std::size_t ti = argmax(pts, [](const Point& p) { return p.thermal.i_updown; });
  s.check("thermal I updown maximum is interior", interior(ti));
  s.near("thermal I updown peak position", pts[ti].r, 2.2, 0.2);

  const auto limits = fc::cli::check_limits_file(dir / "h2o_sto3g_R4.00.fcidump", cfg, 2e-2);
  for (const auto& c : limits.checks) s.near("R = 4 " + c.name, c.actual, c.expected, c.tolerance);

  const auto& n = far.gs.normalized;
  s.check("rho1 has the highest normalized entropy at R = 4",
          *n.rdm1_up > *n.rho_up && *n.rdm1_up > *n.rdm2_upup && *n.rdm1_up > *n.rdm2_updown);
}

double i2(const fc::WaveFunction& wf) {
  return fc::mutual_information_2body(fc::one_body(wf), fc::two_body(wf));
}

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

void properties(Suite& s) {
  std::mt19937_64 rng(20260417);
  const std::vector<std::array<int, 3>> sectors = {
      {3, 1, 1}, {4, 2, 1}, {4, 2, 2}, {5, 2, 3}, {5, 3, 3}, {4, 3, 0}};

  double h_err = 0, r1_err = 0, r2_err = 0, pt_err = 0, trace_err = 0;
  for (const auto& [n, nu, nd] : sectors) {
    const auto b = fc::make_basis(n, nu, nd);
    const auto t = fc::model_table(fc::ModelKind::random_symmetric, n, 7 * n + nu);
    h_err = std::max(h_err, ft::max_abs_diff(fc::build_hamiltonian(*b, t), fc::oracle::hamiltonian_naive(*b, t)));
    std::vector<fc::EnsembleMember> m;
    for (int k = 0; k < 3; ++k) m.push_back({1.0 + k, ft::random_state(b, rng)});
    const fc::Ensemble e = fc::make_mixture(std::move(m));
    const fc::Rdm1 a1 = fc::one_body(e), o1 = fc::oracle::rdm1_naive(e);
    const fc::Rdm2 a2 = fc::two_body(e), o2 = fc::oracle::rdm2_naive(e);
    r1_err = std::max({r1_err, ft::max_abs_diff(a1.up, o1.up), ft::max_abs_diff(a1.down, o1.down)});
    r2_err = std::max({r2_err, ft::max_abs_diff(a2.updown, o2.updown)});
    if (nu >= 2) r2_err = std::max(r2_err, ft::max_abs_diff(a2.upup, o2.upup));
    if (nd >= 2) r2_err = std::max(r2_err, ft::max_abs_diff(a2.downdown, o2.downdown));
    const auto dp = fc::full_density_and_pt(e);
    pt_err = std::max(pt_err, ft::max_abs_diff(dp.rho_pt, fc::oracle::partial_transpose_naive(dp.rho, *b)));
    trace_err = std::max({trace_err, std::abs(a1.up.trace() - nu), std::abs(a2.updown.trace() - nu * nd)});
  }
  s.near("Hamiltonian vs oracle up to (5,3,3)", h_err, 0.0, 1e-10);
  s.near("rdm1 vs oracle", r1_err, 0.0, 1e-10);
  s.near("rdm2 vs oracle", r2_err, 0.0, 1e-10);
  s.near("partial transpose vs oracle", pt_err, 0.0, 1e-12);
  s.near("rdm traces", trace_err, 0.0, 1e-10);

  double wick = 0, psd = 0, i2e = 0, neg = 0, collapse = 0, sd_e1 = 0;
  for (const auto& [n, nu, nd] : sectors) {
    if (nd == 0) continue;
    const auto b = fc::make_basis(n, nu, nd);
    for (int k = 0; k < 3; ++k) {
      const auto sd = ft::random_sd(b, rng);
      const Eigen::MatrixXd m = fc::unrestricted_full(fc::two_body(sd));
      wick = std::max(wick, ft::max_abs_diff(fc::antisym_partial_transpose(m), m));
      sd_e1 = std::max(sd_e1, fc::report(sd).e1);
    }
    std::vector<fc::EnsembleMember> mix;
    for (int k = 0; k < 20; ++k) mix.push_back({1.0, ft::random_sd(b, rng)});
    const auto r2 = fc::two_body(fc::make_mixture(std::move(mix)));
    psd = std::min(psd, fc::spectrum(fc::antisym_partial_transpose(fc::unrestricted_full(r2))).minCoeff());
    for (int k = 0; k < 10; ++k) {
      const auto wf = ft::random_state(b, rng);
      const auto r = fc::report(wf);
      i2e = std::max(i2e, std::abs(r.i_updown - 2.0 * r.e_updown));
      neg = std::max(neg, std::abs(fc::negativity_pure(fc::schmidt(wf)) -
                                   fc::negativity_total(fc::full_density_and_pt(wf).rho_pt)));
    }
  }
  for (int n : {2, 3, 4, 5}) {
    const auto wf = ft::random_state(fc::make_basis(n, 1, 1), rng);
    const auto r = fc::report(wf);
    collapse = std::max({collapse, std::abs(r.i2_updown - r.i_updown), std::abs(r.i2_updown - r.e1),
                         std::abs(fc::negativity_2body_updown(fc::two_body(wf).updown) - r.n_updown)});
  }
  s.near("Wick identity on random real determinants", wick, 0.0, 1e-10);
  s.check("tp of determinant mixtures is positive semidefinite", psd > -1e-9, std::to_string(psd));
  s.near("E1 of random determinants", sd_e1, 0.0, 1e-9);
  s.near("pure states: I = 2E", i2e, 0.0, 1e-10);
  s.near("pure-state negativity: closed form vs eigenvalues", neg, 0.0, 1e-9);
  s.near("two-particle collapse identities", collapse, 0.0, 1e-10);

  // Properties of I2.
  double p1 = 0, p1_product = 0, p2 = 0, p3 = 0, p4 = 0, p4_n2 = 0;
  const auto b = fc::make_basis(4, 2, 2);
  for (int k = 0; k < 10; ++k) p1 = std::min(p1, i2(ft::random_state(b, rng)));
  for (int k = 0; k < 5; ++k) {
    const auto x = ft::random_state(fc::make_basis(4, 2, 0), rng);
    const auto y = ft::random_state(fc::make_basis(4, 0, 2), rng);
    p1_product = std::max(p1_product, std::abs(i2(fc::apply_to_vacuum(
                                          ft::state_creator(x, 0) * ft::state_creator(y, 0), b))));
  }
  for (const auto& [n, nu, nd] : std::vector<std::array<int, 3>>{{3, 1, 1}, {4, 2, 1}, {4, 2, 2}}) {
    const auto wf = ft::random_state(fc::make_basis(n, nu, nd), rng);
    const auto padded = fc::apply_to_vacuum(ft::state_creator(wf, 1) * fc::pair_updown(0, 0),
                                            fc::make_basis(n + 1, nu + 1, nd + 1));
    p2 = std::max(p2, std::abs(i2(padded) - i2(wf)));
  }
  {
    const auto x = ft::random_state(fc::make_basis(3, 1, 1), rng);
    const auto y = ft::random_state(fc::make_basis(3, 2, 1), rng);
    const auto xy = fc::apply_to_vacuum(ft::state_creator(x, 0) * ft::state_creator(y, 3), fc::make_basis(6, 3, 2));
    p3 = std::abs(i2(xy) - i2(x) - i2(y));
  }
  for (double p : {0.2, 0.5, 0.7}) {
    const auto small = fc::make_basis(3, 2, 2);
    const auto x = ft::random_sd(small, rng);
    const auto y = ft::random_sd(small, rng);
    const auto wf = fc::apply_to_vacuum(
        std::sqrt(p) * ft::state_creator(x, 0) + std::sqrt(1 - p) * ft::state_creator(y, 3), fc::make_basis(6, 2, 2));
    const auto r = fc::report(wf);
    p4 = std::max({p4, std::abs(r.i2_updown - 4.0 * h2(p)), std::abs(r.e_updown - h2(p))});
    p4_n2 = std::max(p4_n2, std::abs(r.n2_updown));
  }
  s.check("I2 non-negative", p1 > -1e-10, std::to_string(p1));
  s.near("I2 of product states", p1_product, 0.0, 1e-9);
  s.near("I2 unchanged by a doubly occupied core", p2, 0.0, 1e-9);
  s.near("I2 additive over disjoint orbital sets", p3, 0.0, 1e-9);
  s.near("I2 = N_up N_down S(p) for disjoint supports", p4, 0.0, 1e-9);
  s.near("N2 updown vanishes for disjoint supports", p4_n2, 0.0, 1e-9);

  // CAR on a small space: {c_a, c+_b} = delta_ab on every determinant.
  int car_bad = 0;
  const int n = 3;
  for (std::uint64_t up = 0; up < 8; ++up)
    for (std::uint64_t dn = 0; dn < 8; ++dn)
      for (int a = 0; a < 2 * n; ++a)
        for (int c = 0; c < 2 * n; ++c) {
          const fc::Determinant d{up, dn};
          const auto sa = a < n ? fc::Spin::up : fc::Spin::down;
          const auto sc = c < n ? fc::Spin::up : fc::Spin::down;
          const fc::FermionOp ca{fc::OpKind::annihilate, a % n, sa};
          const fc::FermionOp cc = fc::cre(c % n, sc);
          std::map<fc::Determinant, double> acc;
          for (const auto& ops : {std::vector<fc::FermionOp>{ca, cc}, std::vector<fc::FermionOp>{cc, ca}})
            if (auto r = fc::apply_ops(d, ops, n)) acc[r->det] += r->phase;
          double diag = 0.0;
          for (const auto& [det, v] : acc) {
            if (det == d) diag = v;
            else if (v != 0.0) ++car_bad;
          }
          if (diag != (a == c ? 1.0 : 0.0)) ++car_bad;
        }
  s.check("canonical anticommutation on n = 3", car_bad == 0, std::to_string(car_bad));
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : ft::water_dir();
  bool ok = true;
  ok &= Suite("analytic dissociation-limit suite").run(analytic, 10.0);
  ok &= Suite("fixture suite").run([&](Suite& s) { fixtures(s, dir); }, 120.0);
  ok &= Suite("property suite").run(properties, 60.0);
  std::printf("%s\n", ok ? "ALL PASS" : "SOME FAILED");
  return ok ? 0 : 1;
}
