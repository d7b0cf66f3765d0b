#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tnl/lp.hpp"
#include "tnl/sdp.hpp"

using namespace tnl;

TEST_CASE("lp: max x subject to x <= 1") {
  LpProblem p;
  p.sense = LpSense::Maximize;
  p.objective = Vec::Ones(1);
  p.rows = Mat::Ones(1, 1);
  p.relations = {RowRelation::LessEqual};
  p.rhs = Vec::Ones(1);
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(1.0));
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.complementarity(p) < 1e-9);
}

TEST_CASE("lp: infeasible system x <= 0, x >= 1") {
  LpProblem p;
  p.sense = LpSense::Maximize;
  p.objective = Vec::Zero(1);
  p.rows = Mat::Ones(2, 1);
  p.relations = {RowRelation::LessEqual, RowRelation::GreaterEqual};
  p.rhs = Vec(2);
  p.rhs << 0.0, 1.0;
  CHECK(solve_lp(p).status == LpStatus::Infeasible);
}

TEST_CASE("lp: unbounded") {
  LpProblem p;
  p.sense = LpSense::Maximize;
  p.objective = Vec::Ones(1);
  p.rows = Mat::Ones(1, 1);
  p.relations = {RowRelation::GreaterEqual};
  p.rhs = Vec::Zero(1);
  CHECK(solve_lp(p).status == LpStatus::Unbounded);
}

TEST_CASE("lp: gauge of (1,1) in the hexagon {+-(1,0),+-(0,1),+-(1,1)}") {
  // min |c|_1 reproducing the target; the target is itself a vertex.
  std::vector<Vec> pts;
  Vec a(2), b(2), c(2);
  a << 1, 0;
  b << 0, 1;
  c << 1, 1;
  for (const Vec& v : {a, b, c}) {
    pts.push_back(v);
    pts.push_back(-v);
  }
  LpProblem p;
  p.sense = LpSense::Minimize;
  const int m = (int)pts.size();
  p.objective = Vec::Ones(m);
  p.rows = Mat::Zero(2, m);
  for (int j = 0; j < m; ++j) p.rows.col(j) = pts[j];
  p.relations = {RowRelation::Equal, RowRelation::Equal};
  p.rhs = c;
  p.nonnegative.assign(m, true);
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lp: duals satisfy strong duality on a small problem") {
  // min c'x s.t. Ax = b, x >= 0 picked with a known optimum.
  LpProblem p;
  p.sense = LpSense::Minimize;
  p.objective = Vec(3);
  p.objective << 1.0, 2.0, 3.0;
  p.rows = Mat(2, 3);
  p.rows << 1, 1, 0, 0, 1, 1;
  p.relations = {RowRelation::Equal, RowRelation::Equal};
  p.rhs = Vec(2);
  p.rhs << 1.0, 1.0;
  p.nonnegative.assign(3, true);
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(2.0));  // x = (0,1,0)
  CHECK(s.duals.dot(p.rhs) == doctest::Approx(s.objective).epsilon(1e-9));
}

TEST_CASE("sdp: min t with t*I >= diag(1,2)") {
  LmiProblem lmi;
  int t = lmi.add_variables(1);
  Mat f0 = Mat::Zero(2, 2);
  f0(0, 0) = -1;
  f0(1, 1) = -2;
  lmi.add_lmi_block({t}, f0, {Mat::Identity(2, 2)});
  lmi.set_objective_max({{t, -1.0}});  // max -t = min t
  auto sol = lmi.solve();
  REQUIRE(sol.status == SdpStatus::Optimal);
  CHECK(-sol.objective == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(sol.duality_gap < 1e-6);
}

TEST_CASE("sdp: random eigenvalue problems hit lambda_max to 1e-7") {
  for (int trial = 0; trial < 6; ++trial) {
    int n = 2 + trial % 4;
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g(i, j) = std::sin(0.7 * (i + 1) * (j + 2) * (trial + 1));
    Mat a = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
    double lmax = es.eigenvalues().maxCoeff();

    LmiProblem lmi;
    int t = lmi.add_variables(1);
    lmi.add_lmi_block({t}, Mat(-a), {Mat::Identity(n, n)});
    lmi.set_objective_max({{t, -1.0}});
    auto sol = lmi.solve();
    REQUIRE(sol.status == SdpStatus::Optimal);
    CHECK(-sol.objective == doctest::Approx(lmax).epsilon(1e-7));
  }
}

TEST_CASE("sdp: entry form reproduces a trace-constrained optimum") {
  // max <I, X> s.t. diag entries sum to 1 per variable, X >= 0: value 1.
  EntrySdpProblem prob;
  int x = prob.add_psd_variable(3);
  std::vector<EntrySdpProblem::Term> diag;
  for (int i = 0; i < 3; ++i) diag.push_back({x, i, i, 1.0});
  prob.add_constraint(diag, RowRelation::Equal, 1.0);
  prob.set_objective(LpSense::Maximize, diag);
  auto sol = prob.solve();
  REQUIRE(sol.status == SdpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-7));
  Eigen::SelfAdjointEigenSolver<Mat> es(sol.values[0], Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-9);
}

TEST_CASE("sdp: off-diagonal maximization bounded by psd structure") {
  // max 2*X01 s.t. X00 <= 1, X11 <= 1, X >= 0: optimum 2 at X = ones.
  EntrySdpProblem prob;
  int x = prob.add_psd_variable(2);
  prob.add_constraint({{x, 0, 0, 1.0}}, RowRelation::LessEqual, 1.0);
  prob.add_constraint({{x, 1, 1, 1.0}}, RowRelation::LessEqual, 1.0);
  prob.set_objective(LpSense::Maximize, {{x, 0, 1, 2.0}});
  auto sol = prob.solve();
  REQUIRE(sol.status == SdpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("sdp: reproducible run-to-run") {
  LmiProblem lmi;
  int t = lmi.add_variables(1);
  Mat a(3, 3);
  a << 1, 0.3, 0.1, 0.3, 2, 0.2, 0.1, 0.2, 0.5;
  lmi.add_lmi_block({t}, Mat(-a), {Mat::Identity(3, 3)});
  lmi.set_objective_max({{t, -1.0}});
  auto s1 = lmi.solve();
  auto s2 = lmi.solve();
  CHECK(s1.objective == s2.objective);  // bit-for-bit
  CHECK(s1.iterations == s2.iterations);
}

TEST_CASE("sdp: infeasible problem yields an improving ray") {
  // <X, I> = -1 with X >= 0 is infeasible (trace cannot be negative).
  SdpStandardForm sf;
  sf.block_dims = {2};
  sf.objective.push_back({0, Mat::Identity(2, 2)});
  sf.rows.push_back({{0, Mat::Identity(2, 2)}});
  sf.rhs = Vec::Constant(1, -1.0);
  SdpResult r = solve_sdp(sf);
  CHECK(r.status == SdpStatus::Infeasible);
  CHECK(r.ray_y.size() == 1);
}
