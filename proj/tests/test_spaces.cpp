#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tnl/space.hpp"

using namespace tnl;

namespace {

Vec rand_vec(std::mt19937& rng, int n) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

Space hexagon() {
  Vec a(2), b(2), c(2);
  a << 1, 0;
  b << 0, 1;
  c << 1, 1;
  return build_space(
      SpaceDescriptor::polytope_vertices({a, -a, b, -b, c, -c}));
}

}  // namespace

TEST_CASE("build_space basics") {
  Space e2 = build_space(SpaceDescriptor::euclidean(2));
  CHECK(e2.dim() == 2);
  CHECK(dual_space(e2).kind() == SpaceKind::Euclidean);

  Space li2 = build_space(SpaceDescriptor::linf(2));
  auto verts = dual_ball_vertices(li2);
  REQUIRE(verts.has_value());
  CHECK(verts->size() == 4);  // +-e1, +-e2

  Space sum = build_space(SpaceDescriptor::direct_sum2(
      SpaceDescriptor::l1(5), SpaceDescriptor::euclidean(5)));
  CHECK(sum.dim() == 10);
}

TEST_CASE("invalid descriptors are rejected") {
  Vec a(2);
  a << 1, 0;
  CHECK_THROWS_AS(build_space(SpaceDescriptor::polytope_vertices({a})),
                  InvalidDescriptor);  // not negation-closed
  Vec b(2);
  b << -1, 0;
  CHECK_THROWS_AS(build_space(SpaceDescriptor::polytope_vertices({a, b})),
                  InvalidDescriptor);  // degenerate (no span)
}

TEST_CASE("vector norms") {
  Space l12 = build_space(SpaceDescriptor::l1(2));
  Vec v(2);
  v << 1, -1;
  CHECK(vector_norm(l12, v) == doctest::Approx(2.0));

  Space sum = build_space(SpaceDescriptor::direct_sum2(
      SpaceDescriptor::l1(2), SpaceDescriptor::euclidean(2)));
  Vec w(4);
  w << 1, 0, 3, 4;
  CHECK(vector_norm(sum, w) == doctest::Approx(std::sqrt(26.0)));

  Vec u(2);
  u << 1, 1;
  CHECK(vector_norm(hexagon(), u) == doctest::Approx(1.0));
}

TEST_CASE("dual space mapping") {
  CHECK(dual_space(build_space(SpaceDescriptor::linf(3))).kind() ==
        SpaceKind::L1);
  CHECK(dual_space(build_space(SpaceDescriptor::euclidean(4))).kind() ==
        SpaceKind::Euclidean);
  Space sum = build_space(SpaceDescriptor::direct_sum2(
      SpaceDescriptor::l1(2), SpaceDescriptor::euclidean(2)));
  Space dual = dual_space(sum);
  CHECK(dual.descriptor().left->kind == SpaceKind::Linf);
  CHECK(dual.descriptor().right->kind == SpaceKind::Euclidean);

  // Pairing check: sup over dual ball of <f,v> equals the primal norm.
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    Vec v = rand_vec(rng, 4);
    double nrm = vector_norm(sum, v);
    SupportPoint sp = support_point(sum, v);
    CHECK(sp.value == doctest::Approx(nrm));
    CHECK(vector_norm(dual, sp.functional) <= 1.0 + 1e-9);
    CHECK(sp.functional.dot(v) == doctest::Approx(nrm).epsilon(1e-9));
  }
}

TEST_CASE("dual ball vertices per kind") {
  auto li = dual_ball_vertices(build_space(SpaceDescriptor::linf(2)));
  REQUIRE(li);
  CHECK(li->size() == 4);
  auto l1v = dual_ball_vertices(build_space(SpaceDescriptor::l1(3)));
  REQUIRE(l1v);
  CHECK(l1v->size() == 8);
  CHECK(!dual_ball_vertices(build_space(SpaceDescriptor::euclidean(2))));
  CHECK_THROWS_AS(
      dual_ball_vertices(build_space(SpaceDescriptor::l1(20)), 1 << 16),
      CombinatorialBlowup);
}

TEST_CASE("polytope-by-vertices dual enumeration") {
  // Hexagon dual ball: vertices of {f : |<f,v>| <= 1 for hexagon vertices}.
  auto verts = dual_ball_vertices(hexagon());
  REQUIRE(verts);
  CHECK(verts->size() == 6);
  // Bipolar check: norm = max pairing against dual vertices.
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    Vec v = rand_vec(rng, 2);
    double nrm = vector_norm(hexagon(), v);
    double sup = 0;
    for (const auto& f : *verts) sup = std::max(sup, std::abs(f.dot(v)));
    CHECK(sup == doctest::Approx(nrm).epsilon(1e-9));
  }
}

TEST_CASE("euclidean net size and covering") {
  Space e2 = build_space(SpaceDescriptor::euclidean(2));
  double delta = 0.1;
  auto net = dual_ball_net(e2, delta);
  int min_count = (int)std::ceil(2 * M_PI / (2 * std::asin(0.05)));
  CHECK((int)net.size() >= min_count);
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    Vec f = rand_vec(rng, 2).normalized();
    double best = 2;
    for (const auto& g : net) best = std::min(best, (f - g).norm());
    CHECK(best <= delta + 1e-12);
  }
}

TEST_CASE("net covering in three dimensions") {
  Space e3 = build_space(SpaceDescriptor::euclidean(3));
  double delta = 0.25;
  auto net = dual_ball_net(e3, delta);
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    Vec f = rand_vec(rng, 3).normalized();
    double best = 2;
    for (const auto& g : net) best = std::min(best, (f - g).norm());
    CHECK(best <= delta + 1e-12);
  }
}

TEST_CASE("polytopal net ignores delta") {
  auto net = dual_ball_net(build_space(SpaceDescriptor::linf(2)), 0.5);
  CHECK(net.size() == 4);
}

TEST_CASE("complex nets") {
  Space li2c =
      build_space(SpaceDescriptor::linf(2, ScalarKind::Complex));
  auto net = dual_ball_net_complex(li2c, 0.1);
  // phase grid times 2 basis vectors
  CHECK(net.size() >= 2 * 60);
  for (const auto& w : net) {
    int nonzero = 0;
    for (int i = 0; i < 2; ++i)
      if (std::abs(w[i]) > 1e-12) ++nonzero;
    CHECK(nonzero == 1);
  }
  // Pairing sup against a fixed vector approximates the l1 dual norm = linf.
  CVec v(2);
  v << Complex(0.3, 0.4), Complex(1.0, -0.2);
  double sup = 0;
  for (const auto& w : net) sup = std::max(sup, std::abs((w.transpose() * v)(0)));
  CHECK(sup == doctest::Approx(vector_norm(li2c, v)).epsilon(1e-3));
}

TEST_CASE("norm axioms on random points") {
  std::mt19937 rng(13);
  std::vector<Space> spaces = {
      build_space(SpaceDescriptor::euclidean(3)),
      build_space(SpaceDescriptor::l1(3)),
      build_space(SpaceDescriptor::linf(3)),
      hexagon(),
      build_space(SpaceDescriptor::direct_sum2(SpaceDescriptor::l1(2),
                                               SpaceDescriptor::euclidean(2))),
  };
  for (const auto& s : spaces) {
    for (int t = 0; t < 25; ++t) {
      Vec v = rand_vec(rng, s.dim());
      Vec w = rand_vec(rng, s.dim());
      double nv = vector_norm(s, v), nw = vector_norm(s, w);
      CHECK(vector_norm(s, Vec(v + w)) <= nv + nw + 1e-12);
      CHECK(vector_norm(s, Vec(2.5 * v)) == doctest::Approx(2.5 * nv));
      CHECK(vector_norm(s, Vec(Vec::Zero(s.dim()))) == 0.0);
    }
  }
}

TEST_CASE("double dual evaluates the same norm") {
  std::mt19937 rng(17);
  std::vector<Space> spaces = {
      build_space(SpaceDescriptor::l1(3)),
      build_space(SpaceDescriptor::linf(3)),
      hexagon(),
      build_space(SpaceDescriptor::direct_sum2(SpaceDescriptor::linf(2),
                                               SpaceDescriptor::euclidean(3))),
  };
  for (const auto& s : spaces) {
    Space dd = dual_space(dual_space(s));
    for (int t = 0; t < 100; ++t) {
      Vec v = rand_vec(rng, s.dim());
      CHECK(vector_norm(dd, v) ==
            doctest::Approx(vector_norm(s, v)).epsilon(1e-9));
    }
  }
}

TEST_CASE("operator norms") {
  Space e3 = build_space(SpaceDescriptor::euclidean(3));
  OperatorMap id3(e3, e3, Mat(Mat::Identity(3, 3)));
  CHECK(operator_norm(id3).estimate.lower == doctest::Approx(1.0));

  Space li2 = build_space(SpaceDescriptor::linf(2));
  Space l12 = build_space(SpaceDescriptor::l1(2));
  Mat h(2, 2);
  h << 1, 1, 1, -1;
  OperatorMap phi(li2, l12, h);
  auto on = operator_norm(phi);
  CHECK(on.estimate.lower == doctest::Approx(2.0));
  CHECK(on.estimate.exact());
  // Witness reproduces the bound.
  CHECK(vector_norm(l12, Vec(h * on.witness)) ==
        doctest::Approx(on.estimate.lower));

  OperatorMap zero(li2, l12, Mat(Mat::Zero(2, 2)));
  CHECK(operator_norm(zero).estimate.upper == 0.0);
}

TEST_CASE("operator norm is submultiplicative on random triples") {
  std::mt19937 rng(23);
  Space li2 = build_space(SpaceDescriptor::linf(2));
  Space l13 = build_space(SpaceDescriptor::l1(3));
  Space e2 = build_space(SpaceDescriptor::euclidean(2));
  for (int t = 0; t < 10; ++t) {
    Mat a(3, 2), b(2, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) {
        a(i, j) = rand_vec(rng, 1)[0];
        b(j, i) = rand_vec(rng, 1)[0];
      }
    OperatorMap f(li2, l13, a);   // linf(2) -> l1(3)
    OperatorMap g(l13, e2, b);    // l1(3) -> euclidean(2)
    OperatorMap fg = compose(g, f);
    double nf = operator_norm(f).estimate.lower;
    double ng = operator_norm(g).estimate.lower;
    double nfg = operator_norm(fg).estimate.lower;
    CHECK(nfg <= nf * ng + 1e-9);
  }
}

TEST_CASE("complex operator norm on circled balls") {
  Space li2c = build_space(SpaceDescriptor::linf(2, ScalarKind::Complex));
  Space l12c = build_space(SpaceDescriptor::l1(2, ScalarKind::Complex));
  CMat m(2, 2);
  m << Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(-0.5, 0);
  OperatorMap phi(li2c, l12c, m);
  auto on = operator_norm(phi, {1e-3, 1 << 16});
  // sup over (1, e^{i t}) of |m00 + m01 e^{it}| + |m10 + m11 e^{it}| = 1 here
  // wait: entries 0.5: |0.5 + 0.5 e| + |0.5 - 0.5 e| maximized at e = i:
  // sqrt(0.5)*2 = sqrt(2).
  CHECK(on.estimate.lower == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
  CHECK(on.estimate.upper >= on.estimate.lower);
}

TEST_CASE("adjoint swaps and dualizes") {
  Space li2 = build_space(SpaceDescriptor::linf(2));
  Space e2 = build_space(SpaceDescriptor::euclidean(2));
  Mat m(2, 2);
  m << 1, 2, 3, 4;
  OperatorMap phi(li2, e2, m);
  OperatorMap phis = adjoint(phi);
  CHECK(phis.domain.kind() == SpaceKind::Euclidean);
  CHECK(phis.codomain.kind() == SpaceKind::L1);
  CHECK(phis.real()(0, 1) == 3);
}

TEST_CASE("injective product space evaluates the eps norm") {
  Space li2 = build_space(SpaceDescriptor::linf(2));
  Space prod = injective_product_space(li2, li2);
  CHECK(prod.dim() == 4);
  // eps-norm of the identity matrix seen in linf (x)_eps linf: max |z_ij|=1.
  Vec z(4);
  z << 1, 0, 0, 1;
  CHECK(vector_norm(prod, z) == doctest::Approx(1.0));
  Vec w(4);
  w << 1, 2, 3, 4;
  CHECK(vector_norm(prod, w) == doctest::Approx(4.0));
}
