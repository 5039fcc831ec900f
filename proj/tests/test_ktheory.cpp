#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pinwheel/ktheory.hpp"
#include "pinwheel/verify.hpp"

using namespace pinwheel;

namespace {

// The constraint rows written out directly from the 12 slot labels.
IntMatrix constraints_by_hand() {
  IntMatrix c(5, std::vector<BigInt>(12, 0));
  for (int i = 0; i < 5; ++i) {
    c[i][i] = 1;
    c[i][i + 6] = 1;
    c[i][i + 1] = -1;
    c[i][i + 7] = -1;
  }
  return c;
}

bool annihilated(const IntMatrix& c, const std::vector<BigInt>& x) {
  for (const auto& row : c) {
    BigInt s = 0;
    for (std::size_t j = 0; j < 12; ++j) s += row[j] * x[j];
    if (s != 0) return false;
  }
  return true;
}

bool pair_sums_equal(const std::vector<BigInt>& x) {
  for (int i = 1; i < 6; ++i) {
    if (x[i] + x[i + 6] != x[0] + x[6]) return false;
  }
  return true;
}

BoundaryMap wobbly() {
  return BoundaryMap::sampled(
      [](double t) { return std::polar(1.0, 2 * t + 0.3 * std::sin(4 * t)); },
      [](double t) {
        return std::complex<double>(0, 2 + 1.2 * std::cos(4 * t)) * std::polar(1.0, 2 * t + 0.3 * std::sin(4 * t));
      });
}

}  // namespace

TEST_CASE("constraint matrix and generators") {
  CHECK(constraint_matrix() == constraints_by_hand());
  const auto q = kernel_generators();
  REQUIRE(q.size() == 7);
  CHECK(q[0] == std::vector<BigInt>{1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0});
  CHECK(q[1] == std::vector<BigInt>{0, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0});
  CHECK(q[6] == std::vector<BigInt>{1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1});
  for (const auto& g : q) {
    CHECK(annihilated(constraints_by_hand(), g));
    CHECK(satisfies_membership_criterion(g));
  }
}

TEST_CASE("kernel lattice: rank 7 and equal to the span of the generators") {
  const auto r = verify_kernel_lattice();
  CHECK(r.rank == 7);
  CHECK(r.rank_ok);
  CHECK(r.equality);
  CHECK(r.ok());
  CHECK_FALSE(r.witness.has_value());
  CHECK(same_lattice(r.kernel_basis, kernel_generators()));
  CHECK(oracle::cofactor_det(multiply(r.generators_hnf, transpose(r.generators_hnf))) != 0);
}

TEST_CASE("criterion agrees with C x = 0 and every solution is a generator combination") {
  const auto c = constraints_by_hand();
  const auto q = kernel_generators();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-2, 2);
  std::size_t hits = 0;
  for (int n = 0; n < 1000; ++n) {
    std::vector<BigInt> x(12);
    for (auto& v : x) v = d(rng);
    if (n % 2) {
      // force pair sums equal so that half the samples are solutions
      for (int i = 1; i < 6; ++i) x[i + 6] = x[0] + x[6] - x[i];
    }
    const bool in = annihilated(c, x);
    CHECK(in == pair_sums_equal(x));
    CHECK(in == satisfies_membership_criterion(x));
    if (in) {
      ++hits;
      auto extended = q;
      extended.push_back(x);
      CHECK(same_lattice(q, extended));
    }
  }
  CHECK(hits >= 500);
  const auto t = criterion_equivalence(1000, 9);
  CHECK(t.trials == 1000);
  CHECK(t.disagreements == 0);
}

TEST_CASE("tampered generators produce witnesses") {
  auto bad = kernel_generators();
  bad[1][0] = 1;  // no longer in the kernel
  const auto r = verify_kernel_lattice(bad);
  CHECK_FALSE(r.ok());
  REQUIRE(r.witness.has_value());
  CHECK_FALSE(annihilated(constraints_by_hand(), *r.witness));

  auto doubled = kernel_generators();
  for (auto& v : doubled[0]) v *= 2;  // an index-2 sublattice
  const auto s = verify_kernel_lattice(doubled);
  CHECK(s.rank_ok);
  CHECK_FALSE(s.equality);
  REQUIRE(s.witness.has_value());
  CHECK(annihilated(constraints_by_hand(), *s.witness));
  auto extended = doubled;
  extended.push_back(*s.witness);
  CHECK_FALSE(same_lattice(doubled, extended));

  VerifyConfig cfg;
  cfg.generators_override = doubled;
  const std::vector<std::string> suite{"kernel"};
  const auto checks = run_verify(cfg, suite);
  REQUIRE_FALSE(checks.empty());
  bool failed = false;
  for (const auto& ch : checks) {
    CHECK(ch.suite == "kernel");
    failed = failed || (ch.status == Status::Fail && !ch.witness.is_null());
  }
  CHECK(failed);
}

TEST_CASE("winding index of the glued loop") {
  WindingLoop loop;
  CHECK(winding_index(loop) == 1);
  CHECK(sampled_winding_index(loop, 10000) == 1);
  loop.eps = BoundaryMap::monomial(6);
  CHECK(winding_index(loop) == 3);
  loop.eps = BoundaryMap::monomial(-2);
  CHECK(winding_index(loop) == -1);
  loop.eps = BoundaryMap::monomial(2);
  loop.reversed = true;
  CHECK(winding_index(loop) == -1);
  WindingLoop flat;
  flat.constant = true;
  CHECK(winding_index(flat) == 0);
}

TEST_CASE("winding integral against an independent trapezoid rule") {
  for (int m : {2, 6, -2, 10}) {
    WindingLoop loop;
    loop.eps = BoundaryMap::monomial(m);
    const auto w = winding_integral(loop, 10000);
    const double q = oracle::winding_by_quadrature(m, 10000);
    CHECK(w.residual < 1e-6);
    CHECK(w.rounded == m / 2);
    CHECK(std::abs(q - m / 2.0) < 1e-4);
    loop.reversed = true;
    CHECK(winding_integral(loop, 10000).rounded == -m / 2);
    CHECK(std::abs(oracle::winding_by_quadrature(m, 10000, true) + m / 2.0) < 1e-4);
  }
}

TEST_CASE("winding is additive under pointwise products of loops") {
  WindingLoop a, b;
  a.eps = BoundaryMap::monomial(2);
  b.eps = BoundaryMap::monomial(6);
  // argument increments of the product, accumulated in test code
  const std::size_t n = 20000;
  double turn = 0;
  std::complex<double> prev = a.at(0) * b.at(0);
  for (std::size_t j = 1; j <= n; ++j) {
    const double s = 4.0 * static_cast<double>(j % n) / n;
    const auto cur = a.at(s) * b.at(s);
    turn += std::arg(cur / prev);
    prev = cur;
  }
  const double product = turn / (2 * std::numbers::pi);
  CHECK(std::abs(product - static_cast<double>(winding_index(a) + winding_index(b))) < 1e-9);
}

TEST_CASE("smooth, discontinuous and undersampled boundary maps") {
  WindingLoop loop;
  loop.eps = wobbly();
  CHECK(winding_index(loop) == 1);
  CHECK(winding_integral(loop, 10000).residual < 1e-6);

  // eps(pi/2) = i, so the quarters do not join
  WindingLoop broken;
  broken.eps = BoundaryMap::sampled([](double t) { return std::polar(1.0, t); },
                                    [](double t) { return std::complex<double>(0, 1) * std::polar(1.0, t); });
  CHECK_THROWS_AS(winding_index(broken), WindingError);

  WindingLoop fast;
  fast.eps = BoundaryMap::sampled([](double t) { return std::polar(1.0, 42 * t); },
                                  [](double t) { return std::complex<double>(0, 42) * std::polar(1.0, 42 * t); });
  CHECK(sampled_winding_index(fast, 100000) == 21);
  CHECK_THROWS_AS(sampled_winding_index(fast, 40), WindingError);
}
