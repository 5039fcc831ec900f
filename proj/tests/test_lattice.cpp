#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pinwheel/lattice.hpp"

using namespace pinwheel;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long span) {
  std::uniform_int_distribution<long> d(-span, span);
  IntMatrix a(r, std::vector<BigInt>(c));
  for (auto& row : a) {
    for (auto& x : row) x = d(rng);
  }
  return a;
}

// Product of random elementary row operations: unimodular by construction.
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = identity_matrix(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> k(-3, 3);
  for (int s = 0; s < 12; ++s) {
    const auto i = idx(rng), j = idx(rng);
    if (i == j) {
      for (auto& x : u[i]) x = -x;
      continue;
    }
    const long m = k(rng);
    for (std::size_t c = 0; c < n; ++c) u[i][c] += m * u[j][c];
  }
  return u;
}

BigInt gcd_all(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) {
    BigInt a = abs(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

bool is_zero_product(const IntMatrix& a, const std::vector<BigInt>& x) {
  for (const auto& row : a) {
    BigInt s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += row[j] * x[j];
    if (s != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Smith form: small examples") {
  const auto i3 = smith_normal_form(identity_matrix(3));
  CHECK(i3.diagonal == std::vector<BigInt>{1, 1, 1});
  const IntMatrix a{{2, 4}, {6, 8}};
  const auto s = smith_normal_form(a);
  CHECK(s.diagonal == std::vector<BigInt>{2, 4});
  // d1 is the gcd of the entries and d1 * d2 = |det|
  CHECK(s.diagonal[0] == gcd_all({2, 4, 6, 8}));
  CHECK(s.diagonal[0] * s.diagonal[1] == abs(oracle::cofactor_det(a)));
  CHECK(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).rank() == 0);
}

TEST_CASE("Smith form on random matrices: U A V = D, unimodular, divisibility, minors") {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 60; ++n) {
    const std::size_t r = 2 + n % 3, c = 2 + (n / 3) % 4;
    const auto a = random_matrix(rng, r, c, 6);
    const auto s = smith_normal_form(a);
    CHECK(multiply(multiply(s.u, a), s.v) == s.d);
    CHECK(abs(oracle::cofactor_det(s.u)) == 1);
    CHECK(abs(oracle::cofactor_det(s.v)) == 1);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        if (i != j) CHECK(s.d[i][j] == 0);
      }
    }
    for (std::size_t k = 0; k < s.diagonal.size(); ++k) {
      CHECK(s.diagonal[k] > 0);
      if (k + 1 < s.diagonal.size()) CHECK(s.diagonal[k + 1] % s.diagonal[k] == 0);
    }
    if (!s.diagonal.empty()) CHECK(s.diagonal[0] == gcd_all([&] {
            std::vector<BigInt> all;
            for (const auto& row : a) all.insert(all.end(), row.begin(), row.end());
            return all;
          }()));
    if (r == c && oracle::cofactor_det(a) != 0) {
      BigInt prod = 1;
      for (const auto& d : s.diagonal) prod *= d;
      CHECK(prod == abs(oracle::cofactor_det(a)));
    }
  }
}

TEST_CASE("Hermite form: permutations, unimodular invariance, lattice equality") {
  CHECK(hermite_normal_form(IntMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}) == identity_matrix(3));
  std::mt19937_64 rng(23);
  for (int n = 0; n < 40; ++n) {
    const auto a = random_matrix(rng, 4, 5, 5);
    const auto h = hermite_normal_form(a);
    CHECK(hermite_normal_form(multiply(random_unimodular(rng, 4), a)) == h);
    CHECK(same_lattice(a, h));
    // doubling a row of an independent set changes the lattice
    auto b = a;
    for (auto& x : b[0]) x *= 2;
    if (smith_normal_form(a).rank() == 4) CHECK_FALSE(same_lattice(a, b));
    for (std::size_t i = 0; i < h.size(); ++i) {
      std::size_t p = 0;
      while (h[i][p] == 0) ++p;
      CHECK(h[i][p] > 0);
      for (std::size_t k = 0; k < i; ++k) CHECK((h[k][p] >= 0 && h[k][p] < h[i][p]));
    }
  }
}

TEST_CASE("integer kernel: annihilated, saturated, full rank") {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 30; ++n) {
    const auto a = random_matrix(rng, 2, 4, 3);
    const auto k = integer_kernel(a);
    CHECK(k.size() == 4 - smith_normal_form(a).rank());
    for (const auto& row : k) CHECK(is_zero_product(a, row));
    // every small integer solution lies in the lattice
    std::vector<BigInt> x(4);
    for (long v = 0; v < 625; ++v) {
      long w = v;
      for (auto& xi : x) xi = w % 5 - 2, w /= 5;
      if (!is_zero_product(a, x)) continue;
      auto extended = k;
      extended.push_back(x);
      CHECK(same_lattice(k, extended));
    }
  }
}

TEST_CASE("rational kernel and determinant") {
  std::mt19937_64 rng(41);
  for (int n = 0; n < 30; ++n) {
    const auto a = random_matrix(rng, 3, 5, 4);
    RatMatrix q(3, std::vector<Rational>(5));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        q[i][j] = Rational(a[i][j], 1 + static_cast<long>(j));
        q[i][j].canonicalize();
      }
    }
    const auto k = rational_kernel(q, 5);
    CHECK(k.size() == 5 - smith_normal_form(a).rank());
    for (const auto& x : k) {
      for (const auto& row : q) {
        Rational s = 0;
        for (std::size_t j = 0; j < 5; ++j) s += row[j] * x[j];
        CHECK(s == 0);
      }
    }
    const auto sq = random_matrix(rng, 4, 4, 9);
    CHECK(determinant(sq) == oracle::cofactor_det(sq));
  }
}
