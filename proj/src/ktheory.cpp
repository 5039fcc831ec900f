#include "pinwheel/ktheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pinwheel {

namespace {

constexpr std::size_t kRank = 12;
constexpr double kHalfPi = std::numbers::pi / 2;

std::vector<BigInt> apply_constraints(const IntMatrix& c, std::span<const BigInt> x) {
  std::vector<BigInt> y(c.size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += c[i][j] * x[j];
  }
  return y;
}

bool all_zero(std::span<const BigInt> v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

bool in_lattice(const IntMatrix& hnf, const std::vector<BigInt>& v) {
  IntMatrix extended = hnf;
  extended.push_back(v);
  return hermite_normal_form(extended) == hnf;
}

std::string vector_text(std::span<const BigInt> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

}  // namespace

IntMatrix constraint_matrix() {
  IntMatrix c(5, std::vector<BigInt>(kRank, 0));
  for (std::size_t i = 0; i < 5; ++i) {
    c[i][i] += 1;
    c[i][i + 6] += 1;
    c[i][i + 1] -= 1;
    c[i][i + 7] -= 1;
  }
  return c;
}

IntMatrix kernel_generators() {
  IntMatrix q(7, std::vector<BigInt>(kRank, 0));
  for (std::size_t j = 0; j < 6; ++j) q[0][j] = 1;
  // q_{k+2}: ones on the first six slots except slot k, plus slot k + 6
  for (std::size_t k = 0; k < 6; ++k) {
    for (std::size_t j = 0; j < 6; ++j) q[k + 1][j] = j == k ? 0 : 1;
    q[k + 1][k + 6] = 1;
  }
  return q;
}

bool satisfies_membership_criterion(std::span<const BigInt> x) {
  if (x.size() != kRank) return false;
  const BigInt s = x[0] + x[6];
  for (std::size_t i = 1; i < 6; ++i) {
    if (x[i] + x[i + 6] != s) return false;
  }
  return true;
}

bool KernelLatticeReport::ok() const {
  if (!rank_ok || !equality) return false;
  for (bool b : generator_in_kernel) {
    if (!b) return false;
  }
  return true;
}

KernelLatticeReport verify_kernel_lattice(std::optional<IntMatrix> generators) {
  const IntMatrix c = constraint_matrix();
  const IntMatrix q = generators ? *generators : kernel_generators();
  KernelLatticeReport r;
  r.kernel_basis = integer_kernel(c);
  r.rank = r.kernel_basis.size();
  r.rank_ok = r.rank == 7;
  r.kernel_hnf = hermite_normal_form(r.kernel_basis);
  r.generators_hnf = hermite_normal_form(q);
  r.equality = r.kernel_hnf == r.generators_hnf;

  for (const auto& v : q) {
    const auto image = apply_constraints(c, v);
    r.generator_in_kernel.push_back(all_zero(image));
    if (!r.generator_in_kernel.back() && !r.witness) {
      r.witness = v;
      r.witness_note = "C * q = " + vector_text(image) + " is not zero";
    }
  }
  if (!r.equality && !r.witness) {
    for (const auto& v : r.kernel_basis) {
      if (!in_lattice(r.generators_hnf, v)) {
        r.witness = v;
        r.witness_note = "kernel vector outside the span of the generators";
        break;
      }
    }
  }
  if (!r.equality && !r.witness) {
    for (const auto& v : q) {
      if (!in_lattice(r.kernel_hnf, v)) {
        r.witness = v;
        r.witness_note = "generator outside the kernel lattice";
        break;
      }
    }
  }
  return r;
}

CriterionTrial criterion_equivalence(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-5, 5), entry(-3, 3), coin(0, 1);
  const IntMatrix c = constraint_matrix();
  const IntMatrix q = kernel_generators();
  CriterionTrial t;
  for (std::size_t n = 0; n < trials; ++n) {
    std::vector<BigInt> x(kRank, 0);
    if (coin(rng)) {
      for (const auto& g : q) {
        const int k = coeff(rng);
        for (std::size_t j = 0; j < kRank; ++j) x[j] += k * g[j];
      }
      // sometimes knock one entry off the lattice
      if (coin(rng)) x[std::uniform_int_distribution<std::size_t>(0, kRank - 1)(rng)] += 1;
    } else {
      for (auto& v : x) v = entry(rng);
    }
    const bool kernel = all_zero(apply_constraints(c, x));
    t.in_kernel += kernel;
    t.disagreements += kernel != satisfies_membership_criterion(x);
    ++t.trials;
  }
  return t;
}

BoundaryMap BoundaryMap::monomial(int m) {
  BoundaryMap e;
  e.power = m;
  e.value = [m](double t) { return std::polar(1.0, m * t); };
  e.derivative = [m](double t) { return std::complex<double>(0, m) * std::polar(1.0, m * t); };
  return e;
}

BoundaryMap BoundaryMap::sampled(std::function<std::complex<double>(double)> value,
                                 std::function<std::complex<double>(double)> derivative) {
  BoundaryMap e;
  e.value = std::move(value);
  e.derivative = std::move(derivative);
  return e;
}

std::complex<double> BoundaryMap::operator()(double theta) const { return value(theta); }
std::complex<double> BoundaryMap::d(double theta) const { return derivative(theta); }

std::complex<double> WindingLoop::at(double s) const {
  if (constant) return 1.0;
  if (reversed) s = 4.0 - s;
  s = std::clamp(s, 0.0, 4.0);
  const int quarter = std::min(3, static_cast<int>(s));
  const double theta = (s - quarter) * kHalfPi;
  switch (quarter) {
    case 0: return eps(theta);
    case 1: return -1.0;
    case 2: return -eps(theta);
    default: return 1.0;
  }
}

std::complex<double> WindingLoop::derivative(double s) const {
  if (constant) return 0.0;
  const double sign = reversed ? -1.0 : 1.0;
  if (reversed) s = 4.0 - s;
  s = std::clamp(s, 0.0, 4.0);
  const int quarter = std::min(3, static_cast<int>(s));
  const double theta = (s - quarter) * kHalfPi;
  switch (quarter) {
    case 0: return sign * kHalfPi * eps.d(theta);
    case 2: return -sign * kHalfPi * eps.d(theta);
    default: return 0.0;
  }
}

namespace {

// eps(1) = 1 and eps(i) = -1 glue the four arcs; |eps| = 1 keeps f on the circle.
void check_joints(const WindingLoop& loop, std::size_t samples) {
  if (loop.constant) return;
  constexpr double tol = 1e-9;
  if (std::abs(loop.eps(0.0) - 1.0) > tol) throw WindingError("eps(1) != 1: loop is not continuous");
  if (std::abs(loop.eps(kHalfPi) + 1.0) > tol) throw WindingError("eps(i) != -1: loop is not continuous");
  for (std::size_t j = 0; j <= samples; ++j) {
    const double t = kHalfPi * static_cast<double>(j) / static_cast<double>(samples);
    if (std::abs(std::abs(loop.eps(t)) - 1.0) > tol) throw WindingError("|eps| != 1 on the loop");
  }
}

}  // namespace

long sampled_winding_index(const WindingLoop& loop, std::size_t samples) {
  if (samples < 8) throw WindingError("too few samples");
  check_joints(loop, samples / 4);
  double total = 0;
  std::complex<double> prev = loop.at(0.0);
  for (std::size_t j = 1; j <= samples; ++j) {
    const std::complex<double> cur = loop.at(4.0 * static_cast<double>(j) / static_cast<double>(samples));
    const double step = std::arg(cur / prev);
    // the derivative predicts the true turn; principal arg alone would alias
    const double mid = 4.0 * (static_cast<double>(j) - 0.5) / static_cast<double>(samples);
    const double predicted = (std::conj(loop.at(mid)) * loop.derivative(mid)).imag() * 4.0 / static_cast<double>(samples);
    if (std::abs(step) >= std::numbers::pi - 1e-12 || std::abs(predicted) >= std::numbers::pi ||
        std::abs(predicted - step) > std::numbers::pi / 2)
      throw WindingError("sampling too coarse: argument step reaches pi");
    total += step;
    prev = cur;
  }
  const double turns = total / (2 * std::numbers::pi);
  const long l = std::lround(turns);
  if (std::abs(turns - static_cast<double>(l)) > 1e-6) throw WindingError("loop does not close");
  return l;
}

long winding_index(const WindingLoop& loop, std::size_t samples) {
  if (loop.constant) return 0;
  if (loop.eps.power) {
    const int m = *loop.eps.power;
    // eps(i) = i^m must be -1
    if (((m % 4) + 4) % 4 != 2) throw WindingError("z^m with m != 2 mod 4 breaks the loop at the quarter joints");
    // arcs 1 and 3 each turn by m * pi / 2, arcs 2 and 4 are constant
    const long l = m / 2;
    return loop.reversed ? -l : l;
  }
  return sampled_winding_index(loop, samples);
}

WindingIntegral winding_integral(const WindingLoop& loop, std::size_t samples) {
  const double h = 4.0 / static_cast<double>(samples);
  std::complex<double> sum = 0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double s = (static_cast<double>(j) + 0.5) * h;
    sum += std::conj(loop.at(s)) * loop.derivative(s);
  }
  WindingIntegral w;
  w.value = (sum * h / std::complex<double>(0, 2 * std::numbers::pi)).real();
  w.rounded = std::lround(w.value);
  w.residual = std::abs(w.value - static_cast<double>(w.rounded));
  return w;
}

PairingValue trace_pairing(const SymmetricChain& chain, const WindingLoop& loop, const PairingInputs& in) {
  PairingValue p;
  p.center_key = chain.key;
  p.star_key = chain.star_key;
  p.l = winding_index(loop);
  p.frequency = patch_frequency(chain.patch, chain.anchor, in.tables).value;
  p.value = p.frequency * p.l;
  p.module_exponent = module_exponent(p.value);
  if (sgn(in.module_generator) != 0) {
    const Rational ratio = p.value / in.module_generator;
    p.in_computed_module = ratio.get_den() == 1;
  }
  return p;
}

bool K0Summary::ok() const {
  if (!kernel_ok) return false;
  for (const auto& s : summands) {
    if (s.status != "computed") continue;
    if (s.traces.size() != 6) return false;
    for (bool b : s.in_module) {
      if (!b) return false;
    }
  }
  return true;
}

K0Summary k0_summary(const KernelLatticeReport& kernel, std::span<const PairingValue> pairings) {
  K0Summary k;
  k.kernel_ok = kernel.ok();
  // the generator lifting to the constant projection: its trace vanishes, recorded not derived
  k.summands.push_back({"Z", "constant", {Rational(0)}, {true}});
  K0Summary::Summand six{"Z^6", "computed", {}, {}};
  for (const auto& p : pairings) {
    six.traces.push_back(p.value);
    six.in_module.push_back(p.in_module());
  }
  k.summands.push_back(std::move(six));
  k.summands.push_back({"H^2_c", "out-of-scope", {}, {}});
  return k;
}

}  // namespace pinwheel
