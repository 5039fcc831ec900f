#pragma once

// Integer lattice behind the kernel of the boundary map, the winding index of
// the glued loop, and the trace pairing l * mu(U).

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pinwheel/frequencies.hpp"
#include "pinwheel/lattice.hpp"

namespace pinwheel {

/// 5 x 12 matrix whose row i is (e_i + e_{i+6}) - (e_{i+1} + e_{i+7}), i = 0..4.
IntMatrix constraint_matrix();
/// The seven listed generators q1..q7 of the kernel, as rows.
IntMatrix kernel_generators();

/// x_i + x_{i+6} is the same for i = 0..5.
bool satisfies_membership_criterion(std::span<const BigInt> x);

struct KernelLatticeReport {
  std::size_t rank = 0;                // rank of ker C over Z
  IntMatrix kernel_basis;              // from the Smith form
  IntMatrix kernel_hnf, generators_hnf;
  std::vector<bool> generator_in_kernel;
  bool rank_ok = false;
  bool equality = false;               // HNF(span generators) == HNF(ker C)
  /// On failure: a vector in one lattice but not the other, or C * q != 0.
  std::optional<std::vector<BigInt>> witness;
  std::string witness_note;
  bool ok() const;
};
/// `generators` defaults to q1..q7; other values exist to exercise the failure path.
KernelLatticeReport verify_kernel_lattice(std::optional<IntMatrix> generators = std::nullopt);

/// Both ways: random vectors (half drawn from the lattice) are checked against C x = 0
/// and against the criterion. Returns the number of disagreements.
struct CriterionTrial {
  std::size_t trials = 0, in_kernel = 0, disagreements = 0;
};
CriterionTrial criterion_equivalence(std::size_t trials, std::uint64_t seed);

/// The boundary map eps on the circle, parametrized by theta in [0, 2 pi).
struct BoundaryMap {
  /// Symbolic z^m; m must be 2 mod 4 for eps(i) = -1.
  std::optional<int> power;
  /// General smooth map, with its theta-derivative for the integral oracle.
  std::function<std::complex<double>(double)> value;
  std::function<std::complex<double>(double)> derivative;

  static BoundaryMap monomial(int m);
  static BoundaryMap sampled(std::function<std::complex<double>(double)> value,
                             std::function<std::complex<double>(double)> derivative);
  std::complex<double> operator()(double theta) const;
  std::complex<double> d(double theta) const;
};

/// Loop glued from four quarter arcs: eps, -1, -eps, 1.
struct WindingLoop {
  BoundaryMap eps = BoundaryMap::monomial(2);
  bool reversed = false;
  /// A constant loop f = 1, for testing.
  bool constant = false;

  /// Point of the loop at s in [0, 4): quarter floor(s), local angle (s mod 1) * pi/2.
  std::complex<double> at(double s) const;
  std::complex<double> derivative(double s) const;  // d/ds
};

struct WindingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact index for monomial eps (m/2 per traversal, sign by orientation); sampled
/// argument bookkeeping otherwise. Throws WindingError on a discontinuous loop
/// or when one sample step turns by pi or more.
long winding_index(const WindingLoop& loop, std::size_t samples = 10000);

/// Argument-increment count with explicit step control; throws as above.
long sampled_winding_index(const WindingLoop& loop, std::size_t samples);

struct WindingIntegral {
  double value = 0;     // (1 / 2 pi i) * integral of conj(f) df, real part
  double residual = 0;  // distance to the nearest integer
  long rounded = 0;
};
/// Midpoint rule over `samples` points of the whole loop.
WindingIntegral winding_integral(const WindingLoop& loop, std::size_t samples);

/// Frequency tables and module data needed by the pairing.
struct PairingInputs {
  std::vector<FrequencyTable> tables;  // radius 1, 2, ...
  Rational module_generator;           // generator of the computed frequency module
};

struct PairingValue {
  CanonicalKey center_key;  // the 1-corona around the symmetry centre
  CanonicalKey star_key;
  long l = 0;
  Rational frequency;       // mu(U) of the 1-corona clopen set
  Rational value;           // l * mu(U)
  std::optional<int> module_exponent;  // smallest k with 264 * 5^k * value in Z
  bool in_computed_module = false;     // value is a multiple of the module generator
  bool in_module() const { return module_exponent.has_value() && in_computed_module; }
};

/// l * mu(U) for a symmetric 1-corona chain.
PairingValue trace_pairing(const SymmetricChain& chain, const WindingLoop& loop, const PairingInputs& in);

struct K0Summary {
  struct Summand {
    std::string name;
    std::string status;             // "constant", "computed", "out-of-scope"
    std::vector<Rational> traces;
    std::vector<bool> in_module;
  };
  std::vector<Summand> summands;
  bool kernel_ok = false;
  bool ok() const;
};
K0Summary k0_summary(const KernelLatticeReport& kernel, std::span<const PairingValue> pairings);

}  // namespace pinwheel
