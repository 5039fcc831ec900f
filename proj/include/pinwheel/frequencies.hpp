#pragma once

// Substitution matrices on collared classes, exact Perron frequencies, patch
// frequencies and the Z-module they generate.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <stdexcept>
#include <vector>

#include "pinwheel/lattice.hpp"
#include "pinwheel/patches.hpp"

namespace pinwheel {

/// entries[row][col] = number of children of class `row` among the 5 children of
/// a class-`col` tile, read inside the subdivided collared patch.
struct SubstitutionMatrix {
  int radius = 1;
  CollarConvention convention = CollarConvention::Closed;
  std::vector<CanonicalKey> classes;
  std::vector<std::vector<std::uint32_t>> entries;

  std::size_t size() const { return classes.size(); }
  std::uint64_t column_sum(std::size_t col) const;
  IntMatrix to_int() const;
};

struct UncollarableChild : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Children's coronas are taken inside the subdivided collared patch; every
/// path of length <= radius from a child projects to a path of length <= radius
/// among parents, so the corona found there is complete.
SubstitutionMatrix build_substitution_matrix(std::span<const CollaredClass> classes, int radius,
                                             CollarConvention conv);

struct Primitivity {
  bool primitive = false;
  int exponent = 0;  // smallest k with M^k > 0, when primitive
};
/// Boolean powers up to Wielandt's bound (n-1)^2 + 1.
Primitivity primitivity(const SubstitutionMatrix& m);

/// 2x2 matrix of the rule on chiralities, [row][col], MINUS first.
using ChiralityMatrix = std::array<std::array<std::uint32_t, 2>, 2>;
ChiralityMatrix chirality_matrix();
/// Collapses a collared matrix by chirality; throws if columns of one chirality disagree.
ChiralityMatrix collapse_by_chirality(const SubstitutionMatrix& m, std::span<const CollaredClass> classes);

struct KernelDimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PerronData {
  std::vector<Rational> vector;  // normalized, sum 1
  std::size_t kernel_dimension = 0;
  bool positive = false;
  bool eigen_identity = false;  // M v == 5 v exactly
};
/// Kernel of M - 5I over Q; requires dimension 1.
PerronData perron_data(const SubstitutionMatrix& m);
/// Same for the 2x2 chirality matrix.
PerronData perron_data(const ChiralityMatrix& m);

/// Exact frequencies of n-collared classes (per tile, equivalently per unit area).
struct FrequencyTable {
  int radius = 1;
  CollarConvention convention = CollarConvention::Closed;
  std::vector<CollaredClass> classes;  // sorted by key
  std::vector<Rational> frequency;
  int subdivision_depth = 0;  // common subdivision depth used when lifting

  std::optional<std::size_t> find(const CanonicalKey& k) const;
};

/// 1-collared frequencies from the Perron vector.
FrequencyTable collared_frequencies(std::span<const CollaredClass> classes, const PerronData& perron,
                                    CollarConvention conv);

/// n-collared frequencies from 1-collared ones: every 1-collared patch is
/// subdivided k times, with k the same for all classes and large enough that each
/// descendant of the centre has a complete n-corona; then
/// v_n(c) = sum over classes c1 of v_1(c1) * #(class-c descendants) / 5^k.
FrequencyTable lift_frequencies(const FrequencyTable& base, int radius, int max_subdivisions = 6);

struct EigenCheck {
  bool column_sums = false;
  bool eigen_identity = false;
  bool normalized = false;
  bool positive = false;
  bool ok() const { return column_sums && eigen_identity && normalized && positive; }
};
/// Checks M v = 5 v, sum v = 1 and v > 0 for a table against its own matrix.
EigenCheck verify_table(const FrequencyTable& t, const SubstitutionMatrix& m);

struct PatchTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Largest adjacency distance from the anchor inside the patch (closed convention).
int patch_radius(const Patch& p, std::size_t anchor);

struct PatchFrequency {
  Rational value;
  int radius_used = 0;
  std::optional<bool> agrees_with_next;  // recomputed with the next table when available
};
/// Frequency of the clopen set U(P, anchor): sum of v_c over classes whose
/// collared patch contains P with the anchor at its centre. `tables` are indexed
/// by radius - 1.
PatchFrequency patch_frequency(const Patch& p, std::size_t anchor, std::span<const FrequencyTable> tables);

/// Smallest k <= max_k with 264 * 5^k * f an integer.
std::optional<int> module_exponent(const Rational& f, int max_k = 8);
/// Generator g of the Z-module generated by the values: gcd of numerators over lcm of denominators.
Rational module_generator(std::span<const Rational> values);

struct ModuleEntry {
  std::string kind;  // "collared-1", "collared-2", "vertex-corona", "symmetric-corona"
  CanonicalKey key;
  Rational frequency;
  std::optional<int> k_min;  // smallest k <= 8 with 264 * 5^k * frequency in Z
  bool in_module() const { return k_min.has_value(); }
};

struct ModuleReport {
  int depth = 0;
  std::vector<ModuleEntry> entries;
  Rational generator;  // the listed frequencies generate generator * Z
  bool all_members() const;
};

/// Frequencies of the n-collared classes for n <= depth, of the vertex coronas
/// (anchored at their canonical anchor) and, from depth 2 on, of the 1-coronas of
/// the symmetric tilings (anchored at a star tile). `tables` must cover `depth`.
ModuleReport frequency_module_report(std::span<const FrequencyTable> tables,
                                     std::span<const VertexCoronaClass> vertex_classes,
                                     const StarDynamics& stars, int depth);

struct OccurrenceCount {
  int level = 0;
  std::uint64_t occurrences = 0;
  std::uint64_t tiles = 0;
  std::uint64_t uncertain = 0;  // tiles whose corona of the patch radius reaches the outline
  Rational density() const { return Rational(occurrences, tiles); }
  Rational boundary_bound() const { return Rational(uncertain, tiles); }
};
/// Occurrences of U(P, anchor) in the context supertile, counted at their anchor tile.
OccurrenceCount count_occurrences(const Context& ctx, const Patch& p, std::size_t anchor);

}  // namespace pinwheel
