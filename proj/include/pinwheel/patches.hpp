#pragma once

// Patches, canonical forms up to direct isometry, coronas cut from supertiles,
// collared prototiles, vertex coronas and their two-fold symmetry.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinwheel/kernels.hpp"
#include "pinwheel/substitution.hpp"

namespace pinwheel {

struct Patch {
  std::vector<Tile> tiles;
  std::optional<std::string> context;  // where the patch was cut from
};

/// Serialized normalized tile list plus its FNV-1a hash. Equal keys <=> congruent patches.
struct CanonicalKey {
  std::string text;
  std::uint64_t hash = 0;

  std::string hash_hex() const;
  friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) { return a.text == b.text; }
  /// Ordering used for every catalogue: by hash, then by text.
  friend bool operator<(const CanonicalKey& a, const CanonicalKey& b) {
    return a.hash != b.hash ? a.hash < b.hash : a.text < b.text;
  }
};

std::uint64_t fnv1a64(std::string_view s);
CanonicalKey make_key(std::string text);

/// The standard pose: anchor's right-angle vertex at the origin, long leg along +x.
const RigidMotion& standard_pose();

struct CanonicalForm {
  CanonicalKey key;
  RigidMotion motion;           // maps the input patch onto `normalized`
  std::size_t anchor = 0;       // index of the anchor tile in the input patch
  std::vector<Tile> normalized; // sorted by serialization
  std::size_t normalized_anchor = 0;
};

/// Serialization of a single tile (chirality, exponents, translation).
std::string tile_text(const Tile& t);

/// Canonical form anchored at a fixed tile.
CanonicalForm canonicalize_anchored(const Patch& p, std::size_t anchor);
/// Canonical form minimizing the key over the candidate anchors (all tiles when empty).
CanonicalForm canonicalize(const Patch& p, std::span<const std::size_t> candidate_anchors = {});

/// Clopen set U(T', A): a patch together with the tile carrying the puncture.
struct ClopenSetKey {
  CanonicalKey key;
  std::size_t anchor_index = 0;  // into CanonicalForm::normalized
};
ClopenSetKey clopen_key(const CanonicalForm& f);

/// Puncture of the reference prototiles: (3/2, 1/2) for MINUS, its mirror for PLUS.
ExactScalar puncture(Chirality c);

Patch apply(const RigidMotion& g, const Patch& p);
Patch mirror(const Patch& p);

struct SymmetryReport {
  int order = 1;
  std::optional<ExactScalar> center;  // fixed point of the non-trivial element
  std::string angle = "0";            // "pi" for a half turn
  std::vector<RigidMotion> elements;  // including identity
};

/// Exhaustive stabilizer of a patch under direct isometries.
SymmetryReport symmetry_group(const Patch& p);

/// Thrown when a corona reaches the boundary of its supertile.
struct InsufficientContext : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A supertile with its spatial index, adjacency graph and boundary flags.
class Context {
 public:
  explicit Context(int level, CollarConvention conv = CollarConvention::Closed);

  int level() const { return supertile_.level; }
  CollarConvention convention() const { return conv_; }
  const Supertile& supertile() const { return supertile_; }
  const TileIndex& index() const { return index_; }
  const Graph& graph() const { return graph_; }
  /// Tile touches the outline, so some of its neighbours may be missing.
  bool is_boundary(std::uint32_t i) const { return boundary_[i]; }
  bool point_on_outline(const IntPoint& p) const;

  /// n-corona of the seeds; throws InsufficientContext if it may be truncated.
  std::vector<std::uint32_t> corona(std::span<const std::uint32_t> seeds, int n) const;
  std::optional<std::vector<std::uint32_t>> try_corona(std::span<const std::uint32_t> seeds, int n) const;
  Patch patch(std::span<const std::uint32_t> tiles) const;
  /// Image of tile i under the half turn about a centre given in frame units; nullopt if absent.
  std::optional<std::uint32_t> half_turn_image(std::uint32_t i, const IntPoint& center) const;

 private:
  Supertile supertile_;
  CollarConvention conv_;
  TileIndex index_;
  Graph graph_;
  std::vector<bool> boundary_;
};

/// A tile class with its n-corona, in canonical pose.
struct CollaredClass {
  CanonicalKey key;
  std::vector<Tile> tiles;  // normalized, centre at `center`
  std::size_t center = 0;
  std::uint64_t count = 0;  // occurrences in the context
  Chirality chirality() const { return tiles[center].chirality; }
};

/// All n-collared classes occurring around tiles whose n-corona is complete.
std::vector<CollaredClass> collared_classes(const Context& ctx, int n);

struct CollaredEnumeration {
  int level = 0;  // the context level L; L + 1 was used as the witness
  int radius = 1;
  CollarConvention convention = CollarConvention::Closed;
  std::vector<CollaredClass> classes;  // found at L + 1, sorted by key
  std::size_t count_at_level = 0;
  std::size_t count_at_next = 0;
  bool stabilized = false;
};

struct StabilizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enumerates at levels L and L+1 and requires equal sets.
CollaredEnumeration enumerate_collared_prototiles(int context_level, int radius = 1,
                                                  CollarConvention conv = CollarConvention::Closed);

struct VertexCoronaClass {
  CanonicalKey key;
  Patch patch;            // canonical representative
  bool around_vertex = false;
  bool around_midpoint = false;
  std::uint64_t count = 0;
  int symmetry_order = 1;
};

/// Minimal tile stars around vertices and hypotenuse midpoints of the context.
std::vector<VertexCoronaClass> vertex_coronas(const Context& ctx);

struct VertexCoronaEnumeration {
  std::vector<VertexCoronaClass> classes;
  std::size_t count_at_level = 0;
  std::size_t count_at_next = 0;
  bool stabilized = false;
};
VertexCoronaEnumeration enumerate_vertex_coronas(int context_level);

/// A half-turn symmetric star (all tiles containing a symmetry centre).
struct SymmetricStar {
  CanonicalKey key;
  Patch patch;               // canonical pose
  ExactScalar center;        // in canonical pose
  std::uint64_t occurrences = 0;
  std::size_t successor = 0; // star at the inflated centre after one subdivision
  bool periodic = false;     // lies on a cycle of the successor map
};

struct StarDynamics {
  int context_level = 0;
  std::vector<SymmetricStar> stars;  // sorted by key
  std::size_t periodic_count = 0;
  std::optional<std::size_t> find(const CanonicalKey& k) const;
};

/// Symmetric stars found in the context and their successor map. A symmetric
/// tiling is fixed by the backward orbit of its star, so symmetric tilings up to
/// rotation correspond to periodic stars.
StarDynamics symmetric_star_dynamics(const Context& ctx);

/// One class of symmetric N-coronas around a symmetry centre.
struct SymmetricChain {
  CanonicalKey key;             // the N-corona around the centre
  CanonicalKey star_key;        // the star it grows from
  Patch patch;                  // canonical pose
  std::size_t anchor = 0;       // a star tile inside `patch`
  std::uint64_t occurrences = 0;
  bool persistent = false;      // equals the N-corona of a symmetric tiling
};

/// The N-coronas of the symmetric tilings, one per periodic star, built by
/// subdividing a cycle predecessor of the star until the corona provably fits.
std::vector<SymmetricChain> symmetric_tiling_coronas(const StarDynamics& stars, int n);

struct ChainCensus {
  int context_level = 0;
  std::vector<std::size_t> counts;             // counts[N], N = 0..max
  std::vector<std::size_t> persistent_counts;  // classes that are coronas of symmetric tilings
  std::vector<std::uint64_t> surviving;        // symmetric occurrences reaching depth N
  std::vector<std::uint64_t> exhausted;        // occurrences lost to the outline at depth N
  std::vector<std::vector<SymmetricChain>> chains;  // per N, sorted by key
  /// Per star of the dynamics, [star][N]: occurrences alive at depth N, and
  /// occurrences whose N-corona reached the outline.
  std::vector<std::vector<std::uint64_t>> star_surviving, star_exhausted;

  /// Stars with an occurrence whose n-coronas stay symmetric for all n <= N.
  std::size_t live_stars(int n) const;
};

/// Counts classes of half-turn symmetric N-coronas around every symmetry centre
/// of the context, flagging those that are coronas of symmetric tilings.
ChainCensus symmetric_chain_census(const Context& ctx, const StarDynamics& stars, int max_depth);

}  // namespace pinwheel
