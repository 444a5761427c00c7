#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ltnn/rational.hpp"

namespace ltnn {

/// Subset of an indexed point set; bit i stands for point i.
using Mask = std::uint64_t;
inline constexpr std::size_t kMaxPoints = 64;

inline bool test_bit(Mask m, std::size_t i) { return ((m >> i) & 1U) != 0; }
inline Mask full_mask(std::size_t count) { return count >= 64 ? ~Mask{0} : ((Mask{1} << count) - 1); }

/// The open halfspace {x : ⟨a, x⟩ + b > 0}, stored as coprime integers.
struct HalfspaceWitness {
  Vec a;
  Rational b;

  bool contains(const Vec& x) const { return dot(a, x) + b > 0; }
  friend bool operator==(const HalfspaceWitness&, const HalfspaceWitness&) = default;
};

struct Dichotomy {
  Mask subset = 0;
  HalfspaceWitness witness;
};

/// Every linearly separable subset of `points`, sorted by mask.
struct DichotomyTable {
  std::vector<Vec> points;
  std::vector<Dichotomy> entries;

  std::size_t size() const { return entries.size(); }
  std::optional<std::size_t> find(Mask subset) const;
};

/// Witness that a subset is cut out by an open halfspace, or nullopt.
/// Throws InputError on ragged dimensions or more than kMaxPoints points.
std::optional<HalfspaceWitness> separate_subset(const std::vector<Vec>& points, Mask subset);

/// Enumerates separable subsets by extending separable subsets of each prefix
/// of the point list one point at a time; each extension is LP-certified.
/// Throws InputError on duplicate points.
DichotomyTable enumerate_separable_subsets(const std::vector<Vec>& points);

/// Exact check that every entry's witness induces exactly its subset.
bool verify_table(const DichotomyTable& table);

// --- collections of subsets of {1..m} --------------------------------------

/// Weights (α, β): subset A belongs to the collection iff Σ_{s∈A} α_s + β > 0.
struct CollectionWitness {
  Vec alpha;
  Rational beta;

  bool accepts(Mask subset) const;
};

/// A collection is a mask over the 2^m subsets of {1..m}: bit A is set iff the
/// subset whose members are the set bits of A belongs to the collection.
struct CollectionEntry {
  Mask collection = 0;
  CollectionWitness witness;
};

struct CollectionTable {
  std::size_t m = 0;
  std::vector<CollectionEntry> entries;

  std::size_t size() const { return entries.size(); }
};

inline constexpr std::size_t kHardCollectionLimit = 6;

/// Vertices of {0,1}^m in subset-mask order.
std::vector<Vec> hypercube_vertices(std::size_t m);

std::optional<CollectionWitness> separate_collection(std::size_t m, Mask collection);

/// Enumerates 𝓛_m. Throws RefusalError when m exceeds `cap`.
CollectionTable enumerate_collections(std::size_t m, std::size_t cap = 4);

bool verify_table(const CollectionTable& table);

std::string serialize_collection_table(const CollectionTable& table);
/// Throws ParseError (with line number) on malformed text or invalid witnesses.
CollectionTable deserialize_collection_table(const std::string& text);

/// In-memory (and optionally on-disk) cache of collection tables keyed by m.
/// Thread-safe.
class CollectionCache {
 public:
  explicit CollectionCache(std::filesystem::path dir = {}, std::size_t cap = 4);

  const CollectionTable& get(std::size_t m);
  std::size_t cap() const { return cap_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::size_t cap_;
  std::mutex mutex_;
  std::map<std::size_t, std::unique_ptr<CollectionTable>> tables_;
};

// --- counting --------------------------------------------------------------

Integer binomial(unsigned long n, unsigned long k);

/// 2·Σ_{k≤n} C(N−1, k): number of separable subsets of N points in general position in ℝⁿ.
Integer general_position_count(std::size_t num_points, std::size_t dim);

/// 2·C(N, n). Can undercount; the square corners give 14 against 12.
Integer quoted_subset_bound(std::size_t num_points, std::size_t dim);

}  // namespace ltnn
