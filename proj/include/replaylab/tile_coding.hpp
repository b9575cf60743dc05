#ifndef REPLAYLAB_TILE_CODING_HPP
#define REPLAYLAB_TILE_CODING_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace replaylab {

/// Integer coordinate tuple used as an index-hash-table key.
class TileKey {
 public:
  static constexpr std::size_t kMaxLength = 16;

  void push_back(std::int64_t v);
  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] std::span<const std::int64_t> values() const noexcept { return {data_.data(), size_}; }
  [[nodiscard]] std::uint64_t hash() const noexcept;

  friend bool operator==(const TileKey& a, const TileKey& b) noexcept;

 private:
  std::array<std::int64_t, kMaxLength> data_{};
  std::size_t size_ = 0;
};

/// Assigns consecutive indices to coordinate tuples in first-seen order until
/// `size` slots are used; after that, unseen tuples fall back to
/// hash(tuple) mod size and each such lookup is counted as an overflow.
class IndexHashTable {
 public:
  explicit IndexHashTable(std::size_t size);

  std::size_t index(const TileKey& key);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] std::size_t count() const noexcept { return table_.size(); }
  [[nodiscard]] std::uint64_t overflow_count() const noexcept { return overflow_; }

 private:
  struct KeyHash {
    std::size_t operator()(const TileKey& k) const noexcept { return k.hash(); }
  };
  std::size_t size_;
  std::uint64_t overflow_ = 0;
  std::unordered_map<TileKey, std::size_t, KeyHash> table_;
};

/// Grid tile coding over pre-scaled coordinates (one unit = one tile width).
///
/// Tiling i displaces dimension d by i * (1 + 2d) / num_tilings tile widths;
/// each tile is named by (i, displaced integer coordinates..., ints...) and
/// mapped through the hash table. Writes num_tilings indices to `out`.
void tiles_into(IndexHashTable& iht, int num_tilings, std::span<const double> scaled,
                std::span<const std::int64_t> ints, std::vector<std::size_t>& out);

std::vector<std::size_t> tiles(IndexHashTable& iht, int num_tilings,
                               std::span<const double> scaled,
                               std::span<const std::int64_t> ints = {});

}  // namespace replaylab

#endif  // REPLAYLAB_TILE_CODING_HPP
