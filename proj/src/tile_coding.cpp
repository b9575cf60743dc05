#include "replaylab/tile_coding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "replaylab/rng.hpp"

namespace replaylab {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

void TileKey::push_back(std::int64_t v) {
  if (size_ == kMaxLength) throw std::length_error("tile key too long");
  data_[size_++] = v;
}

std::uint64_t TileKey::hash() const noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL ^ size_;
  for (std::size_t i = 0; i < size_; ++i)
    h = splitmix64(h ^ static_cast<std::uint64_t>(data_[i]));
  return h;
}

bool operator==(const TileKey& a, const TileKey& b) noexcept {
  return a.size_ == b.size_ && std::equal(a.data_.begin(), a.data_.begin() + a.size_, b.data_.begin());
}

IndexHashTable::IndexHashTable(std::size_t size) : size_(size) {
  if (size == 0) throw std::invalid_argument("index hash table size must be positive");
  table_.reserve(size);
}

std::size_t IndexHashTable::index(const TileKey& key) {
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  if (table_.size() >= size_) {
    ++overflow_;
    return static_cast<std::size_t>(key.hash() % size_);
  }
  const std::size_t slot = table_.size();
  table_.emplace(key, slot);
  return slot;
}

void tiles_into(IndexHashTable& iht, int num_tilings, std::span<const double> scaled,
                std::span<const std::int64_t> ints, std::vector<std::size_t>& out) {
  if (num_tilings < 1) throw std::invalid_argument("num_tilings must be positive");
  std::array<std::int64_t, TileKey::kMaxLength> quantized{};
  if (scaled.size() > quantized.size()) throw std::length_error("too many tile coordinates");
  for (std::size_t d = 0; d < scaled.size(); ++d)
    quantized[d] = static_cast<std::int64_t>(std::floor(scaled[d] * num_tilings));

  out.clear();
  for (int tiling = 0; tiling < num_tilings; ++tiling) {
    TileKey key;
    key.push_back(tiling);
    std::int64_t offset = tiling;
    for (std::size_t d = 0; d < scaled.size(); ++d) {
      key.push_back(floor_div(quantized[d] + offset, num_tilings));
      offset += 2 * tiling;
    }
    for (const auto v : ints) key.push_back(v);
    out.push_back(iht.index(key));
  }
}

std::vector<std::size_t> tiles(IndexHashTable& iht, int num_tilings,
                               std::span<const double> scaled,
                               std::span<const std::int64_t> ints) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(num_tilings));
  tiles_into(iht, num_tilings, scaled, ints, out);
  return out;
}

}  // namespace replaylab
