#pragma once

// Dense vectors over F2 and an incremental row-echelon basis.

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

namespace gamma4 {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  BitVector& operator^=(const BitVector& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }

  bool none() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }
  bool any() const { return !none(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }

  // Index of the highest set bit, or -1.
  long highest() const {
    for (std::size_t k = w_.size(); k-- > 0;)
      if (w_[k]) return static_cast<long>(k * 64 + 63 - static_cast<std::size_t>(std::countl_zero(w_[k])));
    return -1;
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t x = w_[k];
      while (x) {
        out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Span of inserted vectors, kept reduced by highest set bit.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t n = 0) : n_(n) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }

  BitVector reduce(BitVector v) const {
    for (long h = v.highest(); h >= 0; h = v.highest()) {
      auto it = rows_.find(h);
      if (it == rows_.end()) break;
      v ^= it->second;
    }
    return v;
  }

  // Full reduction: clears every pivot position, not only the leading one.
  bool contains(const BitVector& v) const {
    BitVector r = v;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it)
      if (r.test(static_cast<std::size_t>(it->first))) r ^= it->second;
    return r.none();
  }

  // Returns true when v was independent of the current span.
  bool insert(const BitVector& v) {
    BitVector r = reduce(v);
    const long h = r.highest();
    if (h < 0) return false;
    rows_.emplace(h, std::move(r));
    return true;
  }

  std::vector<BitVector> basis() const {
    std::vector<BitVector> out;
    for (const auto& [h, v] : rows_) out.push_back(v);
    return out;
  }

 private:
  std::size_t n_;
  std::map<long, BitVector> rows_;
};

// Incremental kernel of a linear map given column by column.
class KernelTracker {
 public:
  KernelTracker(std::size_t source_dim, std::size_t target_dim) : src_(source_dim), tgt_(target_dim) {}

  // Adds source basis vector `index` with image `image`; returns a new kernel vector if one appears.
  bool add_column(std::size_t index, const BitVector& image, BitVector* kernel_out) {
    BitVector img = image;
    BitVector comb(src_);
    comb.set(index);
    for (long h = img.highest(); h >= 0; h = img.highest()) {
      auto it = pivots_.find(h);
      if (it == pivots_.end()) {
        pivots_.emplace(h, std::make_pair(std::move(img), std::move(comb)));
        return false;
      }
      img ^= it->second.first;
      comb ^= it->second.second;
    }
    if (kernel_out) *kernel_out = std::move(comb);
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  std::size_t src_, tgt_;
  std::map<long, std::pair<BitVector, BitVector>> pivots_;
};

}  // namespace gamma4
