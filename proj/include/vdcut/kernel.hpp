#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "vdcut/error.hpp"
#include "vdcut/linalg.hpp"

namespace vdcut::kernel {

/// Local operator prepared for repeated application: per-row nonzero lists plus
/// the strided offsets of every local basis state.
class LocalOp {
 public:
  // positions[0] is the most significant bit of the local index.
  LocalOp(std::vector<int> positions, const MatX& m) : pos_(std::move(positions)) {
    const int k = static_cast<int>(pos_.size());
    dim_ = std::size_t{1} << k;
    require(static_cast<std::size_t>(m.rows()) == dim_ && static_cast<std::size_t>(m.cols()) == dim_,
            "local operator dimension mismatch");
    offsets_.resize(dim_);
    for (std::size_t l = 0; l < dim_; ++l) {
      std::uint64_t off = 0;
      for (int j = 0; j < k; ++j)
        if ((l >> (k - 1 - j)) & 1U) off |= (std::uint64_t{1} << pos_[static_cast<std::size_t>(j)]);
      offsets_[l] = off;
    }
    sorted_ = pos_;
    std::sort(sorted_.begin(), sorted_.end());
    require(std::adjacent_find(sorted_.begin(), sorted_.end()) == sorted_.end(), "duplicate local positions");
    row_start_.push_back(0);
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = 0; c < dim_; ++c) {
        const cplx v = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (v != cplx(0.0, 0.0)) {
          cols_.push_back(static_cast<std::uint32_t>(c));
          vals_.push_back(v);
        }
      }
      row_start_.push_back(cols_.size());
    }
  }

  /// v has 2^total_bits entries.
  void apply(std::vector<cplx>& v, int total_bits) const {
    const int k = static_cast<int>(pos_.size());
    require(total_bits >= k && sorted_.back() < total_bits, "local op positions exceed vector size");
    const std::uint64_t outer = std::uint64_t{1} << (total_bits - k);
    std::array<cplx, 64> in{};
    std::array<cplx, 64> out{};
    require(dim_ <= in.size(), "local op too large");
    for (std::uint64_t i = 0; i < outer; ++i) {
      std::uint64_t base = i;
      for (int p : sorted_) {
        const std::uint64_t low = base & ((std::uint64_t{1} << p) - 1);
        base = ((base >> p) << (p + 1)) | low;
      }
      for (std::size_t l = 0; l < dim_; ++l) in[l] = v[base | offsets_[l]];
      for (std::size_t r = 0; r < dim_; ++r) {
        cplx acc{0.0, 0.0};
        for (std::size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) acc += vals_[e] * in[cols_[e]];
        out[r] = acc;
      }
      for (std::size_t l = 0; l < dim_; ++l) v[base | offsets_[l]] = out[l];
    }
  }

  std::size_t nonzeros() const { return vals_.size(); }

 private:
  std::vector<int> pos_;
  std::vector<int> sorted_;
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::size_t> row_start_;
  std::vector<std::uint32_t> cols_;
  std::vector<cplx> vals_;
};

}  // namespace vdcut::kernel
