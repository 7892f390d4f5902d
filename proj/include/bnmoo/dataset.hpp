#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bnmoo {

/// m x n matrix of category indices, stored column-major so that a family
/// count walks contiguous memory.
class Dataset {
 public:
  Dataset() = default;
  /// Throws std::invalid_argument if dimensions or any cell are invalid.
  /// `rows` is row-major (sample-major), m*n entries.
  Dataset(int samples, int variables, std::vector<int> arities,
          std::span<const std::uint8_t> rows);

  /// Binary dataset with all arities 2.
  static Dataset binary(int samples, int variables,
                        std::span<const std::uint8_t> rows);

  int samples() const { return m_; }
  int variables() const { return n_; }
  const std::vector<int>& arities() const { return arities_; }
  int arity(int var) const { return arities_[var]; }
  bool all_binary() const;

  std::uint8_t at(int sample, int var) const {
    return cells_[static_cast<std::size_t>(var) * m_ + sample];
  }
  std::span<const std::uint8_t> column(int var) const {
    return {cells_.data() + static_cast<std::size_t>(var) * m_,
            static_cast<std::size_t>(m_)};
  }
  std::vector<std::uint8_t> row_major() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  friend class DatasetBuilder;
  int m_ = 0;
  int n_ = 0;
  std::vector<int> arities_;
  std::vector<std::uint8_t> cells_;
};

/// Writes cells directly in column-major order; validates on finish().
class DatasetBuilder {
 public:
  DatasetBuilder(int samples, int variables, std::vector<int> arities);
  void set(int sample, int var, std::uint8_t value) {
    data_.cells_[static_cast<std::size_t>(var) * data_.m_ + sample] = value;
  }
  Dataset finish() &&;

 private:
  Dataset data_;
};

}  // namespace bnmoo
