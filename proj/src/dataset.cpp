#include "bnmoo/dataset.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bnmoo {

namespace {

void check_shape(int samples, int variables, const std::vector<int>& arities) {
  if (samples < 1) throw std::invalid_argument("Dataset: need at least one sample");
  if (variables < 1) throw std::invalid_argument("Dataset: need at least one variable");
  if (static_cast<int>(arities.size()) != variables)
    throw std::invalid_argument("Dataset: arity count does not match variables");
  for (int r : arities)
    if (r < 2 || r > 255)
      throw std::invalid_argument("Dataset: arity " + std::to_string(r) +
                                  " outside [2, 255]");
}

}  // namespace

Dataset::Dataset(int samples, int variables, std::vector<int> arities,
                 std::span<const std::uint8_t> rows)
    : m_(samples), n_(variables), arities_(std::move(arities)) {
  check_shape(m_, n_, arities_);
  if (rows.size() != static_cast<std::size_t>(m_) * n_)
    throw std::invalid_argument("Dataset: expected m*n cells");
  cells_.resize(rows.size());
  for (int s = 0; s < m_; ++s) {
    for (int v = 0; v < n_; ++v) {
      const std::uint8_t x = rows[static_cast<std::size_t>(s) * n_ + v];
      if (x >= arities_[v])
        throw std::invalid_argument(
            "Dataset: value " + std::to_string(x) + " at sample " +
            std::to_string(s) + ", variable " + std::to_string(v) +
            " exceeds arity " + std::to_string(arities_[v]));
      cells_[static_cast<std::size_t>(v) * m_ + s] = x;
    }
  }
}

Dataset Dataset::binary(int samples, int variables,
                        std::span<const std::uint8_t> rows) {
  return Dataset(samples, variables, std::vector<int>(std::max(variables, 0), 2),
                 rows);
}

bool Dataset::all_binary() const {
  return std::all_of(arities_.begin(), arities_.end(),
                     [](int r) { return r == 2; });
}

std::vector<std::uint8_t> Dataset::row_major() const {
  std::vector<std::uint8_t> out(cells_.size());
  for (int s = 0; s < m_; ++s)
    for (int v = 0; v < n_; ++v)
      out[static_cast<std::size_t>(s) * n_ + v] = at(s, v);
  return out;
}

DatasetBuilder::DatasetBuilder(int samples, int variables,
                               std::vector<int> arities) {
  check_shape(samples, variables, arities);
  data_.m_ = samples;
  data_.n_ = variables;
  data_.arities_ = std::move(arities);
  data_.cells_.assign(static_cast<std::size_t>(samples) * variables, 0);
}

Dataset DatasetBuilder::finish() && {
  for (int v = 0; v < data_.n_; ++v)
    for (std::uint8_t x : data_.column(v))
      if (x >= data_.arities_[v])
        throw std::invalid_argument("DatasetBuilder: value exceeds arity of V" +
                                    std::to_string(v + 1));
  return std::move(data_);
}

}  // namespace bnmoo
