#pragma once

#include <cstddef>

namespace lapsep {

// A p x q vertex array, i.e. the bipartition C^p (factor A, rows) x C^q
// (factor B, columns). Vertex (k, l) is basis vector |k> (x) |l>.
struct ArrayShape {
  int p = 1;
  int q = 1;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(p) * static_cast<std::size_t>(q); }
  ArrayShape swapped() const noexcept { return {q, p}; }

  friend bool operator==(const ArrayShape&, const ArrayShape&) = default;
};

}  // namespace lapsep
