#include "mlf/combinatorics.hpp"

#include <sstream>
#include <stdexcept>

namespace mlf::comb {

namespace {

std::size_t triangle_index(int s, int j) {
  // row s starts at s(s+1)/2
  return static_cast<std::size_t>(s) * (s + 1) / 2 + static_cast<std::size_t>(j);
}

void check_order(int s, const char* what) {
  if (s < 1 || s > kMaxOrder) {
    std::ostringstream os;
    os << what << ": order must lie in [1, " << kMaxOrder << "], got " << s;
    throw std::out_of_range(os.str());
  }
}

}  // namespace

StirlingTable::StirlingTable(int max_n) : max_n_(max_n) {
  if (max_n < 0 || max_n > kMaxOrder) {
    std::ostringstream os;
    os << "StirlingTable: max_n must lie in [0, " << kMaxOrder << "], got "
       << max_n;
    throw std::out_of_range(os.str());
  }
  entries_.assign(triangle_index(max_n, max_n) + 1, 0);
  entries_[triangle_index(0, 0)] = 1;
  for (int s = 1; s <= max_n; ++s) {
    entries_[triangle_index(s, 0)] = 0;
    for (int j = 1; j <= s; ++j) {
      entries_[triangle_index(s, j)] =
          static_cast<std::int64_t>(j) * entries_[triangle_index(s - 1, j)] +
          (j - 1 <= s - 1 ? entries_[triangle_index(s - 1, j - 1)] : 0);
    }
  }
}

std::int64_t StirlingTable::at(int s, int j) const {
  if (s < 0 || s > max_n_ || j < 0 || j > s) {
    std::ostringstream os;
    os << "StirlingTable::at(" << s << ", " << j
       << "): indices must satisfy 0 <= j <= s <= " << max_n_;
    throw std::out_of_range(os.str());
  }
  return entries_[triangle_index(s, j)];
}

std::int64_t stirling2(int s, int j) {
  static const StirlingTable table(kMaxOrder);
  return table.at(s, j);
}

SymmetricPolyVector elementary_symmetric(int s) {
  check_order(s, "elementary_symmetric");
  // incremental multiplication of prod_{j=1}^{s-1} (x + j); coefficients
  // kept in descending powers so c[r] = e_r throughout
  std::vector<std::int64_t> c{1};
  for (int j = 1; j <= s - 1; ++j) {
    std::vector<std::int64_t> next(c.size() + 1, 0);
    for (std::size_t r = 0; r < c.size(); ++r) {
      next[r] += c[r];
      next[r + 1] += static_cast<std::int64_t>(j) * c[r];
    }
    c.swap(next);
  }
  return SymmetricPolyVector{s, std::move(c)};
}

std::vector<std::int64_t> falling_factorial_expansion(int s) {
  check_order(s, "falling_factorial_expansion");
  const SymmetricPolyVector esym = elementary_symmetric(s);
  std::vector<std::int64_t> c(static_cast<std::size_t>(s), 0);
  for (int r = 1; r <= s; ++r) {
    const std::int64_t mag = esym.e[static_cast<std::size_t>(s - r)];
    c[static_cast<std::size_t>(r - 1)] = ((s - r) % 2 == 0) ? mag : -mag;
  }
  return c;
}

}  // namespace mlf::comb
