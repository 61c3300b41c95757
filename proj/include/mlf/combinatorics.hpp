#pragma once

#include <cstdint>
#include <vector>

namespace mlf::comb {

/// Largest moment order supported by the exact integer kernels. int64
/// overflows just past this (unsigned Stirling numbers of the first kind
/// reach ~6.2e17 at n = 20).
inline constexpr int kMaxOrder = 20;

/// Triangular table of Stirling numbers of the second kind {s brace j},
/// built once by the recurrence {s,j} = j*{s-1,j} + {s-1,j-1}.
class StirlingTable {
 public:
  explicit StirlingTable(int max_n);

  int max_n() const { return max_n_; }

  /// {s brace j}; throws std::out_of_range unless 0 <= j <= s <= max_n.
  std::int64_t at(int s, int j) const;

 private:
  int max_n_;
  std::vector<std::int64_t> entries_;  // row-major triangle
};

/// {s brace j} from a shared immutable table with max_n = kMaxOrder.
std::int64_t stirling2(int s, int j);

/// e_0..e_{s-1}: elementary symmetric polynomials of {1, 2, ..., s-1},
/// i.e. prod_{j=1}^{s-1}(x + j) = sum_r e_r x^{s-1-r}. e_0 = 1 and
/// e_{s-1} = (s-1)!.
struct SymmetricPolyVector {
  int s;
  std::vector<std::int64_t> e;
};

SymmetricPolyVector elementary_symmetric(int s);

/// Coefficients c_1..c_s (returned as c[r-1] = c_r) of the falling
/// factorial X(X-1)...(X-s+1) = sum_{r=1}^{s} c_r X^r; these are the signed
/// Stirling numbers of the first kind, c_r = (-1)^{s-r} e_{s-r}.
std::vector<std::int64_t> falling_factorial_expansion(int s);

}  // namespace mlf::comb
