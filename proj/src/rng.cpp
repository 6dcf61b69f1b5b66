#include "risjam/rng.hpp"

namespace risjam {

std::mt19937_64 make_stream(std::uint64_t root_seed, std::uint64_t trial, Stream stream) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(root_seed), static_cast<std::uint32_t>(root_seed >> 32),
      static_cast<std::uint32_t>(trial),     static_cast<std::uint32_t>(trial >> 32),
      static_cast<std::uint32_t>(stream),    0x52495331u};
  return std::mt19937_64(seq);
}

CMat complex_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0 / std::sqrt(2.0));
  CMat out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = Complex(n(rng), n(rng));
  return out;
}

CVec complex_gaussian_vector(Index n, std::mt19937_64& rng) {
  return complex_gaussian(n, 1, rng).col(0);
}

}  // namespace risjam
