#pragma once

#include <cstdint>
#include <random>

#include "risjam/types.hpp"

namespace risjam {

// Independent randomness sources within one Monte Carlo trial. Keeping the
// channel draw on its own stream is what makes every (attack, receiver)
// combination of a trial see identical channel realizations.
enum class Stream : std::uint64_t {
  Channel = 0,
  Disco = 1,
  Csi = 2,
};

// Engine deterministically derived from (root seed, trial index, stream).
std::mt19937_64 make_stream(std::uint64_t root_seed, std::uint64_t trial, Stream stream);

// i.i.d. CN(0,1) entries (real/imaginary parts N(0, 1/2) each), filled in
// column-major order.
CMat complex_gaussian(Index rows, Index cols, std::mt19937_64& rng);
CVec complex_gaussian_vector(Index n, std::mt19937_64& rng);

}  // namespace risjam
