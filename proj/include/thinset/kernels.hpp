#pragma once

// Index-range scans over n = 1..depth of s_n = a_n * N mod D, where x = N/D.
//
// Every kernel has a serial reference and an OpenMP version. The parallel
// version splits the range into fixed chunks (independent of the thread
// count), seeds each chunk with a direct residue computation and walks it
// with one multiplication per step. Results are bit-identical to the serial
// reference.

#include "thinset/circle.hpp"
#include "thinset/integer_sequence.hpp"

#include <cstdint>
#include <vector>

namespace thinset::kernels {

enum class Exec { serial, parallel };

/// masks[n-1] has bit j set iff ||a_n x|| >= eps[j]. At most 32 thresholds.
std::vector<std::uint32_t> exceptional_masks(const IntegerSequence& a, const CircleRational& x,
                                             const std::vector<Rational>& eps, std::uint64_t depth, Exec exec);

/// Prefix sums S_m = sum_{n <= m} r_n ||a_n x|| at each checkpoint m
/// (checkpoints strictly increasing, last one is the scan depth).
std::vector<Rational> weighted_norm_sums(const IntegerSequence& a, const CircleRational& x, const WeightRule& r,
                                         const std::vector<std::uint64_t>& checkpoints, Exec exec);

/// Chunk length used by the parallel kernels.
std::uint64_t chunk_length(std::uint64_t depth);

} // namespace thinset::kernels

namespace thinset::kernels {

/// Enclosure variant for a truncated expansion: x lies in [N/M, (N+1)/M]
/// with M = u_K, so {a_n x} lies in [s_n, s_n + a_n] / M with s_n = a_n N mod M.
struct EnclosedMasks {
    std::vector<std::uint32_t> masks;
    /// First index whose enclosure straddles a threshold; 0 when all decided.
    std::uint64_t first_undecided = 0;
};

EnclosedMasks enclosed_masks(const IntegerSequence& a, const Integer& head_num, const Integer& modulus,
                             const std::vector<Rational>& eps, std::uint64_t depth, Exec exec);

} // namespace thinset::kernels
