#pragma once

#include <span>
#include <string>
#include <vector>

#include "pslab/parallel.hpp"
#include "pslab/torus.hpp"
#include "pslab/weights.hpp"

namespace pslab::expsum {

/// values[j] = f^(j/M) = sum_n f(n) e(jn/M). For real f only j = 0..M/2 is
/// stored (`half`); the rest follows from conjugate symmetry.
struct FourierGrid {
  u64 M = 0;
  u64 N = 0;
  bool half = true;
  std::vector<cplx> values;
  std::string source;

  cplx at(u64 j) const;
  /// Multiplicity of stored entry j in the full grid (1 or 2).
  double multiplicity(std::size_t j) const;
};

u64 next_pow2(u64 n);
/// next power of two >= 8N.
u64 default_grid_size(u64 N);

/// FFT of the zero-padded array f(1..N). Throws grid-too-coarse if M < N.
FourierGrid fourier_grid(const SparseWeights& f, u64 M);
/// Dense input: f[i] is the weight at n = i + 1.
FourierGrid fourier_grid(std::span<const double> f, u64 M, std::string source = "dense");

/// 1^_[N](alpha) = sum_{n=1}^N e(alpha n), closed form.
cplx indicator_transform(u64 N, long double alpha);

/// (1/M) sum_j |values[j]|^u.
double grid_moment(const FourierGrid& grid, double u);

enum class DecayMode { automatic, dense, sampled };
DecayMode parse_decay_mode(const std::string& text);
std::string to_string(DecayMode m);

/// Largest dense grid the decay and moment routines will allocate.
inline constexpr u64 kMaxDenseGrid = u64{1} << 25;

struct DecayReport {
  double value = 0;       // max |nu^ - 1^_[N]| / N over the evaluated points
  double argmax = 0;      // torus point attaining it
  DecayMode mode = DecayMode::dense;
  u64 M = 0;              // dense grid size, or the lattice the probes sit on
  std::size_t points = 0;
};

/// Dense: every j/M with M >= 2N. Sampled: windows of lattice points around
/// a/q for q <= 64 plus `random_points` uniform lattice points, each evaluated
/// by direct summation. `M == 0` picks default_grid_size(N).
DecayReport fourier_decay(const SparseWeights& nu, u64 M = 0, DecayMode mode = DecayMode::automatic,
                          u64 seed = 1, std::size_t random_points = 4096, const Exec& exec = {});

struct MomentReport {
  double u = 0;
  double moment = 0;  // approximation of the integral of |f^|^u
  double ratio = 0;   // moment / (||f||_1^u / N)
  bool sampled = false;
  u64 M = 0;
  std::size_t points = 0;
};

/// Dense grid quadrature when M fits, else a stratified estimate: fine
/// windows of width 64/N around a/q (q <= 32) plus uniform samples elsewhere.
MomentReport restriction_moment(const SparseWeights& f, double u, u64 M = 0,
                                DecayMode mode = DecayMode::automatic, u64 seed = 1, const Exec& exec = {});
MomentReport restriction_moment(const FourierGrid& grid, double u, double l1);

/// Binary dump: "PSLGRID1", u64 M, u64 N, u64 flags (bit 0: half), then
/// complex64 little-endian values.
void write_grid(const std::string& path, const FourierGrid& grid);
FourierGrid read_grid(const std::string& path);

}  // namespace pslab::expsum
