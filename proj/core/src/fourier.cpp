#include "pslab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>

#include "pslab/error.hpp"

namespace pslab::expsum {
namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using fftw_ptr = std::unique_ptr<T[], FftwFree>;

template <class T>
fftw_ptr<T> fftw_array(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (!p) fail(ErrorCode::invalid_argument, "FFT buffer allocation of " + std::to_string(n) + " entries failed");
  return fftw_ptr<T>(p);
}

// Runs the r2c transform of `in` (length M, destroyed) and hands each output
// j = 0..M/2 to `sink(j, value)` with the e(+jn/M) sign convention.
template <class Sink>
void real_fft(double* in, u64 M, Sink&& sink) {
  const std::size_t out_len = M / 2 + 1;
  auto out = fftw_array<fftw_complex>(out_len);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(M), in, out.get(), FFTW_ESTIMATE);
  if (!plan) fail(ErrorCode::invalid_argument, "FFTW could not plan a transform of size " + std::to_string(M));
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  for (std::size_t j = 0; j < out_len; ++j) sink(j, cplx(out[j][0], -out[j][1]));
}

void check_fft_size(u64 M) {
  require(M >= 1 && M <= (u64{1} << 31) - 1, ErrorCode::invalid_argument,
          "grid size " + std::to_string(M) + " outside the supported FFT range");
}

// e(jn/M) summed over n = 1..N, with exact reduction of the phases.
cplx indicator_lattice(u64 N, u64 j, u64 M) {
  j %= M;
  if (j == 0) return {static_cast<double>(N), 0.0};
  const long double a = static_cast<long double>(j) / M;
  const u64 jn = static_cast<u64>(static_cast<u128>(j) * N % M);
  const std::complex<long double> ea(std::cos(2 * std::numbers::pi_v<long double> * a),
                                     std::sin(2 * std::numbers::pi_v<long double> * a));
  const long double b = static_cast<long double>(jn) / M;
  const std::complex<long double> eb(std::cos(2 * std::numbers::pi_v<long double> * b),
                                     std::sin(2 * std::numbers::pi_v<long double> * b));
  const std::complex<long double> r = ea * (eb - 1.0L) / (ea - 1.0L);
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

cplx sparse_at_lattice(const SparseWeights& f, u64 j, u64 M) {
  const auto idx = f.indices();
  const auto val = f.values();
  cplx s{};
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const u64 t = static_cast<u64>(static_cast<u128>(j) * idx[i] % M);
    s += val[i] * e1(static_cast<long double>(t) / M);
  }
  return s;
}

std::vector<std::pair<u64, u64>> farey(u64 Q) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 q = 1; q <= Q; ++q)
    for (u64 a = 0; a < q; ++a)
      if (std::gcd(a, q) == 1) out.emplace_back(a, q);
  return out;
}

bool dense_feasible(u64 M) { return M <= kMaxDenseGrid; }

}  // namespace

cplx FourierGrid::at(u64 j) const {
  j %= M;
  if (!half || j < values.size()) return values[j];
  return std::conj(values[M - j]);
}

double FourierGrid::multiplicity(std::size_t j) const {
  if (!half || j == 0) return 1.0;
  if (M % 2 == 0 && j == M / 2) return 1.0;
  return 2.0;
}

u64 next_pow2(u64 n) {
  u64 p = 1;
  while (p < n) p <<= 1;
  return p;
}

u64 default_grid_size(u64 N) { return next_pow2(8 * std::max<u64>(N, 1)); }

FourierGrid fourier_grid(std::span<const double> f, u64 M, std::string source) {
  const u64 N = f.size();
  require(M >= N && M >= 1, ErrorCode::grid_too_coarse,
          "grid size M = " + std::to_string(M) + " is below N = " + std::to_string(N));
  check_fft_size(M);
  auto in = fftw_array<double>(M);
  std::memset(in.get(), 0, sizeof(double) * M);
  for (u64 i = 0; i < N; ++i) in[(i + 1) % M] += f[i];
  FourierGrid g;
  g.M = M;
  g.N = N;
  g.half = true;
  g.source = std::move(source);
  g.values.resize(M / 2 + 1);
  real_fft(in.get(), M, [&](std::size_t j, cplx v) { g.values[j] = v; });
  return g;
}

FourierGrid fourier_grid(const SparseWeights& f, u64 M) {
  require(M >= f.N() && M >= 1, ErrorCode::grid_too_coarse,
          "grid size M = " + std::to_string(M) + " is below N = " + std::to_string(f.N()));
  check_fft_size(M);
  auto in = fftw_array<double>(M);
  std::memset(in.get(), 0, sizeof(double) * M);
  const auto idx = f.indices();
  const auto val = f.values();
  for (std::size_t i = 0; i < idx.size(); ++i) in[idx[i] % M] += val[i];
  FourierGrid g;
  g.M = M;
  g.N = f.N();
  g.half = true;
  g.source = "sparse";
  g.values.resize(M / 2 + 1);
  real_fft(in.get(), M, [&](std::size_t j, cplx v) { g.values[j] = v; });
  return g;
}

cplx indicator_transform(u64 N, long double alpha) {
  alpha -= std::floor(alpha);
  if (alpha == 0) return {static_cast<double>(N), 0.0};
  const std::complex<long double> ea = std::polar(1.0L, 2 * std::numbers::pi_v<long double> * alpha);
  const long double b = alpha * N - std::floor(alpha * N);
  const std::complex<long double> eb = std::polar(1.0L, 2 * std::numbers::pi_v<long double> * b);
  const std::complex<long double> r = ea * (eb - 1.0L) / (ea - 1.0L);
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

double grid_moment(const FourierGrid& grid, double u) {
  require(u > 0, ErrorCode::invalid_argument, "moment exponent must be positive");
  long double s = 0;
  for (std::size_t j = 0; j < grid.values.size(); ++j)
    s += grid.multiplicity(j) * std::pow(static_cast<long double>(std::abs(grid.values[j])), u);
  return static_cast<double>(s / grid.M);
}

DecayMode parse_decay_mode(const std::string& text) {
  if (text == "auto") return DecayMode::automatic;
  if (text == "dense") return DecayMode::dense;
  if (text == "sampled") return DecayMode::sampled;
  fail(ErrorCode::parse_error, "decay mode must be auto, dense or sampled, got '" + text + "'");
}

std::string to_string(DecayMode m) {
  switch (m) {
    case DecayMode::dense: return "dense";
    case DecayMode::sampled: return "sampled";
    default: return "auto";
  }
}

DecayReport fourier_decay(const SparseWeights& nu, u64 M, DecayMode mode, u64 seed, std::size_t random_points,
                          const Exec& exec) {
  const u64 N = nu.N();
  if (M == 0) M = default_grid_size(N);
  require(M >= 2 * N, ErrorCode::grid_too_coarse,
          "decay needs M >= 2N, got M = " + std::to_string(M) + ", N = " + std::to_string(N));
  if (mode == DecayMode::automatic) mode = dense_feasible(M) ? DecayMode::dense : DecayMode::sampled;
  DecayReport r;
  r.mode = mode;
  r.M = M;
  const double scale = 1.0 / static_cast<double>(std::max<u64>(N, 1));

  if (mode == DecayMode::dense) {
    require(dense_feasible(M), ErrorCode::invalid_argument,
            "dense grid of size " + std::to_string(M) + " exceeds the memory cap; use sampled mode");
    check_fft_size(M);
    auto in = fftw_array<double>(M);
    std::memset(in.get(), 0, sizeof(double) * M);
    for (u64 n = 1; n <= N; ++n) in[n % M] = -1.0;
    const auto idx = nu.indices();
    const auto val = nu.values();
    for (std::size_t i = 0; i < idx.size(); ++i) in[idx[i] % M] += val[i];
    real_fft(in.get(), M, [&](std::size_t j, cplx v) {
      const double a = std::abs(v) * scale;
      if (a > r.value) {
        r.value = a;
        r.argmax = static_cast<double>(j) / static_cast<double>(M);
      }
    });
    r.points = M / 2 + 1;
    return r;
  }

  std::vector<u64> probes;
  for (auto [a, q] : farey(64)) {
    const i64 centre = static_cast<i64>(std::llround(static_cast<long double>(a) * M / q));
    for (i64 k = -8; k <= 8; ++k) {
      const i64 j = ((centre + k) % static_cast<i64>(M) + static_cast<i64>(M)) % static_cast<i64>(M);
      probes.push_back(static_cast<u64>(j));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> uni(0, M - 1);
  for (std::size_t i = 0; i < random_points; ++i) probes.push_back(uni(rng));
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  std::vector<std::pair<double, u64>> best(chunk_count(probes.size(), exec), {-1.0, 0});
  parallel_chunks(probes.size(), exec, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const u64 j = probes[i];
      const double a = std::abs(sparse_at_lattice(nu, j, M) - indicator_lattice(N, j, M)) * scale;
      if (a > best[w].first) best[w] = {a, j};
    }
  });
  for (const auto& [v, j] : best)
    if (v > r.value) {
      r.value = v;
      r.argmax = static_cast<double>(j) / static_cast<double>(M);
    }
  r.points = probes.size();
  return r;
}

MomentReport restriction_moment(const FourierGrid& grid, double u, double l1) {
  MomentReport r;
  r.u = u;
  r.M = grid.M;
  r.points = grid.M;
  r.moment = grid_moment(grid, u);
  const double denom = std::pow(l1, u) / static_cast<double>(std::max<u64>(grid.N, 1));
  r.ratio = denom > 0 ? r.moment / denom : 0.0;
  return r;
}

MomentReport restriction_moment(const SparseWeights& f, double u, u64 M, DecayMode mode, u64 seed,
                                const Exec& exec) {
  require(u > 0, ErrorCode::invalid_argument, "moment exponent must be positive");
  const u64 N = std::max<u64>(f.N(), 1);
  if (M == 0) M = default_grid_size(N);
  if (mode == DecayMode::automatic) mode = dense_feasible(M) ? DecayMode::dense : DecayMode::sampled;
  if (mode == DecayMode::dense) {
    require(M >= 2 * f.N(), ErrorCode::grid_too_coarse, "restriction moment needs M >= 2N");
    require(dense_feasible(M), ErrorCode::invalid_argument,
            "dense grid of size " + std::to_string(M) + " exceeds the memory cap; use sampled mode");
    return restriction_moment(fourier_grid(f, M), u, f.l1());
  }

  MomentReport r;
  r.u = u;
  r.sampled = true;
  r.M = M;
  const double l1 = f.l1();
  const double denom = std::pow(l1, u) / static_cast<double>(N);
  if (f.empty()) return r;

  constexpr u64 kQ = 32;
  constexpr int kRadius = 64;       // window half-width in units of 1/N
  constexpr int kPerUnit = 4;       // quadrature points per 1/N
  const auto centres = farey(kQ);
  const long double half_width = static_cast<long double>(kRadius) / N;
  require(2 * half_width * kQ * kQ < 1, ErrorCode::invalid_argument,
          "N too small for the stratified moment; use dense mode");
  const int steps = 2 * kRadius * kPerUnit;
  const long double step = 1.0L / (static_cast<long double>(kPerUnit) * N);
  const auto idx = f.indices();
  const auto val = f.values();

  std::vector<long double> window_sum(centres.size(), 0.0L);
  parallel_chunks(centres.size(), exec, [&](std::size_t, std::size_t lo, std::size_t hi) {
    std::vector<cplx> z(idx.size()), rot(idx.size());
    for (std::size_t c = lo; c < hi; ++c) {
      const auto [a, q] = centres[c];
      const long double start = -half_width + step / 2;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const u64 an = static_cast<u64>(static_cast<u128>(a) * (idx[i] % q) % q);
        z[i] = e1(static_cast<long double>(an) / q + start * idx[i]);
        rot[i] = e1(step * idx[i]);
      }
      long double acc = 0;
      for (int k = 0; k < steps; ++k) {
        cplx s{};
        for (std::size_t i = 0; i < idx.size(); ++i) {
          s += val[i] * z[i];
          z[i] *= rot[i];
        }
        acc += std::pow(static_cast<long double>(std::abs(s)), u);
      }
      window_sum[c] = acc * step;
    }
  });
  long double windows = 0;
  for (long double v : window_sum) windows += v;

  const long double covered = 2 * half_width * centres.size();
  auto inside = [&](long double alpha) {
    for (const auto& [a, q] : centres) {
      long double dist = std::fabs(alpha - static_cast<long double>(a) / q);
      dist = std::min(dist, 1 - dist);
      if (dist < half_width) return true;
    }
    return false;
  };
  constexpr std::size_t kUniform = 8192;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> alphas;
  while (alphas.size() < kUniform) {
    const double a = uni(rng);
    if (!inside(a)) alphas.push_back(a);
  }
  std::vector<long double> parts(chunk_count(alphas.size(), exec), 0.0L);
  parallel_chunks(alphas.size(), exec, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const PhaseReducer ph(TorusPoint::from_double(alphas[i]), 1);
      cplx s{};
      for (std::size_t t = 0; t < idx.size(); ++t) s += val[t] * ph.term(idx[t]);
      parts[w] += std::pow(static_cast<long double>(std::abs(s)), u);
    }
  });
  long double rest = 0;
  for (long double v : parts) rest += v;
  rest = rest / kUniform * (1 - covered);

  r.moment = static_cast<double>(windows + rest);
  r.ratio = denom > 0 ? r.moment / denom : 0.0;
  r.points = centres.size() * static_cast<std::size_t>(steps) + kUniform;
  return r;
}

}  // namespace pslab::expsum
