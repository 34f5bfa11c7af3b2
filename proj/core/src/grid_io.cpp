#include <bit>
#include <cstring>
#include <fstream>

#include "pslab/error.hpp"
#include "pslab/fourier.hpp"

namespace pslab::expsum {
namespace {

constexpr char kMagic[8] = {'P', 'S', 'L', 'G', 'R', 'I', 'D', '1'};

static_assert(std::endian::native == std::endian::little, "grid dumps assume a little-endian host");

void put_u64(std::ostream& os, u64 v) { os.write(reinterpret_cast<const char*>(&v), 8); }

u64 get_u64(std::istream& is) {
  u64 v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

}  // namespace

void write_grid(const std::string& path, const FourierGrid& grid) {
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), ErrorCode::io_error, "cannot open '" + path + "' for writing");
  os.write(kMagic, 8);
  put_u64(os, grid.M);
  put_u64(os, grid.N);
  put_u64(os, grid.half ? 1 : 0);
  for (const cplx& v : grid.values) {
    const float re = static_cast<float>(v.real()), im = static_cast<float>(v.imag());
    os.write(reinterpret_cast<const char*>(&re), 4);
    os.write(reinterpret_cast<const char*>(&im), 4);
  }
  require(static_cast<bool>(os), ErrorCode::io_error, "write to '" + path + "' failed");
}

FourierGrid read_grid(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(static_cast<bool>(is), ErrorCode::io_error, "cannot open '" + path + "'");
  char magic[8];
  is.read(magic, 8);
  require(is && std::memcmp(magic, kMagic, 8) == 0, ErrorCode::parse_error, "'" + path + "' is not a grid dump");
  FourierGrid g;
  g.M = get_u64(is);
  g.N = get_u64(is);
  g.half = (get_u64(is) & 1) != 0;
  g.source = path;
  const u64 count = g.half ? g.M / 2 + 1 : g.M;
  g.values.resize(count);
  for (auto& v : g.values) {
    float re = 0, im = 0;
    is.read(reinterpret_cast<char*>(&re), 4);
    is.read(reinterpret_cast<char*>(&im), 4);
    v = cplx(re, im);
  }
  require(static_cast<bool>(is), ErrorCode::parse_error, "'" + path + "' is truncated");
  return g;
}

}  // namespace pslab::expsum
