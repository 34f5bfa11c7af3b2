#include "pslab/subspace.hpp"

#include <fstream>
#include <sstream>

#include "pslab/error.hpp"

namespace pslab::dioph {
namespace {

std::vector<BigInt> clear_denominators(const std::vector<Rational>& row) {
  BigInt l = 1;
  for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<BigInt> out;
  out.reserve(row.size());
  for (const auto& q : row) out.push_back(q.get_num() * (l / q.get_den()));
  return out;
}

std::vector<std::vector<Rational>> with_hyperplane(const Subspace& sub, const std::vector<i64>& coeffs) {
  std::vector<std::vector<Rational>> m;
  std::vector<Rational> c;
  for (i64 v : coeffs) c.emplace_back(static_cast<long>(v));
  m.push_back(c);
  for (const auto& r : sub.rows) {
    std::vector<Rational> row;
    for (const auto& v : r) row.emplace_back(v);
    m.push_back(row);
  }
  return m;
}

}  // namespace

std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

SubspaceUnion SubspaceUnion::diagonal(int s) {
  require(s >= 2, ErrorCode::invalid_argument, "diagonal needs s >= 2");
  Subspace sub;
  for (int i = 0; i + 1 < s; ++i) {
    std::vector<BigInt> row(s, 0);
    row[i] = 1;
    row[i + 1] = -1;
    sub.rows.push_back(row);
  }
  return SubspaceUnion(s, {sub});
}

SubspaceUnion SubspaceUnion::parse(const std::string& text, int s) {
  std::vector<Subspace> parts;
  Subspace cur;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto flush = [&] {
    if (!cur.rows.empty()) parts.push_back(std::move(cur));
    cur = Subspace{};
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<Rational> row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_rational(tok));
    if (row.empty()) {
      flush();
      continue;
    }
    require(static_cast<int>(row.size()) == s, ErrorCode::parse_error,
            "line " + std::to_string(lineno) + ": expected " + std::to_string(s) + " coefficients, got " +
                std::to_string(row.size()));
    cur.rows.push_back(clear_denominators(row));
  }
  flush();
  require(!parts.empty(), ErrorCode::parse_error, "subspace file holds no constraint rows");
  return SubspaceUnion(s, std::move(parts));
}

SubspaceUnion SubspaceUnion::load(const std::string& path, int s) {
  std::ifstream f(path);
  require(static_cast<bool>(f), ErrorCode::io_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), s);
}

std::string SubspaceUnion::serialize() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) out << "\n";
    for (const auto& row : parts_[k].rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i].get_str();
      out << "\n";
    }
  }
  return out.str();
}

void SubspaceUnion::validate(const std::vector<i64>& coeffs) const {
  require(static_cast<int>(coeffs.size()) == s_, ErrorCode::invalid_argument,
          "subspace union has " + std::to_string(s_) + " coordinates, system has " + std::to_string(coeffs.size()));
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    for (const auto& row : parts_[k].rows) {
      BigInt sum = 0;
      for (const auto& v : row) sum += v;
      require(sgn(sum) == 0, ErrorCode::invalid_argument,
              "subspace " + std::to_string(k + 1) + " does not contain the diagonal");
    }
    require(dimension(k, coeffs) < s_ - 1, ErrorCode::invalid_argument,
            "subspace " + std::to_string(k + 1) + " is not proper in the hyperplane");
  }
}

int SubspaceUnion::dimension(std::size_t k, const std::vector<i64>& coeffs) const {
  auto m = with_hyperplane(parts_.at(k), coeffs);
  return s_ - static_cast<int>(rref(m).size());
}

bool SubspaceUnion::contains(const std::vector<BigInt>& y) const {
  for (const auto& sub : parts_) {
    bool all = true;
    for (const auto& row : sub.rows) {
      BigInt dot = 0;
      for (std::size_t i = 0; i < row.size(); ++i) dot += row[i] * y[i];
      if (sgn(dot) != 0) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace pslab::dioph
