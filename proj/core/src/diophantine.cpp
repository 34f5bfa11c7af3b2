#include "pslab/diophantine.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "pslab/error.hpp"
#include "pslab/exponents.hpp"
#include "pslab/mitm.hpp"

namespace pslab::dioph {
namespace {

enum class KeyKind { i64k, i128k, big };

BigInt pow_big(u64 v, int d) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), v, static_cast<unsigned long>(d));
  return out;
}

KeyKind key_kind(const std::vector<std::vector<u64>>& domains, const EquationSystem& sys) {
  BigInt bound = 0;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    u64 mx = 0;
    for (u64 v : domains[i]) mx = std::max(mx, v);
    bound += BigInt(static_cast<long>(std::llabs(sys.coeffs[i]))) * pow_big(mx, sys.d);
  }
  if (bound < BigInt(1) << 62) return KeyKind::i64k;
  if (bound < BigInt(1) << 125) return KeyKind::i128k;
  return KeyKind::big;
}

template <class Key>
Key make_term(i64 c, u64 v, int d) {
  if constexpr (std::is_same_v<Key, BigInt>) {
    return BigInt(static_cast<long>(c)) * pow_big(v, d);
  } else {
    return static_cast<Key>(c) * static_cast<Key>(checked_pow(v, static_cast<unsigned>(d)));
  }
}

template <class F>
auto with_mitm(const std::vector<std::vector<u64>>& domains, const EquationSystem& sys, std::size_t budget,
               F&& f) {
  std::vector<double> weight;
  for (i64 c : sys.coeffs) weight.push_back(static_cast<double>(std::llabs(c)));
  auto build = [&](auto tag) {
    using Key = decltype(tag);
    std::vector<std::vector<Key>> terms(domains.size());
    for (std::size_t i = 0; i < domains.size(); ++i)
      for (u64 v : domains[i]) terms[i].push_back(make_term<Key>(sys.coeffs[i], v, sys.d));
    return Mitm<Key>(std::move(terms), weight, budget);
  };
  switch (key_kind(domains, sys)) {
    case KeyKind::i64k: {
      auto m = build(i64{});
      return f(m);
    }
    case KeyKind::i128k: {
      auto m = build(i128{});
      return f(m);
    }
    default: {
      auto m = build(BigInt{});
      return f(m);
    }
  }
}

std::vector<BigInt> k_vector(std::span<const u64> x, int d, KMode mode) {
  std::vector<BigInt> y;
  y.reserve(x.size());
  for (u64 v : x) y.push_back(mode == KMode::powers ? pow_big(v, d) : to_bigint(static_cast<u128>(v)));
  return y;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string EquationSystem::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out << (i ? "," : "") << coeffs[i];
  return out.str();
}

EquationSystem validate_system(std::vector<i64> coeffs, int d) {
  require(d >= 1, ErrorCode::invalid_degree, "d must be >= 1");
  require(coeffs.size() >= 2, ErrorCode::invalid_argument, "a system needs at least two coefficients");
  i128 sum = 0;
  for (i64 c : coeffs) {
    require(c != 0, ErrorCode::degenerate, "zero coefficient");
    sum += c;
  }
  require(sum == 0, ErrorCode::not_translation_invariant,
          "coefficients sum to " + pslab::to_string(sum) + ", not 0");
  return {d, std::move(coeffs)};
}

std::vector<i64> parse_coeffs(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      require(used == tok.size(), ErrorCode::parse_error, "bad coefficient '" + tok + "'");
    } catch (const std::logic_error&) {
      fail(ErrorCode::parse_error, "bad coefficient '" + tok + "'");
    }
  }
  return out;
}

KMode parse_k_mode(const std::string& text) {
  if (text == "powers") return KMode::powers;
  if (text == "raw") return KMode::raw;
  fail(ErrorCode::parse_error, "K mode must be powers or raw, got '" + text + "'");
}

bool is_K_trivial(std::span<const u64> x, const EquationSystem& sys, const SubspaceUnion& K, KMode mode) {
  require(static_cast<int>(x.size()) == sys.s() && K.s() == sys.s(), ErrorCode::invalid_argument,
          "vector, system and K disagree on s");
  return K.contains(k_vector(x, sys.d, mode));
}

BigInt count_solutions(const std::vector<std::vector<u64>>& domains, const EquationSystem& sys, const Exec& exec,
                       std::size_t table_budget) {
  require(static_cast<int>(domains.size()) == sys.s(), ErrorCode::invalid_argument, "one domain per coordinate");
  return with_mitm(domains, sys, table_budget, [&](auto& m) { return to_bigint(m.count(exec)); });
}

BigInt count_solutions(std::span<const u64> A, const EquationSystem& sys, const Exec& exec,
                       std::size_t table_budget) {
  std::vector<std::vector<u64>> domains(sys.s(), std::vector<u64>(A.begin(), A.end()));
  return count_solutions(domains, sys, exec, table_budget);
}

SolutionReport enumerate_solutions(std::span<const u64> A, const EquationSystem& sys, const SubspaceUnion& K,
                                   std::size_t cap, KMode mode, const Exec& exec, std::size_t table_budget) {
  const auto t0 = std::chrono::steady_clock::now();
  require(K.s() == sys.s(), ErrorCode::invalid_argument, "K and the system disagree on s");
  const std::vector<u64> dom(A.begin(), A.end());
  std::vector<std::vector<u64>> domains(sys.s(), dom);
  struct Part {
    u128 total = 0, trivial = 0;
    std::vector<std::vector<u64>> witnesses;
  };
  SolutionReport rep;
  with_mitm(domains, sys, table_budget, [&](auto& m) {
    const std::size_t n = m.probe_count();
    std::vector<Part> parts(chunk_count(n, exec));
    parallel_chunks(n, exec, [&](std::size_t w, std::size_t lo, std::size_t hi) {
      Part& p = parts[w];
      std::vector<u64> x(sys.s());
      m.visit_range(lo, hi, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < idx.size(); ++i) x[i] = dom[idx[i]];
        ++p.total;
        if (is_K_trivial(x, sys, K, mode))
          ++p.trivial;
        else if (p.witnesses.size() < cap)
          p.witnesses.push_back(x);
        return true;
      });
    });
    u128 total = 0, trivial = 0;
    for (auto& p : parts) {
      total += p.total;
      trivial += p.trivial;
      for (auto& wv : p.witnesses)
        if (rep.witnesses.size() < cap) rep.witnesses.push_back(std::move(wv));
    }
    rep.total = to_bigint(total);
    rep.trivial = to_bigint(trivial);
    rep.nontrivial = rep.total - rep.trivial;
    rep.truncated = rep.nontrivial > BigInt(static_cast<unsigned long>(rep.witnesses.size()));
    return 0;
  });
  rep.seconds = seconds_since(t0);
  return rep;
}

KTrivialSum k_trivial_weighted_sum(const SparseWeights& nu, const EquationSystem& sys, const SubspaceUnion& K,
                                   const Rational& c, const Rational& eps) {
  require(K.s() == sys.s(), ErrorCode::invalid_argument, "K and the system disagree on s");
  const int s = sys.s();
  KTrivialSum out;
  const auto dp = exponents::degree_params(sys.d);
  if (s >= dp.s_bar) {
    const auto er = exponents::eta(sys.d, s, c, eps);
    out.eta = er.eta;
    out.eta_admissible = er.admissible;
  } else {
    // Below s_bar the saving is not claimed; the same formula still sets the
    // comparison scale.
    out.eta = (sys.d * c - s * (c - 1) * dp.S) / (sys.d * c * (s - 1)) - eps;
    out.eta.canonicalize();
    out.eta_admissible = false;
  }

  struct Param {
    std::vector<std::size_t> free;
    // pivot column p: L * y_p = -sum_f coef[f] * y_f
    std::vector<std::size_t> pivot;
    std::vector<std::vector<i128>> coef;
    std::vector<i128> scale;
  };
  std::vector<Param> params;
  for (std::size_t k = 0; k < K.parts().size(); ++k) {
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> crow;
    for (i64 v : sys.coeffs) crow.emplace_back(static_cast<long>(v));
    m.push_back(crow);
    for (const auto& r : K.parts()[k].rows) {
      std::vector<Rational> row;
      for (const auto& v : r) row.emplace_back(v);
      m.push_back(row);
    }
    const auto piv = rref(m);
    Param p;
    std::vector<bool> is_pivot(s, false);
    for (std::size_t c0 : piv) is_pivot[c0] = true;
    for (int j = 0; j < s; ++j)
      if (!is_pivot[j]) p.free.push_back(j);
    require(p.free.size() <= 2, ErrorCode::enumeration_refused,
            "subspace " + std::to_string(k + 1) + " has dimension " + std::to_string(p.free.size()) +
                "; weighted enumeration supports at most 2");
    for (std::size_t r = 0; r < piv.size(); ++r) {
      BigInt L = 1;
      for (std::size_t f : p.free) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), m[r][f].get_den_mpz_t());
      std::vector<i128> co;
      for (std::size_t f : p.free) co.push_back(to_i128(m[r][f].get_num() * (L / m[r][f].get_den())));
      p.pivot.push_back(piv[r]);
      p.coef.push_back(co);
      p.scale.push_back(to_i128(L));
    }
    params.push_back(std::move(p));
  }

  const auto idx = nu.indices();
  const bool dedupe = params.size() > 1;
  std::set<std::vector<u64>> seen;
  long double left = 0;
  std::vector<u64> y(s);
  auto emit = [&](const Param& p, const std::vector<u64>& fv) {
    for (std::size_t f = 0; f < p.free.size(); ++f) y[p.free[f]] = fv[f];
    for (std::size_t r = 0; r < p.pivot.size(); ++r) {
      i128 num = 0;
      for (std::size_t f = 0; f < p.free.size(); ++f) num -= p.coef[r][f] * static_cast<i128>(fv[f]);
      if (num <= 0 || num % p.scale[r] != 0) return;
      const i128 v = num / p.scale[r];
      if (v > static_cast<i128>(nu.N()) || !nu.contains(static_cast<u64>(v))) return;
      y[p.pivot[r]] = static_cast<u64>(v);
    }
    if (dedupe && !seen.insert(y).second) return;
    long double prod = 1;
    for (u64 v : y) prod *= nu.at(v);
    left += prod;
    ++out.points;
  };
  for (const auto& p : params) {
    if (p.free.size() == 1) {
      for (u64 a : idx) emit(p, {a});
    } else if (p.free.size() == 2) {
      for (u64 a : idx)
        for (u64 b : idx) emit(p, {a, b});
    }
  }
  out.left = static_cast<double>(left);
  const double l1 = nu.l1();
  if (l1 > 0) {
    const double logN = std::log(static_cast<double>(std::max<u64>(nu.N(), 1)));
    out.right = std::exp(s * std::log(l1) - (1 + to_double(out.eta)) * logN);
  }
  out.ratio = out.right > 0 ? out.left / out.right : 0.0;
  return out;
}

GreedyResult greedy_avoider(std::span<const u64> candidates, const EquationSystem& sys, const SubspaceUnion& K,
                            const Exec& exec) {
  require(K.s() == sys.s(), ErrorCode::invalid_argument, "K and the system disagree on s");
  GreedyResult g;
  g.candidates = candidates.size();
  const int s = sys.s();
  std::vector<u64> x(s);
  for (u64 p : candidates) {
    require(g.A.empty() || p > g.A.back(), ErrorCode::invalid_argument, "candidates must be increasing");
    g.A.push_back(p);
    bool clean = true;
    for (int i = 0; i < s && clean; ++i) {
      std::vector<std::vector<u64>> domains(s, g.A);
      domains[i] = {p};
      with_mitm(domains, sys, kDefaultTableBudget, [&](auto& m) {
        m.visit([&](const std::vector<std::size_t>& idx) {
          for (int j = 0; j < s; ++j) x[j] = domains[j][idx[j]];
          if (!is_K_trivial(x, sys, K, KMode::powers)) clean = false;
          return clean;
        });
        return 0;
      });
    }
    if (!clean) g.A.pop_back();
  }
  g.verification = enumerate_solutions(g.A, sys, K, 16, KMode::powers, exec);
  return g;
}

GreedyResult greedy_avoider(u64 x, const PSExponent& c, const EquationSystem& sys, const SubspaceUnion& K,
                            const Exec& exec) {
  const std::vector<u64> primes = x >= 2 ? ps_primes(x, c, exec).members : std::vector<u64>{};
  GreedyResult g = greedy_avoider(primes, sys, K, exec);
  if (x >= 3) {
    try {
      g.bound = exponents::density_bound(static_cast<double>(x), sys.d, sys.s(), c.value());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::bound_undefined) throw;
    }
  }
  return g;
}

}  // namespace pslab::dioph
