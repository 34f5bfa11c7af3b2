#include "pslab/sawtooth.hpp"

#include <cmath>
#include <numbers>

#include "pslab/error.hpp"
#include "pslab/exponents.hpp"

namespace pslab::expsum {
namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

long double vaaler_phi(long double t) {
  const long double at = std::fabs(t);
  return kPi * t * (1 - at) / std::tan(kPi * t) + at;
}

}  // namespace

double psi(long double t) { return static_cast<double>(t - std::floor(t) - 0.5L); }

namespace {

// psi(-m^{1/c}) with floor(-m^{1/c}) = -ceil(m^{q/p}) taken exactly, so exact
// roots land on -1/2 instead of either side of the jump.
double psi_neg_root(u64 m, const PSExponent& c, long double inv) {
  const long double y = std::pow(static_cast<long double>(m), inv);
  const long double ceil_y = static_cast<long double>(ceil_root_power(m, static_cast<unsigned>(c.q()),
                                                                      static_cast<unsigned>(c.p())));
  return static_cast<double>(ceil_y - y - 0.5L);
}

}  // namespace

double delta_psi(long double t, const PSExponent& c) {
  const long double inv = static_cast<long double>(c.q()) / c.p();
  if (t >= 0 && t < 0x1p62L && std::floor(t) == t) {
    const u64 m = static_cast<u64>(t);
    return psi_neg_root(m + 1, c, inv) - psi_neg_root(m, c, inv);
  }
  return psi(-std::pow(t + 1, inv)) - psi(-std::pow(t, inv));
}

PsiApprox vaaler_approx(int H) {
  require(H >= 2, ErrorCode::invalid_argument, "vaaler_approx needs H >= 2");
  PsiApprox out;
  out.H = H;
  out.a.assign(static_cast<std::size_t>(H), cplx{});
  for (int h = 1; h < H; ++h) {
    const long double ph = vaaler_phi(static_cast<long double>(h) / H);
    out.a[h - 1] = cplx(0.0, static_cast<double>(ph / (2 * kPi * h)));
  }
  out.b.resize(static_cast<std::size_t>(H));
  for (int h = 0; h < H; ++h) out.b[h] = (1.0 - static_cast<double>(h) / H) / (2.0 * H);
  out.C_a = static_cast<double>(1 / (2 * kPi));
  out.C_b = 0.5;
  return out;
}

double eval_psi_star(const PsiApprox& approx, long double t) {
  long double s = 0;
  for (int h = 1; h <= approx.H; ++h) {
    const cplx& a = approx.a[h - 1];
    if (a == cplx{}) continue;
    // a_h e(ht) + conj(a_h) e(-ht) = 2 Re(a_h e(ht))
    const long double ang = 2 * kPi * h * t;
    s += 2 * (a.real() * std::cos(ang) - a.imag() * std::sin(ang));
  }
  return static_cast<double>(s);
}

double eval_majorant(const PsiApprox& approx, long double t) {
  long double s = approx.b[0];
  for (std::size_t h = 1; h < approx.b.size(); ++h) s += 2 * approx.b[h] * std::cos(2 * kPi * h * t);
  return static_cast<double>(s);
}

VaalerCheck vaaler_check(int H, std::size_t grid, double tol) {
  require(grid >= 1, ErrorCode::invalid_argument, "grid must be non-empty");
  const PsiApprox ap = vaaler_approx(H);
  VaalerCheck r;
  r.H = H;
  r.grid = grid;
  r.worst_excess = -1e300;
  long double err_sum = 0, maj_sum = 0;
  for (std::size_t j = 0; j < grid; ++j) {
    const long double t = static_cast<long double>(j) / grid;
    const double err = std::fabs(psi(t) - eval_psi_star(ap, t));
    const double maj = eval_majorant(ap, t);
    r.worst_excess = std::max(r.worst_excess, err - maj);
    r.sup_error = std::max(r.sup_error, err);
    err_sum += err;
    maj_sum += maj;
  }
  r.mean_error = static_cast<double>(err_sum / grid);
  r.majorant_mean = static_cast<double>(maj_sum / grid);
  r.majorant_holds = r.worst_excess <= tol;
  return r;
}

u64 ab_H(u64 y, const PSExponent& c, double v) {
  const double H = std::floor(std::pow(static_cast<double>(y), 1 - c.inverse() + v));
  return H < 1 ? 1 : static_cast<u64>(H);
}

ABValues ab_decomposition(u64 y, u64 H, int d, const TorusPoint& theta, const PSExponent& c) {
  require(y >= 2, ErrorCode::invalid_argument, "ab_decomposition needs y >= 2");
  require(H >= 1, ErrorCode::invalid_argument, "H must be >= 1");
  const long double inv = static_cast<long double>(c.q()) / c.p();
  const PhaseReducer ph(theta, d);
  std::vector<long double> root(y);
  std::vector<long double> pphase(y);
  for (u64 i = 0; i < y; ++i) {
    const u64 m = y + 1 + i;
    root[i] = std::pow(static_cast<long double>(m), inv);
    pphase[i] = ph.phase(m);
  }
  ABValues r;
  r.y = y;
  r.H = H;
  long double a_sum = 0;
  for (u64 h = 0; h < H; ++h) {
    cplx s{};
    for (u64 i = 0; i < y; ++i) s += e1(h * root[i]);
    a_sum += (h == 0 ? 1 : 2) * std::abs(s);  // |h| and -|h| give conjugate sums
  }
  r.A = static_cast<double>(a_sum / H);
  long double b_sum = 0;
  for (u64 hh = 1; hh <= H; ++hh)
    for (int sign : {1, -1}) {
      cplx s{};
      double best = 0;
      const long double h = static_cast<long double>(sign) * hh;
      for (u64 i = 0; i < y; ++i) {
        s += e1(pphase[i] + h * root[i]);
        best = std::max(best, std::abs(s));
      }
      b_sum += best;
    }
  r.B = static_cast<double>(std::pow(static_cast<long double>(y), inv - 1) * b_sum);
  r.envelope = std::pow(static_cast<double>(y), to_double(exponents::theta(d, c.value())) * c.inverse());
  return r;
}

}  // namespace pslab::expsum
