#include "zeroprof/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zeroprof/parallel.hpp"

namespace zeroprof::roots {

namespace {

using IPoly = std::vector<Integer>;  // index = power

constexpr int kSturmMaxDegree = 64;

int ideg(const IPoly& f) {
  for (int k = static_cast<int>(f.size()) - 1; k >= 0; --k)
    if (f[static_cast<size_t>(k)] != 0) return k;
  return -1;
}

void itrim(IPoly& f) { f.resize(static_cast<size_t>(std::max(ideg(f), 0)) + 1); }

IPoly to_ipoly(const ExactPolynomial& p) {
  IPoly f = primitive_integer_coeffs(p);
  itrim(f);
  return f;
}

ExactPolynomial from_ipoly(const IPoly& f) {
  ExactPolynomial p(static_cast<int>(f.size()) - 1);
  for (size_t k = 0; k < f.size(); ++k) p.coeffs[k] = Rational(f[k]);
  return p;
}

IPoly iderivative(const IPoly& f) {
  if (f.size() <= 1) return IPoly{Integer(0)};
  IPoly r(f.size() - 1);
  for (size_t k = 1; k < f.size(); ++k) r[k - 1] = f[k] * Integer(static_cast<unsigned long>(k));
  return r;
}

void make_primitive(IPoly& f) {
  Integer g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : f) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// lc(b)^(da-db+1) a = q b + r; returns r.
IPoly pseudo_remainder(IPoly a, const IPoly& b) {
  const int db = ideg(b);
  const Integer& lb = b[static_cast<size_t>(db)];
  int da = ideg(a);
  int steps = da - db + 1;
  while (da >= db && da >= 0) {
    Integer la = a[static_cast<size_t>(da)];
    for (auto& c : a) c *= lb;
    for (int k = 0; k <= db; ++k) a[static_cast<size_t>(da - db + k)] -= la * b[static_cast<size_t>(k)];
    --steps;
    da = ideg(a);
  }
  if (steps > 0) {
    Integer f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps));
    for (auto& c : a) c *= f;
  }
  itrim(a);
  return a;
}

IPoly igcd(IPoly a, IPoly b) {
  if (ideg(a) < ideg(b)) std::swap(a, b);
  make_primitive(a);
  if (ideg(b) < 0) return a;
  make_primitive(b);
  while (ideg(b) > 0) {
    IPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    if (ideg(r) < 0) {
      b = IPoly{Integer(0)};
      break;
    }
    make_primitive(r);
    b = std::move(r);
  }
  if (ideg(b) == 0) return IPoly{Integer(1)};
  if (a[static_cast<size_t>(ideg(a))] < 0)
    for (auto& c : a) c = -c;
  return a;
}

// Dyadic rational m / 2^e.
struct Dyadic {
  Integer m;
  unsigned long e = 0;
};

void normalize(Dyadic& d) {
  if (d.m == 0) {
    d.e = 0;
    return;
  }
  unsigned long tz = mpz_scan1(d.m.get_mpz_t(), 0);
  unsigned long s = std::min(tz, d.e);
  if (s > 0) {
    mpz_fdiv_q_2exp(d.m.get_mpz_t(), d.m.get_mpz_t(), s);
    d.e -= s;
  }
}

Dyadic midpoint(const Dyadic& a, const Dyadic& b) {
  unsigned long e = std::max(a.e, b.e);
  Integer ma = a.m, mb = b.m;
  mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), e - a.e);
  mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), e - b.e);
  Dyadic r{ma + mb, e + 1};
  normalize(r);
  return r;
}

Dyadic offset(const Dyadic& a, long sign, unsigned long shift) {
  // a + sign 2^-shift
  unsigned long e = std::max(a.e, shift);
  Integer m = a.m;
  mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), e - a.e);
  Integer one = 1;
  mpz_mul_2exp(one.get_mpz_t(), one.get_mpz_t(), e - shift);
  Dyadic r{sign > 0 ? Integer(m + one) : Integer(m - one), e};
  normalize(r);
  return r;
}

int sign_at(const IPoly& f, const Dyadic& x) {
  // sign of sum c_k m^k 2^{e(d-k)}
  const int d = static_cast<int>(f.size()) - 1;
  Integer acc = f[static_cast<size_t>(d)], t;
  for (int k = d - 1; k >= 0; --k) {
    acc *= x.m;
    t = f[static_cast<size_t>(k)];
    mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), x.e * static_cast<unsigned long>(d - k));
    acc += t;
  }
  return sgn(acc);
}

double dyadic_to_double(const Dyadic& x) { return std::ldexp(x.m.get_d(), -static_cast<int>(x.e)); }

BigFloat dyadic_to_big(const Dyadic& x, mpfr_prec_t prec) {
  BigFloat v(Rational(x.m), prec);
  return ldexp(v, -static_cast<long>(x.e));
}

class Sturm {
 public:
  explicit Sturm(const IPoly& f) {
    seq_.push_back(f);
    if (ideg(f) <= 0) return;
    IPoly d = iderivative(f);
    make_primitive(d);
    seq_.push_back(d);
    while (true) {
      const IPoly& a = seq_[seq_.size() - 2];
      const IPoly& b = seq_.back();
      int delta = ideg(a) - ideg(b);
      IPoly r = pseudo_remainder(a, b);
      if (ideg(r) < 0 || (ideg(r) == 0 && r[0] == 0)) break;
      bool flip = !(sgn(b[static_cast<size_t>(ideg(b))]) < 0 && (delta + 1) % 2 == 1);
      if (flip)
        for (auto& c : r) c = -c;
      make_primitive(r);
      seq_.push_back(r);
      if (ideg(r) == 0) break;
    }
  }

  int variations(const Dyadic& x) const {
    int v = 0, last = 0;
    for (const auto& s : seq_) {
      int sg = sign_at(s, x);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++v;
      last = sg;
    }
    return v;
  }

  int variations_at_infinity(int side) const {
    int v = 0, last = 0;
    for (const auto& s : seq_) {
      int d = ideg(s);
      int sg = sgn(s[static_cast<size_t>(d)]);
      if (side < 0 && d % 2) sg = -sg;
      if (last != 0 && sg != last) ++v;
      last = sg;
    }
    return v;
  }

  int distinct_real_roots() const {
    if (ideg(seq_.front()) <= 0) return 0;
    return variations_at_infinity(-1) - variations_at_infinity(1);
  }

 private:
  std::vector<IPoly> seq_;
};

// Roots of f lie in (-2^b, 2^b).
unsigned long root_bound_bits(const IPoly& f) {
  const int d = ideg(f);
  size_t lead = mpz_sizeinbase(f[static_cast<size_t>(d)].get_mpz_t(), 2);
  size_t top = 0;
  for (int k = 0; k < d; ++k)
    if (f[static_cast<size_t>(k)] != 0) top = std::max(top, mpz_sizeinbase(f[static_cast<size_t>(k)].get_mpz_t(), 2));
  long b = static_cast<long>(top) - static_cast<long>(lead) + 2;
  return static_cast<unsigned long>(std::max(b, 1L));
}

struct Bracket {
  Dyadic lo, hi;
  bool exact = false;
};

// Isolating brackets with nonzero endpoint signs (or exact dyadic roots), ascending.
std::vector<Bracket> sturm_isolate(const IPoly& f) {
  Sturm st(f);
  const unsigned long b = root_bound_bits(f);
  Dyadic lo{Integer(0), 0}, hi{Integer(0), 0};
  lo.m = -1;
  mpz_mul_2exp(lo.m.get_mpz_t(), lo.m.get_mpz_t(), b);
  hi.m = 1;
  mpz_mul_2exp(hi.m.get_mpz_t(), hi.m.get_mpz_t(), b);
  auto count_open = [&](const Dyadic& a, const Dyadic& c) {
    return st.variations(a) - st.variations(c) - (sign_at(f, c) == 0 ? 1 : 0);
  };
  std::vector<Bracket> out;
  struct Item {
    Dyadic lo, hi;
    int count;
  };
  std::vector<Item> stack{{lo, hi, count_open(lo, hi)}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.count == 0) continue;
    if (it.count == 1 && sign_at(f, it.lo) != 0 && sign_at(f, it.hi) != 0) {
      out.push_back({it.lo, it.hi, false});
      continue;
    }
    Dyadic mid = midpoint(it.lo, it.hi);
    if (sign_at(f, mid) == 0) {
      out.push_back({mid, mid, true});
      // step away from the exact root until the side intervals are root free near mid
      unsigned long shift = std::max(mid.e, std::max(it.lo.e, it.hi.e)) + 2;
      Dyadic left, right;
      while (true) {
        left = offset(mid, -1, shift);
        right = offset(mid, 1, shift);
        if (sign_at(f, left) != 0 && sign_at(f, right) != 0 && count_open(left, mid) == 0 &&
            count_open(mid, right) == 0)
          break;
        ++shift;
      }
      stack.push_back({it.lo, left, count_open(it.lo, left)});
      stack.push_back({right, it.hi, count_open(right, it.hi)});
    } else {
      stack.push_back({it.lo, mid, count_open(it.lo, mid)});
      stack.push_back({mid, it.hi, count_open(mid, it.hi)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Bracket& a, const Bracket& c) {
    return dyadic_to_double(a.lo) < dyadic_to_double(c.lo) ||
           (dyadic_to_double(a.lo) == dyadic_to_double(c.lo) && dyadic_to_double(a.hi) < dyadic_to_double(c.hi));
  });
  return out;
}

// Bisects a sign-change bracket until its width is at most 2^-tol_bits.
BigFloat refine(const IPoly& f, Bracket br, long tol_bits, mpfr_prec_t prec) {
  if (br.exact) return dyadic_to_big(br.lo, prec);
  int slo = sign_at(f, br.lo);
  for (int it = 0; it < 4000; ++it) {
    // width = hi - lo as a dyadic
    unsigned long e = std::max(br.lo.e, br.hi.e);
    Integer a = br.lo.m, c = br.hi.m;
    mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), e - br.lo.e);
    mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), e - br.hi.e);
    Integer w = c - a;
    long wbits = static_cast<long>(mpz_sizeinbase(w.get_mpz_t(), 2)) - static_cast<long>(e);
    if (wbits <= -tol_bits) break;
    Dyadic mid = midpoint(br.lo, br.hi);
    int s = sign_at(f, mid);
    if (s == 0) return dyadic_to_big(mid, prec);
    if (s == slo)
      br.lo = mid;
    else
      br.hi = mid;
  }
  return dyadic_to_big(midpoint(br.lo, br.hi), prec);
}

// ---------------------------------------------------------------------------
// Modular square-free test.

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

int gcd_degree_mod(std::vector<u64> a, std::vector<u64> b, u64 p) {
  auto deg = [](const std::vector<u64>& v) {
    for (int k = static_cast<int>(v.size()) - 1; k >= 0; --k)
      if (v[static_cast<size_t>(k)]) return k;
    return -1;
  };
  while (deg(b) >= 0) {
    int da = deg(a), db = deg(b);
    if (da < db) {
      std::swap(a, b);
      continue;
    }
    u64 inv = powmod(b[static_cast<size_t>(db)], p - 2, p);
    while ((da = deg(a)) >= db) {
      u64 f = mulmod(a[static_cast<size_t>(da)], inv, p);
      for (int k = 0; k <= db; ++k) {
        u64 s = mulmod(f, b[static_cast<size_t>(k)], p);
        u64& t = a[static_cast<size_t>(da - db + k)];
        t = t >= s ? t - s : t + p - s;
      }
    }
    std::swap(a, b);
  }
  return deg(a);
}

bool squarefree_by_modular_test(const IPoly& f) {
  static const u64 primes[] = {4611686018427387847ULL, 4611686018427387817ULL, 4611686018427387787ULL,
                               2305843009213693951ULL};
  const int d = ideg(f);
  for (u64 p : primes) {
    Integer pz(std::to_string(p));
    Integer lr;
    mpz_mod(lr.get_mpz_t(), f[static_cast<size_t>(d)].get_mpz_t(), pz.get_mpz_t());
    if (lr == 0) continue;
    std::vector<u64> a(static_cast<size_t>(d) + 1), b(static_cast<size_t>(d));
    for (int k = 0; k <= d; ++k) {
      Integer r;
      mpz_mod(r.get_mpz_t(), f[static_cast<size_t>(k)].get_mpz_t(), pz.get_mpz_t());
      a[static_cast<size_t>(k)] = std::stoull(r.get_str());
    }
    for (int k = 1; k <= d; ++k) b[static_cast<size_t>(k - 1)] = mulmod(a[static_cast<size_t>(k)], static_cast<u64>(k) % p, p);
    if (gcd_degree_mod(a, b, p) == 0) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Numerical path: Laguerre with implicit deflation, certified by sign alternation.

class Evaluator {
 public:
  Evaluator(const std::vector<BigFloat>& coeffs, mpfr_prec_t prec) : prec_(prec) {
    for (const auto& c : coeffs) {
      BigFloat v(0.0, prec);
      mpfr_set(v.get(), c.get(), MPFR_RNDN);
      c_.push_back(std::move(v));
    }
    for (BigFloat* t : {&p, &p1, &p2, &s, &ax, &tmp}) *t = BigFloat(0.0, prec);
  }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  mpfr_prec_t precision() const { return prec_; }
  const BigFloat& coeff(int k) const { return c_[static_cast<size_t>(k)]; }

  // p, p1 = p', p2 = p''/2
  void eval_derivs(mpfr_srcptr x) {
    const int d = degree();
    mpfr_set(p.get(), c_[static_cast<size_t>(d)].get(), MPFR_RNDN);
    mpfr_set_zero(p1.get(), 1);
    mpfr_set_zero(p2.get(), 1);
    for (int k = d - 1; k >= 0; --k) {
      mpfr_fma(p2.get(), p2.get(), x, p1.get(), MPFR_RNDN);
      mpfr_fma(p1.get(), p1.get(), x, p.get(), MPFR_RNDN);
      mpfr_fma(p.get(), p.get(), x, c_[static_cast<size_t>(k)].get(), MPFR_RNDN);
    }
  }

  // p and s = sum |c_k| |x|^k
  void eval_bound(mpfr_srcptr x) {
    const int d = degree();
    mpfr_abs(ax.get(), x, MPFR_RNDN);
    mpfr_set(p.get(), c_[static_cast<size_t>(d)].get(), MPFR_RNDN);
    mpfr_abs(s.get(), c_[static_cast<size_t>(d)].get(), MPFR_RNDU);
    for (int k = d - 1; k >= 0; --k) {
      mpfr_fma(p.get(), p.get(), x, c_[static_cast<size_t>(k)].get(), MPFR_RNDN);
      mpfr_abs(tmp.get(), c_[static_cast<size_t>(k)].get(), MPFR_RNDU);
      mpfr_fma(s.get(), s.get(), ax.get(), tmp.get(), MPFR_RNDU);
    }
  }

  // Sign of p(x) when it exceeds the rounding error bound, else 0.
  int certified_sign(mpfr_srcptr x) {
    eval_bound(x);
    const int d = degree();
    mpfr_mul_ui(s.get(), s.get(), static_cast<unsigned long>(4 * d + 8), MPFR_RNDU);
    mpfr_mul_2si(s.get(), s.get(), -static_cast<long>(prec_), MPFR_RNDU);
    mpfr_abs(tmp.get(), p.get(), MPFR_RNDN);
    if (mpfr_cmp(tmp.get(), s.get()) <= 0) return 0;
    return mpfr_sgn(p.get());
  }

  BigFloat p, p1, p2, s, ax, tmp;

 private:
  mpfr_prec_t prec_;
  std::vector<BigFloat> c_;
};

// Upper bound on |roots| (Fujiwara), as a double.
double fujiwara_bound(const std::vector<BigFloat>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  long lead_exp;
  double lead = mpfr_get_d_2exp(&lead_exp, c[static_cast<size_t>(d)].get(), MPFR_RNDN);
  double log_lead = std::log(std::fabs(lead)) + lead_exp * std::log(2.0);
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= d; ++k) {
    const BigFloat& v = c[static_cast<size_t>(d - k)];
    if (v.is_zero()) continue;
    long e;
    double m = mpfr_get_d_2exp(&e, v.get(), MPFR_RNDN);
    double lg = std::log(std::fabs(m)) + e * std::log(2.0) - log_lead;
    if (k == d) lg -= std::log(2.0);
    best = std::max(best, lg / k);
  }
  return best;  // log of the bound without the factor 2
}

struct NumericOutcome {
  std::vector<BigFloat> roots;  // descending
  bool converged = true;
};

double log2_abs(const BigFloat& v) {
  if (v.is_zero()) return -std::numeric_limits<double>::infinity();
  long e;
  double m = mpfr_get_d_2exp(&e, v.get(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

// With start_at_zero every root is negative and p(0) != 0, so 0 lies right of all roots.
NumericOutcome laguerre_all(Evaluator& ev, double log_bound, bool start_at_zero) {
  const int d = ev.degree();
  const mpfr_prec_t W = ev.precision();
  NumericOutcome out;
  BigFloat x(0.0, W), g(0.0, W), h(0.0, W), t(0.0, W), disc(0.0, W), den(0.0, W), a(0.0, W), ax(0.0, W),
      prev_a(0.0, W);
  // start right of every root
  BigFloat lb(log_bound + std::log(2.0) + 0.5, W);
  mpfr_exp(x.get(), lb.get(), MPFR_RNDU);
  if (start_at_zero) mpfr_set_zero(x.get(), 1);
  for (int k = 0; k < d; ++k) {
    const int m = d - k;
    double eta_bits = 0.0;
    auto place_start = [&] {
      const BigFloat& r = out.roots.back();
      mpfr_abs(t.get(), r.get(), MPFR_RNDN);
      mpfr_mul_2si(t.get(), t.get(), -static_cast<long>(eta_bits), MPFR_RNDN);
      mpfr_sub(x.get(), r.get(), t.get(), MPFR_RNDN);
    };
    if (k > 0) {
      // left of the previous root by eps^(1/4) relative, eps the local evaluation accuracy
      const BigFloat& r = out.roots.back();
      ev.eval_derivs(r.get());
      double lp1 = log2_abs(ev.p1);
      ev.eval_bound(r.get());
      double lost = log2_abs(ev.s) - lp1 - log2_abs(r) + std::log2(4.0 * d + 8.0);
      eta_bits = std::max(6.0, (static_cast<double>(W) - lost) / 4.0);
      if (!std::isfinite(eta_bits)) eta_bits = static_cast<double>(W) / 4.0;
      place_start();
    }
    mpfr_set_inf(prev_a.get(), 1);
    bool done = false;
    for (int it = 0; it < 300 && !done; ++it) {
      ev.eval_derivs(x.get());
      if (mpfr_zero_p(ev.p.get())) break;
      mpfr_div(g.get(), ev.p1.get(), ev.p.get(), MPFR_RNDN);
      // h = g^2 - p''/p
      mpfr_div(h.get(), ev.p2.get(), ev.p.get(), MPFR_RNDN);
      mpfr_mul_2ui(h.get(), h.get(), 1, MPFR_RNDN);
      mpfr_fms(h.get(), g.get(), g.get(), h.get(), MPFR_RNDN);
      for (const auto& r : out.roots) {
        mpfr_sub(t.get(), x.get(), r.get(), MPFR_RNDN);
        mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDN);
        mpfr_sub(g.get(), g.get(), t.get(), MPFR_RNDN);
        mpfr_fms(h.get(), t.get(), t.get(), h.get(), MPFR_RNDN);
        mpfr_neg(h.get(), h.get(), MPFR_RNDN);
      }
      // disc = (m-1)(m h - g^2)
      mpfr_mul_ui(disc.get(), h.get(), static_cast<unsigned long>(m), MPFR_RNDN);
      mpfr_fms(disc.get(), g.get(), g.get(), disc.get(), MPFR_RNDN);
      mpfr_neg(disc.get(), disc.get(), MPFR_RNDN);
      if (it == 0 && k > 0 && eta_bits > 2.0) {
        // right of every remaining root: g > 0 and m h >= g^2; otherwise the deflation
        // cancelled too many bits, so start farther out
        mpfr_mul(t.get(), g.get(), g.get(), MPFR_RNDN);
        mpfr_mul_2si(t.get(), t.get(), -12, MPFR_RNDN);
        mpfr_add(t.get(), disc.get(), t.get(), MPFR_RNDN);
        if (mpfr_sgn(g.get()) <= 0 || mpfr_sgn(t.get()) < 0) {
          eta_bits = std::max(2.0, eta_bits - 6.0);
          place_start();
          it = -1;
          continue;
        }
      }
      mpfr_mul_ui(disc.get(), disc.get(), static_cast<unsigned long>(m - 1), MPFR_RNDN);
      if (mpfr_sgn(disc.get()) < 0) mpfr_set_zero(disc.get(), 1);
      mpfr_sqrt(disc.get(), disc.get(), MPFR_RNDN);
      if (mpfr_sgn(g.get()) >= 0)
        mpfr_add(den.get(), g.get(), disc.get(), MPFR_RNDN);
      else
        mpfr_sub(den.get(), g.get(), disc.get(), MPFR_RNDN);
      if (mpfr_zero_p(den.get())) {
        out.converged = false;
        break;
      }
      mpfr_ui_div(a.get(), static_cast<unsigned long>(m), den.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), a.get(), MPFR_RNDN);
      // stop once the step is at the rounding level of x
      mpfr_abs(ax.get(), x.get(), MPFR_RNDN);
      mpfr_mul_2si(ax.get(), ax.get(), -static_cast<long>(W) + 12, MPFR_RNDN);
      mpfr_abs(t.get(), a.get(), MPFR_RNDN);
      if (mpfr_cmp(t.get(), ax.get()) <= 0) {
        done = true;
      }
      if (!done && mpfr_cmp(t.get(), prev_a.get()) >= 0 && it > 40) {
        // stagnation at the noise floor
        done = true;
      }
      mpfr_set(prev_a.get(), t.get(), MPFR_RNDN);
      if (it == 299) out.converged = false;
    }
    out.roots.push_back(x);
  }
  return out;
}

// log2 of the cancellation factor prod(|x|+|r_j|) / prod_{j != skip}|x - r_j|.
double cancellation_bits(double x, const std::vector<double>& r, int skip) {
  double v = 0.0;
  for (size_t j = 0; j < r.size(); ++j) {
    v += std::log2(std::fabs(x) + std::fabs(r[j]));
    if (static_cast<int>(j) != skip) v -= std::log2(std::fabs(x - r[j]));
  }
  return v;
}

struct Certificate {
  bool count = false;
  bool precision = false;
  int sign_changes = 0;
};

Certificate certify(Evaluator& ev, const std::vector<BigFloat>& desc, long tol_bits_abs) {
  const int d = ev.degree();
  const mpfr_prec_t W = ev.precision();
  Certificate cert;
  const int lead = ev.coeff(d).sign();
  std::vector<int> mids(static_cast<size_t>(std::max(d - 1, 0)));
  BigFloat mid(0.0, W);
  // midpoints between consecutive roots must alternate in sign
  bool ok = true;
  int changes = 1;
  for (int i = 1; i < d; ++i) {
    mpfr_add(mid.get(), desc[static_cast<size_t>(i - 1)].get(), desc[static_cast<size_t>(i)].get(), MPFR_RNDN);
    mpfr_mul_2si(mid.get(), mid.get(), -1, MPFR_RNDN);
    int s = ev.certified_sign(mid.get());
    int expect = (i % 2) ? -lead : lead;
    if (s != expect || !(desc[static_cast<size_t>(i)] < desc[static_cast<size_t>(i - 1)])) {
      ok = false;
    } else if (ok) {
      ++changes;
    }
  }
  cert.count = ok;
  cert.sign_changes = ok ? d : changes - 1;
  if (!ok) return cert;
  // tight brackets around each root
  BigFloat delta(0.0, W), gap(0.0, W), pt(0.0, W);
  bool tight = true;
  for (int i = 0; i < d && tight; ++i) {
    mpfr_set_ui_2exp(delta.get(), 1, -tol_bits_abs, MPFR_RNDN);
    for (int j : {i - 1, i + 1}) {
      if (j < 0 || j >= d) continue;
      mpfr_sub(gap.get(), desc[static_cast<size_t>(i)].get(), desc[static_cast<size_t>(j)].get(), MPFR_RNDN);
      mpfr_abs(gap.get(), gap.get(), MPFR_RNDN);
      mpfr_mul_2si(gap.get(), gap.get(), -2, MPFR_RNDN);
      if (mpfr_cmp(gap.get(), delta.get()) < 0) mpfr_set(delta.get(), gap.get(), MPFR_RNDN);
    }
    // p(r + delta) carries the sign expected left of the i-th midpoint
    int right_sign = (i % 2) ? -lead : lead;
    mpfr_add(pt.get(), desc[static_cast<size_t>(i)].get(), delta.get(), MPFR_RNDN);
    int a = ev.certified_sign(pt.get());
    mpfr_sub(pt.get(), desc[static_cast<size_t>(i)].get(), delta.get(), MPFR_RNDN);
    int b = ev.certified_sign(pt.get());
    if (a != right_sign || b != -right_sign) tight = false;
  }
  cert.precision = tight;
  return cert;
}

struct NumericResult {
  std::vector<BigFloat> roots;  // ascending
  bool certified = false;
  bool precision_met = false;
  int sign_changes = 0;
  mpfr_prec_t precision = 0;
};

NumericResult numeric_roots(std::vector<BigFloat> coeffs, int precision_bits, mpfr_prec_t max_prec) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  // one-signed coefficients put every root below 0; alternating ones above, handled through p(-x)
  bool same = true, alternating = true;
  const int lead_sign = coeffs.back().sign();
  for (int k = 0; k <= d; ++k) {
    int s = coeffs[static_cast<size_t>(k)].sign();
    if (s == 0) continue;
    if (s != lead_sign) same = false;
    if (s * (((d - k) % 2) ? -1 : 1) != lead_sign) alternating = false;
  }
  const bool flipped = alternating && !same;
  if (flipped)
    for (int k = 1; k <= d; k += 2) coeffs[static_cast<size_t>(k)] = -coeffs[static_cast<size_t>(k)];
  NumericResult res;
  if (d <= 0) {
    res.certified = true;
    res.precision_met = true;
    return res;
  }
  const double log_bound = fujiwara_bound(coeffs);
  mpfr_prec_t W = static_cast<mpfr_prec_t>(std::max(128, precision_bits + 64 + d));
  std::vector<BigFloat> desc;
  bool estimated = false;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Evaluator ev(coeffs, W);
    NumericOutcome out = laguerre_all(ev, log_bound, same || flipped);
    desc = std::move(out.roots);
    std::vector<double> rd;
    for (const auto& r : desc) rd.push_back(r.to_double());
    double scale = 0.0;
    for (double v : rd) scale = std::max(scale, std::fabs(v));
    if (!estimated) {
      // precision the cancellation at roots and midpoints calls for
      double need = 0.0;
      bool finite = true;
      for (int i = 0; i < d; ++i) {
        if (!std::isfinite(rd[static_cast<size_t>(i)])) finite = false;
        need = std::max(need, cancellation_bits(rd[static_cast<size_t>(i)], rd, i));
        if (i + 1 < d) {
          double mid = 0.5 * (rd[static_cast<size_t>(i)] + rd[static_cast<size_t>(i + 1)]);
          need = std::max(need, cancellation_bits(mid, rd, -1));
        }
      }
      estimated = true;
      if (finite && std::isfinite(need)) {
        double rel_tol = precision_bits + std::max(0.0, -std::log2(std::max(scale, 1e-300)));
        auto want = static_cast<mpfr_prec_t>(need + rel_tol + std::log2(static_cast<double>(d) + 1) + 48);
        if (want > W) {
          W = std::min(want, max_prec);
          continue;
        }
      }
    }
    long tol_bits = precision_bits - static_cast<long>(std::floor(std::log2(std::max(scale, 1e-300))));
    Certificate cert = certify(ev, desc, tol_bits);
    res.sign_changes = cert.sign_changes;
    res.precision = W;
    if (cert.count && cert.precision) {
      res.certified = true;
      res.precision_met = true;
      break;
    }
    if (cert.count) res.certified = true;
    if (W >= max_prec) break;
    W = std::min(static_cast<mpfr_prec_t>(W * 2), max_prec);
  }
  if (flipped) {
    for (auto& r : desc) r = -r;
  } else {
    std::reverse(desc.begin(), desc.end());
  }
  res.roots = std::move(desc);
  return res;
}

std::vector<BigFloat> to_big(const IPoly& f, mpfr_prec_t prec) {
  std::vector<BigFloat> c;
  c.reserve(f.size());
  for (const auto& v : f) c.emplace_back(v, prec);
  return c;
}

mpfr_prec_t coeff_bits(const IPoly& f) {
  size_t b = 0;
  for (const auto& v : f) b = std::max(b, mpz_sizeinbase(v.get_mpz_t(), 2));
  return static_cast<mpfr_prec_t>(b + 2);
}

void append_roots(RootSet& rs, const std::vector<BigFloat>& r, int mult) {
  for (const auto& v : r) rs.distinct.push_back({v, mult});
}

void finalize(RootSet& rs) {
  std::sort(rs.distinct.begin(), rs.distinct.end(), [](const Root& a, const Root& b) { return a.value < b.value; });
}

constexpr mpfr_prec_t kMaxPrecision = 1 << 14;

}  // namespace

namespace {

RootSet isolate_mobius(const ExactPolynomial& p, int precision_bits) {
  const int deg = p.degree();
  const mpfr_prec_t out_prec = std::max<mpfr_prec_t>(128, precision_bits + 64);
  int low = 0;
  while (p[low] == 0) ++low;
  // s^m p(1/s) with m = deg - low, then s = t - 1
  const int m = deg - low;
  ExactPolynomial rev(m);
  for (int k = 0; k <= m; ++k) rev[k] = p[deg - k];
  ExactPolynomial q = taylor_shift(rev, Rational(-1));
  RootSet inner;
  try {
    inner = isolate_real_roots(q, precision_bits + 64, RootMethod::automatic);
  } catch (const NotRealRooted& e) {
    throw NotRealRooted(e.real_roots + low, deg);
  }
  RootSet rs;
  rs.degree = deg;
  rs.certified = inner.certified;
  rs.precision_met = inner.precision_met;
  rs.working_precision = std::max(out_prec, inner.working_precision);
  rs.method = "mobius/" + inner.method;
  if (low > 0) rs.distinct.push_back({BigFloat::zero(out_prec), low});
  for (const auto& r : inner.distinct) {
    BigFloat x(0.0, rs.working_precision);
    mpfr_sub_ui(x.get(), r.value.get(), 1, MPFR_RNDN);
    mpfr_ui_div(x.get(), 1, x.get(), MPFR_RNDN);
    rs.distinct.push_back({x, r.multiplicity});
  }
  finalize(rs);
  return rs;
}

}  // namespace

NotRealRooted::NotRealRooted(int real, int deg)
    : std::runtime_error("not real-rooted: found " + std::to_string(real) + " real roots for degree " +
                         std::to_string(deg)),
      real_roots(real),
      degree(deg) {}

std::vector<double> RootSet::values() const {
  std::vector<double> out;
  for (const auto& r : distinct)
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value.to_double());
  return out;
}

int sturm_count(const ExactPolynomial& p) {
  IPoly f = to_ipoly(p);
  if (ideg(f) <= 0) return 0;
  return Sturm(f).distinct_real_roots();
}

std::vector<ExactPolynomial> squarefree_decomposition(const ExactPolynomial& p) {
  IPoly f = to_ipoly(p);
  std::vector<ExactPolynomial> out;
  if (ideg(f) <= 0) return out;
  // Rational-arithmetic Yun, clearer than tracking integer scalings.
  auto rdiv = [](const ExactPolynomial& num, const ExactPolynomial& den) {
    ExactPolynomial n2 = trimmed(num), d2 = trimmed(den);
    const int dn = n2.degree(), dd2 = d2.degree();
    if (dn < dd2) return ExactPolynomial(0);
    std::vector<Rational> rem = n2.coeffs, q(static_cast<size_t>(dn - dd2) + 1);
    for (int k = dn - dd2; k >= 0; --k) {
      Rational cc = rem[static_cast<size_t>(k + dd2)] / d2[dd2];
      q[static_cast<size_t>(k)] = cc;
      if (cc == 0) continue;
      for (int j = 0; j <= dd2; ++j) rem[static_cast<size_t>(k + j)] -= cc * d2[j];
    }
    return ExactPolynomial(q);
  };
  auto rgcd = [](const ExactPolynomial& x, const ExactPolynomial& y) { return from_ipoly(igcd(to_ipoly(x), to_ipoly(y))); };
  auto is_const = [](const ExactPolynomial& x) { return trimmed(x).degree() <= 0; };
  ExactPolynomial F = from_ipoly(f);
  ExactPolynomial Fp = derivative(F);
  ExactPolynomial A = rgcd(F, Fp);
  ExactPolynomial B = rdiv(F, A);
  ExactPolynomial C = rdiv(Fp, A);
  ExactPolynomial D = add(C, scale_values(derivative(B), Rational(-1)));
  while (!is_const(B)) {
    ExactPolynomial G = trimmed(D).degree() < 0 ? B : rgcd(B, D);
    out.push_back(trimmed(G));
    ExactPolynomial Bn = rdiv(B, G);
    C = rdiv(D, G);
    B = Bn;
    D = add(C, scale_values(derivative(B), Rational(-1)));
  }
  return out;
}

int count_real_roots(const ExactPolynomial& p) {
  int total = 0;
  auto parts = squarefree_decomposition(p);
  for (size_t i = 0; i < parts.size(); ++i) total += static_cast<int>(i + 1) * sturm_count(parts[i]);
  return total;
}

RootSet isolate_real_roots(const ExactPolynomial& p, int precision_bits, RootMethod method) {
  const int deg = p.degree();
  if (deg < 0) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  if (method == RootMethod::mobius) return isolate_mobius(p, precision_bits);
  RootSet rs;
  rs.degree = deg;
  const mpfr_prec_t out_prec = std::max<mpfr_prec_t>(128, precision_bits + 64);
  // zero roots
  int low = 0;
  while (p[low] == 0) ++low;
  if (low > 0) rs.distinct.push_back({BigFloat::zero(out_prec), low});
  ExactPolynomial core(deg - low);
  for (int k = low; k <= deg; ++k) core[k - low] = p[k];
  IPoly f = to_ipoly(core);
  if (ideg(f) <= 0) {
    rs.certified = rs.precision_met = true;
    rs.method = "trivial";
    rs.working_precision = out_prec;
    return rs;
  }
  bool use_sturm = method == RootMethod::sturm ||
                   (method == RootMethod::automatic && ideg(f) <= kSturmMaxDegree);
  std::vector<std::pair<IPoly, int>> factors;
  if (squarefree_by_modular_test(f)) {
    factors.push_back({f, 1});
  } else {
    auto parts = squarefree_decomposition(core);
    for (size_t i = 0; i < parts.size(); ++i)
      if (parts[i].degree() > 0) factors.push_back({to_ipoly(parts[i]), static_cast<int>(i + 1)});
  }
  rs.certified = true;
  rs.precision_met = true;
  rs.working_precision = out_prec;
  for (const auto& [g, mult] : factors) {
    const int dg = ideg(g);
    if (use_sturm || dg <= 2) {
      auto brackets = sturm_isolate(g);
      if (static_cast<int>(brackets.size()) < dg) {
        throw NotRealRooted(count_real_roots(p), deg);
      }
      double scale = 0.0;
      for (const auto& br : brackets)
        scale = std::max({scale, std::fabs(dyadic_to_double(br.lo)), std::fabs(dyadic_to_double(br.hi))});
      long tol = precision_bits - static_cast<long>(std::ceil(std::log2(std::max(scale, 1e-300))));
      std::vector<BigFloat> vals(brackets.size(), BigFloat::zero(out_prec));
      parallel::parallel_for(brackets.size(), [&](size_t i) { vals[i] = refine(g, brackets[i], tol, out_prec); });
      append_roots(rs, vals, mult);
      if (rs.method.empty()) rs.method = "sturm";
    } else {
      mpfr_prec_t start = coeff_bits(g);
      NumericResult nr = numeric_roots(to_big(g, start), precision_bits, kMaxPrecision);
      if (!nr.certified) {
        int real = count_real_roots(p);
        if (real < deg) throw NotRealRooted(real, deg);
        throw std::runtime_error("isolate_real_roots: sign-change certificate failed at " +
                                 std::to_string(nr.precision) + " bits");
      }
      rs.precision_met = rs.precision_met && nr.precision_met;
      rs.working_precision = std::max(rs.working_precision, nr.precision);
      append_roots(rs, nr.roots, mult);
      rs.method = "sign-change";
    }
  }
  finalize(rs);
  return rs;
}

RootSet isolate_real_roots(const FloatPolynomial& p, int precision_bits) {
  const int deg = p.degree();
  if (deg < 0) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  RootSet rs;
  rs.degree = deg;
  rs.method = "numeric";
  int low = 0;
  while (p.coeffs[static_cast<size_t>(low)].is_zero()) ++low;
  if (low > 0) rs.distinct.push_back({BigFloat::zero(p.precision), low});
  std::vector<BigFloat> c(p.coeffs.begin() + low, p.coeffs.begin() + deg + 1);
  NumericResult nr = numeric_roots(c, precision_bits, std::max<mpfr_prec_t>(kMaxPrecision, p.precision));
  if (!nr.certified) throw NotRealRooted(low + nr.sign_changes, deg);
  rs.certified = true;
  rs.precision_met = nr.precision_met;
  rs.working_precision = nr.precision;
  append_roots(rs, nr.roots, 1);
  finalize(rs);
  return rs;
}

// ---------------------------------------------------------------------------

double EmpiricalMeasure::mass_at_zero() const {
  if (n == 0) return 0.0;
  auto range = std::equal_range(roots.begin(), roots.end(), 0.0);
  return static_cast<double>(range.second - range.first) / n;
}

double EmpiricalMeasure::total_mass() const {
  return n == 0 ? 0.0 : static_cast<double>(roots.size()) / n + mass_at_infinity;
}

double EmpiricalMeasure::cdf(double x) const {
  auto it = std::upper_bound(roots.begin(), roots.end(), x);
  return mass_at_infinity + static_cast<double>(it - roots.begin()) / n;
}

EmpiricalMeasure empirical_measure(const RootSet& roots, int n) {
  EmpiricalMeasure em = empirical_measure(roots.values(), n);
  for (const auto& r : roots.distinct)
    for (int k = 0; k < r.multiplicity; ++k) em.precise.push_back(r.value);
  return em;
}

EmpiricalMeasure empirical_measure(std::vector<double> roots, int n) {
  if (n <= 0) throw std::invalid_argument("empirical_measure: n must be positive");
  if (static_cast<int>(roots.size()) > n)
    throw std::invalid_argument("empirical_measure: more roots than the normalizer n");
  std::sort(roots.begin(), roots.end());
  EmpiricalMeasure em;
  em.n = n;
  em.mass_at_infinity = static_cast<double>(n - static_cast<int>(roots.size())) / n;
  em.roots = std::move(roots);
  return em;
}

EmpiricalMeasure scaled_measure(const EmpiricalMeasure& em, double s) {
  if (!(s != 0.0 && std::isfinite(s))) throw std::invalid_argument("scaled_measure: scale must be finite and nonzero");
  EmpiricalMeasure out = em;
  for (auto& r : out.roots) r /= s;
  if (!out.precise.empty()) {
    BigFloat d(s, out.precise.front().precision());
    for (auto& r : out.precise) r /= d;
  }
  if (s < 0.0) {
    std::reverse(out.roots.begin(), out.roots.end());
    std::reverse(out.precise.begin(), out.precise.end());
  }
  return out;
}

double compactify_negative(double x) {
  if (x == -std::numeric_limits<double>::infinity()) return -1.0;
  return x / (1.0 - x);
}

double ks_distance(const EmpiricalMeasure& em, const limitlaws::LimitLaw& law, const Compactify& compactify) {
  // jump points of either distribution; both are monotone in between
  struct Point {
    double x;
    size_t below;  // roots strictly left of x
    size_t upto;   // roots at or left of x
    const BigFloat* precise;
  };
  const bool has_precise = em.precise.size() == em.roots.size() && !em.roots.empty();
  std::vector<Point> pts;
  for (size_t i = 0; i < em.roots.size();) {
    size_t j = i + 1;
    if (has_precise)
      while (j < em.roots.size() && mpfr_equal_p(em.precise[j].get(), em.precise[i].get())) ++j;
    else
      while (j < em.roots.size() && em.roots[j] == em.roots[i]) ++j;
    pts.push_back({em.roots[i], i, j, has_precise ? &em.precise[i] : nullptr});
    i = j;
  }
  for (const auto& a : law.atoms()) {
    if (!std::isfinite(a.x)) continue;
    bool seen = false;
    for (const auto& p : pts) seen = seen || p.x == a.x;
    if (seen) continue;
    auto lo = std::lower_bound(em.roots.begin(), em.roots.end(), a.x);
    auto hi = std::upper_bound(em.roots.begin(), em.roots.end(), a.x);
    pts.push_back({a.x, static_cast<size_t>(lo - em.roots.begin()), static_cast<size_t>(hi - em.roots.begin()), nullptr});
  }
  std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  if (compactify) {
    for (size_t i = 1; i < pts.size(); ++i)
      if (compactify(pts[i].x) < compactify(pts[i - 1].x))
        throw std::invalid_argument("ks_distance: compactifying map must be increasing");
  }
  std::vector<double> xs;
  for (const auto& p : pts) xs.push_back(p.x);
  auto law_cdf = limitlaws::cdf_sorted(law, xs);
  // roots crowding a finite edge: evaluate the law from the exact gap to the edge
  const auto sup_hull = law.support();
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!pts[i].precise) continue;
    for (double c : {sup_hull.lo, sup_hull.hi}) {
      if (!std::isfinite(c) || std::fabs(pts[i].x - c) > 1e-3) continue;
      BigFloat gap = *pts[i].precise - BigFloat(c, pts[i].precise->precision());
      if (gap.is_zero()) continue;
      int dir = gap.sign();
      double log_d = log(abs(gap)).to_double();
      if (auto v = law.cdf_edge_closed(c, dir, log_d)) law_cdf[i] = *v;
    }
  }
  double law_inf = 0.0;
  for (const auto& a : law.atoms())
    if (!std::isfinite(a.x) && a.x < 0) law_inf += a.mass;
  double sup = std::fabs(em.mass_at_infinity - law_inf);
  for (size_t i = 0; i < pts.size(); ++i) {
    double atom = 0.0;
    for (const auto& a : law.atoms())
      if (a.x == pts[i].x) atom += a.mass;
    double fe = em.mass_at_infinity + static_cast<double>(pts[i].upto) / em.n;
    double fe_left = em.mass_at_infinity + static_cast<double>(pts[i].below) / em.n;
    double fl = law_cdf[i];
    sup = std::max(sup, std::fabs(fe - fl));
    sup = std::max(sup, std::fabs(fe_left - (fl - atom)));
  }
  sup = std::max(sup, std::fabs(em.total_mass() - limitlaws::total_mass(law)));
  return sup;
}

double ks_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  std::vector<double> pts = a.roots;
  pts.insert(pts.end(), b.roots.begin(), b.roots.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double sup = std::fabs(a.mass_at_infinity - b.mass_at_infinity);
  for (double x : pts) {
    sup = std::max(sup, std::fabs(a.cdf(x) - b.cdf(x)));
    auto la = std::lower_bound(a.roots.begin(), a.roots.end(), x);
    auto lb = std::lower_bound(b.roots.begin(), b.roots.end(), x);
    double fa = a.mass_at_infinity + static_cast<double>(la - a.roots.begin()) / a.n;
    double fb = b.mass_at_infinity + static_cast<double>(lb - b.roots.begin()) / b.n;
    sup = std::max(sup, std::fabs(fa - fb));
  }
  return sup;
}

ExactPolynomial shift_for_positive_roots(const ExactPolynomial& p, const Rational& a) {
  if (a < 0) throw std::invalid_argument("shift_for_positive_roots: A must be >= 0");
  return taylor_shift(p, a);
}

}  // namespace zeroprof::roots
