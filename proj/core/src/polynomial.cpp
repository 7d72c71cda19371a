#include "zeroprof/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace zeroprof {

int ExactPolynomial::degree() const {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    if (coeffs[static_cast<size_t>(k)] != 0) return k;
  return -1;
}

Rational ExactPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    acc = acc * x + coeffs[static_cast<size_t>(k)];
  return acc;
}

bool ExactPolynomial::all_nonnegative() const {
  for (const auto& c : coeffs)
    if (c < 0) return false;
  return true;
}

bool ExactPolynomial::operator==(const ExactPolynomial& other) const {
  size_t len = std::max(coeffs.size(), other.coeffs.size());
  for (size_t k = 0; k < len; ++k) {
    Rational a = k < coeffs.size() ? coeffs[k] : Rational(0);
    Rational b = k < other.coeffs.size() ? other.coeffs[k] : Rational(0);
    if (a != b) return false;
  }
  return true;
}

int FloatPolynomial::degree() const {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    if (!coeffs[static_cast<size_t>(k)].is_zero()) return k;
  return -1;
}

ExactPolynomial FloatPolynomial::to_exact() const {
  ExactPolynomial p(n);
  for (size_t k = 0; k < coeffs.size(); ++k) p.coeffs[k] = coeffs[k].to_rational();
  return p;
}

ExactPolynomial from_integers(const std::vector<long>& c) {
  std::vector<Rational> q;
  q.reserve(c.size());
  for (long v : c) q.emplace_back(v);
  return ExactPolynomial(std::move(q));
}

ExactPolynomial scale_argument(const ExactPolynomial& p, const Rational& s) {
  ExactPolynomial r = p;
  Rational pw = 1;
  for (auto& c : r.coeffs) {
    c *= pw;
    pw *= s;
  }
  return r;
}

ExactPolynomial taylor_shift(const ExactPolynomial& p, const Rational& a) {
  ExactPolynomial r = p;
  const int len = static_cast<int>(r.coeffs.size());
  for (int i = 0; i < len - 1; ++i)
    for (int k = len - 2; k >= i; --k)
      r.coeffs[static_cast<size_t>(k)] += a * r.coeffs[static_cast<size_t>(k) + 1];
  return r;
}

ExactPolynomial derivative(const ExactPolynomial& p) {
  if (p.n == 0) return ExactPolynomial(0);
  ExactPolynomial r(p.n - 1);
  for (int k = 1; k <= p.n; ++k) r[k - 1] = p[k] * k;
  return r;
}

ExactPolynomial multiply(const ExactPolynomial& p, const ExactPolynomial& q) {
  ExactPolynomial r(p.n + q.n);
  for (int i = 0; i <= p.n; ++i) {
    if (p[i] == 0) continue;
    for (int j = 0; j <= q.n; ++j) r[i + j] += p[i] * q[j];
  }
  return r;
}

ExactPolynomial add(const ExactPolynomial& p, const ExactPolynomial& q) {
  ExactPolynomial r(std::max(p.n, q.n));
  for (int k = 0; k <= p.n; ++k) r[k] += p[k];
  for (int k = 0; k <= q.n; ++k) r[k] += q[k];
  return r;
}

ExactPolynomial scale_values(const ExactPolynomial& p, const Rational& c) {
  ExactPolynomial r = p;
  for (auto& v : r.coeffs) v *= c;
  return r;
}

ExactPolynomial compose_monomial(const ExactPolynomial& p, const Rational& c, int m) {
  ExactPolynomial r(p.n * m);
  Rational pw = 1;
  for (int k = 0; k <= p.n; ++k) {
    r[k * m] = p[k] * pw;
    pw *= c;
  }
  return r;
}

ExactPolynomial monic(const ExactPolynomial& p) {
  int d = p.degree();
  if (d < 0) throw std::invalid_argument("monic: zero polynomial");
  Rational lc = p[d];
  ExactPolynomial r = p;
  for (auto& c : r.coeffs) c /= lc;
  return r;
}

ExactPolynomial power_of_linear(const Rational& r, int n) {
  ExactPolynomial p(n);
  for (int k = 0; k <= n; ++k) {
    Rational c(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
    p[k] = c * rational_pow(-r, static_cast<unsigned long>(n - k));
  }
  return p;
}

ExactPolynomial trimmed(const ExactPolynomial& p) {
  int d = std::max(p.degree(), 0);
  ExactPolynomial r(d);
  for (int k = 0; k <= d; ++k) r[k] = p[k];
  return r;
}

std::vector<Integer> primitive_integer_coeffs(const ExactPolynomial& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> z(p.coeffs.size());
  Integer g = 0;
  for (size_t k = 0; k < p.coeffs.size(); ++k) {
    Rational v = p.coeffs[k] * Rational(l);
    z[k] = v.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[k].get_mpz_t());
  }
  if (g > 1)
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return z;
}

namespace {
std::string header_line(const std::string& family, int n,
                        const std::map<std::string, std::string>& params) {
  std::ostringstream os;
  os << "family=" << family << " n=" << n << " params=";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) os << ',';
    os << k << '=' << v;
    first = false;
  }
  os << '\n';
  return os.str();
}
}  // namespace

std::string serialize(const ExactPolynomial& p, const std::string& family,
                      const std::map<std::string, std::string>& params) {
  std::string out = header_line(family, p.n, params);
  for (int k = 0; k <= p.n; ++k) out += std::to_string(k) + " " + to_string(p[k]) + "\n";
  return out;
}

std::string serialize(const FloatPolynomial& p, const std::string& family,
                      const std::map<std::string, std::string>& params) {
  auto meta = params;
  meta["precision"] = std::to_string(p.precision);
  std::string out = header_line(family, p.n, meta);
  for (int k = 0; k <= p.n; ++k)
    out += std::to_string(k) + " " + p.coeffs[static_cast<size_t>(k)].to_hex() + "\n";
  return out;
}

CoefficientFile parse_coefficients(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty coefficient file");
  CoefficientFile f;
  std::istringstream hs(line);
  std::string tok;
  while (hs >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad header token: " + tok);
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "family") {
      f.family = val;
    } else if (key == "n") {
      f.n = std::stoi(val);
    } else if (key == "params") {
      std::istringstream ps(val);
      std::string kv;
      while (std::getline(ps, kv, ',')) {
        auto e2 = kv.find('=');
        if (e2 != std::string::npos) f.params[kv.substr(0, e2)] = kv.substr(e2 + 1);
      }
    }
  }
  std::vector<std::pair<int, std::string>> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int k;
    std::string v;
    if (!(ls >> k >> v)) throw std::invalid_argument("bad coefficient line: " + line);
    rows.emplace_back(k, v);
  }
  if (static_cast<int>(rows.size()) != f.n + 1)
    throw std::invalid_argument("coefficient count does not match n");
  f.is_float = !rows.empty() && rows[0].second.find("0x") != std::string::npos;
  for (const auto& r : rows)
    if (r.second.find('p') != std::string::npos || r.second.find("0x") != std::string::npos)
      f.is_float = true;
  if (f.is_float) {
    mpfr_prec_t prec = 256;
    if (f.params.count("precision")) prec = std::stol(f.params.at("precision"));
    f.floating.n = f.n;
    f.floating.precision = prec;
    f.floating.coeffs.assign(static_cast<size_t>(f.n) + 1, BigFloat::zero(prec));
    for (const auto& [k, v] : rows) f.floating.coeffs[static_cast<size_t>(k)] = BigFloat::from_string(v, prec);
  } else {
    f.exact = ExactPolynomial(f.n);
    for (const auto& [k, v] : rows) f.exact[k] = parse_rational(v);
  }
  return f;
}

}  // namespace zeroprof
