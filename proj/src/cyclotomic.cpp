#include "gppv/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace gppv {

namespace {

struct PrimePower {
  std::uint64_t p;
  std::uint64_t q;
  std::uint64_t phi_q;
  std::uint64_t step;  // q/p
  std::uint64_t idem;  // 1 mod q, 0 mod N/q
};

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    f.emplace_back(p, a);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = ((a % m) + m) % m, r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t qt = r0 / r1;
    std::int64_t t = r0 - qt * r1;
    r0 = r1;
    r1 = t;
    t = s0 - qt * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw Error("mod_inverse: not invertible");
  s0 %= m;
  return s0 < 0 ? s0 + m : s0;
}

const std::vector<PrimePower>& prime_powers(std::uint32_t n) {
  thread_local std::unordered_map<std::uint32_t, std::vector<PrimePower>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<PrimePower> out;
  for (auto [p, a] : factorize(n)) {
    std::uint64_t q = 1;
    for (int i = 0; i < a; ++i) q *= p;
    std::uint64_t r = n / q;
    std::uint64_t idem = 0;
    if (r == 1) {
      idem = 1 % n;
    } else {
      std::uint64_t x = static_cast<std::uint64_t>(mod_inverse(static_cast<std::int64_t>(r % q),
                                                               static_cast<std::int64_t>(q)));
      idem = (r * x) % n;
    }
    out.push_back({p, q, q - q / p, q / p, idem});
  }
  return cache.emplace(n, std::move(out)).first->second;
}

void sort_merge(std::vector<CyclotomicNumber::Term>& t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i + 1;
    Integer acc = std::move(t[i].second);
    while (j < t.size() && t[j].first == t[i].first) {
      acc += t[j].second;
      ++j;
    }
    if (acc != 0) {
      t[w].first = t[i].first;
      t[w].second = std::move(acc);
      ++w;
    }
    i = j;
  }
  t.resize(w);
}

void reduce_canonical(std::uint32_t n, std::vector<CyclotomicNumber::Term>& t) {
  if (n == 1) {
    sort_merge(t);
    return;
  }
  for (const PrimePower& pp : prime_powers(n)) {
    std::vector<CyclotomicNumber::Term> next;
    next.reserve(t.size() * 2);
    bool touched = false;
    for (auto& [j, c] : t) {
      std::uint64_t coord = j % pp.q;
      if (coord < pp.phi_q) {
        next.emplace_back(j, std::move(c));
        continue;
      }
      touched = true;
      for (std::uint64_t s = 1; s < pp.p; ++s) {
        std::uint64_t shift = (s * pp.step % n) * pp.idem % n;
        std::uint64_t jj = (j + n - shift) % n;
        next.emplace_back(static_cast<std::uint32_t>(jj), -c);
      }
    }
    t.swap(next);
    if (touched) sort_merge(t);
  }
  sort_merge(t);
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto [p, a] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

const std::vector<Integer>& cyclotomic_polynomial(std::uint32_t n) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<Integer>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<Integer> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d) continue;
    const std::vector<Integer>& den = cyclotomic_polynomial(d);
    std::size_t dn = num.size() - 1, dd = den.size() - 1;
    std::vector<Integer> quo(dn - dd + 1, 0);
    for (std::size_t i = dn + 1; i-- > dd;) {
      Integer c = num[i];
      quo[i - dd] = c;
      if (c != 0)
        for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
    }
    num = std::move(quo);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(num)).first->second;
}

CyclotomicNumber::CyclotomicNumber(const Rational& q) {
  if (q != 0) {
    terms_.emplace_back(0, q.get_num());
    den_ = q.get_den();
  }
}

CyclotomicNumber CyclotomicNumber::root(std::uint32_t order, std::int64_t exponent, const Rational& c) {
  if (order == 0) throw Error("cyclotomic order must be positive");
  CyclotomicNumber r;
  r.order_ = order;
  if (c == 0) return r;
  std::int64_t e = exponent % static_cast<std::int64_t>(order);
  if (e < 0) e += order;
  r.terms_.emplace_back(static_cast<std::uint32_t>(e), c.get_num());
  r.den_ = c.get_den();
  return r;
}

CyclotomicNumber CyclotomicNumber::e(const Rational& x) {
  Rational f = frac_part(x);
  const Integer& d = f.get_den();
  if (!d.fits_uint_p()) throw Error("root of unity order too large");
  return root(static_cast<std::uint32_t>(d.get_ui()), to_long(f.get_num()));
}

CyclotomicNumber CyclotomicNumber::inverse_root_minus_one(std::uint32_t order, std::int64_t exponent) {
  std::int64_t e = exponent % static_cast<std::int64_t>(order);
  if (e < 0) e += order;
  std::uint32_t g = std::gcd(static_cast<std::uint32_t>(e), order);
  std::uint32_t m = order / g;  // multiplicative order of omega
  if (m == 1) throw Error("inverse_root_minus_one: root equals 1");
  // 1/(omega - 1) = (1/m) sum_{i<m} i omega^i
  CyclotomicNumber r;
  r.order_ = order;
  r.den_ = m;
  for (std::uint32_t i = 1; i < m; ++i)
    r.terms_.emplace_back(static_cast<std::uint32_t>((static_cast<std::uint64_t>(i) * e) % order), Integer(i));
  r.normalize();
  return r;
}

CyclotomicNumber CyclotomicNumber::from_parts(std::uint32_t order, Integer den, std::vector<Term> terms) {
  CyclotomicNumber r;
  r.order_ = order;
  r.den_ = std::move(den);
  r.terms_ = std::move(terms);
  r.normalize();
  return r;
}

CyclotomicNumber CyclotomicNumber::from_power_basis(std::uint32_t order, const std::vector<Rational>& coeffs) {
  CyclotomicNumber r;
  r.order_ = order;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    r += root(order, static_cast<std::int64_t>(i), coeffs[i]);
  r.order_ = order;
  return r;
}

bool CyclotomicNumber::is_zero() const {
  if (terms_.empty()) return true;
  if (terms_.size() == 1) return false;
  std::vector<Term> t = terms_;
  reduce_canonical(order_, t);
  return t.empty();
}

bool CyclotomicNumber::is_rational() const {
  CyclotomicNumber c = canonical();
  return c.terms_.empty() || (c.terms_.size() == 1 && c.terms_[0].first == 0);
}

Rational CyclotomicNumber::rational_value() const {
  CyclotomicNumber c = canonical();
  if (c.terms_.empty()) return 0;
  if (c.terms_.size() != 1 || c.terms_[0].first != 0) throw Error("cyclotomic number is not rational");
  Rational q(c.terms_[0].second, c.den_);
  q.canonicalize();
  return q;
}

CyclotomicNumber CyclotomicNumber::lifted(std::uint32_t n) const {
  if (n % order_ != 0) throw Error("lift target order is not a multiple");
  CyclotomicNumber r = *this;
  if (n == order_) return r;
  std::uint64_t f = n / order_;
  for (auto& t : r.terms_) t.first = static_cast<std::uint32_t>(t.first * f);
  r.order_ = n;
  return r;
}

CyclotomicNumber CyclotomicNumber::canonical() const {
  CyclotomicNumber r = *this;
  reduce_canonical(r.order_, r.terms_);
  r.normalize();
  return r;
}

CyclotomicNumber CyclotomicNumber::shrunk() const {
  CyclotomicNumber r = canonical();
  std::uint32_t g = r.order_;
  for (const auto& t : r.terms_) g = std::gcd(g, t.first);
  if (r.terms_.empty()) g = r.order_;
  if (g <= 1) return r;
  for (auto& t : r.terms_) t.first /= g;
  r.order_ /= g;
  return r.canonical();
}

std::vector<Rational> CyclotomicNumber::power_basis(std::uint32_t* order_out) const {
  CyclotomicNumber s = shrunk();
  std::uint32_t m = s.order_;
  if (order_out) *order_out = m;
  const std::vector<Integer>& phi = cyclotomic_polynomial(m);
  std::size_t deg = phi.size() - 1;
  std::vector<Integer> poly(std::max<std::size_t>(m, deg), 0);
  for (const auto& [j, c] : s.terms_) poly[j] += c;
  for (std::size_t e = poly.size(); e-- > deg;) {
    if (poly[e] == 0) continue;
    Integer c = poly[e];
    for (std::size_t i = 0; i <= deg; ++i) poly[e - deg + i] -= c * phi[i];
  }
  std::vector<Rational> out(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    out[i] = Rational(poly[i], s.den_);
    out[i].canonicalize();
  }
  return out;
}

BigComplex CyclotomicNumber::embed(mpfr_prec_t prec) const {
  mpfr_prec_t wp = prec + 32;
  BigComplex acc(wp);
  for (const auto& [j, c] : terms_) {
    BigComplex z = BigComplex::e(Rational(j, order_), wp);
    z *= BigFloat(c, wp);
    acc += z;
  }
  BigFloat d(den_, wp);
  acc.re /= d;
  acc.im /= d;
  BigComplex out(prec);
  mpfr_set(out.re.raw(), acc.re.raw(), MPFR_RNDN);
  mpfr_set(out.im.raw(), acc.im.raw(), MPFR_RNDN);
  return out;
}

CyclotomicNumber CyclotomicNumber::conj() const {
  CyclotomicNumber r = *this;
  for (auto& t : r.terms_) t.first = (order_ - t.first) % order_;
  r.normalize();
  return r;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw Error("inverse of zero");
  if (terms_.size() == 1) {
    CyclotomicNumber r;
    r.order_ = order_;
    Rational c(den_, terms_[0].second);
    c.canonicalize();
    return root(order_, -static_cast<std::int64_t>(terms_[0].first), c);
  }
  // enumerate canonical basis exponents
  const std::uint32_t n = order_;
  std::vector<std::uint32_t> basis;
  for (std::uint32_t j = 0; j < n; ++j) {
    bool ok = true;
    for (const PrimePower& pp : prime_powers(n))
      if (j % pp.q >= pp.phi_q) ok = false;
    if (ok) basis.push_back(j);
  }
  std::size_t d = basis.size();
  std::unordered_map<std::uint32_t, std::size_t> index;
  for (std::size_t i = 0; i < d; ++i) index[basis[i]] = i;
  // column i = canonical coords of this * basis_i
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1, 0));
  for (std::size_t i = 0; i < d; ++i) {
    CyclotomicNumber col = times_root(n, basis[i]).canonical();
    for (const auto& [j, c] : col.terms_) {
      Rational v(c, col.den_);
      v.canonicalize();
      a[index.at(j)][i] = v;
    }
  }
  a[index.at(0)][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && a[piv][c] == 0) ++piv;
    if (piv == d) throw Error("singular multiplication matrix");
    std::swap(a[piv], a[c]);
    Rational inv = 1 / a[c][c];
    for (std::size_t k = c; k <= d; ++k) a[c][k] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  CyclotomicNumber out;
  out.order_ = n;
  for (std::size_t i = 0; i < d; ++i)
    if (a[i][d] != 0) out += root(n, basis[i], a[i][d]);
  out.order_ = n;
  return out;
}

void CyclotomicNumber::normalize() {
  sort_merge(terms_);
  if (terms_.empty()) {
    den_ = 1;
    return;
  }
  if (den_ < 0) {
    den_ = -den_;
    for (auto& t : terms_) t.second = -t.second;
  }
  Integer g = den_;
  for (const auto& t : terms_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
  }
  if (g != 1) {
    den_ /= g;
    for (auto& t : terms_) mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), g.get_mpz_t());
  }
}

void CyclotomicNumber::compact_if_large() {
  if (terms_.size() > 8 && terms_.size() > euler_phi(order_)) *this = canonical();
}

namespace {
std::uint32_t common_order(std::uint32_t a, std::uint32_t b) {
  std::uint64_t l = lcm_u64(a, b);
  if (l > 0xffffffffULL) throw Error("cyclotomic order overflow");
  return static_cast<std::uint32_t>(l);
}
}  // namespace

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (o.terms_.empty()) {
    if (o.order_ != order_) *this = lifted(common_order(order_, o.order_));
    return *this;
  }
  std::uint32_t n = common_order(order_, o.order_);
  if (n != order_) *this = lifted(n);
  CyclotomicNumber lift_store;
  const CyclotomicNumber* bp = &o;
  if (o.order_ != n) {
    lift_store = o.lifted(n);
    bp = &lift_store;
  }
  if (terms_.empty()) {
    terms_ = bp->terms_;
    den_ = bp->den_;
    return *this;
  }
  Integer fa = 1, fb = 1;
  if (den_ != bp->den_) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), bp->den_.get_mpz_t());
    fa = l / den_;
    fb = l / bp->den_;
    den_ = l;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + bp->terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < bp->terms_.size()) {
    if (j == bp->terms_.size() || (i < terms_.size() && terms_[i].first < bp->terms_[j].first)) {
      merged.emplace_back(terms_[i].first, fa == 1 ? std::move(terms_[i].second) : terms_[i].second * fa);
      ++i;
    } else if (i == terms_.size() || bp->terms_[j].first < terms_[i].first) {
      merged.emplace_back(bp->terms_[j].first, bp->terms_[j].second * fb);
      ++j;
    } else {
      Integer s = terms_[i].second * fa + bp->terms_[j].second * fb;
      if (s != 0) merged.emplace_back(terms_[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  terms_.swap(merged);
  normalize();
  compact_if_large();
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) { return *this += -o; }

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    den_ = 1;
    return *this;
  }
  for (auto& t : terms_) t.second *= q.get_num();
  den_ *= q.get_den();
  normalize();
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
  *this = *this * o;
  return *this;
}

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  std::uint32_t n = common_order(a.order(), b.order());
  CyclotomicNumber r = CyclotomicNumber::root(n, 0, 0);
  if (a.terms().empty() || b.terms().empty()) return r;
  std::uint64_t fa = n / a.order(), fb = n / b.order();
  std::vector<CyclotomicNumber::Term> t;
  t.reserve(a.terms().size() * b.terms().size());
  for (const auto& [ja, ca] : a.terms())
    for (const auto& [jb, cb] : b.terms())
      t.emplace_back(static_cast<std::uint32_t>((ja * fa + jb * fb) % n), ca * cb);
  CyclotomicNumber out = CyclotomicNumber::from_parts(n, a.denominator() * b.denominator(), std::move(t));
  return out;
}

void CyclotomicNumber::add_product(const CyclotomicNumber& a, const CyclotomicNumber& b) { *this += a * b; }

CyclotomicNumber CyclotomicNumber::times_root(std::uint32_t order, std::int64_t exponent) const {
  std::uint32_t n = common_order(order_, order);
  CyclotomicNumber r = lifted(n);
  std::int64_t e = exponent % static_cast<std::int64_t>(order);
  if (e < 0) e += order;
  std::uint64_t shift = static_cast<std::uint64_t>(e) * (n / order);
  for (auto& t : r.terms_) t.first = static_cast<std::uint32_t>((t.first + shift) % n);
  r.normalize();
  return r;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) { return (a - b).is_zero(); }

std::string CyclotomicNumber::to_string() const {
  std::uint32_t m = 1;
  std::vector<Rational> pb = power_basis(&m);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < pb.size(); ++i) {
    if (pb[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << gppv::to_string(pb[i]) << ")";
    if (i > 0) os << "*z" << m << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }

}  // namespace gppv
