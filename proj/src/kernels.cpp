#include "gppv/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <unordered_map>

namespace gppv::kernels {

namespace {

struct FlatSeries {
  std::vector<std::int64_t> n;
  std::vector<const Rational*> c;
};

FlatSeries flatten(const PuiseuxSeries& s) {
  FlatSeries f;
  f.n.reserve(s.size());
  f.c.reserve(s.size());
  for (const auto& [n, c] : s.terms()) {
    f.n.push_back(n);
    f.c.push_back(&c);
  }
  return f;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

BigComplex puiseux_eval_serial(const PuiseuxSeries& s, long k, const BigFloat& t, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  const std::int64_t dk = s.denom() * k;
  BigComplex acc(wp);
  BigFloat tw(wp);
  mpfr_set(tw.raw(), t.raw(), MPFR_RNDN);
  for (const auto& [n, c] : s.terms()) {
    BigComplex z = BigComplex::e(Rational(mod(n, dk), dk), wp);
    BigFloat damp = exp(-(tw * BigFloat(Rational(n, s.denom()), wp)));
    z *= damp * BigFloat(c, wp);
    acc += z;
  }
  if (!acc.is_finite()) throw Error("puiseux_eval: non-finite result");
  BigComplex out(prec);
  mpfr_set(out.re.raw(), acc.re.raw(), MPFR_RNDN);
  mpfr_set(out.im.raw(), acc.im.raw(), MPFR_RNDN);
  return out;
}

BigComplex puiseux_eval_parallel(const PuiseuxSeries& s, long k, const BigFloat& t, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  const std::int64_t dk = s.denom() * k;
  FlatSeries f = flatten(s);
  const std::size_t total = f.n.size();

  // phase table over the residues that occur
  std::unordered_map<std::int64_t, std::size_t> slot;
  std::vector<std::int64_t> residues;
  for (std::int64_t n : f.n) {
    std::int64_t r = mod(n, dk);
    if (slot.emplace(r, residues.size()).second) residues.push_back(r);
  }
  std::vector<BigComplex> phase(residues.size(), BigComplex(wp));
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < residues.size(); ++i) phase[i] = BigComplex::e(Rational(residues[i], dk), wp);
  std::vector<std::size_t> pidx(total);
  for (std::size_t i = 0; i < total; ++i) pidx[i] = slot.at(mod(f.n[i], dk));

  BigFloat tw(wp);
  mpfr_set(tw.raw(), t.raw(), MPFR_RNDN);
  BigFloat step = exp(-(tw / BigFloat(Rational(s.denom()), wp)));  // e^{-t/D}

  std::vector<BigComplex> partial(kChunks, BigComplex(wp));
#pragma omp parallel for schedule(dynamic, 1)
  for (int ch = 0; ch < kChunks; ++ch) {
    std::size_t lo = total * ch / kChunks, hi = total * (ch + 1) / kChunks;
    if (lo == hi) continue;
    BigComplex acc(wp);
    BigFloat damp = exp(-(tw * BigFloat(Rational(f.n[lo], s.denom()), wp)));
    std::int64_t prev = f.n[lo];
    for (std::size_t i = lo; i < hi; ++i) {
      if (f.n[i] != prev) {
        damp *= pow_si(step, f.n[i] - prev);
        prev = f.n[i];
      }
      BigComplex z = phase[pidx[i]];
      z *= damp * BigFloat(*f.c[i], wp);
      acc += z;
    }
    partial[ch] = std::move(acc);
  }
  BigComplex acc(wp);
  for (const auto& p : partial) acc += p;
  if (!acc.is_finite()) throw Error("puiseux_eval: non-finite result");
  BigComplex out(prec);
  mpfr_set(out.re.raw(), acc.re.raw(), MPFR_RNDN);
  mpfr_set(out.im.raw(), acc.im.raw(), MPFR_RNDN);
  return out;
}

BigComplex qseries_eval_serial(const std::vector<std::int64_t>& n, const std::vector<std::int64_t>& c,
                               std::int64_t denom, long k, const BigFloat& t, mpfr_prec_t prec) {
  if (n.size() != c.size()) throw Error("qseries_eval: size mismatch");
  const mpfr_prec_t wp = prec + 32;
  const std::int64_t dk = denom * k;
  BigFloat tw(wp);
  mpfr_set(tw.raw(), t.raw(), MPFR_RNDN);
  BigComplex acc(wp);
  for (std::size_t i = 0; i < n.size(); ++i) {
    BigComplex z = BigComplex::e(Rational(mod(n[i], dk), dk), wp);
    z *= exp(-(tw * BigFloat(Rational(n[i], denom), wp))) * BigFloat(c[i], wp);
    acc += z;
  }
  if (!acc.is_finite()) throw Error("qseries_eval: non-finite result");
  BigComplex out(prec);
  mpfr_set(out.re.raw(), acc.re.raw(), MPFR_RNDN);
  mpfr_set(out.im.raw(), acc.im.raw(), MPFR_RNDN);
  return out;
}

BigComplex qseries_eval_parallel(const std::vector<std::int64_t>& n, const std::vector<std::int64_t>& c,
                                 std::int64_t denom, long k, const BigFloat& t, mpfr_prec_t prec) {
  if (n.size() != c.size()) throw Error("qseries_eval: size mismatch");
  const mpfr_prec_t wp = prec + 32;
  const std::int64_t dk = denom * k;
  const std::size_t total = n.size();
  BigFloat tw(wp);
  mpfr_set(tw.raw(), t.raw(), MPFR_RNDN);
  const BigFloat step = exp(-(tw / BigFloat(Rational(denom), wp)));  // e^{-t/denom}
  // small powers of step for the usual gaps between exponents
  constexpr std::int64_t kGaps = 64;
  std::vector<BigFloat> pw(kGaps + 1, BigFloat(1L, wp));
  for (std::int64_t g = 1; g <= kGaps; ++g) pw[g] = pw[g - 1] * step;

  std::vector<BigFloat> cre(kChunks, BigFloat(0L, wp)), cim(kChunks, BigFloat(0L, wp));
#pragma omp parallel for schedule(dynamic, 1)
  for (int ch = 0; ch < kChunks; ++ch) {
    const std::size_t lo = total * ch / kChunks, hi = total * (ch + 1) / kChunks;
    if (lo == hi) continue;
    // real accumulators per residue class mod denom k, combined with the phases at the end
    std::unordered_map<std::int64_t, BigFloat> byres;
    BigFloat damp = exp(-(tw * BigFloat(Rational(n[lo], denom), wp)));
    BigFloat term(wp);
    std::int64_t prev = n[lo];
    for (std::size_t i = lo; i < hi; ++i) {
      const std::int64_t gap = n[i] - prev;
      if (gap > 0) {
        damp *= gap <= kGaps ? pw[gap] : pow_si(step, gap);
        prev = n[i];
      }
      mpfr_mul_si(term.raw(), damp.raw(), c[i], MPFR_RNDN);
      auto it = byres.try_emplace(mod(n[i], dk), 0L, wp).first;
      it->second += term;
    }
    BigFloat re(0L, wp), im(0L, wp);
    std::vector<std::int64_t> keys;
    for (const auto& kv : byres) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());  // fixed summation order
    for (std::int64_t r : keys) {
      BigComplex z = BigComplex::e(Rational(r, dk), wp);
      re += z.re * byres.at(r);
      im += z.im * byres.at(r);
    }
    cre[ch] = re;
    cim[ch] = im;
  }
  BigComplex acc(wp);
  for (int ch = 0; ch < kChunks; ++ch) {
    acc.re += cre[ch];
    acc.im += cim[ch];
  }
  if (!acc.is_finite()) throw Error("qseries_eval: non-finite result");
  BigComplex out(prec);
  mpfr_set(out.re.raw(), acc.re.raw(), MPFR_RNDN);
  mpfr_set(out.im.raw(), acc.im.raw(), MPFR_RNDN);
  return out;
}

namespace {

// enumerate index tuples in [0, R)^n by linear index
void decode(std::uint64_t idx, std::size_t n, std::size_t r, std::vector<std::size_t>& out) {
  for (std::size_t v = 0; v < n; ++v) {
    out[v] = idx % r;
    idx /= r;
  }
}

BigComplex gauss_range(const GaussSumInput& in, std::uint64_t lo, std::uint64_t hi, mpfr_prec_t wp) {
  const std::size_t n = in.w.size();
  const std::size_t r = in.residues.size();
  const long m4k = 4 * in.k;
  std::vector<std::size_t> idx(n);
  BigComplex acc(wp);
  for (std::uint64_t i = lo; i < hi; ++i) {
    decode(i, n, r, idx);
    long q = 0;
    for (std::size_t a = 0; a < n; ++a) {
      long ma = in.residues[idx[a]];
      q += in.w[a][a] * ma % m4k * ma;
      for (std::size_t b = a + 1; b < n; ++b)
        if (in.w[a][b] != 0) q += 2 * in.w[a][b] * ma * in.residues[idx[b]];
      q %= m4k;
    }
    q = ((q % m4k) + m4k) % m4k;
    BigComplex term = in.phase4k[q];
    for (std::size_t a = 0; a < n; ++a) term *= in.fval[a][idx[a]];
    acc += term;
  }
  return acc;
}

std::uint64_t count_terms(const GaussSumInput& in) {
  std::uint64_t c = 1;
  for (std::size_t v = 0; v < in.w.size(); ++v) c *= in.residues.size();
  return c;
}

}  // namespace

BigComplex gauss_sum_serial(const GaussSumInput& in, mpfr_prec_t prec) {
  return gauss_range(in, 0, count_terms(in), prec);
}

BigComplex gauss_sum_parallel(const GaussSumInput& in, mpfr_prec_t prec) {
  const std::uint64_t total = count_terms(in);
  std::vector<BigComplex> partial(kChunks, BigComplex(prec));
#pragma omp parallel for schedule(dynamic, 1)
  for (int ch = 0; ch < kChunks; ++ch) {
    std::uint64_t lo = total * ch / kChunks, hi = total * (ch + 1) / kChunks;
    partial[ch] = gauss_range(in, lo, hi, prec);
  }
  BigComplex acc(prec);
  for (const auto& p : partial) acc += p;
  return acc;
}

}  // namespace gppv::kernels
