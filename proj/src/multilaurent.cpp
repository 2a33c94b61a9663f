#include "gppv/multilaurent.hpp"

#include <algorithm>

namespace gppv {

int total_degree(const Monomial& m) {
  int s = 0;
  for (auto e : m) s += e;
  return s;
}

Monomial unit_monomial(int var, int power) {
  Monomial m{};
  m[var] = static_cast<std::int8_t>(power);
  return m;
}

MultiLaurent::MultiLaurent(int nvars, std::vector<int> lower, int cap)
    : nvars_(nvars), lower_(std::move(lower)), cap_(cap) {
  if (nvars_ < 0 || nvars_ > kMaxVars) throw Error("MultiLaurent: too many variables");
  if (static_cast<int>(lower_.size()) != nvars_) throw Error("MultiLaurent: lower bound size mismatch");
}

MultiLaurent MultiLaurent::constant(int nvars, const CyclotomicNumber& c, int cap) {
  MultiLaurent r(nvars, std::vector<int>(nvars, 0), cap);
  r.add(Monomial{}, c);
  return r;
}

int MultiLaurent::low_degree() const {
  int s = 0;
  for (int l : lower_) s += l;
  return s;
}

void MultiLaurent::add(const Monomial& m, const CyclotomicNumber& c) {
  if (total_degree(m) > cap_) return;
  for (int v = 0; v < nvars_; ++v)
    if (m[v] < lower_[v]) throw Error("MultiLaurent: monomial below the lower bound");
  if (c.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, Term(m, c));
  }
}

CyclotomicNumber MultiLaurent::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return CyclotomicNumber();
}

void MultiLaurent::add_unchecked(Term&& t) { terms_.push_back(std::move(t)); }
void MultiLaurent::finish_bulk() { sort_merge(); }

void MultiLaurent::sort_merge() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i + 1;
    CyclotomicNumber acc = std::move(terms_[i].second);
    bool merged = false;
    while (j < terms_.size() && terms_[j].first == terms_[i].first) {
      acc += terms_[j].second;
      merged = true;
      ++j;
    }
    if (!merged || !acc.is_zero()) {
      terms_[w].first = terms_[i].first;
      terms_[w].second = std::move(acc);
      ++w;
    }
    i = j;
  }
  terms_.resize(w);
}

namespace {
void check_compatible(const MultiLaurent& a, const MultiLaurent& b) {
  if (a.nvars() != b.nvars()) throw Error("MultiLaurent: variable lists differ");
}
}  // namespace

void MultiLaurent::axpy(const CyclotomicNumber& a, const MultiLaurent& x) {
  if (nvars_ == 0 && terms_.empty() && x.nvars_ > 0) {
    nvars_ = x.nvars_;
    lower_ = x.lower_;
    cap_ = x.cap_;
  }
  check_compatible(*this, x);
  for (int v = 0; v < nvars_; ++v) lower_[v] = std::min(lower_[v], x.lower_[v]);
  int cap = std::min(cap_, x.cap_);
  std::vector<Term> out;
  out.reserve(terms_.size() + x.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < x.terms_.size()) {
    if (j == x.terms_.size() || (i < terms_.size() && terms_[i].first < x.terms_[j].first)) {
      if (total_degree(terms_[i].first) <= cap) out.push_back(std::move(terms_[i]));
      ++i;
    } else if (i == terms_.size() || x.terms_[j].first < terms_[i].first) {
      if (total_degree(x.terms_[j].first) <= cap) {
        CyclotomicNumber c = a * x.terms_[j].second;
        if (!c.terms().empty()) out.emplace_back(x.terms_[j].first, std::move(c));
      }
      ++j;
    } else {
      if (total_degree(terms_[i].first) <= cap) {
        CyclotomicNumber c = std::move(terms_[i].second);
        c += a * x.terms_[j].second;
        if (!c.is_zero()) out.emplace_back(terms_[i].first, std::move(c));
      }
      ++i;
      ++j;
    }
  }
  terms_.swap(out);
  cap_ = cap;
}

MultiLaurent& MultiLaurent::operator+=(const MultiLaurent& o) {
  axpy(CyclotomicNumber(1), o);
  return *this;
}

MultiLaurent& MultiLaurent::operator-=(const MultiLaurent& o) {
  axpy(CyclotomicNumber(-1), o);
  return *this;
}

MultiLaurent& MultiLaurent::operator*=(const CyclotomicNumber& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

MultiLaurent MultiLaurent::truncated(int cap) const {
  MultiLaurent r(nvars_, lower_, std::min(cap, cap_));
  for (const auto& t : terms_)
    if (total_degree(t.first) <= r.cap_) r.terms_.push_back(t);
  return r;
}

MultiLaurent MultiLaurent::derivative(int var) const {
  std::vector<int> lower = lower_;
  lower[var] -= 1;
  MultiLaurent r(nvars_, lower, cap_ - 1);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial mm = m;
    mm[var] = static_cast<std::int8_t>(mm[var] - 1);
    CyclotomicNumber cc = c;
    cc *= Rational(m[var]);
    r.terms_.emplace_back(mm, std::move(cc));
  }
  return r;  // order is preserved: decrementing one coordinate keeps lexicographic order
}

MultiLaurent MultiLaurent::reflected() const {
  MultiLaurent r = *this;
  for (auto& [m, c] : r.terms_)
    if (total_degree(m) & 1) c = -c;
  return r;
}

void MultiLaurent::prune_zeros() {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_)
    if (!t.second.is_zero()) out.push_back(std::move(t));
  terms_.swap(out);
}

int MultiLaurent::min_degree() const {
  int d = INT_MAX;
  for (const auto& t : terms_) d = std::min(d, total_degree(t.first));
  return d;
}

int MultiLaurent::min_exponent(int var) const {
  int d = INT_MAX;
  for (const auto& t : terms_) d = std::min(d, static_cast<int>(t.first[var]));
  return d;
}

bool MultiLaurent::equal_within(const MultiLaurent& o, int cap) const {
  MultiLaurent a = truncated(cap), b = o.truncated(cap);
  a.cap_ = b.cap_ = std::min(a.cap_, b.cap_);
  a -= b;
  return a.terms_.empty();
}

bool operator==(const MultiLaurent& a, const MultiLaurent& b) {
  return a.cap() == b.cap() && a.equal_within(b, a.cap());
}

MultiLaurent operator*(const MultiLaurent& a, const MultiLaurent& b) {
  check_compatible(a, b);
  int n = a.nvars();
  std::vector<int> lower(n);
  for (int v = 0; v < n; ++v) lower[v] = a.lower()[v] + b.lower()[v];
  int cap = std::min(a.cap() + b.low_degree(), b.cap() + a.low_degree());
  MultiLaurent r(n, lower, cap);
  if (a.terms().empty() || b.terms().empty()) return r;
  std::vector<std::pair<int, const MultiLaurent::Term*>> bt;
  bt.reserve(b.terms().size());
  for (const auto& t : b.terms()) bt.emplace_back(total_degree(t.first), &t);
  std::sort(bt.begin(), bt.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<MultiLaurent::Term> out;
  for (const auto& ta : a.terms()) {
    int da = total_degree(ta.first);
    for (const auto& [db, tb] : bt) {
      if (da + db > cap) break;
      Monomial m;
      for (int v = 0; v < kMaxVars; ++v) m[v] = static_cast<std::int8_t>(ta.first[v] + tb->first[v]);
      out.emplace_back(m, ta.second * tb->second);
    }
  }
  for (auto& t : out) r.add_unchecked(std::move(t));
  r.finish_bulk();
  return r;
}

MultiLaurent operator+(MultiLaurent a, const MultiLaurent& b) { return a += b; }
MultiLaurent operator-(MultiLaurent a, const MultiLaurent& b) { return a -= b; }
MultiLaurent multilaurent_mul(const MultiLaurent& a, const MultiLaurent& b) { return a * b; }

}  // namespace gppv
