#include <algorithm>
#include <set>

#include "doctest.h"
#include "gppv/fixtures.hpp"
#include "gppv/lattice.hpp"
#include "gppv/matrix.hpp"
#include "test_util.hpp"

using namespace gppv;

namespace {

IntMatrix int_matrix(std::vector<std::vector<long>> rows) {
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

IntMatrix times(const IntMatrix& a, long c) {
  IntMatrix r = a;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) *= c;
  return r;
}

// box brute force of b + 2W Z^n inside Q(l)/4 <= bound
std::vector<IntVec> brute_force(const RatMatrix& w, const IntVec& b, const Rational& bound, long box) {
  const std::size_t n = w.rows();
  CosetSystem cs(times(integer_matrix(w), 2), std::nullopt);
  std::vector<IntVec> out;
  IntVec l(n, -box);
  for (;;) {
    IntVec diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = l[i] - b[i];
    if (cs.contains(diff) && q_form(w, l) / 4 <= bound) out.push_back(l);
    std::size_t i = 0;
    while (i < n && l[i] == box) l[i++] = -box;
    if (i == n) break;
    ++l[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("linking matrix, determinant and inverse") {
  auto w = linking_matrix(star_graph(-1, {}));
  CHECK(det_w(w) == -1);
  CHECK(w_inverse(w)(0, 0) == -1);
  CHECK(det_w(linking_matrix(fixture("y2337"))) == 1);
  CHECK(det_w(linking_matrix(fixture("a2"))) == 3);
  std::mt19937 rng(4);
  for (int i = 0; i < 20; ++i) {
    auto m = linking_matrix(testing::random_tree(rng, 6));
    CHECK(w_inverse(m) * m == RatMatrix::identity(m.rows()));
  }
}

TEST_CASE("smith normal form examples") {
  auto id = IntMatrix::identity(3);
  auto s = smith_normal_form(id);
  CHECK(s.D == id);
  CHECK(s.U * s.D * s.V == id);
  auto d24 = int_matrix({{2, 0}, {0, 4}});
  CHECK(smith_normal_form(d24).D == d24);
  auto a = int_matrix({{2, 1}, {1, 2}});
  auto sa = smith_normal_form(a);
  CHECK(sa.D == int_matrix({{1, 0}, {0, 3}}));
  CHECK(sa.U * sa.D * sa.V == a);
  CHECK(abs(determinant(sa.U)) == 1);
  CHECK(abs(determinant(sa.V)) == 1);
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> e(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = e(rng);
    if (determinant(a) == 0) continue;
    auto s = smith_normal_form(a);
    CHECK(s.U * s.D * s.V == a);
    Integer prod = 1;
    for (std::size_t i = 0; i < n; ++i) {
      prod *= s.D(i, i);
      if (i + 1 < n && s.D(i, i) != 0) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
    }
    CHECK(prod == abs(determinant(a)));
  }
}

TEST_CASE("coset representative examples") {
  auto w1 = integer_matrix(linking_matrix(star_graph(-1, {})));
  CHECK(coset_reps(times(w1, 2), IntVec{0}).size() == 1);
  CHECK(coset_reps(w1).size() == 1);
  auto wa = integer_matrix(linking_matrix(fixture("a2")));
  CHECK(coset_reps(times(wa, 2)).size() == 12);
  auto cs = coset_reps(times(wa, 2), IntVec{1, 1});
  CHECK(cs.size() == 3);
  // brute force over the [0,12)^2 box
  std::set<IntVec> classes;
  for (long x = 0; x < 12; ++x)
    for (long y = 0; y < 12; ++y)
      if (x % 2 == 1 && y % 2 == 1) classes.insert(cs.reduce({x, y}));
  CHECK(classes.size() == 3);
}

TEST_CASE("coset systems are complete and inequivalent") {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testing::random_tree(rng, 4);
    auto w = integer_matrix(linking_matrix(g));
    auto delta = degree_vector(g);
    IntVec parity(delta.begin(), delta.end());
    auto cs = coset_reps(times(w, 2), parity);
    CHECK(Integer(static_cast<long>(cs.size())) == abs(determinant(w)));
    auto all = coset_reps(times(w, 2));
    CHECK(Integer(static_cast<long>(all.size())) == abs(determinant(times(w, 2))));
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t v = 0; v < parity.size(); ++v) CHECK(((cs.reps()[i][v] - parity[v]) % 2 + 2) % 2 == 0);
      for (std::size_t j = i + 1; j < cs.size(); ++j) CHECK(!cs.equivalent(cs.reps()[i], cs.reps()[j]));
      CHECK(cs.index_of(cs.reps()[i]) == static_cast<long>(i));
    }
  }
}

TEST_CASE("quadratic form examples") {
  auto w1 = linking_matrix(star_graph(-1, {}));
  CHECK(q_form(w1, IntVec{0}) == 0);
  CHECK(q_form(w1, IntVec{2}) == 4);
  CHECK(q_form(linking_matrix(fixture("a2")), IntVec{1, 0}) == Rational(2, 3));
  QFormData qd(linking_matrix(fixture("a2")));
  CHECK(qd.d == 3);
  CHECK(static_cast<long>(qd.numerator({1, 0})) == 2);
}

TEST_CASE("ellipsoid enumeration examples") {
  auto w1 = linking_matrix(star_graph(-1, {}));
  auto pts = enumerate_coset_in_ellipsoid(w1, {0}, 1);
  CHECK(pts == std::vector<IntVec>{{-2}, {0}, {2}});
  auto wa = linking_matrix(fixture("a2"));
  CHECK(enumerate_coset_in_ellipsoid(wa, {0, 0}, 0) == std::vector<IntVec>{{0, 0}});
  CHECK(enumerate_coset_in_ellipsoid(wa, {1, 1}, 0).empty());
  for (Rational bound : {Rational(1, 3), Rational(4, 3), Rational(7, 2)})
    CHECK(enumerate_coset_in_ellipsoid(wa, {0, 0}, bound) == brute_force(wa, {0, 0}, bound, 10));
}

TEST_CASE("ellipsoid enumeration is complete on random graphs") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testing::random_tree(rng, 4);
    auto w = linking_matrix(g);
    auto delta = degree_vector(g);
    auto cs = coset_reps(times(integer_matrix(w), 2), IntVec(delta.begin(), delta.end()));
    Rational bound(3);
    // Gershgorin certificate: Q(l) >= |l|^2 / rho, so |l_v|^2 <= 4 bound rho
    long box = 1;
    while (Rational(box * box) <= 4 * bound * gershgorin_bound(w)) ++box;
    for (const auto& b : cs.reps())
      CHECK(enumerate_coset_in_ellipsoid(w, b, bound) == brute_force(w, b, bound, box));
  }
}

TEST_CASE("restricted enumerator agrees with the box enumerator") {
  std::mt19937 rng(10);
  for (int trial = 0; trial < 15; ++trial) {
    auto g = testing::random_tree(rng, 5);
    auto w = linking_matrix(g);
    const std::size_t n = w.rows();
    std::vector<CoordinateChoice> choice(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (v % 2 == 0) {
        choice[v].free = true;
        choice[v].parity = static_cast<int>(v % 4 == 0);
      } else {
        choice[v].values = {-1, 1};
      }
    }
    Rational bound(5, 2);
    std::vector<IntVec> got;
    enumerate_restricted_ellipsoid(w, choice, bound, [&](const IntVec& l, __int128) { got.push_back(l); });
    std::sort(got.begin(), got.end());
    std::vector<IntVec> ref;
    long box = 1;
    while (Rational(box * box) <= 4 * bound * gershgorin_bound(w)) ++box;
    IntVec l(n, -box);
    for (;;) {
      bool ok = true;
      for (std::size_t v = 0; v < n && ok; ++v) {
        if (choice[v].free) ok = ((l[v] % 2) + 2) % 2 == choice[v].parity;
        else ok = (l[v] == -1 || l[v] == 1);
      }
      if (ok && q_form(w, l) / 4 <= bound) ref.push_back(l);
      std::size_t i = 0;
      while (i < n && l[i] == box) l[i++] = -box;
      if (i == n) break;
      ++l[i];
    }
    std::sort(ref.begin(), ref.end());
    CHECK(got == ref);
  }
}

TEST_CASE("schur complement examples and identities") {
  auto y = linking_matrix(fixture("y2337"));
  auto r = schur_complement(y, {1, 2, 3});
  CHECK(r.S.rows() == 1);
  CHECK(r.S(0, 0) == -42);
  CHECK(r.inverse_identity);
  CHECK(r.determinant_identity);
  RatMatrix blocks(3, 3);
  blocks(0, 0) = -2;
  blocks(1, 1) = -3;
  blocks(2, 2) = -5;
  auto rb = schur_complement(blocks, {0});
  CHECK(rb.S == inverse(submatrix(blocks, {1, 2}, {1, 2})));
  CHECK(rb.T == RatMatrix(1, 2));
  std::mt19937 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto w = linking_matrix(testing::random_tree(rng, 6, 2));
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i + 1 < w.rows(); i += 2) first.push_back(i);
    auto s = schur_complement(w, first);
    CHECK(s.inverse_identity);
    CHECK(s.determinant_identity);
    CHECK(determinant(s.S) * determinant(w) == determinant(submatrix(w, first, first)));
  }
}

TEST_CASE("inertia") {
  RatMatrix f(1, 1);
  f(0, 0) = -1;
  CHECK(inertia(f).signature() == -1);
  RatMatrix h(2, 2);
  h(0, 1) = h(1, 0) = 1;
  CHECK(inertia(h).signature() == 0);
  CHECK(inertia(h).zero == 0);
  CHECK(inertia(linking_matrix(fixture("e8"))).signature() == -8);
}
