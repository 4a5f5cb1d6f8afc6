#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "veesys/catalog.hpp"
#include "veesys/error.hpp"
#include "veesys/parser.hpp"
#include "veesys/rng.hpp"
#include "veesys/system.hpp"
#include "veesys/vee.hpp"

using namespace veesys;
using oracle::q;

namespace {

ConcreteSystem concrete(const CovectorSystem& family, const Bindings& b = {}) { return instantiate(family, b).system; }

ConcreteSystem make(std::size_t n, const std::vector<std::pair<Rational, VectorQ>>& cv) {
  ConcreteSystem s;
  s.dimension = n;
  for (std::size_t i = 0; i < cv.size(); ++i) s.covectors.push_back({"c" + std::to_string(i), cv[i].first, cv[i].second});
  return s;
}

ConcreteSystem d21(long t, long s) { return concrete(d21lambda(), {{"t", t}, {"s", s}}); }

std::set<std::vector<std::size_t>> member_sets(const std::vector<PlaneGroup>& planes) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& p : planes) out.insert(p.members);
  return out;
}

ConcreteSystem random_system(Rng& rng, std::size_t n, std::size_t m) {
  for (;;) {
    ConcreteSystem s;
    s.dimension = n;
    for (std::size_t k = 0; k < m; ++k) {
      VectorQ v(n);
      for (auto& x : v) x = rng.uniform_int(-2, 2);
      s.covectors.push_back({"", Rational(rng.uniform_int(1, 4)), v});
    }
    if (validate(s).ok() && gram_metric(s).nonsingular()) return s;
  }
}

}  // namespace

TEST_CASE("instantiate drops vanishing radicands") {
  const auto d = instantiate(d21lambda(), {{"t", 1}, {"s", 1}});
  CHECK(d.system.size() == 7);
  CHECK(d.dropped.empty());
  for (std::size_t k = 4; k < 7; ++k) CHECK(d.system.covectors[k].radicand == 2);

  const auto g = instantiate(g12(), {{"t", q(-1, 2)}});
  CHECK(g.system.size() == 10);
  CHECK(g.dropped == std::vector<std::string>{"e1", "e2", "e1+e2"});

  const auto b2 = instantiate(root_system('B', 2), {});
  CHECK(b2.system.size() == 4);

  CHECK_THROWS_AS(instantiate(d21lambda(), {{"t", 1}}), InputError);
  CHECK_THROWS_AS(instantiate(d21lambda(), {{"t", 0}, {"s", 1}}), ArithmeticError);
}

TEST_CASE("validate diagnostics") {
  const auto bad = make(2, {{1, {1, 0}}, {1, {2, 0}}});
  const auto r = validate(bad);
  REQUIRE(r.collinear_pairs.size() == 1);
  CHECK(r.collinear_pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK_FALSE(r.ok());

  const auto flat = validate(make(3, {{1, {1, 0, 0}}, {1, {0, 1, 0}}}));
  CHECK(flat.rank == 2);
  CHECK_FALSE(flat.spans());

  CHECK(validate(d21(1, 1)).ok());
  CHECK(validate(d21lambda()).ok());
  const auto zero = validate(make(2, {{1, {0, 0}}, {1, {1, 0}}, {1, {0, 1}}}));
  CHECK(zero.zero_directions == std::vector<std::size_t>{0});
}

TEST_CASE("symbolic gram metrics") {
  const auto g = symbolic_gram(d21lambda());
  const std::vector<std::string> ts{"t", "s"};
  const auto f = parse_scalar("2*(t+s+1)", ts);
  CHECK(g[0][0] == f);
  CHECK(g[1][1] == f / parse_scalar("t", ts));
  CHECK(g[2][2] == f / parse_scalar("s", ts));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(g[i][j].is_zero());

  const auto h = symbolic_gram(g12());
  const auto a = parse_scalar("2*t+1", {"t"});
  CHECK(h[0][0] == a * Rational(4));
  CHECK(h[0][1] == a * Rational(2));
  CHECK(h[1][0] == a * Rational(2));
  CHECK(h[1][1] == a * Rational(4));
  CHECK(h[2][2] == a * Rational(3) / parse_scalar("t", {"t"}));
  CHECK(h[0][2].is_zero());
  CHECK(h[1][2].is_zero());
}

TEST_CASE("concrete gram metrics") {
  const auto g = gram_metric(d21(1, 1));
  CHECK(g.matrix == MatrixQ{{6, 0, 0}, {0, 6, 0}, {0, 0, 6}});
  CHECK(g.rank == 3);
  CHECK(gram_metric(concrete(orthonormal(4))).matrix == MatrixQ::identity(4));

  const auto deg = gram_metric(make(2, {{1, {1, 1}}, {-1, {1, 1}}}));
  CHECK_FALSE(deg.nonsingular());
  CHECK(deg.rank == 0);
  CHECK_THROWS_AS(deg.inv(), SingularMatrixError);

  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_system(rng, 3 + trial % 3, 6);
    CHECK(gram_metric(s).matrix == oracle::gram(s));
  }
}

TEST_CASE("pairing matrix") {
  const auto o = concrete(orthonormal(3));
  CHECK(pairing_matrix(o, gram_metric(o)) == MatrixQ::identity(3));

  const auto nv = concrete(nonvee3());
  const auto g = gram_metric(nv);
  const auto b = pairing_matrix(nv, g);
  CHECK(b(0, 1) == q(-1, 4));
  CHECK(b(0, 3) == oracle::inner(nv.covectors[0].direction, oracle::apply(oracle::inverse(oracle::gram(nv)), nv.covectors[3].direction)));
  CHECK(b == b.transpose());

  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = trial == 0 ? d21(2, 3) : random_system(rng, 3 + trial % 3, 7);
    const auto gm = gram_metric(s);
    const auto bm = pairing_matrix(s, gm);
    const std::size_t m = s.size();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t c = 0; c < m; ++c) {
        Rational sum = 0;
        for (std::size_t k = 0; k < m; ++k) sum += s.covectors[k].radicand * bm(a, k) * bm(k, c);
        CHECK(sum == bm(a, c));
      }
    MatrixQ id(s.dimension, s.dimension);
    const auto cores = check_cores(s, gm);
    for (std::size_t k = 0; k < m; ++k) id += MatrixQ::outer(cores[k], s.covectors[k].direction) * s.covectors[k].radicand;
    CHECK(id == MatrixQ::identity(s.dimension));
  }
}

TEST_CASE("plane enumeration") {
  const auto tri = make(2, {{1, {1, 0}}, {1, {0, 1}}, {1, {1, 1}}});
  const auto p = enumerate_planes(tri);
  REQUIRE(p.size() == 1);
  CHECK(p[0].members == std::vector<std::size_t>{0, 1, 2});
  CHECK(p[0].basis == MatrixQ::identity(2));

  const auto nv = concrete(nonvee3());
  const auto pn = enumerate_planes(nv);
  CHECK(pn.size() == 6);
  for (const auto& g : pn) CHECK(g.members.size() == 2);
  CHECK(member_sets(pn) == oracle::planes(nv));

  const auto d = d21(1, 1);
  const auto pd = enumerate_planes(d);
  CHECK(member_sets(pd) == oracle::planes(d));
  for (const auto& g : pd) {
    CHECK(g.members.size() >= 2);
    CHECK(g.members.size() <= 3);
    CHECK(rank(g.basis) == 2);
    CHECK(rref(g.basis) == g.basis);
  }

  for (const char* name : {"A3", "B3", "D4", "G2", "A4"}) {
    const auto s = concrete(find_builtin(name)->system);
    CHECK_MESSAGE(member_sets(enumerate_planes(s)) == oracle::planes(s), name);
  }
}

TEST_CASE("every non-collinear pair lies in exactly one plane") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_system(rng, 3 + trial % 2, 7);
    const auto planes = enumerate_planes(s);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        int count = 0;
        for (const auto& pl : planes)
          if (std::binary_search(pl.members.begin(), pl.members.end(), i) &&
              std::binary_search(pl.members.begin(), pl.members.end(), j))
            ++count;
        CHECK(count == 1);
      }
    // order independence
    std::vector<std::size_t> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    ConcreteSystem shuffled{s.dimension, {}};
    for (auto k : perm) shuffled.covectors.push_back(s.covectors[k]);
    std::vector<MatrixQ> keys_a, keys_b;
    for (const auto& pl : planes) keys_a.push_back(pl.basis);
    for (const auto& pl : enumerate_planes(shuffled)) keys_b.push_back(pl.basis);
    CHECK(keys_a.size() == keys_b.size());
    for (const auto& k : keys_a) CHECK(std::find(keys_b.begin(), keys_b.end(), k) != keys_b.end());
  }
}

TEST_CASE("vee plane checks") {
  const auto o = concrete(orthonormal(2));
  const auto go = gram_metric(o);
  const auto po = enumerate_planes(o);
  const auto c = check_vee_plane(o, go, pairing_matrix(o, go), po.at(0));
  CHECK(c.satisfied);
  CHECK(pairing_matrix(o, go)(0, 1) == 0);

  const auto nv = concrete(nonvee3());
  const auto g = gram_metric(nv);
  const auto b = pairing_matrix(nv, g);
  for (const auto& pl : enumerate_planes(nv)) {
    const auto r = check_vee_plane(nv, g, b, pl);
    CHECK(r.satisfied == oracle::vee_plane(nv, pl.members));
    CHECK(r.satisfied == (b(pl.members[0], pl.members[1]) == 0));
    if (!r.satisfied) {
      REQUIRE(r.witness.has_value());
      CHECK(std::find(pl.members.begin(), pl.members.end(), *r.witness) != pl.members.end());
    }
  }
}

TEST_CASE("vee verdicts") {
  for (const char* name : {"A2", "B2", "G2", "A3", "B3", "D4", "ortho3"}) {
    const auto v = is_vee_system(concrete(find_builtin(name)->system));
    CHECK_MESSAGE(v.holds, name);
    CHECK(v.failures().empty());
  }
  const auto nv = is_vee_system(concrete(nonvee3()));
  CHECK_FALSE(nv.holds);
  CHECK_FALSE(nv.failures().empty());
  CHECK(is_vee_system(d21(1, 1)).holds);
  CHECK(is_vee_system(concrete(g12(), {{"t", 1}})).holds);
  CHECK_THROWS_AS(is_vee_system(make(2, {{1, {1, 1}}, {-1, {1, 1}}})), SingularMatrixError);

  // three-member planes of a root system report a common lambda
  const auto a2 = is_vee_system(concrete(root_system('A', 2)));
  REQUIRE(a2.planes.size() == 1);
  const auto& l = a2.planes[0].lambdas;
  REQUIRE(l.size() == 3);
  for (const auto& x : l) {
    REQUIRE(x.has_value());
    CHECK(*x == 1);
  }
}

TEST_CASE("verdict agrees with the definition-level oracle") {
  Rng rng(99);
  int failing = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_system(rng, 3, 5 + trial % 3);
    const auto v = is_vee_system(s);
    bool expect = true;
    for (const auto& members : oracle::planes(s)) expect = expect && oracle::vee_plane(s, members);
    CHECK(v.holds == expect);
    failing += !v.holds;
  }
  CHECK(failing > 0);
}

TEST_CASE("every spanning 2D system is a vee-system") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_system(rng, 2, 2 + trial % 5);
    const auto v = is_vee_system(s);
    CHECK(v.holds);
    REQUIRE(v.planes.size() == 1);
    if (s.size() >= 3)
      for (const auto& l : v.planes[0].lambdas) CHECK(l == Rational(1));
  }
}

TEST_CASE("vee verdict invariances") {
  Rng rng(31);
  std::vector<ConcreteSystem> systems{d21(2, 5), concrete(nonvee3()), concrete(g12(), {{"t", 3}})};
  for (int k = 0; k < 10; ++k) systems.push_back(random_system(rng, 3 + k % 2, 6));
  for (const auto& s : systems) {
    const bool base = is_vee_system(s).holds;

    auto perm = s;
    std::shuffle(perm.covectors.begin(), perm.covectors.end(), rng.engine());
    CHECK(is_vee_system(perm).holds == base);

    auto scaled = s;
    for (auto& c : scaled.covectors) {
      const Rational k = q(rng.uniform_int(1, 5), rng.uniform_int(1, 4)) * (rng.uniform_int(0, 1) ? 1 : -1);
      c.radicand /= k * k;
      for (auto& x : c.direction) x *= k;
    }
    CHECK(is_vee_system(scaled).holds == base);

    auto flipped = s;
    for (auto& c : flipped.covectors)
      for (auto& x : c.direction) x = -x;
    CHECK(is_vee_system(flipped).holds == base);
  }
}

TEST_CASE("canonical form keeps the covector") {
  const Covector c{"x", 3, {q(2, 3), q(-4, 3), 0}};
  const auto k = canonical_form(c);
  CHECK(k.direction == VectorQ{1, -2, 0});
  CHECK(k.radicand == q(4, 3));
  CHECK(MatrixQ::outer(k.direction, k.direction) * k.radicand == MatrixQ::outer(c.direction, c.direction) * c.radicand);
  const auto neg = canonical_form(Covector{"y", 1, {0, -2, 4}});
  CHECK(neg.direction == VectorQ{0, 1, -2});
  CHECK(neg.radicand == 4);
}
