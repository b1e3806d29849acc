#include "support.hpp"

#include "tcchern/polyring/symmetric.hpp"
#include "tcchern/quotient.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <fstream>
#include <random>

using namespace tcchern;
using namespace tcchern::testing;

namespace {

// Number of x-only monomials outside the leading-term ideal; finite iff the
// x-part of the ideal is zero-dimensional.
long long count_standard_x_monomials(const IdealSpec& ideal, unsigned max_degree)
{
  const int n = ideal.rank();
  long long count = 0;
  std::vector<unsigned> e(static_cast<std::size_t>(n), 0);
  std::function<void(int, unsigned)> rec = [&](int pos, unsigned left) {
    if (pos == n) {
      const Monomial m = Monomial::from_exponents(n, e);
      for (const Polynomial& b : ideal.basis()) {
        if (b.leading_monomial().divides(m)) {
          return;
        }
      }
      ++count;
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      e[pos] = v;
      rec(pos + 1, left - v);
    }
    e[pos] = 0;
  };
  rec(0, max_degree);
  return count;
}

} // namespace

TEST(IdealForGroup, Generators)
{
  auto u = ideal_for_group({GroupKind::U, 2});
  ASSERT_EQ(u.generators().size(), 2u);
  EXPECT_EQ(u.generators()[0], x(2, 1) + x(2, 2));
  EXPECT_EQ(u.generators()[1], x(2, 1) * x(2, 2));

  auto su = ideal_for_group({GroupKind::SU, 2});
  ASSERT_EQ(su.generators().size(), 3u);
  EXPECT_EQ(su.generators()[0], x(2, 1) + x(2, 2));
  EXPECT_EQ(su.generators()[1], x(2, 1) * x(2, 1) + x(2, 2) * x(2, 2));
  EXPECT_EQ(su.generators()[2], y(2, 1) + y(2, 2));

  auto sp = ideal_for_group({GroupKind::Sp, 2});
  ASSERT_EQ(sp.generators().size(), 2u);
  EXPECT_EQ(sp.generators()[0], x(2, 1) * x(2, 1) + x(2, 2) * x(2, 2));
  EXPECT_EQ(sp.generators()[1], x(2, 1) * x(2, 1) * x(2, 2) * x(2, 2));
}

TEST(IdealForGroup, BasesAreVerified)
{
  for (int n = 1; n <= 6; ++n) {
    for (GroupKind kind : {GroupKind::U, GroupKind::SU, GroupKind::Sp}) {
      if (kind == GroupKind::Sp && n > 4) {
        continue;
      }
      auto ideal = ideal_for_group({kind, n});
      EXPECT_TRUE(ideal.verify()) << to_string(kind) << n;
    }
  }
}

// The coinvariant algebra of W has dimension |W|; counting standard
// monomials checks the basis against that independent fact.
TEST(IdealForGroup, StandardMonomialCountEqualsWeylOrder)
{
  for (int n = 1; n <= 5; ++n) {
    for (GroupKind kind : {GroupKind::U, GroupKind::SU, GroupKind::Sp}) {
      if (kind == GroupKind::Sp && n > 4) {
        continue;
      }
      const GroupSpec spec{kind, n};
      auto ideal = ideal_for_group(spec);
      const unsigned top = static_cast<unsigned>(kind == GroupKind::Sp ? n * n : n * (n - 1) / 2);
      const long long within = count_standard_x_monomials(ideal, top);
      const long long beyond = count_standard_x_monomials(ideal, top + 3);
      EXPECT_EQ(within, spec.weyl_order()) << spec.to_string();
      EXPECT_EQ(beyond, within) << spec.to_string();
    }
  }
}

TEST(Groebner, Examples)
{
  const int n = 2;
  std::vector<Polynomial> principal{x(n, 1)};
  EXPECT_EQ(groebner(principal), principal);

  std::vector<Polynomial> elem{x(n, 1) + x(n, 2), x(n, 1) * x(n, 2)};
  auto basis = groebner(elem);
  EXPECT_TRUE(satisfies_buchberger(basis));
  // x1^2 = (x1 + x2) x1 - x1 x2 lies in the ideal
  const Polynomial x1sq = x(n, 1) * x(n, 1);
  EXPECT_EQ((x(n, 1) + x(n, 2)) * x(n, 1) - x(n, 1) * x(n, 2), x1sq);
  EXPECT_TRUE(reduce(x1sq, basis).is_zero());

  std::vector<Polynomial> lin{x(n, 1) + x(n, 2), x(n, 1) - x(n, 2)};
  std::vector<Polynomial> expect{x(n, 2), x(n, 1)};
  EXPECT_EQ(groebner(lin), expect);

  EXPECT_THROW(groebner(std::vector<Polynomial>{}), std::invalid_argument);
  std::vector<Polynomial> mixed{x(1, 1), x(2, 1)};
  EXPECT_THROW(groebner(mixed), std::invalid_argument);
}

TEST(Groebner, BasisIsReduced)
{
  for (GroupSpec spec : {GroupSpec{GroupKind::U, 4}, GroupSpec{GroupKind::SU, 3},
                         GroupSpec{GroupKind::Sp, 3}}) {
    auto ideal = ideal_for_group(spec);
    auto basis = ideal.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_EQ(basis[i].leading_coefficient(), 1);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) {
          continue;
        }
        for (const auto& [m, c] : basis[i].terms()) {
          EXPECT_FALSE(basis[j].leading_monomial().divides(m)) << spec.to_string();
        }
      }
    }
  }
}

TEST(IdealSpec, RejectsEmptyAndBadBases)
{
  EXPECT_THROW(IdealSpec(std::vector<Polynomial>{}), std::invalid_argument);
  std::vector<Polynomial> gens{x(2, 1) + x(2, 2), x(2, 1) * x(2, 2)};
  // the generators themselves are not a Gröbner basis
  EXPECT_THROW(IdealSpec(gens, gens, std::nullopt), std::invalid_argument);
  IdealSpec ok(gens);
  std::vector<Polynomial> good(ok.basis().begin(), ok.basis().end());
  EXPECT_NO_THROW(IdealSpec(gens, good, std::nullopt));
}

TEST(NormalForm, Examples)
{
  auto u2 = ideal_for_group({GroupKind::U, 2});
  EXPECT_TRUE(normal_form(x(2, 1) + x(2, 2), u2).is_zero());
  EXPECT_EQ(normal_form(y(2, 1) + y(2, 2), u2), y(2, 1) + y(2, 2));
  auto sp1 = ideal_for_group({GroupKind::Sp, 1});
  EXPECT_TRUE(normal_form(x(1, 1) * x(1, 1), sp1).is_zero());
  EXPECT_TRUE(normal_form(Polynomial(2), u2).is_zero());
  EXPECT_THROW(normal_form(x(3, 1), u2), std::invalid_argument);
}

TEST(NormalForm, GeneratorsVanishLinearIdempotent)
{
  std::mt19937 rng(101);
  for (GroupSpec spec : {GroupSpec{GroupKind::U, 3}, GroupSpec{GroupKind::SU, 3},
                         GroupSpec{GroupKind::Sp, 2}}) {
    auto ideal = ideal_for_group(spec);
    for (const Polynomial& g : ideal.generators()) {
      EXPECT_TRUE(normal_form(g, ideal).is_zero());
    }
    for (int trial = 0; trial < 100; ++trial) {
      auto p = random_polynomial(rng, spec.rank, 5, {Family::x, Family::y});
      auto q = random_polynomial(rng, spec.rank, 5, {Family::x, Family::y});
      const Rational s = make_rational(trial % 7 - 3, 2);
      auto np = normal_form(p, ideal);
      ASSERT_EQ(normal_form(np, ideal), np);
      ASSERT_EQ(normal_form(p + q * s, ideal), np + normal_form(q, ideal) * s);
    }
  }
}

TEST(NormalForm, MembershipSoundness)
{
  std::mt19937 rng(202);
  for (int n = 1; n <= 3; ++n) {
    for (GroupKind kind : {GroupKind::U, GroupKind::SU, GroupKind::Sp}) {
      auto ideal = ideal_for_group({kind, n});
      for (int trial = 0; trial < 40; ++trial) {
        Polynomial combo(n);
        for (const Polynomial& g : ideal.generators()) {
          combo += random_polynomial(rng, n, 4, {Family::x, Family::y, Family::z}) * g;
        }
        ASSERT_TRUE(normal_form(combo, ideal).is_zero());
      }
    }
  }
}

TEST(EqualModIdeal, Examples)
{
  auto u2 = ideal_for_group({GroupKind::U, 2});
  // iota(z1 + z2), expanded by hand
  Polynomial iota_p1 = x(2, 1) + y(2, 1) + x(2, 2) + y(2, 2);
  EXPECT_TRUE(equal_mod_ideal(iota_p1, y(2, 1) + y(2, 2), u2));
  EXPECT_TRUE(equal_mod_ideal(x(2, 1) * y(2, 2), x(2, 1) * y(2, 2), u2));
  EXPECT_FALSE(equal_mod_ideal(x(2, 1), y(2, 1), u2));
  EXPECT_FALSE(normal_form(x(2, 1) - y(2, 1), u2).is_zero());
}

TEST(EqualModIdeal, CongruenceAndEquivalence)
{
  std::mt19937 rng(303);
  auto ideal = ideal_for_group({GroupKind::U, 3});
  auto random_member = [&] {
    Polynomial combo(3);
    for (const Polynomial& g : ideal.generators()) {
      combo += random_polynomial(rng, 3, 2, {Family::x, Family::y}, 2) * g;
    }
    return combo;
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_polynomial(rng, 3, 3, {Family::x, Family::y});
    auto q = random_polynomial(rng, 3, 3, {Family::x, Family::y});
    auto p2 = p + random_member();
    auto p3 = p2 + random_member();
    auto q2 = q + random_member();
    ASSERT_TRUE(equal_mod_ideal(p, p, ideal));
    ASSERT_TRUE(equal_mod_ideal(p, p2, ideal));
    ASSERT_TRUE(equal_mod_ideal(p2, p, ideal));
    ASSERT_TRUE(equal_mod_ideal(p, p3, ideal));
    ASSERT_TRUE(equal_mod_ideal(p * q, p2 * q2, ideal));
  }
}

TEST(NormalForm, PowerSumsLieInUnitaryIdeal)
{
  for (int n = 1; n <= 5; ++n) {
    auto ideal = ideal_for_group({GroupKind::U, n});
    for (int a = 1; a <= n; ++a) {
      EXPECT_TRUE(normal_form(two_var_power_sum(a, 0, n), ideal).is_zero()) << n << " " << a;
    }
    // higher power sums too
    EXPECT_TRUE(normal_form(two_var_power_sum(n + 1, 0, n), ideal).is_zero());
  }
}

TEST(IdealRegistry, CachesInMemory)
{
  IdealRegistry reg;
  auto a = reg.get({GroupKind::U, 3});
  auto b = reg.get({GroupKind::U, 3});
  EXPECT_EQ(a.get(), b.get());
  EXPECT_NE(a.get(), reg.get({GroupKind::SU, 3}).get());
}

TEST(IdealRegistry, DiskCacheRoundTripAndRecovery)
{
  const auto dir = std::filesystem::temp_directory_path() /
                   ("tcchern_cache_" + std::to_string(std::random_device{}()));
  std::filesystem::remove_all(dir);
  const GroupSpec spec{GroupKind::Sp, 2};
  {
    IdealRegistry reg(dir);
    reg.get(spec);
  }
  const auto file = dir / "Sp2.json";
  ASSERT_TRUE(std::filesystem::exists(file));
  nlohmann::json j;
  {
    std::ifstream in(file);
    j = nlohmann::json::parse(in);
  }
  EXPECT_EQ(j["group"], "Sp");
  EXPECT_EQ(j["rank"], 2);
  EXPECT_EQ(j["order"], "block-grevlex-xyz");
  {
    IdealRegistry reg(dir);
    EXPECT_EQ(reg.get(spec)->basis().size(), ideal_for_group(spec).basis().size());
  }
  // a tampered basis fails verification and is recomputed
  j["basis"] = nlohmann::json::array({polynomial_to_json(x(2, 1))});
  {
    std::ofstream out(file);
    out << j.dump();
  }
  {
    IdealRegistry reg(dir);
    auto ideal = reg.get(spec);
    EXPECT_TRUE(ideal->verify());
    EXPECT_FALSE(normal_form(x(2, 1), *ideal).is_zero());
  }
  {
    std::ofstream out(file);
    out << "not json";
  }
  {
    IdealRegistry reg(dir);
    EXPECT_TRUE(reg.get(spec)->verify());
  }
  std::filesystem::remove_all(dir);
}
