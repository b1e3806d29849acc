#include "tcchern/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace tcchern;

namespace {

struct Outcome {
  bool pass = true;
  std::string details;
  std::vector<std::string> info;

  void require(bool ok, const std::string& what)
  {
    if (!ok) {
      pass = false;
      details += (details.empty() ? "" : "; ") + what + " failed";
    }
  }

  void note(const std::string& text) { details += (details.empty() ? "" : "; ") + text; }
};

class Stopwatch {
public:
  double seconds() const
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fixed(double v, int digits = 3)
{
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

std::string sci(double v)
{
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

void require_runtime(Outcome& out, const Stopwatch& clock, double limit)
{
  const double t = clock.seconds();
  out.note("runtime " + fixed(t) + " s");
  out.require(t < limit, "runtime under " + fixed(limit, 0) + " s");
}

Polynomial iota_p(int m, int n) { return iota(power_sum(m, n, Family::z)); }

Outcome rank_two_identities()
{
  Stopwatch clock;
  Outcome out;
  const IdealSpec ideal = ideal_for_group({GroupKind::U, 2});
  const Polynomial ip2 = iota_p(2, 2);
  const Polynomial ip2m = power_map(-1, ip2);
  const Polynomial p02 = two_var_power_sum(0, 2, 2);
  out.require(equal_mod_ideal(iota_p(1, 2), two_var_power_sum(0, 1, 2), ideal), "iota(p1) = P01");
  out.require(equal_mod_ideal(p02, (ip2 + ip2m) * make_rational(1, 2), ideal), "P02 = 1/2(iota p2 + Phi^-1 iota p2)");
  out.require(equal_mod_ideal(two_var_power_sum(1, 1, 2), (ip2 - ip2m) * make_rational(1, 4), ideal),
              "P11 = 1/4(iota p2 - Phi^-1 iota p2)");
  out.require(equal_mod_ideal(two_var_power_sum(1, 1, 2), (ip2 - p02) * make_rational(1, 2), ideal),
              "P11 = 1/2(iota p2 - P02)");
  require_runtime(out, clock, 1.0);
  return out;
}

Outcome rank_three_identities()
{
  Stopwatch clock;
  Outcome out;
  const int n = 3;
  const IdealSpec ideal = ideal_for_group({GroupKind::U, n});
  auto P = [](int a, int b) { return two_var_power_sum(a, b, 3); };
  const Polynomial ip2 = iota_p(2, n), ip3 = iota_p(3, n);

  out.require(equal_mod_ideal(P(0, 1), iota_p(1, n), ideal), "P01");
  const Polynomial p02 = (ip2 + power_map(-1, ip2)) * make_rational(1, 2);
  out.require(equal_mod_ideal(P(0, 2), p02, ideal), "P02");
  out.require(equal_mod_ideal(P(1, 1), (ip2 - p02) * make_rational(1, 2), ideal), "P11");
  const Polynomial p12 = (ip3 + power_map(-1, ip3)) * make_rational(1, 6);
  out.require(equal_mod_ideal(P(1, 2), p12, ideal), "P12");

  const Polynomial B = ip3 - p12 * Rational(3);
  const bool displayed = equal_mod_ideal(P(0, 3) * Rational(8), power_map(2, B) - B * Rational(6), ideal);
  out.require(displayed, "8 P03 = Phi^2(B) - 6B with B = iota p3 - 3 P12");
  const bool corrected = equal_mod_ideal(P(0, 3) * Rational(6), power_map(2, B) - B * Rational(2), ideal);
  out.info.push_back(std::string("6 P03 = Phi^2(B) - 2B ") + (corrected ? "holds" : "does not hold") +
                     " mod J");
  out.info.push_back(std::string("Phi^2(B) - 6B = 2 P03 - 12 P21 mod J: ") +
                     (equal_mod_ideal(power_map(2, B) - B * Rational(6), P(0, 3) * Rational(2) - P(2, 1) * Rational(12),
                                      ideal)
                          ? "holds"
                          : "does not hold"));

  out.require(equal_mod_ideal(P(2, 1), (ip3 - p12 * Rational(3) - P(0, 3)) * make_rational(1, 3), ideal), "P21");
  require_runtime(out, clock, 2.0);
  return out;
}

Outcome decomposition_sweep()
{
  Stopwatch clock;
  Outcome out;
  IdealRegistry registry;
  cli::Caps caps;
  caps.sp_max_degree = 4;
  int certified = 0, total = 0;
  auto attempt = [&](const GroupSpec& g, int a, int b) {
    ++total;
    bool ok = false;
    try {
      ok = cli::cmd_decompose(g, a, b, Schedule::proof, registry, caps).ok;
    }
    catch (const std::exception& e) {
      out.note(g.to_string() + " (" + std::to_string(a) + "," + std::to_string(b) + "): " + e.what());
    }
    certified += ok ? 1 : 0;
    out.require(ok, g.to_string() + " P_{" + std::to_string(a) + "," + std::to_string(b) + "}");
  };
  for (GroupKind kind : {GroupKind::U, GroupKind::SU}) {
    for (int n = 1; n <= 4; ++n) {
      for (int m = 1; m <= n; ++m) {
        for (int b = 0; b <= m; ++b) {
          attempt({kind, n}, m - b, b);
        }
      }
    }
  }
  for (int n = 1; n <= 3; ++n) {
    for (int m = 2; m <= 4; m += 2) {
      for (int b = 0; b <= m; ++b) {
        attempt({GroupKind::Sp, n}, m - b, b);
      }
    }
  }
  out.note(std::to_string(certified) + "/" + std::to_string(total) + " certified");
  require_runtime(out, clock, 60.0);
  return out;
}

Outcome pivot_formula()
{
  Stopwatch clock;
  Outcome out;
  for (int m = 2; m <= 4; ++m) {
    const IdealSpec ideal = ideal_for_group({GroupKind::U, m});
    const std::vector<Polynomial> A = a_recursion(m, m);
    const Rational inverse_pivot = 1 / Rational(pivot_product(m));
    out.require(equal_mod_ideal(two_var_power_sum(0, m, m), A.back() * inverse_pivot, ideal),
                "m = " + std::to_string(m));
    out.note("pivot(" + std::to_string(m) + ") = " + pivot_product(m).get_str());
  }
  require_runtime(out, clock, 60.0);
  return out;
}

Outcome mu_vanishing()
{
  Outcome out;
  long odd = 0, even = 0;
  for (int n = 1; n <= 3; ++n) {
    const GroupSpec g{GroupKind::Sp, n};
    cli::detail::for_each_xy_monomial(n, 6, [&](const Monomial& m) {
      const Polynomial s = symmetrize(Polynomial::term(m), g);
      if (parity(m) == Parity::odd) {
        ++odd;
        out.require(s.is_zero(), "odd " + cli::detail::monomial_label(m) + " in " + g.to_string());
      }
      else {
        ++even;
        const bool positive = !s.is_zero() && std::all_of(s.terms().begin(), s.terms().end(),
                                                          [](const auto& t) { return t.second > 0; });
        out.require(positive, "even " + cli::detail::monomial_label(m) + " in " + g.to_string());
      }
    });
  }
  out.note(std::to_string(odd) + " odd and " + std::to_string(even) + " even monomials");
  return out;
}

Outcome property_suites()
{
  Stopwatch clock;
  Outcome out;
  constexpr int cases = 1000;
  std::mt19937 rng(314159u);
  std::uniform_int_distribution<int> rank(1, 4), kdist(-3, 3), small(0, 4);
  const std::initializer_list<Family> all{Family::x, Family::y, Family::z};
  const std::initializer_list<Family> xy{Family::x, Family::y};

  int ring = 0, iota_hom = 0, phi_hom = 0, comp = 0, eig = 0, binom = 0;
  for (int t = 0; t < cases; ++t) {
    const int n = rank(rng);
    const auto a = random_polynomial(rng, n, 3, all), b = random_polynomial(rng, n, 3, all),
               c = random_polynomial(rng, n, 3, all);
    ring += (a * (b + c) == a * b + a * c && (a * b) * c == a * (b * c) && a * b == b * a && a + b == b + a &&
             (a - a).is_zero() && a * Polynomial::constant(n, 1) == a)
                ? 1
                : 0;

    const auto za = random_polynomial(rng, n, 3, {Family::z}), zb = random_polynomial(rng, n, 3, {Family::z});
    iota_hom += (iota(za * zb) == iota(za) * iota(zb) && iota(za + zb) == iota(za) + iota(zb)) ? 1 : 0;

    const auto pa = random_polynomial(rng, n, 3, xy), pb = random_polynomial(rng, n, 3, xy);
    const long k = kdist(rng), l = kdist(rng);
    phi_hom += (power_map(k, pa * pb) == power_map(k, pa) * power_map(k, pb) &&
                power_map(k, pa + pb) == power_map(k, pa) + power_map(k, pb))
                   ? 1
                   : 0;
    comp += power_map(k, power_map(l, pa)) == power_map(k * l, pa) ? 1 : 0;

    const int ea = small(rng), eb = 1 + small(rng) - (ea > 0 ? 1 : 0);
    const Polynomial P = two_var_power_sum(ea, eb, n);
    eig += power_map(k, P) == P * pow(Rational(k), static_cast<unsigned>(eb)) ? 1 : 0;

    const int m = 1 + small(rng);
    Polynomial rhs(n);
    for (int j = 0; j <= m; ++j) {
      rhs += two_var_power_sum(m - j, j, n) * Rational(binomial(static_cast<unsigned>(m), static_cast<unsigned>(j))) *
             pow(Rational(k), static_cast<unsigned>(j));
    }
    binom += power_map(k, iota_p(m, n)) == rhs ? 1 : 0;
  }
  auto tally = [&](const std::string& name, int passed) {
    out.require(passed == cases, name);
    out.note(name + " " + std::to_string(passed) + "/" + std::to_string(cases));
  };
  tally("ring laws", ring);
  tally("iota homomorphism", iota_hom);
  tally("power map homomorphism", phi_hom);
  tally("power map composition", comp);
  tally("eigenvalue law", eig);
  tally("binomial identity", binom);
  require_runtime(out, clock, 60.0);
  return out;
}

Outcome newton_rewriting()
{
  Outcome out;
  const GroupSpec u3{GroupKind::U, 3};
  const DecomposeOptions opts{Schedule::sign_first};
  auto s = [](int i, int k) { return CurvatureExpr::symbol(CurvatureSymbol{i, k}); };

  const CurvatureExpr y1 = s(1, 1);
  const CurvatureExpr y2 =
      (s(1, 1) * s(1, 1) + s(1, -1) * s(1, -1)) * make_rational(1, 2) - (s(2, 1) + s(2, -1));
  const CurvatureExpr xy = (s(1, 1) * s(1, 1) - s(1, -1) * s(1, -1)) * make_rational(1, 4) +
                           (s(2, -1) - s(2, 1)) * make_rational(1, 2);

  const CurvatureExpr got1 = curvature_classes(decompose(u3, 0, 1, opts).expr(), 3);
  const CurvatureExpr got2 = curvature_classes(decompose(u3, 0, 2, opts).expr(), 3);
  const CurvatureExpr got3 = curvature_classes(decompose(u3, 1, 1, opts).expr(), 3);
  out.require(got1 == y1, "P01 -> s1(Omega_1)");
  out.require(got2 == y2, "P02 half formula");
  out.require(got3 == xy, "P11 quarter formula");
  out.note("sign-first U(3) decompositions rewritten in s_i(Omega_k)");
  out.info.push_back("P01 = " + got1.to_string());
  out.info.push_back("P02 = " + got2.to_string());
  out.info.push_back("P11 = " + got3.to_string());
  return out;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome headline_numeric()
{
  Stopwatch clock;
  Outcome out;
  const auto job = cli::cmd_chern2("paper", 192, workers());
  const double integral = job.payload.at("integral_J1_plus_J2").get<double>();
  const double c2 = job.payload.at("c2").get<double>();
  const double target = -cw::pi * cw::pi;
  const double rel = std::abs(integral - target) / std::abs(target);
  const double change = std::abs(c2 - job.payload.at("coarse_c2").get<double>());
  out.require(rel <= 0.01, "integral within 1% of -pi^2");
  out.require(std::abs(c2 + 1.0) <= 0.02, "c2 within 0.02 of -1");
  out.require(job.ok && change < 1e-3, "grid convergence");
  out.note("integral " + std::to_string(integral) + ", relative error " + sci(rel) + ", c2 " + std::to_string(c2) +
           ", grid change " + sci(change));
  require_runtime(out, clock, 60.0);
  return out;
}

Outcome triviality_controls()
{
  Outcome out;
  const auto constant = cli::cmd_chern2("constant", 64, workers());
  const double c2_constant = constant.payload.at("c2").get<double>();
  out.require(std::abs(c2_constant) <= 1e-6, "constant clutching c2 = 0");

  const cw::ClutchingPair pair = cw::build_clutching_pair(cw::build_example_cocycles());
  cw::QuadratureOptions opts;
  opts.workers = workers();
  const double c2_phi_e = cw::chern2(pair.phi_E, cw::QuadratureGrid(96), opts).c2;
  out.require(std::abs(c2_phi_e) <= 1e-4, "phi_E c2 = 0");

  const double moment = cw::f2_moment(cw::PartitionProfile::smooth_bump());
  out.require(std::abs(moment + 1.0 / 6.0) <= 1e-8, "f2 moment = -1/6");
  out.note("constant c2 " + sci(c2_constant) + ", phi_E c2 " + sci(c2_phi_e) + ", f2 moment error " +
           sci(std::abs(moment + 1.0 / 6.0)));
  return out;
}

Outcome oracle_cross_check()
{
  Outcome out;
  cw::QuadratureOptions opts;
  opts.workers = workers();
  const cw::QuadratureGrid grid(96);
  for (int d = 1; d <= 2; ++d) {
    const cw::ClutchingExample ex = cw::clutching_example("qpow:" + std::to_string(d));
    const double c2 = cw::chern2(ex.phi, grid, opts).c2;
    const double degree = cw::mapping_degree(ex.phi, grid, opts);
    out.require(std::abs(std::abs(c2) - d) <= 0.02 * d, "|c2(qpow:" + std::to_string(d) + ")| = " + std::to_string(d));
    out.require(std::abs(c2 - degree) <= 0.02 * std::abs(degree),
                "c2 matches mapping degree for d = " + std::to_string(d));
    out.note("d = " + std::to_string(d) + ": c2 " + std::to_string(c2) + ", degree " + std::to_string(degree));
  }
  return out;
}

struct Criterion {
  std::string description;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria()
{
  static const std::vector<Criterion> list{
      {"rank two identities exact", rank_two_identities},
      {"rank three identities exact", rank_three_identities},
      {"decomposition sweep certified", decomposition_sweep},
      {"pivot formula", pivot_formula},
      {"symplectic mu-vanishing exhaustive", mu_vanishing},
      {"property suites, 1000 cases each", property_suites},
      {"Newton rewriting of rank three classes", newton_rewriting},
      {"reference clutching function: integral -pi^2, c2 -1", headline_numeric},
      {"triviality controls", triviality_controls},
      {"quaternion power degree oracle", oracle_cross_check},
  };
  return list;
}

bool run(std::size_t index)
{
  const Criterion& c = criteria().at(index - 1);
  Outcome out;
  try {
    out = c.run();
  }
  catch (const std::exception& e) {
    out.pass = false;
    out.details = std::string("exception: ") + e.what();
  }
  std::cout << "criterion " << index << ": " << (out.pass ? "PASS" : "FAIL") << ' ' << c.description << " ("
            << out.details << ")\n";
  for (const std::string& line : out.info) {
    std::cout << "  info: " << line << '\n';
  }
  std::cout.flush();
  return out.pass;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Acceptance criteria"};
  std::size_t only = 0;
  app.add_option("--criterion", only, "Run a single criterion")->check(CLI::Range(std::size_t{1}, criteria().size()));
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (std::size_t i = 1; i <= criteria().size(); ++i) {
    if (only == 0 || only == i) {
      all = run(i) && all;
    }
  }
  return all ? 0 : 1;
}
