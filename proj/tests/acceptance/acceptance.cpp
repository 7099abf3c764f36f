// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
//   acceptance [--seed N] [--only K]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "../support.hpp"
#include "hyperdyn/horseshoe.hpp"
#include "hyperdyn/manifolds.hpp"
#include "hyperdyn/symbolic.hpp"
#include "hyperdyn/toral.hpp"
#include "hyperdyn/tools/pgm.hpp"
#include "hyperdyn/ultralimit.hpp"

namespace hyperdyn::acceptance {

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Records the first failure only; later checks still run.
class Checker {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && out_.passed) {
      out_.passed = false;
      out_.detail = what;
    }
  }
  bool ok() const { return out_.passed; }
  Outcome done(std::string summary) {
    if (out_.passed) out_.detail = std::move(summary);
    return out_;
  }

 private:
  Outcome out_;
};

std::vector<BigInt> fib_list(std::size_t count) {
  std::vector<BigInt> f{0, 1};
  while (f.size() < count) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
  return f;
}

TorusPoint rpt(long long a, long long b, long long q) {
  return {QuadNum(Rational(BigInt(a), BigInt(q))), QuadNum(Rational(BigInt(b), BigInt(q)))};
}

std::vector<Word> all_words(std::size_t len, int alphabet) {
  std::vector<Word> out;
  Word w(len, 0);
  while (true) {
    out.push_back(w);
    std::size_t k = 0;
    while (k < len && ++w[k] == alphabet) w[k++] = 0;
    if (k == len) return out;
  }
}

// 1. A^n and A^-n against the displayed Fibonacci matrices.
Outcome fibonacci_closed_form() {
  Checker c;
  const auto f = fib_list(125);
  const IntMat2 a = cat_matrix();
  c.require(mat_pow(a, 2) == IntMat2{5, 3, 3, 2}, "A^2 != [[5,3],[3,2]]");
  c.require(mat_pow(a, 3) == IntMat2{13, 8, 8, 5}, "A^3 != [[13,8],[8,5]]");
  for (int n = 1; n <= 60; ++n) {
    const auto k = static_cast<std::size_t>(2 * n);
    const IntMat2 fwd{f[k + 1], f[k], f[k], f[k - 1]};
    c.require(mat_pow(a, n) == fwd, "A^" + std::to_string(n) + " != " + fwd.to_string());
  }
  const IntMat2 shown_inv2{5, -3, -3, 2};
  c.require(mat_pow(a, -2) == shown_inv2,
            "A^-2 = " + mat_pow(a, -2).to_string() + ", displayed " + shown_inv2.to_string() +
                " (displayed matrix times A^2 = " + (shown_inv2 * mat_pow(a, 2)).to_string() + ")");
  for (int n = 1; n <= 60; ++n) {
    const auto k = static_cast<std::size_t>(2 * n);
    const IntMat2 shown{f[k + 1], -f[k], -f[k], f[k - 1]};
    c.require(mat_pow(a, -n) == shown, "A^-" + std::to_string(n) + " = " +
                                           mat_pow(a, -n).to_string() + ", displayed " +
                                           shown.to_string());
  }
  return c.done("A^n and A^-n match for 1 <= n <= 60");
}

// 2. Periods and fixed-point counts against lattice enumeration.
Outcome periodic_structure() {
  Checker c;
  c.require(period(rpt(1, 1, 2)) == 3, "period((1/2,1/2)) != 3");
  c.require(oracle::lattice_period({1, 1}, 2) == 3, "oracle period((1/2,1/2)) != 3");
  c.require(period(rpt(1, 2, 5)) == 2, "period((1/5,2/5)) != 2");
  c.require(oracle::lattice_period({1, 2}, 5) == 2, "oracle period((1/5,2/5)) != 2");
  const long long expected[] = {1, 5, 16, 45, 121, 320};
  for (int n = 1; n <= 6; ++n) {
    const long long brute = oracle::brute_fixed_points(n);
    c.require(brute == expected[n - 1], "oracle fixed count n=" + std::to_string(n));
    c.require(fixed_point_count(static_cast<unsigned>(n)) == brute,
              "fixed_point_count(" + std::to_string(n) + ") != " + std::to_string(brute));
  }
  return c.done("periods 3, 2; fixed counts 1 5 16 45 121 320");
}

// 3. Stable-leaf pairs contract at rate lambda'; distinct rational pairs never do.
Outcome proximality_vs_dynamics() {
  Checker c;
  const QuadNum g = leaf_ratio(LeafDirection::stable);
  const IntMat2 a25 = mat_pow(cat_matrix(), 25);
  const IntMat2 a24 = mat_pow(cat_matrix(), 24);
  double worst_d25 = 0.0, lo_ratio = 1.0, hi_ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    const TorusPoint x = testing::random_rational_point(40);
    Rational r;
    while (r.is_zero()) r = testing::random_rational(10, 97) / Rational(10);
    const TorusPoint y = x + TorusPoint(g * QuadNum(r), QuadNum(r));
    c.require(proximal(x, y).kind == ProximalityKind::proximal_stable,
              "constructed pair not ProximalStable: " + x.to_string() + " " + y.to_string());
    const QuadNum d25 = torus_distance(cat_apply(a25, x), cat_apply(a25, y));
    const QuadNum d24 = torus_distance(cat_apply(a24, x), cat_apply(a24, y));
    const double dist = quad_to_float(d25).value;
    const double ratio = quad_to_float(d25 / d24).value;
    worst_d25 = std::max(worst_d25, dist);
    lo_ratio = std::min(lo_ratio, ratio);
    hi_ratio = std::max(hi_ratio, ratio);
    c.require(dist < 1e-4, "distance at n=25 is " + std::to_string(dist));
    c.require(0.3 <= ratio && ratio <= 0.5, "ratio " + std::to_string(ratio));
  }
  int pairs = 0;
  while (pairs < 100) {
    const TorusPoint x = testing::random_rational_point(30);
    const TorusPoint y = testing::random_rational_point(30);
    if (x == y) continue;
    ++pairs;
    c.require(proximal(x, y).kind == ProximalityKind::not_proximal,
              "rational pair not NotProximal: " + x.to_string() + " " + y.to_string());
    const auto px = static_cast<long long>(period(x));
    const auto py = static_cast<long long>(period(y));
    const long long full = std::lcm(px, py);
    TorusPoint fx = x, fy = y;
    QuadNum min_d = torus_distance(fx, fy);
    for (long long n = 1; n < full; ++n) {
      fx = cat_apply(cat_matrix(), fx);
      fy = cat_apply(cat_matrix(), fy);
      const QuadNum d = torus_distance(fx, fy);
      if (d < min_d) min_d = d;
    }
    c.require(quad_sign(min_d) > 0, "orbits of a rational pair meet");
  }
  std::ostringstream s;
  s << "max d(25) " << worst_d25 << ", ratios in [" << lo_ratio << ", " << hi_ratio
    << "], 100 rational pairs separated";
  return c.done(s.str());
}

// 4. Continued-fraction bound, decided exactly.
Outcome slope_limits() {
  Checker c;
  const auto f = fib_list(90);
  const QuadNum target = QuadNum::golden() - QuadNum(1);
  const auto rows = slope_limit_table(40);
  c.require(rows.size() == 40, "table size");
  for (const auto& row : rows) {
    const auto k = static_cast<std::size_t>(2 * row.n);
    c.require(row.ratio == Rational(f[k], f[k + 1]), "ratio at n=" + std::to_string(row.n));
    const Rational q2 = Rational(f[k + 1] * f[k + 1]);
    const QuadNum scaled = quad_abs(QuadNum(Rational(f[k], f[k + 1])) - target) * QuadNum(q2);
    c.require(quad_sign(scaled - QuadNum(1)) < 0, "bound fails at n=" + std::to_string(row.n));
    c.require(row.bound_holds, "table reports bound failure at n=" + std::to_string(row.n));
  }
  return c.done("|F2n/F2n+1 - (gamma-1)| F2n+1^2 < 1 for n <= 40");
}

// 5. Adler-Weiss matrix, primitivity, mixing-gap bound.
Outcome adler_weiss() {
  Checker c;
  const SFT aw = adler_weiss_matrix();
  const std::vector<std::vector<std::uint8_t>> shown = {
      {1, 0, 1, 1, 0}, {1, 0, 1, 1, 0}, {1, 0, 1, 1, 0}, {0, 1, 0, 0, 1}, {0, 1, 0, 0, 1}};
  c.require(aw.adjacency() == shown, "matrix differs");
  const auto k = sft_primitivity(aw, 10);
  c.require(k == 2, "primitivity index is not 2");
  long long pairs = 0;
  std::vector<Word> admissible;
  for (std::size_t len = 1; len <= 3; ++len) {
    for (const Word& w : all_words(len, 5)) {
      if (word_admissible(w, aw)) admissible.push_back(w);
    }
  }
  for (const Word& u : admissible) {
    for (const Word& v : admissible) {
      const auto gap = mixing_gap(aw, Cylinder{u, 0}, Cylinder{v, 0}, 12);
      ++pairs;
      c.require(gap.n_star.has_value() && *gap.n_star <= static_cast<long long>(u.size()) + 2,
                "gap bound fails for " + word_to_string(u) + ", " + word_to_string(v));
    }
  }
  return c.done("k = 2; N <= |u| + 2 on " + std::to_string(pairs) + " cylinder pairs");
}

// 6. Full-shift counts and mixing gaps.
Outcome shift_counts() {
  Checker c;
  const SFT full = SFT::full_shift(2);
  for (unsigned n = 1; n <= 12; ++n) {
    const long long brute = oracle::brute_periodic_count(full, n);
    c.require(brute == (1LL << n), "brute count n=" + std::to_string(n));
    c.require(sft_periodic_count(full, n) == brute, "count n=" + std::to_string(n));
  }
  long long pairs = 0;
  for (std::size_t lu = 1; lu <= 4; ++lu) {
    for (std::size_t lv = 1; lv <= 4; ++lv) {
      for (const Word& u : all_words(lu, 2)) {
        for (const Word& v : all_words(lv, 2)) {
          const auto gap = mixing_gap(full, Cylinder{u, 0}, Cylinder{v, 0}, 10);
          ++pairs;
          c.require(gap.n_star.has_value() &&
                        *gap.n_star <= static_cast<long long>(std::max(lu, lv)),
                    "gap bound fails for " + word_to_string(u) + ", " + word_to_string(v));
        }
      }
    }
  }
  return c.done("2^n for n <= 12; N <= max(|u|,|v|) on " + std::to_string(pairs) + " pairs");
}

// 7. Horseshoe conjugacy and cell diameters.
Outcome horseshoe_conjugacy() {
  Checker c;
  const HorseshoeParams prm = HorseshoeParams::defaults();
  int periodic = 0;
  for (std::size_t len = 1; len <= 6; ++len) {
    for (const Word& w : all_words(len, 2)) {
      const SquarePoint p = periodic_point(prm, w);
      c.require(conjugacy_check(prm, p, 10), "periodic code " + word_to_string(w));
      c.require(encode(prm, p, 10) == code_window(BiSeq::periodic(w), 10),
                "code of periodic point " + word_to_string(w));
      ++periodic;
    }
  }
  for (int i = 0; i < 50; ++i) {
    const SymbolWindow w{testing::random_word(11, 11), testing::random_word(12, 12)};
    const SquarePoint p = decode(prm, w).center();
    c.require(conjugacy_check(prm, p, 10), "random point " + w.to_string());
  }
  auto diameter_ok = [&](const SymbolWindow& w, int k) {
    const Rect r = decode(prm, w);
    Rational bound2{2};
    for (int i = 0; i < 2 * k; ++i) bound2 = bound2 / Rational(3);
    const Rational dx = r.x.length(), dy = r.y.length();
    return dx * dx + dy * dy <= bound2;
  };
  for (int k = 1; k <= 10; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (k <= 5) {
      for (const Word& past : all_words(ku, 2)) {
        for (const Word& future : all_words(ku + 1, 2)) {
          c.require(diameter_ok({past, future}, k), "diameter at depth " + std::to_string(k));
        }
      }
    } else {
      for (int i = 0; i < 200; ++i) {
        const SymbolWindow w{testing::random_word(ku, ku), testing::random_word(ku + 1, ku + 1)};
        c.require(diameter_ok(w, k), "diameter of " + w.to_string());
      }
    }
  }
  return c.done(std::to_string(periodic) + " periodic codes, 50 random points, diameters k <= 10");
}

// 8. Decidable proximality against the horizon search.
Outcome symbolic_proximality() {
  Checker c;
  int proximal_count = 0;
  for (int i = 0; i < 200; ++i) {
    const BiSeq x = testing::random_biseq(6, 6);
    const BiSeq y = i % 2 ? testing::random_biseq(6, 6)
                          : BiSeq(testing::random_word(1, 6), testing::random_word(0, 6),
                                  x.right_period(), x.right_tail_start());
    const bool v = seq_proximal(x, y).proximal;
    proximal_count += v;
    c.require(v == oracle::horizon_proximal(x, y, 64, 3 * 64),
              "disagreement on " + x.to_string() + " / " + y.to_string());
  }
  return c.done("200 pairs agree (" + std::to_string(proximal_count) + " proximal)");
}

// 9. Idempotent signature on every rational point with denominator <= 12.
Outcome idempotent_signature() {
  Checker c;
  long long points = 0;
  for (long long q = 1; q <= 12; ++q) {
    for (long long a = 0; a < q; ++a) {
      for (long long b = 0; b < q; ++b) {
        ++points;
        c.require(idempotent_stage_check(rpt(a, b, q), 5),
                  "fails at " + rpt(a, b, q).to_string());
      }
    }
  }
  return c.done(std::to_string(points) + " points, stages 5");
}

// 10. Pixel recurrence at s = 101.
Outcome image_recurrence() {
  Checker c;
  const int s = 101;
  // order of A mod 101 by direct iteration with machine integers
  long long m[4] = {2, 1, 1, 1};
  long long order = 1;
  while (!(m[0] == 1 && m[1] == 0 && m[2] == 0 && m[3] == 1)) {
    const long long n0 = (2 * m[0] + m[2]) % s, n1 = (2 * m[1] + m[3]) % s;
    const long long n2 = (m[0] + m[2]) % s, n3 = (m[1] + m[3]) % s;
    m[0] = n0, m[1] = n1, m[2] = n2, m[3] = n3;
    ++order;
  }
  c.require(static_cast<long long>(matrix_order_mod(cat_matrix(), BigInt(s))) == order,
            "matrix_order_mod disagrees with iteration");
  const tools::GrayImage original = tools::index_image(s);
  tools::GrayImage cur = original;
  long long first_return = 0;
  for (long long n = 1; n <= order; ++n) {
    cur = tools::cat_image(cur, 1);
    if (cur == original) {
      first_return = n;
      break;
    }
  }
  c.require(first_return == order, "image returns at n = " + std::to_string(first_return) +
                                       ", order is " + std::to_string(order));
  c.require(tools::cat_image(original, order) == original, "direct power does not restore");
  return c.done("returns first at n = " + std::to_string(order));
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int run(int only) {
  const std::vector<Criterion> criteria = {
      {1, "Fibonacci closed form", 1.0, fibonacci_closed_form},
      {2, "periodic structure", 10.0, periodic_structure},
      {3, "proximality vs dynamics", 30.0, proximality_vs_dynamics},
      {4, "slope limits", 1.0, slope_limits},
      {5, "Adler-Weiss matrix and mixing", 5.0, adler_weiss},
      {6, "shift counts", 20.0, shift_counts},
      {7, "horseshoe conjugacy", 10.0, horseshoe_conjugacy},
      {8, "symbolic proximality decidability", 30.0, symbolic_proximality},
      {9, "idempotent finite-stage signature", 60.0, idempotent_signature},
      {10, "image recurrence", 30.0, image_recurrence},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    if (only != 0 && cr.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = cr.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.limit_seconds) {
      o.passed = false;
      o.detail = "too slow (limit " + std::to_string(cr.limit_seconds) + " s); " + o.detail;
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << cr.id << "  "
              << cr.name << "  [" << std::fixed << std::setprecision(3) << secs << " s]  "
              << std::defaultfloat << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
            << " (seed " << testing::test_seed() << ")" << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace hyperdyn::acceptance

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      setenv("HYPERDYN_SEED", argv[++i], 1);
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--seed N] [--only K]\n";
      return 2;
    }
  }
  return hyperdyn::acceptance::run(only);
}
