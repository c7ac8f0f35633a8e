// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "weakframe/forces.hpp"
#include "weakframe/quadrature.hpp"
#include "weakframe/weak_limits.hpp"
#include "weakframe/witness.hpp"

using namespace weakframe;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

int failures = 0;
std::vector<int> failed_ids;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int id, bool pass, const std::string& detail, double seconds) {
  std::printf("[%s] AC%-2d %s (%.2f s)\n", pass ? "PASS" : "FAIL", id, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) {
    ++failures;
    failed_ids.push_back(id);
  }
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Polygonal3 random_polygonal(std::mt19937_64& rng, bool closed) {
  std::uniform_int_distribution<int> count(4, 14);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vec3> v(static_cast<std::size_t>(count(rng)));
  for (auto& p : v) p = Vec3(g(rng), g(rng), g(rng));
  return sanitize(Polygonal3(v, closed));
}

void ac1() {
  Timer t;
  const ParamCurve c = inflection_curve();
  const RefinementSequence seq = refine(c, 8, 64);
  const WeakIndicatrix tc = compute_weak_tantrix(seq);
  const WeakIndicatrix bc = compute_weak_binormal(seq);
  const IdentityReport ids = verify_reparam_identities(c, seq);
  const double secs = t.seconds();
  const double target = kPi / kSqrt2;
  const Level& last = seq.final_level();
  const double qk = integrate([&](double s) { return c.curvature(s); }, c.a, c.b);
  const double qt = integrate([&](double s) { return std::abs(c.torsion(s)); }, c.a, c.b);
  const double e_tc = std::abs(last.tc - target), e_tat = std::abs(last.tat - target);
  const double e_qk = std::abs(qk - target), e_qt = std::abs(qt - target);
  (void)tc;
  (void)bc;
  (void)ids;
  report(1, e_tc < 1e-2 && e_tat < 1e-2 && e_qk < 1e-8 && e_qt < 1e-8 && secs < 10.0,
         fmt("inflection TC err %.2e, TAT err %.2e (<1e-2); quadrature k err %.2e, |tau| err %.2e (<1e-8)", e_tc, e_tat,
             e_qk, e_qt),
         secs);
}

void ac2() {
  Timer t;
  const RefinementSequence seq = refine(helix(1.0, 2.0 * kPi), 7, 64);
  const double secs = t.seconds();
  const Level& last = seq.final_level();
  const double rel = std::abs(last.tat - kPi * kSqrt2) / (kPi * kSqrt2);
  report(2, last.segments == 4096 && rel < 1e-3 && secs < 10.0,
         fmt("helix TAT at n=%zu: %.10f, rel err %.2e (<1e-3)", last.segments, last.tat, rel), secs);
}

void ac3() {
  Timer t;
  const RefinementSequence seq = refine(inflection_curve(), 8, 64);
  const double target = kPi / kSqrt2 + kPi;
  const double err = std::abs(seq.final_level().ct - target);
  report(3, err < 5e-2, fmt("inflection CT %.6f vs %.6f, err %.2e (<5e-2)", seq.final_level().ct, target, err),
         t.seconds());
}

void ac4() {
  Timer t;
  const ParamCurve c = helix(1.0, 2.0 * kPi);
  const IdentityReport r = verify_reparam_identities(c, refine(c, 8, 64));
  bool pass = r.checks.size() == 3;
  std::string detail;
  for (const auto& ch : r.checks) {
    pass = pass && ch.applicable && ch.max_deviation < 1e-2;
    detail += fmt("%s %.2e ", ch.name.c_str(), ch.max_deviation);
  }
  report(4, pass, "helix identities max proj distance: " + detail + "(<1e-2)", t.seconds());
}

void ac5() {
  Timer t;
  std::mt19937_64 rng(5);
  double worst_len = 0.0, worst_angle = 0.0;
  std::size_t junctions = 0;
  for (int i = 0; i < 1000; ++i) {
    const Polygonal3 p = random_polygonal(rng, i % 4 == 0);
    const DiscreteFrenetData d = discrete_frenet(p);
    const NormalIndicatrix n = normal_indicatrix(p);
    worst_len = std::max(worst_len, std::abs(n.curve.length() - (d.tc + d.tat)));
    for (const auto& j : mixed_junction_angles(n)) {
      worst_angle = std::max(worst_angle, std::abs(j.angle - kPi / 2));
      ++junctions;
    }
  }
  report(5, worst_len <= 1e-9 && worst_angle <= 1e-6,
         fmt("1000 polygonals: max |L(n_P) - TC - TAT| %.2e (<=1e-9); %zu junctions, max |angle - pi/2| %.2e (<=1e-6)",
             worst_len, junctions, worst_angle),
         t.seconds());
}

void ac6() {
  Timer t;
  std::mt19937_64 rng(6);
  int violations = 0;
  double worst = -1e300;
  for (int i = 0; i < 1000; ++i) {
    const Polygonal3 p = random_polygonal(rng, i % 4 == 0);
    double tc_rp2 = 0.0;
    for (double a : projective_turning_angles(polar_curve(p))) tc_rp2 += a;
    const double slack = tc_rp2 - tantrix(p).length();
    worst = std::max(worst, slack);
    if (slack > 1e-9) ++violations;
  }
  report(6, violations == 0, fmt("1000 polygonals: %d violations, max TC_RP2(b_P) - L(t_P) = %.2e", violations, worst),
         t.seconds());
}

void ac7() {
  Timer t;
  bool pass = false;
  std::string detail;
  try {
    const Witness w = nonmonotonicity_witness();
    bool subset = true;
    for (const Vec3& v : w.p_prime.vertices()) {
      bool found = false;
      for (const Vec3& u : w.p.vertices()) found = found || u == v;
      subset = subset && found;
    }
    pass = w.gap() > 1e-3 && w.length_p_prime <= w.length_p && w.tc_p_prime <= w.tc_p && subset;
    detail = fmt("TAT(P') - TAT(P) = %.4f, L %.4f <= %.4f, TC %.4f <= %.4f, %zu evaluations", w.gap(), w.length_p_prime,
                 w.length_p, w.tc_p_prime, w.tc_p, w.evaluations);
  } catch (const GeometryError& e) {
    detail = e.what();
  }
  const double secs = t.seconds();
  report(7, pass && secs < 30.0, detail, secs);
}

void ac8() {
  Timer t;
  const ParamCurve c = inflection_curve();
  const RefinementSequence seq = refine(c, 8, 64);
  const VectorMeasure tf = torsion_force(c, compute_weak_tantrix(seq));
  const VectorMeasure bv = binormal_variation(c, compute_weak_binormal(seq));
  const double k0 = kPi / (2.0 * kSqrt2);
  bool pass = tf.atoms.size() == 1 && bv.atoms.empty();
  std::string detail = fmt("%zu torsion-force atom(s), %zu binormal atom(s)", tf.atoms.size(), bv.atoms.size());
  if (!tf.atoms.empty()) {
    const Atom& a = tf.atoms.front();
    const double dp = std::abs(a.param - k0), dn = std::abs(a.weight.norm() - 2.0);
    pass = pass && dp < 1e-3 && dn < 1e-6;
    detail += fmt("; atom at %.6f (err %.2e <1e-3), norm err %.2e (<1e-6)", a.param, dp, dn);
  }
  report(8, pass, detail, t.seconds());
}

void ac9() {
  Timer t;
  const ParamCurve c = helix(1.0, 2.0 * kPi);
  const WeakIndicatrix tc = compute_weak_tantrix(refine(c, 8, 64));
  const auto samples = darboux_curvatures(tc.curve, 2e-3);
  double eg = 0.0, en = 0.0;
  for (const auto& s : samples) {
    eg = std::max(eg, std::abs(s.geodesic - 1.0));
    en = std::max(en, std::abs(s.normal + 1.0));
  }
  report(9, !samples.empty() && eg < 1e-4 && en < 1e-4,
         fmt("%zu samples: max |K_g - tau/k| %.2e, max |K_n + 1| %.2e (<1e-4)", samples.size(), eg, en), t.seconds());
}

void ac10() {
  Timer t;
  const ParamCurve c = helix(1.0, 2.0 * kPi);
  const WeakIndicatrix tc = compute_weak_tantrix(refine(c, 6, 64));
  const double C = integrate([&](double s) { return c.curvature(s); }, c.a, c.b);
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> start(0, 40);
  std::uniform_int_distribution<int> width(12, 23);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<TestField> fields;
  for (int i = 0; i < 5; ++i) {
    // Supports on a 64-cell grid, so they stay aligned with every refinement of it.
    const int s0 = start(rng), w = width(rng);
    fields.push_back(tangential_bump(c, VariationKind::TantrixLength, C * s0 / 64.0, C * (s0 + w) / 64.0,
                                     Vec3(g(rng), g(rng), g(rng))));
  }
  const std::size_t cells = 256;
  ForceOptions coarse, fine;
  coarse.cells = cells;
  fine.cells = 2 * cells;
  const auto r1 = first_variation_check(c, torsion_force(c, tc, coarse), fields, VariationKind::TantrixLength, cells);
  const auto r2 = first_variation_check(c, torsion_force(c, tc, fine), fields, VariationKind::TantrixLength, 2 * cells);
  double worst_rel = 0.0, worst_ratio = 1e300;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    worst_rel = std::max(worst_rel, r1[i].rel_mismatch);
    worst_ratio = std::min(worst_ratio, r1[i].abs_mismatch / r2[i].abs_mismatch);
  }
  report(10, worst_rel < 1e-3 && worst_ratio >= 4.0,
         fmt("5 bump fields: max rel mismatch %.2e at %zu cells (<1e-3), min shrink factor %.1f on doubling (>=4)",
             worst_rel, cells, worst_ratio),
         t.seconds());
}

void ac11() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (double delta : {1e-2, 1e-3}) {
    const OdeCurve ode = frenet_ode_curve([](double) { return 1.0; }, [](double s) { return 1.0 / (1.0 - s); }, 0.0,
                                          1.0 - delta);
    const RefinementSequence seq = refine(ode.curve, 8, 64);
    const Level& last = seq.final_level();
    const double et = std::abs(last.tat + std::log(delta)) / -std::log(delta);
    const double ek = std::abs(last.tc - (1.0 - delta)) / (1.0 - delta);
    pass = pass && et < 0.05 && ek < 0.05;
    detail += fmt("delta %.0e: TAT %.4f vs %.4f (rel %.2e), TC %.4f (rel %.2e); ", delta, last.tat, -std::log(delta), et,
                  last.tc, ek);
  }
  report(11, pass, detail + "(<5%)", t.seconds());
}

void ac12() {
  Timer t;
  std::mt19937_64 rng(12);
  int literal_checked = 0, literal_bad = 0, short_checked = 0;
  double literal_worst = 0.0, short_worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Polygonal3 p = random_polygonal(rng, i % 2 == 1);
    const double tat = discrete_frenet(p).tat;
    double shortest = p.mesh();
    for (std::size_t k = 0; k < p.segment_count(); ++k) shortest = std::min(shortest, p.segment(k).norm());
    RefineOptions o;
    o.levels = 8;
    o.base_n = 8;
    o.schedule = i % 3 == 0 ? Schedule::RandomNested : Schedule::Uniform;
    o.seed = static_cast<std::uint64_t>(i);
    for (const Level& l : refine_polygonal(p, o).levels) {
      const double d = std::abs(l.tat - tat);
      if (l.modulus < p.mesh() / 2.0) {
        ++literal_checked;
        literal_worst = std::max(literal_worst, d);
        if (d > 1e-12) ++literal_bad;
      }
      if (l.modulus < shortest / 2.0) {
        ++short_checked;
        short_worst = std::max(short_worst, d);
      }
    }
  }
  report(12, literal_checked > 0 && literal_bad == 0,
         fmt("modulus < mesh/2: %d of %d levels off by > 1e-12 (max %.2e); modulus < shortest segment/2: max "
             "deviation %.2e over %d levels",
             literal_bad, literal_checked, literal_worst, short_worst, short_checked),
         t.seconds());
}

}  // namespace

// --allow-fail N keeps criterion N out of the exit status; its line still reads FAIL.
int main(int argc, char** argv) {
  std::vector<int> allowed;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--allow-fail") allowed.push_back(std::atoi(argv[++i]));
  const std::function<void()> criteria[] = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11, ac12};
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i) + 1, false, std::string("threw: ") + e.what(), 0.0);
    }
  }
  std::printf("%d of 12 criteria failed\n", failures);
  int unexpected = 0;
  for (int id : failed_ids)
    if (std::find(allowed.begin(), allowed.end(), id) == allowed.end()) ++unexpected;
  return unexpected;
}
