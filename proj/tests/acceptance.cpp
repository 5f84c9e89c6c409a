// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cherednik/jobs.hpp"

using namespace cherednik;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << n << " (" << name << "): " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ReflectionGroup named(const std::string& n) { return ReflectionGroup::close(builtin_group(n)); }

const std::vector<std::string> families = {"cyclic:2", "cyclic:3", "cyclic:4", "minus-id:2", "s3-reflection"};

ContextPtr random_context(const std::string& family, std::mt19937_64& rng) {
  auto g = named(family);
  Parameter p;
  for (const auto& r : find_reflections(g))
    if (!p.values.count(r.class_id)) p.values[r.class_id] = Cyclo(random_rational(rng, 7));
  return AlgebraContext::make(std::move(g), p);
}

ModulePtr verma(const ContextPtr& ctx, std::size_t t, int T) {
  return build_verma({ctx, linear_characters(ctx->group()).at(t), T});
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void pbw_consistency() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240101);
  std::size_t total = 0, bad = 0;
  for (const auto& f : families) {
    const auto ctx = random_context(f, rng);
    const auto rep = verify_associativity(*ctx, 500, rng());
    total += rep.samples;
    bad += rep.failures;
  }
  const double s = seconds_since(t0);
  report(1, "PBW consistency", bad == 0 && total == 2500 && s < 120,
         std::to_string(total) + " triples, " + std::to_string(bad) + " failures, " + std::to_string(s) + " s");
}

void graded_isomorphism() {
  std::mt19937_64 rng(77);
  std::size_t checked = 0, bad = 0;
  for (const auto& f : families) {
    const auto ctx = random_context(f, rng);
    for (auto kind : {FiltrationKind::bernstein, FiltrationKind::geometric}) {
      const auto rep = verify_symbol_multiplicativity(*ctx, 200, rng(), kind);
      checked += rep.checked;
      bad += rep.failures;
    }
  }
  std::size_t weyl_bad = 0;
  for (const auto& f : families) {
    const auto ctx = AlgebraContext::make(named(f), Cyclo(0));
    const auto r = static_cast<std::size_t>(ctx->rank());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (commutator(*ctx, y_generator(*ctx, i), x_generator(*ctx, j)) != scalar_element(*ctx, Cyclo(i == j ? 1 : 0)))
          ++weyl_bad;
  }
  report(2, "graded isomorphism", bad == 0 && weyl_bad == 0 && checked > 0,
         std::to_string(checked) + " symbol products checked, " + std::to_string(bad) + " failures; c = 0 commutators: " +
             std::to_string(weyl_bad) + " failures");
}

void gk_table() {
  const auto t0 = std::chrono::steady_clock::now();
  const int J = 24;
  auto gk = [&](const ModulePtr& M) { return gk_dimension(bernstein_filtration_dims(*M, M->default_generators(), J)).gk_dim; };
  const auto c13 = AlgebraContext::make(named("cyclic:2"), Cyclo(Rational(1, 3)));
  const auto c12 = AlgebraContext::make(named("cyclic:2"), Cyclo(Rational(1, 2)));
  const int gk_verma = gk(verma(c13, 0, 40));
  const int gk_regular = gk(build_regular(c13, 40));
  const auto V = verma(c12, 0, 40);
  std::vector<SparseVector> sing;
  for (const auto& s : find_singular_vectors(V, 10)) sing.push_back(s.vector);
  const auto L = build_verma_quotient(V, sing);
  const int gk_finite = gk(L);
  const auto weyl = AlgebraContext::make(named("trivial:1"), Parameter{});
  const auto example = direct_sum(external_tensor(verma(c12, 1, 40), verma(weyl, 0, 40)),
                                  external_tensor(L, build_regular(weyl, 40)));
  const auto hol = holonomicity(*example, example->default_generators(), J, establish_regularity(example->context()).regular());
  const double s = seconds_since(t0);
  const bool ok = gk_verma == 1 && gk_regular == 2 && gk_finite == 0 && hol.gk_dim == 2 &&
                  hol.verdict == Holonomicity::not_holonomic && s < 60;
  std::ostringstream d;
  d << "Verma " << gk_verma << ", regular " << gk_regular << ", finite-dimensional " << gk_finite << ", example GK "
    << hol.gk_dim << (hol.verdict == Holonomicity::not_holonomic ? " not holonomic" : " holonomic?") << ", " << s << " s";
  report(3, "GK table", ok, d.str());
}

void regularity_agreement() {
  int agree = 0, total = 0, expected = 0;
  for (int k = -9; k <= 9; ++k) {
    const Rational c(k, 2);
    const bool byd = is_regular_by_degrees({2}, c).regular();
    const bool probe = regularity_probe_rank1(CyclicDatum::constant(2, Cyclo(c)), 20).regular();
    ++total;
    if (byd == probe) ++agree;
    if (byd == (k % 2 == 0) && probe == (k % 2 == 0)) ++expected;
  }
  report(4, "regularity agreement", agree == total && expected == total,
         std::to_string(agree) + "/" + std::to_string(total) + " agree, " + std::to_string(expected) +
             " match 'not regular iff k odd'");
}

void reducibility_grid() {
  std::size_t points = 0;
  std::vector<std::string> discrepancies;
  for (int m : {2, 3}) {
    const auto datum = m == 2 ? CyclicDatum::constant(2, Cyclo(Rational(1, 7)))
                              : CyclicDatum::make(3, {Cyclo(Rational(1, 7)), Cyclo(Rational(1, 11))});
    std::vector<std::string> xps;
    for (int a = 0; a <= 2 * m; ++a)
      for (int b : {0, 1}) xps.push_back(std::to_string(a) + " + " + std::to_string(b) + "*x^" + std::to_string(m));
    for (int a = 1; a <= 3; ++a) xps.push_back(std::to_string(a) + "*x^-" + std::to_string(m));
    for (const auto& xp : xps) {
      const auto p = times_x(syntax::parse_laurent(xp, m), -1);
      const bool red = is_reducible(datum, p).reducible;
      const bool lad = !find_stable_ladders(make_laurent_module(datum, p)).ladders.empty();
      ++points;
      if (red != lad) discrepancies.push_back("m=" + std::to_string(m) + " xp=" + xp);
    }
  }
  std::string d = std::to_string(points) + " points, discrepancies: [";
  for (std::size_t i = 0; i < discrepancies.size(); ++i) d += (i ? ", " : "") + discrepancies[i];
  report(5, "rank-1 reducibility", discrepancies.empty() && points == 30, d + "]");
}

struct Sample {
  int m;
  std::vector<Rational> c;
  std::string p;
};

CyclicDatum datum_of(const Sample& s) {
  std::vector<Cyclo> c;
  for (const auto& v : s.c) c.emplace_back(v);
  if (c.size() == 1) return CyclicDatum::constant(s.m, c[0]);
  return CyclicDatum::make(s.m, c);
}

void singular_cycles() {
  const std::vector<Sample> samples = {
      {2, {Rational(1, 3)}, "0"},
      {2, {Rational(1, 3)}, "x^-1"},
      {2, {Rational(1, 3)}, "x + x^-1"},
      {2, {Rational(1, 2)}, "2*x^-1"},
      {2, {Rational(-2, 5)}, "x^3 - 1/2*x^-1"},
      {3, {Rational(1, 7), Rational(1, 11)}, "0"},
      {3, {Rational(1, 7), Rational(1, 11)}, "x^-1"},
      {3, {Rational(1, 7), Rational(1, 11)}, "x^2 + 3*x^-1"},
      {3, {Rational(1, 4)}, "-6*x^-1"},
      {4, {Rational(1, 5)}, "0"},
      {4, {Rational(1, 5)}, "x^3 + x^-1"},
      {4, {Rational(1, 3), Rational(-1, 2), Rational(2, 7)}, "5/3*x^-1"},
  };
  int ok = 0;
  std::string bad;
  for (const auto& s : samples) {
    const auto datum = datum_of(s);
    const auto sc = singular_cycle(make_laurent_module(datum, syntax::parse_laurent(s.p, s.m)));
    const bool good = sc.components.size() == 2 && sc.components.count("zero_section") &&
                      sc.components.at("zero_section") == 1 && sc.components.count("zero_fiber") &&
                      sc.components.at("zero_fiber") == 1;
    if (good) ++ok;
    else bad += " m=" + std::to_string(s.m) + " p=" + s.p;
  }
  report(6, "singular cycle", ok == static_cast<int>(samples.size()),
         std::to_string(ok) + "/" + std::to_string(samples.size()) + " equal {zero_section: 1, zero_fiber: 1}" + bad);
}

void pushforward() {
  const std::vector<std::pair<int, std::string>> twists = {
      {2, "0"}, {2, "x^-1"}, {2, "x^-3"}, {2, "x + x^-1"}, {2, "-2*x^-1 + x^-3"},
      {3, "0"}, {3, "x^-1"}, {3, "x^2"}, {3, "x^-4"}, {3, "1/2*x^-1 + x^2"}};
  int cases = 0, gk1 = 0, alarms = 0;
  for (const Rational c : {Rational(1, 3), Rational(1, 5)}) {
    for (const auto& [m, p] : twists) {
      const auto datum = CyclicDatum::constant(m, Cyclo(c));
      const auto rep = check_pushforward_holonomic(datum, syntax::parse_laurent(p, m));
      ++cases;
      if (rep.gk.gk_dim == 1) ++gk1;
      if (rep.falsification) {
        ++alarms;
        std::cerr << "FALSIFICATION alarm: m=" << m << " c=" << c.get_str() << " p=" << p << "\n";
      }
    }
  }
  report(7, "pushforward holonomic", cases == 20 && gk1 == cases && alarms == 0,
         std::to_string(gk1) + "/" + std::to_string(cases) + " have GK 1, alarm count " + std::to_string(alarms));
}

void module_axioms() {
  const std::vector<std::pair<std::string, std::vector<Rational>>> contexts = {
      {"cyclic:2", {Rational(1, 3)}},
      {"cyclic:3", {Rational(2, 7), Rational(-1, 5)}},
      {"cyclic:4", {Rational(1, 2), Rational(3, 4), Rational(-2, 3)}},
      {"minus-id:2", {Rational(5, 6)}},
      {"s3-reflection", {Rational(-3, 7)}},
  };
  std::size_t checks = 0, bad = 0;
  for (const auto& [f, cs] : contexts) {
    auto g = named(f);
    Parameter p;
    std::size_t i = 0;
    for (const auto& r : find_reflections(g))
      if (!p.values.count(r.class_id)) p.values[r.class_id] = Cyclo(cs.at(i++ % cs.size()));
    const auto ctx = AlgebraContext::make(std::move(g), p);
    const auto chars = linear_characters(ctx->group());
    for (std::size_t t : {std::size_t{0}, chars.size() - 1}) {
      const auto rep = check_module_relations(*verma(ctx, t, 17), 15);
      checks += rep.checks;
      bad += rep.failures;
    }
  }
  report(8, "module axioms", bad == 0 && checks > 0,
         std::to_string(checks) + " relation checks up to degree 15, " + std::to_string(bad) + " failures");
}

void structure_maps() {
  std::mt19937_64 rng(99);
  std::size_t checked = 0, bad = 0;
  for (const auto& f : families) {
    const auto ctx = random_context(f, rng);
    const auto rep = verify_structure_maps(*ctx, 200, rng());
    checked += rep.checked;
    bad += rep.failures;
  }
  auto g = named("cyclic:3");
  const auto refl = find_reflections(g);
  Parameter p;
  p.values[refl[0].class_id] = Cyclo(Rational(1, 3));
  p.values[refl[1].class_id] = Cyclo(Rational(-2, 5));
  const auto ctx = AlgebraContext::make(g, p);
  const auto bar = ctx->opposite_parameter();
  bool transposed = true;
  for (const auto& r : refl) {
    const auto inv = g.inverse(r.element);
    for (const auto& s : refl)
      if (s.element == inv && bar.values.at(r.class_id) != p.values.at(s.class_id)) transposed = false;
  }
  transposed = transposed && bar.values.at(refl[0].class_id) == Cyclo(Rational(-2, 5));
  report(9, "structure maps", bad == 0 && checked > 0 && transposed,
         std::to_string(checked) + " checks, " + std::to_string(bad) + " failures; c-bar on Z/3 " +
             (transposed ? "transposed" : "wrong"));
}

void determinism() {
  const fs::path dir = CHER_GOLDEN_DIR;
  std::vector<fs::path> jobs;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().string().size() > 9 && e.path().string().substr(e.path().string().size() - 9) == ".job.json")
      jobs.push_back(e.path());
  std::sort(jobs.begin(), jobs.end());
  int ok = 0;
  std::string bad;
  for (const auto& j : jobs) {
    std::string stem = j.string();
    stem.resize(stem.size() - 9);
    const auto job = Json::parse(slurp(j));
    const auto first = run_job_checked(job).report.dump(2) + "\n";
    const auto second = run_job_checked(job).report.dump(2) + "\n";
    const auto golden = slurp(stem + ".report.json");
    if (first == second && first == golden) ++ok;
    else bad += " " + j.filename().string();
  }
  report(10, "determinism", !jobs.empty() && ok == static_cast<int>(jobs.size()),
         std::to_string(ok) + "/" + std::to_string(jobs.size()) + " golden reports reproduced byte-identically" + bad);
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria = {pbw_consistency,  graded_isomorphism, gk_table,
                                             regularity_agreement, reducibility_grid, singular_cycles,
                                             pushforward,      module_axioms,      structure_maps,
                                             determinism};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "exception", false, e.what());
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
