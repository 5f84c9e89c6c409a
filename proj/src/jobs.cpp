#include "cherednik/jobs.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace cherednik {

namespace {

const std::vector<std::string> commands = {"group", "algebra", "module", "rank1", "params"};

const std::map<std::string, std::string> default_ops = {
    {"group", "info"}, {"algebra", "normal-form"}, {"module", "gk"}, {"rank1", "reducible"}, {"params", "regular"}};

const std::map<std::string, std::vector<std::string>> known_ops = {
    {"group", {"info"}},
    {"algebra",
     {"normal-form", "multiply", "commutator", "symbol", "fourier", "opposite", "associativity", "symbols",
      "structure-maps"}},
    {"module", {"hilbert", "gk", "holonomic", "singular-vectors", "relations"}},
    {"rank1", {"reducible", "reduce", "ladders", "cycle", "pushforward", "act", "localize", "grid"}},
    {"params", {"regular", "grid"}},
};

std::string scalar_text(const Cyclo& a) { return a.to_string(); }

Cyclo scalar_from_json(const Json& j, int order) {
  if (j.is_number_integer()) return Cyclo(j.get<long>());
  if (j.is_string()) return syntax::parse_scalar(j.get<std::string>(), order);
  throw InvalidInput("expected a scalar string, got " + j.dump());
}

int positive(const Json& job, const char* key) {
  const auto& v = job.at(key);
  if (!v.is_number_integer() || v.get<long>() < 1 || v.get<long>() > 1000000)
    throw InvalidInput(std::string("'") + key + "' must be a positive integer");
  return v.get<int>();
}

const Json& require(const Json& job, const char* key) {
  if (!job.contains(key)) throw InvalidInput(std::string("job is missing '") + key + "'");
  return job.at(key);
}

std::string require_string(const Json& job, const char* key) {
  const auto& v = require(job, key);
  if (!v.is_string()) throw InvalidInput(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

Json laurent_json(const LaurentPoly& p) { return syntax::laurent_to_string(p); }

Json regularity_json(Regularity r) {
  switch (r) {
    case Regularity::regular: return true;
    case Regularity::not_regular: return false;
    case Regularity::regular_up_to_bound: return "regular-up-to-bound";
    case Regularity::unknown: return nullptr;
  }
  return nullptr;
}

Json verdict_json(const RegularityVerdict& v) {
  Json out;
  out["regular"] = regularity_json(v.status);
  out["status"] = to_string(v.status);
  out["method"] = v.method;
  if (v.bound > 0) out["bound"] = v.bound;
  if (v.degree_witness) out["witness"] = {{"m", v.degree_witness->first.get_str()}, {"d", v.degree_witness->second}};
  if (v.singular_witness) {
    const auto& s = *v.singular_witness;
    out["witness"] = {{"degree", s.degree},
                      {"character", v.witness_character ? Json(*v.witness_character) : Json(nullptr)},
                      {"vector", vector_to_string(*s.module, s.vector)}};
  }
  return out;
}

Json gk_json(const GKReport& gk) {
  Json out;
  out["gk"] = gk.gk_dim;
  out["leading_coefficient"] = to_string(gk.leading_coefficient);
  out["polynomial"] = Json::array();
  for (const auto& q : gk.polynomial) out["polynomial"].push_back(to_string(q));
  out["polynomiality_verified"] = gk.polynomiality_verified;
  out["window"] = {gk.window_begin, gk.window_end};
  return out;
}

Json dims_json(const HilbertData& h) {
  Json out;
  out["filtration"] = to_string(h.kind);
  out["generators"] = h.generators;
  out["dims"] = h.dims;
  return out;
}

// Runs fn(i) for i in [0, n) on `workers` threads; results are stored by index.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

// ---------------------------------------------------------------------------

Json scalar_to_json(const Cyclo& a) { return scalar_text(a); }

Json element_to_json(const PBWElement& e) {
  Json out = Json::array();
  for (const auto& [w, c] : e.terms()) out.push_back({{"g", w.g}, {"m", w.m}, {"n", w.n}, {"coeff", scalar_text(c)}});
  return out;
}

PBWElement element_from_json(const AlgebraContext& ctx, const Json& records) {
  if (!records.is_array()) throw InvalidInput("element must be a list of {g, m, n, coeff} records");
  PBWElement e;
  const std::size_t r = ctx.rank();
  for (const auto& rec : records) {
    Word w;
    w.g = rec.at("g").get<std::size_t>();
    w.m = rec.at("m").get<Monomial>();
    w.n = rec.at("n").get<Monomial>();
    if (w.g >= ctx.group().order()) throw InvalidInput("group element index out of range");
    if (w.m.size() != r || w.n.size() != r) throw InvalidInput("exponent vector has the wrong length");
    for (int v : w.m)
      if (v < 0) throw InvalidInput("negative exponent");
    for (int v : w.n)
      if (v < 0) throw InvalidInput("negative exponent");
    e.add_term(w, scalar_from_json(rec.at("coeff"), ctx.field_order()));
  }
  return e;
}

ReflectionGroup group_from_json(const Json& spec) {
  if (spec.is_string()) return ReflectionGroup::close(builtin_group(spec.get<std::string>()));
  if (!spec.is_object()) throw InvalidInput("group must be a family name or a specification object");
  GroupSpec g;
  g.name = spec.value("name", std::string("custom"));
  g.cyclotomic_order = spec.value("cyclotomic_order", 1);
  g.rank = spec.value("rank", 1);
  if (g.cyclotomic_order < 1 || g.rank < 1) throw InvalidInput("cyclotomic_order and rank must be positive");
  const std::size_t r = g.rank;
  for (const auto& gen : require(spec, "generators")) {
    std::vector<std::string> flat;
    for (const auto& entry : gen) {
      if (entry.is_array()) {
        for (const auto& x : entry) flat.push_back(x.get<std::string>());
      } else {
        flat.push_back(entry.is_string() ? entry.get<std::string>() : entry.dump());
      }
    }
    if (flat.size() != r * r) throw InvalidInput("generator must have rank^2 entries");
    Matrix m(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        Cyclo v = syntax::parse_scalar(flat[i * r + j], g.cyclotomic_order);
        m(i, j) = v.order() == g.cyclotomic_order ? v : v.embed(g.cyclotomic_order);
      }
    g.generators.push_back(std::move(m));
  }
  if (spec.contains("degrees")) g.degrees = spec.at("degrees").get<std::vector<int>>();
  return ReflectionGroup::close(g, spec.value("cap", ReflectionGroup::default_cap));
}

Parameter parameter_from_json(const ReflectionGroup& group, const Json& c) {
  const auto refl = find_reflections(group);
  const int order = group.cyclotomic_order();
  std::set<int> classes;
  for (const auto& r : refl) classes.insert(r.class_id);
  Parameter p;
  if (c.is_null()) return Parameter::constant(refl, Cyclo(0));
  if (c.is_string() || c.is_number_integer()) return Parameter::constant(refl, scalar_from_json(c, order));
  if (c.is_array()) {
    if (c.size() != classes.size())
      throw InvalidInput("parameter list needs one value per reflection class (" + std::to_string(classes.size()) + ")");
    std::size_t i = 0;
    for (int k : classes) p.values[k] = scalar_from_json(c.at(i++), order);
    return p;
  }
  if (c.is_object()) {
    for (const auto& [k, v] : c.items()) p.values[std::stoi(k)] = scalar_from_json(v, order);
    for (int k : classes)
      if (!p.values.count(k)) throw InvalidInput("parameter misses reflection class " + std::to_string(k));
    return p;
  }
  throw InvalidInput("unrecognized parameter " + c.dump());
}

ContextPtr context_from_json(const Json& context) {
  auto group = group_from_json(require(context, "group"));
  auto param = parameter_from_json(group, context.contains("c") ? context.at("c") : Json(nullptr));
  return AlgebraContext::make(std::move(group), std::move(param));
}

ModulePtr module_from_json(const ContextPtr& ctx, const Json& spec, int truncation) {
  const std::string kind = require_string(spec, "kind");
  if (kind == "verma") {
    const auto chars = linear_characters(ctx->group());
    const std::size_t t = spec.value("character", std::size_t{0});
    if (t >= chars.size()) throw InvalidInput("character index out of range");
    return build_verma({ctx, chars[t], truncation});
  }
  if (kind == "regular") return build_regular(ctx, truncation);
  if (kind == "quotient") {
    const auto verma = module_from_json(ctx, require(spec, "of"), truncation);
    const int bound = spec.value("bound", 10);
    std::vector<SparseVector> sing;
    for (const auto& s : find_singular_vectors(verma, bound)) sing.push_back(s.vector);
    return build_verma_quotient(verma, sing);
  }
  if (kind == "tensor") {
    const int r2 = spec.value("right_rank", 1);
    auto trivial = ReflectionGroup::close(builtin_group("trivial:" + std::to_string(r2)));
    auto weyl = AlgebraContext::make(std::move(trivial), Parameter{});
    return external_tensor(module_from_json(ctx, require(spec, "left"), truncation),
                           module_from_json(weyl, require(spec, "right"), truncation));
  }
  if (kind == "sum") {
    return direct_sum(module_from_json(ctx, require(spec, "left"), truncation),
                      module_from_json(ctx, require(spec, "right"), truncation));
  }
  throw InvalidInput("unknown module kind '" + kind + "'");
}

// ---------------------------------------------------------------------------

Json normalize_job(const Json& job) {
  if (!job.is_object()) throw InvalidInput("job must be a JSON object");
  if (job.contains("schema") && job.at("schema") != schema_tag)
    throw InvalidInput("unsupported schema " + job.at("schema").dump());
  const std::string command = require_string(job, "command");
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw InvalidInput("unknown command '" + command + "'");
  Json out;
  out["schema"] = schema_tag;
  out["command"] = command;
  out["op"] = job.value("op", default_ops.at(command));
  const auto& ops = known_ops.at(command);
  if (std::find(ops.begin(), ops.end(), out["op"].get<std::string>()) == ops.end())
    throw InvalidInput("unknown op '" + out["op"].get<std::string>() + "' for " + command);
  Json budgets = {{"truncation", default_truncation}, {"window", default_hilbert_window}, {"bound", 20}};
  if (job.contains("budgets")) {
    for (const auto& [k, v] : job.at("budgets").items()) {
      if (!budgets.contains(k)) throw InvalidInput("unknown budget '" + k + "'");
      budgets[k] = v;
    }
  }
  for (const char* k : {"truncation", "window", "bound"}) positive(budgets, k);
  for (const auto& [k, v] : job.items()) {
    if (k == "schema" || k == "command" || k == "op" || k == "budgets") continue;
    out[k] = v;
  }
  out["budgets"] = budgets;
  return out;
}

namespace {

Json run_group(const Json& job) {
  const auto group = group_from_json(require(job, "group"));
  Json out;
  out["name"] = group.spec().name;
  out["order"] = group.order();
  out["rank"] = group.rank();
  out["cyclotomic_order"] = group.cyclotomic_order();
  out["degrees"] = group.spec().degrees ? Json(*group.spec().degrees) : Json(nullptr);
  out["reflections"] = Json::array();
  for (const auto& r : find_reflections(group)) {
    Json rec;
    rec["element"] = r.element;
    rec["class"] = r.class_id;
    rec["lambda"] = scalar_text(r.lambda);
    rec["alpha"] = Json::array();
    for (const auto& a : r.alpha) rec["alpha"].push_back(scalar_text(a));
    rec["alpha_check"] = Json::array();
    for (const auto& a : r.alpha_check) rec["alpha_check"].push_back(scalar_text(a));
    out["reflections"].push_back(rec);
  }
  out["parabolics"] = Json::array();
  for (const auto& pc : parabolic_classes(group)) {
    out["parabolics"].push_back({{"order", pc.subgroup.size()},
                                 {"class_size", pc.class_size},
                                 {"fixed_dim", pc.fixed_space_dim},
                                 {"leaf_dim", pc.leaf_dim},
                                 {"subgroup", pc.subgroup}});
  }
  out["characters"] = Json::array();
  for (const auto& chi : linear_characters(group)) {
    Json values = Json::array();
    for (const auto& v : chi) values.push_back(scalar_text(v));
    out["characters"].push_back(values);
  }
  return out;
}

PBWElement element_arg(const AlgebraContext& ctx, const Json& job, const char* key) {
  const auto& v = require(job, key);
  if (v.is_string()) return parse_expression(v.get<std::string>(), ctx);
  return element_from_json(ctx, v);
}

Json element_report(const AlgebraContext& ctx, const PBWElement& e) {
  return {{"expression", to_expression(ctx, e)}, {"terms", element_to_json(e)}};
}

Json property_json(const PropertyReport& r) {
  return {{"samples", r.samples}, {"checked", r.checked}, {"failures", r.failures}, {"details", r.details}};
}

Json run_algebra(const Json& job, const JobOptions& opt) {
  const auto ctx = context_from_json(require(job, "context"));
  const std::string op = job.at("op");
  const std::uint64_t seed = job.value("seed", opt.seed);
  const std::size_t samples = job.value("samples", std::size_t{200});
  Json out;
  if (op == "normal-form") {
    out = element_report(*ctx, element_arg(*ctx, job, "expr"));
  } else if (op == "multiply" || op == "commutator") {
    const auto a = element_arg(*ctx, job, "a");
    const auto b = element_arg(*ctx, job, "b");
    out = element_report(*ctx, op == "multiply" ? multiply(*ctx, a, b) : commutator(*ctx, a, b));
  } else if (op == "symbol") {
    const auto kind = job.value("filtration", std::string("bernstein"));
    if (kind != "bernstein" && kind != "geometric") throw InvalidInput("filtration must be bernstein or geometric");
    const auto e = element_arg(*ctx, job, "expr");
    const auto fk = kind == "bernstein" ? FiltrationKind::bernstein : FiltrationKind::geometric;
    const auto sym = principal_symbol(e, fk);
    PBWElement as_element;
    for (const auto& [w, c] : sym.terms) as_element.add_term(w, c);
    out["filtration"] = kind;
    const auto deg = filtration_degree(e, fk);
    out["degree"] = deg ? Json(*deg) : Json("-inf");
    out["symbol"] = element_report(*ctx, as_element);
  } else if (op == "fourier") {
    const auto e = element_arg(*ctx, job, "expr");
    const auto dual = ctx->fourier_dual();
    const auto f = fourier_image(*ctx, e);
    out["image"] = element_report(*dual, f);
    out["involution"] = fourier_image(*dual, f) == e;
  } else if (op == "opposite") {
    const auto e = element_arg(*ctx, job, "expr");
    const auto opp = ctx->opposite_context();
    out["image"] = element_report(*opp, opposite_image(*ctx, e));
    Json cbar;
    for (const auto& [k, v] : opp->parameter().values) cbar[std::to_string(k)] = scalar_text(v);
    out["opposite_parameter"] = cbar;
  } else if (op == "associativity") {
    const std::size_t n = job.value("samples", std::size_t{500});
    const auto rep = verify_associativity(*ctx, n, seed);
    out["samples"] = rep.samples;
    out["failures"] = rep.failures;
    out["counterexamples"] = Json::array();
    for (const auto& t : rep.counterexamples)
      out["counterexamples"].push_back({word_to_string(t[0]), word_to_string(t[1]), word_to_string(t[2])});
  } else if (op == "symbols") {
    const auto kind = job.value("filtration", std::string("bernstein"));
    out = property_json(verify_symbol_multiplicativity(
        *ctx, samples, seed, kind == "geometric" ? FiltrationKind::geometric : FiltrationKind::bernstein));
  } else if (op == "structure-maps") {
    out = property_json(verify_structure_maps(*ctx, samples, seed));
  }
  if (op == "associativity" || op == "symbols" || op == "structure-maps") out["seed"] = seed;
  return out;
}

Json run_module(const Json& job, const JobOptions&) {
  const auto ctx = context_from_json(require(job, "context"));
  const auto& budgets = job.at("budgets");
  const int T = budgets.at("truncation");
  const int J = budgets.at("window");
  const int bound = budgets.at("bound");
  const auto M = module_from_json(ctx, require(job, "module"), T);
  const std::string op = job.at("op");
  Json out;
  out["kind"] = M->kind();
  if (op == "hilbert") {
    out["hilbert"] = dims_json(bernstein_filtration_dims(*M, M->default_generators(), J));
  } else if (op == "gk" || op == "holonomic") {
    const auto verdict = establish_regularity(*ctx, bound);
    const auto h = bernstein_filtration_dims(*M, M->default_generators(), J);
    out["hilbert"] = dims_json(h);
    out["gk"] = gk_json(gk_dimension(h));
    out["regularity"] = verdict_json(verdict);
    const auto rep = holonomicity(*M, M->default_generators(), J, verdict.regular());
    out["holonomic"] = rep.verdict == Holonomicity::undetermined ? Json("undetermined")
                                                                 : Json(rep.verdict == Holonomicity::holonomic);
    out["reason"] = rep.reason;
    out["leaves"] = Json::array();
    for (const auto& leaf : rep.leaves) {
      out["leaves"].push_back({{"parabolic_order", leaf.parabolic.subgroup.size()},
                               {"support_dim", leaf.support_dim},
                               {"allowed_dim", leaf.allowed_dim}});
    }
  } else if (op == "singular-vectors") {
    if (M->kind() != "verma") throw InvalidInput("singular vectors are searched in Verma modules");
    out["bound"] = bound;
    out["vectors"] = Json::array();
    for (const auto& s : find_singular_vectors(M, std::min(bound, T - 1))) {
      out["vectors"].push_back({{"degree", s.degree},
                                {"character", s.character ? Json(*s.character) : Json(nullptr)},
                                {"vector", vector_to_string(*s.module, s.vector)}});
    }
  } else if (op == "relations") {
    const int d = job.value("max_degree", 15);
    const auto rep = check_module_relations(*M, d);
    out["max_degree"] = d;
    out["vectors"] = rep.vectors;
    out["checks"] = rep.checks;
    out["failures"] = rep.failures;
    out["details"] = rep.details;
  }
  return out;
}

CyclicDatum datum_from_json(const Json& job) {
  const int m = require(job, "m").get<int>();
  if (m < 2) throw InvalidInput("m must be at least 2");
  const Json& c = require(job, "c");
  std::vector<Cyclo> values;
  if (c.is_array()) {
    for (const auto& v : c) values.push_back(scalar_from_json(v, m));
  } else {
    values.assign(m - 1, scalar_from_json(c, m));
  }
  return CyclicDatum::make(m, values);
}

Json cycle_json(const SingularCycle& sc) {
  Json comps = Json::object();
  for (const auto& [k, v] : sc.components) comps[k] = v;
  return {{"components", comps}, {"d", sc.d}, {"k", sc.k}, {"good_filtration", sc.good_filtration}};
}

Json run_rank1(const Json& job, const JobOptions& opt) {
  const auto datum = datum_from_json(job);
  const std::string op = job.at("op");
  const auto& budgets = job.at("budgets");
  const long T = job.value("T", default_ladder_bound);
  auto twist = [&](const Json& src) { return syntax::parse_laurent(src.get<std::string>(), datum.m); };
  std::optional<long> k;
  if (job.contains("k")) k = job.at("k").get<long>();
  Json out;
  if (op == "grid") {
    const auto& ps = require(job, "ps");
    std::vector<Json> rows(ps.size());
    parallel_for(ps.size(), opt.jobs, [&](std::size_t i) {
      const auto p = twist(ps.at(i));
      const auto cert = is_reducible(datum, p);
      const auto L = find_stable_ladders(make_laurent_module(datum, p), T);
      rows[i] = {{"p", laurent_json(p)},
                 {"reducible", cert.reducible},
                 {"ladders", L.ladders},
                 {"agree", cert.reducible == !L.ladders.empty()}};
    });
    out["bound"] = T;
    out["points"] = rows;
    Json disc = Json::array();
    for (const auto& r : rows)
      if (!r["agree"].get<bool>()) disc.push_back(r["p"]);
    out["discrepancies"] = disc;
    return out;
  }
  const auto p = twist(require(job, "p"));
  out["p"] = laurent_json(p);
  if (op == "reducible") {
    const auto cert = is_reducible(datum, p);
    out["reducible"] = cert.reducible;
    out["constant_term"] = scalar_text(cert.constant_term);
    out["negative_terms"] = cert.negative_terms;
    out["k"] = cert.k ? Json(*cert.k) : Json(nullptr);
    out["ladder"] = cert.ladder ? Json(*cert.ladder) : Json(nullptr);
  } else if (op == "reduce") {
    const auto red = canonical_twist_reduction(datum, p);
    out["k"] = red.k;
    out["reduced_scalar_part"] = laurent_json(red.reduced_scalar_part);
  } else if (op == "ladders") {
    const auto M = make_laurent_module(datum, p, k);
    const auto L = find_stable_ladders(M, T);
    out["generator_exponent"] = M.k;
    out["bound"] = L.bound;
    out["ladders"] = L.ladders;
  } else if (op == "cycle") {
    const auto M = make_laurent_module(datum, p, k);
    out["generator_exponent"] = M.k;
    out["generation"] = "verified up to truncation [" + std::to_string(M.verified_lo) + ", " +
                        std::to_string(M.verified_hi) + "]";
    out["cycle"] = cycle_json(singular_cycle(M));
    const auto cert = is_reducible(datum, p);
    if (cert.ladder) {
      out["submodule"] = cycle_json(subquotient_cycle(M, *cert.ladder, std::nullopt));
      out["quotient"] = cycle_json(subquotient_cycle(M, std::nullopt, *cert.ladder));
    }
  } else if (op == "pushforward") {
    const auto rep = check_pushforward_holonomic(datum, p, budgets.at("window"), budgets.at("bound"));
    out["regularity"] = rep.regularity;
    out["hilbert"] = dims_json(rep.hilbert);
    out["gk"] = gk_json(rep.gk);
    out["holonomic"] = rep.holonomic;
    out["alarm"] = rep.falsification ? Json("FALSIFICATION") : Json(nullptr);
  } else if (op == "act") {
    const auto M = make_laurent_module(datum, p, k);
    const auto v = twist(require(job, "v"));
    out["v"] = laurent_json(v);
    out["image"] = laurent_json(laurent_act_y(M, v));
  } else if (op == "localize") {
    const auto M = make_laurent_module(datum, p, k);
    const auto back = localize_j0(extend_j0(M, budgets.at("window")));
    out["round_trip"] = back.module.p == M.p && back.shift == 0;
  }
  return out;
}

Json run_params(const Json& job, const JobOptions& opt) {
  const std::string op = job.at("op");
  const int bound = job.at("budgets").at("bound");
  Json out;
  if (op == "regular") {
    const std::string mode = job.value("mode", std::string("degrees"));
    if (mode == "degrees") {
      const auto degrees = require(job, "degrees").get<std::vector<int>>();
      const Cyclo c = scalar_from_json(require(job, "c"), 1);
      if (!c.is_rational()) throw InvalidInput("the degree criterion takes a rational c");
      out = verdict_json(is_regular_by_degrees(degrees, c.rational_value()));
    } else if (mode == "probe") {
      out = verdict_json(regularity_probe_rank1(datum_from_json(job), bound));
    } else if (mode == "context") {
      out = verdict_json(establish_regularity(*context_from_json(require(job, "context")), bound));
    } else {
      throw InvalidInput("mode must be degrees, probe or context");
    }
    return out;
  }
  // grid: degree criterion against the rank-1 probe for constant c
  const auto degrees = require(job, "degrees").get<std::vector<int>>();
  const int m = require(job, "m").get<int>();
  const auto& values = require(job, "values");
  std::vector<Json> rows(values.size());
  parallel_for(values.size(), opt.jobs, [&](std::size_t i) {
    const Cyclo c = scalar_from_json(values.at(i), 1);
    const auto byd = is_regular_by_degrees(degrees, c.rational_value());
    const auto probe = regularity_probe_rank1(CyclicDatum::constant(m, c), bound);
    rows[i] = {{"c", scalar_text(c)},
               {"degrees", verdict_json(byd)["regular"]},
               {"probe", verdict_json(probe)["regular"]},
               {"agree", byd.regular() == probe.regular()}};
  });
  out["bound"] = bound;
  out["points"] = rows;
  std::size_t disagreements = 0;
  for (const auto& r : rows)
    if (!r["agree"].get<bool>()) ++disagreements;
  out["disagreements"] = disagreements;
  return out;
}

}  // namespace

Json run_job(const Json& raw, const JobOptions& options) {
  const Json job = normalize_job(raw);
  const auto start = std::chrono::steady_clock::now();
  const std::string command = job.at("command");
  Json result;
  if (command == "group") result = run_group(job);
  else if (command == "algebra") result = run_algebra(job, options);
  else if (command == "module") result = run_module(job, options);
  else if (command == "rank1") result = run_rank1(job, options);
  else result = run_params(job, options);
  Json report;
  report["schema"] = schema_tag;
  report["job"] = job;
  report["result"] = result;
  if (options.timing) {
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

JobResult run_job_checked(const Json& job, const JobOptions& options) {
  JobResult out;
  auto error_report = [&](const std::string& kind, const std::string& message, ExitCode code) {
    out.report = Json::object();
    out.report["schema"] = schema_tag;
    out.report["error"] = {{"kind", kind}, {"message", message}, {"exit_code", static_cast<int>(code)}};
    out.exit_code = code;
  };
  try {
    out.report = run_job(job, options);
    const auto& result = out.report.at("result");
    if (result.contains("alarm") && !result.at("alarm").is_null()) out.exit_code = ExitCode::internal_inconsistency;
  } catch (const BudgetExceeded& e) {
    error_report("budget-exceeded", e.what(), e.exit_code());
  } catch (const InternalInconsistency& e) {
    error_report("internal-inconsistency", e.what(), e.exit_code());
  } catch (const Error& e) {
    error_report("invalid-input", e.what(), e.exit_code());
  } catch (const nlohmann::json::exception& e) {
    error_report("invalid-input", e.what(), ExitCode::invalid_input);
  }
  return out;
}

namespace {

void render(std::ostringstream& os, const Json& v, const std::string& indent) {
  for (const auto& [k, x] : v.items()) {
    os << indent << k << ":";
    if (x.is_object()) {
      os << "\n";
      render(os, x, indent + "  ");
    } else if (x.is_array() && std::any_of(x.begin(), x.end(), [](const Json& e) { return e.is_object(); })) {
      os << "\n";
      std::size_t i = 0;
      for (const auto& e : x) {
        os << indent << "  [" << i++ << "]";
        if (e.is_object()) {
          os << "\n";
          render(os, e, indent + "    ");
        } else {
          os << " " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
        }
      }
    } else {
      os << " " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
    }
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  render(os, report, "");
  return os.str();
}

}  // namespace cherednik
