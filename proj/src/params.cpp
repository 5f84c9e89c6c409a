#include "cherednik/params.hpp"

namespace cherednik {

std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::regular: return "regular";
    case Regularity::regular_up_to_bound: return "regular-up-to-bound";
    case Regularity::not_regular: return "not-regular";
    case Regularity::unknown: return "unknown";
  }
  return "unknown";
}

RegularityVerdict is_regular_by_degrees(const std::vector<int>& degrees, const Rational& c) {
  RegularityVerdict v;
  v.method = "degrees";
  v.status = Regularity::regular;
  for (int d : degrees) {
    if (d < 1) throw InvalidInput("degrees must be positive");
    const Rational cd = c * d;
    if (cd.get_den() != 1) continue;
    const Integer m = cd.get_num();
    if (m % d != 0) {
      v.status = Regularity::not_regular;
      v.degree_witness = std::make_pair(m, d);
      return v;
    }
  }
  return v;
}

RegularityVerdict regularity_probe(const ContextPtr& ctx, int bound) {
  if (!ctx) throw InvalidInput("no context");
  if (ctx->rank() != 1) throw InvalidInput("the singular-vector probe is implemented in rank 1");
  if (bound < 1) throw InvalidInput("probe bound must be positive");
  RegularityVerdict v;
  v.method = "probe";
  v.bound = bound;
  const auto characters = linear_characters(ctx->group());
  v.status = Regularity::regular_up_to_bound;
  for (std::size_t t = 0; t < characters.size(); ++t) {
    const auto verma = build_verma({ctx, characters[t], bound + 1});
    const auto found = find_singular_vectors(verma, bound);
    if (found.empty()) continue;
    // lowest degree witness over all characters
    if (!v.singular_witness || found.front().degree < v.singular_witness->degree) {
      v.status = Regularity::not_regular;
      v.singular_witness = found.front();
      v.witness_character = t;
    }
  }
  return v;
}

RegularityVerdict regularity_probe_rank1(const CyclicDatum& datum, int bound) {
  return regularity_probe(datum.probe_context(), bound);
}

namespace {

// Largest s such that every generator is the identity outside the leading s x s block.
std::size_t essential_rank(const ReflectionGroup& group) {
  const std::size_t r = group.rank();
  std::size_t s = r;
  while (s > 0) {
    const std::size_t j = s - 1;
    bool trivial = true;
    for (std::size_t g = 0; g < group.order() && trivial; ++g) {
      const Matrix& a = group.element(g);
      for (std::size_t i = 0; i < r; ++i) {
        const Cyclo expected = i == j ? Cyclo(1) : Cyclo(0);
        if (a(i, j) != expected || a(j, i) != expected) trivial = false;
      }
    }
    if (!trivial) break;
    --s;
  }
  return s;
}

ContextPtr restricted_context(const AlgebraContext& ctx, std::size_t s) {
  const auto& group = ctx.group();
  GroupSpec spec = group.spec();
  spec.rank = static_cast<int>(s);
  spec.name = group.spec().name + "|" + std::to_string(s);
  spec.generators.clear();
  for (const auto& g : group.spec().generators) {
    Matrix block(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) block(i, j) = g(i, j);
    spec.generators.push_back(block);
  }
  if (spec.degrees) {
    auto& d = *spec.degrees;
    std::size_t extra = group.rank() - s;
    for (auto it = d.begin(); it != d.end() && extra > 0;) {
      if (*it == 1) {
        it = d.erase(it);
        --extra;
      } else {
        ++it;
      }
    }
  }
  auto base = ReflectionGroup::close(spec);
  if (base.order() != group.order()) throw InternalInconsistency("restriction changed the group order");
  return AlgebraContext::make(std::move(base), ctx.parameter());
}

}  // namespace

RegularityVerdict establish_regularity(const AlgebraContext& ctx, int bound) {
  RegularityVerdict v;
  bool all_zero = true;
  for (const auto& [k, c] : ctx.parameter().values)
    if (!c.is_zero()) all_zero = false;
  if (ctx.reflections().empty() || all_zero) {
    v.status = Regularity::regular;
    v.method = "trivial";
    return v;
  }
  const auto& group = ctx.group();
  const std::size_t s = essential_rank(group);
  if (s < static_cast<std::size_t>(group.rank())) {
    v = establish_regularity(*restricted_context(ctx, s), bound);
    v.method = "restriction+" + v.method;
    return v;
  }
  if (group.rank() == 1) return regularity_probe(AlgebraContext::make(group, ctx.parameter()), bound);
  if (group.spec().degrees) {
    std::optional<Cyclo> constant;
    bool uniform = true;
    for (const auto& [k, c] : ctx.parameter().values) {
      if (constant && *constant != c) uniform = false;
      constant = c;
    }
    if (uniform && constant && constant->is_rational())
      return is_regular_by_degrees(*group.spec().degrees, constant->rational_value());
  }
  v.method = "none";
  return v;
}

}  // namespace cherednik
