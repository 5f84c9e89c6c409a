#include "cherednik/modules.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace cherednik {

namespace {

int total(const Monomial& e) {
  int t = 0;
  for (int v : e) t += v;
  return t;
}

SparseVector basis_vector(std::size_t label, const Cyclo& c = Cyclo(1)) { return SparseVector{{label, c}}; }

void accumulate(SparseVector& out, const SparseVector& v, const Cyclo& a) { axpy(out, a, v); }

std::string monomial_name(const Monomial& n, char var) {
  std::string out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += std::string(1, var) + std::to_string(i + 1);
    if (n[i] > 1) out += "^" + std::to_string(n[i]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------

class VermaModule final : public ModuleModel {
 public:
  VermaModule(ContextPtr ctx, Character tau, int truncation)
      : ModuleModel(std::move(ctx), truncation), tau_(std::move(tau)) {
    const auto& group = context().group();
    if (tau_.size() != group.order()) throw InvalidInput("character has the wrong number of values");
    for (std::size_t a = 0; a < group.order(); ++a)
      for (std::size_t b = 0; b < group.order(); ++b)
        if (tau_[group.multiply(a, b)] != tau_[a] * tau_[b]) throw InvalidInput("tau is not a character of W");
    zero_ = labels_.id(Monomial(context().rank(), 0));
  }

  std::string kind() const override { return "verma"; }
  const Character& tau() const noexcept { return tau_; }

  SparseVector act_x(std::size_t i, std::size_t label) const override {
    Monomial n = labels_.key(label);
    ++n.at(i);
    check_degree(total(n));
    return basis_vector(labels_.id(n));
  }

  SparseVector act_g(std::size_t g, std::size_t label) const override {
    const Monomial n = labels_.key(label);
    SparseVector out;
    for (const auto& [e, c] : context().act_x(g, n)) out.emplace(labels_.id(e), c * tau_[g]);
    return out;
  }

  SparseVector act_y(std::size_t i, std::size_t label) const override {
    const auto key = std::make_pair(i, label);
    {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      auto it = y_memo_.find(key);
      if (it != y_memo_.end()) return it->second;
    }
    const Monomial n = labels_.key(label);
    SparseVector out;
    std::size_t j = 0;
    while (j < n.size() && n[j] == 0) ++j;
    if (j < n.size()) {
      Monomial rest = n;
      --rest[j];
      const std::size_t lr = labels_.id(rest);
      // y_i x_j v = x_j (y_i v) + [y_i, x_j] v
      out = apply_x(*this, j, act_y(i, lr));
      if (i == j) accumulate(out, basis_vector(lr), Cyclo(1));
      const auto& ctx = context();
      for (std::size_t s = 0; s < ctx.reflections().size(); ++s) {
        const auto& refl = ctx.reflections()[s];
        const Cyclo coeff = ctx.c_of(s) * refl.alpha[i] * refl.alpha_check[j];
        if (!coeff.is_zero()) accumulate(out, act_g(refl.element, lr), -coeff);
      }
    }
    std::lock_guard<std::mutex> lock(memo_mutex_);
    return y_memo_.emplace(key, std::move(out)).first->second;
  }

  int degree(std::size_t label) const override { return total(labels_.key(label)); }
  std::string label_name(std::size_t label) const override { return monomial_name(labels_.key(label), 'x'); }

  std::vector<std::size_t> basis_up_to(int d) const override {
    std::vector<std::size_t> out;
    for (int k = 0; k <= std::min(d, truncation()); ++k)
      for (const auto& m : monomials_of_degree(context().rank(), k)) out.push_back(labels_.id(m));
    return out;
  }

  std::vector<SparseVector> default_generators() const override { return {basis_vector(zero_)}; }

  std::size_t label_of(const Monomial& n) const { return labels_.id(n); }

 private:
  Character tau_;
  LabelTable<Monomial> labels_;
  std::size_t zero_ = 0;
  mutable std::mutex memo_mutex_;
  mutable std::map<std::pair<std::size_t, std::size_t>, SparseVector> y_memo_;
};

class RegularModule final : public ModuleModel {
 public:
  RegularModule(ContextPtr ctx, int truncation) : ModuleModel(std::move(ctx), truncation) {}

  std::string kind() const override { return "regular"; }

  SparseVector act_x(std::size_t i, std::size_t label) const override {
    return from_element(multiply(context(), x_generator(context(), i), PBWElement::word(labels_.key(label))));
  }
  SparseVector act_y(std::size_t i, std::size_t label) const override {
    return from_element(multiply(context(), y_generator(context(), i), PBWElement::word(labels_.key(label))));
  }
  SparseVector act_g(std::size_t g, std::size_t label) const override {
    Word w = labels_.key(label);
    w.g = context().group().multiply(g, w.g);
    return basis_vector(labels_.id(w));
  }

  int degree(std::size_t label) const override { return word_degree(labels_.key(label), FiltrationKind::bernstein); }
  std::string label_name(std::size_t label) const override { return word_to_string(labels_.key(label)); }

  std::vector<std::size_t> basis_up_to(int d) const override {
    const std::size_t r = context().rank();
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < context().group().order(); ++g)
      for (int a = 0; a <= std::min(d, truncation()); ++a)
        for (int b = 0; a + b <= std::min(d, truncation()); ++b)
          for (const auto& m : monomials_of_degree(r, a))
            for (const auto& n : monomials_of_degree(r, b)) out.push_back(labels_.id(Word{g, m, n}));
    return out;
  }

  std::vector<SparseVector> default_generators() const override {
    const std::size_t r = context().rank();
    return {basis_vector(labels_.id(Word{0, Monomial(r, 0), Monomial(r, 0)}))};
  }

 private:
  SparseVector from_element(const PBWElement& e) const {
    SparseVector out;
    for (const auto& [w, c] : e.terms()) {
      check_degree(word_degree(w, FiltrationKind::bernstein));
      out.emplace(labels_.id(w), c);
    }
    return out;
  }

  LabelTable<Word> labels_;
};

class QuotientModule final : public ModuleModel {
 public:
  QuotientModule(ModulePtr verma, const std::vector<SparseVector>& singular)
      : ModuleModel(verma->context_ptr(), verma->truncation()), verma_(std::move(verma)) {
    const auto& group = context().group();
    const int T = truncation();
    std::map<int, std::vector<SparseVector>> by_degree;
    for (const auto& v : singular) {
      if (is_zero(v)) continue;
      int d = -1;
      for (const auto& [l, c] : v) {
        const int dl = verma_->degree(l);
        if (d >= 0 && dl != d) throw InvalidInput("singular vectors must be homogeneous");
        d = dl;
      }
      for (std::size_t i = 0; i < static_cast<std::size_t>(context().rank()); ++i) {
        if (!is_zero(apply_y(*verma_, i, v))) throw InvalidInput("vector is not annihilated by y" + std::to_string(i + 1));
      }
      for (std::size_t g = 0; g < group.order(); ++g) by_degree[d].push_back(apply_g(*verma_, g, v));
    }
    // The submodule generated by singular vectors is C[h] . span(W v).
    std::vector<SparseVector> level;
    for (int d = 0; d <= T; ++d) {
      std::vector<SparseVector> next;
      for (const auto& u : level) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(context().rank()); ++i) {
          SparseVector w = apply_x(*verma_, i, u);
          if (sub_.insert(w)) next.push_back(std::move(w));
        }
      }
      for (const auto& u : by_degree[d])
        if (sub_.insert(u)) next.push_back(u);
      level = std::move(next);
      if (d == T) break;
    }
    for (const auto& row : sub_.rows()) pivots_.insert(row.begin()->first);
  }

  std::string kind() const override { return "quotient"; }

  SparseVector act_x(std::size_t i, std::size_t label) const override {
    return sub_.reduce(verma_->act_x(i, label));
  }
  SparseVector act_y(std::size_t i, std::size_t label) const override {
    return sub_.reduce(verma_->act_y(i, label));
  }
  SparseVector act_g(std::size_t g, std::size_t label) const override {
    return sub_.reduce(verma_->act_g(g, label));
  }
  int degree(std::size_t label) const override { return verma_->degree(label); }
  std::string label_name(std::size_t label) const override { return verma_->label_name(label); }

  std::vector<std::size_t> basis_up_to(int d) const override {
    std::vector<std::size_t> out;
    for (auto l : verma_->basis_up_to(d))
      if (!pivots_.count(l)) out.push_back(l);
    return out;
  }

  std::vector<SparseVector> default_generators() const override {
    std::vector<SparseVector> out;
    for (const auto& g : verma_->default_generators()) {
      SparseVector r = sub_.reduce(g);
      if (!r.empty()) out.push_back(std::move(r));
    }
    return out;
  }

 private:
  ModulePtr verma_;
  EchelonBasis sub_;
  std::set<std::size_t> pivots_;
};

class TensorModule final : public ModuleModel {
 public:
  TensorModule(ContextPtr ctx, ModulePtr M, ModulePtr N)
      : ModuleModel(std::move(ctx), std::min(M->truncation(), N->truncation())), M_(std::move(M)), N_(std::move(N)) {}

  std::string kind() const override { return "tensor"; }

  SparseVector act_x(std::size_t i, std::size_t label) const override {
    return act(i, label, [](const ModuleModel& m, std::size_t k, std::size_t l) { return m.act_x(k, l); });
  }
  SparseVector act_y(std::size_t i, std::size_t label) const override {
    return act(i, label, [](const ModuleModel& m, std::size_t k, std::size_t l) { return m.act_y(k, l); });
  }
  SparseVector act_g(std::size_t g, std::size_t label) const override {
    const auto [a, b] = labels_.key(label);
    return left(M_->act_g(g, a), b);
  }

  int degree(std::size_t label) const override {
    const auto [a, b] = labels_.key(label);
    return M_->degree(a) + N_->degree(b);
  }
  std::string label_name(std::size_t label) const override {
    const auto [a, b] = labels_.key(label);
    return "(" + M_->label_name(a) + ")#(" + N_->label_name(b) + ")";
  }

  std::vector<std::size_t> basis_up_to(int d) const override {
    std::vector<std::size_t> out;
    for (auto a : M_->basis_up_to(d))
      for (auto b : N_->basis_up_to(d - M_->degree(a))) out.push_back(labels_.id({a, b}));
    return out;
  }

  std::vector<SparseVector> default_generators() const override {
    std::vector<SparseVector> out;
    for (const auto& u : M_->default_generators()) {
      for (const auto& v : N_->default_generators()) {
        SparseVector w;
        for (const auto& [a, ca] : u)
          for (const auto& [b, cb] : v) w.emplace(labels_.id({a, b}), ca * cb);
        out.push_back(std::move(w));
      }
    }
    return out;
  }

 private:
  template <class F>
  SparseVector act(std::size_t i, std::size_t label, F&& f) const {
    const auto [a, b] = labels_.key(label);
    const std::size_t r1 = M_->context().rank();
    if (i < r1) return left(f(*M_, i, a), b);
    SparseVector out;
    for (const auto& [l, c] : f(*N_, i - r1, b)) out.emplace(labels_.id({a, l}), c);
    return out;
  }

  SparseVector left(const SparseVector& v, std::size_t b) const {
    SparseVector out;
    for (const auto& [l, c] : v) out.emplace(labels_.id({l, b}), c);
    return out;
  }

  ModulePtr M_;
  ModulePtr N_;
  LabelTable<std::pair<std::size_t, std::size_t>> labels_;
};

class SumModule final : public ModuleModel {
 public:
  SumModule(ModulePtr M, ModulePtr N)
      : ModuleModel(M->context_ptr(), std::min(M->truncation(), N->truncation())), parts_{std::move(M), std::move(N)} {}

  std::string kind() const override { return "sum"; }

  SparseVector act_x(std::size_t i, std::size_t label) const override {
    const auto [k, l] = labels_.key(label);
    return inject(k, parts_[k]->act_x(i, l));
  }
  SparseVector act_y(std::size_t i, std::size_t label) const override {
    const auto [k, l] = labels_.key(label);
    return inject(k, parts_[k]->act_y(i, l));
  }
  SparseVector act_g(std::size_t g, std::size_t label) const override {
    const auto [k, l] = labels_.key(label);
    return inject(k, parts_[k]->act_g(g, l));
  }
  int degree(std::size_t label) const override {
    const auto [k, l] = labels_.key(label);
    return parts_[k]->degree(l);
  }
  std::string label_name(std::size_t label) const override {
    const auto [k, l] = labels_.key(label);
    return "[" + std::to_string(k + 1) + "]" + parts_[k]->label_name(l);
  }
  std::vector<std::size_t> basis_up_to(int d) const override {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < 2; ++k)
      for (auto l : parts_[k]->basis_up_to(d)) out.push_back(labels_.id({k, l}));
    return out;
  }
  std::vector<SparseVector> default_generators() const override {
    std::vector<SparseVector> out;
    for (std::size_t k = 0; k < 2; ++k)
      for (const auto& g : parts_[k]->default_generators()) out.push_back(inject(k, g));
    return out;
  }

 private:
  SparseVector inject(std::size_t k, const SparseVector& v) const {
    SparseVector out;
    for (const auto& [l, c] : v) out.emplace(labels_.id({k, l}), c);
    return out;
  }

  ModulePtr parts_[2];
  LabelTable<std::pair<std::size_t, std::size_t>> labels_;
};

}  // namespace

// ---------------------------------------------------------------------------

SparseVector apply_x(const ModuleModel& M, std::size_t i, const SparseVector& v) {
  SparseVector out;
  for (const auto& [l, c] : v) accumulate(out, M.act_x(i, l), c);
  return out;
}

SparseVector apply_y(const ModuleModel& M, std::size_t i, const SparseVector& v) {
  SparseVector out;
  for (const auto& [l, c] : v) accumulate(out, M.act_y(i, l), c);
  return out;
}

SparseVector apply_g(const ModuleModel& M, std::size_t g, const SparseVector& v) {
  SparseVector out;
  for (const auto& [l, c] : v) accumulate(out, M.act_g(g, l), c);
  return out;
}

SparseVector apply_element(const ModuleModel& M, const PBWElement& e, const SparseVector& v) {
  SparseVector out;
  for (const auto& [w, c] : e.terms()) {
    SparseVector u = v;
    for (std::size_t i = 0; i < w.n.size() && !u.empty(); ++i)
      for (int k = 0; k < w.n[i] && !u.empty(); ++k) u = apply_x(M, i, u);
    for (std::size_t i = 0; i < w.m.size() && !u.empty(); ++i)
      for (int k = 0; k < w.m[i] && !u.empty(); ++k) u = apply_y(M, i, u);
    if (w.g != 0 && !u.empty()) u = apply_g(M, w.g, u);
    accumulate(out, u, c);
  }
  return out;
}

std::string vector_to_string(const ModuleModel& M, const SparseVector& v) {
  std::vector<std::pair<std::string, Cyclo>> named;
  for (const auto& [l, c] : v)
    if (!c.is_zero()) named.emplace_back(M.label_name(l), c);
  std::sort(named.begin(), named.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Cyclo, std::string>> terms;
  for (auto& [n, c] : named) terms.emplace_back(c, n);
  return format_combination(terms);
}

std::vector<Monomial> monomials_of_degree(std::size_t r, int d) {
  std::vector<Monomial> out;
  if (d < 0 || r == 0) return out;
  Monomial cur(r, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == r) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
  return out;
}

ModulePtr build_verma(const VermaSpec& spec) {
  if (!spec.context) throw InvalidInput("Verma module needs a context");
  if (spec.truncation < 1) throw InvalidInput("truncation must be positive");
  return std::make_shared<VermaModule>(spec.context, spec.character, spec.truncation);
}

ModulePtr build_regular(ContextPtr ctx, int truncation) {
  if (truncation < 1) throw InvalidInput("truncation must be positive");
  return std::make_shared<RegularModule>(std::move(ctx), truncation);
}

const Character* verma_character(const ModuleModel& M) {
  if (auto v = dynamic_cast<const VermaModule*>(&M)) return &v->tau();
  return nullptr;
}

ModulePtr build_verma_quotient(const ModulePtr& verma, const std::vector<SparseVector>& singular) {
  if (verma->kind() != "verma") throw InvalidInput("quotients are taken of Verma modules");
  return std::make_shared<QuotientModule>(verma, singular);
}

ModulePtr external_tensor(const ModulePtr& M, const ModulePtr& N) {
  const auto& n_group = N->context().group();
  if (n_group.order() != 1) throw InvalidInput("the second factor must be a D(h2)-module with trivial W-action");
  const auto& m_ctx = M->context();
  ReflectionGroup group = m_ctx.group().extended_trivially(N->context().rank());
  ContextPtr ctx = AlgebraContext::make(std::move(group), m_ctx.parameter());
  return std::make_shared<TensorModule>(std::move(ctx), M, N);
}

ModulePtr direct_sum(const ModulePtr& M, const ModulePtr& N) {
  if (!M->context().same_as(N->context())) throw InvalidInput("direct sum of modules over different algebras");
  return std::make_shared<SumModule>(M, N);
}

// ---------------------------------------------------------------------------

BernsteinFiltration bernstein_filtration(const ModuleModel& M, const std::vector<SparseVector>& generators, int J) {
  if (J < 0) throw InvalidInput("filtration length must be nonnegative");
  const auto& group = M.context().group();
  const std::size_t r = M.context().rank();
  BernsteinFiltration out;
  out.hilbert.generators = generators.size();
  EchelonBasis basis;
  // Closes `fresh` under the generators of W, inserting into the basis.
  auto w_close = [&](std::vector<SparseVector>& fresh) {
    for (std::size_t k = 0; k < fresh.size(); ++k) {
      for (auto gi : group.generator_indices()) {
        SparseVector u = apply_g(M, gi, fresh[k]);
        if (basis.insert(u)) fresh.push_back(std::move(u));
      }
    }
  };
  std::vector<SparseVector> stage;
  for (const auto& g : generators)
    if (basis.insert(g)) stage.push_back(g);
  w_close(stage);
  out.hilbert.dims.push_back(static_cast<long>(basis.size()));
  out.added.push_back(stage);
  for (int j = 1; j <= J; ++j) {
    std::vector<SparseVector> next;
    for (const auto& v : out.added.back()) {
      for (std::size_t i = 0; i < r; ++i) {
        SparseVector u = apply_x(M, i, v);
        if (basis.insert(u)) next.push_back(std::move(u));
        SparseVector w = apply_y(M, i, v);
        if (basis.insert(w)) next.push_back(std::move(w));
      }
    }
    w_close(next);
    out.hilbert.dims.push_back(static_cast<long>(basis.size()));
    out.added.push_back(std::move(next));
  }
  return out;
}

HilbertData bernstein_filtration_dims(const ModuleModel& M, const std::vector<SparseVector>& generators, int J) {
  return bernstein_filtration(M, generators, J).hilbert;
}

GKReport gk_dimension(const std::vector<long>& dims, int stable_points) {
  if (stable_points < 1) throw InvalidInput("stabilization window must be positive");
  const int n = static_cast<int>(dims.size());
  std::vector<Integer> diff(dims.begin(), dims.end());
  std::vector<std::vector<Integer>> levels{diff};
  for (int k = 0; n - k - 1 >= stable_points; ++k) {
    // levels[k+1][t] = Delta^{k+1} h(t + k + 1)
    const std::vector<Integer> prev = levels[k];
    std::vector<Integer> next;
    for (std::size_t t = 1; t < prev.size(); ++t) next.push_back(prev[t] - prev[t - 1]);
    levels.push_back(next);
    bool vanish = true;
    for (int t = static_cast<int>(next.size()) - stable_points; t < static_cast<int>(next.size()); ++t)
      vanish = vanish && next[t] == 0;
    if (!vanish) continue;
    GKReport rep;
    rep.gk_dim = k;
    Integer fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    rep.leading_coefficient = Rational(prev.back()) / Rational(fact);
    rep.leading_coefficient.canonicalize();
    rep.window_begin = n - stable_points;
    rep.window_end = n - 1;
    rep.polynomiality_verified = true;
    // Lagrange interpolation through the last k+1 points.
    std::vector<Rational> poly(k + 1, 0);
    for (int a = n - k - 1; a < n; ++a) {
      std::vector<Rational> basis{Rational(1)};
      Rational denom = 1;
      for (int b = n - k - 1; b < n; ++b) {
        if (b == a) continue;
        std::vector<Rational> nb(basis.size() + 1, 0);
        for (std::size_t t = 0; t < basis.size(); ++t) {
          nb[t + 1] += basis[t];
          nb[t] -= basis[t] * b;
        }
        basis = std::move(nb);
        denom *= (a - b);
      }
      for (std::size_t t = 0; t < basis.size(); ++t) poly[t] += basis[t] * Rational(dims[a]) / denom;
    }
    for (auto& c : poly) c.canonicalize();
    rep.polynomial = std::move(poly);
    return rep;
  }
  throw BudgetExceeded("Hilbert function did not stabilize within " + std::to_string(n) + " terms");
}

GKReport gk_dimension(const HilbertData& h, int stable_points) { return gk_dimension(h.dims, stable_points); }

bool is_holonomic_regular(const ModuleModel& M, const HilbertData& h, bool regular_established) {
  if (std::all_of(h.dims.begin(), h.dims.end(), [](long d) { return d == 0; })) {
    throw InvalidInput("holonomicity is defined for nonzero modules");
  }
  if (!regular_established) throw InvalidInput("regular parameter required");
  const GKReport gk = gk_dimension(h);
  const int r = M.context().rank();
  if (gk.gk_dim < r) {
    throw InternalInconsistency("Bernstein inequality violated: GK dimension " + std::to_string(gk.gk_dim) +
                                " < rank " + std::to_string(r) + " at a regular parameter");
  }
  return gk.gk_dim == r;
}

std::string to_string(Holonomicity h) {
  switch (h) {
    case Holonomicity::holonomic:
      return "holonomic";
    case Holonomicity::not_holonomic:
      return "not-holonomic";
    case Holonomicity::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

HolonomicityReport holonomicity(const ModuleModel& M, const std::vector<SparseVector>& generators, int J,
                                bool regular_established) {
  const auto& ctx = M.context();
  const auto& group = ctx.group();
  const std::size_t r = ctx.rank();
  const BernsteinFiltration filt = bernstein_filtration(M, generators, J);
  const auto& dims = filt.hilbert.dims;
  if (std::all_of(dims.begin(), dims.end(), [](long d) { return d == 0; })) {
    throw InvalidInput("holonomicity is defined for nonzero modules");
  }
  HolonomicityReport rep;
  rep.rank = static_cast<int>(r);
  rep.regular = regular_established;
  rep.gk_dim = gk_dimension(filt.hilbert).gk_dim;

  for (const auto& pc : parabolic_classes(group)) {
    LeafReport leaf;
    leaf.parabolic = pc;
    leaf.allowed_dim = pc.fixed_space_dim;
    // Linear forms (w - 1)v on h + h*, coordinates (x_1..x_r, y_1..y_r).
    Matrix forms(0, 2 * r);
    std::vector<std::vector<Cyclo>> rows;
    for (auto w : pc.subgroup) {
      const Matrix& dx = group.dual_element(w);
      const Matrix& dy = group.element(w);
      for (std::size_t j = 0; j < r; ++j) {
        std::vector<Cyclo> vx(2 * r), vy(2 * r);
        for (std::size_t i = 0; i < r; ++i) {
          vx[i] = dx(i, j) - Cyclo(i == j ? 1 : 0);
          vy[r + i] = dy(i, j) - Cyclo(i == j ? 1 : 0);
        }
        rows.push_back(std::move(vx));
        rows.push_back(std::move(vy));
      }
    }
    std::vector<std::vector<Cyclo>> ell;
    if (!rows.empty()) {
      Matrix m = Matrix::from_rows(rows);
      const auto pivots = m.rref();
      for (std::size_t k = 0; k < pivots.size(); ++k) {
        std::vector<Cyclo> v(2 * r);
        for (std::size_t t = 0; t < 2 * r; ++t) v[t] = m(k, t);
        ell.push_back(std::move(v));
      }
    }
    auto apply_form = [&](const std::vector<Cyclo>& form, const SparseVector& v) {
      SparseVector out;
      for (std::size_t i = 0; i < r; ++i) {
        if (!form[i].is_zero()) accumulate(out, apply_x(M, i, v), form[i]);
        if (!form[r + i].is_zero()) accumulate(out, apply_y(M, i, v), form[r + i]);
      }
      return out;
    };
    // G_j = F_{j-1} + L F_{j-1}; Q(j) = dim F_j - dim G_j.
    EchelonBasis G;
    long running = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (j > 0) {
        for (const auto& v : filt.added[j - 1]) {
          G.insert(v);
          for (const auto& form : ell) G.insert(apply_form(form, v));
        }
      }
      running += dims[j] - static_cast<long>(G.size());
      leaf.cumulative.push_back(running);
    }
    leaf.support_dim = gk_dimension(leaf.cumulative).gk_dim;
    rep.leaves.push_back(std::move(leaf));
  }

  for (const auto& leaf : rep.leaves) {
    if (leaf.support_dim > leaf.allowed_dim) {
      rep.verdict = Holonomicity::not_holonomic;
      rep.reason = "support meets the fixed space of a parabolic of order " +
                   std::to_string(leaf.parabolic.subgroup.size()) + " in dimension " +
                   std::to_string(leaf.support_dim) + " > " + std::to_string(leaf.allowed_dim);
      return rep;
    }
  }
  if (regular_established) {
    if (rep.gk_dim < rep.rank) {
      throw InternalInconsistency("Bernstein inequality violated: GK dimension " + std::to_string(rep.gk_dim) +
                                  " < rank " + std::to_string(rep.rank) + " at a regular parameter");
    }
    rep.verdict = Holonomicity::holonomic;
    rep.reason = "regular parameter and GK dimension equal to the rank";
    return rep;
  }
  const bool small = std::all_of(rep.leaves.begin(), rep.leaves.end(),
                                 [](const LeafReport& l) { return l.support_dim <= 1; });
  if (small) {
    rep.verdict = Holonomicity::holonomic;
    rep.reason = "every leafwise support has dimension at most 1";
  } else {
    rep.verdict = Holonomicity::undetermined;
    rep.reason = "leaf dimensions within bounds but the parameter is not known to be regular";
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<SingularVector> find_singular_vectors(const ModulePtr& verma, int bound) {
  if (verma->kind() != "verma") throw InvalidInput("singular vectors are searched in Verma modules");
  if (bound >= verma->truncation()) throw BudgetExceeded("singular-vector bound must be below the truncation");
  const auto& ctx = verma->context();
  const auto& group = ctx.group();
  const std::size_t r = ctx.rank();
  const auto& vm = static_cast<const VermaModule&>(*verma);
  const auto chars = linear_characters(group);
  std::vector<SingularVector> out;
  for (int d = 1; d <= bound; ++d) {
    const auto monos = monomials_of_degree(r, d);
    const auto lower = monomials_of_degree(r, d - 1);
    std::map<std::size_t, std::size_t> row_of;
    for (std::size_t k = 0; k < lower.size(); ++k) row_of[vm.label_of(lower[k])] = k;
    Matrix a(r * lower.size(), monos.size());
    for (std::size_t col = 0; col < monos.size(); ++col) {
      const std::size_t l = vm.label_of(monos[col]);
      for (std::size_t i = 0; i < r; ++i)
        for (const auto& [t, c] : verma->act_y(i, l)) a(i * lower.size() + row_of.at(t), col) = c;
    }
    const auto kernel = a.nullspace();
    if (kernel.empty()) continue;
    std::vector<SparseVector> kvecs;
    for (const auto& kv : kernel) {
      SparseVector v;
      for (std::size_t col = 0; col < monos.size(); ++col)
        if (!kv[col].is_zero()) v.emplace(vm.label_of(monos[col]), kv[col]);
      kvecs.push_back(std::move(v));
    }
    EchelonBasis found;
    for (std::size_t ci = 0; ci < chars.size(); ++ci) {
      EchelonBasis part;
      for (const auto& v : kvecs) {
        SparseVector p;
        for (std::size_t g = 0; g < group.order(); ++g) accumulate(p, apply_g(*verma, g, v), chars[ci][g].inverse());
        part.insert(p);
      }
      for (const auto& row : part.rows()) {
        found.insert(row);
        out.push_back(SingularVector{d, row, ci, chars[ci], verma});
      }
    }
    for (const auto& v : kvecs) {
      SparseVector rest = found.reduce(v);
      if (rest.empty()) continue;
      found.insert(rest);
      out.push_back(SingularVector{d, rest, std::nullopt, {}, verma});
    }
  }
  return out;
}

std::vector<SingularVector> find_singular_vectors(const VermaSpec& spec, int bound) {
  VermaSpec s = spec;
  s.truncation = std::max(spec.truncation, bound + 1);
  return find_singular_vectors(build_verma(s), bound);
}

// ---------------------------------------------------------------------------

RelationCheck check_module_relations(const ModuleModel& M, int max_degree) {
  const auto& ctx = M.context();
  const auto& group = ctx.group();
  const std::size_t r = ctx.rank();
  RelationCheck rep;
  std::vector<std::vector<PBWElement>> yx(r, std::vector<PBWElement>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      yx[i][j] = commutator(ctx, y_generator(ctx, i), x_generator(ctx, j));
  auto fail = [&](const std::string& what, std::size_t label) {
    ++rep.failures;
    if (rep.details.size() < 20) rep.details.push_back(what + " on " + M.label_name(label));
  };
  for (auto label : M.basis_up_to(max_degree)) {
    ++rep.vectors;
    const SparseVector v = basis_vector(label);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        SparseVector lhs = apply_y(M, i, apply_x(M, j, v));
        accumulate(lhs, apply_x(M, j, apply_y(M, i, v)), Cyclo(-1));
        ++rep.checks;
        if (lhs != apply_element(M, yx[i][j], v)) fail("[y" + std::to_string(i + 1) + ",x" + std::to_string(j + 1) + "]", label);
        if (j <= i) continue;
        ++rep.checks;
        if (apply_x(M, i, apply_x(M, j, v)) != apply_x(M, j, apply_x(M, i, v))) fail("[x,x]", label);
        ++rep.checks;
        if (apply_y(M, i, apply_y(M, j, v)) != apply_y(M, j, apply_y(M, i, v))) fail("[y,y]", label);
      }
    }
    for (auto g : group.generator_indices()) {
      const Matrix& dx = group.dual_element(g);
      const Matrix& dy = group.element(g);
      const SparseVector gv = apply_g(M, g, v);
      for (std::size_t j = 0; j < r; ++j) {
        SparseVector gx, gy;
        for (std::size_t i = 0; i < r; ++i) {
          accumulate(gx, apply_x(M, i, gv), dx(i, j));
          accumulate(gy, apply_y(M, i, gv), dy(i, j));
        }
        ++rep.checks;
        if (apply_g(M, g, apply_x(M, j, v)) != gx) fail("g x g^-1", label);
        ++rep.checks;
        if (apply_g(M, g, apply_y(M, j, v)) != gy) fail("g y g^-1", label);
      }
      for (std::size_t h = 0; h < group.order(); ++h) {
        ++rep.checks;
        if (apply_g(M, g, apply_g(M, h, v)) != apply_g(M, group.multiply(g, h), v)) fail("group law", label);
      }
    }
  }
  return rep;
}

RelationCheck check_module_products(const ModuleModel& M, std::size_t samples, std::uint64_t seed, int max_degree) {
  const auto& ctx = M.context();
  std::mt19937_64 rng(seed);
  const auto labels = M.basis_up_to(max_degree);
  if (labels.empty()) return {};
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  WordSampler sampler;
  sampler.max_letter_degree = 1;
  sampler.max_total_degree = 2;
  RelationCheck rep;
  for (std::size_t k = 0; k < samples; ++k) {
    const PBWElement a = random_element(ctx, rng, 2, sampler);
    const PBWElement b = random_element(ctx, rng, 2, sampler);
    const std::size_t label = labels[pick(rng)];
    const SparseVector v = basis_vector(label);
    ++rep.vectors;
    ++rep.checks;
    if (apply_element(M, a, apply_element(M, b, v)) != apply_element(M, multiply(ctx, a, b), v)) {
      ++rep.failures;
      if (rep.details.size() < 20) {
        rep.details.push_back("a = " + to_expression(ctx, a) + ", b = " + to_expression(ctx, b) + " on " +
                              M.label_name(label));
      }
    }
  }
  return rep;
}

}  // namespace cherednik
