#include "cherednik/groups.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "cherednik/errors.hpp"

namespace cherednik {

namespace {

Matrix diagonal(const std::vector<Cyclo>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

int parse_suffix(const std::string& name, const std::string& prefix) {
  const std::string digits = name.substr(prefix.size());
  if (digits.empty() || digits.size() > 4 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw InvalidInput("malformed group family '" + name + "'");
  }
  return std::stoi(digits);
}

// Rows of (G - I), the equations of the fixed space of G.
Matrix fixed_equations(const Matrix& g) { return g - Matrix::identity(g.rows()); }

Matrix stack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

// Canonical equation matrix: nonzero rows of the rref.
Matrix canonical_equations(Matrix m) {
  const auto pivots = m.rref();
  Matrix out(pivots.size(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

bool fixes_pointwise(const Matrix& g, const std::vector<std::vector<Cyclo>>& basis) {
  const Matrix a = fixed_equations(g);
  for (const auto& v : basis) {
    for (const auto& c : a.apply(v))
      if (!c.is_zero()) return false;
  }
  return true;
}

}  // namespace

GroupSpec builtin_group(const std::string& name) {
  GroupSpec spec;
  spec.name = name;
  if (name.rfind("cyclic:", 0) == 0) {
    const int m = parse_suffix(name, "cyclic:");
    if (m < 1) throw InvalidInput("cyclic group order must be positive");
    spec.cyclotomic_order = m;
    spec.rank = 1;
    spec.generators.push_back(diagonal({Cyclo::root(m, 1)}));
    if (m == 2) spec.degrees = std::vector<int>{2};
  } else if (name == "s3-reflection") {
    // S_3 on {sum = 0} in C^3, basis e1-e2, e2-e3.
    spec.cyclotomic_order = 1;
    spec.rank = 2;
    spec.generators.push_back(Matrix::from_rows({{Cyclo(-1), Cyclo(1)}, {Cyclo(0), Cyclo(1)}}));
    spec.generators.push_back(Matrix::from_rows({{Cyclo(1), Cyclo(0)}, {Cyclo(1), Cyclo(-1)}}));
    spec.degrees = std::vector<int>{2, 3};
  } else if (name.rfind("minus-id:", 0) == 0) {
    const int r = parse_suffix(name, "minus-id:");
    if (r < 1) throw InvalidInput("rank must be positive");
    spec.cyclotomic_order = 1;
    spec.rank = r;
    spec.generators.push_back(diagonal(std::vector<Cyclo>(r, Cyclo(-1))));
    if (r == 1) spec.degrees = std::vector<int>{2};
  } else if (name.rfind("trivial:", 0) == 0) {
    const int r = parse_suffix(name, "trivial:");
    if (r < 1) throw InvalidInput("rank must be positive");
    spec.cyclotomic_order = 1;
    spec.rank = r;
  } else {
    throw InvalidInput("unknown group family '" + name + "'");
  }
  return spec;
}

ReflectionGroup ReflectionGroup::close(const GroupSpec& spec, std::size_t cap) {
  if (spec.rank < 1) throw InvalidInput("group rank must be at least 1");
  std::vector<Matrix> gens;
  for (const auto& g : spec.generators) {
    if (g.rows() != static_cast<std::size_t>(spec.rank) || g.cols() != static_cast<std::size_t>(spec.rank))
      throw InvalidInput("generator has the wrong size for rank " + std::to_string(spec.rank));
    if (g.determinant().is_zero()) throw InvalidInput("generator matrix is not invertible");
    gens.push_back(g.embed(spec.cyclotomic_order));
  }
  ReflectionGroup group;
  group.spec_ = spec;
  group.spec_.generators = gens;
  group.elements_.push_back(Matrix::identity(spec.rank).embed(spec.cyclotomic_order));
  group.parent_.push_back(0);
  group.via_.push_back(0);
  group.lookup_.emplace(group.elements_[0].key(), 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Matrix next = group.elements_[cur] * gens[k];
      const std::string key = next.key();
      if (group.lookup_.count(key)) continue;
      if (group.elements_.size() >= cap) {
        throw BudgetExceeded("group closure exceeds the cap of " + std::to_string(cap) + " elements");
      }
      group.lookup_.emplace(key, group.elements_.size());
      group.elements_.push_back(std::move(next));
      group.parent_.push_back(cur);
      group.via_.push_back(k);
      queue.push_back(group.elements_.size() - 1);
    }
  }
  for (const auto& g : gens) group.generator_index_.push_back(group.lookup_.at(g.key()));
  group.build_tables();
  return group;
}

void ReflectionGroup::build_tables() {
  const std::size_t n = elements_.size();
  table_.assign(n * n, 0);
  inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto it = lookup_.find((elements_[a] * elements_[b]).key());
      if (it == lookup_.end()) throw InternalInconsistency("group element set is not closed");
      table_[a * n + b] = it->second;
      if (it->second == 0) inverse_[a] = b;
    }
  }
  dual_elements_.clear();
  for (std::size_t g = 0; g < n; ++g) dual_elements_.push_back(elements_[inverse_[g]].transpose());
}

std::optional<std::size_t> ReflectionGroup::find(const Matrix& m) const {
  auto it = lookup_.find(m.embed(spec_.cyclotomic_order).key());
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t ReflectionGroup::element_order(std::size_t g) const {
  std::size_t k = 1;
  for (std::size_t p = g; p != 0; p = multiply(p, g)) ++k;
  return g == 0 ? 1 : k;
}

bool ReflectionGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = a + 1; b < order(); ++b)
      if (multiply(a, b) != multiply(b, a)) return false;
  return true;
}

ReflectionGroup ReflectionGroup::from_elements(GroupSpec spec, std::vector<Matrix> elements,
                                               const ReflectionGroup* layout) {
  ReflectionGroup group;
  group.spec_ = std::move(spec);
  group.elements_ = std::move(elements);
  for (std::size_t i = 0; i < group.elements_.size(); ++i) group.lookup_.emplace(group.elements_[i].key(), i);
  if (group.lookup_.size() != group.elements_.size()) {
    throw InvalidInput("distinct group elements act identically; only the matrix image is supported");
  }
  group.parent_ = layout->parent_;
  group.via_ = layout->via_;
  group.generator_index_ = layout->generator_index_;
  group.build_tables();
  return group;
}

ReflectionGroup ReflectionGroup::dual() const {
  GroupSpec spec = spec_;
  spec.name = spec_.name + "^*";
  spec.generators.clear();
  for (auto idx : generator_index_) spec.generators.push_back(dual_elements_[idx]);
  return from_elements(spec, dual_elements_, this);
}

ReflectionGroup ReflectionGroup::extended_trivially(int extra_rank) const {
  if (extra_rank < 0) throw InvalidInput("negative rank");
  const std::size_t r = spec_.rank;
  auto extend = [&](const Matrix& g) {
    Matrix out = Matrix::identity(r + extra_rank).embed(spec_.cyclotomic_order);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) out(i, j) = g(i, j);
    return out;
  };
  GroupSpec spec = spec_;
  spec.name = spec_.name + "+trivial:" + std::to_string(extra_rank);
  spec.rank = spec_.rank + extra_rank;
  spec.generators.clear();
  for (const auto& g : spec_.generators) spec.generators.push_back(extend(g));
  if (spec.degrees) spec.degrees->insert(spec.degrees->end(), extra_rank, 1);
  std::vector<Matrix> elements;
  for (const auto& g : elements_) elements.push_back(extend(g));
  return from_elements(spec, std::move(elements), this);
}

std::vector<ReflectionDatum> find_reflections(const ReflectionGroup& group) {
  std::vector<ReflectionDatum> out;
  const std::size_t r = group.rank();
  for (std::size_t g = 1; g < group.order(); ++g) {
    const Matrix a = fixed_equations(group.element(g));
    if (a.rank() != 1) continue;
    ReflectionDatum d;
    d.element = g;
    // alpha spans the row space of (s - 1), alpha_check its column space.
    std::size_t row = 0;
    while (row < r) {
      bool nonzero = false;
      for (std::size_t j = 0; j < r; ++j) nonzero = nonzero || !a(row, j).is_zero();
      if (nonzero) break;
      ++row;
    }
    d.alpha.resize(r);
    for (std::size_t j = 0; j < r; ++j) d.alpha[j] = a(row, j);
    std::size_t lead = 0;
    while (d.alpha[lead].is_zero()) ++lead;
    const Cyclo inv = d.alpha[lead].inverse();
    for (auto& c : d.alpha) c *= inv;
    std::size_t col = 0;
    while (a(row, col).is_zero()) ++col;
    d.alpha_check.resize(r);
    for (std::size_t i = 0; i < r; ++i) d.alpha_check[i] = a(i, col);
    Cyclo pairing;
    for (std::size_t i = 0; i < r; ++i) pairing += d.alpha[i] * d.alpha_check[i];
    if (pairing.is_zero()) throw InvalidInput("element " + std::to_string(g) + " is a non-diagonalizable transvection");
    const Cyclo scale = Cyclo(2) / pairing;
    for (auto& c : d.alpha_check) c *= scale;
    // s.alpha = alpha o s^{-1}, i.e. the row vector alpha * S^{-1}.
    const Matrix& sinv = group.element(group.inverse(g));
    Cyclo image;
    for (std::size_t i = 0; i < r; ++i) image += d.alpha[i] * sinv(i, lead);
    d.lambda = image;
    out.push_back(std::move(d));
  }
  // Conjugacy classes among reflections, numbered by first occurrence.
  std::map<std::size_t, int> class_of;
  int next = 0;
  for (const auto& d : out) {
    if (class_of.count(d.element)) continue;
    for (std::size_t h = 0; h < group.order(); ++h) class_of.emplace(group.conjugate(h, d.element), next);
    ++next;
  }
  for (auto& d : out) d.class_id = class_of.at(d.element);
  return out;
}

std::vector<std::vector<Cyclo>> fixed_space(const ReflectionGroup& group, const std::vector<std::size_t>& subgroup) {
  const std::size_t r = group.rank();
  Matrix eq(0, r);
  for (auto g : subgroup) eq = canonical_equations(stack(eq, fixed_equations(group.element(g))));
  if (eq.rows() == 0) {
    std::vector<std::vector<Cyclo>> basis;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<Cyclo> v(r);
      v[i] = Cyclo(1);
      basis.push_back(std::move(v));
    }
    return basis;
  }
  return eq.nullspace();
}

std::vector<std::size_t> pointwise_stabilizer(const ReflectionGroup& group,
                                              const std::vector<std::vector<Cyclo>>& basis) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < group.order(); ++g)
    if (fixes_pointwise(group.element(g), basis)) out.push_back(g);
  return out;
}

std::vector<ParabolicClass> parabolic_classes(const ReflectionGroup& group, std::size_t budget) {
  const std::size_t r = group.rank();
  // Intersection lattice of fixed spaces, as canonical equation matrices.
  std::map<std::string, Matrix> spaces;
  std::vector<Matrix> frontier;
  for (std::size_t g = 0; g < group.order(); ++g) {
    Matrix eq = canonical_equations(fixed_equations(group.element(g)));
    if (spaces.emplace(eq.key() + "#" + std::to_string(eq.rows()), eq).second) frontier.push_back(eq);
  }
  std::vector<Matrix> all = frontier;
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& a : frontier) {
      for (const auto& b : all) {
        Matrix eq = canonical_equations(stack(a, b));
        if (spaces.emplace(eq.key() + "#" + std::to_string(eq.rows()), eq).second) {
          next.push_back(eq);
          if (spaces.size() > budget) {
            throw BudgetExceeded("parabolic subgroup enumeration exceeds the budget of " + std::to_string(budget));
          }
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  std::set<std::vector<std::size_t>> subgroups;
  for (const auto& [key, eq] : spaces) {
    std::vector<std::vector<Cyclo>> basis;
    if (eq.rows() == 0) {
      basis = fixed_space(group, {0});
    } else {
      basis = eq.nullspace();
    }
    subgroups.insert(pointwise_stabilizer(group, basis));
  }

  std::vector<ParabolicClass> out;
  std::set<std::vector<std::size_t>> seen;
  for (const auto& h : subgroups) {
    if (seen.count(h)) continue;
    std::set<std::vector<std::size_t>> conjugates;
    for (std::size_t g = 0; g < group.order(); ++g) {
      std::vector<std::size_t> c;
      for (auto x : h) c.push_back(group.conjugate(g, x));
      std::sort(c.begin(), c.end());
      conjugates.insert(std::move(c));
    }
    seen.insert(conjugates.begin(), conjugates.end());
    ParabolicClass pc;
    pc.subgroup = *conjugates.begin();
    pc.class_size = conjugates.size();
    pc.normalizer_order = group.order() / pc.class_size;
    pc.fixed_space_basis = fixed_space(group, pc.subgroup);
    pc.fixed_space_dim = static_cast<int>(pc.fixed_space_basis.size());
    pc.leaf_dim = 2 * pc.fixed_space_dim;
    if (pointwise_stabilizer(group, pc.fixed_space_basis) != pc.subgroup) {
      throw InternalInconsistency("parabolic representative is not the stabilizer of its fixed space");
    }
    out.push_back(std::move(pc));
  }
  std::sort(out.begin(), out.end(), [](const ParabolicClass& a, const ParabolicClass& b) {
    if (a.fixed_space_dim != b.fixed_space_dim) return a.fixed_space_dim > b.fixed_space_dim;
    return a.subgroup < b.subgroup;
  });
  (void)r;
  return out;
}

Character character_from_generators(const ReflectionGroup& group, const std::vector<Cyclo>& images) {
  if (images.size() != group.generator_indices().size()) {
    throw InvalidInput("character needs one value per group generator");
  }
  Character chi(group.order());
  chi[0] = Cyclo(Rational(1), group.cyclotomic_order());
  for (std::size_t g = 1; g < group.order(); ++g) chi[g] = chi[group.parent(g)] * images[group.generator_used(g)];
  for (std::size_t a = 0; a < group.order(); ++a)
    for (std::size_t b = 0; b < group.order(); ++b)
      if (chi[group.multiply(a, b)] != chi[a] * chi[b]) throw InvalidInput("values do not define a character of W");
  return chi;
}

Character determinant_character(const ReflectionGroup& group, long power) {
  std::vector<Cyclo> images;
  for (auto idx : group.generator_indices()) images.push_back(group.element(idx).determinant().pow(power));
  return character_from_generators(group, images);
}

std::vector<Character> linear_characters(const ReflectionGroup& group) {
  const int n = group.cyclotomic_order();
  const auto& gens = group.generator_indices();
  std::vector<std::vector<Cyclo>> candidates;
  for (auto idx : gens) {
    const long ord = static_cast<long>(group.element_order(idx));
    std::vector<Cyclo> vals;
    for (int sign : {1, -1}) {
      for (int k = 0; k < n; ++k) {
        Cyclo v = Cyclo::root(n, k) * Cyclo(sign);
        if (!v.pow(ord).is_one()) continue;
        if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
      }
    }
    candidates.push_back(std::move(vals));
  }
  std::vector<Character> out;
  std::vector<std::size_t> pick(gens.size(), 0);
  while (true) {
    std::vector<Cyclo> images;
    for (std::size_t i = 0; i < gens.size(); ++i) images.push_back(candidates[i][pick[i]]);
    try {
      Character chi = character_from_generators(group, images);
      if (std::find(out.begin(), out.end(), chi) == out.end()) out.push_back(std::move(chi));
    } catch (const InvalidInput&) {
    }
    std::size_t i = 0;
    while (i < gens.size() && ++pick[i] == candidates[i].size()) pick[i++] = 0;
    if (i == gens.size()) break;
  }
  return out;
}

}  // namespace cherednik
