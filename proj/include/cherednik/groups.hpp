#pragma once

// Finite matrix groups W in GL_r(Q(zeta_N)) acting on h = C^r, their
// reflections with normalized eigendata, and parabolic subgroup classes.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cherednik/linalg.hpp"

namespace cherednik {

struct GroupSpec {
  std::string name;
  int cyclotomic_order = 1;
  int rank = 1;
  std::vector<Matrix> generators;
  // Degrees of the basic invariants, when W is a real reflection group.
  std::optional<std::vector<int>> degrees;
};

// Built-in families: "cyclic:m", "s3-reflection", "minus-id:r", "trivial:r".
GroupSpec builtin_group(const std::string& name);

class ReflectionGroup {
 public:
  static constexpr std::size_t default_cap = 2000;

  // Enumerates the matrix group generated by spec.generators; identity at index 0.
  static ReflectionGroup close(const GroupSpec& spec, std::size_t cap = default_cap);

  const GroupSpec& spec() const noexcept { return spec_; }
  std::size_t order() const noexcept { return elements_.size(); }
  int rank() const noexcept { return spec_.rank; }
  int cyclotomic_order() const noexcept { return spec_.cyclotomic_order; }

  // Matrix of g on h (columns are images of the basis y_j).
  const Matrix& element(std::size_t g) const { return elements_.at(g); }
  // Matrix of g on h* in the dual basis x_j: column j holds g.x_j = x_j o g^{-1}.
  const Matrix& dual_element(std::size_t g) const { return dual_elements_.at(g); }

  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }
  std::size_t conjugate(std::size_t g, std::size_t s) const { return multiply(multiply(g, s), inverse(g)); }
  std::optional<std::size_t> find(const Matrix& m) const;
  std::size_t element_order(std::size_t g) const;
  bool is_abelian() const;

  // BFS tree: element g = parent(g) * generator(generator_used(g)), for g != 0.
  std::size_t parent(std::size_t g) const { return parent_.at(g); }
  std::size_t generator_used(std::size_t g) const { return via_.at(g); }
  const std::vector<std::size_t>& generator_indices() const noexcept { return generator_index_; }

  // Same abstract group acting on h* (contragredient), same element indices.
  ReflectionGroup dual() const;
  // Same abstract group acting on h (+) C^extra, trivially on the new summand.
  ReflectionGroup extended_trivially(int extra_rank) const;

 private:
  static ReflectionGroup from_elements(GroupSpec spec, std::vector<Matrix> elements,
                                       const ReflectionGroup* layout);
  void build_tables();

  GroupSpec spec_;
  std::vector<Matrix> elements_;
  std::vector<Matrix> dual_elements_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> via_;
  std::vector<std::size_t> generator_index_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

struct ReflectionDatum {
  std::size_t element = 0;
  std::vector<Cyclo> alpha;        // covector in h*, coordinates in the x-basis
  std::vector<Cyclo> alpha_check;  // vector in h, coordinates in the y-basis
  Cyclo lambda;                    // eigenvalue of s on alpha (action on h*)
  int class_id = 0;
};

// Elements s != 1 fixing a hyperplane of h pointwise, with alpha scaled so its
// first nonzero coordinate is 1 and <alpha, alpha_check> = 2.
std::vector<ReflectionDatum> find_reflections(const ReflectionGroup& group);

struct ParabolicClass {
  std::vector<std::size_t> subgroup;  // sorted element indices of the representative
  std::size_t class_size = 0;         // number of conjugates
  std::size_t normalizer_order = 0;
  int fixed_space_dim = 0;            // dim h^{W'}
  int leaf_dim = 0;                   // dim (h + h*)^{W'} = 2 dim h^{W'}
  std::vector<std::vector<Cyclo>> fixed_space_basis;
};

// Pointwise stabilizers of the intersections of fixed spaces, grouped into
// W-conjugacy classes, ordered by decreasing fixed-space dimension.
std::vector<ParabolicClass> parabolic_classes(const ReflectionGroup& group, std::size_t budget = 4096);

// Pointwise stabilizer of span(basis).
std::vector<std::size_t> pointwise_stabilizer(const ReflectionGroup& group,
                                              const std::vector<std::vector<Cyclo>>& basis);
// Basis of h^{H} for the subgroup H.
std::vector<std::vector<Cyclo>> fixed_space(const ReflectionGroup& group, const std::vector<std::size_t>& subgroup);

// One-dimensional characters chi : W -> Q(zeta_N)^*, indexed by element.
using Character = std::vector<Cyclo>;
// Extends generator images along the BFS tree; throws if not a homomorphism.
Character character_from_generators(const ReflectionGroup& group, const std::vector<Cyclo>& images);
Character determinant_character(const ReflectionGroup& group, long power = 1);
// All linear characters with values +-zeta_N^k, sorted deterministically.
std::vector<Character> linear_characters(const ReflectionGroup& group);

}  // namespace cherednik
