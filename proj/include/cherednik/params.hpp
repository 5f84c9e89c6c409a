#pragma once

// Regular parameters: the degree criterion for real reflection groups with a
// constant parameter, and a bounded singular-vector probe in rank one.

#include <optional>
#include <string>
#include <vector>

#include "cherednik/modules.hpp"
#include "cherednik/rank1.hpp"

namespace cherednik {

enum class Regularity { regular, regular_up_to_bound, not_regular, unknown };
std::string to_string(Regularity r);

struct RegularityVerdict {
  Regularity status = Regularity::unknown;
  std::string method;  // "degrees", "probe", "trivial", "restriction"
  std::optional<std::pair<Integer, int>> degree_witness;  // c = m / d with d not dividing m
  std::optional<SingularVector> singular_witness;
  std::optional<std::size_t> witness_character;
  int bound = 0;

  bool regular() const { return status == Regularity::regular || status == Regularity::regular_up_to_bound; }
};

RegularityVerdict is_regular_by_degrees(const std::vector<int>& degrees, const Rational& c);
// Singular vectors in every Verma module of a rank-1 context, up to `bound`.
RegularityVerdict regularity_probe(const ContextPtr& ctx, int bound);
// Probes H_c(Z/m) with c(s_i) = c_i.
RegularityVerdict regularity_probe_rank1(const CyclicDatum& datum, int bound);
// Best available verdict for a context: trivial cases, the probe in rank 1, the degree
// criterion for known degrees and constant rational c, restriction for W trivial on a summand.
RegularityVerdict establish_regularity(const AlgebraContext& ctx, int bound = 20);

}  // namespace cherednik
