#pragma once

namespace bor::detail {

struct AlpertTable {
  int order;
  int nodes;    // correction nodes per side
  int exclude;  // trapezoid points skipped per side (including none at the singularity)
  const double* x;
  const double* w;
};

const AlpertTable* alpert_table(int order);

}  // namespace bor::detail
