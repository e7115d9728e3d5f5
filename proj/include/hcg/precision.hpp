#ifndef HCG_PRECISION_HPP
#define HCG_PRECISION_HPP

namespace hcg {

// Numeric kernels run in binary64 by default; HCG_PRECISION=extended selects
// long-double internals. Exact (rational/cyclotomic) arithmetic is unaffected.
enum class Precision { F64, Extended };

Precision precision_mode();

} // namespace hcg

#endif
