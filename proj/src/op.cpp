#include "bott/op_impl.hpp"

namespace bott {

template class Op<Rational>;
template class Op<CircleScalar>;

template BlockView<Rational> block_view(const Op<Rational>&);
template BlockView<CircleScalar> block_view(const Op<CircleScalar>&);
template Op<Rational> assemble(const BlockView<Rational>&);
template Op<CircleScalar> assemble(const BlockView<CircleScalar>&);

}  // namespace bott
