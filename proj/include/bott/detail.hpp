#pragma once

#include "bott/rational.hpp"

namespace bott::detail {

// Unqualified call site so that class members named is_zero do not hide the
// free overloads.
template <class T>
bool iz(const T& x) { return is_zero(x); }

}  // namespace bott::detail
