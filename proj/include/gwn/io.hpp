#pragma once

#include <string>

#include "gwn/sym_tensor.hpp"
#include "gwn/wick.hpp"

namespace gwn {

// Tensors serialize as objects keyed by the sorted multi-index ("0,0,2"; "" for degree 0).
// Functionals: {"basis": "monomial"|"wick", "atoms": m, "kernels": [tensor_0, tensor_1, ...]}.
// Missing keys read as zero; keys may list indices in any order.
std::string tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const std::string& text, int atoms, int degree);

std::string functional_to_json(const PolyFunctional& p);
PolyFunctional functional_from_json(const std::string& text);
PolyFunctional functional_from_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace gwn
