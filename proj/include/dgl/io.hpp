#pragma once

// JSON forms of tensors and rationals.

#include "dgl/tensor.hpp"

#include <json.hpp>

namespace dgl {

using json = nlohmann::json;

json letter_to_json(Letter c);  // index set, e.g. [1,2]
Letter letter_from_json(const json& j);
json word_to_json(Word w);
Word word_from_json(const json& j);

json tensor_to_json(const Tensor& t);
json tensor_to_json(const RealTensor& t);
Tensor tensor_from_json(const json& j);

json rational_to_json(const Rational& q);  // "num/den"
Rational rational_from_json(const json& j);

}  // namespace dgl
