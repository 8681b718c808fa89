#pragma once

#include <nlohmann/json.hpp>

#include "zp2/dvr.hpp"
#include "zp2/fiber.hpp"
#include "zp2/hopf.hpp"
#include "zp2/models.hpp"
#include "zp2/poly.hpp"
#include "zp2/witt.hpp"

namespace zp2::io {

using json = nlohmann::json;

// {"p", "M", "digits": [decimal strings mod p^M], "prec"}
json to_json(const RingElement& x);
RingElement ring_element_from_json(const json& j);

json to_json(const WittVector& w);

// [{"exp": [...], "coeff": RingElement}]
json to_json(const Poly& f, int num_vars);

// {"p", "M", "m", "n", "a_digits": [pi-adic digits], "j"}
json to_json(const ModelDescriptor& d);
ModelDescriptor descriptor_from_json(const json& j);

// {"tag": ..., tag-specific fields}
json to_json(const FiberClass& c);
FiberClass fiber_class_from_json(const json& j);

json to_json(const PhiElement& x);
json to_json(const HomClass& h);
json to_json(const HopfReport& r);
// {"base", "generators", "relations", "comult", "counit", "antipode", "units"}
json to_json(const HopfPresentation& H);

}  // namespace zp2::io
