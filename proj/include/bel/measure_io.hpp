#pragma once

#include <string>

#include "bel/measure.hpp"

namespace bel {

// Measure JSON, one object per file:
//   {"type":"atomic","atoms":[[x,w],...]}
//   {"type":"grid","x0":f,"dx":f,"values":[...]}
//   {"type":"empirical","points":[...]}
// Unknown keys (e.g. a "meta" block added by the CLI) are ignored on read.
Measure measure_from_json(const std::string& text);
std::string measure_to_json(const Measure& m);

Measure load_measure(const std::string& path);

// Lenient atomic parse for submeasures: weights are kept as given and must
// sum to a mass in [0,1].
SubMeasure submeasure_from_json(const std::string& text);

}  // namespace bel
