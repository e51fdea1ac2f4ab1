#ifndef TQLAB_REPORT_HPP
#define TQLAB_REPORT_HPP

#include <string>

#include <json.hpp>

#include "tqlab/complex_poly.hpp"
#include "tqlab/tq_engine.hpp"
#include "tqlab/types.hpp"

namespace tqlab {

using Json = nlohmann::json;

// Parses complex literals of the forms "1.5", "-0.69315i", "1.2+0.5i",
// "1.2-0.5i", "i", "-i". Throws std::invalid_argument on malformed input.
Cplx parse_complex(const std::string& text);

// Round-trips through parse_complex.
std::string format_complex(Cplx z);

// Fixed tabular format: a+bi / a-bi with 5 decimals.
std::string format_complex_table(Cplx z);

Json complex_to_json(Cplx z);
Json poly_to_json(const ComplexPoly& p);
Json roots_to_json(const BetheRootSet& r);

// Canonical serialization: sorted keys, fixed indentation, trailing newline.
std::string canonical_dump(const Json& j);

}  // namespace tqlab

#endif
