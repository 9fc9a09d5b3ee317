#pragma once

#include <complex>
#include <string>

#include "json.hpp"

namespace okalab {

using ojson = nlohmann::ordered_json;

/// 17 significant digits; integral results keep a trailing ".0".
std::string format_double(double x);

/// Compact JSON with insertion-ordered keys and format_double for floats.
std::string dump_json(const ojson& doc);

inline ojson complex_json(std::complex<double> z) { return ojson::array({z.real(), z.imag()}); }

}  // namespace okalab
