#pragma once

// Number formatting shared by the CSV and JSON writers.

#include <string>
#include <string_view>

#include "multipole/angular.hpp"

namespace multipole {

/// 17 significant digits, shortest "%g" form.
std::string format_real(double x);

/// "re+imj" / "re-imj", each part with 17 significant digits.
std::string format_complex(cdouble z);

/// Accepts "1.5", "-2j", "0.5+1e-3j", "3-4j" (a trailing 'i' is accepted too).
/// Throws InputError on malformed text.
cdouble parse_complex(std::string_view text);

double parse_real(std::string_view text);
int parse_int(std::string_view text);

}  // namespace multipole
