#pragma once

#include <string>
#include <vector>

namespace semcomm {

/// "%.10g" rendering; enough digits for stable diffing, no locale
/// surprises. All CSV output funnels through this.
std::string format_number(double v);
std::string format_number(long v);

std::string csv_row(const std::vector<std::string>& fields);

}  // namespace semcomm
