#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "siegel/algebra.hpp"

namespace siegel::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::ordered_json rational_to_json(const QsRational& r);
// Inverse of rational_to_json; throws std::invalid_argument on malformed input.
QsRational rational_from_json(const nlohmann::ordered_json& j, int eps);

}  // namespace siegel::cli
