#pragma once

#include <filesystem>
#include <string>

#include "asym/rabi_profile.hpp"

namespace asym {

/// Profile file schema:
///   {"terms": [{"re": .., "im": .., "center_over_d": .., "w_over_d": ..}, ...],
///    "tau_delta": .., "tau_gamma": .., "d_meters": optional}
/// Throws ProfileFormatError on any schema violation.
RabiProfile parse_profile(const std::string& text);
RabiProfile load_profile(const std::filesystem::path& path);

std::string dump_profile(const RabiProfile& profile);
void save_profile(const std::filesystem::path& path, const RabiProfile& profile);

}  // namespace asym
