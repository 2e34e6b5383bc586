#pragma once

#include <string_view>

namespace ivpp::data {

/// Contents of data/varieties.json as shipped with the build.
std::string_view varieties_json();
/// Contents of data/fixtures.json as shipped with the build.
std::string_view fixtures_json();

}  // namespace ivpp::data
