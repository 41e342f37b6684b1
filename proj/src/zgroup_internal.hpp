// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "saturator/zgroup.hpp"

namespace saturator::detail {

nlohmann::json profile_to_json(const ResidueProfile& p);
ResidueProfile profile_from_json(const nlohmann::json& j, const std::string& pointer);

const nlohmann::json& json_field(const nlohmann::json& j, const char* key, const std::string& ptr);
std::string json_string(const nlohmann::json& j, const char* key, const std::string& ptr);
Integer json_integer(const nlohmann::json& j, const char* key, const std::string& ptr,
                     std::optional<Integer> fallback = std::nullopt);
Rational json_rational(const nlohmann::json& j, const char* key, const std::string& ptr);

}  // namespace saturator::detail
