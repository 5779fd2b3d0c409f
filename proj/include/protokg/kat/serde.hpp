#pragma once

#include "protokg/kat/kat.hpp"

#include <nlohmann/json.hpp>

namespace protokg::kat {

// JSON forms shared by record files and test-set files.
nlohmann::json instance_to_json(const KatInstance& instance);
KatInstance instance_from_json(const nlohmann::json& j);

} // namespace protokg::kat
