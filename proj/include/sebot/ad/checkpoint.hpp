#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "sebot/ad/param_store.hpp"

namespace sebot::ad {

struct Checkpoint {
    std::map<std::string, Matrix> params;
    nlohmann::json manifest;
};

/// Writes `<stem>.bin` (magic, then name / shape / values per parameter) and
/// `<stem>.json` (names, shapes, config hash, extra metadata).
void save_checkpoint(const std::filesystem::path& stem, const ParamStore& store, const std::string& config_hash,
                     const nlohmann::json& extra = nlohmann::json::object());

/// Reads both files and cross-checks names and shapes between them.
Checkpoint load_checkpoint(const std::filesystem::path& stem);

/// Copies checkpoint values into an already-built store. Throws when a name
/// is missing on either side or a shape differs.
void apply_checkpoint(const Checkpoint& ckpt, ParamStore& store);

}  // namespace sebot::ad
