#pragma once

// Shipped experiment presets: each preset is a bundle of config defaults that
// the CLI merges below the user's config file and --set overrides.

#include <map>
#include <string>
#include <vector>

namespace surfhps {

struct Preset {
    std::string name;
    std::string summary;
    std::map<std::string, std::string> defaults;
};

const std::vector<Preset>& all_presets();
const Preset* find_preset(const std::string& name);

}  // namespace surfhps
