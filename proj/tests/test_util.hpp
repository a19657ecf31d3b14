#pragma once

#include "frob/manifest.hpp"

#include <string>

inline std::string manifest_file(const std::string& name) {
    return frob::manifest_dir_default() + "/" + name + ".json";
}

inline frob::Manifest load_example(const std::string& name) {
    return frob::Manifest::load_file(manifest_file(name));
}
