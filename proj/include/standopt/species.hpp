#pragma once

#include <array>
#include <string>

#include "standopt/errors.hpp"

namespace standopt {

enum class Species : int { spruce = 0, pine = 1, birch = 2 };

inline constexpr int kSpeciesCount = 3;

inline constexpr std::array<Species, kSpeciesCount> all_species{
    Species::spruce, Species::pine, Species::birch};

inline const char* species_name(Species s) {
    switch (s) {
        case Species::spruce: return "spruce";
        case Species::pine: return "pine";
        case Species::birch: return "birch";
    }
    return "?";
}

inline Species species_from_name(const std::string& name) {
    for (Species s : all_species)
        if (name == species_name(s)) return s;
    throw config_error("unknown species '" + name + "' (expected spruce, pine or birch)");
}

inline int species_index(Species s) { return static_cast<int>(s); }

} // namespace standopt
