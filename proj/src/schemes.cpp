#include "gpmood/schemes.hpp"

#include <stdexcept>

namespace gpmood {

std::vector<SchemeId> cascade_ladder(MethodId m) {
    switch (m) {
        case MethodId::gp_mood7: return {SchemeId::gp_r3, SchemeId::gp_r1, SchemeId::fog};
        case MethodId::gp_mood5: return {SchemeId::gp_r2, SchemeId::gp_r1, SchemeId::fog};
        case MethodId::gp_mood3: return {SchemeId::gp_r1, SchemeId::fog};
        case MethodId::pol_mood3: return {SchemeId::poly3, SchemeId::fog};
        case MethodId::fog: return {SchemeId::fog};
    }
    throw std::invalid_argument("unknown method");
}

MethodId method_from_string(const std::string& name) {
    if (name == "gp-mood3") return MethodId::gp_mood3;
    if (name == "gp-mood5") return MethodId::gp_mood5;
    if (name == "gp-mood7") return MethodId::gp_mood7;
    if (name == "pol-mood3") return MethodId::pol_mood3;
    if (name == "fog") return MethodId::fog;
    throw std::invalid_argument("unknown method: " + name);
}

const char* method_name(MethodId m) {
    switch (m) {
        case MethodId::gp_mood3: return "gp-mood3";
        case MethodId::gp_mood5: return "gp-mood5";
        case MethodId::gp_mood7: return "gp-mood7";
        case MethodId::pol_mood3: return "pol-mood3";
        case MethodId::fog: return "fog";
    }
    return "?";
}

}  // namespace gpmood
