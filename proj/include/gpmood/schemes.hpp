#pragma once

#include <string>
#include <vector>

namespace gpmood {

enum class SchemeId { fog, gp_r1, gp_r2, gp_r3, poly3 };

inline int scheme_formal_order(SchemeId s) {
    switch (s) {
        case SchemeId::fog: return 1;
        case SchemeId::gp_r1: return 3;
        case SchemeId::gp_r2: return 5;
        case SchemeId::gp_r3: return 7;
        case SchemeId::poly3: return 3;
    }
    return 0;
}

inline int scheme_radius(SchemeId s) {
    switch (s) {
        case SchemeId::fog: return 0;
        case SchemeId::gp_r1: return 1;
        case SchemeId::gp_r2: return 2;
        case SchemeId::gp_r3: return 3;
        case SchemeId::poly3: return 1;
    }
    return 0;
}

// Face quadrature paired with each scheme (2D); in 1D a face is a point.
inline int scheme_default_q(SchemeId s, int ndim) {
    if (ndim == 1) return 1;
    switch (s) {
        case SchemeId::fog: return 1;
        case SchemeId::gp_r1: return 2;
        case SchemeId::gp_r2: return 3;
        case SchemeId::gp_r3: return 4;
        case SchemeId::poly3: return 2;
    }
    return 1;
}

inline const char* scheme_name(SchemeId s) {
    switch (s) {
        case SchemeId::fog: return "fog";
        case SchemeId::gp_r1: return "gp-r1";
        case SchemeId::gp_r2: return "gp-r2";
        case SchemeId::gp_r3: return "gp-r3";
        case SchemeId::poly3: return "poly3";
    }
    return "?";
}

enum class MethodId { gp_mood3, gp_mood5, gp_mood7, pol_mood3, fog };

// Cascade ladder, highest order first; the last entry is always the safe
// first-order scheme.
std::vector<SchemeId> cascade_ladder(MethodId m);

MethodId method_from_string(const std::string& name);
const char* method_name(MethodId m);

}  // namespace gpmood
