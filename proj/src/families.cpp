#include "horadam/identities.hpp"

namespace horadam {

const std::vector<ParameterFamily>& builtin_families() {
    static const std::vector<ParameterFamily> families = {
        {"fibonacci", HoradamParams::fibonacci()},
        {"lucas", HoradamParams::lucas()},
        {"gibonacci-3-1", HoradamParams(3, 1, 1, -1)},
        {"gibonacci-m1-2", HoradamParams(-1, 2, 1, -1)},
        {"integer-roots", HoradamParams(1, 3, 3, 2)},
        {"negative-d", HoradamParams(1, 2, 1, 1)},
        {"generic", HoradamParams(2, 5, 1, 3)},
        {"rational", HoradamParams(1, Rational(1, 3), Rational(1, 2), Rational(-3, 4))},
    };
    return families;
}

std::optional<ParameterFamily> find_family(std::string_view name) {
    for (const auto& f : builtin_families()) {
        if (f.name == name) return f;
    }
    return std::nullopt;
}

std::vector<ParameterFamily> compatible_families(IdentityId id) {
    std::vector<ParameterFamily> out;
    for (const auto& f : builtin_families()) {
        if (family_satisfies(id, f.params)) out.push_back(f);
    }
    return out;
}

}  // namespace horadam
