#include "onto/multiplicity.hpp"

namespace onto {

std::string Multiplicity::to_string() const {
    if (!max) {
        if (min == 0) return "*";
        return std::to_string(min) + "..*";
    }
    if (min == *max) return std::to_string(min);
    return std::to_string(min) + ".." + std::to_string(*max);
}

bool operator==(const Multiplicity& a, const Multiplicity& b) {
    return a.min == b.min && a.max == b.max;
}

}  // namespace onto
