#include "onto/diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace onto {

std::string_view to_string(Severity s) {
    return s == Severity::error ? "error" : "warning";
}

bool operator==(const Violation& a, const Violation& b) {
    return a.code == b.code && a.severity == b.severity && a.subjects == b.subjects &&
           a.message == b.message && a.witness == b.witness;
}

void sort_canonical(std::vector<Violation>& violations) {
    std::stable_sort(violations.begin(), violations.end(),
                     [](const Violation& a, const Violation& b) {
                         return std::tie(a.code, a.subjects, a.message) <
                                std::tie(b.code, b.subjects, b.message);
                     });
}

}  // namespace onto
