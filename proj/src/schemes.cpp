#include "movers/schemes.hpp"

namespace movers {

std::string_view to_string(SchemeId id) {
    switch (id) {
        case SchemeId::Llf:
            return "llf";
        case SchemeId::MoversN:
            return "movers-n";
        case SchemeId::MoversE:
            return "movers-e";
        case SchemeId::MoversL:
            return "movers-l";
        case SchemeId::MoversLE:
            return "movers-le";
    }
    return "llf";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
    for (SchemeId id : kAllSchemes) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

}  // namespace movers
