#pragma once

#include <fstream>
#include <string>

#include "lym/json_io.hpp"

namespace support {

inline lym::Family load_family(const std::string& relative) {
    std::ifstream in(std::string(LYM_SOURCE_DIR) + "/" + relative);
    if (!in) throw std::runtime_error("cannot open " + relative);
    return lym::family_from_json(lym::Json::parse(in));
}

inline lym::Family remark24() { return load_family("fixtures/remark24.json"); }

inline lym::FamilyTuple subsets(const lym::LatticeCtx& ctx, std::initializer_list<std::vector<unsigned>> parts) {
    lym::FamilyTuple t;
    for (const auto& p : parts) t.elems.push_back(lym::make_subset(ctx, p));
    return t;
}

} // namespace support
