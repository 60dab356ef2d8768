#pragma once

#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "omega.hpp"

namespace buchsbaum {
namespace report {

/* Key order in reports is insertion order, so dumps are reproducible. */
using json = nlohmann::ordered_json;

inline uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_of(const std::string& data) {
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setfill('0') << std::setw(16) << fnv1a64(data);
    return os.str();
}

inline json betti_json(const std::map<std::pair<int, int>, int>& b) {
    json arr = json::array();
    for (const auto& [ij, v] : b)
        arr.push_back({{"level", ij.first}, {"degree", ij.second}, {"count", v}});
    return arr;
}

inline json summands_json(const std::vector<OmegaSummand>& v) {
    json arr = json::array();
    for (const OmegaSummand& b : v) arr.push_back({{"p", b.p}, {"e", b.e}, {"s", b.s}});
    return arr;
}

inline json cohomology_json(const CohomologyTable& T) {
    json t;
    t["dim_x"] = T.dim_x();
    json entries = json::array();
    for (const auto& [it, h] : T.h)
        entries.push_back({{"i", it.first}, {"t", it.second}, {"h", h}});
    t["entries"] = entries;
    t["window_limited"] = false;  // finite rows carry their full support
    t["infinite_rows"] = T.infinite_rows;
    t["annihilated_rows"] = T.annihilated_rows;
    return t;
}

inline json omega_json(const OmegaResolution& o) {
    json j;
    j["n"] = o.n;
    j["c"] = o.c;
    j["minimal"] = o.minimal;
    json lv = json::array();
    for (const std::vector<int>& f : o.free_twists) lv.push_back(f);
    j["free_twists"] = lv;
    j["summands"] = summands_json(o.summands);
    return j;
}

inline json weak_json(const WeakOmegaResolution& w) {
    json j;
    j["n"] = w.n;
    j["c"] = w.c;
    j["s"] = w.s;
    j["v"] = w.v;
    j["minimal"] = w.minimal;
    json lv = json::array();
    for (const WeakLevel& l : w.levels)
        lv.push_back({{"free_twists", l.free_twists}, {"summands", summands_json(l.summands)}});
    j["levels"] = lv;
    return j;
}

/* symbolic failure probability of a missed isomorphism certificate */
inline std::string iso_error_bound(size_t rank, uint32_t p, int trials) {
    std::ostringstream os;
    os << "<= (" << 2 * rank << "/" << p << ")^" << trials;
    return os.str();
}

}  // namespace report
}  // namespace buchsbaum
