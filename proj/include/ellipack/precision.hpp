#pragma once

#include "error.hpp"

#include <cstdlib>
#include <string>

namespace ellipack {

/// Interval evaluation starts at start_bits and doubles on Unknown until max_bits.
struct Precision {
    unsigned start_bits = 64;
    unsigned max_bits = 4096;

    /// Defaults, with ELLIPACK_MAX_PRECISION overriding the cap when set.
    static Precision from_env() {
        Precision p;
        if (const char* env = std::getenv("ELLIPACK_MAX_PRECISION"); env && *env) {
            try {
                auto v = std::stoul(env);
                if (v >= 8) p.max_bits = static_cast<unsigned>(v);
            } catch (const std::exception&) {
                throw error(errc::invalid_argument, std::string("ELLIPACK_MAX_PRECISION='") + env + "'");
            }
        }
        if (p.start_bits > p.max_bits) p.start_bits = p.max_bits;
        return p;
    }
};

} // namespace ellipack
