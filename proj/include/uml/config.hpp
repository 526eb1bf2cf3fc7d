#ifndef UML_CONFIG_HPP
#define UML_CONFIG_HPP

#include <cstdlib>
#include <string>

namespace uml {

// runtime-tunable limits, read once per query
inline long env_long(const char* name, long dflt) {
    const char* v = std::getenv(name);
    if (!v || !*v) return dflt;
    char* end = nullptr;
    long x = std::strtol(v, &end, 10);
    if (end == v || *end) return dflt;
    return x;
}

inline long max_dim() { return env_long("UML_MAX_DIM", 8); }
inline long default_grid_level() { return env_long("UML_DEFAULT_GRID_LEVEL", 3); }

// reading of the two-argument valuation ord(y ? xi): quotient (default) or product
enum class OrdReading { Quotient, Product };

inline const char* reading_name(OrdReading r) {
    return r == OrdReading::Quotient ? "quotient" : "product";
}

} // namespace uml

#endif
