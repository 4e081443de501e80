#ifndef ITERSTBC_FORMAT_HPP
#define ITERSTBC_FORMAT_HPP

#include <sstream>
#include <string>

#include "iterstbc/iterated_algebra.hpp"

namespace iterstbc {

inline std::string to_string(const CycloElement& a) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        if (i) os << ",";
        os << rat_to_string(a.coeffs()[i]);
    }
    os << "]";
    return os.str();
}

inline std::string to_string(const DElement& x) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < x.coords().size(); ++i) {
        if (i) os << "; ";
        os << to_string(x.coords()[i]);
    }
    os << ")";
    return os.str();
}

inline std::string to_string(const AElement& x) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < x.coords().size(); ++i) {
        if (i) os << " | ";
        os << to_string(x.coords()[i]);
    }
    os << "}";
    return os.str();
}

}  // namespace iterstbc

#endif
