#include "okalab/emit.hpp"

#include <cmath>
#include <cstdio>

namespace okalab {

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace {

void emit(const ojson& v, std::string& out) {
    switch (v.type()) {
        case ojson::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += ojson(it.key()).dump();
                out += ':';
                emit(it.value(), out);
            }
            out += '}';
            break;
        }
        case ojson::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += ',';
                first = false;
                emit(e, out);
            }
            out += ']';
            break;
        }
        case ojson::value_t::number_float:
            out += format_double(v.get<double>());
            break;
        default:
            out += v.dump();
    }
}

}  // namespace

std::string dump_json(const ojson& doc) {
    std::string out;
    emit(doc, out);
    return out;
}

}  // namespace okalab
