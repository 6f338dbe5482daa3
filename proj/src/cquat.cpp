#include "cqopt/cquat.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace cqopt {

double magnitude(const CQuat& q) { return std::sqrt(norm2(q)); }

bool isFinite(const CQuat& q) {
    return std::isfinite(q.w) && std::isfinite(q.x) && std::isfinite(q.y) && std::isfinite(q.z);
}

std::string formatReal(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

std::string formatQuat(const CQuat& q) {
    std::string out = formatReal(q.w);
    auto append = [&out](double c, const char* unit) {
        if (std::signbit(c) && c != 0.0) {
            out += " - ";
            out += formatReal(-c);
        } else {
            out += " + ";
            out += formatReal(std::fabs(c));
        }
        out += ' ';
        out += unit;
    };
    append(q.x, "i");
    append(q.y, "j");
    append(q.z, "k");
    return out;
}

}  // namespace cqopt
