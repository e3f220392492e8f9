#include "orlicz_kit/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "orlicz_kit/errors.hpp"

namespace okit {

namespace {

std::string trim(const std::string& s)
{
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool try_parse(const std::string& raw, real& out)
{
    std::string s = trim(raw);
    if (s.empty()) return false;
    std::string low = s;
    std::transform(low.begin(), low.end(), low.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (low == "inf" || low == "+inf" || low == "infinity") {
        out = kInf;
        return true;
    }
    // Only plain decimal / scientific literals: no hex floats, no nan.
    for (char c : low)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == '-' ||
              c == '+'))
            return false;
    char* end = nullptr;
    out = std::strtold(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

} // namespace

real parse_real(const std::string& s)
{
    real v;
    if (!try_parse(s, v)) throw InputError("not a decimal number: '" + s + "'");
    return v;
}

std::pair<std::vector<real>, std::vector<real>> read_two_column_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::vector<real> xs, ys;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto comma = t.find(',');
        if (comma == std::string::npos)
            throw InputError(path + ":" + std::to_string(lineno) + ": expected two columns");
        real x, y;
        bool okx = try_parse(t.substr(0, comma), x);
        bool oky = try_parse(t.substr(comma + 1), y);
        if (!okx || !oky) {
            if (xs.empty() && lineno == 1) continue;  // header
            throw InputError(path + ":" + std::to_string(lineno) + ": malformed number");
        }
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.empty()) throw InputError(path + ": no data rows");
    return {std::move(xs), std::move(ys)};
}

std::string format_real(real x)
{
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x));
    return buf;
}

} // namespace okit
