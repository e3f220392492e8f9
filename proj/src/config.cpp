#include "orlicz_kit/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "orlicz_kit/csv.hpp"
#include "orlicz_kit/errors.hpp"
#include "orlicz_kit/grid.hpp"

namespace okit {

namespace {

std::string trim(const std::string& s)
{
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::uint64_t parse_uint(const std::string& key, const std::string& v)
{
    if (v.empty() || v.size() > 20) throw InputError(key + ": expected a nonnegative integer, got '" + v + "'");
    for (char c : v)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InputError(key + ": expected a nonnegative integer, got '" + v + "'");
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw InputError(key + ": integer out of range: '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v)
{
    std::string digits = !v.empty() && v[0] == '-' ? v.substr(1) : v;
    std::uint64_t u = parse_uint(key, digits);
    if (u > 1000000000ULL) throw InputError(key + ": integer out of range: '" + v + "'");
    return v[0] == '-' ? -static_cast<int>(u) : static_cast<int>(u);
}

real parse_num(const std::string& key, const std::string& v)
{
    try {
        return parse_real(v);
    } catch (const InputError&) {
        throw InputError(key + ": expected a decimal number, got '" + v + "'");
    }
}

void set_function(FunctionSpec& spec, bool& fresh, const std::string& key, const std::string& v)
{
    if (fresh) {
        spec = FunctionSpec{};
        fresh = false;
    }
    if (key == "family")
        spec.family = v;
    else if (key == "path")
        spec.path = v;
    else
        spec.params[key] = parse_num(key, v);
}

real param(const FunctionSpec& s, const std::string& name)
{
    auto it = s.params.find(name);
    if (it == s.params.end()) throw InputError(s.family + ": missing parameter '" + name + "'");
    return it->second;
}

real param_or(const FunctionSpec& s, const std::string& name, real fallback)
{
    auto it = s.params.find(name);
    return it == s.params.end() ? fallback : it->second;
}

std::string need_path(const FunctionSpec& s)
{
    if (s.path.empty()) throw InputError(s.family + ": missing 'path'");
    return s.path;
}

} // namespace

RunConfig parse_config(const std::string& text)
{
    RunConfig c;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    bool fresh_phi = true, fresh_psi = true, fresh_weight = true, fresh_kernel = true;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = "config line " + std::to_string(lineno) + ": ";
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw InputError(where + "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"grid", "phi", "psi", "weight", "kernel", "family", "rgrid", "run"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) throw InputError(where + "unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw InputError(where + "expected key = value");
        std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (key.empty() || v.empty()) throw InputError(where + "empty key or value");
        try {
            if (section == "grid") {
                if (key == "n")
                    c.dim = parse_int(key, v);
                else if (key == "L")
                    c.L = parse_num(key, v);
                else if (key == "h")
                    c.h = parse_num(key, v);
                else
                    throw InputError("unknown key '" + key + "'");
            } else if (section == "phi") {
                set_function(c.phi, fresh_phi, key, v);
            } else if (section == "psi") {
                set_function(c.psi, fresh_psi, key, v);
            } else if (section == "weight") {
                set_function(c.weight, fresh_weight, key, v);
            } else if (section == "kernel") {
                set_function(c.kernel, fresh_kernel, key, v);
            } else if (section == "family") {
                if (key == "r0")
                    c.family_r0 = parse_num(key, v);
                else if (key == "kappa")
                    c.family_kappa = parse_num(key, v);
                else if (key == "J")
                    c.family_J = parse_int(key, v);
                else
                    throw InputError("unknown key '" + key + "'");
            } else if (section == "rgrid") {
                if (key == "lo")
                    c.rgrid_lo = parse_num(key, v);
                else if (key == "hi")
                    c.rgrid_hi = parse_num(key, v);
                else if (key == "count")
                    c.rgrid_count = parse_int(key, v);
                else
                    throw InputError("unknown key '" + key + "'");
            } else if (section == "run") {
                if (key == "seed")
                    c.seed = parse_uint(key, v);
                else if (key == "corpus")
                    c.corpus_size = parse_int(key, v);
                else if (key == "threads")
                    c.threads = static_cast<unsigned>(parse_uint(key, v));
                else if (key == "tolerance")
                    c.tolerance = parse_num(key, v);
                else if (key == "out")
                    c.out_dir = v;
                else
                    throw InputError("unknown key '" + key + "'");
            } else {
                throw InputError("key outside of a section");
            }
        } catch (const InputError& e) {
            throw InputError(where + e.what());
        }
    }

    if (c.dim != 1 && c.dim != 2) throw InputError("grid.n must be 1 or 2");
    if (!(c.L > 0) || !std::isfinite(c.L)) throw InputError("grid.L must be positive and finite");
    if (!(c.h > 0) || !(c.h <= c.L / 100 * (1 + 1e-12L))) throw InputError("grid.h must satisfy 0 < h <= L/100");
    if (!(c.tolerance > 0)) throw InputError("run.tolerance must be positive");
    if (!(c.rgrid_lo > 0) || !(c.rgrid_hi > c.rgrid_lo) || !std::isfinite(c.rgrid_hi) || c.rgrid_count < 2)
        throw InputError("rgrid needs 0 < lo < hi < inf and count >= 2");
    if (c.corpus_size < 1) throw InputError("run.corpus must be positive");
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

YoungFunction make_young(const FunctionSpec& s)
{
    const std::string& f = s.family;
    if (f == "power") return YoungFunction::power(param(s, "p"));
    if (f == "power_over_p") return YoungFunction::power_over_p(param(s, "p"));
    if (f == "scaled_power") return YoungFunction::scaled_power(param(s, "c"), param(s, "p"));
    if (f == "capped_linear") return YoungFunction::capped_linear();
    if (f == "shifted_linear") return YoungFunction::shifted_linear();
    if (f == "shifted_square") return YoungFunction::shifted_square();
    if (f == "shifted_square_conj") return YoungFunction::shifted_square_conj();
    if (f == "exp_power") return YoungFunction::exp_power(param(s, "p"));
    if (f == "jump") return YoungFunction::jump(param_or(s, "c", 1));
    if (f == "tabulated") return YoungFunction::tabulated_from_csv(need_path(s));
    throw InputError("unknown Young family '" + f + "'");
}

WeightFunction make_weight(const FunctionSpec& s, int dim)
{
    const std::string& f = s.family;
    if (f == "power") return WeightFunction::power(param(s, "lambda"));
    if (f == "power_with_log") return WeightFunction::power_with_log(param(s, "lambda"), param(s, "beta"));
    if (f == "constant") return WeightFunction::constant(param_or(s, "c", 1));
    if (f == "reciprocal_power_n") return WeightFunction::reciprocal_power_n(dim);
    if (f == "tabulated") return WeightFunction::tabulated_from_csv(need_path(s));
    throw InputError("unknown weight family '" + f + "'");
}

KernelFunction make_kernel(const FunctionSpec& s)
{
    const std::string& f = s.family;
    KernelFunction k = [&] {
        if (f == "power") return KernelFunction::power(param(s, "alpha"));
        if (f == "log_kernel") return KernelFunction::log_kernel(param(s, "alpha"));
        if (f == "bessel_type") return KernelFunction::bessel_type(param(s, "alpha"));
        if (f == "constant") return KernelFunction::constant(param_or(s, "c", 1));
        if (f == "tabulated") return KernelFunction::tabulated_from_csv(need_path(s));
        throw InputError("unknown kernel family '" + f + "'");
    }();
    if (s.params.count("K1") || s.params.count("K2"))
        k = k.with_window(param_or(s, "K1", k.K1()), param_or(s, "K2", k.K2()));
    return k;
}

BallFamily make_family(const RunConfig& c, const SampledField& f)
{
    if (c.family_r0) return geometric_family(f, *c.family_r0, c.family_kappa, c.family_J);
    return default_family(f);
}

std::vector<real> make_r_grid(const RunConfig& c) { return log_grid(c.rgrid_lo, c.rgrid_hi, c.rgrid_count); }

HarnessConfig harness_config(const RunConfig& c)
{
    HarnessConfig h;
    h.dim = c.dim;
    h.L = c.L;
    h.h = c.h;
    h.corpus_size = c.corpus_size;
    h.seed = c.seed;
    h.threads = c.threads;
    return h;
}

} // namespace okit
