// orlicz-kit: norms, operators, condition reports and the verification
// suite from the command line.
//
// Exit codes: 0 success, 2 config/input error, 3 precondition failure,
// 4 unknown identifier, 5 suite failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "orlicz_kit/config.hpp"
#include "orlicz_kit/criteria.hpp"
#include "orlicz_kit/csv.hpp"
#include "orlicz_kit/errors.hpp"
#include "orlicz_kit/fields.hpp"
#include "orlicz_kit/harness.hpp"
#include "orlicz_kit/operators.hpp"

using namespace okit;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kInput = 2, kPrecondition = 3, kUnknown = 4, kSuiteFailed = 5 };

json num(real x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return "inf";
    return static_cast<double>(x);
}

void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write " + p.string());
    out << text;
}

std::filesystem::path out_dir(const RunConfig& c, const std::string& flag)
{
    std::filesystem::path d = flag.empty() ? c.out_dir : flag;
    std::error_code ec;
    std::filesystem::create_directories(d, ec);
    if (ec) throw InputError("cannot create output directory " + d.string());
    return d;
}

RunConfig config_from(const std::string& path) { return path.empty() ? RunConfig{} : load_config(path); }

std::string ball_text(const Ball& B, int dim)
{
    std::string s = "B((" + format_real(B.centre[0]);
    if (dim == 2) s += "," + format_real(B.centre[1]);
    return s + ")," + format_real(B.r) + ")";
}

int cmd_norm(const std::string& config, const std::string& field, bool weak, const std::string& out)
{
    RunConfig c = config_from(config);
    SampledField f = read_field_csv(field);
    YoungFunction Phi = make_young(c.phi);
    WeightFunction phi = make_weight(c.weight, f.dim());
    BallFamily F = make_family(c, f);
    GlobalNorm g = global_norm(f, Phi, phi, F, weak);

    std::ostringstream csv;
    csv << "centre_x,centre_y,r,norm\n";
    for (real r : F.radii)
        for (const Point& a : F.centres) {
            Ball B{a, r};
            if (cells_in(f, B).lattice_count == 0) continue;
            real n = weak ? weak_norm(f, Phi, phi, B) : luxemburg_norm(f, Phi, phi, B);
            csv << format_real(a[0]) << ',' << format_real(a[1]) << ',' << format_real(r) << ','
                << format_real(n) << '\n';
        }
    json j;
    j["field"] = field;
    j["kind"] = weak ? "weak" : "strong";
    j["Phi"] = Phi.label();
    j["phi"] = phi.label();
    j["family"] = family_id(F);
    j["global_norm"] = num(g.value);
    j["argmax_ball"] = ball_text(g.argmax, f.dim());
    j["skipped_balls"] = g.skipped;
    auto dir = out_dir(c, out);
    write_file(dir / "norm.csv", csv.str());
    write_file(dir / "norm.json", j.dump(2) + "\n");
    std::cout << (weak ? "weak" : "strong") << " norm " << format_real(g.value) << " at "
              << ball_text(g.argmax, f.dim()) << "\n";
    return kOk;
}

int cmd_apply(const std::string& config, const std::string& field, const std::string& op, const std::string& out)
{
    RunConfig c = config_from(config);
    SampledField f = read_field_csv(field);
    OperatorResult res = [&] {
        if (op == "M") return hl_maximal(f, make_family(c, f));
        if (op == "M_rho") return frac_maximal(f, make_kernel(c.kernel), make_family(c, f));
        if (op == "I_rho") return frac_integral(f, make_kernel(c.kernel));
        throw UnknownIdError("unknown operator '" + op + "' (expected M, M_rho or I_rho)");
    }();
    auto dir = out_dir(c, out);
    write_field_csv(res.field, (dir / "apply.csv").string());
    json j;
    j["field"] = field;
    j["op_id"] = res.op_id;
    j["kernel_id"] = res.kernel_id;
    j["family_id"] = res.family_id;
    j["diagnostics"] = res.diagnostics;
    write_file(dir / "apply.json", j.dump(2) + "\n");
    std::cout << res.op_id << " applied to " << field << " -> " << (dir / "apply.csv").string() << "\n";
    return kOk;
}

int cmd_check(const std::string& config, const std::string& id, const std::string& out)
{
    RunConfig c = config_from(config);
    auto grid = make_r_grid(c);
    auto run = [&]() -> ConditionReport {
        if (id == "Ir_A")
            return eval_Ir_A(make_young(c.phi), make_young(c.psi), make_weight(c.weight, c.dim),
                             make_kernel(c.kernel), grid);
        if (id == "Ir_Aprime")
            return eval_Ir_Aprime(make_young(c.phi), make_young(c.psi), make_weight(c.weight, c.dim),
                                  make_kernel(c.kernel), grid);
        if (id == "Mr_A")
            return eval_Mr_A(make_young(c.phi), make_young(c.psi), make_weight(c.weight, c.dim),
                             make_kernel(c.kernel), grid);
        if (id == "weight_integral") return check_weight_integral(make_weight(c.weight, c.dim), c.dim, grid);
        throw UnknownIdError("unknown condition id '" + id + "' (expected Ir_A, Ir_Aprime, Mr_A, weight_integral)");
    };
    ConditionReport rep = run();

    std::ostringstream csv;
    csv << "r,lhs,rhs,ratio\n";
    for (size_t i = 0; i < rep.lhs.size(); ++i)
        csv << format_real(rep.r_grid[i]) << ',' << format_real(rep.lhs[i]) << ',' << format_real(rep.rhs[i]) << ','
            << format_real(ext_div(rep.lhs[i], rep.rhs[i])) << '\n';
    json j;
    j["condition_id"] = rep.condition_id;
    j["verdict"] = to_string(rep.verdict);
    j["ratio_sup"] = num(rep.ratio_sup);
    j["ratio_sup_widened"] = num(rep.ratio_sup_widened);
    j["stability"] = num(rep.stability);
    j["growth"] = num(rep.growth);
    j["monotone"] = rep.monotone;
    j["diagnostic"] = rep.diagnostic;
    if (rep.side_hypothesis) {
        j["side_hypothesis"] = *rep.side_hypothesis;
        j["side_detail"] = rep.side_detail;
    }
    auto dir = out_dir(c, out);
    write_file(dir / ("check_" + id + ".csv"), csv.str());
    write_file(dir / ("check_" + id + ".json"), j.dump(2) + "\n");
    std::cout << rep.condition_id << ": " << to_string(rep.verdict) << " (ratio_sup " << format_real(rep.ratio_sup)
              << ")\n";
    return kOk;
}

int cmd_verify(const std::string& config, const std::string& filter, const std::string& out)
{
    RunConfig c = config_from(config);
    HarnessConfig hc = harness_config(c);
    auto cases = run_suite(hc, filter);
    auto dir = out_dir(c, out);
    write_file(dir / "verify.json", suite_json(hc, cases));
    write_file(dir / "verify.csv", suite_csv(cases));
    for (const auto& pc : cases) {
        const char* status = pc.skipped ? "SKIP" : (pc.pass ? "PASS" : "FAIL");
        std::printf("%-4s %-8s %-32s C=%s drift=%s%s\n", status, pc.statement_id.c_str(), pc.variant.c_str(),
                    format_real(pc.fitted_constant).c_str(), format_real(pc.refinement_drift).c_str(),
                    pc.negative ? " (negative)" : "");
    }
    bool ok = suite_passed(cases);
    std::printf("suite %s\n", ok ? "passed" : "failed");
    return ok ? kOk : kSuiteFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Orlicz-Morrey norms, maximal and fractional operators, and property checks"};
    app.require_subcommand(1);
    std::string config, out, field, op, id, filter;
    bool weak = false;

    auto* norm = app.add_subcommand("norm", "global and per-ball norms of a sampled field");
    norm->add_option("--config", config, "configuration file");
    norm->add_option("field", field, "field CSV")->required();
    norm->add_flag("--weak", weak, "weak norm instead of the Luxemburg norm");
    norm->add_option("--out", out, "output directory");

    auto* apply = app.add_subcommand("apply", "apply M, M_rho or I_rho to a field");
    apply->add_option("--config", config, "configuration file");
    apply->add_option("field", field, "field CSV")->required();
    apply->add_option("--op", op, "M, M_rho or I_rho")->required();
    apply->add_option("--out", out, "output directory");

    auto* check = app.add_subcommand("check", "evaluate a sufficient or necessary condition on the r-grid");
    check->add_option("--config", config, "configuration file");
    check->add_option("condition", id, "Ir_A, Ir_Aprime, Mr_A or weight_integral")->required();
    check->add_option("--out", out, "output directory");

    auto* verify = app.add_subcommand("verify", "run the property suite");
    verify->add_option("--config", config, "configuration file");
    verify->add_option("--filter", filter, "statement id, or id:variant");
    verify->add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*norm) return cmd_norm(config, field, weak, out);
        if (*apply) return cmd_apply(config, field, op, out);
        if (*check) return cmd_check(config, id, out);
        return cmd_verify(config, filter, out);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kPrecondition;
    } catch (const UnknownIdError& e) {
        std::cerr << "unknown identifier: " << e.what() << "\n";
        return kUnknown;
    }
}
