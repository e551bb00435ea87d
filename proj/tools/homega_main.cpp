// Command-line front end: construct analogues of finite Blaschke products,
// verify inner-ness of series files, recover inner parts through the
// weighted-space kernel, and scan for extraneous zeros. Emits JSON reports
// and CSV tables for external plotting.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "homega/homega.hpp"

namespace fs = std::filesystem;
using namespace homega;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitIllConditioned = 2;
constexpr int kExitNotInner = 3;
constexpr int kExitInconclusive = 4;

struct CommonOpts {
    std::string out = ".";
    long N = 2048;
    long m_ortho = 64;
    long m_poly = 64;
    std::uint64_t seed = 0;
    double radius = 0.999;
    long grid = 64;
};

json parse_json_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw InvalidSpec(what + " is not valid JSON");
    return j;
}

// Accepts a file path, inline JSON, or (for weights) a bare builtin name.
json load_json_arg(const std::string& arg, const std::string& what, bool allow_name) {
    if (!arg.empty() && arg.front() == '{') return parse_json_text(arg, what);
    if (fs::exists(arg)) {
        std::ifstream in(arg);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        return parse_json_text(text, what + " file '" + arg + "'");
    }
    if (allow_name && (arg == "hardy" || arg == "bergman" || arg == "dirichlet"))
        return json{{"kind", arg}};
    throw InvalidSpec(what + " '" + arg + "' is neither a file nor inline JSON");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidSpec("cannot open '" + path.string() + "' for writing");
    out << text;
}

void write_json(const fs::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

void write_boundary_csv(const fs::path& path, const SeriesFn& B, double r, long samples) {
    std::string csv = "# homega boundary v1\ntheta,modulus\n";
    for (long j = 0; j < samples; ++j) {
        const double theta = 2.0 * M_PI * static_cast<double>(j) /
                             static_cast<double>(samples);
        const Complex z = std::polar(r, theta);
        csv += fmt(theta) + "," + fmt(std::abs(eval(B, z))) + "\n";
    }
    write_text(path, csv);
}

void write_zeros_csv(const fs::path& path, const ZeroScanResult& scan) {
    std::string csv = "# homega zeros v1\nre,im,kind\n";
    for (const FoundZero& z : scan.prescribed_found)
        for (long k = 0; k < z.multiplicity; ++k)
            csv += fmt(z.location.real()) + "," + fmt(z.location.imag()) + ",prescribed\n";
    for (const FoundZero& z : scan.extraneous)
        for (long k = 0; k < z.multiplicity; ++k)
            csv += fmt(z.location.real()) + "," + fmt(z.location.imag()) + ",extraneous\n";
    for (const Complex& z : scan.spurious)
        csv += fmt(z.real()) + "," + fmt(z.imag()) + ",spurious\n";
    write_text(path, csv);
}

json zeros_to_json(const ZeroScanResult& scan) {
    json prescribed = json::array();
    for (const FoundZero& z : scan.prescribed_found)
        prescribed.push_back({{"z", {z.location.real(), z.location.imag()}},
                              {"mult", z.multiplicity}});
    json extraneous = json::array();
    for (const FoundZero& z : scan.extraneous)
        extraneous.push_back({{"z", {z.location.real(), z.location.imag()}},
                              {"mult", z.multiplicity}});
    json spurious = json::array();
    for (const Complex& z : scan.spurious) spurious.push_back({z.real(), z.imag()});
    return {{"prescribed_found", prescribed},
            {"extraneous", extraneous},
            {"spurious", spurious},
            {"effective_degree", scan.effective_degree}};
}

int verdict_exit_code(InnerVerdict v) {
    switch (v) {
        case InnerVerdict::Inner: return kExitOk;
        case InnerVerdict::NotInner: return kExitNotInner;
        case InnerVerdict::Inconclusive: return kExitInconclusive;
    }
    return kExitBadInput;
}

int cmd_construct(const std::string& weight_arg, const std::string& spec_arg,
                  const CommonOpts& opt) {
    const WeightSequence w = weight_from_json(load_json_arg(weight_arg, "weight", true));
    const BlaschkeSpec spec = blaschke_spec_from_json(load_json_arg(spec_arg, "spec", false));
    const Budget budget{opt.N, 1e-9};

    const InnerFunctionResult res = construct_blaschke_analogue(w, spec, budget);

    InnerCheckOptions check;
    check.m_ortho = opt.m_ortho;
    check.seed = opt.seed;
    const InnerReport rep = evaluate_inner(res.B, check);
    const ZeroScanResult scan = scan_extraneous_zeros(res.B, spec, opt.grid, opt.radius);

    const fs::path dir(opt.out);
    fs::create_directories(dir);

    json report = {{"schema_version", kSchemaVersion},
                   {"command", "construct"},
                   {"weight", weight_to_json(w)},
                   {"spec", blaschke_spec_to_json(spec)},
                   {"budget",
                    {{"N", opt.N}, {"M_ortho", opt.m_ortho}, {"seed", opt.seed}}},
                   {"gram_condition", res.gram_condition},
                   {"inner", inner_report_to_json(rep)},
                   {"zeros", zeros_to_json(scan)},
                   {"degenerate_top_orders", res.degenerate_top_orders}};
    if (w == WeightSequence::hardy()) {
        const OracleComparison cmp = compare_to_oracle(
            res.B, classical_blaschke(spec, budget), disk_grid(0.9, 6, 24));
        report["oracle"] = {{"max_deviation", cmp.max_deviation},
                            {"fitted_phase",
                             {cmp.fitted_phase.real(), cmp.fitted_phase.imag()}}};
    }

    write_json(dir / "B.json", series_to_json(res.B));
    write_json(dir / "report.json", report);
    write_zeros_csv(dir / "zeros.csv", scan);
    write_boundary_csv(dir / "boundary.csv", res.B, 0.999, 512);
    std::cout << "verdict: " << to_string(rep.verdict)
              << "  ortho_defect: " << rep.ortho_defect << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& input, const CommonOpts& opt) {
    const SeriesFn f = series_from_json(load_json_arg(input, "series", false));
    InnerCheckOptions check;
    check.m_ortho = opt.m_ortho;
    check.seed = opt.seed;
    const InnerReport rep = evaluate_inner(f, check);

    const fs::path dir(opt.out);
    fs::create_directories(dir);
    write_json(dir / "report.json",
               {{"schema_version", kSchemaVersion},
                {"command", "verify"},
                {"weight", weight_to_json(f.weight())},
                {"budget", {{"M_ortho", opt.m_ortho}, {"seed", opt.seed}}},
                {"inner", inner_report_to_json(rep)}});
    write_text(dir / "phi.csv", phi_table_csv(f, check.k_max));
    std::cout << "verdict: " << to_string(rep.verdict)
              << "  norm_dev: " << rep.norm_dev
              << "  ortho_defect: " << rep.ortho_defect << "\n";
    return verdict_exit_code(rep.verdict);
}

int cmd_recover(const std::string& input, const CommonOpts& opt) {
    const SeriesFn b = series_from_json(load_json_arg(input, "series", false));
    const Budget budget{std::max<long>(opt.N, b.degree()), 1e-9};

    const MomentMatrix mm = moment_matrix(b, opt.m_poly, budget);
    const KernelAtZero kz = kernel_at_zero(mm);
    const SeriesFn u = detail::canonical_phase(normalize(mul(b, kz.R0)));
    const DefinitionCheck def = check_definition(u, opt.m_ortho);

    const fs::path dir(opt.out);
    fs::create_directories(dir);
    write_json(dir / "u.json", series_to_json(u));
    write_json(dir / "report.json",
               {{"schema_version", kSchemaVersion},
                {"command", "recover"},
                {"b", series_to_json(b)},
                {"R0", series_to_json(kz.R0)},
                {"u", series_to_json(u)},
                {"residuals",
                 {{"max_reproducing", kz.max_residual},
                  {"norm_dev", def.norm_dev},
                  {"ortho_defect", def.ortho_defect},
                  {"moment_condition", kz.condition},
                  {"used_m_poly", kz.used_m_poly}}}});
    std::cout << "recovered inner part: verdict " << to_string(def.verdict)
              << "  ortho_defect: " << def.ortho_defect << "\n";
    return kExitOk;
}

int cmd_scan(const std::string& input, const std::string& spec_arg, const CommonOpts& opt) {
    const SeriesFn B = series_from_json(load_json_arg(input, "series", false));
    BlaschkeSpec spec; // empty prescription: every found zero is extraneous
    if (!spec_arg.empty())
        spec = blaschke_spec_from_json(load_json_arg(spec_arg, "spec", false));

    const ZeroScanResult scan = scan_extraneous_zeros(B, spec, opt.grid, opt.radius);

    const fs::path dir(opt.out);
    fs::create_directories(dir);
    write_zeros_csv(dir / "zeros.csv", scan);
    write_json(dir / "report.json",
               {{"schema_version", kSchemaVersion},
                {"command", "scan"},
                {"radius", opt.radius},
                {"zeros", zeros_to_json(scan)}});
    std::cout << "extraneous zeros: " << scan.extraneous.size()
              << "  spurious candidates: " << scan.spurious.size() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"inner functions in weighted Hardy spaces"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string weight_arg, spec_arg, input;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out, "output directory");
        cmd->add_option("--N", opt.N, "series truncation budget");
        cmd->add_option("--M-ortho", opt.m_ortho, "orthogonality powers tested");
        cmd->add_option("--M-poly", opt.m_poly, "polynomial degree of the origin kernel");
        cmd->add_option("--seed", opt.seed, "seed for randomized checks");
        cmd->add_option("--radius", opt.radius, "zero-scan radius");
        cmd->add_option("--grid", opt.grid, "zero-scan grid density");
    };

    CLI::App* construct = app.add_subcommand(
        "construct", "build the inner analogue of a finite Blaschke product");
    construct->add_option("--weight", weight_arg, "weight descriptor (file, inline JSON, or name)")
        ->required();
    construct->add_option("--spec", spec_arg, "zero prescription (file or inline JSON)")
        ->required();
    add_common(construct);

    CLI::App* verify = app.add_subcommand("verify", "test a series file for inner-ness");
    verify->add_option("input", input, "series JSON file")->required();
    add_common(verify);

    CLI::App* recover =
        app.add_subcommand("recover", "recover the inner part of a series file");
    recover->add_option("input", input, "series JSON file")->required();
    add_common(recover);

    CLI::App* scan = app.add_subcommand("scan", "scan a series file for zeros");
    scan->add_option("input", input, "series JSON file")->required();
    scan->add_option("--spec", spec_arg, "prescription whose zeros are expected");
    add_common(scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Collapse CLI11's exit-code zoo onto the documented contract:
        // 0 for --help and friends, 1 for any bad invocation.
        return app.exit(e) == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (construct->parsed()) return cmd_construct(weight_arg, spec_arg, opt);
        if (verify->parsed()) return cmd_verify(input, opt);
        if (recover->parsed()) return cmd_recover(input, opt);
        if (scan->parsed()) return cmd_scan(input, spec_arg, opt);
    } catch (const IllConditionedGram& e) {
        std::cerr << "error: " << e.what()
                  << "\nhint: move zeros away from the boundary or raise --N\n";
        return kExitIllConditioned;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
