// homgb command-line driver: runs experiment commands against a declarative
// session file and emits table or structured reports.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "homgb/homgb.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliOptions {
    std::string input;
    std::string char_override;  // "Q" or a prime
    std::string order_override;
    std::string format = "table";
    std::string expect_file;
    unsigned jobs = 1;
    std::string n_range;
    homgb::Command cmd;
};

void parse_n_flag(const std::string& text, homgb::Command& cmd) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        std::uint64_t n = std::stoull(text);
        cmd.n_single = n;
        cmd.n_min = n;
        cmd.n_max = n;
        return;
    }
    cmd.n_min = std::stoull(text.substr(0, dots));
    cmd.n_max = std::stoull(text.substr(dots + 2));
    if (*cmd.n_max < *cmd.n_min) throw std::runtime_error("bad --n range");
}

template <class F>
int run_with_field(const CliOptions& opt, const homgb::SessionOverrides& over) {
    homgb::Session<F> session = homgb::parse_session<F>(read_file(opt.input), over);
    homgb::Report report = homgb::run_command(session, opt.cmd);
    homgb::ReportFormat fmt = opt.format == "structured" ? homgb::ReportFormat::structured
                                                         : homgb::ReportFormat::table;
    std::cout << homgb::emit_report(report, fmt);
    if (!opt.expect_file.empty()) {
        homgb::Report expected = homgb::parse_structured(read_file(opt.expect_file));
        auto issues = homgb::compare_expected(report, expected);
        if (!issues.empty()) {
            for (const auto& m : issues) std::cerr << "expect mismatch: " << m << "\n";
            return 2;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homological invariants of module quotients along ideal powers"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions opt;
    app.add_option("--input", opt.input, "session file")->required();
    app.add_option("--char", opt.char_override, "coefficient field: Q or a prime");
    app.add_option("--order", opt.order_override, "monomial order: grevlex or lex");
    app.add_option("--format", opt.format, "output format: table or structured")
        ->check(CLI::IsMember({"table", "structured"}));
    app.add_option("--expect", opt.expect_file, "structured file of expected key-values");
    app.add_option("--jobs", opt.jobs, "parallel grid cells");

    auto add_common = [&](CLI::App* sub, bool needs_module) {
        if (needs_module) sub->add_option("--module", opt.cmd.module_name, "module name")->required();
        sub->add_option("--n", opt.n_range, "window A..B or single n");
        sub->add_option("--smax", opt.cmd.smax, "maximum homological index");
    };

    auto series = app.add_subcommand("series", "invariant of M/I^nM across the window");
    auto fit = app.add_subcommand("fit", "series plus eventual polynomial fit");
    auto stabilize = app.add_subcommand("stabilize", "series plus stabilization index");
    for (CLI::App* sub : {series, fit, stabilize}) {
        add_common(sub, true);
        sub->add_option("--invariant", opt.cmd.invariant,
                        "bass | betti | pd | id | depth | grade")
            ->required();
        sub->add_option("--i", opt.cmd.index, "homological index for bass/betti");
        sub->add_option("--ideal", opt.cmd.ideal_name, "ideal I")->required();
        sub->add_option("--prime", opt.cmd.prime_name, "prime p");
        sub->add_option("--grade-ideal", opt.cmd.grade_ideal_name, "ideal J for grade");
    }
    fit->add_option("--max-degree", opt.cmd.max_degree, "maximum fitted degree");

    auto loci = app.add_subcommand("loci", "id-finiteness classification over primes");
    add_common(loci, true);
    loci->add_option("--ideal", opt.cmd.ideal_name, "ideal I")->required();
    loci->add_option("--primes", opt.cmd.prime_names, "prime names")->required()->delimiter(',');

    auto resolution = app.add_subcommand("resolution", "free resolution of a module");
    add_common(resolution, true);
    resolution->add_option("--ideal", opt.cmd.ideal_name, "ideal I (with --n: resolve M/I^nM)");
    resolution->add_option("--length", opt.cmd.length, "resolution length");
    resolution->add_flag("--minimize,!--no-minimize", opt.cmd.minimize,
                         "graded minimization (default on)");

    auto invariants = app.add_subcommand("invariants", "all invariants of one module at a prime");
    add_common(invariants, true);
    invariants->add_option("--ideal", opt.cmd.ideal_name, "ideal I (with --n: use M/I^nM)");
    invariants->add_option("--prime", opt.cmd.prime_name, "prime p")->required();
    invariants->add_option("--grade-ideal", opt.cmd.grade_ideal_name, "ideal J for grade");

    auto bcc = app.add_subcommand("base-change-check", "flat base change identity for Bass numbers");
    add_common(bcc, true);
    bcc->add_option("--prime", opt.cmd.prime_name, "prime p")->required();
    bcc->add_option("--extension", opt.cmd.extension,
                    "identity | adjoin-var-in-q | adjoin-var-not-in-q")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        opt.cmd.kind = app.get_subcommands().front()->get_name();
        opt.cmd.jobs = opt.jobs;
        if (!opt.n_range.empty()) parse_n_flag(opt.n_range, opt.cmd);

        homgb::SessionOverrides over;
        if (!opt.char_override.empty()) {
            over.characteristic =
                opt.char_override == "Q" ? 0 : std::stoull(opt.char_override);
        }
        if (!opt.order_override.empty()) {
            if (opt.order_override == "grevlex") {
                over.order = homgb::MonomialOrder::grevlex();
            } else if (opt.order_override == "lex") {
                over.order = homgb::MonomialOrder::lex();
            } else {
                throw std::runtime_error("unknown order '" + opt.order_override + "'");
            }
        }

        std::string text = read_file(opt.input);
        std::uint64_t q = homgb::session_characteristic(text, over);
        if (q == 0) return run_with_field<homgb::QQ>(opt, over);
        return run_with_field<homgb::GFp>(opt, over);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
